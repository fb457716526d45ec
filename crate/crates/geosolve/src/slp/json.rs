use super::{Gate, Lin, Slp};
use crate::arith::Int;
use crate::error::SlpError;
use serde_json::{json, Value};

fn lin_json(l: &Lin) -> (Value, Value) {
    let scalars: Vec<String> = l.terms().iter().map(|(_, c)| c.to_string()).collect();
    let refs: Vec<usize> = l.terms().iter().map(|(g, _)| *g).collect();
    (json!(scalars), json!(refs))
}

/// {"nvars": n, "gates": [{"kind", "scalars", "refs"}...], "outputs": [{"scalars", "refs"}...]}
pub fn slp_to_json(slp: &Slp) -> Value {
    let gates: Vec<Value> = slp
        .gates()
        .iter()
        .map(|g| match g {
            Gate::Input(j) => json!({"kind": "input", "scalars": [], "refs": [j]}),
            Gate::Const(c) => json!({"kind": "const", "scalars": [c.to_string()], "refs": []}),
            Gate::Mul(a, b) => {
                let (sa, ra) = lin_json(a);
                let (sb, rb) = lin_json(b);
                json!({"kind": "mul", "scalars": [sa, sb], "refs": [ra, rb]})
            }
        })
        .collect();
    let outputs: Vec<Value> = slp
        .outputs()
        .iter()
        .map(|o| {
            let (s, r) = lin_json(o);
            json!({"scalars": s, "refs": r})
        })
        .collect();
    json!({"nvars": slp.nvars(), "gates": gates, "outputs": outputs})
}

fn bad(msg: &str) -> SlpError {
    SlpError::Malformed(msg.to_string())
}

fn parse_lin(scalars: &Value, refs: &Value) -> Result<Lin, SlpError> {
    let s = scalars.as_array().ok_or_else(|| bad("scalars must be an array"))?;
    let r = refs.as_array().ok_or_else(|| bad("refs must be an array"))?;
    if s.len() != r.len() {
        return Err(bad("scalars and refs differ in length"));
    }
    let mut t = Vec::new();
    for (a, g) in s.iter().zip(r) {
        let c: Int = a.as_str().and_then(|x| x.parse().ok()).ok_or_else(|| bad("scalar must be a decimal string"))?;
        let g = g.as_u64().ok_or_else(|| bad("ref must be a gate index"))? as usize;
        t.push((g, c));
    }
    Ok(Lin::from_terms(t))
}

pub fn slp_from_json(v: &Value) -> Result<Slp, SlpError> {
    let n = v["nvars"].as_u64().ok_or_else(|| bad("nvars missing"))? as usize;
    let mut gates = Vec::new();
    for g in v["gates"].as_array().ok_or_else(|| bad("gates missing"))? {
        let kind = g["kind"].as_str().ok_or_else(|| bad("gate kind missing"))?;
        gates.push(match kind {
            "input" => Gate::Input(g["refs"][0].as_u64().ok_or_else(|| bad("input index missing"))? as usize),
            "const" => Gate::Const(
                g["scalars"][0].as_str().and_then(|x| x.parse().ok()).ok_or_else(|| bad("constant value missing"))?,
            ),
            "mul" => Gate::Mul(parse_lin(&g["scalars"][0], &g["refs"][0])?, parse_lin(&g["scalars"][1], &g["refs"][1])?),
            other => return Err(bad(&format!("unknown gate kind {}", other))),
        });
    }
    let mut outputs = Vec::new();
    for o in v["outputs"].as_array().ok_or_else(|| bad("outputs missing"))? {
        outputs.push(parse_lin(&o["scalars"], &o["refs"])?);
    }
    Slp::from_parts(n, gates, outputs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::slp::parse_system;

    #[test]
    fn round_trip() {
        let s = parse_system(&["X1^2+X1+1", "X2-X1^2", "-7*X1*X2"], &["X1", "X2"]).unwrap();
        let v = slp_to_json(&s);
        let t = slp_from_json(&v).unwrap();
        assert_eq!(s, t);
    }

    #[test]
    fn rejects_forward_refs() {
        let v = json!({"nvars": 1, "gates": [
            {"kind": "input", "refs": [0]},
            {"kind": "const", "scalars": ["1"]},
            {"kind": "mul", "scalars": [["1"], ["1"]], "refs": [[3], [0]]}
        ], "outputs": []});
        assert!(slp_from_json(&v).is_err());
    }
}
