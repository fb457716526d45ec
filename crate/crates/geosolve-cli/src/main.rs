use clap::{Parser, Subcommand};
use geosolve::arith::{Int, Rat};
use geosolve::duality::bezout_witness;
use geosolve::error::{DualityError, LiouvilleError, SolveError};
use geosolve::fiber::{resolution_from_json, resolution_to_json, validate_resolution, GeometricResolution};
use geosolve::liouville::{denominator_bound, ApproximationQuery, GaussianInt};
use geosolve::slp::{parse_system, Slp};
use geosolve::solver::{decide_with_resolution, solve_system, IntersectionPath, Solution};
use serde_json::{json, Value};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "geosolve", version, about = "Exact geometric resolution of polynomial systems")]
struct Cli {
    /// Seed for every randomized choice [default: the file's "seed", else 0].
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Solver attempts [default: the file's "retries", else 25].
    #[arg(long, global = true)]
    retries: Option<usize>,
    /// Write the JSON result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Reuse a resolution (or a saved `solve` result) instead of solving.
    #[arg(long, global = true)]
    resolution: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Geometric resolution of n equations in n unknowns.
    Solve {
        file: PathBuf,
        #[arg(long)]
        validate: bool,
    },
    /// Whether n + 1 equations in n unknowns have a common zero.
    Consistency { file: PathBuf },
    /// a and g with a = g·f_{n+1} modulo f_1..f_n (n + 1 equations).
    Witness { file: PathBuf },
    /// Lower bound on log2 q for approximations p/q of the first coordinate.
    Liouville {
        file: PathBuf,
        /// Gaussian integer: "7", "-3+2i", "5i".
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long)]
        q: String,
        /// Rational in (0, 1], for example "1/64".
        #[arg(long)]
        epsilon: String,
    },
    /// Checks a resolution against the system.
    Validate { file: PathBuf },
}

enum Failure {
    Usage(String),
    Hypothesis(String),
}

impl From<SolveError> for Failure {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::Shape { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Hypothesis(e.to_string()),
        }
    }
}

struct SystemFile {
    slp: Slp,
    seed: Option<u64>,
    retries: Option<usize>,
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {}", path.display(), e)))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {}", path.display(), e)))
}

fn load_system(path: &Path) -> Result<SystemFile, Failure> {
    let v = read_json(path)?;
    let strings = |key: &str| -> Result<Vec<String>, Failure> {
        v[key]
            .as_array()
            .and_then(|a| a.iter().map(|x| x.as_str().map(String::from)).collect::<Option<Vec<_>>>())
            .ok_or_else(|| Failure::Usage(format!("{}: \"{}\" must be an array of strings", path.display(), key)))
    };
    let vars = strings("variables")?;
    let eqs = strings("equations")?;
    if eqs.is_empty() {
        return Err(Failure::Usage("no equations".into()));
    }
    let mut sorted = vars.clone();
    sorted.sort();
    sorted.dedup();
    if sorted.len() != vars.len() {
        return Err(Failure::Usage("variable names must be distinct".into()));
    }
    let names: Vec<&str> = vars.iter().map(String::as_str).collect();
    let slp = parse_system(&eqs, &names).map_err(|e| Failure::Usage(e.to_string()))?;
    Ok(SystemFile { slp, seed: v["seed"].as_u64(), retries: v["retries"].as_u64().map(|r| r as usize) })
}

fn path_name(p: &IntersectionPath) -> &'static str {
    match p {
        IntersectionPath::Base => "base",
        IntersectionPath::Product => "product",
        IntersectionPath::General => "general",
    }
}

fn solution_json(sol: &Solution) -> Value {
    let levels: Vec<Value> = sol
        .levels
        .iter()
        .map(|l| {
            json!({
                "level": l.level,
                "degree": l.degree,
                "height": l.height.value().to_string(),
                "path": path_name(&l.path),
                "truncation": l.delta,
            })
        })
        .collect();
    json!({"resolution": resolution_to_json(&sol.resolution), "levels": levels, "attempts": sol.attempts})
}

struct Ctx {
    seed: Option<u64>,
    retries: Option<usize>,
    resolution: Option<PathBuf>,
}

impl Ctx {
    fn for_file(&self, sys: &SystemFile) -> (u64, usize) {
        (self.seed.or(sys.seed).unwrap_or(0), self.retries.or(sys.retries).unwrap_or(25))
    }

    /// Resolution of `first`, from the cache file when one was given.
    fn resolution(&self, sys: &SystemFile, first: &Slp) -> Result<GeometricResolution, Failure> {
        if let Some(path) = &self.resolution {
            let v = read_json(path)?;
            let r = if v.get("resolution").is_some() { &v["resolution"] } else { &v };
            let res = resolution_from_json(r).map_err(|e| Failure::Usage(format!("{}: {}", path.display(), e)))?;
            if res.nvars() != first.nvars() {
                return Err(Failure::Usage("cached resolution has the wrong number of variables".into()));
            }
            eprintln!("using cached resolution of degree {}", res.degree());
            return Ok(res);
        }
        let (seed, retries) = self.for_file(sys);
        let sol = solve_system(first, seed, retries)?;
        trace_solution(&sol);
        Ok(sol.resolution)
    }
}

fn trace_solution(sol: &Solution) {
    for l in &sol.levels {
        eprintln!("level {}: degree {}, path {}, truncation {}", l.level, l.degree, path_name(&l.path), l.delta);
    }
    eprintln!("solved after {} attempt(s)", sol.attempts);
}

/// First n equations and the last one.
fn split_augmented(slp: &Slp) -> Result<(Slp, Slp), Failure> {
    let n = slp.nvars();
    if slp.noutputs() != n + 1 {
        return Err(Failure::Usage(format!("expected {} equations in {} unknowns, got {}", n + 1, n, slp.noutputs())));
    }
    Ok((slp.select_outputs(&(0..n).collect::<Vec<_>>()), slp.select_outputs(&[n])))
}

fn parse_gaussian(s: &str) -> Option<GaussianInt> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(body) = s.strip_suffix('i') else {
        return Some(GaussianInt::real(s.parse().ok()?));
    };
    // split at the last sign that is not leading
    let cut = body.char_indices().skip(1).filter(|(_, c)| *c == '+' || *c == '-').map(|(i, _)| i).last();
    let (re, im) = match cut {
        Some(i) => (&body[..i], &body[i..]),
        None => ("0", body),
    };
    let im: Int = match im {
        "" | "+" => Int::from(1),
        "-" => Int::from(-1),
        t => t.trim_start_matches('+').parse().ok()?,
    };
    Some(GaussianInt { re: re.parse().ok()?, im })
}

fn run(cli: Cli) -> Result<Value, Failure> {
    let ctx = Ctx { seed: cli.seed, retries: cli.retries, resolution: cli.resolution };
    match cli.cmd {
        Command::Solve { file, validate } => {
            let sys = load_system(&file)?;
            let (seed, retries) = ctx.for_file(&sys);
            let sol = solve_system(&sys.slp, seed, retries)?;
            trace_solution(&sol);
            let mut out = solution_json(&sol);
            if validate {
                let report = validate_resolution(&sol.resolution, &sys.slp);
                out["validation"] = report.to_json();
                if !report.all_pass() {
                    return Err(Failure::Hypothesis(format!("validation failed: {}", report.failures().join(", "))));
                }
            }
            Ok(out)
        }
        Command::Consistency { file } => {
            let sys = load_system(&file)?;
            let (first, g) = split_augmented(&sys.slp)?;
            let verdict = match ctx.resolution(&sys, &first) {
                Ok(res) => Some(decide_with_resolution(&res, &g)),
                Err(Failure::Hypothesis(msg)) if msg.starts_with("empty fiber") => {
                    eprintln!("{}", msg);
                    None
                }
                Err(e) => return Err(e),
            };
            Ok(match verdict {
                Some(v) => {
                    let certificate = match &v.kernel {
                        Some(k) => json!({"common_zeros": resolution_to_json(k)}),
                        None => json!({"product_over_zeros": v.det.as_ref().map(|d| d.to_string())}),
                    };
                    json!({"consistent": v.consistent, "certificate": certificate})
                }
                None => json!({"consistent": false, "certificate": {"first_equations_have_no_zeros": true}}),
            })
        }
        Command::Witness { file } => {
            let sys = load_system(&file)?;
            let (first, g) = split_augmented(&sys.slp)?;
            let res = ctx.resolution(&sys, &first)?;
            let w = bezout_witness(&res, &first, &g).map_err(|e| match e {
                DualityError::Shape(s) => Failure::Usage(s),
                e => Failure::Hypothesis(e.to_string()),
            })?;
            Ok(w.to_json())
        }
        Command::Liouville { file, p, q, epsilon } => {
            let p = parse_gaussian(&p).ok_or_else(|| Failure::Usage(format!("--p: not a Gaussian integer: {}", p)))?;
            let q: Int = q.parse().map_err(|_| Failure::Usage(format!("--q: not an integer: {}", q)))?;
            let epsilon: Rat = epsilon.parse().map_err(|_| Failure::Usage(format!("--epsilon: not a rational: {}", epsilon)))?;
            let query = ApproximationQuery { p, q, epsilon };
            query.check().map_err(|e| Failure::Usage(e.to_string()))?;
            let sys = load_system(&file)?;
            if sys.slp.noutputs() != sys.slp.nvars() || sys.slp.nvars() == 0 {
                return Err(Failure::Usage("expected n equations in n >= 1 unknowns".into()));
            }
            let res = ctx.resolution(&sys, &sys.slp)?;
            let report = denominator_bound(&res, &sys.slp, &query).map_err(|e| match e {
                LiouvilleError::Witness(_) => Failure::Hypothesis(e.to_string()),
                e => Failure::Usage(e.to_string()),
            })?;
            for line in &report.trace {
                eprintln!("{}", line);
            }
            Ok(report.to_json())
        }
        Command::Validate { file } => {
            let sys = load_system(&file)?;
            let res = ctx.resolution(&sys, &sys.slp)?;
            let report = validate_resolution(&res, &sys.slp);
            if report.all_pass() {
                Ok(report.to_json())
            } else {
                println!("{}", report.to_json());
                Err(Failure::Hypothesis(format!("validation failed: {}", report.failures().join(", "))))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let out = cli.out.clone();
    match run(cli) {
        Ok(v) => {
            let text = serde_json::to_string_pretty(&v).expect("serializable");
            match out {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, text + "\n") {
                        eprintln!("error: {}: {}", path.display(), e);
                        return ExitCode::from(1);
                    }
                }
                None => println!("{}", text),
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(1)
        }
        Err(Failure::Hypothesis(msg)) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
    }
}
