use super::{Lin, Slp, SlpBuilder};
use crate::arith::Int;
use crate::error::SlpError;
use num_traits::ToPrimitive;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Int),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>, SlpError> {
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let txt: String = cs[st..i].iter().collect();
            out.push((st, Tok::Num(txt.parse().unwrap())));
        } else if c.is_alphabetic() || c == '_' {
            let st = i;
            while i < cs.len() && (cs[i].is_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push((st, Tok::Ident(cs[st..i].iter().collect())));
        } else if "+-*^()".contains(c) {
            out.push((i, Tok::Op(c)));
            i += 1;
        } else {
            return Err(SlpError::Syntax { pos: i, msg: format!("unexpected character {:?}", c) });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    vars: &'a [&'a str],
    b: &'a mut SlpBuilder,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, msg: &str) -> Result<T, SlpError> {
        Err(SlpError::Syntax { pos: self.here(), msg: msg.into() })
    }

    fn expr(&mut self) -> Result<Lin, SlpError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Op('+')) => {
                    self.pos += 1;
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Op('-')) => {
                    self.pos += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Lin, SlpError> {
        let mut acc = self.unary()?;
        while let Some(Tok::Op('*')) = self.peek() {
            self.pos += 1;
            let r = self.unary()?;
            acc = self.b.mul(&acc, &r);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Lin, SlpError> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(self.unary()?.neg())
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<Lin, SlpError> {
        let base = self.atom()?;
        if let Some(Tok::Op('^')) = self.peek() {
            self.pos += 1;
            let e = match self.peek() {
                Some(Tok::Num(k)) => k.clone(),
                _ => return self.err("expected a nonnegative integer exponent"),
            };
            self.pos += 1;
            let e = match e.to_u64() {
                Some(e) => e,
                None => return self.err("exponent too large"),
            };
            return Ok(self.b.pow(&base, e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Lin, SlpError> {
        match self.peek().cloned() {
            Some(Tok::Num(k)) => {
                self.pos += 1;
                Ok(self.b.constant(&k))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match self.vars.iter().position(|v| *v == name) {
                    Some(i) => Ok(self.b.var(i)),
                    None => Err(SlpError::UnknownVariable(name)),
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                match self.peek() {
                    Some(Tok::Op(')')) => {
                        self.pos += 1;
                        Ok(e)
                    }
                    _ => self.err("expected ')'"),
                }
            }
            Some(_) => self.err("unexpected token"),
            None => self.err("unexpected end of input"),
        }
    }
}

fn parse_into(b: &mut SlpBuilder, expr: &str, vars: &[&str]) -> Result<Lin, SlpError> {
    let toks = lex(expr)?;
    let mut p = Parser { toks, pos: 0, end: expr.chars().count(), vars, b };
    let l = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(l)
}

pub fn parse_poly(expr: &str, vars: &[&str]) -> Result<Slp, SlpError> {
    parse_system(&[expr], vars)
}

/// Parses several polynomials into one program so common powers are shared.
pub fn parse_system<S: AsRef<str>>(exprs: &[S], vars: &[&str]) -> Result<Slp, SlpError> {
    let mut b = SlpBuilder::new(vars.len());
    let mut outs = Vec::new();
    for e in exprs {
        outs.push(parse_into(&mut b, e.as_ref(), vars)?);
    }
    Ok(b.finish(outs))
}
