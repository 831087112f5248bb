//! Reference tables of expected dimensions and explicit invariants.
//!
//! The tables live in `data/fixtures.txt`, a line-oriented UTF-8 file:
//!
//! ```text
//! HITFIX 1
//! DIM d|n s t expected "anchor" [note="..."]
//! OMEGA "(3)^2|(2)" adm=41 sigma=4 gl=0 "anchor" [note="..."]
//! INV name degree [[e1,e2,e3,e4],...] "anchor" [kernel=true] [note="..."]
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use crate::monomial::{parse_omega, Monomial, WeightVector};
use crate::steenrod::Polynomial;
use crate::Error;

const EMBEDDED: &str = include_str!("../data/fixtures.txt");
const HEADER: &str = "HITFIX 1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    /// Degrees `d_{s,t} = 2^{s+t} + 2^s - 3`.
    D,
    /// Degrees `n_{s,t} = 2^{s+t} + 2^s - 2`.
    N,
}

impl Family {
    pub fn degree(self, s: u32, t: u32) -> u32 {
        let base = (1u32 << (s + t)) + (1u32 << s);
        match self {
            Family::D => base - 3,
            Family::N => base - 2,
        }
    }

    pub fn letter(self) -> &'static str {
        match self {
            Family::D => "d",
            Family::N => "n",
        }
    }

    pub fn parse(s: &str) -> Option<Family> {
        match s {
            "d" => Some(Family::D),
            "n" => Some(Family::N),
            _ => None,
        }
    }
}

/// `dim (QP_4)^{GL_4}` in one degree of a family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimClaim {
    pub family: Family,
    pub s: u32,
    pub t: u32,
    pub expected: usize,
    pub anchor: String,
    pub note: Option<String>,
}

impl DimClaim {
    pub fn degree(&self) -> u32 {
        self.family.degree(self.s, self.t)
    }
}

/// Sizes attached to one weight vector in four variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaClaim {
    pub spec: String,
    pub omega: WeightVector,
    pub adm: usize,
    pub sigma: usize,
    pub gl: usize,
    pub anchor: String,
    pub note: Option<String>,
}

/// An explicit polynomial whose class is a nonzero `GL_k`-invariant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedInvariant {
    pub name: String,
    pub degree: u32,
    pub polynomial: Polynomial,
    /// Also claimed to lie in the kernel of Kameko's map.
    pub kernel: bool,
    pub anchor: String,
    pub note: Option<String>,
}

#[derive(Clone, Debug, Default)]
pub struct FixtureTables {
    pub dims: Vec<DimClaim>,
    pub omegas: Vec<OmegaClaim>,
    pub invariants: Vec<NamedInvariant>,
}

impl FixtureTables {
    pub fn dim_claim(&self, family: Family, s: u32, t: u32) -> Option<&DimClaim> {
        self.dims.iter().find(|c| c.family == family && c.s == s && c.t == t)
    }

    pub fn omega_claim(&self, omega: &WeightVector) -> Option<&OmegaClaim> {
        self.omegas.iter().find(|c| &c.omega == omega)
    }
}

/// The tables shipped with the crate.
pub fn load_fixture_tables() -> FixtureTables {
    parse_fixtures(EMBEDDED).expect("embedded fixture file is valid")
}

#[derive(Debug, PartialEq)]
enum Token<'a> {
    Word(&'a str),
    Quoted(String),
    Bracket(&'a str),
    KeyValue(&'a str, String),
}

fn tokenize(line: &str) -> Result<Vec<Token<'_>>, String> {
    let bytes = line.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b' ' | b'\t' => i += 1,
            b'"' => {
                let (s, next) = quoted(line, i)?;
                out.push(Token::Quoted(s));
                i = next;
            }
            b'[' => {
                let start = i;
                let mut depth = 0;
                while i < bytes.len() {
                    match bytes[i] {
                        b'[' => depth += 1,
                        b']' => depth -= 1,
                        _ => {}
                    }
                    i += 1;
                    if depth == 0 {
                        break;
                    }
                }
                if depth != 0 {
                    return Err("unbalanced brackets".into());
                }
                out.push(Token::Bracket(&line[start..i]));
            }
            _ => {
                let start = i;
                while i < bytes.len() && !matches!(bytes[i], b' ' | b'\t' | b'=' | b'"' | b'[') {
                    i += 1;
                }
                let word = &line[start..i];
                if i < bytes.len() && bytes[i] == b'=' {
                    i += 1;
                    let value = if i < bytes.len() && bytes[i] == b'"' {
                        let (s, next) = quoted(line, i)?;
                        i = next;
                        s
                    } else {
                        let vstart = i;
                        while i < bytes.len() && !matches!(bytes[i], b' ' | b'\t') {
                            i += 1;
                        }
                        line[vstart..i].to_string()
                    };
                    out.push(Token::KeyValue(word, value));
                } else {
                    out.push(Token::Word(word));
                }
            }
        }
    }
    Ok(out)
}

fn quoted(line: &str, open: usize) -> Result<(String, usize), String> {
    let rest = &line[open + 1..];
    let close = rest.find('"').ok_or("unterminated string")?;
    Ok((rest[..close].to_string(), open + 1 + close + 1))
}

fn parse_monomial_list(text: &str) -> Result<Vec<Vec<u32>>, String> {
    let inner = text
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or("expected [[...],...]")?
        .trim();
    let mut out = Vec::new();
    let mut rest = inner;
    while !rest.is_empty() {
        let body = rest.strip_prefix('[').ok_or("expected '['")?;
        let close = body.find(']').ok_or("expected ']'")?;
        let exps = body[..close]
            .split(',')
            .map(|e| {
                e.trim()
                    .parse::<u32>()
                    .map_err(|_| format!("bad exponent '{}'", e.trim()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        out.push(exps);
        rest = body[close + 1..].trim_start();
        rest = rest.strip_prefix(',').unwrap_or(rest).trim_start();
    }
    Ok(out)
}

fn parse_count(v: &str, key: &str) -> Result<usize, String> {
    v.parse().map_err(|_| format!("{key} must be a non-negative integer"))
}

fn parse_line(fields: &[Token<'_>], tables: &mut FixtureTables) -> Result<(), String> {
    let mut anchor = None;
    let mut note = None;
    let mut options = Vec::new();
    let mut positional = Vec::new();
    for f in &fields[1..] {
        match f {
            Token::KeyValue("note", v) => note = Some(v.clone()),
            Token::KeyValue(k, v) => options.push((*k, v.as_str())),
            other => positional.push(other),
        }
    }
    // the last quoted positional is the anchor
    if let Some(Token::Quoted(a)) = positional.last() {
        anchor = Some(a.clone());
        positional.pop();
    }
    let anchor = anchor.ok_or("missing anchor string")?;
    let option = |key: &str| options.iter().find(|(k, _)| *k == key).map(|(_, v)| *v);
    let known = |allowed: &[&str]| -> Result<(), String> {
        match options.iter().find(|(k, _)| !allowed.contains(k)) {
            Some((k, _)) => Err(format!("unknown option '{k}'")),
            None => Ok(()),
        }
    };
    match fields[0] {
        Token::Word("DIM") => {
            known(&[])?;
            let [Token::Word(fam), Token::Word(s), Token::Word(t), Token::Word(e)] = positional[..] else {
                return Err("DIM needs family, s, t and expected value".into());
            };
            let family = Family::parse(fam).ok_or("family must be 'd' or 'n'")?;
            let s: u32 = s.parse().map_err(|_| "s must be a positive integer")?;
            let t: u32 = t.parse().map_err(|_| "t must be a positive integer")?;
            if s == 0 || t == 0 || s + t > 20 {
                return Err("s and t must be positive and s + t at most 20".into());
            }
            tables.dims.push(DimClaim {
                family,
                s,
                t,
                expected: parse_count(e, "expected")?,
                anchor,
                note,
            });
        }
        Token::Word("OMEGA") => {
            known(&["adm", "sigma", "gl"])?;
            let [Token::Quoted(spec)] = positional[..] else {
                return Err("OMEGA needs a quoted weight vector".into());
            };
            let omega = parse_omega(spec).map_err(|e| e.to_string())?;
            let get = |key: &str| -> Result<usize, String> {
                parse_count(option(key).ok_or(format!("missing {key}="))?, key)
            };
            let (adm, sigma, gl) = (get("adm")?, get("sigma")?, get("gl")?);
            if gl > sigma || sigma > adm {
                return Err("expected gl ≤ sigma ≤ adm".into());
            }
            tables.omegas.push(OmegaClaim {
                spec: spec.clone(),
                omega,
                adm,
                sigma,
                gl,
                anchor,
                note,
            });
        }
        Token::Word("INV") => {
            known(&["kernel"])?;
            let [Token::Word(name), Token::Word(degree), Token::Bracket(list)] = positional[..] else {
                return Err("INV needs name, degree and monomial list".into());
            };
            let degree: u32 = degree.parse().map_err(|_| "degree must be an integer")?;
            let exps = parse_monomial_list(list)?;
            let k = exps.first().ok_or("empty monomial list")?.len();
            let mut monomials = Vec::new();
            for e in &exps {
                if e.len() != k {
                    return Err("monomials have different variable counts".into());
                }
                let m = Monomial::new(e).map_err(|e| e.to_string())?;
                if m.degree() != degree {
                    return Err(format!("{m} does not have degree {degree}"));
                }
                monomials.push(m);
            }
            let kernel = match option("kernel") {
                None | Some("false") => false,
                Some("true") => true,
                Some(_) => return Err("kernel must be true or false".into()),
            };
            tables.invariants.push(NamedInvariant {
                name: name.to_string(),
                degree,
                polynomial: Polynomial::from_monomials(monomials),
                kernel,
                anchor,
                note,
            });
        }
        _ => return Err("unknown record type".into()),
    }
    Ok(())
}

pub fn parse_fixtures(text: &str) -> Result<FixtureTables, Error> {
    let mut tables = FixtureTables::default();
    let mut lines = text.lines().enumerate().filter(|(_, l)| {
        let l = l.trim();
        !l.is_empty() && !l.starts_with('#')
    });
    match lines.next() {
        Some((_, l)) if l.trim() == HEADER => {}
        Some((i, _)) => {
            return Err(Error::Fixture {
                line: i + 1,
                msg: format!("expected header '{HEADER}'"),
            })
        }
        None => {
            return Err(Error::Fixture {
                line: 0,
                msg: "empty fixture file".into(),
            })
        }
    }
    for (i, line) in lines {
        let fail = |msg: String| Error::Fixture { line: i + 1, msg };
        let fields = tokenize(line.trim()).map_err(fail)?;
        parse_line(&fields, &mut tables).map_err(fail)?;
    }
    Ok(tables)
}
