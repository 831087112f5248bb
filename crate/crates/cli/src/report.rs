use std::io::Write;

use hitlab::{Monomial, Polynomial, WeightVector};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// One computed value, optionally checked against an expectation.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    /// Human-readable label; not part of the machine formats.
    #[serde(skip)]
    pub label: String,
    pub k: usize,
    pub degree: u32,
    pub omega: Option<Vec<u32>>,
    pub group: Option<&'static str>,
    pub dim: usize,
    pub basis: Option<Vec<Vec<u32>>>,
    /// Representatives of invariant or kernel classes, one monomial list each.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub representatives: Option<Vec<Vec<Vec<u32>>>>,
    pub expected: Option<usize>,
    #[serde(rename = "match")]
    pub matches: Option<bool>,
    pub elapsed_ms: u64,
    pub cache_hit: bool,
}

impl Report {
    pub fn new(label: impl Into<String>, k: usize, degree: u32, dim: usize) -> Self {
        Report {
            label: label.into(),
            k,
            degree,
            omega: None,
            group: None,
            dim,
            basis: None,
            representatives: None,
            expected: None,
            matches: None,
            elapsed_ms: 0,
            cache_hit: false,
        }
    }

    pub fn omega(mut self, omega: &WeightVector) -> Self {
        self.omega = Some(omega.entries().to_vec());
        self
    }

    pub fn group(mut self, group: &'static str) -> Self {
        self.group = Some(group);
        self
    }

    pub fn basis(mut self, monomials: &[Monomial]) -> Self {
        self.basis = Some(monomials.iter().map(|m| m.exponents().to_vec()).collect());
        self
    }

    pub fn representatives(mut self, polys: &[Polynomial]) -> Self {
        self.representatives = Some(
            polys
                .iter()
                .map(|p| p.terms().iter().map(|m| m.exponents().to_vec()).collect())
                .collect(),
        );
        self
    }

    pub fn expect(mut self, expected: usize) -> Self {
        self.expected = Some(expected);
        self.matches = Some(expected == self.dim);
        self
    }
}

#[derive(Serialize)]
struct CsvRow<'a> {
    k: usize,
    degree: u32,
    omega: String,
    group: &'a str,
    dim: usize,
    basis: String,
    expected: String,
    #[serde(rename = "match")]
    matches: String,
    elapsed_ms: u64,
    cache_hit: bool,
}

fn opt_json<T: Serialize>(v: &Option<T>) -> String {
    v.as_ref()
        .map(|v| serde_json::to_string(v).expect("plain data serializes"))
        .unwrap_or_default()
}

fn render_monomial(e: &[u32]) -> String {
    Monomial::new(e).map(|m| m.to_string()).unwrap_or_default()
}

pub fn emit(reports: &[Report], format: Format, mut out: impl Write) -> std::io::Result<()> {
    match format {
        Format::Json => {
            for r in reports {
                serde_json::to_writer(&mut out, r)?;
                writeln!(out)?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for r in reports {
                w.serialize(CsvRow {
                    k: r.k,
                    degree: r.degree,
                    omega: opt_json(&r.omega),
                    group: r.group.unwrap_or(""),
                    dim: r.dim,
                    basis: opt_json(&r.basis),
                    expected: r.expected.map(|e| e.to_string()).unwrap_or_default(),
                    matches: r.matches.map(|m| m.to_string()).unwrap_or_default(),
                    elapsed_ms: r.elapsed_ms,
                    cache_hit: r.cache_hit,
                })
                .map_err(std::io::Error::other)?;
            }
            w.flush()?;
        }
        Format::Text => {
            for r in reports {
                write!(out, "{}: {}", r.label, r.dim)?;
                if let Some(e) = r.expected {
                    let verdict = if r.matches == Some(true) { "ok" } else { "MISMATCH" };
                    write!(out, " (expected {e}, {verdict})")?;
                }
                writeln!(
                    out,
                    "  [{} ms{}]",
                    r.elapsed_ms,
                    if r.cache_hit { ", cached" } else { "" }
                )?;
                if let Some(basis) = &r.basis {
                    for e in basis {
                        writeln!(out, "  {}", render_monomial(e))?;
                    }
                }
                if let Some(reps) = &r.representatives {
                    for p in reps {
                        let terms: Vec<String> = p.iter().map(|e| render_monomial(e)).collect();
                        writeln!(out, "  {}", terms.join(" + "))?;
                    }
                }
            }
        }
    }
    Ok(())
}
