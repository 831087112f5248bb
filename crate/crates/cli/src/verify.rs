use std::time::Instant;

use hitlab::fixtures::{load_fixture_tables, DimClaim, Family, NamedInvariant, OmegaClaim};
use hitlab::group_action::{check_local_action, invariants, invariants_local, is_invariant_class};
use hitlab::kameko::{kameko_down_poly, KamekoContext};
use hitlab::monomial::parse_omega;
use hitlab::GroupKind;
use rayon::prelude::*;

use crate::report::Report;
use crate::session::Session;
use crate::{Budget, Failure};

/// The reference tables are all about four variables.
const K: usize = 4;

enum Claim<'a> {
    Dim(&'a DimClaim),
    Omega(&'a OmegaClaim),
    Inv(&'a NamedInvariant),
}

impl Claim<'_> {
    fn degree(&self) -> u64 {
        match self {
            Claim::Dim(c) => c.degree() as u64,
            Claim::Omega(c) => c.omega.degree(),
            Claim::Inv(c) => c.degree as u64,
        }
    }

    fn describe(&self) -> String {
        match self {
            Claim::Dim(c) => format!("{} {} {}", c.family.letter(), c.s, c.t),
            Claim::Omega(c) => format!("omega {}", c.spec),
            Claim::Inv(c) => format!("invariant {}", c.name),
        }
    }
}

pub fn run(session: &Session, budget: &Budget, selector: &[String]) -> Result<Vec<Report>, Failure> {
    let tables = load_fixture_tables();
    let words: Vec<&str> = selector.iter().map(String::as_str).collect();
    let selected: Vec<Claim> = match words[..] {
        [] | ["all"] => tables
            .dims
            .iter()
            .map(Claim::Dim)
            .chain(tables.omegas.iter().map(Claim::Omega))
            .chain(tables.invariants.iter().map(Claim::Inv))
            .collect(),
        [fam @ ("d" | "n"), s, t] => {
            let family = Family::parse(fam).expect("matched above");
            let parse = |x: &str| {
                x.parse::<u32>()
                    .map_err(|_| Failure::Validation(format!("'{x}' is not a non-negative integer")))
            };
            let (s, t) = (parse(s)?, parse(t)?);
            let claim = tables
                .dim_claim(family, s, t)
                .ok_or_else(|| Failure::Validation(format!("no reference value for {fam} {s} {t}")))?;
            vec![Claim::Dim(claim)]
        }
        ["omega", spec] => {
            let omega = parse_omega(spec).map_err(|e| Failure::Validation(format!("bad weight vector: {e}")))?;
            let claim = tables
                .omega_claim(&omega)
                .ok_or_else(|| Failure::Validation(format!("no reference values for weight {omega}")))?;
            vec![Claim::Omega(claim)]
        }
        _ => {
            return Err(Failure::Validation(
                "verify takes: all | d S T | n S T | omega SPEC".into(),
            ))
        }
    };

    let single = selected.len() == 1;
    let mut runnable = Vec::new();
    for claim in selected {
        let n = u32::try_from(claim.degree()).unwrap_or(u32::MAX);
        match budget.check(K, n) {
            Ok(()) => runnable.push(claim),
            Err(e) if single => return Err(e),
            Err(_) => eprintln!("skipping {} (degree {n} over budget)", claim.describe()),
        }
    }

    let results: Vec<Result<Vec<Report>, Failure>> = runnable.par_iter().map(|c| check_claim(session, c)).collect();
    let mut reports = Vec::new();
    for r in results {
        reports.extend(r?);
    }
    for r in reports.iter().filter(|r| r.matches == Some(false)) {
        eprintln!(
            "MISMATCH {}: computed {}, expected {}",
            r.label,
            r.dim,
            r.expected.unwrap_or_default()
        );
    }
    Ok(reports)
}

fn check_claim(session: &Session, claim: &Claim) -> Result<Vec<Report>, Failure> {
    let start = Instant::now();
    let mut reports = match claim {
        Claim::Dim(c) => {
            let n = c.degree();
            let (h, cached) = session.hit_space(K, n)?;
            let inv = invariants(&h, GroupKind::GL)?;
            let mut r = Report::new(
                format!("{}_{{{},{}}} = {n}: dim (QP_4)^GL_4", c.family.letter(), c.s, c.t),
                K,
                n,
                inv.dim(),
            )
            .group(GroupKind::GL.name())
            .representatives(&inv.basis)
            .expect(c.expected);
            r.cache_hit = cached;
            vec![r]
        }
        Claim::Omega(c) => {
            let (q, cached) = session.weight_quotient(K, &c.omega)?;
            check_local_action(&q, GroupKind::GL)?;
            let sigma = invariants_local(&q, GroupKind::Sigma)?;
            let gl = invariants_local(&q, GroupKind::GL)?;
            let n = q.degree();
            let w = &c.omega;
            let mut rows = vec![
                Report::new(format!("dim QP_4{w}"), K, n, q.dim())
                    .omega(w)
                    .expect(c.adm),
                Report::new(format!("dim QP_4{w}^Sigma_4"), K, n, sigma.dim())
                    .omega(w)
                    .group(GroupKind::Sigma.name())
                    .expect(c.sigma),
                Report::new(format!("dim QP_4{w}^GL_4"), K, n, gl.dim())
                    .omega(w)
                    .group(GroupKind::GL.name())
                    .representatives(&gl.basis)
                    .expect(c.gl),
            ];
            for r in &mut rows {
                r.cache_hit = cached;
            }
            rows
        }
        Claim::Inv(c) => {
            let (h, mut cached) = session.hit_space(K, c.degree)?;
            let mut ok = is_invariant_class(&h, &c.polynomial, GroupKind::GL)?;
            if c.kernel {
                let ctx = KamekoContext::new(K, c.degree)?;
                let (target, tc) = session.hit_space(K, ctx.target)?;
                cached &= tc;
                ok &= target.contains(&kameko_down_poly(&c.polynomial)?)?;
            }
            let what = if c.kernel {
                "nonzero GL_4-invariant class in the Kameko kernel"
            } else {
                "nonzero GL_4-invariant class"
            };
            let mut r = Report::new(format!("{} is a {what}", c.name), K, c.degree, ok as usize)
                .group(GroupKind::GL.name())
                .representatives(std::slice::from_ref(&c.polynomial))
                .expect(1);
            r.cache_hit = cached;
            vec![r]
        }
    };
    let elapsed = start.elapsed().as_millis() as u64;
    for r in &mut reports {
        r.elapsed_ms = elapsed;
    }
    Ok(reports)
}
