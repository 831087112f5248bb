//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::cmp::Ordering;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use hitlab::fixtures::{load_fixture_tables, Family};
use hitlab::group_action::{apply_rho, check_local_action, invariants, invariants_local, is_invariant_class};
use hitlab::kameko::{kameko_down_poly, KamekoContext, KamekoMap};
use hitlab::monomial::enumerate_monomials;
use hitlab::steenrod::sq_poly;
use hitlab::{GroupKind, HitSpace, Monomial, Polynomial, Strategy, WeightQuotient};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = fn() -> Result<String, String>;

fn main() -> ExitCode {
    let criteria: [(&str, Check); 7] = [
        ("1 d-table GL_4 invariants", crit_d_table),
        ("2 n-table GL_4 invariants", crit_n_table),
        ("3 weight-family dimensions", crit_omega_families),
        ("4 explicit invariant classes", crit_explicit_invariants),
        ("5 Kameko sanity", crit_kameko),
        ("6 oracle equivalences", crit_oracles),
        ("7 degrees 69 and 70", crit_stretch),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {name}: {detail} [{secs:.1}s]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail} [{secs:.1}s]");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn gl_dim(k: usize, n: u32) -> Result<usize, String> {
    let h = HitSpace::new(k, n).map_err(|e| e.to_string())?;
    Ok(invariants(&h, GroupKind::GL).map_err(|e| e.to_string())?.dim())
}

fn table(family: Family, rows: &[(u32, u32)]) -> Result<String, String> {
    let tables = load_fixture_tables();
    let mut seen = Vec::new();
    for &(s, t) in rows {
        let claim = tables
            .dim_claim(family, s, t)
            .ok_or_else(|| format!("no fixture row for ({s},{t})"))?;
        let got = gl_dim(4, claim.degree())?;
        ensure(got == claim.expected, || {
            format!(
                "({s},{t}) degree {}: computed {got}, expected {}",
                claim.degree(),
                claim.expected
            )
        })?;
        seen.push(format!("{}:{got}", claim.degree()));
    }
    Ok(format!("{} rows exact ({})", rows.len(), seen.join(" ")))
}

fn crit_d_table() -> Result<String, String> {
    table(
        Family::D,
        &[(1, 1), (1, 2), (1, 3), (1, 4), (2, 1), (2, 2), (2, 3), (3, 1), (3, 2)],
    )
}

fn crit_n_table() -> Result<String, String> {
    table(
        Family::N,
        &[(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (1, 4)],
    )
}

fn crit_omega_families() -> Result<String, String> {
    let tables = load_fixture_tables();
    for c in &tables.omegas {
        let q = WeightQuotient::new(4, &c.omega).map_err(|e| e.to_string())?;
        check_local_action(&q, GroupKind::GL).map_err(|e| format!("{}: {e}", c.spec))?;
        let sigma = invariants_local(&q, GroupKind::Sigma).map_err(|e| e.to_string())?.dim();
        let gl = invariants_local(&q, GroupKind::GL).map_err(|e| e.to_string())?.dim();
        ensure((q.dim(), sigma, gl) == (c.adm, c.sigma, c.gl), || {
            format!(
                "{}: computed adm/Sigma/GL {}/{sigma}/{gl}, expected {}/{}/{}",
                c.spec,
                q.dim(),
                c.adm,
                c.sigma,
                c.gl
            )
        })?;
        if q.degree() <= 40 {
            let global = HitSpace::new(4, q.degree()).map_err(|e| e.to_string())?;
            q.check_against(&global).map_err(|e| format!("{}: {e}", c.spec))?;
            let count = global
                .admissible_monomials()
                .iter()
                .filter(|m| &m.weight_vector() == q.omega())
                .count();
            ensure(count == q.dim(), || {
                format!(
                    "{}: {count} global admissible monomials of this weight, local dim {}",
                    c.spec,
                    q.dim()
                )
            })?;
        }
    }
    Ok(format!(
        "{} weight vectors exact (adm, Sigma_4, GL_4)",
        tables.omegas.len()
    ))
}

fn crit_explicit_invariants() -> Result<String, String> {
    let tables = load_fixture_tables();
    let mut names = Vec::new();
    for inv in &tables.invariants {
        let h = HitSpace::new(4, inv.degree).map_err(|e| e.to_string())?;
        let f = &inv.polynomial;
        ensure(!h.contains(f).map_err(|e| e.to_string())?, || {
            format!("{} is hit", inv.name)
        })?;
        for j in 1..=4 {
            let moved = apply_rho(j, f).map_err(|e| e.to_string())?.add(f);
            ensure(
                moved.is_zero() || h.contains(&moved).map_err(|e| e.to_string())?,
                || format!("{}: rho_{j} moves the class", inv.name),
            )?;
        }
        ensure(
            is_invariant_class(&h, f, GroupKind::GL).map_err(|e| e.to_string())?,
            || format!("{}: not reported invariant", inv.name),
        )?;
        if inv.kernel {
            let ctx = KamekoContext::new(4, inv.degree).map_err(|e| e.to_string())?;
            let target = HitSpace::new(4, ctx.target).map_err(|e| e.to_string())?;
            let down = kameko_down_poly(f).map_err(|e| e.to_string())?;
            ensure(
                down.is_zero() || target.contains(&down).map_err(|e| e.to_string())?,
                || format!("{}: Kameko image is nonzero", inv.name),
            )?;
        }
        names.push(format!("{}@{}", inv.name, inv.degree));
    }
    ensure(names.iter().any(|n| n.starts_with("xi_4_0")), || {
        "xi_4_0 missing".into()
    })?;
    ensure(names.iter().any(|n| n.starts_with("zeta_2_2")), || {
        "zeta_2_2 missing".into()
    })?;
    Ok(format!("nonzero, rho_1..rho_4 fixed mod hit: {}", names.join(", ")))
}

fn crit_kameko() -> Result<String, String> {
    let src = HitSpace::new(4, 18).map_err(|e| e.to_string())?;
    let tgt = HitSpace::new(4, 7).map_err(|e| e.to_string())?;
    let map = KamekoMap::new(&src, &tgt).map_err(|e| e.to_string())?;
    let kernel = map.kernel_invariants(GroupKind::GL).map_err(|e| e.to_string())?.dim();
    ensure(kernel == 1, || format!("Ker^GL in degree 18 has dim {kernel}"))?;
    for n in [4, 8] {
        let d = gl_dim(4, n)?;
        ensure(d == 0, || format!("degree {n}: GL dim {d}"))?;
    }
    let powers: Vec<usize> = (2..=5).map(|t| gl_dim(4, (1 << t) - 2)).collect::<Result<_, _>>()?;
    ensure(powers == [0, 0, 1, 1], || format!("degrees 2^t-2, t=2..5: {powers:?}"))?;
    let h9 = HitSpace::new(4, 9).map_err(|e| e.to_string())?;
    ensure(h9.dim() == 46, || format!("dim (QP_4)_9 = {}", h9.dim()))?;
    Ok("Ker^GL(18)=1, GL dims at 4,8 = 0, at 2^t-2 (t=2..5) = 0,0,1,1, dim (QP_4)_9 = 46".into())
}

fn crit_stretch() -> Result<String, String> {
    let d = gl_dim(4, 69)?;
    let n = gl_dim(4, 70)?;
    ensure((d, n) == (0, 2), || format!("degree 69: {d}, degree 70: {n}"))?;
    Ok("degree 69 GL dim 0, degree 70 GL dim 2".into())
}

// ---- oracles ----

fn crit_oracles() -> Result<String, String> {
    let a = oracle_all_squares()?;
    let b = oracle_admissibility()?;
    let c = oracle_gl2()?;
    let d = oracle_identities()?;
    Ok(format!("(a) {a}; (b) {b}; (c) {c}; (d) {d}"))
}

fn pascal_mod2(a: u32, i: u32) -> bool {
    if i > a {
        return false;
    }
    let mut row = vec![true];
    for _ in 0..a {
        let mut next = vec![true; row.len() + 1];
        for j in 1..row.len() {
            next[j] = row[j - 1] ^ row[j];
        }
        row = next;
    }
    row[i as usize]
}

/// Sq^i on a monomial via the Cartan formula and Pascal's triangle.
fn naive_sq(i: u32, m: &Monomial) -> Vec<Monomial> {
    fn go(i: u32, e: &[u32], acc: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if e.is_empty() {
            if i == 0 {
                out.push(Monomial::new(acc).unwrap());
            }
            return;
        }
        for ij in 0..=i.min(e[0]) {
            if pascal_mod2(e[0], ij) {
                acc.push(e[0] + ij);
                go(i - ij, &e[1..], acc, out);
                acc.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(i, m.exponents(), &mut Vec::new(), &mut out);
    out
}

struct XorBasis(Vec<u128>);

impl XorBasis {
    fn reduce(&self, mut v: u128) -> u128 {
        for &b in &self.0 {
            v = v.min(v ^ b);
        }
        v
    }

    fn insert(&mut self, v: u128) -> bool {
        let v = self.reduce(v);
        if v == 0 {
            return false;
        }
        self.0.push(v);
        self.0.sort_unstable_by(|a, b| b.cmp(a));
        true
    }
}

fn bits(monos: &[Monomial], terms: &[Monomial]) -> u128 {
    terms
        .iter()
        .fold(0, |acc, t| acc ^ (1u128 << monos.iter().position(|m| m == t).unwrap()))
}

/// Span of every Sq^i(monomial), i >= 1, landing in degree n.
fn naive_hit(k: usize, n: u32, monos: &[Monomial]) -> (XorBasis, Vec<Polynomial>) {
    let mut basis = XorBasis(Vec::new());
    let mut gens = Vec::new();
    for i in 1..=n {
        for m in enumerate_monomials(k, n - i) {
            let terms = naive_sq(i, &m);
            if terms.is_empty() {
                continue;
            }
            basis.insert(bits(monos, &terms));
            gens.push(Polynomial::from_monomials(terms));
        }
    }
    (basis, gens)
}

fn oracle_all_squares() -> Result<String, String> {
    let mut cases = 0;
    for k in 1..=3 {
        for n in 1..=12 {
            let monos = enumerate_monomials(k, n);
            let (basis, gens) = naive_hit(k, n, &monos);
            for strategy in [Strategy::Full, Strategy::Singer] {
                if strategy == Strategy::Singer && HitSpace::default_strategy(k, n) != Strategy::Singer {
                    continue;
                }
                let h = HitSpace::with_strategy(k, n, strategy).map_err(|e| e.to_string())?;
                ensure(h.dim() + basis.0.len() == monos.len(), || {
                    format!(
                        "k={k} n={n} {}: dim {} vs oracle {}",
                        strategy.name(),
                        h.dim(),
                        monos.len() - basis.0.len()
                    )
                })?;
                for g in &gens {
                    ensure(h.contains(g).map_err(|e| e.to_string())?, || {
                        format!("k={k} n={n}: {g} not in computed hit space")
                    })?;
                }
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} (k,n,strategy) cases"))
}

fn weight_key(m: &Monomial) -> Vec<u32> {
    (0..32)
        .map(|r| m.exponents().iter().map(|e| (e >> r) & 1).sum())
        .collect()
}

fn naive_order(a: &Monomial, b: &Monomial) -> Ordering {
    weight_key(a)
        .cmp(&weight_key(b))
        .then_with(|| a.exponents().cmp(b.exponents()))
}

fn oracle_admissibility() -> Result<String, String> {
    let mut cases = 0;
    for k in 1..=3 {
        for n in 1..=10 {
            let monos = enumerate_monomials(k, n);
            let (mut span, _) = naive_hit(k, n, &monos);
            let mut ascending = monos.clone();
            ascending.sort_by(naive_order);
            let mut admissible = Vec::new();
            for m in &ascending {
                let v = bits(&monos, std::slice::from_ref(m));
                if span.reduce(v) != 0 {
                    admissible.push(*m);
                }
                span.insert(v);
            }
            let h = HitSpace::with_strategy(k, n, Strategy::Full).map_err(|e| e.to_string())?;
            let mut got = h.admissible_monomials();
            got.sort_by(naive_order);
            ensure(got == admissible, || format!("k={k} n={n}: admissible sets differ"))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} (k,n) cases"))
}

fn substitute(g: [[bool; 2]; 2], f: &Polynomial) -> Polynomial {
    let image = |i: usize| Polynomial::from_monomials((0..2).filter(|&j| g[i][j]).map(|j| Monomial::var(2, j + 1)));
    let power = |p: &Polynomial, e: u32| (0..e).fold(Polynomial::from(Monomial::one(2)), |acc, _| acc.mul(p));
    f.terms().iter().fold(Polynomial::zero(), |acc, m| {
        acc.add(&power(&image(0), m.exponent(1)).mul(&power(&image(1), m.exponent(2))))
    })
}

fn oracle_gl2() -> Result<String, String> {
    let mut group = Vec::new();
    for code in 0u8..16 {
        let g = [[code & 1 != 0, code & 2 != 0], [code & 4 != 0, code & 8 != 0]];
        if g[0][0] & g[1][1] ^ g[0][1] & g[1][0] {
            group.push(g);
        }
    }
    ensure(group.len() == 6, || format!("GL_2 has {} elements", group.len()))?;
    let mut dims = Vec::new();
    for n in 1..=8 {
        let h = HitSpace::new(2, n).map_err(|e| e.to_string())?;
        let basis = h.admissible_monomials();
        let mut fixed = 0u32;
        for mask in 0u32..1 << basis.len() {
            let f = Polynomial::from_monomials((0..basis.len()).filter(|i| mask >> i & 1 == 1).map(|i| basis[i]));
            let mut ok = true;
            for g in &group {
                let moved = substitute(*g, &f).add(&f);
                if !moved.is_zero() && !h.contains(&moved).map_err(|e| e.to_string())? {
                    ok = false;
                    break;
                }
            }
            fixed += ok as u32;
        }
        let oracle = fixed.trailing_zeros() as usize;
        ensure(fixed.is_power_of_two(), || format!("n={n}: {fixed} fixed classes"))?;
        let got = invariants(&h, GroupKind::GL).map_err(|e| e.to_string())?.dim();
        ensure(got == oracle, || {
            format!("n={n}: generators give {got}, exhaustive {oracle}")
        })?;
        dims.push(got);
    }
    Ok(format!("GL_2 dims n=1..8 {dims:?}"))
}

fn random_poly(rng: &mut ChaCha8Rng, k: usize, degree: u32) -> Polynomial {
    let terms = rng.gen_range(1..=4);
    Polynomial::from_monomials((0..terms).map(|_| {
        let mut e = vec![0u32; k];
        for _ in 0..degree {
            e[rng.gen_range(0..k)] += 1;
        }
        Monomial::new(&e).unwrap()
    }))
}

fn same(a: &Polynomial, b: &Polynomial) -> bool {
    a.terms() == b.terms()
}

fn oracle_identities() -> Result<String, String> {
    const CASES: usize = 1000;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for case in 0..CASES {
        let k = rng.gen_range(1..=4);
        let (d1, d2) = (rng.gen_range(0..=5), rng.gen_range(0..=5));
        let f = random_poly(&mut rng, k, d1);
        let g = random_poly(&mut rng, k, d2);

        let n = rng.gen_range(0..=d1 + d2 + 1);
        let lhs = sq_poly(n, &f.mul(&g));
        let rhs = (0..=n).fold(Polynomial::zero(), |acc, i| {
            acc.add(&sq_poly(i, &f).mul(&sq_poly(n - i, &g)))
        });
        ensure(same(&lhs, &rhs), || format!("Cartan case {case}: Sq^{n}(({f})({g}))"))?;

        let b = rng.gen_range(1..=6);
        let a = rng.gen_range(1..2 * b);
        let lhs = sq_poly(a, &sq_poly(b, &f));
        let rhs = (0..=a / 2)
            .filter(|&j| pascal_mod2(b - 1 - j, a - 2 * j))
            .fold(Polynomial::zero(), |acc, j| {
                acc.add(&sq_poly(a + b - j, &sq_poly(j, &f)))
            });
        ensure(same(&lhs, &rhs), || format!("Adem case {case}: Sq^{a}Sq^{b}({f})"))?;

        ensure(same(&sq_poly(0, &f), &f), || format!("Sq^0 case {case}: {f}"))?;
        ensure(same(&sq_poly(d1, &f), &f.square()), || {
            format!("Sq^deg case {case}: {f}")
        })?;
        let over = d1 + rng.gen_range(1..=4);
        ensure(sq_poly(over, &f).is_zero(), || {
            format!("instability case {case}: Sq^{over}({f})")
        })?;
    }
    Ok(format!("{CASES} random cases each of Cartan, Adem, instability"))
}
