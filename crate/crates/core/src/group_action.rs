//! The action of `GL_k(F_2)` on `P_k` and invariants of `(QP_k)_n` and `QP_k(ω)`.

use rayon::prelude::*;

use crate::f2linalg::{kernel_of_stack, BitVector, LinearMap, Subspace};
use crate::hit::{HitSpace, WeightQuotient};
use crate::monomial::{Monomial, WeightVector};
use crate::steenrod::Polynomial;
use crate::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupKind {
    /// The symmetric group, generated by `ρ_1, ..., ρ_{k-1}`.
    Sigma,
    /// The general linear group, generated by `ρ_1, ..., ρ_k`.
    GL,
}

impl GroupKind {
    pub fn name(self) -> &'static str {
        match self {
            GroupKind::Sigma => "sigma",
            GroupKind::GL => "gl",
        }
    }

    /// Indices `j` of the generators `ρ_j`. For `k = 1` both groups are trivial.
    pub fn generators(self, k: usize) -> Vec<usize> {
        match self {
            GroupKind::Sigma => (1..k).collect(),
            GroupKind::GL if k >= 2 => (1..=k).collect(),
            GroupKind::GL => Vec::new(),
        }
    }
}

/// Calls `f` with each monomial of `ρ_j(m)`; the terms are distinct.
///
/// `ρ_j` swaps `x_j` and `x_{j+1}` for `j < k`; `ρ_k` sends `x_1` to `x_1 + x_2`.
pub fn for_each_rho_term(j: usize, m: &Monomial, mut f: impl FnMut(Monomial)) {
    let k = m.k();
    assert!((1..=k).contains(&j) && k >= 2, "ρ_{j} undefined for k = {k}");
    if j < k {
        let mut out = *m;
        out.set_exponent(j, m.exponent(j + 1));
        out.set_exponent(j + 1, m.exponent(j));
        f(out);
        return;
    }
    // (x1 + x2)^a = Σ over submasks i of a of x1^i x2^(a-i)
    let a = m.exponent(1);
    let b = m.exponent(2);
    let mut out = *m;
    let mut i = a;
    loop {
        out.set_exponent(1, i);
        out.set_exponent(2, a - i + b);
        f(out);
        if i == 0 {
            break;
        }
        i = (i - 1) & a;
    }
}

pub fn apply_rho(j: usize, f: &Polynomial) -> Result<Polynomial, Error> {
    let Some(k) = f.terms().first().map(Monomial::k) else {
        return Ok(Polynomial::zero());
    };
    if k < 2 || !(1..=k).contains(&j) {
        return Err(Error::InvalidArgument(format!("ρ_{j} is not defined for k = {k}")));
    }
    let mut terms = Vec::new();
    for m in f.terms() {
        for_each_rho_term(j, m, |t| terms.push(t));
    }
    Ok(Polynomial::from_monomials(terms))
}

/// A `k × k` matrix over `F_2`; `rows[i]` bit `j` is entry `(i, j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct F2Matrix {
    k: usize,
    rows: [u8; 8],
}

impl F2Matrix {
    pub fn from_rows(k: usize, rows: &[u8]) -> Self {
        assert!(k <= 8 && rows.len() == k);
        let mut r = [0u8; 8];
        r[..k].copy_from_slice(rows);
        F2Matrix { k, rows: r }
    }

    pub fn entry(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    pub fn is_invertible(&self) -> bool {
        let mut rows = self.rows;
        for c in 0..self.k {
            let Some(p) = (c..self.k).find(|&r| rows[r] >> c & 1 == 1) else {
                return false;
            };
            rows.swap(c, p);
            for r in 0..self.k {
                if r != c && rows[r] >> c & 1 == 1 {
                    rows[r] ^= rows[c];
                }
            }
        }
        true
    }

    /// Every invertible `k × k` matrix. Only sensible for small `k`.
    pub fn all_invertible(k: usize) -> Vec<F2Matrix> {
        assert!(k <= 4, "exhaustive enumeration only for k ≤ 4");
        let mut out = Vec::new();
        for code in 0u32..1 << (k * k) {
            let rows: Vec<u8> = (0..k).map(|i| (code >> (i * k) & ((1 << k) - 1)) as u8).collect();
            let m = F2Matrix::from_rows(k, &rows);
            if m.is_invertible() {
                out.push(m);
            }
        }
        out
    }
}

/// The substitution `x_j ↦ Σ_i M(i, j) x_i`.
pub fn apply_matrix(m: &F2Matrix, f: &Polynomial) -> Polynomial {
    let Some(k) = f.terms().first().map(Monomial::k) else {
        return Polynomial::zero();
    };
    assert_eq!(k, m.k, "matrix size does not match variable count");
    let mut total = Vec::new();
    for mono in f.terms() {
        let mut acc = Polynomial::from(Monomial::one(k));
        for j in 0..k {
            let a = mono.exponents()[j];
            // l^a is the product of the Frobenius powers l^(2^b) over the bits b of a
            for b in 0..32 {
                if a >> b & 1 == 0 {
                    continue;
                }
                let form = Polynomial::from_monomials((0..k).filter(|&i| m.entry(i, j)).map(|i| {
                    let mut e = vec![0; k];
                    e[i] = 1 << b;
                    Monomial::new(&e).unwrap()
                }));
                acc = acc.mul(&form);
            }
        }
        total.extend_from_slice(acc.terms());
    }
    Polynomial::from_monomials(total)
}

/// A basis of invariant classes, each written in admissible normal form.
#[derive(Clone, Debug)]
pub struct InvariantSpace {
    pub kind: GroupKind,
    pub degree: u32,
    pub omega: Option<WeightVector>,
    pub basis: Vec<Polynomial>,
}

impl InvariantSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// The matrix of `[b] ↦ [ρ_j(b) + b]` on the admissible basis.
pub(crate) fn rho_minus_identity(hit: &HitSpace, j: usize) -> Result<LinearMap, Error> {
    let basis = hit.admissible_monomials();
    let cols: Result<Vec<BitVector>, Error> = basis
        .par_iter()
        .enumerate()
        .map(|(i, b)| {
            let mut image = hit.coords(&apply_rho(j, &Polynomial::from(*b))?)?;
            image.flip(i);
            Ok(image)
        })
        .collect();
    Ok(LinearMap::from_columns(hit.dim(), cols?)?)
}

pub(crate) fn basis_from_kernel(kernel: &Subspace, to_poly: impl Fn(&BitVector) -> Polynomial) -> Vec<Polynomial> {
    kernel.rows().iter().map(to_poly).collect()
}

/// The fixed subspace of `(QP_k)_n` under the group.
pub fn invariants(hit: &HitSpace, kind: GroupKind) -> Result<InvariantSpace, Error> {
    let maps = kind
        .generators(hit.k())
        .into_iter()
        .map(|j| rho_minus_identity(hit, j))
        .collect::<Result<Vec<_>, _>>()?;
    let kernel = kernel_of_stack(&maps, hit.dim())?;
    Ok(InvariantSpace {
        kind,
        degree: hit.degree(),
        omega: None,
        basis: basis_from_kernel(&kernel, |v| hit.from_coords(v)),
    })
}

/// The fixed subspace of `QP_k(ω)` under the group.
pub fn invariants_local(q: &WeightQuotient, kind: GroupKind) -> Result<InvariantSpace, Error> {
    let basis = q.basis_monomials();
    let mut maps = Vec::new();
    for j in kind.generators(q.k()) {
        let cols: Result<Vec<BitVector>, Error> = basis
            .par_iter()
            .enumerate()
            .map(|(i, b)| {
                let mut image = q.reduce_local(&apply_rho(j, &Polynomial::from(*b))?)?;
                image.flip(i);
                Ok(image)
            })
            .collect();
        maps.push(LinearMap::from_columns(q.dim(), cols?)?);
    }
    let kernel = kernel_of_stack(&maps, q.dim())?;
    Ok(InvariantSpace {
        kind,
        degree: q.degree(),
        omega: Some(q.omega().clone()),
        basis: basis_from_kernel(&kernel, |v| q.from_coords(v)),
    })
}

/// Checks that the generators preserve `P⁻(ω) + A⁺P_k`, which is what makes
/// `QP_k(ω)` a module over the group. Fails with [`Error::Invariant`] on the
/// first monomial of weight below `ω` whose image escapes.
pub fn check_local_action(q: &WeightQuotient, kind: GroupKind) -> Result<(), Error> {
    let index = q.index();
    let lower = q.window().end..index.len();
    for j in kind.generators(q.k()) {
        lower.clone().into_par_iter().try_for_each(|c| {
            let y = index.monomial(c);
            let image = apply_rho(j, &Polynomial::from(y))?;
            let coords = q.reduce_local(&image)?;
            if coords.is_zero() {
                Ok(())
            } else {
                Err(Error::Invariant(format!("ρ_{j}({y}) is nonzero in QP({})", q.omega())))
            }
        })?;
    }
    Ok(())
}

/// Whether `f` is nonzero in `QP_k` and fixed by every generator modulo hit.
pub fn is_invariant_class(hit: &HitSpace, f: &Polynomial, kind: GroupKind) -> Result<bool, Error> {
    let base = hit.coords(f)?;
    if base.is_zero() {
        return Ok(false);
    }
    for j in kind.generators(hit.k()) {
        if hit.coords(&apply_rho(j, f)?)? != base {
            return Ok(false);
        }
    }
    Ok(true)
}
