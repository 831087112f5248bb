//! The hit subspace `A⁺P_k` in a single degree, admissible bases, normal
//! forms, and the weight-filtered quotients `QP_k(ω)`.
//!
//! Columns are monomials in descending weight-first order, so for any weight
//! vector `ω` the monomials of weight `≥ ω` form a prefix `0..L` of the
//! columns. Both structures here eliminate only on such a prefix:
//!
//! * [`HitSpace`] with the Singer strategy uses `ω = ω(minimal spike)`.
//!   Every column past the prefix is hit, so the reduced echelon form of the
//!   hit space is the echelon form of the projected generators plus one unit
//!   row per later column.
//! * [`WeightQuotient`] uses the requested `ω`; quotienting by `P⁻(ω)` is
//!   exactly dropping the later columns.

use std::ops::Range;

use rayon::prelude::*;

use crate::f2linalg::{BitVector, EchelonBuilder, Subspace};
use crate::monomial::{for_each_monomial, minimal_spike, mu, DegreeIndex, Monomial, WeightVector};
use crate::steenrod::{for_each_sq_term, Polynomial};
use crate::Error;

/// How much of the degree is eliminated explicitly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Every column.
    Full,
    /// Only columns of weight at least that of the minimal spike; the rest
    /// are hit by Singer's criterion. Needs `μ(n) ≤ k` and `n > 0`.
    Singer,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::Full => "full",
            Strategy::Singer => "singer",
        }
    }
}

/// Source monomials processed per parallel batch.
const BATCH: usize = 1 << 13;

const NONE: u32 = u32::MAX;

/// Echelon form of the hit generators `Sq^{2^j}((P_k)_{n-2^j})` projected
/// onto the first `live_len` columns.
fn eliminate_prefix(index: &DegreeIndex, live_len: usize) -> Subspace {
    let n = index.degree();
    let mut builder = EchelonBuilder::new(live_len);
    if live_len == 0 {
        return builder.finish();
    }
    let mut sq = 1u32;
    'outer: while 2 * sq <= n {
        let mut sources = Vec::new();
        for_each_monomial(index.k(), n - sq, |m| sources.push(m));
        for batch in sources.chunks(BATCH) {
            let images: Vec<BitVector> = batch
                .par_iter()
                .filter_map(|m| {
                    let mut cols = Vec::new();
                    for_each_sq_term(sq, m, |t| {
                        let c = index.column(&t).expect("Sq image stays in degree");
                        if c < live_len {
                            cols.push(c);
                        }
                    });
                    (!cols.is_empty()).then(|| BitVector::from_indices(live_len, cols))
                })
                .collect();
            for v in images {
                builder.insert(v).expect("generator length matches");
                if builder.rank() == live_len {
                    break 'outer;
                }
            }
        }
        sq *= 2;
    }
    builder.finish()
}

/// Number of leading columns with weight `≥ ω` (or `> ω` when `strict`).
fn prefix_len(index: &DegreeIndex, omega: &WeightVector, strict: bool) -> usize {
    let cols = index.monomials().len();
    // weights are non-increasing along the columns
    let mut lo = 0;
    let mut hi = cols;
    while lo < hi {
        let mid = (lo + hi) / 2;
        let w = index.weight(mid);
        let inside = if strict { w > omega } else { w >= omega };
        if inside {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    lo
}

fn check_polynomial(f: &Polynomial, k: usize, n: u32) -> Result<(), Error> {
    if let Some(m) = f.terms().first() {
        if m.k() != k || m.degree() != n {
            return Err(Error::InvalidArgument(format!(
                "polynomial of degree {} in {} variables used where degree {n} in {k} variables is expected",
                m.degree(),
                m.k()
            )));
        }
    }
    Ok(())
}

/// Admissible monomials of one degree, descending, split by whether every
/// variable occurs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdmissibleBasis {
    pub monomials: Vec<Monomial>,
    /// `true` for members of `QP⁺` (all exponents positive), `false` for `QP⁰`.
    pub positive: Vec<bool>,
}

impl AdmissibleBasis {
    fn new(monomials: Vec<Monomial>) -> Self {
        let positive = monomials.iter().map(Monomial::is_positive).collect();
        AdmissibleBasis { monomials, positive }
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn zero_part(&self) -> usize {
        self.positive.iter().filter(|p| !**p).count()
    }

    pub fn positive_part(&self) -> usize {
        self.positive.iter().filter(|p| **p).count()
    }
}

/// `A⁺P_k` in degree `n` together with the admissible basis of `(QP_k)_n`.
pub struct HitSpace {
    index: DegreeIndex,
    strategy: Strategy,
    live: Subspace,
    admissible: Vec<usize>,
    admissible_pos: Vec<u32>,
}

impl HitSpace {
    /// Uses the Singer strategy whenever it applies.
    pub fn new(k: usize, n: u32) -> Result<Self, Error> {
        HitSpace::with_strategy(k, n, Self::default_strategy(k, n))
    }

    pub fn default_strategy(k: usize, n: u32) -> Strategy {
        if n > 0 && mu(n) as usize <= k {
            Strategy::Singer
        } else {
            Strategy::Full
        }
    }

    pub fn with_strategy(k: usize, n: u32, strategy: Strategy) -> Result<Self, Error> {
        let index = DegreeIndex::new(k, n);
        let live_len = Self::live_len_for(&index, strategy)?;
        let live = eliminate_prefix(&index, live_len);
        Ok(Self::assemble(index, strategy, live))
    }

    /// Rebuilds from a previously computed prefix subspace (for example one
    /// read from the cache). Fails when the subspace does not fit.
    pub fn from_parts(k: usize, n: u32, strategy: Strategy, live: Subspace) -> Result<Self, Error> {
        let index = DegreeIndex::new(k, n);
        let live_len = Self::live_len_for(&index, strategy)?;
        if live.ambient_dim() != live_len {
            return Err(Error::InvalidArgument(format!(
                "stored subspace has {} columns, expected {live_len}",
                live.ambient_dim()
            )));
        }
        Ok(Self::assemble(index, strategy, live))
    }

    fn live_len_for(index: &DegreeIndex, strategy: Strategy) -> Result<usize, Error> {
        match strategy {
            Strategy::Full => Ok(index.len()),
            Strategy::Singer => {
                let n = index.degree();
                if n == 0 || mu(n) as usize > index.k() {
                    return Err(Error::InvalidArgument(format!(
                        "Singer's criterion does not apply in degree {n} with {} variables",
                        index.k()
                    )));
                }
                let spike = minimal_spike(n, index.k())?;
                Ok(prefix_len(index, &spike.weight_vector(), false))
            }
        }
    }

    fn assemble(index: DegreeIndex, strategy: Strategy, live: Subspace) -> Self {
        let admissible = live.complement_indices();
        let mut admissible_pos = vec![NONE; live.ambient_dim()];
        for (i, &c) in admissible.iter().enumerate() {
            admissible_pos[c] = i as u32;
        }
        HitSpace {
            index,
            strategy,
            live,
            admissible,
            admissible_pos,
        }
    }

    pub fn k(&self) -> usize {
        self.index.k()
    }

    pub fn degree(&self) -> u32 {
        self.index.degree()
    }

    pub fn strategy(&self) -> Strategy {
        self.strategy
    }

    pub fn index(&self) -> &DegreeIndex {
        &self.index
    }

    /// The eliminated prefix, as stored in the cache.
    pub fn live_subspace(&self) -> &Subspace {
        &self.live
    }

    /// `dim (QP_k)_n`.
    pub fn dim(&self) -> usize {
        self.admissible.len()
    }

    /// `dim (A⁺P_k)_n`.
    pub fn rank(&self) -> usize {
        self.index.len() - self.dim()
    }

    pub fn admissible_monomials(&self) -> Vec<Monomial> {
        self.admissible.iter().map(|&c| self.index.monomial(c)).collect()
    }

    pub fn admissible_basis(&self) -> AdmissibleBasis {
        AdmissibleBasis::new(self.admissible_monomials())
    }

    /// Columns of the admissible monomials, ascending.
    pub fn admissible_columns(&self) -> &[usize] {
        &self.admissible
    }

    /// Position of a monomial in the admissible basis.
    pub fn admissible_position(&self, m: &Monomial) -> Option<usize> {
        let c = self.index.column(m)?;
        match self.admissible_pos.get(c) {
            Some(&p) if p != NONE => Some(p as usize),
            _ => None,
        }
    }

    pub fn is_admissible(&self, m: &Monomial) -> bool {
        self.admissible_position(m).is_some()
    }

    fn live_vector(&self, f: &Polynomial) -> Result<BitVector, Error> {
        check_polynomial(f, self.k(), self.degree())?;
        let live_len = self.live.ambient_dim();
        let mut v = BitVector::zeros(live_len);
        for m in f.terms() {
            let c = self.index.column(m).expect("degree checked");
            if c < live_len {
                v.flip(c);
            }
        }
        Ok(v)
    }

    /// Coordinates of the class of `f` in the admissible basis.
    pub fn coords(&self, f: &Polynomial) -> Result<BitVector, Error> {
        let mut v = self.live_vector(f)?;
        self.live.reduce_in_place(&mut v);
        Ok(BitVector::from_indices(
            self.dim(),
            v.ones().map(|c| self.admissible_pos[c] as usize),
        ))
    }

    /// Coordinates of a single monomial, without building a polynomial.
    pub fn monomial_coords(&self, m: &Monomial) -> Result<BitVector, Error> {
        self.coords(&Polynomial::from(*m))
    }

    /// The sum of admissible monomials in the class of `f`.
    pub fn reduce(&self, f: &Polynomial) -> Result<Polynomial, Error> {
        Ok(self.from_coords(&self.coords(f)?))
    }

    pub fn from_coords(&self, coords: &BitVector) -> Polynomial {
        Polynomial::from_monomials(coords.ones().map(|i| self.index.monomial(self.admissible[i])))
    }

    /// Whether `f` lies in `A⁺P_k`.
    pub fn contains(&self, f: &Polynomial) -> Result<bool, Error> {
        Ok(self.coords(f)?.is_zero())
    }

    /// The full reduced echelon form over all columns of the degree.
    pub fn to_subspace(&self) -> Subspace {
        let total = self.index.len();
        let live_len = self.live.ambient_dim();
        let mut rows: Vec<BitVector> = self
            .live
            .rows()
            .iter()
            .map(|r| BitVector::from_indices(total, r.ones()))
            .collect();
        rows.extend((live_len..total).map(|c| BitVector::unit(total, c)));
        let mut out = Subspace::zero(total);
        // rows are already reduced and have distinct pivots, so each insert only appends
        for r in rows {
            out.rref_insert(r).expect("lengths match");
        }
        out
    }
}

/// Singer's criterion: `μ(n) ≤ k` and `ω(m) < ω(minimal spike)` imply `m` is hit.
pub fn is_hit_by_singer(m: &Monomial) -> bool {
    let n = m.degree();
    if n == 0 || mu(n) as usize > m.k() {
        return false;
    }
    match minimal_spike(n, m.k()) {
        Ok(z) => m.weight_vector() < z.weight_vector(),
        Err(_) => false,
    }
}

/// `QP_k(ω) = P_k(ω) / ((P⁻_k(ω) + A⁺P_k) ∩ P_k(ω))`.
pub struct WeightQuotient {
    omega: WeightVector,
    index: DegreeIndex,
    live: Subspace,
    window: Range<usize>,
    basis: Vec<usize>,
    basis_pos: Vec<u32>,
}

impl WeightQuotient {
    pub fn new(k: usize, omega: &WeightVector) -> Result<Self, Error> {
        let n = u32::try_from(omega.degree())
            .ok()
            .filter(|&n| n <= crate::monomial::MAX_DEGREE)
            .ok_or_else(|| Error::InvalidArgument(format!("weight vector {omega} has too large a degree")))?;
        let index = DegreeIndex::new(k, n);
        let live_len = prefix_len(&index, omega, false);
        let live = eliminate_prefix(&index, live_len);
        Self::assemble(omega.clone(), index, live)
    }

    /// As [`WeightQuotient::new`], checking `deg ω = n`.
    pub fn in_degree(k: usize, n: u32, omega: &WeightVector) -> Result<Self, Error> {
        if omega.degree() != n as u64 {
            return Err(Error::InvalidArgument(format!(
                "weight vector {omega} has degree {}, not {n}",
                omega.degree()
            )));
        }
        Self::new(k, omega)
    }

    /// Rebuilds from a cached prefix subspace.
    pub fn from_parts(k: usize, omega: &WeightVector, live: Subspace) -> Result<Self, Error> {
        let n = u32::try_from(omega.degree())
            .map_err(|_| Error::InvalidArgument(format!("weight vector {omega} has too large a degree")))?;
        let index = DegreeIndex::new(k, n);
        if live.ambient_dim() != prefix_len(&index, omega, false) {
            return Err(Error::InvalidArgument(
                "stored subspace does not fit this weight".into(),
            ));
        }
        Self::assemble(omega.clone(), index, live)
    }

    fn assemble(omega: WeightVector, index: DegreeIndex, live: Subspace) -> Result<Self, Error> {
        let start = prefix_len(&index, &omega, true);
        let window = start..live.ambient_dim();
        let basis: Vec<usize> = live
            .complement_indices()
            .into_iter()
            .filter(|c| window.contains(c))
            .collect();
        let mut basis_pos = vec![NONE; live.ambient_dim()];
        for (i, &c) in basis.iter().enumerate() {
            basis_pos[c] = i as u32;
        }
        Ok(WeightQuotient {
            omega,
            index,
            live,
            window,
            basis,
            basis_pos,
        })
    }

    pub fn k(&self) -> usize {
        self.index.k()
    }

    pub fn degree(&self) -> u32 {
        self.index.degree()
    }

    pub fn omega(&self) -> &WeightVector {
        &self.omega
    }

    pub fn index(&self) -> &DegreeIndex {
        &self.index
    }

    pub fn live_subspace(&self) -> &Subspace {
        &self.live
    }

    /// Columns holding the monomials of weight exactly `ω`.
    pub fn window(&self) -> Range<usize> {
        self.window.clone()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis_monomials(&self) -> Vec<Monomial> {
        self.basis.iter().map(|&c| self.index.monomial(c)).collect()
    }

    pub fn basis(&self) -> AdmissibleBasis {
        AdmissibleBasis::new(self.basis_monomials())
    }

    /// Coordinates of `f` modulo `P⁻(ω) + A⁺P_k` in the basis of `QP_k(ω)`.
    ///
    /// Fails with [`Error::Invariant`] when `f` is not congruent to an element
    /// of `P_k(ω)`, i.e. some heavier monomial survives reduction.
    pub fn reduce_local(&self, f: &Polynomial) -> Result<BitVector, Error> {
        check_polynomial(f, self.k(), self.degree())?;
        let live_len = self.live.ambient_dim();
        let mut v = BitVector::zeros(live_len);
        for m in f.terms() {
            let c = self.index.column(m).expect("degree checked");
            if c < live_len {
                v.flip(c);
            }
        }
        self.live.reduce_in_place(&mut v);
        if let Some(c) = v.first_one().filter(|&c| c < self.window.start) {
            return Err(Error::Invariant(format!(
                "{f} has a nonzero component {} of weight {} above {}",
                self.index.monomial(c),
                self.index.weight(c),
                self.omega
            )));
        }
        Ok(BitVector::from_indices(
            self.dim(),
            v.ones().map(|c| self.basis_pos[c] as usize),
        ))
    }

    pub fn from_coords(&self, coords: &BitVector) -> Polynomial {
        Polynomial::from_monomials(coords.ones().map(|i| self.index.monomial(self.basis[i])))
    }

    /// Checks the basis against the admissible monomials of weight `ω` in a
    /// global hit space of the same degree.
    pub fn check_against(&self, global: &HitSpace) -> Result<(), Error> {
        let expected: Vec<Monomial> = global
            .admissible_monomials()
            .into_iter()
            .filter(|m| m.weight_vector() == self.omega)
            .collect();
        let got = self.basis_monomials();
        if expected != got {
            return Err(Error::Invariant(format!(
                "QP({}) basis has {} monomials but {} admissible monomials have that weight",
                self.omega,
                got.len(),
                expected.len()
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::parse_omega;
    use crate::steenrod::sq_monomial;

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e).unwrap()
    }

    #[test]
    fn one_variable() {
        assert_eq!(HitSpace::new(1, 2).unwrap().dim(), 0);
        let h = HitSpace::new(1, 3).unwrap();
        assert_eq!(h.admissible_monomials(), vec![mono(&[3])]);
        assert_eq!(HitSpace::new(1, 4).unwrap().dim(), 0);
        assert_eq!(HitSpace::new(1, 6).unwrap().dim(), 0);
        let zero = HitSpace::new(3, 0).unwrap();
        assert_eq!(zero.dim(), 1);
        assert_eq!(zero.strategy(), Strategy::Full);
    }

    #[test]
    fn two_variables_degree_three() {
        let h = HitSpace::new(2, 3).unwrap();
        let mut got = h.admissible_monomials();
        got.sort();
        let mut want = vec![mono(&[3, 0]), mono(&[0, 3]), mono(&[1, 2])];
        want.sort();
        assert_eq!(got, want);
        let reduced = h.reduce(&mono(&[2, 1]).into()).unwrap();
        assert_eq!(reduced, mono(&[1, 2]).into());
        // same weight as the minimal spike x1^3, so the criterion is silent even though it is hit
        assert_eq!(mono(&[2, 1]).weight_vector(), mono(&[3, 0]).weight_vector());
        assert!(!is_hit_by_singer(&mono(&[2, 1])));
        assert!(is_hit_by_singer(&mono(&[2, 2, 0, 1])));
        assert!(h.contains(&sq_monomial(1, &mono(&[1, 1]))).unwrap());
    }

    #[test]
    fn degree_nine_four_variables() {
        let h = HitSpace::new(4, 9).unwrap();
        assert_eq!(h.dim(), 46);
        let basis = h.admissible_basis();
        assert_eq!(basis.zero_part() + basis.positive_part(), 46);
    }

    #[test]
    fn strategies_agree() {
        for k in 1..=4 {
            for n in 0..=if k == 4 { 18 } else { 24 } {
                let full = HitSpace::with_strategy(k, n, Strategy::Full).unwrap();
                let auto = HitSpace::new(k, n).unwrap();
                assert_eq!(full.admissible_columns(), auto.admissible_columns(), "k={k} n={n}");
                assert_eq!(full.to_subspace(), auto.to_subspace(), "k={k} n={n}");
            }
        }
    }

    #[test]
    fn weight_windows() {
        let q = WeightQuotient::new(4, &parse_omega("(3)^2").unwrap()).unwrap();
        assert_eq!(q.degree(), 9);
        assert_eq!(q.dim(), 10);
        q.check_against(&HitSpace::new(4, 9).unwrap()).unwrap();
        let q = WeightQuotient::new(4, &parse_omega("(3)|(1)^2").unwrap()).unwrap();
        assert_eq!(q.dim(), 36);
        assert!(WeightQuotient::in_degree(4, 10, &parse_omega("(3)^2").unwrap()).is_err());
    }

    #[test]
    fn weight_decomposition_sums_to_total() {
        for n in [7u32, 10, 12, 15] {
            let global = HitSpace::new(4, n).unwrap();
            let mut weights: Vec<WeightVector> =
                global.index().monomials().iter().map(Monomial::weight_vector).collect();
            weights.dedup();
            let mut total = 0;
            for w in &weights {
                let q = WeightQuotient::new(4, w).unwrap();
                q.check_against(&global).unwrap();
                total += q.dim();
            }
            assert_eq!(total, global.dim(), "degree {n}");
        }
    }

    #[test]
    fn rejects_wrong_degree() {
        let h = HitSpace::new(3, 5).unwrap();
        assert!(matches!(
            h.coords(&mono(&[1, 1, 1]).into()),
            Err(Error::InvalidArgument(_))
        ));
        assert!(h.coords(&Polynomial::zero()).unwrap().is_zero());
    }
}
