//! Steenrod squares on `P_k` through the Cartan formula and Lucas' theorem.

use std::fmt;

use crate::monomial::{Monomial, MAX_VARS};

/// A homogeneous polynomial over `F_2`: a sorted, duplicate-free list of
/// monomials. The empty list is zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: Vec<Monomial>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    /// Sums the given monomials mod 2; repeated monomials cancel in pairs.
    pub fn from_monomials(monomials: impl IntoIterator<Item = Monomial>) -> Self {
        let mut terms: Vec<_> = monomials.into_iter().collect();
        terms.sort_unstable();
        let mut out = Vec::with_capacity(terms.len());
        let mut i = 0;
        while i < terms.len() {
            let mut j = i;
            while j < terms.len() && terms[j] == terms[i] {
                j += 1;
            }
            if (j - i) % 2 == 1 {
                out.push(terms[i]);
            }
            i = j;
        }
        if let Some(first) = out.first() {
            let d = first.degree();
            assert!(out.iter().all(|m| m.degree() == d), "polynomial is not homogeneous");
        }
        Polynomial { terms: out }
    }

    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(Monomial::degree)
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.terms.binary_search(m).is_ok()
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Polynomial::from_monomials(out)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        Polynomial::from_monomials(
            self.terms
                .iter()
                .flat_map(|a| other.terms.iter().map(move |b| a.mul(b))),
        )
    }

    pub fn square(&self) -> Polynomial {
        // the Frobenius map is additive, and squaring is injective on monomials
        Polynomial::from_monomials(self.terms.iter().map(Monomial::square))
    }
}

impl From<Monomial> for Polynomial {
    fn from(m: Monomial) -> Self {
        Polynomial { terms: vec![m] }
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, m) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

/// `C(a, i) mod 2`, by Lucas' theorem.
#[inline]
pub fn binom_mod2(a: u32, i: u32) -> bool {
    i & !a == 0
}

/// Calls `f` with every monomial of `Sq^i(m)`.
///
/// A term corresponds to a composition `i = i_1 + ... + i_k` with each `i_j`
/// a bit-submask of `a_j`. Different compositions give different monomials,
/// so the terms are distinct and no cancellation takes place.
pub fn for_each_sq_term(i: u32, m: &Monomial, mut f: impl FnMut(Monomial)) {
    let k = m.k();
    if i > m.degree() {
        return;
    }
    // suffix capacity: the largest amount the remaining variables can absorb
    let mut cap = [0u32; MAX_VARS + 1];
    for j in (0..k).rev() {
        cap[j] = cap[j + 1] + m.exponents()[j];
    }
    let mut out = *m;
    fn rec(
        j: usize,
        remaining: u32,
        m: &Monomial,
        cap: &[u32; MAX_VARS + 1],
        out: &mut Monomial,
        f: &mut impl FnMut(Monomial),
    ) {
        let k = m.k();
        if j == k {
            if remaining == 0 {
                f(*out);
            }
            return;
        }
        if remaining > cap[j] {
            return;
        }
        let a = m.exponents()[j];
        if j + 1 == k {
            if binom_mod2(a, remaining) {
                out.set_exponent(j + 1, a + remaining);
                f(*out);
                out.set_exponent(j + 1, a);
            }
            return;
        }
        // enumerate submasks of a that do not exceed remaining
        let mut s = a & mask_upto(remaining);
        loop {
            if s <= remaining {
                out.set_exponent(j + 1, a + s);
                rec(j + 1, remaining - s, m, cap, out, f);
            }
            if s == 0 {
                break;
            }
            s = (s - 1) & a;
        }
        out.set_exponent(j + 1, a);
    }
    rec(0, i, m, &cap, &mut out, &mut f);
}

#[inline]
fn mask_upto(x: u32) -> u32 {
    if x == 0 {
        0
    } else {
        u32::MAX >> x.leading_zeros()
    }
}

pub fn sq_monomial(i: u32, m: &Monomial) -> Polynomial {
    let mut terms = Vec::new();
    for_each_sq_term(i, m, |t| terms.push(t));
    terms.sort_unstable();
    Polynomial { terms }
}

pub fn sq_poly(i: u32, f: &Polynomial) -> Polynomial {
    let mut terms = Vec::new();
    for m in f.terms() {
        for_each_sq_term(i, m, |t| terms.push(t));
    }
    Polynomial::from_monomials(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mono(e: &[u32]) -> Monomial {
        Monomial::new(e).unwrap()
    }

    fn poly(ms: &[&[u32]]) -> Polynomial {
        Polynomial::from_monomials(ms.iter().map(|e| mono(e)))
    }

    #[test]
    fn binomials() {
        assert!(binom_mod2(3, 2));
        assert!(binom_mod2(7, 0));
        assert!(!binom_mod2(2, 1));
        assert!(!binom_mod2(1, 2));
    }

    #[test]
    fn small_squares() {
        assert_eq!(sq_monomial(1, &mono(&[1])), poly(&[&[2]]));
        assert_eq!(sq_monomial(1, &mono(&[1, 1])), poly(&[&[2, 1], &[1, 2]]));
        assert_eq!(sq_monomial(2, &mono(&[3])), poly(&[&[5]]));
        assert!(sq_monomial(3, &mono(&[1, 1])).is_zero());
        assert_eq!(sq_poly(1, &poly(&[&[2, 1]])), poly(&[&[2, 2]]));
        assert!(sq_poly(3, &Polynomial::zero()).is_zero());
        let f = poly(&[&[2, 1, 0], &[0, 1, 2]]);
        assert_eq!(sq_poly(0, &f), f);
    }

    #[test]
    fn addition_cancels() {
        let f = poly(&[&[2, 1], &[1, 2]]);
        assert!(f.add(&f).is_zero());
        assert_eq!(poly(&[&[2, 1], &[2, 1]]), Polynomial::zero());
    }

    fn monomial(k: usize, max: u32) -> impl Strategy<Value = Monomial> {
        prop::collection::vec(0..=max, k).prop_map(|e| Monomial::new(&e).unwrap())
    }

    /// A random homogeneous polynomial in 3 variables of the given degree.
    fn homogeneous(deg: u32) -> impl Strategy<Value = Polynomial> {
        prop::collection::vec((0..=deg, 0..=deg), 0..5).prop_map(move |pairs| {
            Polynomial::from_monomials(pairs.into_iter().map(|(a, b)| {
                let a = a.min(deg);
                let b = b.min(deg - a);
                Monomial::new(&[a, b, deg - a - b]).unwrap()
            }))
        })
    }

    /// `Sq^{i_1} Sq^{i_2} ...` applied right to left.
    fn compose(ops: &[u32], f: &Polynomial) -> Polynomial {
        ops.iter().rev().fold(f.clone(), |acc, &i| sq_poly(i, &acc))
    }

    #[test]
    fn adem_spot_checks() {
        for k in 1..=3 {
            for n in 0..=10 {
                crate::monomial::for_each_monomial(k, n, |m| {
                    let f = Polynomial::from(m);
                    assert!(compose(&[1, 1], &f).is_zero(), "Sq1Sq1 on {m}");
                    assert_eq!(compose(&[2, 2], &f), compose(&[3, 1], &f), "Sq2Sq2 on {m}");
                    assert_eq!(compose(&[1, 2], &f), compose(&[3], &f), "Sq1Sq2 on {m}");
                });
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn cartan_formula(
            (f, g) in (0u32..7, 0u32..7).prop_flat_map(|(da, db)| (homogeneous(da), homogeneous(db)))
        ) {
            let fg = f.mul(&g);
            let total = f.degree().unwrap_or(0) + g.degree().unwrap_or(0);
            for n in 0..=total + 1 {
                let rhs = (0..=n).fold(Polynomial::zero(), |acc, i| {
                    acc.add(&sq_poly(i, &f).mul(&sq_poly(n - i, &g)))
                });
                prop_assert_eq!(sq_poly(n, &fg), rhs);
            }
        }

        #[test]
        fn instability_and_degree(m in monomial(4, 9), i in 0u32..40) {
            let f = Polynomial::from(m);
            let d = m.degree();
            let s = sq_poly(i, &f);
            if i > d {
                prop_assert!(s.is_zero());
            } else if let Some(sd) = s.degree() {
                prop_assert_eq!(sd, d + i);
            }
            prop_assert_eq!(sq_poly(d, &f), f.square());
        }

        #[test]
        fn sq_terms_match_brute_force(m in monomial(3, 12), i in 0u32..16) {
            // direct sum over all compositions with explicit binomial parity
            let a = m.exponents();
            let mut terms = Vec::new();
            for i1 in 0..=i {
                for i2 in 0..=i - i1 {
                    let i3 = i - i1 - i2;
                    let odd = [(a[0], i1), (a[1], i2), (a[2], i3)]
                        .iter()
                        .all(|&(a, j)| j <= a && binom_u64(a as u64, j as u64) % 2 == 1);
                    if odd {
                        terms.push(Monomial::new(&[a[0] + i1, a[1] + i2, a[2] + i3]).unwrap());
                    }
                }
            }
            prop_assert_eq!(sq_monomial(i, &m), Polynomial::from_monomials(terms));
        }
    }

    fn binom_u64(n: u64, k: u64) -> u128 {
        (0..k).fold(1u128, |acc, j| acc * (n - j) as u128 / (j + 1) as u128)
    }
}
