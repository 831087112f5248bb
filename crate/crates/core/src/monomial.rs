//! Monomials of `P_k = F_2[x_1, ..., x_k]`, their weight and exponent vectors,
//! the weight-first total order, spikes and the `mu` function.
//!
//! Throughout the crate the monomials of a fixed degree are indexed in
//! *descending* order, so column 0 is always the largest monomial. Echelon
//! pivots then land on the leading (largest) monomial of a hit relation.

use std::cell::RefCell;
use std::cmp::Ordering;
use std::fmt;

use rustc_hash::FxHashMap;
use thiserror::Error;

/// Largest number of variables a [`Monomial`] can carry.
pub const MAX_VARS: usize = 8;

/// Degrees above this are rejected by the enumeration helpers.
pub const MAX_DEGREE: u32 = 1 << 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MonomialError {
    #[error("{0} variables requested, at most {MAX_VARS} are supported")]
    TooManyVariables(usize),
    #[error("no minimal spike of degree {degree} in {k} variables (mu = {mu})")]
    NoMinimalSpike { degree: u32, k: usize, mu: u32 },
    #[error("minimal spike of degree {degree} in {k} variables is not unique")]
    AmbiguousMinimalSpike { degree: u32, k: usize },
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
}

/// A monomial `x_1^{a_1} ... x_k^{a_k}`.
///
/// The derived ordering compares the variable count and then the exponent
/// sequence left-lexicographically; it is a storage order only. The
/// mathematical order used for admissibility is [`Monomial::cmp_weight_first`].
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial {
    k: u8,
    exps: [u32; MAX_VARS],
}

impl Monomial {
    pub fn new(exponents: &[u32]) -> Result<Self, MonomialError> {
        if exponents.len() > MAX_VARS {
            return Err(MonomialError::TooManyVariables(exponents.len()));
        }
        let mut exps = [0; MAX_VARS];
        exps[..exponents.len()].copy_from_slice(exponents);
        Ok(Monomial {
            k: exponents.len() as u8,
            exps,
        })
    }

    /// The constant monomial `1` in `k` variables.
    pub fn one(k: usize) -> Self {
        assert!(k <= MAX_VARS, "at most {MAX_VARS} variables");
        Monomial {
            k: k as u8,
            exps: [0; MAX_VARS],
        }
    }

    /// The variable `x_j` (1-based) in `k` variables.
    pub fn var(k: usize, j: usize) -> Self {
        assert!((1..=k).contains(&j), "variable index {j} out of range 1..={k}");
        let mut m = Monomial::one(k);
        m.exps[j - 1] = 1;
        m
    }

    #[inline]
    pub fn k(&self) -> usize {
        self.k as usize
    }

    #[inline]
    pub fn exponents(&self) -> &[u32] {
        &self.exps[..self.k as usize]
    }

    /// Exponent of `x_j`, 1-based.
    #[inline]
    pub fn exponent(&self, j: usize) -> u32 {
        self.exps[j - 1]
    }

    #[inline]
    pub fn set_exponent(&mut self, j: usize, e: u32) {
        assert!((1..=self.k()).contains(&j));
        self.exps[j - 1] = e;
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.exponents().iter().sum()
    }

    pub fn weight_vector(&self) -> WeightVector {
        let mut entries = Vec::new();
        let mut r = 0;
        loop {
            let mut any = false;
            let mut count = 0;
            for &a in self.exponents() {
                let shifted = a >> r;
                any |= shifted != 0;
                count += shifted & 1;
            }
            if !any {
                break;
            }
            entries.push(count);
            r += 1;
        }
        WeightVector::new(entries)
    }

    /// `ω_1`, the number of odd exponents.
    #[inline]
    pub fn first_weight(&self) -> u32 {
        self.exponents().iter().map(|a| a & 1).sum()
    }

    /// Every exponent is of the form `2^r - 1`.
    pub fn is_spike(&self) -> bool {
        self.exponents().iter().all(|&a| a & a.wrapping_add(1) == 0)
    }

    /// All exponents are positive, i.e. the monomial lies in `P_k^+`.
    pub fn is_positive(&self) -> bool {
        self.exponents().iter().all(|&a| a > 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        assert_eq!(self.k, other.k, "variable count mismatch");
        let mut out = *self;
        for (a, b) in out.exps.iter_mut().zip(other.exps.iter()) {
            *a += *b;
        }
        out
    }

    pub fn square(&self) -> Monomial {
        let mut out = *self;
        for a in out.exps.iter_mut() {
            *a *= 2;
        }
        out
    }

    /// The weight-first order: compare weight vectors, then exponent vectors,
    /// both left-lexicographically.
    ///
    /// Panics when the degrees differ; the order is only defined within a degree.
    pub fn cmp_weight_first(&self, other: &Monomial) -> Ordering {
        assert_eq!(
            self.degree(),
            other.degree(),
            "monomials of different degree are not comparable"
        );
        assert_eq!(self.k, other.k, "variable count mismatch");
        self.weight_vector()
            .cmp(&other.weight_vector())
            .then_with(|| self.exponents().cmp(other.exponents()))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, &a) in self.exponents().iter().enumerate() {
            match a {
                0 => continue,
                1 => write!(f, "x{}", i + 1)?,
                _ => write!(f, "x{}^{}", i + 1, a)?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// A finitely supported sequence of non-negative integers, stored with
/// trailing zeros trimmed.
///
/// The derived `Ord` on the trimmed entries coincides with the left
/// lexicographic order on zero-padded sequences.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct WeightVector(Vec<u32>);

impl WeightVector {
    pub fn new(mut entries: Vec<u32>) -> Self {
        while entries.last() == Some(&0) {
            entries.pop();
        }
        WeightVector(entries)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    /// `ω_r`, 1-based; zero past the length.
    pub fn get(&self, r: usize) -> u32 {
        self.0.get(r - 1).copied().unwrap_or(0)
    }

    /// `max{r : ω_r > 0}`, zero for the zero vector.
    pub fn length(&self) -> usize {
        self.0.len()
    }

    /// `Σ 2^{r-1} ω_r`.
    pub fn degree(&self) -> u64 {
        self.0.iter().enumerate().map(|(r, &w)| (w as u64) << r).sum()
    }

    /// `ω | ξ`: the entries of `ξ` placed after position `ℓ(ω)`.
    pub fn concat(&self, other: &WeightVector) -> WeightVector {
        let mut entries = self.0.clone();
        entries.extend_from_slice(&other.0);
        WeightVector::new(entries)
    }

    /// `(a)|^t`.
    pub fn repeated(a: u32, t: usize) -> WeightVector {
        WeightVector::new(vec![a; t])
    }
}

impl fmt::Debug for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, w) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, ")")
    }
}

/// Parse a weight vector written in concatenation notation, e.g.
/// `(3)^2|(2)` for `(3,3,2)`. A block may list several entries, so
/// `(3,3,2)` and `(3,2)^2` also parse.
pub fn parse_omega(spec: &str) -> Result<WeightVector, MonomialError> {
    parse_omega_with(spec, &[])
}

/// Like [`parse_omega`], but exponents may also be identifiers bound in
/// `vars` or braced sums such as `{t-1}`.
pub fn parse_omega_with(spec: &str, vars: &[(&str, i64)]) -> Result<WeightVector, MonomialError> {
    let mut p = OmegaParser {
        src: spec.as_bytes(),
        pos: 0,
        vars,
    };
    let mut entries = Vec::new();
    loop {
        p.expect(b'(')?;
        let mut block = Vec::new();
        loop {
            let value = p.int()?;
            block.push(u32::try_from(value).map_err(|_| p.err("entry out of range"))?);
            if !p.eat(b',') {
                break;
            }
        }
        p.expect(b')')?;
        let reps = if p.eat(b'^') { p.exponent()? } else { 1 };
        if reps < 0 {
            return Err(p.err("negative repetition count"));
        }
        for _ in 0..reps {
            entries.extend_from_slice(&block);
        }
        if !p.eat(b'|') {
            break;
        }
    }
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(WeightVector::new(entries))
}

struct OmegaParser<'a> {
    src: &'a [u8],
    pos: usize,
    vars: &'a [(&'a str, i64)],
}

impl OmegaParser<'_> {
    fn err(&self, msg: &str) -> MonomialError {
        MonomialError::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<(), MonomialError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected '{}'", c as char)))
        }
    }

    fn int(&mut self) -> Result<i64, MonomialError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected integer"));
        }
        std::str::from_utf8(&self.src[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| self.err("integer out of range"))
    }

    fn atom(&mut self) -> Result<i64, MonomialError> {
        match self.peek() {
            Some(c) if c.is_ascii_digit() => self.int(),
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_alphanumeric() {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap_or("");
                self.vars
                    .iter()
                    .find(|(n, _)| *n == name)
                    .map(|(_, v)| *v)
                    .ok_or_else(|| MonomialError::Parse {
                        pos: start,
                        msg: format!("unbound variable '{name}'"),
                    })
            }
            _ => Err(self.err("expected integer or variable")),
        }
    }

    fn exponent(&mut self) -> Result<i64, MonomialError> {
        if !self.eat(b'{') {
            return self.atom();
        }
        let mut value = self.atom()?;
        loop {
            if self.eat(b'+') {
                value += self.atom()?;
            } else if self.eat(b'-') {
                value -= self.atom()?;
            } else {
                break;
            }
        }
        self.expect(b'}')?;
        Ok(value)
    }
}

thread_local! {
    static MU_TABLE: RefCell<Vec<u8>> = RefCell::new(vec![0]);
}

/// The least number of integers of the form `2^d - 1` (`d ≥ 1`) summing to `n`.
pub fn mu(n: u32) -> u32 {
    assert!(n <= MAX_DEGREE, "degree {n} exceeds {MAX_DEGREE}");
    MU_TABLE.with(|table| {
        let mut table = table.borrow_mut();
        let start = table.len();
        for m in start..=n as usize {
            let mut best = u8::MAX;
            let mut spike = 1usize;
            while spike <= m {
                best = best.min(table[m - spike].saturating_add(1));
                spike = 2 * spike + 1;
            }
            table.push(best);
        }
        table[n as usize] as u32
    })
}

/// The minimal spike of degree `n` in `k` variables.
///
/// Found by exhaustive search over exponent shapes
/// `r_1 > r_2 > ... > r_{u-1} ≥ r_u > 0`; an error is returned when no such
/// spike exists or when the search finds more than one.
pub fn minimal_spike(n: u32, k: usize) -> Result<Monomial, MonomialError> {
    if k > MAX_VARS {
        return Err(MonomialError::TooManyVariables(k));
    }
    let m = mu(n.max(1));
    if n > 0 && m as usize > k {
        return Err(MonomialError::NoMinimalSpike { degree: n, k, mu: m });
    }
    let mut found: Vec<Vec<u32>> = Vec::new();
    let mut shape = Vec::new();
    let top = 32 - n.leading_zeros();
    spike_shapes(n as u64, k, top + 1, &mut shape, &mut found);
    match found.len() {
        0 => Err(MonomialError::NoMinimalSpike { degree: n, k, mu: m }),
        1 => {
            let mut exps = vec![0u32; k];
            for (e, r) in exps.iter_mut().zip(&found[0]) {
                *e = (1u32 << r) - 1;
            }
            Monomial::new(&exps)
        }
        _ => Err(MonomialError::AmbiguousMinimalSpike { degree: n, k }),
    }
}

fn spike_shapes(remaining: u64, slots: usize, bound: u32, shape: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if remaining == 0 {
        // the last two entries may coincide, all earlier ones strictly decrease
        let ok = shape.windows(2).enumerate().all(|(i, w)| {
            if i + 2 == shape.len() {
                w[0] >= w[1]
            } else {
                w[0] > w[1]
            }
        });
        if ok {
            out.push(shape.clone());
        }
        return;
    }
    if slots == 0 {
        return;
    }
    for r in (1..=bound.min(31)).rev() {
        let value = (1u64 << r) - 1;
        if value > remaining {
            continue;
        }
        shape.push(r);
        spike_shapes(remaining - value, slots - 1, r, shape, out);
        shape.pop();
    }
}

/// Calls `f` for every monomial of degree `n` in `k` variables, in no
/// particular order.
pub fn for_each_monomial(k: usize, n: u32, mut f: impl FnMut(Monomial)) {
    assert!((1..=MAX_VARS).contains(&k), "variable count {k} out of range");
    let mut m = Monomial::one(k);
    fn rec(m: &mut Monomial, j: usize, remaining: u32, f: &mut impl FnMut(Monomial)) {
        if j + 1 == m.k() {
            m.exps[j] = remaining;
            f(*m);
            return;
        }
        for a in 0..=remaining {
            m.exps[j] = a;
            rec(m, j + 1, remaining - a, f);
        }
        m.exps[j] = 0;
    }
    rec(&mut m, 0, n, &mut f);
}

/// The number of degree-`n` monomials in `k` variables, `C(n+k-1, k-1)`.
pub fn binomial_count(k: usize, n: u32) -> u128 {
    (1..k as u128).fold(1u128, |acc, i| acc * (n as u128 + i) / i)
}

/// All degree-`n` monomials in `k` variables, sorted descending in the
/// weight-first order. A monomial's position is its canonical column index.
pub fn enumerate_monomials(k: usize, n: u32) -> Vec<Monomial> {
    let mut keyed = Vec::new();
    for_each_monomial(k, n, |m| keyed.push((m.weight_vector(), m)));
    keyed.sort_unstable_by(|a, b| b.0.cmp(&a.0).then_with(|| b.1.exponents().cmp(a.1.exponents())));
    keyed.into_iter().map(|(_, m)| m).collect()
}

/// The canonical column index of `(P_k)_n`: monomials in descending order
/// together with their weight vectors and a reverse lookup.
pub struct DegreeIndex {
    k: usize,
    degree: u32,
    monomials: Vec<Monomial>,
    weights: Vec<WeightVector>,
    lookup: FxHashMap<Monomial, u32>,
}

impl DegreeIndex {
    pub fn new(k: usize, degree: u32) -> Self {
        let monomials = enumerate_monomials(k, degree);
        let weights: Vec<_> = monomials.iter().map(Monomial::weight_vector).collect();
        let lookup = monomials.iter().enumerate().map(|(i, m)| (*m, i as u32)).collect();
        DegreeIndex {
            k,
            degree,
            monomials,
            weights,
            lookup,
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn monomial(&self, col: usize) -> Monomial {
        self.monomials[col]
    }

    pub fn weight(&self, col: usize) -> &WeightVector {
        &self.weights[col]
    }

    #[inline]
    pub fn column(&self, m: &Monomial) -> Option<usize> {
        self.lookup.get(m).map(|&c| c as usize)
    }
}
