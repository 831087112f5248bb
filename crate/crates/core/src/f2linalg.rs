//! Dense linear algebra over `F_2` on packed 64-bit words.

use std::io::{self, Read, Write};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum LinalgError {
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("corrupt cache data: {0}")]
    Corrupt(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[inline]
fn words_for(len: usize) -> usize {
    len.div_ceil(64)
}

/// A vector over `F_2`. Bits past `len` are always zero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitVector {
    words: Vec<u64>,
    len: usize,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector {
            words: vec![0; words_for(len)],
            len,
        }
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = BitVector::zeros(len);
        v.set(i, true);
        v
    }

    pub fn from_indices(len: usize, ones: impl IntoIterator<Item = usize>) -> Self {
        let mut v = BitVector::zeros(len);
        for i in ones {
            v.flip(i);
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        BitVector::from_indices(bits.len(), bits.iter().enumerate().filter(|b| *b.1).map(|b| b.0))
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn first_one(&self) -> Option<usize> {
        self.next_one(0)
    }

    /// The first set bit at position `>= from`.
    pub fn next_one(&self, from: usize) -> Option<usize> {
        if from >= self.len {
            return None;
        }
        let mut w = from / 64;
        let mut word = self.words[w] & (u64::MAX << (from % 64));
        loop {
            if word != 0 {
                return Some(w * 64 + word.trailing_zeros() as usize);
            }
            w += 1;
            if w == self.words.len() {
                return None;
            }
            word = self.words[w];
        }
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(w, &word)| {
            let mut word = word;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let bit = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(w * 64 + bit)
            })
        })
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len, "length mismatch");
        xor_from(&mut self.words, &other.words, 0);
    }

    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.len, other.len, "length mismatch");
        let ones: u32 = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones())
            .sum();
        ones & 1 == 1
    }

    fn check_len(&self, expected: usize) -> Result<(), LinalgError> {
        if self.len == expected {
            Ok(())
        } else {
            Err(LinalgError::LengthMismatch {
                expected,
                got: self.len,
            })
        }
    }
}

impl std::fmt::Debug for BitVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", if self.get(i) { '1' } else { '0' })?;
        }
        Ok(())
    }
}

#[inline]
fn xor_from(dst: &mut [u64], src: &[u64], start_word: usize) {
    for (d, s) in dst[start_word..].iter_mut().zip(&src[start_word..]) {
        *d ^= s;
    }
}

/// A subspace of `F_2^n` held in reduced row echelon form, rows sorted by
/// pivot. Pivoting takes the lowest column index first.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    rows: Vec<BitVector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            rows: (0..ambient_dim).map(|i| BitVector::unit(ambient_dim, i)).collect(),
            pivots: (0..ambient_dim).collect(),
        }
    }

    pub fn span<'a>(ambient_dim: usize, vectors: impl IntoIterator<Item = &'a BitVector>) -> Result<Self, LinalgError> {
        let mut builder = EchelonBuilder::new(ambient_dim);
        for v in vectors {
            builder.insert(v.clone())?;
        }
        Ok(builder.finish())
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[BitVector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Adds `v` to the subspace. Returns `true` when `v` was already a member.
    pub fn rref_insert(&mut self, v: BitVector) -> Result<bool, LinalgError> {
        let mut v = self.reduce_mod(&v)?;
        let Some(p) = v.first_one() else {
            return Ok(true);
        };
        let pos = self.pivots.partition_point(|&q| q < p);
        // clear column p in the earlier rows; later rows are already zero there
        // because v was reduced and its support starts at p
        for row in &mut self.rows[..pos] {
            if row.get(p) {
                xor_from(&mut row.words, &v.words, p / 64);
            }
        }
        v.len = self.ambient_dim;
        self.rows.insert(pos, v);
        self.pivots.insert(pos, p);
        Ok(false)
    }

    /// The unique representative of `v + self` vanishing on every pivot column.
    pub fn reduce_mod(&self, v: &BitVector) -> Result<BitVector, LinalgError> {
        v.check_len(self.ambient_dim)?;
        let mut out = v.clone();
        self.reduce_in_place(&mut out);
        Ok(out)
    }

    pub(crate) fn reduce_in_place(&self, v: &mut BitVector) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v.words[p / 64] >> (p % 64) & 1 == 1 {
                xor_from(&mut v.words, &row.words, p / 64);
            }
        }
    }

    pub fn contains(&self, v: &BitVector) -> Result<bool, LinalgError> {
        Ok(self.reduce_mod(v)?.is_zero())
    }

    /// Non-pivot columns, ascending. These index a basis of the quotient.
    pub fn complement_indices(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.ambient_dim - self.rank());
        let mut pivots = self.pivots.iter().peekable();
        for c in 0..self.ambient_dim {
            if pivots.peek() == Some(&&c) {
                pivots.next();
            } else {
                out.push(c);
            }
        }
        out
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        if other.ambient_dim != self.ambient_dim {
            return Err(LinalgError::LengthMismatch {
                expected: self.ambient_dim,
                got: other.ambient_dim,
            });
        }
        let mut out = self.clone();
        for row in &other.rows {
            out.rref_insert(row.clone())?;
        }
        Ok(out)
    }

    /// Writes the subspace in the cache layout: a header of magic, version,
    /// `k`, degree, ambient dimension and rank, then the pivot array, then
    /// the packed rows. All integers are little-endian.
    pub fn write_to(&self, mut w: impl Write, k: u32, degree: u32) -> Result<(), LinalgError> {
        w.write_all(CACHE_MAGIC)?;
        w.write_all(&CACHE_VERSION.to_le_bytes())?;
        w.write_all(&k.to_le_bytes())?;
        w.write_all(&degree.to_le_bytes())?;
        w.write_all(&(self.ambient_dim as u64).to_le_bytes())?;
        w.write_all(&(self.rank() as u64).to_le_bytes())?;
        for &p in &self.pivots {
            w.write_all(&(p as u64).to_le_bytes())?;
        }
        for row in &self.rows {
            for word in &row.words {
                w.write_all(&word.to_le_bytes())?;
            }
        }
        Ok(())
    }

    /// Reads a subspace written by [`Subspace::write_to`], returning `(k, degree, subspace)`.
    /// The echelon invariants are re-checked.
    pub fn read_from(mut r: impl Read) -> Result<(u32, u32, Subspace), LinalgError> {
        let mut magic = [0u8; 8];
        r.read_exact(&mut magic)?;
        if &magic != CACHE_MAGIC {
            return Err(LinalgError::Corrupt("bad magic".into()));
        }
        let version = read_u32(&mut r)?;
        if version != CACHE_VERSION {
            return Err(LinalgError::Corrupt(format!("unsupported version {version}")));
        }
        let k = read_u32(&mut r)?;
        let degree = read_u32(&mut r)?;
        let ambient_dim = read_u64(&mut r)? as usize;
        let rank = read_u64(&mut r)? as usize;
        if rank > ambient_dim {
            return Err(LinalgError::Corrupt("rank exceeds dimension".into()));
        }
        let mut pivots = Vec::with_capacity(rank);
        for _ in 0..rank {
            pivots.push(read_u64(&mut r)? as usize);
        }
        let nwords = words_for(ambient_dim);
        let mut rows = Vec::with_capacity(rank);
        let mut buf = vec![0u8; nwords * 8];
        for _ in 0..rank {
            r.read_exact(&mut buf)?;
            let words = buf
                .chunks_exact(8)
                .map(|c| u64::from_le_bytes(c.try_into().unwrap()))
                .collect();
            rows.push(BitVector {
                words,
                len: ambient_dim,
            });
        }
        let s = Subspace {
            ambient_dim,
            rows,
            pivots,
        };
        s.check_rref().map_err(LinalgError::Corrupt)?;
        Ok((k, degree, s))
    }

    /// Verifies the reduced echelon invariants.
    pub fn check_rref(&self) -> Result<(), String> {
        if self.rows.len() != self.pivots.len() {
            return Err("row and pivot counts differ".into());
        }
        if !self.pivots.windows(2).all(|w| w[0] < w[1]) {
            return Err("pivots not strictly increasing".into());
        }
        for (i, (row, &p)) in self.rows.iter().zip(&self.pivots).enumerate() {
            if row.len != self.ambient_dim || p >= self.ambient_dim {
                return Err(format!("row {i} has the wrong length"));
            }
            if let Some(&last) = row.words.last() {
                if !self.ambient_dim.is_multiple_of(64) && last >> (self.ambient_dim % 64) != 0 {
                    return Err(format!("row {i} has bits past the end"));
                }
            }
            if row.first_one() != Some(p) {
                return Err(format!("row {i} does not lead at its pivot"));
            }
            for (j, &q) in self.pivots.iter().enumerate() {
                if j != i && row.get(q) {
                    return Err(format!("pivot column {q} is not cleared in row {i}"));
                }
            }
        }
        Ok(())
    }
}

const CACHE_MAGIC: &[u8; 8] = b"HITSUBSP";
const CACHE_VERSION: u32 = 1;

fn read_u32(r: &mut impl Read) -> io::Result<u32> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b)?;
    Ok(u32::from_le_bytes(b))
}

fn read_u64(r: &mut impl Read) -> io::Result<u64> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)?;
    Ok(u64::from_le_bytes(b))
}

const NO_ROW: u32 = u32::MAX;

/// Incremental row echelon form for bulk construction.
///
/// Rows are kept in (non-reduced) echelon form with a column-to-row pivot
/// table, so inserting a vector only touches the rows whose pivots it hits.
/// [`EchelonBuilder::finish`] back-substitutes to the reduced form. Reduction
/// against the unreduced rows already gives the normal form with zeros on the
/// pivot columns, so [`EchelonBuilder::reduce_in_place`] is usable mid-build.
#[derive(Clone, Debug)]
pub struct EchelonBuilder {
    ambient_dim: usize,
    rows: Vec<BitVector>,
    pivot_row: Vec<u32>,
}

impl EchelonBuilder {
    pub fn new(ambient_dim: usize) -> Self {
        EchelonBuilder {
            ambient_dim,
            rows: Vec::new(),
            pivot_row: vec![NO_ROW; ambient_dim],
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.pivot_row[col] != NO_ROW
    }

    pub fn reduce_in_place(&self, v: &mut BitVector) {
        let mut from = 0;
        while let Some(c) = v.next_one(from) {
            let r = self.pivot_row[c];
            if r == NO_ROW {
                from = c + 1;
            } else {
                xor_from(&mut v.words, &self.rows[r as usize].words, c / 64);
                from = c + 1;
            }
        }
    }

    /// Returns `true` when `v` was already in the span.
    pub fn insert(&mut self, mut v: BitVector) -> Result<bool, LinalgError> {
        v.check_len(self.ambient_dim)?;
        let mut from = 0;
        while let Some(c) = v.next_one(from) {
            let r = self.pivot_row[c];
            if r == NO_ROW {
                self.pivot_row[c] = self.rows.len() as u32;
                self.rows.push(v);
                return Ok(false);
            }
            xor_from(&mut v.words, &self.rows[r as usize].words, c / 64);
            from = c + 1;
        }
        Ok(true)
    }

    pub fn finish(self) -> Subspace {
        let EchelonBuilder {
            ambient_dim,
            mut rows,
            pivot_row,
        } = self;
        let mut pivots: Vec<usize> = (0..ambient_dim).filter(|&c| pivot_row[c] != NO_ROW).collect();
        // Highest pivot first: every row used for elimination is already reduced.
        for &p in pivots.iter().rev() {
            let i = pivot_row[p] as usize;
            let mut row = std::mem::take(&mut rows[i]);
            let mut from = p + 1;
            while let Some(c) = row.next_one(from) {
                let r = pivot_row[c];
                if r != NO_ROW {
                    xor_from(&mut row.words, &rows[r as usize].words, c / 64);
                }
                from = c + 1;
            }
            rows[i] = row;
        }
        let mut sorted = Vec::with_capacity(pivots.len());
        for &p in &pivots {
            sorted.push(std::mem::take(&mut rows[pivot_row[p] as usize]));
        }
        pivots.shrink_to_fit();
        Subspace {
            ambient_dim,
            rows: sorted,
            pivots,
        }
    }
}

/// A linear map `F_2^domain -> F_2^codomain`, stored as the images of the
/// standard basis vectors.
#[derive(Clone, Debug)]
pub struct LinearMap {
    domain: usize,
    codomain: usize,
    columns: Vec<BitVector>,
}

impl LinearMap {
    pub fn from_columns(codomain: usize, columns: Vec<BitVector>) -> Result<Self, LinalgError> {
        for c in &columns {
            c.check_len(codomain)?;
        }
        Ok(LinearMap {
            domain: columns.len(),
            codomain,
            columns,
        })
    }

    pub fn identity(n: usize) -> Self {
        LinearMap {
            domain: n,
            codomain: n,
            columns: (0..n).map(|i| BitVector::unit(n, i)).collect(),
        }
    }

    pub fn domain(&self) -> usize {
        self.domain
    }

    pub fn codomain(&self) -> usize {
        self.codomain
    }

    pub fn image_of_basis(&self, i: usize) -> &BitVector {
        &self.columns[i]
    }

    pub fn apply(&self, v: &BitVector) -> Result<BitVector, LinalgError> {
        v.check_len(self.domain)?;
        let mut out = BitVector::zeros(self.codomain);
        for i in v.ones() {
            out.xor_assign(&self.columns[i]);
        }
        Ok(out)
    }

    pub fn image(&self) -> Subspace {
        Subspace::span(self.codomain, &self.columns).expect("columns have codomain length")
    }
}

/// The joint kernel `{v : f(v) = 0 for every f in maps}` as a subspace of
/// `F_2^domain`.
///
/// Each basis vector `e_i` becomes the row `[f_1(e_i) | ... | f_m(e_i) | e_i]`;
/// after elimination, rows whose pivot lies in the identity block carry
/// kernel vectors.
pub fn kernel_of_stack(maps: &[LinearMap], domain: usize) -> Result<Subspace, LinalgError> {
    for m in maps {
        if m.domain != domain {
            return Err(LinalgError::LengthMismatch {
                expected: domain,
                got: m.domain,
            });
        }
    }
    let image_width: usize = maps.iter().map(|m| m.codomain).sum();
    let width = image_width + domain;
    let mut builder = EchelonBuilder::new(width);
    for i in 0..domain {
        let mut row = BitVector::zeros(width);
        let mut offset = 0;
        for m in maps {
            for j in m.columns[i].ones() {
                row.set(offset + j, true);
            }
            offset += m.codomain;
        }
        row.set(image_width + i, true);
        builder.insert(row)?;
    }
    let echelon = builder.finish();
    let kernel_rows = echelon
        .rows
        .iter()
        .zip(&echelon.pivots)
        .filter(|(_, &p)| p >= image_width)
        .map(|(row, _)| {
            BitVector::from_indices(
                domain,
                row.ones().filter(|&c| c >= image_width).map(|c| c - image_width),
            )
        });
    let mut builder = EchelonBuilder::new(domain);
    for v in kernel_rows {
        builder.insert(v)?;
    }
    Ok(builder.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Rank by textbook elimination on `Vec<Vec<bool>>`.
    fn naive_rank(vectors: &[Vec<bool>]) -> usize {
        let mut m: Vec<Vec<bool>> = vectors.to_vec();
        let cols = m.first().map_or(0, |r| r.len());
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..m.len()).find(|&r| m[r][c]) else {
                continue;
            };
            m.swap(rank, p);
            for r in 0..m.len() {
                if r != rank && m[r][c] {
                    let pivot_row = m[rank].clone();
                    for (x, bit) in m[r].iter_mut().zip(pivot_row) {
                        *x ^= bit;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn bits(len: usize) -> impl Strategy<Value = Vec<bool>> {
        prop::collection::vec(any::<bool>(), len)
    }

    #[test]
    fn insert_zero_and_repeats() {
        let mut s = Subspace::zero(5);
        assert!(s.rref_insert(BitVector::zeros(5)).unwrap());
        assert!(!s.rref_insert(BitVector::unit(5, 1)).unwrap());
        assert!(s.rref_insert(BitVector::unit(5, 1)).unwrap());
        assert_eq!(s.rank(), 1);
        assert!(matches!(
            s.rref_insert(BitVector::zeros(4)),
            Err(LinalgError::LengthMismatch { expected: 5, got: 4 })
        ));
    }

    #[test]
    fn full_space() {
        let s = Subspace::full(70);
        assert_eq!(s.rank(), 70);
        assert!(s.complement_indices().is_empty());
        assert!(s.reduce_mod(&BitVector::zeros(70)).unwrap().is_zero());
    }

    #[test]
    fn kernel_trivial_cases() {
        assert_eq!(kernel_of_stack(&[], 4).unwrap(), Subspace::full(4));
        assert_eq!(kernel_of_stack(&[LinearMap::identity(4)], 4).unwrap().rank(), 0);
    }

    #[test]
    fn next_one_crosses_words() {
        let v = BitVector::from_indices(200, [3, 64, 130]);
        assert_eq!(v.next_one(4), Some(64));
        assert_eq!(v.next_one(65), Some(130));
        assert_eq!(v.next_one(131), None);
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![3, 64, 130]);
    }

    #[test]
    fn cache_roundtrip() {
        let s = Subspace::span(
            130,
            &[
                BitVector::from_indices(130, [0, 5, 129]),
                BitVector::from_indices(130, [5, 64]),
            ],
        )
        .unwrap();
        let mut buf = Vec::new();
        s.write_to(&mut buf, 4, 17).unwrap();
        assert_eq!(&buf[..8], b"HITSUBSP");
        let (k, n, back) = Subspace::read_from(buf.as_slice()).unwrap();
        assert_eq!((k, n), (4, 17));
        assert_eq!(back, s);
        buf[0] = b'X';
        assert!(Subspace::read_from(buf.as_slice()).is_err());
    }

    proptest! {
        #[test]
        fn rank_matches_naive(vs in prop::collection::vec(bits(8), 3)) {
            let mut s = Subspace::zero(8);
            for v in &vs {
                s.rref_insert(BitVector::from_bools(v)).unwrap();
            }
            prop_assert_eq!(s.rank(), naive_rank(&vs));
            prop_assert!(s.check_rref().is_ok());
        }

        #[test]
        fn rref_is_order_independent(vs in prop::collection::vec(bits(90), 0..12)) {
            let mut a = Subspace::zero(90);
            for v in &vs {
                a.rref_insert(BitVector::from_bools(v)).unwrap();
            }
            let mut b = Subspace::zero(90);
            for v in vs.iter().rev() {
                b.rref_insert(BitVector::from_bools(v)).unwrap();
            }
            let built = Subspace::span(90, &vs.iter().map(|v| BitVector::from_bools(v)).collect::<Vec<_>>()).unwrap();
            prop_assert_eq!(&a, &b);
            prop_assert_eq!(&a, &built);
        }

        #[test]
        fn reduce_mod_properties(vs in prop::collection::vec(bits(70), 0..10), v in bits(70)) {
            let s = Subspace::span(70, &vs.iter().map(|v| BitVector::from_bools(v)).collect::<Vec<_>>()).unwrap();
            let v = BitVector::from_bools(&v);
            let r = s.reduce_mod(&v).unwrap();
            prop_assert_eq!(&s.reduce_mod(&r).unwrap(), &r);
            let mut diff = r.clone();
            diff.xor_assign(&v);
            prop_assert!(s.contains(&diff).unwrap());
            for &p in s.pivots() {
                prop_assert!(!r.get(p));
            }
            for row in s.rows() {
                prop_assert!(s.contains(row).unwrap());
            }
            prop_assert_eq!(s.contains(&v).unwrap(), r.is_zero());
        }

        #[test]
        fn sum_rank_bound(a in prop::collection::vec(bits(20), 0..6), b in prop::collection::vec(bits(20), 0..6)) {
            let sa = Subspace::span(20, &a.iter().map(|v| BitVector::from_bools(v)).collect::<Vec<_>>()).unwrap();
            let sb = Subspace::span(20, &b.iter().map(|v| BitVector::from_bools(v)).collect::<Vec<_>>()).unwrap();
            let sum = sa.sum(&sb).unwrap();
            prop_assert!(sum.rank() <= sa.rank() + sb.rank());
            let all: Vec<_> = a.iter().chain(&b).cloned().collect();
            prop_assert_eq!(sum.rank(), naive_rank(&all));
        }

        #[test]
        fn joint_kernel_matches_enumeration(
            m1 in prop::collection::vec(bits(6), 6),
            m2 in prop::collection::vec(bits(6), 6),
        ) {
            let to_map = |cols: &Vec<Vec<bool>>| {
                LinearMap::from_columns(6, cols.iter().map(|c| BitVector::from_bools(c)).collect()).unwrap()
            };
            let maps = [to_map(&m1), to_map(&m2)];
            let kernel = kernel_of_stack(&maps, 6).unwrap();
            let mut count = 0;
            for x in 0u32..64 {
                let v = BitVector::from_indices(6, (0..6).filter(|i| x >> i & 1 == 1));
                let in_kernel = maps.iter().all(|m| m.apply(&v).unwrap().is_zero());
                prop_assert_eq!(kernel.contains(&v).unwrap(), in_kernel);
                count += in_kernel as u32;
            }
            prop_assert_eq!(1u32 << kernel.rank(), count);
        }
    }
}
