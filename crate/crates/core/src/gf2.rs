//! Bit-packed matrices over GF(2).
//!
//! Rows are stored contiguously as `u64` words, least-significant bit first:
//! column `j` of a row lives in word `j / 64` at bit `j % 64`. Padding bits
//! past `n_cols` are always zero, so whole-word equality and hashing are
//! exact.
//!
//! Everything here is pure: operations borrow their inputs and hand back new
//! matrices. Elimination always runs on a private copy.

use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

#[inline]
pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

#[inline]
fn tail_mask(bits: usize) -> u64 {
    match bits % WORD {
        0 => u64::MAX,
        r => (1u64 << r) - 1,
    }
}

/// A vector over GF(2) packed into words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; words_for(len)],
        }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = BitVec::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            v.set(i, b);
        }
        v
    }

    /// Builds a vector from raw words; bits past `len` are cleared.
    pub fn from_words(len: usize, mut words: Vec<u64>) -> Self {
        words.resize(words_for(len), 0);
        if let Some(last) = words.last_mut() {
            *last &= tail_mask(len);
        }
        BitVec { len, words }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % WORD);
        if value {
            self.words[i / WORD] |= mask;
        } else {
            self.words[i / WORD] &= !mask;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }
}

impl fmt::Debug for BitVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.len)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect();
        write!(f, "BitVec({s})")
    }
}

/// Dense GF(2) matrix with bit-packed rows.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    n_rows: usize,
    n_cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(n_rows: usize, n_cols: usize) -> Self {
        let stride = words_for(n_cols);
        BitMatrix {
            n_rows,
            n_cols,
            stride,
            data: vec![0; n_rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BitMatrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// The all-ones matrix `J`.
    pub fn ones(n_rows: usize, n_cols: usize) -> Self {
        let mut m = BitMatrix::zeros(n_rows, n_cols);
        if n_cols > 0 {
            for i in 0..n_rows {
                let row = m.row_mut(i);
                row.fill(u64::MAX);
                *row.last_mut().unwrap() &= tail_mask(n_cols);
            }
        }
        m
    }

    pub fn from_fn(n_rows: usize, n_cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = BitMatrix::zeros(n_rows, n_cols);
        for i in 0..n_rows {
            for j in 0..n_cols {
                if f(i, j) {
                    m.set(i, j, true);
                }
            }
        }
        m
    }

    /// Builds a matrix from rows of equal length.
    pub fn from_bit_rows(rows: &[BitVec], n_cols: usize) -> Result<Self> {
        let mut m = BitMatrix::zeros(rows.len(), n_cols);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n_cols {
                return Err(Error::Dimension(format!(
                    "row {i} has length {}, expected {n_cols}",
                    r.len()
                )));
            }
            m.row_mut(i).copy_from_slice(r.words());
        }
        Ok(m)
    }

    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn n_cols(&self) -> usize {
        self.n_cols
    }

    /// Words per packed row.
    pub fn stride(&self) -> usize {
        self.stride
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    #[inline]
    pub(crate) fn row_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.stride..(i + 1) * self.stride]
    }

    pub fn row_vec(&self, i: usize) -> BitVec {
        BitVec {
            len: self.n_cols,
            words: self.row(i).to_vec(),
        }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.n_rows && j < self.n_cols);
        self.data[i * self.stride + j / WORD] >> (j % WORD) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        assert!(
            i < self.n_rows && j < self.n_cols,
            "entry ({i}, {j}) outside {}x{}",
            self.n_rows,
            self.n_cols
        );
        let w = &mut self.data[i * self.stride + j / WORD];
        let mask = 1u64 << (j % WORD);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize, j: usize) {
        assert!(i < self.n_rows && j < self.n_cols);
        self.data[i * self.stride + j / WORD] ^= 1u64 << (j % WORD);
    }

    pub fn count_ones(&self) -> usize {
        self.data.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn transpose(&self) -> BitMatrix {
        BitMatrix::from_fn(self.n_cols, self.n_rows, |i, j| self.get(j, i))
    }

    pub fn is_symmetric(&self) -> bool {
        self.n_rows == self.n_cols
            && (0..self.n_rows).all(|i| (i + 1..self.n_cols).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Returns a copy with `v` appended as a new last row.
    pub fn with_row(&self, v: &BitVec) -> Result<BitMatrix> {
        self.check_len(v)?;
        let mut m = self.clone();
        m.data.extend_from_slice(v.words());
        m.n_rows += 1;
        Ok(m)
    }

    fn check_len(&self, v: &BitVec) -> Result<()> {
        if v.len() != self.n_cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against a matrix with {} columns",
                v.len(),
                self.n_cols
            )));
        }
        Ok(())
    }

    /// Reduces a private copy to row-echelon form and returns it together
    /// with the number of nonzero rows and their pivot columns.
    fn echelon(&self) -> (BitMatrix, Vec<usize>) {
        let mut m = self.clone();
        let stride = m.stride;
        let mut pivots = Vec::new();
        let mut rank = 0;
        for col in 0..m.n_cols {
            if rank == m.n_rows {
                break;
            }
            let word = col / WORD;
            let bit = 1u64 << (col % WORD);
            let Some(p) = (rank..m.n_rows).find(|&r| m.data[r * stride + word] & bit != 0) else {
                continue;
            };
            if p != rank {
                for w in 0..stride {
                    m.data.swap(p * stride + w, rank * stride + w);
                }
            }
            let (head, tail) = m.data.split_at_mut((rank + 1) * stride);
            let pivot = &head[rank * stride..];
            for row in tail.chunks_exact_mut(stride) {
                if row[word] & bit != 0 {
                    for w in word..stride {
                        row[w] ^= pivot[w];
                    }
                }
            }
            pivots.push(col);
            rank += 1;
        }
        m.data.truncate(rank * stride);
        m.n_rows = rank;
        (m, pivots)
    }

    /// Rank over GF(2).
    pub fn rank2(&self) -> usize {
        self.echelon().1.len()
    }

    /// A basis of the row space in row-echelon form; it has `rank2()` rows.
    pub fn row_basis(&self) -> BitMatrix {
        self.echelon().0
    }

    /// Whether `v` is a GF(2) combination of the rows.
    pub fn in_row_space(&self, v: &BitVec) -> Result<bool> {
        self.check_len(v)?;
        let (basis, pivots) = self.echelon();
        let mut x = v.words().to_vec();
        for (r, &p) in pivots.iter().enumerate() {
            if x[p / WORD] >> (p % WORD) & 1 == 1 {
                for (a, b) in x.iter_mut().zip(basis.row(r)) {
                    *a ^= b;
                }
            }
        }
        Ok(x.iter().all(|&w| w == 0))
    }

    /// Entrywise sum mod 2.
    pub fn add2(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.n_rows != other.n_rows || self.n_cols != other.n_cols {
            return Err(Error::Dimension(format!(
                "cannot add {}x{} and {}x{}",
                self.n_rows, self.n_cols, other.n_rows, other.n_cols
            )));
        }
        let mut m = self.clone();
        for (a, b) in m.data.iter_mut().zip(&other.data) {
            *a ^= b;
        }
        Ok(m)
    }

    /// Kronecker product mod 2: entry `(i*p + k, j*q + l)` is `a(i,j) & b(k,l)`
    /// where `b` is `p x q`.
    pub fn kron2(&self, other: &BitMatrix) -> BitMatrix {
        let (p, q) = (other.n_rows, other.n_cols);
        let mut m = BitMatrix::zeros(self.n_rows * p, self.n_cols * q);
        for i in 0..self.n_rows {
            for j in 0..self.n_cols {
                if !self.get(i, j) {
                    continue;
                }
                for k in 0..p {
                    for l in 0..q {
                        if other.get(k, l) {
                            m.set(i * p + k, j * q + l, true);
                        }
                    }
                }
            }
        }
        m
    }

    /// Plain-text form: a `rows cols` header, then one line of `0`/`1` per row.
    /// Lines are newline-separated with no trailing newline.
    pub fn to_text(&self) -> String {
        let mut lines = Vec::with_capacity(self.n_rows + 1);
        lines.push(format!("{} {}", self.n_rows, self.n_cols));
        for i in 0..self.n_rows {
            lines.push(
                (0..self.n_cols)
                    .map(|j| if self.get(i, j) { '1' } else { '0' })
                    .collect(),
            );
        }
        lines.join("\n")
    }

    /// Parses [`to_text`](Self::to_text) output. A single final newline is tolerated.
    pub fn from_text(text: &str) -> Result<BitMatrix> {
        let body = text.strip_suffix('\n').unwrap_or(text);
        let mut offset = 0;
        let mut lines = body.split('\n');
        let header = lines.next().unwrap_or("");
        let dims: Vec<&str> = header.split(' ').collect();
        let parse_dim = |s: &str| -> Result<usize> {
            s.parse::<usize>()
                .map_err(|_| Error::parse(0, format!("bad dimension {s:?} in header")))
        };
        if dims.len() != 2 {
            return Err(Error::parse(0, "header must be `rows cols`"));
        }
        let (n_rows, n_cols) = (parse_dim(dims[0])?, parse_dim(dims[1])?);
        offset += header.len() + 1;
        let mut m = BitMatrix::zeros(n_rows, n_cols);
        for i in 0..n_rows {
            let line = lines
                .next()
                .ok_or_else(|| Error::parse(offset, format!("missing row {i}")))?;
            if line.len() != n_cols {
                return Err(Error::parse(
                    offset,
                    format!("row {i} has {} characters, expected {n_cols}", line.len()),
                ));
            }
            for (j, c) in line.bytes().enumerate() {
                match c {
                    b'0' => {}
                    b'1' => m.set(i, j, true),
                    _ => return Err(Error::parse(offset + j, format!("unexpected byte {c:#04x}"))),
                }
            }
            offset += line.len() + 1;
        }
        if lines.next().is_some() {
            return Err(Error::parse(offset, "trailing data after last row"));
        }
        Ok(m)
    }

    #[cfg(test)]
    pub(crate) fn padding_is_clean(&self) -> bool {
        if self.n_cols % WORD == 0 || self.stride == 0 {
            return true;
        }
        let mask = !tail_mask(self.n_cols);
        (0..self.n_rows).all(|i| self.row(i)[self.stride - 1] & mask == 0)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.n_rows, self.n_cols)?;
        for i in 0..self.n_rows {
            let s: String = (0..self.n_cols)
                .map(|j| if self.get(i, j) { '1' } else { '0' })
                .collect();
            writeln!(f, "  {s}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{rngs::StdRng, Rng, SeedableRng};

    /// Elimination on `Vec<Vec<bool>>`, one entry at a time.
    fn naive_rank(rows: &[Vec<bool>]) -> usize {
        let mut m: Vec<Vec<bool>> = rows.to_vec();
        let cols = m.first().map_or(0, |r| r.len());
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..m.len()).find(|&r| m[r][c]) else {
                continue;
            };
            m.swap(p, rank);
            for r in 0..m.len() {
                if r != rank && m[r][c] {
                    for k in 0..cols {
                        let v = m[rank][k];
                        m[r][k] ^= v;
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn random_bools(rng: &mut StdRng, r: usize, c: usize) -> Vec<Vec<bool>> {
        (0..r).map(|_| (0..c).map(|_| rng.gen()).collect()).collect()
    }

    fn pack(rows: &[Vec<bool>], cols: usize) -> BitMatrix {
        BitMatrix::from_fn(rows.len(), cols, |i, j| rows[i][j])
    }

    /// Every vector in the span, by enumerating all row subsets.
    fn span(rows: &[BitVec], len: usize) -> std::collections::HashSet<BitVec> {
        let mut out = std::collections::HashSet::new();
        for mask in 0u64..(1 << rows.len()) {
            let mut acc = vec![0u64; words_for(len)];
            for (i, r) in rows.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    for (a, b) in acc.iter_mut().zip(r.words()) {
                        *a ^= b;
                    }
                }
            }
            out.insert(BitVec::from_words(len, acc));
        }
        out
    }

    #[test]
    fn zero_matrix_has_rank_zero() {
        assert_eq!(BitMatrix::zeros(5, 5).rank2(), 0);
        assert_eq!(BitMatrix::zeros(0, 7).rank2(), 0);
        assert_eq!(BitMatrix::zeros(7, 0).rank2(), 0);
    }

    #[test]
    fn packed_rank_matches_naive_on_small_random() {
        let mut rng = StdRng::seed_from_u64(8);
        for _ in 0..200 {
            let rows = random_bools(&mut rng, 8, 8);
            assert_eq!(pack(&rows, 8).rank2(), naive_rank(&rows));
        }
    }

    #[test]
    fn packed_rank_matches_naive_across_word_boundaries() {
        let mut rng = StdRng::seed_from_u64(77);
        for &(r, c) in &[(3, 64), (70, 65), (130, 129), (65, 200)] {
            let rows = random_bools(&mut rng, r, c);
            assert_eq!(pack(&rows, c).rank2(), naive_rank(&rows), "{r}x{c}");
        }
    }

    #[test]
    fn identity_is_its_own_basis() {
        let id = BitMatrix::identity(3);
        assert_eq!(id.row_basis(), id);
    }

    #[test]
    fn basis_of_duplicated_rows_spans_the_same_space() {
        let mut rng = StdRng::seed_from_u64(3);
        let base = random_bools(&mut rng, 4, 9);
        let mut rows = base.clone();
        rows.extend(base.iter().cloned());
        rows.push(vec![false; 9]);
        let m = pack(&rows, 9);
        let basis = m.row_basis();
        assert_eq!(basis.n_rows(), m.rank2());
        let orig: Vec<BitVec> = (0..m.n_rows()).map(|i| m.row_vec(i)).collect();
        let b: Vec<BitVec> = (0..basis.n_rows()).map(|i| basis.row_vec(i)).collect();
        assert_eq!(span(&orig, 9), span(&b, 9));
    }

    #[test]
    fn membership_matches_exhaustive_span() {
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..50 {
            let rows = random_bools(&mut rng, 6, 10);
            let m = pack(&rows, 10);
            let all: Vec<BitVec> = (0..6).map(|i| m.row_vec(i)).collect();
            let sp = span(&all, 10);
            for _ in 0..20 {
                let bits: Vec<bool> = (0..10).map(|_| rng.gen()).collect();
                let v = BitVec::from_bools(&bits);
                assert_eq!(m.in_row_space(&v).unwrap(), sp.contains(&v));
            }
        }
    }

    #[test]
    fn zero_vector_is_always_in_row_space() {
        let m = BitMatrix::zeros(0, 4);
        assert!(m.in_row_space(&BitVec::zeros(4)).unwrap());
    }

    #[test]
    fn membership_rejects_wrong_length() {
        let m = BitMatrix::identity(3);
        assert!(matches!(
            m.in_row_space(&BitVec::zeros(4)),
            Err(Error::Dimension(_))
        ));
    }

    #[test]
    fn addition_identities() {
        let mut rng = StdRng::seed_from_u64(5);
        let a = pack(&random_bools(&mut rng, 5, 7), 7);
        assert!(a.add2(&a).unwrap().is_zero());
        assert_eq!(a.add2(&BitMatrix::zeros(5, 7)).unwrap(), a);
        assert!(a.add2(&BitMatrix::zeros(7, 5)).is_err());
    }

    #[test]
    fn kron_with_identity_is_block_diagonal() {
        let mut rng = StdRng::seed_from_u64(6);
        let m = pack(&random_bools(&mut rng, 3, 4), 4);
        let k = BitMatrix::identity(2).kron2(&m);
        assert_eq!((k.n_rows(), k.n_cols()), (6, 8));
        for i in 0..6 {
            for j in 0..8 {
                let expected = i / 3 == j / 4 && m.get(i % 3, j % 4);
                assert_eq!(k.get(i, j), expected);
            }
        }
    }

    #[test]
    fn kron_entries_follow_definition() {
        let mut rng = StdRng::seed_from_u64(9);
        for _ in 0..20 {
            let a = random_bools(&mut rng, 3, 3);
            let b = random_bools(&mut rng, 3, 3);
            let k = pack(&a, 3).kron2(&pack(&b, 3));
            for (i, j, p, q) in itertools_4(3) {
                assert_eq!(k.get(i * 3 + p, j * 3 + q), a[i][j] && b[p][q]);
            }
        }
    }

    fn itertools_4(n: usize) -> impl Iterator<Item = (usize, usize, usize, usize)> {
        (0..n).flat_map(move |i| {
            (0..n).flat_map(move |j| (0..n).flat_map(move |k| (0..n).map(move |l| (i, j, k, l))))
        })
    }

    #[test]
    fn kron_with_all_ones_keeps_rank() {
        let mut rng = StdRng::seed_from_u64(12);
        for _ in 0..20 {
            let a = pack(&random_bools(&mut rng, 6, 6), 6);
            let j = BitMatrix::ones(4, 4);
            assert_eq!(j.kron2(&a).rank2(), a.rank2());
            assert_eq!(a.kron2(&j).rank2(), a.rank2());
        }
    }

    #[test]
    fn empty_kron_edges() {
        let e = BitMatrix::zeros(0, 3);
        let k = e.kron2(&BitMatrix::identity(2));
        assert_eq!((k.n_rows(), k.n_cols()), (0, 6));
        assert_eq!(k.rank2(), 0);
    }

    #[test]
    fn text_format_is_exact() {
        let m = BitMatrix::from_fn(2, 3, |i, j| (i + j) % 2 == 0);
        assert_eq!(m.to_text(), "2 3\n101\n010");
        assert_eq!(BitMatrix::from_text("2 3\n101\n010").unwrap(), m);
        assert_eq!(BitMatrix::from_text("2 3\n101\n010\n").unwrap(), m);
        assert!(matches!(
            BitMatrix::from_text("2 3\n101\n0x0"),
            Err(Error::Parse { offset: 9, .. })
        ));
        assert!(BitMatrix::from_text("2 3\n101").is_err());
    }

    #[test]
    fn ones_keeps_padding_clean() {
        let j = BitMatrix::ones(3, 70);
        assert!(j.padding_is_clean());
        assert_eq!(j.count_ones(), 210);
    }

    proptest! {
        #[test]
        fn rank_bounded_by_dimensions(r in 0usize..40, c in 0usize..40, seed: u64) {
            let mut rng = StdRng::seed_from_u64(seed);
            let m = pack(&random_bools(&mut rng, r, c), c);
            prop_assert!(m.rank2() <= r.min(c));
        }

        #[test]
        fn rank_is_subadditive(r in 1usize..24, c in 1usize..24, seed: u64) {
            let mut rng = StdRng::seed_from_u64(seed);
            let a = pack(&random_bools(&mut rng, r, c), c);
            let b = pack(&random_bools(&mut rng, r, c), c);
            prop_assert!(a.add2(&b).unwrap().rank2() <= a.rank2() + b.rank2());
        }

        #[test]
        fn appending_a_member_keeps_rank(r in 1usize..16, c in 1usize..70, seed: u64) {
            let mut rng = StdRng::seed_from_u64(seed);
            let m = pack(&random_bools(&mut rng, r, c), c);
            // random combination of rows
            let mut acc = BitVec::zeros(c);
            for i in 0..r {
                if rng.gen() {
                    acc = BitVec::from_words(c, acc.words().iter().zip(m.row(i)).map(|(a, b)| a ^ b).collect());
                }
            }
            prop_assert!(m.in_row_space(&acc).unwrap());
            prop_assert_eq!(m.with_row(&acc).unwrap().rank2(), m.rank2());
        }

        #[test]
        fn symmetric_zero_diagonal_has_even_rank(n in 1usize..40, seed: u64) {
            let mut rng = StdRng::seed_from_u64(seed);
            let mut m = BitMatrix::zeros(n, n);
            for i in 0..n {
                for j in i + 1..n {
                    if rng.gen() {
                        m.set(i, j, true);
                        m.set(j, i, true);
                    }
                }
            }
            prop_assert_eq!(m.rank2() % 2, 0);
        }
    }
}
