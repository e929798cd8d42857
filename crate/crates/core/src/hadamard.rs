//! Hadamard matrices stored as sign bits.
//!
//! Bit `(i, j)` is set when `H[i][j] = −1`, so the sign matrix of `H` is
//! exactly `A_H = (J − H)/2` over GF(2) and `ρ(H)` is its 2-rank. Products of
//! entries become XORs of sign bits, which makes the Kronecker product a
//! mod-2 sum of two Kronecker products with `J`.

use std::fmt;

use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::graph::{srg_params, Graph, SrgParams};

/// A verified Hadamard matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HMatrix {
    signs: BitMatrix,
    diag_sign: Option<i8>,
}

/// Whether the rows of a square ±1 matrix are pairwise orthogonal.
pub fn is_hadamard(m: &[Vec<i8>]) -> Result<bool> {
    let signs = signs_from_entries(m)?;
    Ok(rows_orthogonal(&signs))
}

fn signs_from_entries(m: &[Vec<i8>]) -> Result<BitMatrix> {
    let n = m.len();
    let mut signs = BitMatrix::zeros(n, n);
    for (i, row) in m.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Domain(format!(
                "row {i} has {} entries in a matrix of order {n}",
                row.len()
            )));
        }
        for (j, &x) in row.iter().enumerate() {
            match x {
                1 => {}
                -1 => signs.set(i, j, true),
                other => {
                    return Err(Error::Domain(format!(
                        "entry ({i}, {j}) is {other}, expected +1 or -1"
                    )))
                }
            }
        }
    }
    Ok(signs)
}

// Two ±1 rows are orthogonal iff they differ in exactly half the positions.
fn rows_orthogonal(signs: &BitMatrix) -> bool {
    let n = signs.n_rows();
    if n > 2 && n % 4 != 0 {
        return false;
    }
    (0..n).all(|i| {
        (i + 1..n).all(|j| {
            let diff: u32 = signs
                .row(i)
                .iter()
                .zip(signs.row(j))
                .map(|(a, b)| (a ^ b).count_ones())
                .sum();
            2 * diff as usize == n
        })
    })
}

fn constant_diagonal(signs: &BitMatrix) -> Option<i8> {
    let n = signs.n_rows();
    if n == 0 || !signs.is_symmetric() {
        return None;
    }
    let d = signs.get(0, 0);
    (0..n)
        .all(|i| signs.get(i, i) == d)
        .then_some(if d { -1 } else { 1 })
}

impl HMatrix {
    /// Verifies `H·Hᵀ = nI` for a sign-bit matrix.
    pub fn from_signs(signs: BitMatrix) -> Result<HMatrix> {
        if signs.n_rows() != signs.n_cols() {
            return Err(Error::Domain(format!(
                "Hadamard matrices are square, got {}x{}",
                signs.n_rows(),
                signs.n_cols()
            )));
        }
        if !rows_orthogonal(&signs) {
            return Err(Error::Domain("rows are not pairwise orthogonal".into()));
        }
        Ok(HMatrix::trusted(signs))
    }

    pub fn from_entries(m: &[Vec<i8>]) -> Result<HMatrix> {
        HMatrix::from_signs(signs_from_entries(m)?)
    }

    fn trusted(signs: BitMatrix) -> HMatrix {
        let diag_sign = constant_diagonal(&signs);
        HMatrix { signs, diag_sign }
    }

    /// The order-4 matrix with rows `++++`, `++−−`, `+−+−`, `+−−+`.
    pub fn h4() -> HMatrix {
        const ROWS: [&str; 4] = ["++++", "++--", "+-+-", "+--+"];
        let signs = BitMatrix::from_fn(4, 4, |i, j| ROWS[i].as_bytes()[j] == b'-');
        HMatrix::trusted(signs)
    }

    /// The order-2 matrix `[[1, 1], [1, −1]]`.
    pub fn h2() -> HMatrix {
        HMatrix::trusted(BitMatrix::from_fn(2, 2, |i, j| i == 1 && j == 1))
    }

    pub fn order(&self) -> usize {
        self.signs.n_rows()
    }

    pub fn entry(&self, i: usize, j: usize) -> i8 {
        if self.signs.get(i, j) {
            -1
        } else {
            1
        }
    }

    pub fn entries(&self) -> Vec<Vec<i8>> {
        let n = self.order();
        (0..n).map(|i| (0..n).map(|j| self.entry(i, j)).collect()).collect()
    }

    /// `A_H = (J − H)/2` over GF(2).
    pub fn sign_matrix(&self) -> &BitMatrix {
        &self.signs
    }

    pub fn is_normalized(&self) -> bool {
        let n = self.order();
        (0..n).all(|j| !self.signs.get(0, j)) && (0..n).all(|i| !self.signs.get(i, 0))
    }

    /// Symmetric with constant diagonal.
    pub fn is_graphical(&self) -> bool {
        self.diag_sign.is_some()
    }

    /// The constant diagonal value δ of a graphical matrix.
    pub fn diag_sign(&self) -> Option<i8> {
        self.diag_sign
    }

    /// Negates every row starting with −1, then every column starting with −1.
    pub fn normalize(&self) -> HMatrix {
        let n = self.order();
        let mut s = self.signs.clone();
        for i in 0..n {
            if s.get(i, 0) {
                for j in 0..n {
                    s.flip(i, j);
                }
            }
        }
        for j in 0..n {
            if s.get(0, j) {
                for i in 0..n {
                    s.flip(i, j);
                }
            }
        }
        HMatrix::trusted(s)
    }

    /// Negates row `i`; the result is again Hadamard.
    pub fn negate_row(&self, i: usize) -> HMatrix {
        let mut s = self.signs.clone();
        for j in 0..self.order() {
            s.flip(i, j);
        }
        HMatrix::trusted(s)
    }

    pub fn negate_col(&self, j: usize) -> HMatrix {
        let mut s = self.signs.clone();
        for i in 0..self.order() {
            s.flip(i, j);
        }
        HMatrix::trusted(s)
    }

    /// Kronecker product: entry `(i·m + k, j·m + l)` is `H1[i][j]·H2[k][l]`
    /// where `m` is the order of `other`.
    pub fn kron(&self, other: &HMatrix) -> HMatrix {
        let (n, m) = (self.order(), other.order());
        let mut s = BitMatrix::zeros(n * m, n * m);
        for i in 0..n {
            for j in 0..n {
                let a = self.signs.get(i, j);
                for k in 0..m {
                    for l in 0..m {
                        if a ^ other.signs.get(k, l) {
                            s.set(i * m + k, j * m + l, true);
                        }
                    }
                }
            }
        }
        let out = HMatrix::trusted(s);
        debug_assert!(out.order() > 64 || rows_orthogonal(&out.signs));
        out
    }

    /// `ρ(H)`, the 2-rank of `A_H`.
    pub fn rho(&self) -> usize {
        self.signs.rank2()
    }

    /// Text form: the order on the first line, then one line of `+`/`-` per
    /// row; every line newline-terminated.
    pub fn to_text(&self) -> String {
        let n = self.order();
        let mut out = String::with_capacity((n + 1) * (n + 1) + 8);
        out.push_str(&n.to_string());
        out.push('\n');
        for i in 0..n {
            for j in 0..n {
                out.push(if self.signs.get(i, j) { '-' } else { '+' });
            }
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<HMatrix> {
        let mut lines = text.split_inclusive('\n');
        let mut offset = 0;
        let header = lines.next().ok_or_else(|| Error::parse(0, "empty input"))?;
        let n: usize = header
            .strip_suffix('\n')
            .ok_or_else(|| Error::parse(header.len(), "header is not newline-terminated"))?
            .parse()
            .map_err(|_| Error::parse(0, "first line must be the order"))?;
        offset += header.len();
        let mut signs = BitMatrix::zeros(n, n);
        for i in 0..n {
            let line = lines
                .next()
                .ok_or_else(|| Error::parse(offset, format!("missing row {i}")))?;
            let body = line
                .strip_suffix('\n')
                .ok_or_else(|| Error::parse(offset + line.len(), "row is not newline-terminated"))?;
            if body.len() != n {
                return Err(Error::parse(
                    offset,
                    format!("row {i} has {} entries, expected {n}", body.len()),
                ));
            }
            for (j, c) in body.bytes().enumerate() {
                match c {
                    b'+' => {}
                    b'-' => signs.set(i, j, true),
                    _ => return Err(Error::parse(offset + j, format!("unexpected byte {c:#04x}"))),
                }
            }
            offset += line.len();
        }
        if lines.next().is_some() {
            return Err(Error::parse(offset, "trailing data after last row"));
        }
        HMatrix::from_signs(signs)
    }
}

impl fmt::Debug for HMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HMatrix(order={}, diag={:?})", self.order(), self.diag_sign)
    }
}

/// `H^{⊗ν}` for the order-4 matrix [`HMatrix::h4`].
pub fn h_power(nu: u32) -> Result<HMatrix> {
    if nu == 0 {
        return Err(Error::Domain("Kronecker power needs nu >= 1".into()));
    }
    if nu > 6 {
        return Err(Error::Domain(format!("order 4^{nu} is too large")));
    }
    let h = HMatrix::h4();
    Ok((1..nu).fold(h.clone(), |acc, _| acc.kron(&h)))
}

fn graph_from(h: &HMatrix) -> Result<Graph> {
    if !h.is_normalized() {
        return Err(Error::Precondition("Hadamard matrix is not normalized".into()));
    }
    let delta = h
        .diag_sign()
        .ok_or_else(|| Error::Precondition("Hadamard matrix is not graphical".into()))?;
    let n = h.order();
    // A = (J − δH)/2 has a one exactly where δ·H is −1.
    let flip = delta == -1;
    let a = BitMatrix::from_fn(n, n, |i, j| h.signs.get(i, j) ^ flip);
    if (0..n).any(|j| a.get(0, j)) {
        return Err(Error::Internal("vertex 0 is not isolated".into()));
    }
    let reduced = BitMatrix::from_fn(n - 1, n - 1, |i, j| a.get(i + 1, j + 1));
    Graph::from_adjacency(reduced)
}

/// The graph on `n − 1` vertices of a normalized graphical Hadamard matrix
/// of order `n > 4`: `A = (J − δH)/2` with the isolated vertex 0 removed.
pub fn graph_of(h: &HMatrix) -> Result<Graph> {
    if h.order() <= 4 {
        return Err(Error::Precondition(format!(
            "graph_of needs order > 4, got {}",
            h.order()
        )));
    }
    graph_from(h)
}

/// [`graph_of`] without the order restriction; at order 4 it yields `K3`.
pub fn graph_of_any_order(h: &HMatrix) -> Result<Graph> {
    if h.order() == 0 {
        return Err(Error::Precondition("empty matrix".into()));
    }
    graph_from(h)
}

/// The normalized graphical Hadamard matrix (δ = +1) of a strongly regular
/// graph with parameters `(n−1, n/2, n/4, n/4)`: prepend an isolated vertex
/// and take `H = J − 2A`.
pub fn h_of_graph(g: &Graph) -> Result<HMatrix> {
    let params = srg_params(g).map_err(|e| Error::Precondition(e.to_string()))?;
    let n = g.n() + 1;
    let expected = SrgParams::new(n - 1, n / 2, n / 4, n / 4);
    if n % 4 != 0 || params != expected {
        return Err(Error::Precondition(format!(
            "parameters {params} are not (n-1, n/2, n/4, n/4) for n = {n}"
        )));
    }
    let signs = BitMatrix::from_fn(n, n, |i, j| i > 0 && j > 0 && g.has_edge(i - 1, j - 1));
    let h = HMatrix::from_signs(signs).map_err(|e| Error::Internal(e.to_string()))?;
    if !h.is_normalized() || h.diag_sign() != Some(1) {
        return Err(Error::Internal("constructed matrix is not normalized graphical".into()));
    }
    Ok(h)
}

/// Kronecker product of a sequence of blocks, each either a normalized
/// graphical Hadamard matrix of order 64 or the order-4 matrix
/// [`HMatrix::h4`]. Normalization makes `ρ` additive over the blocks.
pub fn substituted_power(blocks: &[HMatrix]) -> Result<HMatrix> {
    let Some((first, rest)) = blocks.split_first() else {
        return Err(Error::Precondition("no blocks given".into()));
    };
    let h4 = HMatrix::h4();
    for (i, b) in blocks.iter().enumerate() {
        match b.order() {
            4 if *b == h4 => {}
            4 => {
                return Err(Error::Precondition(format!(
                    "block {i} has order 4 but is not the standard order-4 matrix"
                )))
            }
            64 => {
                if !b.is_normalized() || !b.is_graphical() {
                    return Err(Error::Precondition(format!(
                        "block {i} is not normalized graphical"
                    )));
                }
            }
            other => {
                return Err(Error::Precondition(format!(
                    "block {i} has order {other}, expected 4 or 64"
                )))
            }
        }
    }
    Ok(rest.iter().fold(first.clone(), |acc, b| acc.kron(b)))
}
