//! Simple undirected graphs on bit-packed adjacency rows, the symplectic
//! graphs over GF(2), and strongly-regular parameter checks.

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::BitMatrix;

/// A simple graph. Vertices are `0..n`; `labels`, when present, carry the
/// nonzero vector of GF(2)^(2ν) each vertex stands for (bit `i` of a label is
/// coordinate `i + 1`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: BitMatrix,
    labels: Option<Vec<u64>>,
}

/// Parameters `(v, k, λ, μ)` of a strongly regular graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SrgParams {
    pub v: usize,
    pub k: usize,
    pub lambda: usize,
    pub mu: usize,
}

impl SrgParams {
    pub fn new(v: usize, k: usize, lambda: usize, mu: usize) -> Self {
        SrgParams { v, k, lambda, mu }
    }

    /// The parameters shared by every symplectic graph `Sp(2ν,2)`.
    pub fn symplectic(nu: u32) -> Self {
        let q = 1usize << (2 * nu - 2);
        SrgParams::new(4 * q - 1, 2 * q, q, q)
    }

    /// `k(k − λ − 1) = (v − k − 1)μ`.
    pub fn is_feasible(&self) -> bool {
        let (v, k, l, m) = (self.v as i64, self.k as i64, self.lambda as i64, self.mu as i64);
        k * (k - l - 1) == (v - k - 1) * m
    }
}

impl fmt::Display for SrgParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.v, self.k, self.lambda, self.mu)
    }
}

impl Graph {
    /// Wraps an adjacency matrix, which must be square, symmetric and loopless.
    pub fn from_adjacency(adj: BitMatrix) -> Result<Graph> {
        if adj.n_rows() != adj.n_cols() {
            return Err(Error::Dimension(format!(
                "adjacency matrix is {}x{}",
                adj.n_rows(),
                adj.n_cols()
            )));
        }
        if let Some(i) = (0..adj.n_rows()).find(|&i| adj.get(i, i)) {
            return Err(Error::Domain(format!("vertex {i} has a loop")));
        }
        if !adj.is_symmetric() {
            return Err(Error::Domain("adjacency matrix is not symmetric".into()));
        }
        Ok(Graph { adj, labels: None })
    }

    pub(crate) fn from_adjacency_unchecked(adj: BitMatrix) -> Graph {
        debug_assert!(adj.is_symmetric());
        Graph { adj, labels: None }
    }

    pub fn empty(n: usize) -> Graph {
        Graph::from_adjacency_unchecked(BitMatrix::zeros(n, n))
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut adj = BitMatrix::zeros(n, n);
        for &(a, b) in edges {
            if a >= n || b >= n || a == b {
                return Err(Error::Domain(format!("bad edge ({a}, {b}) for {n} vertices")));
            }
            adj.set(a, b, true);
            adj.set(b, a, true);
        }
        Ok(Graph::from_adjacency_unchecked(adj))
    }

    pub fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).expect("cycle needs at least 3 vertices")
    }

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        Graph::from_adjacency_unchecked(BitMatrix::from_fn(n, n, |i, j| i != j))
    }

    /// Attaches vector labels. They must be distinct and nonzero.
    pub fn with_labels(mut self, labels: Vec<u64>) -> Result<Graph> {
        if labels.len() != self.n() {
            return Err(Error::Dimension(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n()
            )));
        }
        if labels.contains(&0) {
            return Err(Error::Domain("label 0 is not a nonzero vector".into()));
        }
        let distinct: HashSet<_> = labels.iter().collect();
        if distinct.len() != labels.len() {
            return Err(Error::Domain("labels are not distinct".into()));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    /// Labels vertex `i` with `i + 1`, the convention used by
    /// [`symplectic_graph`]. Requires `n = 4^ν − 1`.
    pub fn with_symplectic_labels(self) -> Result<Graph> {
        let n = self.n();
        if symplectic_nu(n).is_none() {
            return Err(Error::Precondition(format!(
                "{n} vertices is not 4^nu - 1 for any nu >= 1"
            )));
        }
        self.with_labels((1..=n as u64).collect())
    }

    pub fn without_labels(mut self) -> Graph {
        self.labels = None;
        self
    }

    pub fn n(&self) -> usize {
        self.adj.n_rows()
    }

    pub fn adjacency(&self) -> &BitMatrix {
        &self.adj
    }

    pub fn labels(&self) -> Option<&[u64]> {
        self.labels.as_deref()
    }

    /// Vertex index carrying `label`.
    pub fn index_of_label(&self, label: u64) -> Option<usize> {
        self.labels.as_ref()?.iter().position(|&l| l == label)
    }

    #[inline]
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adj.get(a, b)
    }

    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        self.adj.row(v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.count_ones() / 2
    }

    pub fn common_neighbors(&self, a: usize, b: usize) -> usize {
        self.row(a)
            .iter()
            .zip(self.row(b))
            .map(|(x, y)| (x & y).count_ones() as usize)
            .sum()
    }

    /// 2-rank of the adjacency matrix.
    pub fn rank2(&self) -> usize {
        self.adj.rank2()
    }

    /// The graph with vertex `v` renamed to `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n());
        let n = self.n();
        let mut adj = BitMatrix::zeros(n, n);
        for a in 0..n {
            for b in 0..n {
                if self.adj.get(a, b) {
                    adj.set(perm[a], perm[b], true);
                }
            }
        }
        let labels = self.labels.as_ref().map(|ls| {
            let mut out = vec![0; n];
            for (v, &l) in ls.iter().enumerate() {
                out[perm[v]] = l;
            }
            out
        });
        Graph { adj, labels }
    }

    /// Mutable adjacency access for switching; callers keep it symmetric.
    pub(crate) fn adjacency_mut(&mut self) -> &mut BitMatrix {
        &mut self.adj
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={})", self.n(), self.edge_count())
    }
}

/// `ν` such that `n = 4^ν − 1`, if any.
pub fn symplectic_nu(n: usize) -> Option<u32> {
    let m = n.checked_add(1)?;
    if m.is_power_of_two() && m.trailing_zeros() % 2 == 0 && m > 1 {
        Some(m.trailing_zeros() / 2)
    } else {
        None
    }
}

const EVEN_BITS: u64 = 0x5555_5555_5555_5555;

/// The symplectic form `Σ (x_{2i−1} y_{2i} + x_{2i} y_{2i−1})` over GF(2),
/// with vectors of GF(2)^(2ν) packed as integers (bit `i` is coordinate `i+1`).
pub fn symplectic_form(x: u64, y: u64, nu: u32) -> Result<u8> {
    if nu == 0 {
        return Err(Error::Domain("nu must be positive".into()));
    }
    if nu > 32 {
        return Err(Error::Domain(format!("nu = {nu} does not fit a 64-bit code")));
    }
    let limit = if nu == 32 { u64::MAX } else { (1u64 << (2 * nu)) - 1 };
    if x > limit || y > limit {
        return Err(Error::Domain(format!(
            "vector code out of range for nu = {nu}"
        )));
    }
    Ok(form_unchecked(x, y))
}

#[inline]
pub(crate) fn form_unchecked(x: u64, y: u64) -> u8 {
    let cross = (x & EVEN_BITS & (y >> 1)) ^ ((x >> 1) & EVEN_BITS & y);
    (cross.count_ones() & 1) as u8
}

/// `Sp(2ν,2)`: vertices are the nonzero vectors of GF(2)^(2ν) in increasing
/// integer order, adjacent when the symplectic form is 1.
pub fn symplectic_graph(nu: u32) -> Result<Graph> {
    if nu < 2 {
        return Err(Error::Domain(format!(
            "symplectic graphs are built for nu >= 2, got {nu}"
        )));
    }
    if nu > 8 {
        return Err(Error::Domain(format!("nu = {nu} is too large to materialise")));
    }
    let n = (1usize << (2 * nu)) - 1;
    let adj = BitMatrix::from_fn(n, n, |i, j| form_unchecked(i as u64 + 1, j as u64 + 1) == 1);
    Graph::from_adjacency_unchecked(adj).with_symplectic_labels()
}

/// Verifies strong regularity by checking every pair and returns the
/// parameters. For a complete graph μ is reported as 0, and for an edgeless
/// graph λ is reported as 0.
pub fn srg_params(g: &Graph) -> Result<SrgParams> {
    let n = g.n();
    if n < 3 {
        return Err(Error::Precondition(format!(
            "need at least 3 vertices, got {n}"
        )));
    }
    let k = g.degree(0);
    if let Some(v) = (1..n).find(|&v| g.degree(v) != k) {
        return Err(Error::NotSrg(format!(
            "vertex {v} has degree {}, vertex 0 has degree {k}",
            g.degree(v)
        )));
    }
    // Reference values come from the lexicographically first pair of each kind.
    let first = |adjacent: bool| {
        (0..n).find_map(|a| {
            (a + 1..n)
                .find(|&b| g.has_edge(a, b) == adjacent)
                .map(|b| g.common_neighbors(a, b))
        })
    };
    let lambda = first(true);
    let mu = first(false);
    let violation = (0..n).into_par_iter().find_map_first(|a| {
        (a + 1..n).find_map(|b| {
            let c = g.common_neighbors(a, b);
            let (expected, what) = if g.has_edge(a, b) {
                (lambda, "lambda")
            } else {
                (mu, "mu")
            };
            (Some(c) != expected).then(|| (a, b, c, what, expected.unwrap_or(0)))
        })
    });
    if let Some((a, b, c, what, expected)) = violation {
        return Err(Error::NotSrg(format!(
            "pair ({a}, {b}) has {c} common neighbours, {what} = {expected} elsewhere"
        )));
    }
    Ok(SrgParams::new(n, k, lambda.unwrap_or(0), mu.unwrap_or(0)))
}

/// True when the XOR of every two distinct adjacency rows is again a row.
pub fn row_closure_holds(g: &Graph) -> bool {
    let n = g.n();
    let rows: HashSet<&[u64]> = (0..n).map(|v| g.row(v)).collect();
    let mut buf = vec![0u64; g.adjacency().stride()];
    for a in 0..n {
        for b in a + 1..n {
            for ((o, x), y) in buf.iter_mut().zip(g.row(a)).zip(g.row(b)) {
                *o = x ^ y;
            }
            if !rows.contains(buf.as_slice()) {
                return false;
            }
        }
    }
    true
}

/// Upper bound `2^(2ν−1) − 2^(ν−1) − 2` on the 2-rank of any graph with the
/// parameters of `Sp(2ν,2)`.
pub fn rank_upper_bound(nu: u32) -> Result<u64> {
    if nu < 2 {
        return Err(Error::Domain(format!("rank bound needs nu >= 2, got {nu}")));
    }
    if nu > 32 {
        return Err(Error::Domain(format!("nu = {nu} overflows")));
    }
    Ok((1u64 << (2 * nu - 1)) - (1u64 << (nu - 1)) - 2)
}

/// Parses a vector of GF(2)^(2ν) written as a row of `0`/`1` characters,
/// first character = first coordinate.
pub fn parse_row_vector(s: &str) -> Result<u64> {
    if s.is_empty() || s.len() > 64 {
        return Err(Error::parse(0, format!("bad row vector {s:?}")));
    }
    let mut code = 0u64;
    for (i, c) in s.bytes().enumerate() {
        match c {
            b'0' => {}
            b'1' => code |= 1 << i,
            _ => return Err(Error::parse(i, format!("bad row vector {s:?}"))),
        }
    }
    Ok(code)
}

/// Inverse of [`parse_row_vector`] for a vector of length `len`.
pub fn format_row_vector(code: u64, len: usize) -> String {
    (0..len)
        .map(|i| if code >> i & 1 == 1 { '1' } else { '0' })
        .collect()
}
