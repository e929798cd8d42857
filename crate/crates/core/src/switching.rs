//! Godsil-McKay switching.
//!
//! A switching set `S` induces a regular subgraph and every vertex outside
//! it sees `0`, `|S|/2` or `|S|` members. Switching complements the edges
//! between `S` and the vertices that see exactly half of it; the spectrum is
//! unchanged, and modulo 2 the adjacency matrix moves by a rank-2 matrix, so
//! the 2-rank changes by `−2`, `0` or `+2`.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::graph::{parse_row_vector, symplectic_graph, Graph};
use crate::graph6::{decode_graph6, to_graph6_string};

/// How a vertex relates to a switching set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Contact {
    Member,
    None,
    Half,
    All,
}

/// A validated switching set together with the classification of every
/// vertex against it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwitchingSet {
    members: Vec<usize>,
    contacts: Vec<Contact>,
}

impl SwitchingSet {
    /// Member indices, sorted.
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contact(&self, v: usize) -> Contact {
        self.contacts[v]
    }

    pub fn contacts(&self) -> &[Contact] {
        &self.contacts
    }

    /// Vertices whose edges to the set get complemented.
    pub fn half_vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.contacts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == Contact::Half)
            .map(|(v, _)| v)
    }

    fn mask(&self, words: usize) -> Vec<u64> {
        member_mask(&self.members, words)
    }
}

fn member_mask(members: &[usize], words: usize) -> Vec<u64> {
    let mut m = vec![0u64; words];
    for &v in members {
        m[v / 64] |= 1 << (v % 64);
    }
    m
}

#[inline]
fn and_count(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum()
}

fn classify(g: &Graph, members: &[usize]) -> Result<Vec<Contact>> {
    let words = g.adjacency().stride();
    let mask = member_mask(members, words);
    let size = members.len();
    let degrees: Vec<usize> = members.iter().map(|&v| and_count(g.row(v), &mask)).collect();
    if degrees.iter().any(|&d| d != degrees[0]) {
        return Err(Error::InvalidSet(format!(
            "induced subgraph on {members:?} is not regular, degrees {degrees:?}"
        )));
    }
    let mut contacts = vec![Contact::None; g.n()];
    for &v in members {
        contacts[v] = Contact::Member;
    }
    for (v, c) in contacts.iter_mut().enumerate() {
        if *c == Contact::Member {
            continue;
        }
        *c = match and_count(g.row(v), &mask) {
            0 => Contact::None,
            k if k == size => Contact::All,
            k if 2 * k == size => Contact::Half,
            k => {
                return Err(Error::InvalidSet(format!(
                    "vertex {v} has {k} neighbours in a set of size {size}"
                )))
            }
        };
    }
    Ok(contacts)
}

/// Checks the switching conditions for `members` in `g`.
///
/// Any even size from 4 up is accepted; size-2 sets are rejected because
/// switching them only relabels the graph.
pub fn validate_switching_set(g: &Graph, members: &[usize]) -> Result<SwitchingSet> {
    let mut sorted = members.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::Precondition(format!("repeated vertex in {members:?}")));
    }
    if let Some(&v) = sorted.iter().find(|&&v| v >= g.n()) {
        return Err(Error::Precondition(format!(
            "vertex {v} out of range for {} vertices",
            g.n()
        )));
    }
    if sorted.len() < 4 || sorted.len() % 2 == 1 {
        return Err(Error::Precondition(format!(
            "switching sets have even size at least 4, got {}",
            sorted.len()
        )));
    }
    let contacts = classify(g, &sorted)?;
    Ok(SwitchingSet {
        members: sorted,
        contacts,
    })
}

/// Performs the switch. The classification stored in `s` must still match `g`.
pub fn apply_switch(g: &Graph, s: &SwitchingSet) -> Result<Graph> {
    if s.contacts.len() != g.n() {
        return Err(Error::InvalidSet(format!(
            "set was validated on {} vertices, graph has {}",
            s.contacts.len(),
            g.n()
        )));
    }
    let fresh = classify(g, &s.members)?;
    if fresh != s.contacts {
        return Err(Error::InvalidSet(
            "classification is stale for this graph".into(),
        ));
    }
    let mut out = g.clone();
    let words = g.adjacency().stride();
    let mask = s.mask(words);
    let adj = out.adjacency_mut();
    for v in s.half_vertices() {
        for (w, m) in mask.iter().enumerate() {
            adj.row_mut(v)[w] ^= m;
        }
        for &u in &s.members {
            adj.flip(u, v);
        }
    }
    Ok(out)
}

/// The perturbation `K` with `A' = A + K (mod 2)`: ones exactly between the
/// members and the half-class vertices.
pub fn switching_matrix(s: &SwitchingSet) -> BitMatrix {
    let n = s.contacts.len();
    let mut k = BitMatrix::zeros(n, n);
    for v in s.half_vertices() {
        for &u in &s.members {
            k.set(u, v, true);
            k.set(v, u, true);
        }
    }
    k
}

/// Leading six coordinates of the standard coclique switching set of
/// `Sp(2ν,2)`, as row vectors.
const STANDARD_PREFIXES: [&str; 4] = ["101010", "100101", "011001", "010110"];

/// Vector codes of the standard switching set `{v1, v2, v3, v4}` of
/// `Sp(2ν,2)`: the four prefixes above followed by the tail vector `z`
/// (a vector of GF(2)^(2ν−6), packed like every other code).
pub fn standard_switching_labels(nu: u32, z: u64) -> Result<[u64; 4]> {
    if nu < 3 {
        return Err(Error::Domain(format!(
            "the standard switching set needs nu >= 3, got {nu}"
        )));
    }
    let tail_bits = 2 * nu - 6;
    if tail_bits < 64 && z >> tail_bits != 0 {
        return Err(Error::Domain(format!(
            "tail vector {z} does not fit {tail_bits} coordinates"
        )));
    }
    let mut out = [0u64; 4];
    for (o, p) in out.iter_mut().zip(STANDARD_PREFIXES) {
        *o = parse_row_vector(p)? | z << 6;
    }
    Ok(out)
}

/// Vertex indices of the standard switching set in `symplectic_graph(nu)`,
/// in the order `v1..v4`.
pub fn standard_switching_set(nu: u32, z: u64) -> Result<[usize; 4]> {
    Ok(standard_switching_labels(nu, z)?.map(|l| l as usize - 1))
}

/// Every 4-subset of `labels` whose XOR is zero, as index tuples ordered by
/// label, listed in lexicographic order of the sorted labels.
pub fn sum_zero_quadruples(labels: &[u64]) -> Vec<[usize; 4]> {
    let mut order: Vec<usize> = (0..labels.len()).collect();
    order.sort_by_key(|&i| labels[i]);
    let index: std::collections::HashMap<u64, usize> =
        labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let mut out = Vec::new();
    for (p, &a) in order.iter().enumerate() {
        for (q, &b) in order.iter().enumerate().skip(p + 1) {
            for &c in &order[q + 1..] {
                let d = labels[a] ^ labels[b] ^ labels[c];
                if d > labels[c] {
                    if let Some(&di) = index.get(&d) {
                        out.push([a, b, c, di]);
                    }
                }
            }
        }
    }
    out
}

fn induces_regular(g: &Graph, quad: &[usize; 4]) -> bool {
    let deg = |x: usize| quad.iter().filter(|&&y| g.has_edge(x, y)).count();
    let d0 = deg(quad[0]);
    quad[1..].iter().all(|&x| deg(x) == d0)
}

/// Sets of the form `{a, b, c, a+b+c}` (distinct nonzero labels, XOR zero)
/// that induce a regular subgraph. Requires vector labels on `g`.
pub fn coclique_family_sets(g: &Graph) -> Result<Vec<[usize; 4]>> {
    let labels = g
        .labels()
        .ok_or_else(|| Error::Precondition("graph carries no vector labels".into()))?;
    Ok(sum_zero_quadruples(labels)
        .into_iter()
        .filter(|q| induces_regular(g, q))
        .collect())
}

/// All size-4 switching sets as sorted index tuples, lexicographic order.
pub fn switching_quads(g: &Graph) -> Vec<[usize; 4]> {
    let n = g.n();
    let words = g.adjacency().stride();
    (0..n)
        .into_par_iter()
        .flat_map_iter(|a| {
            let mut found = Vec::new();
            let mut acc_ab = vec![0u64; words];
            let mut acc_abc = vec![0u64; words];
            let mut mask = vec![0u64; words];
            for b in a + 1..n {
                for w in 0..words {
                    acc_ab[w] = g.row(a)[w] ^ g.row(b)[w];
                }
                let ab = g.has_edge(a, b) as u8;
                for c in b + 1..n {
                    for w in 0..words {
                        acc_abc[w] = acc_ab[w] ^ g.row(c)[w];
                    }
                    let (ac, bc) = (g.has_edge(a, c) as u8, g.has_edge(b, c) as u8);
                    for d in c + 1..n {
                        let (ad, bd, cd) =
                            (g.has_edge(a, d) as u8, g.has_edge(b, d) as u8, g.has_edge(c, d) as u8);
                        let da = ab + ac + ad;
                        if ab + bc + bd != da || ac + bc + cd != da || ad + bd + cd != da {
                            continue;
                        }
                        // An odd neighbour count outside the set shows up as a
                        // set bit in the XOR of the four rows.
                        mask.fill(0);
                        for v in [a, b, c, d] {
                            mask[v / 64] |= 1 << (v % 64);
                        }
                        let odd = (0..words).any(|w| (acc_abc[w] ^ g.row(d)[w]) & !mask[w] != 0);
                        if !odd {
                            found.push([a, b, c, d]);
                        }
                    }
                }
            }
            found
        })
        .collect()
}

/// All size-4 switching sets of `g`, classified, in lexicographic order of
/// sorted member indices.
pub fn enumerate_switching_sets4(g: &Graph) -> Vec<SwitchingSet> {
    switching_quads(g)
        .into_par_iter()
        .map(|q| validate_switching_set(g, &q).expect("enumerated set validates"))
        .collect()
}

/// Switched graphs of one 2-rank.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankGroup {
    pub count: usize,
    pub graphs: Vec<String>,
    #[serde(skip)]
    pub sets: Vec<[usize; 4]>,
}

/// The result of switching a graph on each of its size-4 switching sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    pub base: String,
    #[serde(default)]
    pub base_rank: usize,
    pub by_rank: BTreeMap<usize, RankGroup>,
}

impl Census {
    pub fn total(&self) -> usize {
        self.by_rank.values().map(|g| g.count).sum()
    }

    pub fn count(&self, rank: usize) -> usize {
        self.by_rank.get(&rank).map_or(0, |g| g.count)
    }
}

/// Switches `g` on every size-4 switching set and groups the results by
/// 2-rank. Within a group graphs keep enumeration order.
pub fn switch_census(g: &Graph) -> Census {
    let sets = switching_quads(g);
    let results: Vec<(usize, String)> = sets
        .par_iter()
        .map(|q| {
            let s = validate_switching_set(g, q).expect("enumerated set validates");
            let h = apply_switch(g, &s).expect("fresh set applies");
            (h.rank2(), to_graph6_string(&h))
        })
        .collect();
    let mut by_rank: BTreeMap<usize, RankGroup> = BTreeMap::new();
    for (q, (rank, g6)) in sets.into_iter().zip(results) {
        let group = by_rank.entry(rank).or_insert_with(|| RankGroup {
            count: 0,
            graphs: Vec::new(),
            sets: Vec::new(),
        });
        group.count += 1;
        group.graphs.push(g6);
        group.sets.push(q);
    }
    Census {
        base: to_graph6_string(g),
        base_rank: g.rank2(),
        by_rank,
    }
}

/// One switch in a chain.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainStep {
    /// Member labels, or `index + 1` when the graph is unlabelled.
    pub set: Vec<u64>,
    pub rank_after: usize,
    pub graph6: String,
}

/// A sequence of switches starting from one graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainReport {
    pub start: String,
    pub start_rank: usize,
    pub steps: Vec<ChainStep>,
    pub final_rank: usize,
}

impl ChainReport {
    fn new(g0: &Graph) -> Self {
        let r = g0.rank2();
        ChainReport {
            start: to_graph6_string(g0),
            start_rank: r,
            steps: Vec::new(),
            final_rank: r,
        }
    }

    fn push(&mut self, set: Vec<u64>, g: &Graph, rank: usize) {
        self.steps.push(ChainStep {
            set,
            rank_after: rank,
            graph6: to_graph6_string(g),
        });
        self.final_rank = rank;
    }

    /// Start rank followed by the rank after every step.
    pub fn ranks(&self) -> Vec<usize> {
        std::iter::once(self.start_rank)
            .chain(self.steps.iter().map(|s| s.rank_after))
            .collect()
    }

    /// The start graph followed by the graph after every step (unlabelled).
    pub fn graphs(&self) -> Result<Vec<Graph>> {
        std::iter::once(&self.start)
            .chain(self.steps.iter().map(|s| &s.graph6))
            .map(|s| decode_graph6(s.as_bytes()))
            .collect()
    }
}

fn set_labels(g: &Graph, members: &[usize]) -> Vec<u64> {
    match g.labels() {
        Some(ls) => members.iter().map(|&v| ls[v]).collect(),
        None => members.iter().map(|&v| v as u64 + 1).collect(),
    }
}

/// Greedy first-improvement search: repeatedly applies the first size-4
/// switching set (lexicographic order) that raises the 2-rank by 2, until
/// none does or `max_steps` switches were made.
pub fn rank_ascent_chain(g0: &Graph, max_steps: usize) -> ChainReport {
    let mut report = ChainReport::new(g0);
    let mut g = g0.clone();
    let mut rank = report.start_rank;
    for _ in 0..max_steps {
        let quads = switching_quads(&g);
        let found = quads.par_iter().find_map_first(|q| {
            let s = validate_switching_set(&g, q).ok()?;
            let h = apply_switch(&g, &s).ok()?;
            let r = h.rank2();
            (r == rank + 2).then_some((*q, h, r))
        });
        let Some((q, h, r)) = found else { break };
        report.push(set_labels(&g, &q), &h, r);
        g = h;
        rank = r;
    }
    report
}

/// Applies switching sets given by vertex labels, in order, validating each
/// against the current graph.
pub fn replay_chain(g0: &Graph, sets: &[Vec<u64>]) -> Result<ChainReport> {
    let mut report = ChainReport::new(g0);
    let mut g = g0.clone();
    for (step, labels) in sets.iter().enumerate() {
        let replay_err = |message: String| Error::Replay {
            step: step + 1,
            message,
        };
        let members = labels
            .iter()
            .map(|&l| {
                g.index_of_label(l)
                    .ok_or_else(|| replay_err(format!("no vertex labelled {l}")))
            })
            .collect::<Result<Vec<_>>>()?;
        let s = validate_switching_set(&g, &members).map_err(|e| replay_err(e.to_string()))?;
        g = apply_switch(&g, &s).map_err(|e| replay_err(e.to_string()))?;
        let r = g.rank2();
        report.push(labels.clone(), &g, r);
    }
    Ok(report)
}

/// The six switching sets of `Sp(6,2)` that raise the 2-rank from 6 to 18,
/// as row vectors.
pub const PUBLISHED_CHAIN: [[&str; 4]; 6] = [
    ["100000", "010000", "101000", "011000"],
    ["100000", "010000", "100100", "010100"],
    ["100000", "010000", "100010", "010010"],
    ["100000", "010000", "100001", "010001"],
    ["110000", "001000", "000010", "111010"],
    ["110000", "001000", "000001", "111001"],
];

/// Replays [`PUBLISHED_CHAIN`] from `Sp(6,2)`.
pub fn replay_published_chain() -> Result<ChainReport> {
    let sets = PUBLISHED_CHAIN
        .iter()
        .map(|set| set.iter().map(|v| parse_row_vector(v)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    replay_chain(&symplectic_graph(3)?, &sets)
}

/// Census of every graph in the chain except the last.
pub fn censuses_along(report: &ChainReport) -> Result<Vec<Census>> {
    let graphs = report.graphs()?;
    Ok(graphs[..graphs.len().saturating_sub(1)]
        .iter()
        .map(switch_census)
        .collect())
}

/// Published number of switched graphs of 2-rank `base + 2` at each
/// iteration of [`PUBLISHED_CHAIN`], as `(rank, count)`.
pub const PUBLISHED_CENSUS_COUNTS: [(usize, usize); 6] =
    [(8, 4275), (10, 2238), (12, 1242), (14, 818), (16, 508), (18, 172)];

/// One published census count against the observed one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusCheck {
    pub iteration: usize,
    pub base_rank: usize,
    pub rank: usize,
    pub published: usize,
    pub observed: usize,
    pub matches: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusComparison {
    pub checks: Vec<CensusCheck>,
    /// One message per mismatching count.
    pub discrepancies: Vec<String>,
}

/// Compares censuses taken along the published chain (one per iteration,
/// base = graph before the switch) with [`PUBLISHED_CENSUS_COUNTS`].
pub fn compare_published_counts(censuses: &[Census]) -> CensusComparison {
    let mut checks = Vec::new();
    let mut discrepancies = Vec::new();
    for (i, &(rank, published)) in PUBLISHED_CENSUS_COUNTS.iter().enumerate() {
        let (base_rank, observed) = censuses
            .get(i)
            .map_or((0, 0), |c| (c.base_rank, c.count(rank)));
        let matches = observed == published;
        if !matches {
            discrepancies.push(format!(
                "iteration {}: {observed} switched graphs of 2-rank {rank}, published {published}",
                i + 1
            ));
        }
        checks.push(CensusCheck {
            iteration: i + 1,
            base_rank,
            rank,
            published,
            observed,
            matches,
        });
    }
    CensusComparison {
        checks,
        discrepancies,
    }
}
