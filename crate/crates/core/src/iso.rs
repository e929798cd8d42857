//! Canonical forms and isomorphism classes for desk-scale graphs.
//!
//! The canonical labeling is found by individualization-refinement. Each
//! search-tree node holds an ordered equitable partition; a child
//! individualizes one vertex of the first smallest non-singleton cell and
//! refines again. Refinement is 1-dimensional color refinement that records a
//! hashed trace of every split; traces depend only on the ordered partition,
//! so they are relabeling-invariant. A leaf is a discrete partition, and its
//! key is `(trace sequence, relabeled adjacency)`. The canonical form is the
//! leaf with the largest key.
//!
//! Subtrees are skipped in three ways, all of which leave the maximum
//! unchanged:
//!
//! - a node whose trace prefix is smaller than the current best's;
//! - a child in the same orbit as an explored sibling under the
//!   automorphisms found so far that fix the node's path pointwise;
//! - the rest of a subtree once one of its leaves matches an earlier leaf,
//!   which shows the whole subtree is an image of one already explored.

use std::cmp::Ordering;
use std::collections::{HashMap, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::graph::{srg_params, Graph, SrgParams};
use crate::graph6::to_graph6_string;

/// Largest graph accepted by the canonical-form search.
pub const MAX_VERTICES: usize = 512;

// Leaves kept for automorphism detection, by total words stored.
const LEAF_STORE_WORDS: usize = 1 << 23;

/// Cheap isomorphism invariants, used as a pre-filter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Fingerprint {
    pub n: usize,
    pub degree_hash: u64,
    pub rank2: usize,
    pub common_neighbor_hash: u64,
    pub triangle_hash: u64,
}

/// Canonical adjacency (as graph6 bytes) plus the fingerprint. Two graphs are
/// isomorphic exactly when their certificates are equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Certificate {
    pub fingerprint: Fingerprint,
    pub canonical: Vec<u8>,
}

#[inline]
fn mix(h: u64, x: u64) -> u64 {
    (h ^ x)
        .wrapping_mul(0x9E37_79B9_7F4A_7C15)
        .rotate_left(29)
        .wrapping_add(0x632B_E59B_D9B4_E019)
}

fn hash_sorted(mut xs: Vec<u64>) -> u64 {
    xs.sort_unstable();
    xs.into_iter().fold(0xCBF2_9CE4_8422_2325, mix)
}

fn check_size(g: &Graph, limit: usize) -> Result<()> {
    if g.n() > limit {
        return Err(Error::Size(format!(
            "{} vertices exceeds the isomorphism limit of {limit}",
            g.n()
        )));
    }
    Ok(())
}

pub fn fingerprint(g: &Graph) -> Fingerprint {
    let n = g.n();
    let degrees = (0..n).map(|v| g.degree(v) as u64).collect();
    let mut common = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    let mut triangles = vec![0u64; n];
    for a in 0..n {
        for b in a + 1..n {
            let c = g.common_neighbors(a, b) as u64;
            common.push(c << 1 | g.has_edge(a, b) as u64);
            if g.has_edge(a, b) {
                triangles[a] += c;
                triangles[b] += c;
            }
        }
    }
    Fingerprint {
        n,
        degree_hash: hash_sorted(degrees),
        rank2: g.rank2(),
        common_neighbor_hash: hash_sorted(common),
        triangle_hash: hash_sorted(triangles),
    }
}

/// Ordered partition of the vertex set into contiguous cells of `lab`.
#[derive(Clone)]
struct Partition {
    lab: Vec<u32>,
    /// For a cell starting at position `s`, `cell_end[s]` is one past its end.
    cell_end: Vec<u32>,
    /// Start position of each vertex's cell.
    cell_of: Vec<u32>,
    cells: usize,
}

impl Partition {
    fn unit(n: usize) -> Self {
        let mut cell_end = vec![0; n];
        if n > 0 {
            cell_end[0] = n as u32;
        }
        Partition {
            lab: (0..n as u32).collect(),
            cell_end,
            cell_of: vec![0; n],
            cells: usize::from(n > 0),
        }
    }

    fn is_discrete(&self) -> bool {
        self.cells == self.lab.len()
    }

    fn starts(&self) -> impl Iterator<Item = usize> + '_ {
        let n = self.lab.len();
        std::iter::successors(if n > 0 { Some(0) } else { None }, move |&s| {
            let e = self.cell_end[s] as usize;
            (e < n).then_some(e)
        })
    }

    /// First smallest cell with more than one vertex.
    fn target_cell(&self) -> Option<(usize, usize)> {
        self.starts()
            .map(|s| (s, self.cell_end[s] as usize))
            .filter(|(s, e)| e - s > 1)
            .min_by_key(|(s, e)| (e - s, *s))
    }
}

struct Refiner<'a> {
    g: &'a Graph,
    words: usize,
    mask: Vec<u64>,
    counts: Vec<(u32, u32)>,
}

impl<'a> Refiner<'a> {
    fn new(g: &'a Graph) -> Self {
        let words = g.adjacency().stride();
        Refiner {
            g,
            words,
            mask: vec![0; words],
            counts: Vec::new(),
        }
    }

    /// Refines `p` to the coarsest equitable partition finer than it, using
    /// the cells starting at `seeds` as initial splitters. Returns the trace.
    fn refine(&mut self, p: &mut Partition, seeds: &[usize], mut trace: u64) -> u64 {
        let n = p.lab.len();
        let mut queue: VecDeque<usize> = seeds.iter().copied().collect();
        let mut queued = vec![false; n];
        for &s in seeds {
            queued[s] = true;
        }
        while let Some(w) = queue.pop_front() {
            queued[w] = false;
            let w_end = p.cell_end[w] as usize;
            self.mask.iter_mut().for_each(|m| *m = 0);
            for &v in &p.lab[w..w_end] {
                self.mask[v as usize / 64] |= 1 << (v % 64);
            }
            trace = mix(trace, (w as u64) << 32 | (w_end - w) as u64);
            let mut s = 0;
            while s < n {
                let e = p.cell_end[s] as usize;
                if e - s > 1 {
                    self.split(p, s, e, &mut queue, &mut queued, &mut trace);
                }
                s = e;
            }
            if p.is_discrete() {
                break;
            }
        }
        mix(trace, p.cells as u64)
    }

    fn split(
        &mut self,
        p: &mut Partition,
        s: usize,
        e: usize,
        queue: &mut VecDeque<usize>,
        queued: &mut [bool],
        trace: &mut u64,
    ) {
        self.counts.clear();
        for &v in &p.lab[s..e] {
            let row = self.g.row(v as usize);
            let c: u32 = (0..self.words)
                .map(|i| (row[i] & self.mask[i]).count_ones())
                .sum();
            self.counts.push((c, v));
        }
        let c0 = self.counts[0].0;
        if self.counts.iter().all(|&(c, _)| c == c0) {
            return;
        }
        self.counts.sort_unstable();
        let was_queued = queued[s];
        let mut pieces: Vec<(usize, usize)> = Vec::new();
        let mut start = s;
        for (i, &(c, v)) in self.counts.iter().enumerate() {
            let at = s + i;
            p.lab[at] = v;
            if i > 0 && c != self.counts[i - 1].0 {
                pieces.push((start, at));
                start = at;
            }
        }
        pieces.push((start, e));
        let mut k = 0;
        for &(a, b) in &pieces {
            p.cell_end[a] = b as u32;
            for &v in &p.lab[a..b] {
                p.cell_of[v as usize] = a as u32;
            }
            *trace = mix(*trace, (a as u64) << 40 | (b - a) as u64 | (self.counts[a - s].0 as u64) << 20);
            k += 1;
        }
        p.cells += k - 1;
        // Hopcroft: if the parent was not pending, one largest piece can be skipped.
        let skip = if was_queued {
            None
        } else {
            pieces
                .iter()
                .enumerate()
                .max_by_key(|(i, (a, b))| (b - a, std::cmp::Reverse(*i)))
                .map(|(i, _)| i)
        };
        for (i, &(a, _)) in pieces.iter().enumerate() {
            if Some(i) != skip && !queued[a] {
                queued[a] = true;
                queue.push_back(a);
            }
        }
    }

    fn individualize(&mut self, p: &Partition, v: u32, trace: u64) -> (Partition, u64) {
        let mut q = p.clone();
        let s = q.cell_of[v as usize] as usize;
        let e = q.cell_end[s] as usize;
        let at = q.lab[s..e].iter().position(|&x| x == v).unwrap() + s;
        q.lab.swap(s, at);
        q.cell_end[s] = s as u32 + 1;
        q.cell_end[s + 1] = e as u32;
        for &x in &q.lab[s + 1..e] {
            q.cell_of[x as usize] = s as u32 + 1;
        }
        q.cell_of[v as usize] = s as u32;
        q.cells += 1;
        let t = mix(trace, (s as u64) << 32 | (e - s) as u64);
        let t = self.refine(&mut q, &[s], t);
        (q, t)
    }
}

struct Leaf {
    traces: Vec<u64>,
    graph: Vec<u64>,
    lab: Vec<u32>,
    path: Vec<u32>,
}

struct UnionFind(Vec<u32>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n as u32).collect())
    }

    fn find(&mut self, x: u32) -> u32 {
        let mut r = x;
        while self.0[r as usize] != r {
            r = self.0[r as usize];
        }
        let mut y = x;
        while self.0[y as usize] != r {
            let next = self.0[y as usize];
            self.0[y as usize] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.0[ra.max(rb) as usize] = ra.min(rb);
        }
    }
}

struct Search<'a> {
    refiner: Refiner<'a>,
    n: usize,
    best: Option<Leaf>,
    store: HashMap<Vec<u64>, Vec<Leaf>>,
    stored_words: usize,
    generators: Vec<Vec<u32>>,
    leaves: u64,
}

impl<'a> Search<'a> {
    fn new(g: &'a Graph) -> Self {
        Search {
            refiner: Refiner::new(g),
            n: g.n(),
            best: None,
            store: HashMap::new(),
            stored_words: 0,
            generators: Vec::new(),
            leaves: 0,
        }
    }

    fn leaf_graph(&self, lab: &[u32]) -> Vec<u64> {
        let n = self.n;
        let words = self.refiner.words;
        let mut pos = vec![0u32; n];
        for (p, &v) in lab.iter().enumerate() {
            pos[v as usize] = p as u32;
        }
        let mut out = vec![0u64; n * words];
        for (p, &v) in lab.iter().enumerate() {
            let row = self.refiner.g.row(v as usize);
            for (w, &word) in row.iter().enumerate() {
                let mut bits = word;
                while bits != 0 {
                    let u = w * 64 + bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    let q = pos[u] as usize;
                    out[p * words + q / 64] |= 1 << (q % 64);
                }
            }
        }
        out
    }

    fn compare_with_best(&self, traces: &[u64]) -> Ordering {
        match &self.best {
            None => Ordering::Equal,
            Some(b) => {
                let k = traces.len().min(b.traces.len());
                traces[..k]
                    .cmp(&b.traces[..k])
                    .then(if traces.len() > b.traces.len() {
                        Ordering::Greater
                    } else {
                        Ordering::Equal
                    })
            }
        }
    }

    /// Returns `Some(level)` to unwind to the ancestor at that depth.
    fn visit_leaf(&mut self, p: &Partition, path: &[u32], traces: &[u64]) -> Option<usize> {
        self.leaves += 1;
        let graph = self.leaf_graph(&p.lab);
        // An equal earlier leaf yields an automorphism; the leaf adds nothing new.
        let earlier = self.store.get(&graph).and_then(|c| c.iter().find(|o| o.traces == traces));
        if let Some(other) = earlier {
            {
                let mut gamma = vec![0u32; self.n];
                for (a, b) in p.lab.iter().zip(&other.lab) {
                    gamma[*a as usize] = *b;
                }
                let c = path.iter().zip(&other.path).take_while(|(a, b)| a == b).count();
                let fixes_prefix = path[..c].iter().all(|&v| gamma[v as usize] == v);
                let maps_branch = c < path.len()
                    && c < other.path.len()
                    && gamma[path[c] as usize] == other.path[c];
                if gamma.iter().enumerate().any(|(v, &x)| v as u32 != x) {
                    self.generators.push(gamma);
                }
                return (fixes_prefix && maps_branch).then_some(c);
            }
        }
        let better = match &self.best {
            None => true,
            Some(b) => (traces, &graph) > (&b.traces[..], &b.graph),
        };
        let leaf = Leaf {
            traces: traces.to_vec(),
            graph: graph.clone(),
            lab: p.lab.clone(),
            path: path.to_vec(),
        };
        let size = graph.len() + 2 * self.n;
        if self.stored_words + size <= LEAF_STORE_WORDS {
            self.stored_words += size;
            self.store.entry(graph).or_default().push(Leaf {
                traces: leaf.traces.clone(),
                graph: Vec::new(),
                lab: leaf.lab.clone(),
                path: leaf.path.clone(),
            });
        }
        if better {
            self.best = Some(leaf);
        }
        None
    }

    fn visit(&mut self, p: &Partition, path: &mut Vec<u32>, traces: &mut Vec<u64>) -> Option<usize> {
        if p.is_discrete() {
            return self.visit_leaf(p, path, traces);
        }
        let depth = path.len();
        let (s, e) = p.target_cell().expect("non-discrete partition has a target");
        let mut cell: Vec<u32> = p.lab[s..e].to_vec();
        cell.sort_unstable();
        let mut orbits = UnionFind::new(self.n);
        let mut gens_seen = 0;
        let mut explored: Vec<u32> = Vec::new();
        let parent_trace = traces.last().copied().unwrap_or(0);
        for &w in &cell {
            if self.generators.len() > gens_seen {
                for gamma in &self.generators[gens_seen..] {
                    if path.iter().all(|&v| gamma[v as usize] == v) {
                        for (v, &x) in gamma.iter().enumerate() {
                            orbits.union(v as u32, x);
                        }
                    }
                }
                gens_seen = self.generators.len();
            }
            let root = orbits.find(w);
            if explored.iter().any(|&u| orbits.find(u) == root) {
                continue;
            }
            explored.push(w);
            let (child, t) = self.refiner.individualize(p, w, parent_trace);
            traces.push(t);
            path.push(w);
            let abort = if self.compare_with_best(traces) == Ordering::Less {
                None
            } else {
                self.visit(&child, path, traces)
            };
            path.pop();
            traces.pop();
            if let Some(level) = abort {
                if level < depth {
                    return Some(level);
                }
            }
        }
        None
    }
}

/// Result of a canonical labeling run.
#[derive(Debug, Clone)]
pub struct Canonical {
    /// `labeling[p]` is the input vertex placed at canonical position `p`.
    pub labeling: Vec<usize>,
    pub graph: Graph,
    /// Automorphisms found while searching (not necessarily a generating set).
    pub automorphisms: Vec<Vec<usize>>,
    pub leaves_visited: u64,
}

/// Canonical relabeling of `g`.
pub fn canonical_labeling(g: &Graph) -> Result<Canonical> {
    canonical_labeling_limited(g, MAX_VERTICES)
}

/// [`canonical_labeling`] with a caller-chosen size guard.
pub fn canonical_labeling_limited(g: &Graph, limit: usize) -> Result<Canonical> {
    check_size(g, limit)?;
    let n = g.n();
    let mut search = Search::new(g);
    let mut root = Partition::unit(n);
    let t0 = if n > 0 {
        search.refiner.refine(&mut root, &[0], mix(0, n as u64))
    } else {
        0
    };
    let mut traces = vec![t0];
    search.visit(&root, &mut Vec::new(), &mut traces);
    let best = search.best.take().expect("search reaches at least one leaf");
    let mut adj = BitMatrix::zeros(n, n);
    let words = adj.stride();
    for p in 0..n {
        adj.row_mut(p).copy_from_slice(&best.graph[p * words..(p + 1) * words]);
    }
    Ok(Canonical {
        labeling: best.lab.iter().map(|&v| v as usize).collect(),
        graph: Graph::from_adjacency_unchecked(adj),
        automorphisms: search
            .generators
            .into_iter()
            .map(|g| g.into_iter().map(|x| x as usize).collect())
            .collect(),
        leaves_visited: search.leaves,
    })
}

pub fn canonical_form(g: &Graph) -> Result<Certificate> {
    canonical_form_limited(g, MAX_VERTICES)
}

pub fn canonical_form_limited(g: &Graph, limit: usize) -> Result<Certificate> {
    let c = canonical_labeling_limited(g, limit)?;
    Ok(Certificate {
        fingerprint: fingerprint(g),
        canonical: to_graph6_string(&c.graph).into_bytes(),
    })
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> Result<bool> {
    check_size(a, MAX_VERTICES)?;
    check_size(b, MAX_VERTICES)?;
    if a.n() != b.n() || a.edge_count() != b.edge_count() || fingerprint(a) != fingerprint(b) {
        return Ok(false);
    }
    Ok(canonical_form(a)? == canonical_form(b)?)
}

/// Groups graphs by isomorphism. Classes appear in order of first
/// occurrence and list input indices in increasing order.
pub fn partition_classes(graphs: &[Graph]) -> Result<Vec<Vec<usize>>> {
    partition_classes_limited(graphs, MAX_VERTICES)
}

pub fn partition_classes_limited(graphs: &[Graph], limit: usize) -> Result<Vec<Vec<usize>>> {
    let certs = graphs
        .par_iter()
        .map(|g| canonical_form_limited(g, limit))
        .collect::<Result<Vec<_>>>()?;
    Ok(group_by_certificate(&certs))
}

fn group_by_certificate(certs: &[Certificate]) -> Vec<Vec<usize>> {
    let mut index: HashMap<&Certificate, usize> = HashMap::new();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, c) in certs.iter().enumerate() {
        match index.get(c) {
            Some(&k) => classes[k].push(i),
            None => {
                index.insert(c, classes.len());
                classes.push(vec![i]);
            }
        }
    }
    classes
}

/// One isomorphism class in a [`ClassReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassEntry {
    pub representative: String,
    pub size: usize,
    pub member_indices: Vec<usize>,
    pub rank2: usize,
    pub params: Option<SrgParams>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    pub classes: Vec<ClassEntry>,
}

/// [`partition_classes`] with a per-class summary.
pub fn class_report(graphs: &[Graph]) -> Result<ClassReport> {
    class_report_limited(graphs, MAX_VERTICES)
}

pub fn class_report_limited(graphs: &[Graph], limit: usize) -> Result<ClassReport> {
    let classes = partition_classes_limited(graphs, limit)?;
    Ok(ClassReport {
        classes: classes
            .into_iter()
            .map(|members| {
                let rep = &graphs[members[0]];
                ClassEntry {
                    representative: to_graph6_string(rep),
                    size: members.len(),
                    rank2: rep.rank2(),
                    params: srg_params(rep).ok(),
                    member_indices: members,
                }
            })
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::symplectic_graph;
    use crate::switching::{apply_switch, standard_switching_set, validate_switching_set};
    use rand::{rngs::StdRng, seq::SliceRandom, Rng, SeedableRng};

    fn shuffled(g: &Graph, rng: &mut StdRng) -> Graph {
        let mut perm: Vec<usize> = (0..g.n()).collect();
        perm.shuffle(rng);
        g.permuted(&perm)
    }

    /// Tries every bijection.
    fn brute_force_isomorphic(a: &Graph, b: &Graph) -> bool {
        fn extend(a: &Graph, b: &Graph, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
            let i = map.len();
            if i == a.n() {
                return true;
            }
            for j in 0..b.n() {
                if used[j] {
                    continue;
                }
                if (0..i).all(|k| a.has_edge(i, k) == b.has_edge(j, map[k])) {
                    map.push(j);
                    used[j] = true;
                    if extend(a, b, map, used) {
                        return true;
                    }
                    map.pop();
                    used[j] = false;
                }
            }
            false
        }
        a.n() == b.n() && extend(a, b, &mut Vec::new(), &mut vec![false; b.n()])
    }

    fn random_graph(rng: &mut StdRng, n: usize) -> Graph {
        let p: f64 = rng.gen_range(0.2..0.8);
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(p) {
                    edges.push((i, j));
                }
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn labeling_reproduces_canonical_graph() {
        let mut rng = StdRng::seed_from_u64(1);
        for _ in 0..20 {
            let g = random_graph(&mut rng, 12);
            let c = canonical_labeling(&g).unwrap();
            let mut perm = vec![0; g.n()];
            for (p, &v) in c.labeling.iter().enumerate() {
                perm[v] = p;
            }
            assert_eq!(g.permuted(&perm).adjacency(), c.graph.adjacency());
            for a in &c.automorphisms {
                assert_eq!(g.permuted(a).adjacency(), g.adjacency());
            }
        }
    }

    #[test]
    fn relabeling_invariance_on_random_graphs() {
        let mut rng = StdRng::seed_from_u64(2);
        for _ in 0..30 {
            let n = rng.gen_range(1..30);
            let g = random_graph(&mut rng, n);
            let h = shuffled(&g, &mut rng);
            assert_eq!(canonical_form(&g).unwrap(), canonical_form(&h).unwrap());
        }
    }

    #[test]
    fn highly_symmetric_graphs() {
        let mut rng = StdRng::seed_from_u64(3);
        for g in [Graph::empty(9), Graph::complete(9), Graph::cycle(12), symplectic_graph(2).unwrap()] {
            let h = shuffled(&g, &mut rng);
            assert!(are_isomorphic(&g, &h).unwrap());
        }
    }

    #[test]
    fn symplectic_invariance_and_switch_detection() {
        let mut rng = StdRng::seed_from_u64(4);
        let g = symplectic_graph(3).unwrap();
        let c = canonical_form(&g).unwrap();
        for _ in 0..5 {
            assert_eq!(canonical_form(&shuffled(&g, &mut rng)).unwrap(), c);
        }
        let s = validate_switching_set(&g, &standard_switching_set(3, 0).unwrap()).unwrap();
        let h = apply_switch(&g, &s).unwrap();
        let ch = canonical_form(&h).unwrap();
        assert_ne!(c.canonical, ch.canonical);
        assert_eq!(canonical_form(&shuffled(&h, &mut rng)).unwrap(), ch);
    }

    #[test]
    fn small_pairs() {
        assert!(!are_isomorphic(&Graph::cycle(5), &Graph::path(5)).unwrap());
        assert!(are_isomorphic(&Graph::empty(0), &Graph::empty(0)).unwrap());
        let c6 = Graph::cycle(6);
        let two_triangles = Graph::from_edges(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]).unwrap();
        assert!(!are_isomorphic(&c6, &two_triangles).unwrap());
    }

    #[test]
    fn agrees_with_brute_force_on_tiny_graphs() {
        let mut rng = StdRng::seed_from_u64(5);
        let mut corpus = Vec::new();
        for _ in 0..60 {
            let n = rng.gen_range(1..=6);
            let g = random_graph(&mut rng, n);
            corpus.push(shuffled(&g, &mut rng));
            corpus.push(g);
        }
        for a in &corpus {
            for b in &corpus {
                assert_eq!(are_isomorphic(a, b).unwrap(), brute_force_isomorphic(a, b));
            }
        }
    }

    #[test]
    fn repeated_graph_forms_one_class() {
        let g = symplectic_graph(2).unwrap();
        let classes = partition_classes(&[g.clone(), Graph::cycle(15), g.clone(), g]).unwrap();
        assert_eq!(classes, vec![vec![0, 2, 3], vec![1]]);
        let report = class_report(&[Graph::cycle(5), Graph::cycle(5)]).unwrap();
        assert_eq!(report.classes.len(), 1);
        assert_eq!(report.classes[0].size, 2);
        assert_eq!(report.classes[0].params, Some(SrgParams::new(5, 2, 0, 1)));
    }

    #[test]
    fn size_guard() {
        let big = Graph::empty(MAX_VERTICES + 1);
        assert!(matches!(canonical_form(&big), Err(Error::Size(_))));
    }

    #[test]
    fn classes_are_consistent() {
        let mut rng = StdRng::seed_from_u64(6);
        let mut graphs = Vec::new();
        for _ in 0..40 {
            let n = rng.gen_range(5..9);
            let g = random_graph(&mut rng, n);
            graphs.push(shuffled(&g, &mut rng));
            graphs.push(g);
        }
        let certs: Vec<Certificate> = graphs.iter().map(|g| canonical_form(g).unwrap()).collect();
        for _ in 0..2000 {
            let (a, b, c) = (rng.gen_range(0..80), rng.gen_range(0..80), rng.gen_range(0..80));
            if certs[a] == certs[b] && certs[b] == certs[c] {
                assert_eq!(certs[a], certs[c]);
            }
            assert_eq!(certs[a] == certs[b], certs[b] == certs[a]);
        }
        for class in partition_classes(&graphs).unwrap() {
            let g0 = &graphs[class[0]];
            for &i in &class {
                let g = &graphs[i];
                assert_eq!(g.rank2(), g0.rank2());
                assert_eq!(srg_params(g).ok(), srg_params(g0).ok());
                assert_eq!(fingerprint(g).triangle_hash, fingerprint(g0).triangle_hash);
            }
        }
    }

    proptest::proptest! {
        #[test]
        fn certificate_ignores_relabeling(seed in 0u64..u64::MAX, n in 0usize..40) {
            let mut rng = StdRng::seed_from_u64(seed);
            let g = random_graph(&mut rng, n);
            let h = shuffled(&g, &mut rng);
            proptest::prop_assert_eq!(canonical_form(&g).unwrap(), canonical_form(&h).unwrap());
        }
    }
}
