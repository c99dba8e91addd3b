//! Unweighted structural predicates: girth, pendant edges, basic 5-cycles,
//! the class PC partition, independent sets, well-coveredness and vertex
//! decomposability.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::graph::WeightedGraph;

/// Default exhaustive bound for independent-set enumeration.
pub const DEFAULT_MIS_BOUND: usize = 20;
/// Default bound for the vertex-decomposability recursion.
pub const DEFAULT_VD_BOUND: usize = 14;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StructureError {
    #[error("graph has {n} vertices, exceeding the exhaustive bound of {bound}")]
    SizeBoundExceeded { n: usize, bound: usize },
}

/// Length of the shortest cycle; forests have infinite girth.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl Girth {
    pub fn is_at_least(self, k: usize) -> bool {
        match self {
            Girth::Finite(g) => g >= k,
            Girth::Infinite => true,
        }
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => write!(f, "infinity"),
        }
    }
}

impl Serialize for Girth {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Girth::Finite(g) => s.serialize_u64(*g as u64),
            Girth::Infinite => s.serialize_str("infinity"),
        }
    }
}

/// Girth by BFS from every vertex: for the root of the BFS, any non-tree edge
/// closes a shortest cycle through the root; the minimum over roots is exact.
pub fn girth(g: &WeightedGraph) -> Girth {
    let n = g.vertex_count();
    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    for root in 0..n {
        dist.fill(usize::MAX);
        parent.fill(usize::MAX);
        dist[root] = 0;
        let mut q = VecDeque::from([root]);
        while let Some(u) = q.pop_front() {
            for &w in g.neighbors(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    q.push_back(w);
                } else if parent[u] != w && parent[w] != u {
                    let len = dist[u] + dist[w] + 1;
                    if best.is_none_or(|b| len < b) {
                        best = Some(len);
                    }
                }
            }
        }
    }
    match best {
        Some(b) => Girth::Finite(b),
        None => Girth::Infinite,
    }
}

/// Edges with at least one endpoint of degree one, as (min, max) index pairs.
pub fn pendant_edges(g: &WeightedGraph) -> Vec<(usize, usize)> {
    g.edges()
        .filter(|&(i, j, _)| g.degree(i) == 1 || g.degree(j) == 1)
        .map(|(i, j, _)| (i, j))
        .collect()
}

/// Induced 5-cycles, each in canonical traversal order: the least vertex
/// first, followed by the smaller of its two cycle neighbors.
pub fn induced_five_cycles(g: &WeightedGraph) -> Vec<[usize; 5]> {
    let n = g.vertex_count();
    let mut out = Vec::new();
    for a in 0..n {
        let nbrs = g.neighbors(a);
        for (bi, &b) in nbrs.iter().enumerate() {
            if b < a {
                continue;
            }
            for &e in &nbrs[bi + 1..] {
                if e < a {
                    continue;
                }
                // a-b-...-e-a with b < e fixes rotation and reflection
                for &c in g.neighbors(b) {
                    if c <= a || c == e || g.has_edge(a, c) {
                        continue;
                    }
                    for &d in g.neighbors(c) {
                        if d <= a || d == b || d == e || !g.has_edge(d, e) {
                            continue;
                        }
                        if g.has_edge(a, d)
                            || g.has_edge(b, d)
                            || g.has_edge(b, e)
                            || g.has_edge(c, e)
                        {
                            continue;
                        }
                        out.push([a, b, c, d, e]);
                    }
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Basic 5-cycles: induced 5-cycles with no two cycle-adjacent vertices both
/// of degree three or more in the ambient graph.
pub fn basic_five_cycles(g: &WeightedGraph) -> Vec<[usize; 5]> {
    induced_five_cycles(g)
        .into_iter()
        .filter(|cyc| (0..5).all(|k| g.degree(cyc[k]) < 3 || g.degree(cyc[(k + 1) % 5]) < 3))
        .collect()
}

/// Witness that the vertex set partitions into pendant-edge vertices `P(G)`
/// and basic 5-cycle vertices `C(G)`: the pendant edges form a perfect
/// matching of `G[P(G)]`, and `basic_cycles` is a family of pairwise
/// vertex-disjoint basic 5-cycles covering `C(G)` exactly.
#[derive(Debug, Clone, Serialize)]
pub struct PcWitness {
    pub pendant_vertices: Vec<String>,
    pub cycle_vertices: Vec<String>,
    pub pendant_matching: Vec<[String; 2]>,
    pub basic_cycles: Vec<[String; 5]>,
    #[serde(skip)]
    pub pendant_edge_ids: Vec<(usize, usize)>,
    #[serde(skip)]
    pub basic_cycle_ids: Vec<[usize; 5]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NotPcReason {
    /// Some vertex lies both on a basic 5-cycle and on a pendant edge.
    Overlap,
    /// Some vertex lies on no basic 5-cycle and no pendant edge.
    Uncovered,
    /// Two pendant edges share a vertex.
    PendantsNotAMatching,
    /// Every vertex is covered, but the basic 5-cycles admit no pairwise
    /// disjoint subfamily covering the cycle part exactly.
    NoDisjointCycleCover,
}

impl fmt::Display for NotPcReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotPcReason::Overlap => write!(f, "pendant and cycle vertex sets overlap"),
            NotPcReason::Uncovered => {
                write!(f, "vertices covered by no pendant edge or basic 5-cycle")
            }
            NotPcReason::PendantsNotAMatching => write!(f, "pendant edges do not form a matching"),
            NotPcReason::NoDisjointCycleCover => {
                write!(
                    f,
                    "no disjoint family of basic 5-cycles partitions the cycle vertices"
                )
            }
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct NotPc {
    pub reason: NotPcReason,
    /// The vertices violating the failed clause.
    pub vertices: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum PcClassification {
    Pc(PcWitness),
    NotPc(NotPc),
}

impl PcClassification {
    pub fn witness(&self) -> Option<&PcWitness> {
        match self {
            PcClassification::Pc(w) => Some(w),
            PcClassification::NotPc(_) => None,
        }
    }
}

/// Decides membership in the class PC: `P(G)` is the union of pendant-edge
/// vertex sets and `C(G)` the union of basic 5-cycle vertex sets. The clauses
/// are checked in order: disjointness of `P` and `C`, coverage of every
/// vertex, the pendant edges forming a matching, and finally that some
/// pairwise disjoint family of basic 5-cycles covers `C(G)` exactly (two
/// basic 5-cycles may share a path, so the union of cycle vertex sets alone
/// does not witness a partition).
pub fn classify_pc(g: &WeightedGraph) -> PcClassification {
    let n = g.vertex_count();
    let pendants = pendant_edges(g);
    let cycles = basic_five_cycles(g);

    let mut in_p = vec![false; n];
    for &(i, j) in &pendants {
        in_p[i] = true;
        in_p[j] = true;
    }
    let mut in_c = vec![false; n];
    for cyc in &cycles {
        for &v in cyc {
            in_c[v] = true;
        }
    }

    let labels = |sel: &dyn Fn(usize) -> bool| -> Vec<String> {
        (0..n)
            .filter(|&v| sel(v))
            .map(|v| g.label(v).to_owned())
            .collect()
    };

    let overlap = labels(&|v| in_p[v] && in_c[v]);
    if !overlap.is_empty() {
        return PcClassification::NotPc(NotPc {
            reason: NotPcReason::Overlap,
            vertices: overlap,
        });
    }
    let uncovered = labels(&|v| !in_p[v] && !in_c[v]);
    if !uncovered.is_empty() {
        return PcClassification::NotPc(NotPc {
            reason: NotPcReason::Uncovered,
            vertices: uncovered,
        });
    }
    let mut matched = vec![0usize; n];
    for &(i, j) in &pendants {
        matched[i] += 1;
        matched[j] += 1;
    }
    let shared = labels(&|v| matched[v] > 1);
    if !shared.is_empty() {
        return PcClassification::NotPc(NotPc {
            reason: NotPcReason::PendantsNotAMatching,
            vertices: shared,
        });
    }

    let need: u64 = (0..n).filter(|&v| in_c[v]).map(|v| 1u64 << v).sum();
    let Some(cover) = disjoint_cycle_cover(&cycles, need) else {
        return PcClassification::NotPc(NotPc {
            reason: NotPcReason::NoDisjointCycleCover,
            vertices: labels(&|v| in_c[v]),
        });
    };

    PcClassification::Pc(PcWitness {
        pendant_vertices: labels(&|v| in_p[v]),
        cycle_vertices: labels(&|v| in_c[v]),
        pendant_matching: pendants
            .iter()
            .map(|&(i, j)| [g.label(i).to_owned(), g.label(j).to_owned()])
            .collect(),
        basic_cycles: cover
            .iter()
            .map(|c| c.map(|v| g.label(v).to_owned()))
            .collect(),
        pendant_edge_ids: pendants,
        basic_cycle_ids: cover,
    })
}

/// Exact cover of the vertex mask `need` by pairwise disjoint cycles,
/// branching on the least uncovered vertex.
fn disjoint_cycle_cover(cycles: &[[usize; 5]], need: u64) -> Option<Vec<[usize; 5]>> {
    if need == 0 {
        return Some(Vec::new());
    }
    let masks: Vec<u64> = cycles
        .iter()
        .map(|c| c.iter().map(|&v| 1u64 << v).sum())
        .collect();
    let v = need.trailing_zeros() as u64;
    let bit = 1u64 << v;
    for (k, &m) in masks.iter().enumerate() {
        if m & bit != 0 && m & !need == 0 {
            if let Some(mut rest) = disjoint_cycle_cover(cycles, need & !m) {
                rest.insert(0, cycles[k]);
                return Some(rest);
            }
        }
    }
    None
}

fn check_bound(g: &WeightedGraph, bound: usize) -> Result<(), StructureError> {
    let n = g.vertex_count();
    if n > bound || n > 64 {
        return Err(StructureError::SizeBoundExceeded {
            n,
            bound: bound.min(64),
        });
    }
    Ok(())
}

fn adjacency_masks(g: &WeightedGraph) -> Vec<u64> {
    (0..g.vertex_count())
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &w| m | (1 << w)))
        .collect()
}

fn mis_masks_under(adj: &[u64], universe: u64) -> Vec<u64> {
    // Bron-Kerbosch on the complement graph restricted to `universe`.
    let mut out = Vec::new();
    fn rec(adj: &[u64], universe: u64, r: u64, mut p: u64, mut x: u64, out: &mut Vec<u64>) {
        if p == 0 && x == 0 {
            out.push(r);
            return;
        }
        while p != 0 {
            let v = p.trailing_zeros() as usize;
            let bit = 1u64 << v;
            let non_nbrs = universe & !adj[v] & !bit;
            rec(adj, universe, r | bit, p & non_nbrs, x & non_nbrs, out);
            p &= !bit;
            x |= bit;
        }
    }
    rec(adj, universe, 0, universe, 0, &mut out);
    out.sort_unstable();
    out
}

/// All maximal independent sets, each ascending, ordered lexicographically.
pub fn maximal_independent_sets(
    g: &WeightedGraph,
    bound: usize,
) -> Result<Vec<Vec<usize>>, StructureError> {
    check_bound(g, bound)?;
    let adj = adjacency_masks(g);
    let universe = if g.vertex_count() == 64 {
        u64::MAX
    } else {
        (1u64 << g.vertex_count()) - 1
    };
    let mut sets: Vec<Vec<usize>> = mis_masks_under(&adj, universe)
        .into_iter()
        .map(|m| {
            (0..g.vertex_count())
                .filter(|&v| m & (1 << v) != 0)
                .collect()
        })
        .collect();
    sets.sort();
    Ok(sets)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WellCovered {
    pub well_covered: bool,
    /// Independence number α(G).
    pub alpha: usize,
}

/// True when every maximal independent set has the same size α(G).
pub fn is_well_covered(g: &WeightedGraph, bound: usize) -> Result<WellCovered, StructureError> {
    let sets = maximal_independent_sets(g, bound)?;
    let alpha = sets.iter().map(Vec::len).max().unwrap_or(0);
    let well = sets.iter().all(|s| s.len() == alpha);
    Ok(WellCovered {
        well_covered: well,
        alpha,
    })
}

/// Vertex decomposability of the independence complex, with memoization on
/// induced-subgraph bitmasks. The witness records, per recursion step where a
/// decision was made, the shedding vertex used.
pub fn is_vertex_decomposable(g: &WeightedGraph, bound: usize) -> Result<bool, StructureError> {
    Ok(vertex_decomposition_trace(g, bound)?.is_some())
}

/// Per recursion step, the vertex set of the subgraph and the shedding
/// vertex chosen in it.
pub type ShedTrace = Vec<(Vec<String>, String)>;

/// Shedding-vertex trace: entries (vertex set of the subgraph, shedding
/// vertex) for each subgraph where the recursion picked a shedding vertex.
pub fn vertex_decomposition_trace(
    g: &WeightedGraph,
    bound: usize,
) -> Result<Option<ShedTrace>, StructureError> {
    check_bound(g, bound)?;
    let adj = adjacency_masks(g);
    let universe = if g.vertex_count() == 64 {
        u64::MAX
    } else {
        (1u64 << g.vertex_count()) - 1
    };
    let mut memo: HashMap<u64, bool> = HashMap::new();
    let mut trace: Vec<(u64, usize)> = Vec::new();
    let ok = vd_rec(&adj, universe, &mut memo, &mut trace);
    if !ok {
        return Ok(None);
    }
    let mut named: ShedTrace = trace
        .into_iter()
        .map(|(mask, v)| {
            let set = (0..g.vertex_count())
                .filter(|&u| mask & (1 << u) != 0)
                .map(|u| g.label(u).to_owned())
                .collect();
            (set, g.label(v).to_owned())
        })
        .collect();
    named.sort();
    Ok(Some(named))
}

fn vd_rec(
    adj: &[u64],
    mask: u64,
    memo: &mut HashMap<u64, bool>,
    trace: &mut Vec<(u64, usize)>,
) -> bool {
    if let Some(&r) = memo.get(&mask) {
        return r;
    }
    let edgeless = {
        let mut m = mask;
        let mut e = true;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            if adj[v] & mask != 0 {
                e = false;
                break;
            }
            m &= m - 1;
        }
        e
    };
    let result = if edgeless {
        true
    } else {
        let mut found = false;
        let mut m = mask;
        while m != 0 {
            let v = m.trailing_zeros() as usize;
            let bit = 1u64 << v;
            m &= m - 1;
            if adj[v] & mask == 0 {
                continue; // isolated vertices are never shedding
            }
            if is_shedding(adj, mask, v)
                && vd_rec(adj, mask & !bit, memo, trace)
                && vd_rec(adj, mask & !bit & !adj[v], memo, trace)
            {
                trace.push((mask, v));
                found = true;
                break;
            }
        }
        found
    };
    memo.insert(mask, result);
    result
}

/// `v` is shedding in `G[mask]` when every independent set of `G_v` leaves
/// some neighbor of `v` available. Failure is monotone under enlarging the
/// set, so checking maximal independent sets of `G_v` suffices.
fn is_shedding(adj: &[u64], mask: u64, v: usize) -> bool {
    let nbrs = adj[v] & mask;
    let rest = mask & !(1u64 << v) & !adj[v];
    mis_masks_under(adj, rest).into_iter().all(|s| {
        let mut n = nbrs;
        while n != 0 {
            let u = n.trailing_zeros() as usize;
            if adj[u] & s == 0 {
                return true;
            }
            n &= n - 1;
        }
        false
    })
}
