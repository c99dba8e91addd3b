//! Fixtures and independent brute-force oracles used by the test suites.
//! Everything here recomputes from first principles, deliberately avoiding
//! the production code paths it is used to check.

use std::collections::{BTreeMap, HashSet, VecDeque};

use crate::covers::{cover_leq, WeightedCover};
use crate::graph::WeightedGraph;
use crate::Weight;

/// The 5-cycle x-y-z-u-v with edge weights in order (xy, yz, zu, uv, vx).
pub fn c5(w: [Weight; 5]) -> WeightedGraph {
    WeightedGraph::from_parts(
        vec!["x", "y", "z", "u", "v"],
        vec![
            ("x".into(), "y".into(), w[0]),
            ("y".into(), "z".into(), w[1]),
            ("z".into(), "u".into(), w[2]),
            ("u".into(), "v".into(), w[3]),
            ("v".into(), "x".into(), w[4]),
        ],
    )
    .unwrap()
}

pub fn c5_labels() -> [String; 5] {
    ["x", "y", "z", "u", "v"].map(String::from)
}

pub fn c5_doc(w: [Weight; 5]) -> String {
    c5(w).to_document()
}

/// Cycle on `n` vertices v0..v{n-1}, trivial weights.
pub fn cycle_graph(n: usize) -> WeightedGraph {
    let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let edges = (0..n)
        .map(|i| (format!("v{i}"), format!("v{}", (i + 1) % n), 1))
        .collect();
    WeightedGraph::from_parts(labels, edges).unwrap()
}

/// Path on `n` vertices v0..v{n-1}, trivial weights.
pub fn path_graph(n: usize) -> WeightedGraph {
    let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let edges = (1..n)
        .map(|i| (format!("v{}", i - 1), format!("v{i}"), 1))
        .collect();
    WeightedGraph::from_parts(labels, edges).unwrap()
}

/// Path x-y-z with weights ω(xy) = 2, ω(yz) = 1.
pub fn p3_fixture() -> WeightedGraph {
    WeightedGraph::from_parts(
        vec!["x", "y", "z"],
        vec![("x".into(), "y".into(), 2), ("y".into(), "z".into(), 1)],
    )
    .unwrap()
}

/// Two basic 5-cycles (x..v and a..e) and three pendant pairs fg, hi, jk,
/// joined by a tree of bridges z-f, c-h, f-h, f-j. Weights follow the edge
/// order below.
pub const FIGURE3_EDGE_COUNT: usize = 17;

/// Weights making [`figure3_shape`] Cohen-Macaulay: cycles at 2, bridges at
/// 1, pendant edges at 3.
pub const FIGURE3_CM_WEIGHTS: [Weight; FIGURE3_EDGE_COUNT] =
    [2, 2, 2, 2, 2, 2, 2, 2, 2, 2, 3, 3, 3, 1, 1, 1, 1];

pub fn figure3_shape(w: [Weight; FIGURE3_EDGE_COUNT]) -> WeightedGraph {
    let labels = vec![
        "x", "y", "z", "u", "v", "a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k",
    ];
    let pairs: [(&str, &str); FIGURE3_EDGE_COUNT] = [
        ("x", "y"),
        ("y", "z"),
        ("z", "u"),
        ("u", "v"),
        ("v", "x"),
        ("a", "b"),
        ("b", "c"),
        ("c", "d"),
        ("d", "e"),
        ("e", "a"),
        ("f", "g"),
        ("h", "i"),
        ("j", "k"),
        ("z", "f"),
        ("c", "h"),
        ("f", "h"),
        ("f", "j"),
    ];
    let edges = pairs
        .iter()
        .zip(w)
        .map(|(&(u, v), w)| (u.to_string(), v.to_string(), w))
        .collect();
    WeightedGraph::from_parts(labels, edges).unwrap()
}

/// Facets of the minimal 6-vertex triangulation of the real projective
/// plane: the classical example whose Cohen-Macaulayness depends on the
/// field (H̃_1 = Z/2).
pub fn projective_plane_facets() -> Vec<[usize; 3]> {
    vec![
        [0, 1, 2],
        [0, 2, 3],
        [0, 3, 4],
        [0, 4, 5],
        [0, 1, 5],
        [1, 2, 4],
        [2, 4, 5],
        [2, 3, 5],
        [1, 3, 5],
        [1, 3, 4],
    ]
}

/// Independent girth oracle: the shortest cycle through edge (u, v) is one
/// more than the u-v distance with the edge removed.
pub fn shortest_cycle_by_edge_removal(g: &WeightedGraph) -> Option<usize> {
    let mut best: Option<usize> = None;
    for (a, b, _) in g.edges() {
        let mut dist = vec![usize::MAX; g.vertex_count()];
        dist[a] = 0;
        let mut q = VecDeque::from([a]);
        while let Some(x) = q.pop_front() {
            for &y in g.neighbors(x) {
                if (x == a && y == b) || (x == b && y == a) {
                    continue;
                }
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    q.push_back(y);
                }
            }
        }
        if dist[b] != usize::MAX {
            let len = dist[b] + 1;
            if best.is_none_or(|c| len < c) {
                best = Some(len);
            }
        }
    }
    best
}

/// Brute-force minimal weighted covers: every support subset with every
/// level vector up to the largest weight, swept by pairwise comparison.
/// Exponential; for tiny graphs only.
pub fn brute_force_minimal_covers(g: &WeightedGraph) -> Vec<WeightedCover> {
    let n = g.vertex_count();
    let maxw = g.edges().map(|(_, _, w)| w).max().unwrap_or(1);
    let mut all: Vec<WeightedCover> = Vec::new();
    for support in 0u32..(1 << n) {
        let members: Vec<usize> = (0..n).filter(|&v| support & (1 << v) != 0).collect();
        let mut levels = vec![1 as Weight; members.len()];
        loop {
            let cover: BTreeMap<String, Weight> = members
                .iter()
                .zip(&levels)
                .map(|(&v, &l)| (g.label(v).to_owned(), l))
                .collect();
            let covers_all = g.edges().all(|(i, j, w)| {
                let at = |v: usize| cover.get(g.label(v)).is_some_and(|&l| l <= w);
                at(i) || at(j)
            });
            if covers_all {
                all.push(WeightedCover::new(cover).unwrap());
            }
            // next level vector
            let mut k = 0;
            loop {
                if k == levels.len() {
                    break;
                }
                if levels[k] < maxw {
                    levels[k] += 1;
                    break;
                }
                levels[k] = 1;
                k += 1;
            }
            if k == levels.len() {
                break;
            }
        }
    }
    let mut minimal: Vec<WeightedCover> = all
        .iter()
        .filter(|c| !all.iter().any(|d| d != *c && cover_leq(d, c)))
        .cloned()
        .collect();
    minimal.sort_by(|a, b| crate::covers::canonical_key(a).cmp(&crate::covers::canonical_key(b)));
    minimal.dedup();
    minimal
}

// ---------------------------------------------------------------------------
// exhaustive catalog of connected girth >= 5 graphs up to isomorphism
// ---------------------------------------------------------------------------

#[derive(Clone, PartialEq, Eq, Hash)]
struct SmallGraph {
    n: usize,
    rows: [u8; 8],
}

impl SmallGraph {
    fn has_edge(&self, i: usize, j: usize) -> bool {
        self.rows[i] & (1 << j) != 0
    }

    fn add_edge(&mut self, i: usize, j: usize) {
        self.rows[i] |= 1 << j;
        self.rows[j] |= 1 << i;
    }

    fn distances(&self) -> [[usize; 8]; 8] {
        let mut d = [[usize::MAX; 8]; 8];
        for s in 0..self.n {
            d[s][s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(x) = q.pop_front() {
                for y in 0..self.n {
                    if self.has_edge(x, y) && d[s][y] == usize::MAX {
                        d[s][y] = d[s][x] + 1;
                        q.push_back(y);
                    }
                }
            }
        }
        d
    }

    fn degree(&self, v: usize) -> u32 {
        self.rows[v].count_ones()
    }

    /// Least relabeled adjacency key over all isomorphism-compatible
    /// permutations (vertices pre-grouped by a degree refinement invariant).
    fn canonical_key(&self) -> u64 {
        let mut inv: Vec<(u32, Vec<u32>, usize)> = (0..self.n)
            .map(|v| {
                let mut nd: Vec<u32> = (0..self.n)
                    .filter(|&u| self.has_edge(v, u))
                    .map(|u| self.degree(u))
                    .collect();
                nd.sort_unstable();
                (self.degree(v), nd, v)
            })
            .collect();
        inv.sort();
        // class blocks share (degree, neighbor degrees)
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        for (i, item) in inv.iter().enumerate() {
            if i > 0 && inv[i - 1].0 == item.0 && inv[i - 1].1 == item.1 {
                blocks.last_mut().unwrap().push(item.2);
            } else {
                blocks.push(vec![item.2]);
            }
        }
        let mut perm = vec![0usize; self.n]; // perm[position] = original vertex
        let mut best = u64::MAX;
        self.search_blocks(&blocks, 0, &mut perm, 0, &mut best);
        best
    }

    fn search_blocks(
        &self,
        blocks: &[Vec<usize>],
        b: usize,
        perm: &mut Vec<usize>,
        filled: usize,
        best: &mut u64,
    ) {
        if b == blocks.len() {
            *best = (*best).min(self.key_under(perm));
            return;
        }
        let mut verts = blocks[b].clone();
        permute(&mut verts, 0, &mut |order| {
            for (k, &v) in order.iter().enumerate() {
                perm[filled + k] = v;
            }
            self.search_blocks(blocks, b + 1, perm, filled + order.len(), best);
        });
    }

    fn key_under(&self, perm: &[usize]) -> u64 {
        let mut key = 0u64;
        for p in 0..self.n {
            let mut row = 0u8;
            for q in 0..self.n {
                if self.has_edge(perm[p], perm[q]) {
                    row |= 1 << q;
                }
            }
            key = (key << 8) | row as u64;
        }
        key
    }

    fn to_weighted(&self) -> WeightedGraph {
        let labels: Vec<String> = (0..self.n).map(|i| format!("v{i}")).collect();
        let mut edges = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.has_edge(i, j) {
                    edges.push((labels[i].clone(), labels[j].clone(), 1));
                }
            }
        }
        WeightedGraph::from_parts(labels, edges).unwrap()
    }
}

fn permute<F: FnMut(&[usize])>(items: &mut Vec<usize>, k: usize, f: &mut F) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, f);
        items.swap(k, i);
    }
}

/// Every connected graph of girth >= 5 on at most `max_n` <= 8 vertices, one
/// representative per isomorphism class, with trivial weights.
///
/// Generated by vertex augmentation: every such graph on k vertices arises
/// from one on k-1 vertices (delete a non-cutvertex) by adding a vertex whose
/// neighborhood is pairwise at distance >= 3, the exact condition for the
/// new cycles through it to have length >= 5.
pub fn connected_girth5_catalog(max_n: usize) -> Vec<WeightedGraph> {
    assert!(max_n <= 8, "catalog is sized for at most 8 vertices");
    let mut out: Vec<WeightedGraph> = Vec::new();
    let k1 = SmallGraph { n: 1, rows: [0; 8] };
    let mut level: Vec<SmallGraph> = vec![k1.clone()];
    if max_n >= 1 {
        out.push(k1.to_weighted());
    }
    for n in 2..=max_n {
        let mut seen: HashSet<u64> = HashSet::new();
        let mut next: Vec<SmallGraph> = Vec::new();
        for h in &level {
            let dist = h.distances();
            for nbrs in 1u32..(1 << h.n) {
                let members: Vec<usize> = (0..h.n).filter(|&v| nbrs & (1 << v) != 0).collect();
                let scattered = members
                    .iter()
                    .enumerate()
                    .all(|(k, &a)| members[k + 1..].iter().all(|&b| dist[a][b] >= 3));
                if !scattered {
                    continue;
                }
                let mut g = h.clone();
                g.n = n;
                for &a in &members {
                    g.add_edge(a, n - 1);
                }
                if seen.insert(g.canonical_key()) {
                    next.push(g);
                }
            }
        }
        out.extend(next.iter().map(SmallGraph::to_weighted));
        level = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::{girth, Girth};

    #[test]
    fn catalog_small_counts() {
        // by hand: n=1 K1; n=2 K2; n=3 P3; n=4 P4 and the star; n=5 three
        // trees plus the 5-cycle
        let counts: Vec<usize> = (1..=5)
            .map(|n| {
                connected_girth5_catalog(n)
                    .iter()
                    .filter(|g| g.vertex_count() == n)
                    .count()
            })
            .collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 4]);
    }

    #[test]
    fn catalog_graphs_are_connected_girth5() {
        for g in connected_girth5_catalog(7) {
            assert!(g.is_connected());
            assert!(girth(&g).is_at_least(5));
        }
    }

    #[test]
    fn catalog_has_no_isomorphic_duplicates() {
        let graphs: Vec<WeightedGraph> = connected_girth5_catalog(6)
            .into_iter()
            .filter(|g| g.vertex_count() == 6)
            .collect();
        // recompute canonical keys through an independent relabeling pass
        let mut keys = HashSet::new();
        for g in &graphs {
            let mut sg = SmallGraph { n: 6, rows: [0; 8] };
            for (i, j, _) in g.edges() {
                sg.add_edge(i, j);
            }
            assert!(
                keys.insert(sg.canonical_key()),
                "duplicate class in catalog"
            );
        }
    }

    #[test]
    fn catalog_tree_counts_match_the_literature() {
        // numbers of trees on 1..=8 vertices up to isomorphism
        let expected = [1usize, 1, 1, 2, 3, 6, 11, 23];
        let catalog = connected_girth5_catalog(8);
        for (n, &want) in (1..=8).zip(&expected) {
            let trees = catalog
                .iter()
                .filter(|g| g.vertex_count() == n && g.edge_count() == n - 1)
                .count();
            assert_eq!(trees, want, "tree count at {n} vertices");
        }
    }

    #[test]
    fn catalog_is_exhaustive_up_to_six_vertices() {
        // independent route: enumerate all labeled graphs on exactly n
        // vertices, filter, and count isomorphism classes by canonical key
        for n in 1..=6usize {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .collect();
            let mut classes = HashSet::new();
            for code in 0u32..(1 << pairs.len()) {
                let mut sg = SmallGraph { n, rows: [0; 8] };
                for (b, &(i, j)) in pairs.iter().enumerate() {
                    if code & (1 << b) != 0 {
                        sg.add_edge(i, j);
                    }
                }
                let g = sg.to_weighted();
                if g.is_connected() && girth(&g).is_at_least(5) {
                    classes.insert(sg.canonical_key());
                }
            }
            let from_catalog = connected_girth5_catalog(n)
                .iter()
                .filter(|g| g.vertex_count() == n)
                .count();
            assert_eq!(from_catalog, classes.len(), "class count at {n} vertices");
        }
    }

    #[test]
    fn figure3_girth() {
        let g = figure3_shape(FIGURE3_CM_WEIGHTS);
        assert_eq!(g.vertex_count(), 16);
        assert_eq!(g.edge_count(), 17);
        assert_eq!(girth(&g), Girth::Finite(5));
        assert_eq!(shortest_cycle_by_edge_removal(&g), Some(5));
    }
}
