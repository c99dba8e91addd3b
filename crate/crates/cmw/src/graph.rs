//! Simple undirected graphs with positive integer edge weights.
//!
//! Vertices are opaque string labels kept in document order; edges are
//! unordered label pairs with a weight. Values are immutable after
//! construction, so they can be shared freely across threads.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::{Weight, MAX_WEIGHT};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("malformed graph document: {0}")]
    Parse(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("loop at vertex `{0}`")]
    Loop(String),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(String, String),
    #[error("edge {{{u}, {v}}} has invalid weight {w} (must be in 1..={MAX_WEIGHT})")]
    InvalidWeight { u: String, v: String, w: i64 },
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
}

/// How [`WeightedGraph::delete`] removes a vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DeleteMode {
    /// `G \ v`: remove the vertex alone.
    Vertex,
    /// `G_v = G \ N[v]`: remove the vertex together with its neighbors.
    ClosedNeighborhood,
}

#[derive(Serialize, Deserialize)]
struct EdgeDoc {
    u: String,
    v: String,
    w: i64,
}

#[derive(Serialize, Deserialize)]
struct GraphDoc {
    #[serde(default)]
    vertices: Vec<String>,
    #[serde(default)]
    edges: Vec<EdgeDoc>,
}

/// An edge-weighted simple graph `(G, ω)`.
///
/// Internally vertices are indices into the document-order label list; the
/// index-based accessors are the interface the algorithm modules build on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedGraph {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<Vec<usize>>,
    // keyed by (min index, max index)
    weights: BTreeMap<(usize, usize), Weight>,
}

impl WeightedGraph {
    /// Builds a validated graph from labels (document order) and edges.
    pub fn from_parts<S: Into<String>>(
        vertices: Vec<S>,
        edges: Vec<(String, String, Weight)>,
    ) -> Result<Self, GraphError> {
        let labels: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut index = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(GraphError::DuplicateVertex(l.clone()));
            }
        }
        let mut adj = vec![Vec::new(); labels.len()];
        let mut weights = BTreeMap::new();
        for (u, v, w) in edges {
            if u == v {
                return Err(GraphError::Loop(u));
            }
            if !(1..=MAX_WEIGHT).contains(&w) {
                return Err(GraphError::InvalidWeight { u, v, w: w as i64 });
            }
            let ui = *index
                .get(&u)
                .ok_or_else(|| GraphError::UnknownVertex(u.clone()))?;
            let vi = *index
                .get(&v)
                .ok_or_else(|| GraphError::UnknownVertex(v.clone()))?;
            let key = (ui.min(vi), ui.max(vi));
            if weights.insert(key, w).is_some() {
                return Err(GraphError::DuplicateEdge(u, v));
            }
            adj[ui].push(vi);
            adj[vi].push(ui);
        }
        for nbrs in &mut adj {
            nbrs.sort_unstable();
        }
        Ok(WeightedGraph {
            labels,
            index,
            adj,
            weights,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.weights.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn vertex_index(&self, label: &str) -> Result<usize, GraphError> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| GraphError::UnknownVertex(label.to_owned()))
    }

    /// Neighbors of `i`, ascending by document order.
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.weights.contains_key(&(i.min(j), i.max(j)))
    }

    pub fn weight(&self, i: usize, j: usize) -> Option<Weight> {
        self.weights.get(&(i.min(j), i.max(j))).copied()
    }

    /// Edges as (min index, max index, weight).
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, Weight)> + '_ {
        self.weights.iter().map(|(&(i, j), &w)| (i, j, w))
    }

    /// Same graph with every weight replaced by `w`.
    pub fn with_uniform_weight(&self, w: Weight) -> WeightedGraph {
        let mut g = self.clone();
        for val in g.weights.values_mut() {
            *val = w;
        }
        g
    }

    /// Open or closed neighborhood of a vertex, labels in document order.
    pub fn neighborhood(&self, v: &str, closed: bool) -> Result<Vec<String>, GraphError> {
        let i = self.vertex_index(v)?;
        let mut ids: Vec<usize> = self.adj[i].clone();
        if closed {
            ids.push(i);
            ids.sort_unstable();
        }
        Ok(ids.into_iter().map(|j| self.labels[j].clone()).collect())
    }

    /// Induced subgraph on a set of labels; weights are inherited and the
    /// vertex order is the document order of the original graph.
    pub fn induced_subgraph<S: AsRef<str>>(&self, x: &[S]) -> Result<WeightedGraph, GraphError> {
        let mut keep = vec![false; self.vertex_count()];
        for l in x {
            keep[self.vertex_index(l.as_ref())?] = true;
        }
        Ok(self.induced_by_mask(&keep))
    }

    /// Induced subgraph on the marked indices (document order preserved).
    pub fn induced_by_mask(&self, keep: &[bool]) -> WeightedGraph {
        let vertices: Vec<String> = self
            .labels
            .iter()
            .enumerate()
            .filter(|(i, _)| keep[*i])
            .map(|(_, l)| l.clone())
            .collect();
        let edges = self
            .weights
            .iter()
            .filter(|(&(i, j), _)| keep[i] && keep[j])
            .map(|(&(i, j), &w)| (self.labels[i].clone(), self.labels[j].clone(), w))
            .collect();
        WeightedGraph::from_parts(vertices, edges).expect("induced subgraph of a valid graph")
    }

    /// `G \ v` or `G_v` depending on the mode.
    pub fn delete(&self, v: &str, mode: DeleteMode) -> Result<WeightedGraph, GraphError> {
        let i = self.vertex_index(v)?;
        let mut keep = vec![true; self.vertex_count()];
        keep[i] = false;
        if mode == DeleteMode::ClosedNeighborhood {
            for &j in &self.adj[i] {
                keep[j] = false;
            }
        }
        Ok(self.induced_by_mask(&keep))
    }

    /// Connected components as ascending index lists, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Canonical interchange document. Edges are sorted by the canonical key
    /// (min label, max label) and emitted with `u <= v` lexicographically.
    pub fn to_document(&self) -> String {
        let mut edges: Vec<EdgeDoc> = self
            .weights
            .iter()
            .map(|(&(i, j), &w)| {
                let (a, b) = (&self.labels[i], &self.labels[j]);
                let (u, v) = if a <= b { (a, b) } else { (b, a) };
                EdgeDoc {
                    u: u.clone(),
                    v: v.clone(),
                    w: w as i64,
                }
            })
            .collect();
        edges.sort_by(|x, y| (&x.u, &x.v).cmp(&(&y.u, &y.v)));
        let doc = GraphDoc {
            vertices: self.labels.clone(),
            edges,
        };
        serde_json::to_string(&doc).expect("graph document serialization")
    }
}

impl fmt::Display for WeightedGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_document())
    }
}

/// Parses the canonical graph document format.
pub fn parse_graph(text: &str) -> Result<WeightedGraph, GraphError> {
    let doc: GraphDoc = serde_json::from_str(text).map_err(|e| GraphError::Parse(e.to_string()))?;
    let mut edges = Vec::with_capacity(doc.edges.len());
    for e in doc.edges {
        if e.u == e.v {
            return Err(GraphError::Loop(e.u));
        }
        if e.w < 1 || e.w > MAX_WEIGHT as i64 {
            return Err(GraphError::InvalidWeight {
                u: e.u,
                v: e.v,
                w: e.w,
            });
        }
        edges.push((e.u, e.v, e.w as Weight));
    }
    WeightedGraph::from_parts(doc.vertices, edges)
}
