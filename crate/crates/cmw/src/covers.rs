//! Weighted vertex covers, the cover order, minimal and minimal-support
//! covers, irreducible decomposition of the weighted edge ideal, unmixedness.
//!
//! A weighted vertex cover of `(G, ω)` is a pair `(C, δ)` with `δ : C → Z_{>0}`
//! such that every edge `e = uv` has `u ∈ C` with `δ(u) ≤ ω(e)` or `v ∈ C`
//! with `δ(v) ≤ ω(e)`. Covers are ordered by `(C, δ) ≤ (C', δ')` iff
//! `C ⊆ C'` and `δ(v) ≥ δ'(v)` on `C`; minimal covers under this order are
//! exactly the irreducible components `P(C, δ) = (v^{δ(v)} | v ∈ C)` of the
//! weighted edge ideal, and their intersection is irredundant.

use std::collections::BTreeMap;

use serde::ser::SerializeStruct;
use serde::Serialize;
use thiserror::Error;

use crate::graph::WeightedGraph;
use crate::ideal::{weighted_edge_ideal, Monomial, MonomialIdeal};
use crate::Weight;

/// Default bound on the raw enumeration space `Π_v (|W(v)| + 1)`.
pub const DEFAULT_COVER_BUDGET: u64 = 1_000_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoverError {
    #[error("unknown vertex `{0}` in cover support")]
    UnknownVertex(String),
    #[error("cover level for `{0}` must be positive")]
    InvalidLevel(String),
    #[error("enumeration space {space} exceeds budget {budget}")]
    BudgetExceeded { space: u64, budget: u64 },
}

/// A weighted vertex cover `(C, δ)`; the support is the key set of `levels`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedCover {
    levels: BTreeMap<String, Weight>,
}

impl WeightedCover {
    pub fn new<I, S>(levels: I) -> Result<Self, CoverError>
    where
        I: IntoIterator<Item = (S, Weight)>,
        S: Into<String>,
    {
        let levels: BTreeMap<String, Weight> =
            levels.into_iter().map(|(v, l)| (v.into(), l)).collect();
        if let Some((v, _)) = levels.iter().find(|(_, &l)| l == 0) {
            return Err(CoverError::InvalidLevel(v.clone()));
        }
        Ok(WeightedCover { levels })
    }

    pub fn support(&self) -> impl Iterator<Item = &str> {
        self.levels.keys().map(String::as_str)
    }

    pub fn support_size(&self) -> usize {
        self.levels.len()
    }

    pub fn level(&self, v: &str) -> Option<Weight> {
        self.levels.get(v).copied()
    }

    pub fn levels(&self) -> &BTreeMap<String, Weight> {
        &self.levels
    }

    /// The irreducible monomial ideal `P(C, δ) = (v^{δ(v)} | v ∈ C)`.
    pub fn irreducible_ideal(&self) -> MonomialIdeal {
        MonomialIdeal::new(
            self.levels
                .iter()
                .map(|(v, &l)| Monomial::var_pow(v.clone(), l)),
        )
    }
}

impl Serialize for WeightedCover {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("WeightedCover", 2)?;
        let support: Vec<&str> = self.support().collect();
        st.serialize_field("support", &support)?;
        st.serialize_field("level", &self.levels)?;
        st.end()
    }
}

/// Checks the cover condition edge by edge.
pub fn is_weighted_cover(g: &WeightedGraph, c: &WeightedCover) -> Result<bool, CoverError> {
    let mut level = vec![None; g.vertex_count()];
    for (v, &l) in c.levels() {
        let i = g
            .vertex_index(v)
            .map_err(|_| CoverError::UnknownVertex(v.clone()))?;
        level[i] = Some(l);
    }
    Ok(g.edges()
        .all(|(i, j, w)| level[i].is_some_and(|l| l <= w) || level[j].is_some_and(|l| l <= w)))
}

/// The cover order: `a ≤ b` iff `supp(a) ⊆ supp(b)` and `a`'s levels dominate
/// `b`'s on `supp(a)`.
pub fn cover_leq(a: &WeightedCover, b: &WeightedCover) -> bool {
    a.levels()
        .iter()
        .all(|(v, &la)| b.level(v).is_some_and(|lb| la >= lb))
}

/// Per-vertex enumeration state: absent, or present at a level drawn from the
/// incident weights. Ordered as a chain with `Absent` least and lower levels
/// greater, the set of weighted covers is upward closed in the product order,
/// so minimality is a single-step local test.
#[derive(Clone, Copy, PartialEq, Eq)]
enum VertexState {
    Absent,
    Level(Weight),
}

struct Enumerator<'g> {
    g: &'g WeightedGraph,
    /// ascending distinct incident weights per vertex
    options: Vec<Vec<Weight>>,
    states: Vec<VertexState>,
    covers: Vec<Vec<VertexState>>,
    require_locally_minimal: bool,
}

impl<'g> Enumerator<'g> {
    fn new(g: &'g WeightedGraph, require_locally_minimal: bool) -> Self {
        let n = g.vertex_count();
        let mut options = vec![Vec::new(); n];
        for (i, j, w) in g.edges() {
            options[i].push(w);
            options[j].push(w);
        }
        for o in &mut options {
            o.sort_unstable();
            o.dedup();
        }
        Enumerator {
            g,
            options,
            states: vec![VertexState::Absent; n],
            covers: Vec::new(),
            require_locally_minimal,
        }
    }

    fn space(&self) -> u64 {
        self.options
            .iter()
            .fold(1u64, |acc, o| acc.saturating_mul(o.len() as u64 + 1))
    }

    fn covers_edge(&self, v: usize, w: Weight) -> bool {
        match self.states[v] {
            VertexState::Absent => false,
            VertexState::Level(l) => l <= w,
        }
    }

    fn assign(&mut self, v: usize) {
        let n = self.g.vertex_count();
        if v == n {
            if !self.require_locally_minimal || self.is_locally_minimal() {
                self.covers.push(self.states.clone());
            }
            return;
        }
        let opts = self.options[v].clone();
        for state in
            std::iter::once(VertexState::Absent).chain(opts.into_iter().map(VertexState::Level))
        {
            self.states[v] = state;
            // prune as soon as an edge with both endpoints decided is uncovered
            let consistent = self.g.neighbors(v).iter().filter(|&&u| u < v).all(|&u| {
                let w = self.g.weight(u, v).unwrap();
                self.covers_edge(u, w) || self.covers_edge(v, w)
            });
            if consistent {
                self.assign(v + 1);
            }
        }
        self.states[v] = VertexState::Absent;
    }

    /// One-step decreases: drop a vertex whose level is its largest incident
    /// weight, or raise a level to the next incident weight. If any of them
    /// still covers, the current cover is not minimal.
    fn is_locally_minimal(&self) -> bool {
        for v in 0..self.g.vertex_count() {
            let VertexState::Level(l) = self.states[v] else {
                continue;
            };
            let pos = self.options[v]
                .binary_search(&l)
                .expect("level is an incident weight");
            let candidate = if pos + 1 < self.options[v].len() {
                VertexState::Level(self.options[v][pos + 1])
            } else {
                VertexState::Absent
            };
            let still_covers = self.g.neighbors(v).iter().all(|&u| {
                let w = self.g.weight(u, v).unwrap();
                let covers = |s: VertexState| match s {
                    VertexState::Absent => false,
                    VertexState::Level(x) => x <= w,
                };
                covers(candidate) || covers(self.states[u])
            });
            if still_covers {
                return false;
            }
        }
        true
    }

    fn into_covers(self) -> Vec<WeightedCover> {
        let g = self.g;
        let mut out: Vec<WeightedCover> = self
            .covers
            .into_iter()
            .map(|states| {
                let levels = states.into_iter().enumerate().filter_map(|(v, s)| match s {
                    VertexState::Absent => None,
                    VertexState::Level(l) => Some((g.label(v).to_owned(), l)),
                });
                WeightedCover::new(levels).expect("positive levels")
            })
            .collect();
        out.sort_by(|a, b| canonical_key(a).cmp(&canonical_key(b)));
        out
    }
}

/// Canonical cover order: (support size, support, level vector).
pub(crate) fn canonical_key(c: &WeightedCover) -> (usize, Vec<&str>, Vec<Weight>) {
    (
        c.support_size(),
        c.support().collect(),
        c.levels().values().copied().collect(),
    )
}

fn enumerate(g: &WeightedGraph, budget: u64, minimal: bool) -> Result<Enumerator<'_>, CoverError> {
    let mut e = Enumerator::new(g, minimal);
    let space = e.space();
    if space > budget {
        return Err(CoverError::BudgetExceeded { space, budget });
    }
    e.assign(0);
    Ok(e)
}

/// All covers minimal in the cover order, canonically sorted by
/// (support size, support, level vector).
///
/// Minimal covers always take levels from the incident weight sets: raising a
/// level to the next incident weight never uncovers an edge and dropping a
/// vertex above its largest incident weight never does either, so covers
/// outside the localized space sit above one inside it. Within the localized
/// product order the cover predicate is upward closed, making a one-step
/// local check equivalent to global minimality.
pub fn minimal_weighted_covers(
    g: &WeightedGraph,
    budget: u64,
) -> Result<Vec<WeightedCover>, CoverError> {
    Ok(enumerate(g, budget, true)?.into_covers())
}

/// Covers `(C, δ)` in the localized space whose support cannot shrink: no
/// proper subset of `C` still covers at the same levels.
pub fn minimal_support_covers(
    g: &WeightedGraph,
    budget: u64,
) -> Result<Vec<WeightedCover>, CoverError> {
    let all = enumerate(g, budget, false)?.into_covers();
    Ok(all
        .into_iter()
        .filter(|c| {
            c.support().all(|drop| {
                let reduced = WeightedCover::new(
                    c.levels()
                        .iter()
                        .filter(|(v, _)| v.as_str() != drop)
                        .map(|(v, &l)| (v.clone(), l)),
                )
                .unwrap();
                !is_weighted_cover(g, &reduced).unwrap()
            })
        })
        .collect())
}

/// The irredundant irreducible decomposition `I(G_ω) = ∩ P(C, δ)` over the
/// minimal weighted covers.
pub fn irreducible_decomposition(
    g: &WeightedGraph,
    budget: u64,
) -> Result<Vec<MonomialIdeal>, CoverError> {
    Ok(minimal_weighted_covers(g, budget)?
        .iter()
        .map(WeightedCover::irreducible_ideal)
        .collect())
}

/// Balanced-tree intersection of a component list; the zero ideal is the unit
/// for an empty list only by convention of the caller.
pub fn intersect_all(components: &[MonomialIdeal]) -> MonomialIdeal {
    match components.len() {
        0 => MonomialIdeal::zero(),
        1 => components[0].clone(),
        _ => {
            let (a, b) = components.split_at(components.len() / 2);
            intersect_all(a).intersect(&intersect_all(b))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct UnmixedReport {
    pub unmixed: bool,
    /// Least support size among minimal weighted covers.
    pub height: usize,
    /// Largest support size among minimal weighted covers.
    pub big_height: usize,
}

/// Unmixedness of the weighted edge ideal: all minimal covers share one
/// support size. For an edgeless graph the ideal is zero and counts as
/// unmixed of height 0.
pub fn is_unmixed(g: &WeightedGraph, budget: u64) -> Result<UnmixedReport, CoverError> {
    let covers = minimal_weighted_covers(g, budget)?;
    if covers.is_empty() {
        return Ok(UnmixedReport {
            unmixed: true,
            height: 0,
            big_height: 0,
        });
    }
    let height = covers
        .iter()
        .map(WeightedCover::support_size)
        .min()
        .unwrap();
    let big_height = covers
        .iter()
        .map(WeightedCover::support_size)
        .max()
        .unwrap();
    let unmixed = height == big_height;
    if unmixed {
        // supports of minimal weighted covers of an unmixed ideal are minimal
        // vertex covers of the underlying graph
        for c in &covers {
            assert!(
                support_is_minimal_vertex_cover(g, c),
                "unmixed instance with a non-minimal cover support"
            );
        }
    }
    // the radical has the same dimension: height = n - α(G)
    if let Ok(wc) = crate::structure::is_well_covered(g, crate::structure::DEFAULT_MIS_BOUND) {
        assert_eq!(
            height,
            g.vertex_count() - wc.alpha,
            "height of the weighted ideal disagrees with the independence number"
        );
    }
    Ok(UnmixedReport {
        unmixed,
        height,
        big_height,
    })
}

fn support_is_minimal_vertex_cover(g: &WeightedGraph, c: &WeightedCover) -> bool {
    let mut in_c = vec![false; g.vertex_count()];
    for v in c.support() {
        in_c[g.vertex_index(v).unwrap()] = true;
    }
    let covers = g.edges().all(|(i, j, _)| in_c[i] || in_c[j]);
    let minimal = (0..g.vertex_count())
        .filter(|&v| in_c[v])
        .all(|v| g.neighbors(v).iter().any(|&u| !in_c[u]));
    covers && minimal
}

/// Intersection of all components equals the weighted edge ideal, and the
/// intersection is irredundant. Used as a library-level self-check and by the
/// acceptance suite.
pub fn decomposition_is_exact_and_irredundant(
    g: &WeightedGraph,
    budget: u64,
) -> Result<bool, CoverError> {
    let components = irreducible_decomposition(g, budget)?;
    let ideal = weighted_edge_ideal(g);
    if components.is_empty() {
        return Ok(ideal.is_zero());
    }
    if !intersect_all(&components).equals(&ideal) {
        return Ok(false);
    }
    for k in 0..components.len() {
        let rest: Vec<MonomialIdeal> = components
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, c)| c.clone())
            .collect();
        if rest.is_empty() {
            continue; // a single component is trivially irredundant
        }
        if intersect_all(&rest).equals(&ideal) {
            return Ok(false);
        }
    }
    Ok(true)
}
