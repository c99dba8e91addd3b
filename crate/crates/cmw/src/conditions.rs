//! Balanced vertices and the weight conditions deciding Cohen-Macaulayness
//! for girth ≥ 5: an edge-weighted graph whose underlying graph is in the
//! class PC is Cohen-Macaulay exactly when
//!
//! (a) every pendant edge weighs at least every edge adjacent to it,
//! (b) every basic 5-cycle has a balanced vertex whose two cycle neighbors
//!     have degree 2, and
//! (c) at every cycle vertex `x` of degree ≥ 3 with cycle neighbors `y, v`,
//!     `min{ω(xy), ω(xv)} ≥ max{ω(xw) | w ∈ N(x) \ {y, v}}`.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::graph::WeightedGraph;
use crate::structure::{
    basic_five_cycles, classify_pc, girth, induced_five_cycles, Girth, NotPc, PcClassification,
    PcWitness,
};
use crate::Weight;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConditionsError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("sequence is not an induced 5-cycle of the graph")]
    NotAFiveCycle,
    #[error("witness is inconsistent with the graph: {0}")]
    InconsistentWitness(String),
}

/// A balanced vertex `x` on an induced 5-cycle with edges
/// `xy, yz, zu, uv, vx`: `ω(xy) = ω(xv)` and
/// `ω(xy) ≤ ω(yz) ≥ ω(zu) ≤ ω(uv) ≥ ω(xv)`. The chain is palindromic, so the
/// definition does not depend on the traversal orientation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BalancedVertexWitness {
    /// The cycle rotated to start at the balanced vertex.
    pub cycle: [String; 5],
    pub vertex: String,
    pub m: Weight,
    pub p: Weight,
    pub q: Weight,
    pub r: Weight,
    pub n: Weight,
}

/// All balanced vertices of an induced 5-cycle, in cycle order starting from
/// the least label. Both traversal orientations yield the same set.
pub fn balanced_vertices(
    g: &WeightedGraph,
    cycle: &[String; 5],
) -> Result<Vec<BalancedVertexWitness>, ConditionsError> {
    let ids = resolve_cycle(g, cycle)?;
    Ok(balanced_on_cycle(g, &ids))
}

fn resolve_cycle(g: &WeightedGraph, cycle: &[String; 5]) -> Result<[usize; 5], ConditionsError> {
    let mut ids = [0usize; 5];
    for (k, l) in cycle.iter().enumerate() {
        ids[k] = g
            .vertex_index(l)
            .map_err(|_| ConditionsError::UnknownVertex(l.clone()))?;
    }
    let distinct: std::collections::BTreeSet<usize> = ids.iter().copied().collect();
    if distinct.len() != 5 {
        return Err(ConditionsError::NotAFiveCycle);
    }
    for k in 0..5 {
        if !g.has_edge(ids[k], ids[(k + 1) % 5]) || g.has_edge(ids[k], ids[(k + 2) % 5]) {
            return Err(ConditionsError::NotAFiveCycle);
        }
    }
    Ok(ids)
}

fn balanced_on_cycle(g: &WeightedGraph, ids: &[usize; 5]) -> Vec<BalancedVertexWitness> {
    let mut out = Vec::new();
    for k in 0..5 {
        let x = ids[k];
        let y = ids[(k + 1) % 5];
        let z = ids[(k + 2) % 5];
        let u = ids[(k + 3) % 5];
        let v = ids[(k + 4) % 5];
        let m = g.weight(x, y).unwrap();
        let p = g.weight(y, z).unwrap();
        let q = g.weight(z, u).unwrap();
        let r = g.weight(u, v).unwrap();
        let n = g.weight(v, x).unwrap();
        if m == n && m <= p && p >= q && q <= r && r >= n {
            out.push(BalancedVertexWitness {
                cycle: [x, y, z, u, v].map(|i| g.label(i).to_owned()),
                vertex: g.label(x).to_owned(),
                m,
                p,
                q,
                r,
                n,
            });
        }
    }
    out.sort_by(|a, b| a.vertex.cmp(&b.vertex));
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ConditionId {
    A,
    B,
    C,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub condition: ConditionId,
    /// Human-readable location: the edges or cycle involved.
    pub location: String,
    pub weights: Vec<Weight>,
}

/// Outcome of checking conditions (a)-(c) against a PC witness.
#[derive(Debug, Clone, Serialize)]
pub struct ConditionReport {
    pub a: Vec<Violation>,
    pub b: Vec<Violation>,
    pub c: Vec<Violation>,
    /// Balanced vertices with degree-2 cycle neighbors, per basic cycle.
    pub balanced: BTreeMap<String, Vec<BalancedVertexWitness>>,
}

impl ConditionReport {
    pub fn pass(&self) -> bool {
        self.a.is_empty() && self.b.is_empty() && self.c.is_empty()
    }

    pub fn violations(&self) -> impl Iterator<Item = &Violation> {
        self.a.iter().chain(&self.b).chain(&self.c)
    }
}

fn cycle_key(cycle: &[String; 5]) -> String {
    cycle.join(",")
}

fn edge_name(g: &WeightedGraph, i: usize, j: usize) -> String {
    let (a, b) = (g.label(i), g.label(j));
    if a <= b {
        format!("{{{a}, {b}}}")
    } else {
        format!("{{{b}, {a}}}")
    }
}

/// Checks conditions (a), (b), (c) for a graph against its PC witness.
pub fn check_weight_conditions(
    g: &WeightedGraph,
    pc: &PcWitness,
) -> Result<ConditionReport, ConditionsError> {
    validate_witness(g, pc)?;
    let mut report = ConditionReport {
        a: Vec::new(),
        b: Vec::new(),
        c: Vec::new(),
        balanced: BTreeMap::new(),
    };

    // (a) pendant edges dominate their neighbors
    for &(i, j) in &pc.pendant_edge_ids {
        let we = g.weight(i, j).unwrap();
        for &end in &[i, j] {
            for &other in g.neighbors(end) {
                if (end == i && other == j) || (end == j && other == i) {
                    continue;
                }
                let wf = g.weight(end, other).unwrap();
                if we < wf {
                    report.a.push(Violation {
                        condition: ConditionId::A,
                        location: format!(
                            "pendant edge {} vs adjacent edge {}",
                            edge_name(g, i, j),
                            edge_name(g, end, other)
                        ),
                        weights: vec![we, wf],
                    });
                }
            }
        }
    }

    // (b) and (c) quantify over every basic 5-cycle of the graph, which may
    // include cycles outside the witness's chosen disjoint family
    let all_cycles = basic_five_cycles(g);

    // (b) each basic cycle has a balanced vertex with degree-2 cycle neighbors
    for ids in &all_cycles {
        let labels = ids.map(|v| g.label(v).to_owned());
        let witnesses: Vec<BalancedVertexWitness> = balanced_on_cycle(g, ids)
            .into_iter()
            .filter(|w| {
                let x = g.vertex_index(&w.vertex).unwrap();
                let k = ids.iter().position(|&v| v == x).unwrap();
                g.degree(ids[(k + 1) % 5]) == 2 && g.degree(ids[(k + 4) % 5]) == 2
            })
            .collect();
        if witnesses.is_empty() {
            report.b.push(Violation {
                condition: ConditionId::B,
                location: format!("cycle {}", labels.join(",")),
                weights: (0..5)
                    .map(|k| g.weight(ids[k], ids[(k + 1) % 5]).unwrap())
                    .collect(),
            });
        }
        report.balanced.insert(cycle_key(&labels), witnesses);
    }

    // (c) cycle edges dominate at high-degree cycle vertices
    for ids in &all_cycles {
        for k in 0..5 {
            let x = ids[k];
            if g.degree(x) < 3 {
                continue;
            }
            let y = ids[(k + 1) % 5];
            let v = ids[(k + 4) % 5];
            let wmin = g.weight(x, y).unwrap().min(g.weight(x, v).unwrap());
            for &w in g.neighbors(x) {
                if w == y || w == v {
                    continue;
                }
                let ww = g.weight(x, w).unwrap();
                if wmin < ww {
                    report.c.push(Violation {
                        condition: ConditionId::C,
                        location: format!(
                            "vertex {} on cycle {} vs edge {}",
                            g.label(x),
                            ids.map(|i| g.label(i).to_owned()).join(","),
                            edge_name(g, x, w)
                        ),
                        weights: vec![wmin, ww],
                    });
                }
            }
        }
    }

    Ok(report)
}

fn validate_witness(g: &WeightedGraph, pc: &PcWitness) -> Result<(), ConditionsError> {
    let n = g.vertex_count();
    let in_range = pc
        .pendant_edge_ids
        .iter()
        .flat_map(|&(i, j)| [i, j])
        .chain(pc.basic_cycle_ids.iter().flatten().copied())
        .all(|v| v < n);
    if !in_range {
        return Err(ConditionsError::InconsistentWitness(
            "witness mentions vertices outside the graph".into(),
        ));
    }
    for &(i, j) in &pc.pendant_edge_ids {
        if !g.has_edge(i, j) || (g.degree(i) != 1 && g.degree(j) != 1) {
            return Err(ConditionsError::InconsistentWitness(format!(
                "{} is not a pendant edge",
                edge_name(g, i, j)
            )));
        }
    }
    let cycles = basic_five_cycles(g);
    let mut used = std::collections::BTreeSet::new();
    for ids in &pc.basic_cycle_ids {
        if !cycles.contains(ids) {
            return Err(ConditionsError::InconsistentWitness(format!(
                "{} is not a basic 5-cycle",
                ids.map(|v| g.label(v).to_owned()).join(",")
            )));
        }
        for &v in ids {
            if !used.insert(v) {
                return Err(ConditionsError::InconsistentWitness(format!(
                    "cycles in the witness overlap at {}",
                    g.label(v)
                )));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    CohenMacaulay,
    NotCohenMacaulay,
    /// Girth below 5: the classification does not apply.
    OutOfScope,
}

/// Classification certificate: the verdict plus the witnesses establishing
/// it, or the violations refuting it.
#[derive(Debug, Clone, Serialize)]
pub struct CmCertificate {
    pub verdict: Verdict,
    pub girth: Girth,
    pub component_count: usize,
    /// True when the graph is disconnected and the verdict was assembled
    /// componentwise (quotients of disjoint unions are tensor products).
    pub componentwise: bool,
    pub pc: Option<PcWitness>,
    pub not_pc: Option<NotPc>,
    /// Per basic cycle, the lexicographically least admissible balanced
    /// vertex witness.
    pub balanced: BTreeMap<String, BalancedVertexWitness>,
    pub violations: Vec<Violation>,
}

impl CmCertificate {
    pub fn is_cohen_macaulay(&self) -> bool {
        self.verdict == Verdict::CohenMacaulay
    }
}

/// Decides Cohen-Macaulayness of `(G, ω)` for girth ≥ 5.
///
/// Inputs of girth < 5 yield [`Verdict::OutOfScope`]. Disconnected graphs are
/// classified per connected component and the verdicts conjoined; an isolated
/// vertex is Cohen-Macaulay on its own.
pub fn classify_cm(g: &WeightedGraph) -> CmCertificate {
    let gi = girth(g);
    let components = g.components();
    let mut cert = CmCertificate {
        verdict: Verdict::CohenMacaulay,
        girth: gi,
        component_count: components.len(),
        componentwise: components.len() > 1,
        pc: None,
        not_pc: None,
        balanced: BTreeMap::new(),
        violations: Vec::new(),
    };
    if !gi.is_at_least(5) {
        cert.verdict = Verdict::OutOfScope;
        return cert;
    }

    // single-vertex components are Cohen-Macaulay; the rest must be PC
    let mut keep = vec![false; g.vertex_count()];
    for comp in &components {
        if comp.len() > 1 {
            for &v in comp {
                keep[v] = true;
            }
        }
    }
    let h = g.induced_by_mask(&keep);
    if h.vertex_count() == 0 {
        return cert; // edgeless: every component a vertex
    }

    match classify_pc(&h) {
        PcClassification::NotPc(r) => {
            cert.not_pc = Some(r);
            cert.verdict = Verdict::NotCohenMacaulay;
        }
        PcClassification::Pc(w) => {
            let report = check_weight_conditions(&h, &w).expect("witness from classify_pc");
            for (key, witnesses) in &report.balanced {
                if let Some(first) = witnesses.first() {
                    cert.balanced.insert(key.clone(), first.clone());
                }
            }
            cert.violations = report.violations().cloned().collect();
            cert.pc = Some(w);
            if !cert.violations.is_empty() {
                cert.verdict = Verdict::NotCohenMacaulay;
            }
        }
    }
    cert
}

/// Componentwise PC predicate: every connected component is a single vertex
/// or in the class PC. This is the graph-theoretic half of the unmixedness
/// characterization.
pub fn is_pc_or_vertex_componentwise(g: &WeightedGraph) -> bool {
    let components = g.components();
    let mut keep = vec![false; g.vertex_count()];
    for comp in &components {
        if comp.len() > 1 {
            for &v in comp {
                keep[v] = true;
            }
        }
    }
    let h = g.induced_by_mask(&keep);
    h.vertex_count() == 0 || matches!(classify_pc(&h), PcClassification::Pc(_))
}

/// True when the given vertex sequence is an induced 5-cycle.
pub fn is_induced_five_cycle(g: &WeightedGraph, cycle: &[String; 5]) -> bool {
    resolve_cycle(g, cycle).is_ok()
}

/// All induced 5-cycles as label sequences (canonical order).
pub fn induced_five_cycle_labels(g: &WeightedGraph) -> Vec<[String; 5]> {
    induced_five_cycles(g)
        .into_iter()
        .map(|c| c.map(|v| g.label(v).to_owned()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::WeightedGraph;
    use crate::testkit::{c5, c5_labels, cycle_graph, figure3_shape, path_graph};

    #[test]
    fn balanced_all_equal() {
        let g = c5([1; 5]);
        let w = balanced_vertices(&g, &c5_labels()).unwrap();
        assert_eq!(w.len(), 5);
    }

    #[test]
    fn balanced_alternating() {
        let g = c5([1, 2, 1, 2, 1]);
        let w = balanced_vertices(&g, &c5_labels()).unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].vertex, "x");
        assert_eq!((w[0].m, w[0].p, w[0].q, w[0].r, w[0].n), (1, 2, 1, 2, 1));
    }

    #[test]
    fn balanced_none() {
        let g = c5([2, 1, 1, 1, 2]);
        assert!(balanced_vertices(&g, &c5_labels()).unwrap().is_empty());
    }

    #[test]
    fn balanced_is_orientation_symmetric() {
        for weights in [
            [1, 2, 1, 2, 1],
            [3, 1, 2, 2, 3],
            [2, 2, 2, 2, 2],
            [1, 3, 2, 3, 1],
        ] {
            let g = c5(weights);
            let forward = balanced_vertices(&g, &c5_labels()).unwrap();
            let mut reversed = c5_labels();
            reversed[1..].reverse(); // x, v, u, z, y
            let backward = balanced_vertices(&g, &reversed).unwrap();
            let names = |ws: &[BalancedVertexWitness]| -> Vec<String> {
                ws.iter().map(|w| w.vertex.clone()).collect()
            };
            assert_eq!(names(&forward), names(&backward));
        }
    }

    #[test]
    fn balanced_rejects_non_cycles() {
        let g = path_graph(5);
        let labels: [String; 5] = std::array::from_fn(|i| format!("v{i}"));
        assert_eq!(
            balanced_vertices(&g, &labels).unwrap_err(),
            ConditionsError::NotAFiveCycle
        );
    }

    #[test]
    fn conditions_vacuous_on_k2() {
        let g = path_graph(2);
        let pc = match crate::structure::classify_pc(&g) {
            crate::structure::PcClassification::Pc(w) => w,
            _ => unreachable!(),
        };
        let report = check_weight_conditions(&g, &pc).unwrap();
        assert!(report.pass());
    }

    #[test]
    fn condition_a_fails_on_mixed_p4() {
        // a-b-c-d with ω(ab)=1, ω(bc)=2, ω(cd)=1
        let g = WeightedGraph::from_parts(
            vec!["a", "b", "c", "d"],
            vec![
                ("a".into(), "b".into(), 1),
                ("b".into(), "c".into(), 2),
                ("c".into(), "d".into(), 1),
            ],
        )
        .unwrap();
        let pc = match crate::structure::classify_pc(&g) {
            crate::structure::PcClassification::Pc(w) => w,
            _ => panic!("P4 is in the class PC"),
        };
        let report = check_weight_conditions(&g, &pc).unwrap();
        assert!(!report.a.is_empty());
        assert_eq!(report.a[0].weights, vec![1, 2]);
    }

    #[test]
    fn condition_c_fails_on_heavy_spoke() {
        // C5 with a pendant leaf at x; the spoke outweighs the cycle edges at x
        let g = WeightedGraph::from_parts(
            vec!["x", "y", "z", "u", "v", "w", "t"],
            vec![
                ("x".into(), "y".into(), 2),
                ("y".into(), "z".into(), 2),
                ("z".into(), "u".into(), 2),
                ("u".into(), "v".into(), 2),
                ("v".into(), "x".into(), 2),
                ("x".into(), "w".into(), 3),
                ("w".into(), "t".into(), 3),
            ],
        )
        .unwrap();
        let pc = match crate::structure::classify_pc(&g) {
            crate::structure::PcClassification::Pc(w) => w,
            _ => panic!("shape is in the class PC"),
        };
        let report = check_weight_conditions(&g, &pc).unwrap();
        assert!(report.c.iter().any(|v| v.weights == vec![2, 3]));
        // cross-check: such an instance is mixed
        let um = crate::covers::is_unmixed(&g, crate::covers::DEFAULT_COVER_BUDGET).unwrap();
        assert!(!um.unmixed);
    }

    #[test]
    fn mismatched_witness_is_rejected() {
        let g = c5([1; 5]);
        let other = figure3_shape([1; 17]);
        let pc = match crate::structure::classify_pc(&other) {
            crate::structure::PcClassification::Pc(w) => w,
            _ => panic!("figure shape is in the class PC"),
        };
        assert!(matches!(
            check_weight_conditions(&g, &pc),
            Err(ConditionsError::InconsistentWitness(_))
        ));
    }

    #[test]
    fn classify_cm_examples() {
        assert_eq!(classify_cm(&c5([3; 5])).verdict, Verdict::CohenMacaulay);
        assert_eq!(
            classify_cm(&cycle_graph(7)).verdict,
            Verdict::NotCohenMacaulay
        );
        assert_eq!(classify_cm(&cycle_graph(3)).verdict, Verdict::OutOfScope);
        assert_eq!(classify_cm(&cycle_graph(4)).verdict, Verdict::OutOfScope);

        let fig3 = figure3_shape(crate::testkit::FIGURE3_CM_WEIGHTS);
        let cert = classify_cm(&fig3);
        assert_eq!(cert.verdict, Verdict::CohenMacaulay);
        assert_eq!(cert.balanced.len(), 2);
    }

    #[test]
    fn certificate_invariants() {
        let cm = classify_cm(&c5([1, 2, 1, 2, 1]));
        assert!(cm.is_cohen_macaulay());
        assert!(cm.pc.is_some());
        assert!(cm.violations.is_empty());
        assert_eq!(cm.balanced.len(), 1);

        let bad = classify_cm(&c5([2, 1, 1, 1, 2]));
        assert_eq!(bad.verdict, Verdict::NotCohenMacaulay);
        assert!(!bad.violations.is_empty() || bad.not_pc.is_some());
    }

    #[test]
    fn scaling_invariance() {
        for weights in [[1, 2, 1, 2, 1], [2, 1, 1, 1, 2], [1, 1, 2, 1, 1]] {
            let v1 = classify_cm(&c5(weights)).verdict;
            let scaled = weights.map(|w| w * 7);
            let v2 = classify_cm(&c5(scaled)).verdict;
            assert_eq!(v1, v2);
        }
    }

    #[test]
    fn isolated_vertices_are_cohen_macaulay() {
        let g = WeightedGraph::from_parts(vec!["a", "b"], vec![]).unwrap();
        assert_eq!(classify_cm(&g).verdict, Verdict::CohenMacaulay);

        let mixed =
            WeightedGraph::from_parts(vec!["a", "x", "y"], vec![("x".into(), "y".into(), 4)])
                .unwrap();
        let cert = classify_cm(&mixed);
        assert_eq!(cert.verdict, Verdict::CohenMacaulay);
        assert!(cert.componentwise);
    }
}
