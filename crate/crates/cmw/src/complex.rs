//! Finite simplicial complexes held by their facets, and the Stanley-Reisner
//! complex of a squarefree monomial ideal: the generators' supports are the
//! minimal nonfaces, so the faces are exactly the subsets of the ambient
//! vertex set containing no generator support.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::ideal::MonomialIdeal;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("complex has {0} vertices; at most 64 are supported")]
    TooManyVertices(usize),
    #[error("ideal is not squarefree")]
    NotSquarefree,
    #[error("ideal is the unit ideal; its Stanley-Reisner complex is void")]
    UnitIdeal,
    #[error("generator mentions `{0}` outside the ambient variable set")]
    OutsideAmbient(String),
    #[error("budget of {budget} faces exceeded")]
    BudgetExceeded { budget: u64 },
}

/// A simplicial complex on a named vertex set, stored as maximal faces.
/// An empty facet list encodes the complex `{∅}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SimplicialComplex {
    labels: Vec<String>,
    #[serde(serialize_with = "serialize_facets")]
    facets: Vec<u64>,
}

fn serialize_facets<S: serde::Serializer>(facets: &Vec<u64>, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(facets.len()))?;
    for &f in facets {
        let vs: Vec<usize> = (0..64).filter(|&v| f & (1 << v) != 0).collect();
        seq.serialize_element(&vs)?;
    }
    seq.end()
}

impl SimplicialComplex {
    /// Builds a complex from candidate faces, keeping the maximal ones.
    pub fn from_facets(labels: Vec<String>, facets: Vec<u64>) -> Result<Self, ComplexError> {
        if labels.len() > 64 {
            return Err(ComplexError::TooManyVertices(labels.len()));
        }
        Ok(SimplicialComplex {
            labels,
            facets: maximalize(facets),
        })
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn facets(&self) -> &[u64] {
        &self.facets
    }

    /// Dimension: one less than the largest facet size; -1 for `{∅}`.
    pub fn dim(&self) -> i64 {
        self.facets
            .iter()
            .map(|f| f.count_ones() as i64 - 1)
            .max()
            .unwrap_or(-1)
    }

    pub fn is_face(&self, face: u64) -> bool {
        face == 0 || self.facets.iter().any(|&f| face & !f == 0)
    }

    /// All nonempty faces grouped by cardinality, each group sorted.
    /// Charges one budget unit per face enumerated.
    pub fn faces_by_card(&self, meter: &mut BudgetMeter) -> Result<Vec<Vec<u64>>, ComplexError> {
        let mut seen: BTreeSet<u64> = BTreeSet::new();
        let mut stack: Vec<u64> = self.facets.clone();
        for &f in &self.facets {
            seen.insert(f);
        }
        meter.charge(self.facets.len() as u64)?;
        while let Some(f) = stack.pop() {
            let mut bits = f;
            while bits != 0 {
                let v = bits.trailing_zeros();
                bits &= bits - 1;
                let sub = f & !(1u64 << v);
                if sub != 0 && seen.insert(sub) {
                    meter.charge(1)?;
                    stack.push(sub);
                }
            }
        }
        let max_card = self
            .facets
            .iter()
            .map(|f| f.count_ones() as usize)
            .max()
            .unwrap_or(0);
        let mut by_card: Vec<Vec<u64>> = vec![Vec::new(); max_card];
        for f in seen {
            by_card[f.count_ones() as usize - 1].push(f);
        }
        Ok(by_card)
    }

    /// The link of a face: `{ G \ F | F ⊆ G, G a facet }` as a complex on the
    /// same label set (vertices of the face become unused).
    pub fn link(&self, face: u64) -> SimplicialComplex {
        let facets: Vec<u64> = self
            .facets
            .iter()
            .filter(|&&g| face & !g == 0)
            .map(|&g| g & !face)
            .collect();
        SimplicialComplex {
            labels: self.labels.clone(),
            facets: maximalize(facets),
        }
    }

    /// Cone over the complex with a fresh apex vertex.
    pub fn cone(&self, apex: impl Into<String>) -> Result<SimplicialComplex, ComplexError> {
        let mut labels = self.labels.clone();
        labels.push(apex.into());
        if labels.len() > 64 {
            return Err(ComplexError::TooManyVertices(labels.len()));
        }
        let bit = 1u64 << self.labels.len();
        let facets = if self.facets.is_empty() {
            vec![bit]
        } else {
            self.facets.iter().map(|&f| f | bit).collect()
        };
        Ok(SimplicialComplex { labels, facets })
    }
}

fn maximalize(mut facets: Vec<u64>) -> Vec<u64> {
    facets.sort_unstable_by_key(|f| std::cmp::Reverse(f.count_ones()));
    let mut keep: Vec<u64> = Vec::new();
    for f in facets {
        if f != 0 && !keep.iter().any(|&k| f & !k == 0) {
            keep.push(f);
        }
    }
    keep.sort_unstable();
    keep
}

/// Counts work done while enumerating faces; shared across the homology and
/// Cohen-Macaulayness checks of one call.
#[derive(Debug, Clone)]
pub struct BudgetMeter {
    budget: u64,
    used: u64,
}

impl BudgetMeter {
    pub fn new(budget: u64) -> Self {
        BudgetMeter { budget, used: 0 }
    }

    pub fn charge(&mut self, amount: u64) -> Result<(), ComplexError> {
        self.used = self.used.saturating_add(amount);
        if self.used > self.budget {
            Err(ComplexError::BudgetExceeded {
                budget: self.budget,
            })
        } else {
            Ok(())
        }
    }

    pub fn used(&self) -> u64 {
        self.used
    }
}

/// Stanley-Reisner complex of a squarefree ideal over an ambient variable
/// set: facets are complements of the minimal transversals of the generator
/// supports.
pub fn stanley_reisner_complex(
    ideal: &MonomialIdeal,
    ambient: &[String],
    meter: &mut BudgetMeter,
) -> Result<SimplicialComplex, ComplexError> {
    if !ideal.is_squarefree() {
        return Err(ComplexError::NotSquarefree);
    }
    if ideal.contains_unit() {
        return Err(ComplexError::UnitIdeal);
    }
    if ambient.len() > 64 {
        return Err(ComplexError::TooManyVertices(ambient.len()));
    }
    let index = |v: &str| -> Result<usize, ComplexError> {
        ambient
            .iter()
            .position(|a| a == v)
            .ok_or_else(|| ComplexError::OutsideAmbient(v.to_owned()))
    };
    let mut gens: Vec<u64> = Vec::new();
    for g in ideal.generators() {
        let mut mask = 0u64;
        for v in g.support() {
            mask |= 1u64 << index(v)?;
        }
        gens.push(mask);
    }
    let full = if ambient.len() == 64 {
        u64::MAX
    } else {
        (1u64 << ambient.len()) - 1
    };

    let transversals = minimal_transversals(&gens, meter)?;
    let facets = transversals.into_iter().map(|t| full & !t).collect();
    SimplicialComplex::from_facets(ambient.to_vec(), facets)
}

/// Minimal hitting sets of a family of vertex masks by depth-first branching
/// on the first unhit set, followed by a minimality sweep.
pub fn minimal_transversals(
    gens: &[u64],
    meter: &mut BudgetMeter,
) -> Result<Vec<u64>, ComplexError> {
    if gens.is_empty() {
        return Ok(vec![0]);
    }
    let mut found: BTreeSet<u64> = BTreeSet::new();
    let mut stack: Vec<u64> = vec![0];
    while let Some(chosen) = stack.pop() {
        meter.charge(1)?;
        match gens.iter().find(|&&g| g & chosen == 0) {
            None => {
                found.insert(chosen);
            }
            Some(&g) => {
                let mut bits = g;
                while bits != 0 {
                    let v = bits.trailing_zeros();
                    bits &= bits - 1;
                    stack.push(chosen | (1u64 << v));
                }
            }
        }
    }
    // sweep to minimal hitting sets
    let all: Vec<u64> = found.into_iter().collect();
    let minimal: Vec<u64> = all
        .iter()
        .copied()
        .filter(|&t| !all.iter().any(|&s| s != t && s & !t == 0))
        .collect();
    Ok(minimal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::{weighted_edge_ideal, Monomial, MonomialIdeal};
    use crate::testkit::c5;

    fn meter() -> BudgetMeter {
        BudgetMeter::new(2_000_000)
    }

    #[test]
    fn independence_complex_of_c5() {
        let g = c5([1; 5]);
        let ideal = weighted_edge_ideal(&g);
        let ambient: Vec<String> = g.labels().to_vec();
        let k = stanley_reisner_complex(&ideal, &ambient, &mut meter()).unwrap();
        // facets are the five independent pairs
        assert_eq!(k.facets().len(), 5);
        assert!(k.facets().iter().all(|f| f.count_ones() == 2));
        assert_eq!(k.dim(), 1);
    }

    #[test]
    fn single_edge_gives_two_points() {
        let ideal = MonomialIdeal::new([Monomial::from_pairs([("x", 1), ("y", 1)])]);
        let ambient = vec!["x".to_string(), "y".to_string()];
        let k = stanley_reisner_complex(&ideal, &ambient, &mut meter()).unwrap();
        assert_eq!(k.facets(), &[0b01, 0b10]);
    }

    #[test]
    fn zero_ideal_gives_full_simplex() {
        let ambient = vec!["x".to_string(), "y".to_string(), "z".to_string()];
        let k = stanley_reisner_complex(&MonomialIdeal::zero(), &ambient, &mut meter()).unwrap();
        assert_eq!(k.facets(), &[0b111]);
    }

    #[test]
    fn unit_and_non_squarefree_are_rejected() {
        let ambient = vec!["x".to_string()];
        let unit = MonomialIdeal::new([Monomial::one()]);
        assert_eq!(
            stanley_reisner_complex(&unit, &ambient, &mut meter()).unwrap_err(),
            ComplexError::UnitIdeal
        );
        let sq = MonomialIdeal::new([Monomial::var_pow("x", 2)]);
        assert_eq!(
            stanley_reisner_complex(&sq, &ambient, &mut meter()).unwrap_err(),
            ComplexError::NotSquarefree
        );
    }

    #[test]
    fn faces_and_links() {
        let k = SimplicialComplex::from_facets(
            vec!["a".into(), "b".into(), "c".into()],
            vec![0b011, 0b101, 0b110],
        )
        .unwrap();
        let faces = k.faces_by_card(&mut meter()).unwrap();
        assert_eq!(faces[0].len(), 3);
        assert_eq!(faces[1].len(), 3);

        let link_a = k.link(0b001);
        assert_eq!(link_a.facets(), &[0b010, 0b100]);
        // the link of an edge is the empty-face complex
        assert_eq!(k.link(0b011).facets(), &[] as &[u64]);
        assert_eq!(k.link(0b011).dim(), -1);
    }

    #[test]
    fn budget_is_charged() {
        let k = SimplicialComplex::from_facets(
            (0..20).map(|i| format!("v{i}")).collect(),
            vec![(1u64 << 20) - 1],
        )
        .unwrap();
        let mut small = BudgetMeter::new(100);
        assert!(matches!(
            k.faces_by_card(&mut small),
            Err(ComplexError::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn independence_complex_of_c5_is_a_circle() {
        let g = c5([1; 5]);
        let ideal = weighted_edge_ideal(&g);
        let ambient: Vec<String> = g.labels().to_vec();
        let k = stanley_reisner_complex(&ideal, &ambient, &mut meter()).unwrap();
        let h = crate::homology::reduced_homology_ranks(&k, &mut meter()).unwrap();
        let ranks: Vec<(i64, usize)> = h.iter().map(|(d, r)| (*d, r.rank)).collect();
        assert_eq!(ranks, vec![(-1, 0), (0, 0), (1, 1)]);
        assert!(h.iter().all(|(_, r)| !r.torsion));
    }

    #[test]
    fn cone_is_acyclic() {
        let k =
            SimplicialComplex::from_facets(vec!["a".into(), "b".into()], vec![0b01, 0b10]).unwrap();
        let coned = k.cone("apex").unwrap();
        let faces = coned.faces_by_card(&mut meter()).unwrap();
        let h = crate::homology::reduced_homology(&faces);
        assert!(h.iter().all(|(_, r)| r.rank == 0 && !r.torsion));
    }
}
