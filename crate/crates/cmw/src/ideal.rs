//! Exact monomial-ideal arithmetic: weighted edge ideals, colon, sum,
//! intersection, radical, equality and polarization.
//!
//! Ideals are kept as their unique minimal generating set at all times, so
//! equality is equality of generator sets.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::ser::SerializeSeq;
use serde::Serialize;
use thiserror::Error;

use crate::graph::WeightedGraph;
use crate::Exponent;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum IdealError {
    #[error("polarization name collision on `{0}`")]
    PolarizationCollision(String),
    #[error("operation requires a squarefree ideal; generator `{0}` is not")]
    NotSquarefree(String),
}

/// A monomial as a finite map variable -> positive exponent.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    exps: BTreeMap<String, Exponent>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var_pow(var: impl Into<String>, e: Exponent) -> Self {
        let mut m = Monomial::default();
        if e > 0 {
            m.exps.insert(var.into(), e);
        }
        m
    }

    pub fn from_pairs<I, S>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (S, Exponent)>,
        S: Into<String>,
    {
        let mut m = Monomial::default();
        for (v, e) in pairs {
            if e > 0 {
                *m.exps.entry(v.into()).or_insert(0) += e;
            }
        }
        m
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponent(&self, var: &str) -> Exponent {
        self.exps.get(var).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> impl Iterator<Item = (&str, Exponent)> {
        self.exps.iter().map(|(v, &e)| (v.as_str(), e))
    }

    pub fn support(&self) -> impl Iterator<Item = &str> {
        self.exps.keys().map(String::as_str)
    }

    pub fn total_degree(&self) -> u64 {
        self.exps.values().map(|&e| e as u64).sum()
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.values().all(|&e| e == 1)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps.clone();
        for (v, &e) in &other.exps {
            *exps.entry(v.clone()).or_insert(0) += e;
        }
        Monomial { exps }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().all(|(v, &e)| other.exponent(v) >= e)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let exps = self
            .exps
            .iter()
            .filter_map(|(v, &e)| {
                let f = other.exponent(v).min(e);
                (f > 0).then(|| (v.clone(), f))
            })
            .collect();
        Monomial { exps }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps.clone();
        for (v, &e) in &other.exps {
            let slot = exps.entry(v.clone()).or_insert(0);
            *slot = (*slot).max(e);
        }
        Monomial { exps }
    }

    /// `self / gcd(self, f)`: the factor taking `f` into the multiple of
    /// `self` of least degree.
    pub fn quotient_by(&self, f: &Monomial) -> Monomial {
        let exps = self
            .exps
            .iter()
            .filter_map(|(v, &e)| {
                let r = e.saturating_sub(f.exponent(v));
                (r > 0).then(|| (v.clone(), r))
            })
            .collect();
        Monomial { exps }
    }

    pub fn radical(&self) -> Monomial {
        Monomial {
            exps: self.exps.keys().map(|v| (v.clone(), 1)).collect(),
        }
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, e) in &self.exps {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for Monomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serde::Serialize::serialize(&self.exps, s)
    }
}

/// A monomial ideal held as its unique minimal generating set.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MonomialIdeal {
    gens: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn zero() -> Self {
        MonomialIdeal::default()
    }

    pub fn new<I: IntoIterator<Item = Monomial>>(gens: I) -> Self {
        let mut ideal = MonomialIdeal {
            gens: gens.into_iter().collect(),
        };
        ideal.minimalize();
        ideal
    }

    fn minimalize(&mut self) {
        let set: BTreeSet<Monomial> = self.gens.drain(..).collect();
        let mut keep: Vec<Monomial> = Vec::new();
        for m in set {
            if !keep.iter().any(|k| k.divides(&m)) {
                keep.retain(|k| !m.divides(k));
                keep.push(m);
            }
        }
        keep.sort();
        self.gens = keep;
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn contains_unit(&self) -> bool {
        self.gens.iter().any(Monomial::is_one)
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    /// Monomial membership.
    pub fn contains(&self, m: &Monomial) -> bool {
        self.gens.iter().any(|g| g.divides(m))
    }

    /// Variables appearing in some generator.
    pub fn variables(&self) -> BTreeSet<String> {
        self.gens
            .iter()
            .flat_map(|g| g.support().map(str::to_owned))
            .collect()
    }

    /// `I : f = { m | m f ∈ I }`.
    pub fn colon(&self, f: &Monomial) -> MonomialIdeal {
        MonomialIdeal::new(self.gens.iter().map(|g| g.quotient_by(f)))
    }

    /// `I + (f)`.
    pub fn add(&self, f: Monomial) -> MonomialIdeal {
        MonomialIdeal::new(self.gens.iter().cloned().chain(std::iter::once(f)))
    }

    /// `I + J`.
    pub fn sum(&self, other: &MonomialIdeal) -> MonomialIdeal {
        MonomialIdeal::new(self.gens.iter().chain(other.gens.iter()).cloned())
    }

    /// `I ∩ J` via pairwise least common multiples.
    pub fn intersect(&self, other: &MonomialIdeal) -> MonomialIdeal {
        MonomialIdeal::new(
            self.gens
                .iter()
                .flat_map(|a| other.gens.iter().map(move |b| a.lcm(b))),
        )
    }

    /// √I: exponents clamped to one.
    pub fn radical(&self) -> MonomialIdeal {
        MonomialIdeal::new(self.gens.iter().map(Monomial::radical))
    }

    pub fn equals(&self, other: &MonomialIdeal) -> bool {
        self == other
    }

    /// Polarization: each `x^e` in a generator becomes `x_1 ⋯ x_e` over fresh
    /// indexed copies. Returns the squarefree ideal and the variable
    /// expansion map (one entry per original variable, listing its copies up
    /// to the largest exponent it carries in any generator).
    pub fn polarize(&self) -> Result<(MonomialIdeal, PolarizationMap), IdealError> {
        let mut max_exp: BTreeMap<String, Exponent> = BTreeMap::new();
        for g in &self.gens {
            for (v, e) in g.exponents() {
                let slot = max_exp.entry(v.to_owned()).or_insert(0);
                *slot = (*slot).max(e);
            }
        }
        let mut map: BTreeMap<String, Vec<String>> = BTreeMap::new();
        let mut seen: BTreeSet<String> = BTreeSet::new();
        for (v, &e) in &max_exp {
            let copies: Vec<String> = (1..=e).map(|i| format!("{v}_{i}")).collect();
            for c in &copies {
                if !seen.insert(c.clone()) {
                    return Err(IdealError::PolarizationCollision(c.clone()));
                }
            }
            map.insert(v.clone(), copies);
        }
        let gens = self.gens.iter().map(|g| {
            Monomial::from_pairs(
                g.exponents()
                    .flat_map(|(v, e)| map[v][..e as usize].iter().map(|c| (c.clone(), 1))),
            )
        });
        Ok((MonomialIdeal::new(gens), PolarizationMap { copies: map }))
    }
}

impl Serialize for MonomialIdeal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.gens.len()))?;
        for g in &self.gens {
            seq.serialize_element(g)?;
        }
        seq.end()
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "(0)");
        }
        write!(f, "(")?;
        for (k, g) in self.gens.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ")")
    }
}

/// Bookkeeping for a polarization: original variable -> its indexed copies.
#[derive(Debug, Clone, Serialize)]
pub struct PolarizationMap {
    pub copies: BTreeMap<String, Vec<String>>,
}

impl PolarizationMap {
    /// All polarized variables, sorted.
    pub fn polarized_variables(&self) -> Vec<String> {
        let mut all: Vec<String> = self.copies.values().flatten().cloned().collect();
        all.sort();
        all
    }
}

/// `I(G_ω) = ((x_i x_j)^{ω(x_i x_j)})` over the graph's vertex labels.
pub fn weighted_edge_ideal(g: &WeightedGraph) -> MonomialIdeal {
    MonomialIdeal::new(g.edges().map(|(i, j, w)| {
        Monomial::from_pairs([(g.label(i).to_owned(), w), (g.label(j).to_owned(), w)])
    }))
}

/// The squarefree edge ideal `I(G)` of the underlying graph.
pub fn edge_ideal(g: &WeightedGraph) -> MonomialIdeal {
    weighted_edge_ideal(g).radical()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testkit::{c5, p3_fixture};

    fn m(pairs: &[(&str, Exponent)]) -> Monomial {
        Monomial::from_pairs(pairs.iter().map(|&(v, e)| (v, e)))
    }

    #[test]
    fn weighted_edge_ideal_examples() {
        let k2 = crate::graph::WeightedGraph::from_parts(
            vec!["x", "y"],
            vec![("x".into(), "y".into(), 2)],
        )
        .unwrap();
        assert_eq!(
            weighted_edge_ideal(&k2),
            MonomialIdeal::new([m(&[("x", 2), ("y", 2)])])
        );

        let c = c5([1; 5]);
        assert_eq!(weighted_edge_ideal(&c).generators().len(), 5);
        assert!(weighted_edge_ideal(&c).is_squarefree());

        let p3 = p3_fixture();
        assert_eq!(
            weighted_edge_ideal(&p3),
            MonomialIdeal::new([m(&[("x", 2), ("y", 2)]), m(&[("y", 1), ("z", 1)])])
        );
    }

    #[test]
    fn colon_examples() {
        let i = MonomialIdeal::new([m(&[("x", 2), ("y", 2)])]);
        assert_eq!(
            i.colon(&m(&[("x", 2)])),
            MonomialIdeal::new([m(&[("y", 2)])])
        );

        // I(C5_ω) with weights (1,2,1,2,1) : x = (y, v, zu)
        let c = c5([1, 2, 1, 2, 1]);
        let i = weighted_edge_ideal(&c);
        let expected =
            MonomialIdeal::new([m(&[("y", 1)]), m(&[("v", 1)]), m(&[("z", 1), ("u", 1)])]);
        assert_eq!(i.colon(&m(&[("x", 1)])), expected);
    }

    #[test]
    fn add_intersect_radical() {
        let i = MonomialIdeal::new([m(&[("x", 2)])]);
        let j = MonomialIdeal::new([m(&[("y", 2)])]);
        assert_eq!(
            i.intersect(&j),
            MonomialIdeal::new([m(&[("x", 2), ("y", 2)])])
        );

        let k = MonomialIdeal::new([m(&[("x", 2), ("y", 2)]), m(&[("y", 1), ("z", 1)])]);
        assert_eq!(
            k.add(m(&[("x", 2)])),
            MonomialIdeal::new([m(&[("x", 2)]), m(&[("y", 1), ("z", 1)])])
        );

        let p3 = p3_fixture();
        assert_eq!(
            weighted_edge_ideal(&p3).radical(),
            MonomialIdeal::new([m(&[("x", 1), ("y", 1)]), m(&[("y", 1), ("z", 1)])])
        );
    }

    #[test]
    fn minimality_is_maintained() {
        let i = MonomialIdeal::new([m(&[("x", 1)]), m(&[("x", 2), ("y", 2)]), m(&[("x", 1)])]);
        assert_eq!(i.generators(), &[m(&[("x", 1)])]);
    }

    #[test]
    fn polarize_examples() {
        let (p, map) = MonomialIdeal::new([m(&[("x", 2), ("y", 2)])])
            .polarize()
            .unwrap();
        assert_eq!(
            p,
            MonomialIdeal::new([m(&[("x_1", 1), ("x_2", 1), ("y_1", 1), ("y_2", 1)])])
        );
        assert_eq!(map.copies["x"], vec!["x_1", "x_2"]);

        // squarefree input maps to an isomorphic copy
        let (p, _) = MonomialIdeal::new([m(&[("x", 1), ("y", 1)])])
            .polarize()
            .unwrap();
        assert_eq!(p, MonomialIdeal::new([m(&[("x_1", 1), ("y_1", 1)])]));

        let (p, _) = MonomialIdeal::new([m(&[("x", 2), ("y", 2)]), m(&[("y", 1), ("z", 1)])])
            .polarize()
            .unwrap();
        assert_eq!(
            p,
            MonomialIdeal::new([
                m(&[("x_1", 1), ("x_2", 1), ("y_1", 1), ("y_2", 1)]),
                m(&[("y_1", 1), ("z_1", 1)]),
            ])
        );
        assert!(p.is_squarefree());
    }

    #[test]
    fn colon_composes_with_multiplication() {
        let p3 = p3_fixture();
        let i = weighted_edge_ideal(&p3);
        let f = m(&[("x", 1)]);
        let g = m(&[("y", 1)]);
        assert_eq!(i.colon(&f).colon(&g), i.colon(&f.mul(&g)));
    }
}
