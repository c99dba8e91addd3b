//! Exact Cohen-Macaulayness at desk scale.
//!
//! [`reisner_is_cm`] implements the criterion literally: a complex is
//! Cohen-Macaulay over a field exactly when every face's link has vanishing
//! reduced homology below the link's dimension.
//!
//! [`is_cm_oracle`] polarizes the weighted edge ideal and decides the same
//! property on the Stanley-Reisner complex of the polarization, but through
//! the Alexander dual: the link of a face `F` dualizes to the induced
//! subcomplex of the dual on the complement of `F`, which is covered by one
//! simplex per ideal generator. By the nerve theorem the homology of that
//! cover lives on a complex with one vertex per generator, so
//!
//! ```text
//! depth k[Δ] = n - 2 - max { r | H̃_r(nerve(F)) ≠ 0 for some face F }
//! ```
//!
//! and the maximum only ranges over faces that are unions of the complements
//! `B_σ = V \ ∪_{i ∈ σ} supp(g_i)`, since the nerve of `F` is that of its
//! union of contained `B_σ`. This keeps every homology computation on a
//! complex with at most one vertex per edge of the graph, independent of the
//! weights, which is what makes exhaustive weight sweeps tractable. The two
//! routes are cross-checked against each other in the test suite.

use std::collections::{BTreeSet, HashMap, HashSet};

use serde::Serialize;
use thiserror::Error;

use crate::complex::{BudgetMeter, ComplexError, SimplicialComplex};
use crate::graph::WeightedGraph;
use crate::homology::{field_dimensions, has_torsion, reduced_homology, top_nonzero_dimension};
use crate::ideal::{weighted_edge_ideal, IdealError};

/// Default work budget (faces / search states enumerated).
pub const DEFAULT_FACE_BUDGET: u64 = 2_000_000;

/// Largest boundary matrix (cells) the homology kernel accepts.
const SNF_CELL_CAP: usize = 250_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Ideal(#[from] IdealError),
    #[error("characteristic {0} is not 0 or a prime")]
    BadCharacteristic(u32),
}

fn check_characteristic(c: u32) -> Result<(), OracleError> {
    if c == 0
        || (c >= 2
            && (2..c)
                .take_while(|d| d * d <= c)
                .all(|d| !c.is_multiple_of(d)))
    {
        Ok(())
    } else {
        Err(OracleError::BadCharacteristic(c))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OracleOptions {
    /// 0 (rationals) or a prime.
    pub characteristic: u32,
    pub budget: u64,
}

impl Default for OracleOptions {
    fn default() -> Self {
        OracleOptions {
            characteristic: 0,
            budget: DEFAULT_FACE_BUDGET,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CmOracleReport {
    pub cohen_macaulay: bool,
    pub characteristic: u32,
    /// Torsion appeared in some computed homology group, so the verdict may
    /// depend on the field; best-effort flag.
    pub torsion_warning: bool,
    /// Work units consumed.
    pub work: u64,
}

/// Reisner's criterion, checked link by link with memoization on the link's
/// facet set. The empty face's link is the complex itself.
pub fn reisner_is_cm(
    k: &SimplicialComplex,
    characteristic: u32,
    meter: &mut BudgetMeter,
) -> Result<bool, OracleError> {
    check_characteristic(characteristic)?;
    Ok(reisner_with_torsion(k, characteristic, meter)?.0)
}

fn reisner_with_torsion(
    k: &SimplicialComplex,
    characteristic: u32,
    meter: &mut BudgetMeter,
) -> Result<(bool, bool), OracleError> {
    let mut faces: Vec<u64> = vec![0];
    for group in k.faces_by_card(meter)? {
        faces.extend(group);
    }
    let mut memo: HashMap<Vec<u64>, (bool, bool)> = HashMap::new();
    let mut torsion = false;
    for f in faces {
        let link = k.link(f);
        let key = link.facets().to_vec();
        let (ok, tors) = if let Some(&cached) = memo.get(&key) {
            cached
        } else {
            let result = link_vanishes_below_dim(&link, characteristic, meter)?;
            memo.insert(key, result);
            result
        };
        torsion |= tors;
        if !ok {
            return Ok((false, torsion));
        }
    }
    Ok((true, torsion))
}

fn link_vanishes_below_dim(
    link: &SimplicialComplex,
    characteristic: u32,
    meter: &mut BudgetMeter,
) -> Result<(bool, bool), OracleError> {
    let dim = link.dim();
    if dim <= 0 {
        // dimension -1 is vacuous; dimension 0 only requires nonemptiness
        return Ok((true, false));
    }
    let faces = link.faces_by_card(meter)?;
    guard_boundary_sizes(&faces)?;
    let h = reduced_homology(&faces);
    let ok = field_dimensions(&h, characteristic)
        .iter()
        .all(|&(d, dimension)| d >= dim || dimension == 0);
    Ok((ok, has_torsion(&h)))
}

fn guard_boundary_sizes(faces: &[Vec<u64>]) -> Result<(), OracleError> {
    for c in 1..faces.len() {
        if faces[c - 1].len() * faces[c].len() > SNF_CELL_CAP {
            return Err(OracleError::Complex(ComplexError::BudgetExceeded {
                budget: SNF_CELL_CAP as u64,
            }));
        }
    }
    Ok(())
}

/// Cohen-Macaulayness of the weighted edge ideal over a field of the given
/// characteristic: polarize, then decide the Stanley-Reisner complex of the
/// polarization by the dual-nerve depth computation.
pub fn is_cm_oracle(
    g: &WeightedGraph,
    options: &OracleOptions,
) -> Result<CmOracleReport, OracleError> {
    check_characteristic(options.characteristic)?;
    let ideal = weighted_edge_ideal(g);
    let mut meter = BudgetMeter::new(options.budget);
    if ideal.is_zero() {
        return Ok(CmOracleReport {
            cohen_macaulay: true,
            characteristic: options.characteristic,
            torsion_warning: false,
            work: 0,
        });
    }
    let (polar, map) = ideal.polarize()?;
    let ambient = map.polarized_variables();
    if ambient.len() > 64 {
        return Err(OracleError::Complex(ComplexError::TooManyVertices(
            ambient.len(),
        )));
    }
    let index: HashMap<&str, usize> = ambient
        .iter()
        .enumerate()
        .map(|(i, v)| (v.as_str(), i))
        .collect();
    let gens: Vec<u64> = polar
        .generators()
        .iter()
        .map(|m| m.support().map(|v| 1u64 << index[v]).sum())
        .collect();
    let (cm, torsion) =
        squarefree_ideal_is_cm(&gens, ambient.len(), options.characteristic, &mut meter)?;
    Ok(CmOracleReport {
        cohen_macaulay: cm,
        characteristic: options.characteristic,
        torsion_warning: torsion,
        work: meter.used(),
    })
}

/// Decides Cohen-Macaulayness of a squarefree ideal given by generator
/// support masks over `n` ambient vertices. Returns (verdict, torsion seen).
pub fn squarefree_ideal_is_cm(
    gens: &[u64],
    n: usize,
    characteristic: u32,
    meter: &mut BudgetMeter,
) -> Result<(bool, bool), OracleError> {
    check_characteristic(characteristic)?;
    if n > 64 {
        return Err(OracleError::Complex(ComplexError::TooManyVertices(n)));
    }
    if gens.contains(&0) {
        return Err(OracleError::Complex(ComplexError::UnitIdeal));
    }
    // minimal generator masks
    let gens: Vec<u64> = {
        let set: BTreeSet<u64> = gens.iter().copied().collect();
        set.iter()
            .copied()
            .filter(|&g| !set.iter().any(|&h| h != g && h & !g == 0))
            .collect()
    };
    if gens.is_empty() {
        return Ok((true, false)); // zero ideal: the full simplex
    }
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let is_face = |u: u64| gens.iter().all(|&g| g & !u != 0);

    let tau = min_transversal_size(&gens);
    // depth <= dim always holds; Cohen-Macaulay iff no nerve reaches
    // homology degree above tau - 2.
    let threshold = tau as i64 - 2;

    // distinct complements B_σ = V \ ∪_{i∈σ} g_i that are faces
    let mut b_faces: BTreeSet<u64> = BTreeSet::new();
    collect_b_sets(&gens, 0, 0, full, &mut b_faces, &is_face, meter)?;
    let b_list: Vec<u64> = b_faces.into_iter().collect();

    // walk the union-closed family of faces built from B sets
    let mut seen: HashSet<u64> = HashSet::new();
    let mut stack: Vec<u64> = vec![0];
    seen.insert(0);
    let mut torsion = false;
    while let Some(u) = stack.pop() {
        meter.charge(1)?;
        if let Some(exceeds) = nerve_exceeds(
            &gens,
            full,
            u,
            threshold,
            characteristic,
            &mut torsion,
            meter,
        )? {
            if exceeds {
                return Ok((false, torsion));
            }
        }
        for &b in &b_list {
            if b & !u == 0 {
                continue;
            }
            let next = u | b;
            if is_face(next) && seen.insert(next) {
                stack.push(next);
            }
        }
    }
    Ok((true, torsion))
}

#[allow(clippy::too_many_arguments)]
fn collect_b_sets(
    gens: &[u64],
    start: usize,
    union: u64,
    full: u64,
    out: &mut BTreeSet<u64>,
    is_face: &dyn Fn(u64) -> bool,
    meter: &mut BudgetMeter,
) -> Result<(), ComplexError> {
    for i in start..gens.len() {
        meter.charge(1)?;
        let next = union | gens[i];
        if next == full {
            continue; // complements only shrink to empty beyond this point
        }
        let b = full & !next;
        if is_face(b) {
            out.insert(b);
        }
        collect_b_sets(gens, i + 1, next, full, out, is_face, meter)?;
    }
    Ok(())
}

/// Computes whether the nerve at face `u` has homology above `threshold`
/// over the field. Returns `None` when the state provably cannot exceed the
/// threshold (small nerve or cone), sparing the homology computation.
fn nerve_exceeds(
    gens: &[u64],
    full: u64,
    u: u64,
    threshold: i64,
    characteristic: u32,
    torsion: &mut bool,
    meter: &mut BudgetMeter,
) -> Result<Option<bool>, OracleError> {
    // reduce to minimal residual supports: covers contained in others are
    // redundant in the dual cover
    let mut residual: Vec<u64> = gens.iter().map(|&g| g & !u).collect();
    residual.sort_unstable();
    residual.dedup();
    let reduced: Vec<u64> = residual
        .iter()
        .copied()
        .filter(|&h| !residual.iter().any(|&k| k != h && k & !h == 0))
        .collect();
    // drop generators whose dual cover element is empty
    let live: Vec<u64> = reduced
        .iter()
        .copied()
        .filter(|&h| full & !u & !h != 0)
        .collect();
    let t_eff = live.len();
    if t_eff == 0 {
        // the dual is the bare empty face: homology in degree -1 only
        return Ok(Some(-1 > threshold));
    }
    if (t_eff as i64) - 2 <= threshold {
        return Ok(None); // cannot reach above the threshold
    }

    // nerve faces over the live generators, grouped by cardinality
    let mut by_card: Vec<Vec<u64>> = Vec::new();
    let mut stack: Vec<(usize, u64, u64)> = (0..t_eff).map(|i| (i, 1u64 << i, live[i])).collect();
    let mut all: HashSet<u64> = HashSet::new();
    while let Some((last, sigma, union)) = stack.pop() {
        if full & !u & !union == 0 {
            continue; // empty intersection of cover elements
        }
        meter.charge(1)?;
        let card = sigma.count_ones() as usize;
        if by_card.len() < card {
            by_card.resize(card, Vec::new());
        }
        by_card[card - 1].push(sigma);
        all.insert(sigma);
        for i in last + 1..t_eff {
            stack.push((i, sigma | (1u64 << i), union | live[i]));
        }
    }
    for group in &mut by_card {
        group.sort_unstable();
    }

    // cones are acyclic
    let is_cone = (0..t_eff).any(|i| {
        let bit = 1u64 << i;
        all.iter()
            .all(|&sigma| sigma & bit != 0 || all.contains(&(sigma | bit)))
    });
    if is_cone {
        return Ok(None);
    }

    for c in 1..by_card.len() {
        if by_card[c - 1].len() * by_card[c].len() > SNF_CELL_CAP {
            return Err(OracleError::Complex(ComplexError::BudgetExceeded {
                budget: SNF_CELL_CAP as u64,
            }));
        }
    }
    let h = reduced_homology(&by_card);
    *torsion |= has_torsion(&h);
    Ok(Some(
        top_nonzero_dimension(&h, characteristic).is_some_and(|d| d > threshold),
    ))
}

/// Smallest hitting set size of the generator supports.
fn min_transversal_size(gens: &[u64]) -> usize {
    fn rec(gens: &[u64], chosen: u64, count: usize, best: &mut usize) {
        if count >= *best {
            return;
        }
        match gens.iter().find(|&&g| g & chosen == 0) {
            None => *best = count,
            Some(&g) => {
                let mut bits = g;
                while bits != 0 {
                    let v = bits.trailing_zeros();
                    bits &= bits - 1;
                    rec(gens, chosen | (1u64 << v), count + 1, best);
                }
            }
        }
    }
    let mut best = gens.len();
    rec(gens, 0, 0, &mut best);
    best
}
