//! Reduced simplicial homology over the integers, read off through Smith
//! normal form of the boundary matrices. Field dimensions in any
//! characteristic follow from the invariant factors by universal
//! coefficients, so one integral computation serves every field.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::snf::invariant_factors;

/// Reduced homology in one dimension.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyRank {
    /// Rank over the rationals (free rank of the integral group).
    pub rank: usize,
    /// Whether the integral group has torsion.
    pub torsion: bool,
    /// The nontrivial invariant factors (absolute values > 1).
    pub invariant_factors: Vec<BigInt>,
}

impl HomologyRank {
    fn p_torsion_count(&self, p: u32) -> usize {
        let p = BigInt::from(p);
        self.invariant_factors
            .iter()
            .filter(|f| f.mod_floor(&p).is_zero())
            .count()
    }
}

/// Reduced homology of an abstract complex given by its faces grouped by
/// cardinality: `faces_by_card[c]` lists the faces with `c + 1` vertices as
/// bitmasks (the empty face is implicit). Returns one entry per dimension
/// from -1 up to the top dimension.
pub fn reduced_homology(faces_by_card: &[Vec<u64>]) -> Vec<(i64, HomologyRank)> {
    let top_card = faces_by_card.len();
    // chain groups: C_0 = span(empty face), C_c = span(c-vertex faces)
    let count = |c: usize| -> usize {
        if c == 0 {
            1
        } else {
            faces_by_card.get(c - 1).map_or(0, Vec::len)
        }
    };

    // boundary matrices ∂_c : C_c -> C_{c-1}
    let mut factors: Vec<Vec<BigInt>> = Vec::new();
    let mut ranks: Vec<usize> = Vec::new();
    for c in 1..=top_card {
        let rows = count(c - 1);
        let cols = count(c);
        if rows == 0 || cols == 0 {
            factors.push(Vec::new());
            ranks.push(0);
            continue;
        }
        let mut index: HashMap<u64, usize> = HashMap::new();
        if c >= 2 {
            for (i, &f) in faces_by_card[c - 2].iter().enumerate() {
                index.insert(f, i);
            }
        }
        let mut m = vec![vec![0i64; cols]; rows];
        for (j, &f) in faces_by_card[c - 1].iter().enumerate() {
            let mut sign = 1i64;
            let mut bits = f;
            while bits != 0 {
                let v = bits.trailing_zeros();
                bits &= bits - 1;
                let sub = f & !(1u64 << v);
                let i = if c == 1 { 0 } else { index[&sub] };
                m[i][j] = sign;
                sign = -sign;
            }
        }
        let f = invariant_factors(&m);
        ranks.push(f.len());
        factors.push(f);
    }

    let mut out = Vec::new();
    for c in 0..=top_card {
        let rank_in = if c < top_card { ranks[c] } else { 0 };
        let rank_out = if c == 0 { 0 } else { ranks[c - 1] };
        let free = count(c) - rank_in - rank_out;
        let torsion_factors: Vec<BigInt> = if c < top_card {
            factors[c].iter().filter(|f| !f.is_one()).cloned().collect()
        } else {
            Vec::new()
        };
        out.push((
            c as i64 - 1,
            HomologyRank {
                rank: free,
                torsion: !torsion_factors.is_empty(),
                invariant_factors: torsion_factors,
            },
        ));
    }
    out
}

/// Dimension of reduced homology over a field of the given characteristic,
/// per dimension from -1 upward. Universal coefficients over `F_p`: the
/// `p`-torsion of `H_c` contributes to dimension `c` and, as a Tor term, to
/// dimension `c + 1`.
pub fn field_dimensions(
    integral: &[(i64, HomologyRank)],
    characteristic: u32,
) -> Vec<(i64, usize)> {
    integral
        .iter()
        .enumerate()
        .map(|(c, (d, h))| {
            let mut dim = h.rank;
            if characteristic != 0 {
                dim += h.p_torsion_count(characteristic);
                if c > 0 {
                    dim += integral[c - 1].1.p_torsion_count(characteristic);
                }
            }
            (*d, dim)
        })
        .collect()
}

/// Largest dimension with nonzero reduced homology over the field, or None.
pub fn top_nonzero_dimension(integral: &[(i64, HomologyRank)], characteristic: u32) -> Option<i64> {
    field_dimensions(integral, characteristic)
        .into_iter()
        .filter(|&(_, dim)| dim > 0)
        .map(|(d, _)| d)
        .max()
}

/// True when some group carries torsion (a field-dependence candidate).
pub fn has_torsion(integral: &[(i64, HomologyRank)]) -> bool {
    integral.iter().any(|(_, h)| h.torsion)
}

/// Reduced homology of a facet-represented complex, one entry per dimension
/// from -1 to the top dimension. Face enumeration is charged to the meter.
pub fn reduced_homology_ranks(
    k: &crate::complex::SimplicialComplex,
    meter: &mut crate::complex::BudgetMeter,
) -> Result<Vec<(i64, HomologyRank)>, crate::complex::ComplexError> {
    Ok(reduced_homology(&k.faces_by_card(meter)?))
}
