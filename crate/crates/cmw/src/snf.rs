//! Integer Smith normal form, generic over the scalar type.
//!
//! The elimination is written against num-traits checked arithmetic so the
//! same code runs over a fixed-width scalar and over arbitrary precision.
//! [`invariant_factors`] first runs the fast scalar and transparently retries
//! with big integers if an intermediate value overflows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, Signed};

/// Scalar admissible for the Smith normal form elimination.
pub trait SnfScalar:
    Integer + Signed + CheckedAdd + CheckedSub + CheckedMul + Clone + From<i8>
{
}

impl<T> SnfScalar for T where
    T: Integer + Signed + CheckedAdd + CheckedSub + CheckedMul + Clone + From<i8>
{
}

/// Fast path scalar.
pub type FastInt = i128;
/// Arbitrary-precision fallback scalar.
pub type WideInt = BigInt;

/// Dense row-major integer matrix.
pub type Matrix<T> = Vec<Vec<T>>;

fn swap_rows<T>(m: &mut Matrix<T>, a: usize, b: usize) {
    m.swap(a, b);
}

fn swap_cols<T>(m: &mut Matrix<T>, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// `row[a] -= q * row[b]` from column `from` on; None on overflow.
fn row_axpy<T: SnfScalar>(m: &mut Matrix<T>, a: usize, b: usize, q: &T, from: usize) -> Option<()> {
    for j in from..m[a].len() {
        let delta = q.checked_mul(&m[b][j])?;
        m[a][j] = m[a][j].checked_sub(&delta)?;
    }
    Some(())
}

fn col_axpy<T: SnfScalar>(m: &mut Matrix<T>, a: usize, b: usize, q: &T, from: usize) -> Option<()> {
    for row in m.iter_mut().skip(from) {
        let delta = q.checked_mul(&row[b])?;
        row[a] = row[a].checked_sub(&delta)?;
    }
    Some(())
}

/// Smith normal form by elimination with a smallest-magnitude pivot. Returns
/// the nonzero invariant factors (positive, each dividing the next), or None
/// if the scalar overflowed.
pub fn smith_invariant_factors<T: SnfScalar>(mut m: Matrix<T>) -> Option<Vec<T>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let steps = rows.min(cols);
    let mut factors = Vec::new();

    for t in 0..steps {
        // smallest nonzero entry in the remaining block
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if !m[i][j].is_zero()
                    && pivot.is_none_or(|(pi, pj)| m[i][j].abs() < m[pi][pj].abs())
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        swap_rows(&mut m, t, pi);
        swap_cols(&mut m, t, pj);

        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = m[i][t].div_floor(&m[t][t]);
                row_axpy(&mut m, i, t, &q, t)?;
                if !m[i][t].is_zero() {
                    // remainder is smaller than the pivot; promote it
                    swap_rows(&mut m, t, i);
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = m[t][j].div_floor(&m[t][t]);
                col_axpy(&mut m, j, t, &q, t)?;
                if !m[t][j].is_zero() {
                    swap_cols(&mut m, t, j);
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // divisibility: the pivot must divide the remaining block
            let mut fixed = true;
            'scan: for i in t + 1..rows {
                for j in t + 1..cols {
                    if !m[i][j].mod_floor(&m[t][t]).is_zero() {
                        // fold row i into row t to pull the offender in range
                        let minus = T::from(-1i8);
                        row_axpy(&mut m, t, i, &minus, t)?;
                        fixed = false;
                        break 'scan;
                    }
                }
            }
            if fixed {
                break;
            }
        }
        factors.push(m[t][t].abs());
    }
    factors.retain(|f| !f.is_zero());
    Some(factors)
}

/// Invariant factors of a small-entry integer matrix, with automatic
/// promotion to arbitrary precision on overflow.
pub fn invariant_factors(m: &Matrix<i64>) -> Vec<BigInt> {
    let fast: Matrix<FastInt> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as FastInt).collect())
        .collect();
    if let Some(f) = smith_invariant_factors(fast) {
        return f.into_iter().map(BigInt::from).collect();
    }
    let wide: Matrix<WideInt> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    smith_invariant_factors(wide).expect("big integers cannot overflow")
}
