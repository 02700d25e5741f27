//! Fraction-free (Bareiss) elimination over the integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use super::matrix::Matrix;
use crate::scalar::Rational;

/// Integer row-echelon form of a rational matrix.
///
/// `rows[t]` has its leading nonzero entry in column `pivots[t]`. Rows are
/// integer multiples of rational combinations of the input rows, so the row
/// space is preserved.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub cols: usize,
    pub rows: Vec<Vec<BigInt>>,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduced row-echelon form over the rationals: pivot entries are 1 and
    /// pivot columns are zero in every other row.
    pub fn reduced(&self) -> Vec<Vec<Rational>> {
        let mut rows: Vec<Vec<Rational>> = self
            .rows
            .iter()
            .zip(&self.pivots)
            .map(|(row, &pc)| {
                let lead = row[pc].clone();
                row.iter().map(|v| Rational::new(v.clone(), lead.clone())).collect()
            })
            .collect();
        for t in (0..rows.len()).rev() {
            let pc = self.pivots[t];
            let (above, rest) = rows.split_at_mut(t);
            let pivot_row = &rest[0];
            for row in above.iter_mut() {
                let factor = row[pc].clone();
                if factor.is_zero() {
                    continue;
                }
                for (dst, src) in row.iter_mut().zip(pivot_row).skip(pc) {
                    if !src.is_zero() {
                        *dst -= &factor * src;
                    }
                }
            }
        }
        rows
    }
}

/// Clears denominators row by row.
fn integer_rows(m: &Matrix<Rational>) -> Vec<Vec<BigInt>> {
    m.row_iter()
        .map(|row| {
            let lcm = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
            row.iter().map(|v| v.numer() * (&lcm / v.denom())).collect::<Vec<_>>()
        })
        .filter(|row| row.iter().any(|v| !v.is_zero()))
        .collect()
}

/// Row-echelon form by Bareiss elimination with a smallest-magnitude pivot
/// choice. Every division performed is exact.
pub fn echelon(m: &Matrix<Rational>) -> Echelon {
    let cols = m.cols();
    let mut a = integer_rows(m);
    let nrows = a.len();
    let mut prev = BigInt::one();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == nrows {
            break;
        }
        let Some(p) = (r..nrows)
            .filter(|&i| !a[i][c].is_zero())
            .min_by_key(|&i| a[i][c].abs().bits())
        else {
            continue;
        };
        a.swap(r, p);
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pivot = &pivot_row[c];
        tail.par_iter_mut().for_each(|row| {
            let factor = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let src = &pivot_row[j];
                let dst = &mut row[j];
                if factor.is_zero() || src.is_zero() {
                    if dst.is_zero() {
                        continue;
                    }
                    *dst = &*dst * pivot / &prev;
                } else {
                    let numer = &*dst * pivot - &factor * src;
                    let (quot, rem) = numer.div_rem(&prev);
                    debug_assert!(rem.is_zero(), "inexact Bareiss division");
                    *dst = quot;
                }
            }
        });
        prev = pivot.clone();
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    Echelon { cols, rows: a, pivots }
}
