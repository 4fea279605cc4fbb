//! Smith normal form over the integers.
//!
//! Only the invariant factors are kept; the transformation matrices are not
//! needed for ranks and torsion. Pivots are chosen deterministically as the
//! first entry of minimal absolute value in row-major order.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Nonzero diagonal of the Smith normal form: positive, each dividing the next.
pub fn invariant_factors(m: &Matrix) -> Result<Vec<BigInt>> {
    let mut a: Vec<Vec<BigInt>> = Vec::with_capacity(m.rows());
    for i in 0..m.rows() {
        let mut row = Vec::with_capacity(m.cols());
        for v in m.row(i) {
            if !v.is_integer() {
                return Err(Error::Unsupported(format!(
                    "Smith normal form needs integer entries, found {v}"
                )));
            }
            row.push(v.to_integer());
        }
        a.push(row);
    }
    Ok(smith_diagonal(a, m.rows(), m.cols()))
}

fn min_abs_entry(a: &[Vec<BigInt>], from: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for (i, row) in a.iter().enumerate().skip(from) {
        for (j, v) in row.iter().enumerate().skip(from) {
            if v.is_zero() {
                continue;
            }
            if best.map_or(true, |(bi, bj)| v.abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn smith_diagonal(mut a: Vec<Vec<BigInt>>, rows: usize, cols: usize) -> Vec<BigInt> {
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = min_abs_entry(&a, t) else {
            break;
        };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = &a[i][t] / &a[t][t];
                for j in t..cols {
                    let delta = &q * &a[t][j];
                    a[i][j] -= delta;
                }
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = &a[t][j] / &a[t][t];
                for i in t..rows {
                    let delta = &q * &a[i][t];
                    a[i][j] -= delta;
                }
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // A remainder smaller than the pivot survived: move it into place.
                let (mut bi, mut bj) = (t, t);
                for i in t..rows {
                    if !a[i][t].is_zero() && a[i][t].abs() < a[bi][bj].abs() {
                        (bi, bj) = (i, t);
                    }
                }
                for j in t..cols {
                    if !a[t][j].is_zero() && a[t][j].abs() < a[bi][bj].abs() {
                        (bi, bj) = (t, j);
                    }
                }
                a.swap(t, bi);
                for row in a.iter_mut() {
                    row.swap(t, bj);
                }
                continue;
            }
            // Row and column are clear; enforce divisibility on the rest.
            let pivot = a[t][t].clone();
            let offender = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !a[i][j].mod_floor(&pivot).is_zero())
            });
            match offender {
                Some(i) => {
                    for j in t..cols {
                        let v = a[i][j].clone();
                        a[t][j] += v;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
        t += 1;
    }
    diag
}
