//! Exact Gaussian elimination over `Q` and `Z/p`.
//!
//! Public entry points take a [`Matrix`] plus its ring and dispatch to a
//! word-sized kernel for prime fields or a big-rational kernel for `Q`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::{scalar_to_u64_mod, CoefficientRing, Scalar};

trait Field {
    type E: Clone + PartialEq;
    fn one(&self) -> Self::E;
    fn is_zero(&self, a: &Self::E) -> bool;
    fn sub(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn mul(&self, a: &Self::E, b: &Self::E) -> Self::E;
    fn neg(&self, a: &Self::E) -> Self::E;
    fn inv(&self, a: &Self::E) -> Self::E;
    fn lift(&self, v: &Scalar) -> Self::E;
    fn lower(&self, v: &Self::E) -> Scalar;
}

struct PrimeField(u64);

impl Field for PrimeField {
    type E = u64;
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.0 - b) % self.0
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.0 as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.0 - a) % self.0
    }
    fn inv(&self, a: &u64) -> u64 {
        // Fermat: a^(p-2).
        let (mut base, mut exp, mut acc) = (*a, self.0 - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }
    fn lift(&self, v: &Scalar) -> u64 {
        scalar_to_u64_mod(v, self.0)
    }
    fn lower(&self, v: &u64) -> Scalar {
        Scalar::from_integer(BigInt::from(*v))
    }
}

struct RationalField;

impl Field for RationalField {
    type E = Scalar;
    fn one(&self) -> Scalar {
        Scalar::one()
    }
    fn is_zero(&self, a: &Scalar) -> bool {
        a.is_zero()
    }
    fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a - b
    }
    fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        a * b
    }
    fn neg(&self, a: &Scalar) -> Scalar {
        -a
    }
    fn inv(&self, a: &Scalar) -> Scalar {
        a.recip()
    }
    fn lift(&self, v: &Scalar) -> Scalar {
        v.clone()
    }
    fn lower(&self, v: &Scalar) -> Scalar {
        v.clone()
    }
}

/// Reduced row echelon form with pivot columns.
struct Echelon<E> {
    rows: Vec<Vec<E>>,
    pivots: Vec<usize>,
}

fn echelon<F: Field>(f: &F, m: &Matrix) -> Echelon<F::E> {
    let mut rows: Vec<Vec<F::E>> = (0..m.rows())
        .map(|i| m.row(i).iter().map(|v| f.lift(v)).collect())
        .collect();
    let ncols = m.cols();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !f.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv(&rows[r][c]);
        for v in rows[r].iter_mut() {
            *v = f.mul(v, &inv);
        }
        for i in 0..rows.len() {
            if i == r || f.is_zero(&rows[i][c]) {
                continue;
            }
            let factor = rows[i][c].clone();
            for j in c..ncols {
                if f.is_zero(&rows[r][j]) {
                    continue;
                }
                let t = f.mul(&factor, &rows[r][j]);
                rows[i][j] = f.sub(&rows[i][j], &t);
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    Echelon { rows, pivots }
}

fn kernel_impl<F: Field>(f: &F, m: &Matrix) -> Matrix {
    let ech = echelon(f, m);
    let n = m.cols();
    let free: Vec<usize> = (0..n).filter(|c| !ech.pivots.contains(c)).collect();
    let mut out = Matrix::zeros(n, free.len());
    for (k, &fc) in free.iter().enumerate() {
        out.set(fc, k, f.lower(&f.one()));
        for (row, &pc) in ech.rows.iter().zip(&ech.pivots) {
            let v = f.neg(&row[fc]);
            if !f.is_zero(&v) {
                out.set(pc, k, f.lower(&v));
            }
        }
    }
    out
}

fn solve_impl<F: Field>(f: &F, a: &Matrix, b: &[Scalar]) -> Option<Vec<Scalar>> {
    let aug = a.hconcat(&Matrix::from_rows(b.iter().map(|v| vec![v.clone()]).collect()));
    let ech = echelon(f, &aug);
    if ech.pivots.last() == Some(&a.cols()) {
        return None;
    }
    let mut x = vec![Scalar::zero(); a.cols()];
    for (row, &pc) in ech.rows.iter().zip(&ech.pivots) {
        x[pc] = f.lower(&row[a.cols()]);
    }
    Some(x)
}

fn with_field<T>(
    ring: CoefficientRing,
    prime: impl FnOnce(&PrimeField) -> T,
    rational: impl FnOnce(&RationalField) -> T,
) -> Result<T> {
    match ring {
        CoefficientRing::Rationals => Ok(rational(&RationalField)),
        CoefficientRing::IntegersMod(p) if ring.is_field() => Ok(prime(&PrimeField(p))),
        _ => Err(Error::NotAField(ring)),
    }
}

/// Rank of `m` over a field.
pub fn rank(m: &Matrix, ring: CoefficientRing) -> Result<usize> {
    if !ring.is_field() {
        return Err(Error::NotAField(ring));
    }
    if m.rows() == 0 || m.cols() == 0 {
        return Ok(0);
    }
    with_field(
        ring,
        |f| echelon(f, m).pivots.len(),
        |f| echelon(f, m).pivots.len(),
    )
}

/// A basis of the null space, returned as the columns of a matrix.
pub fn kernel_basis(m: &Matrix, ring: CoefficientRing) -> Result<Matrix> {
    if !ring.is_field() {
        return Err(Error::NotAField(ring));
    }
    if m.cols() == 0 {
        return Ok(Matrix::zeros(0, 0));
    }
    if m.rows() == 0 {
        return Ok(Matrix::identity(m.cols(), ring));
    }
    with_field(ring, |f| kernel_impl(f, m), |f| kernel_impl(f, m))
}

/// One solution of `a x = b`, or `None` when the system is inconsistent.
pub fn solve(a: &Matrix, b: &[Scalar], ring: CoefficientRing) -> Result<Option<Vec<Scalar>>> {
    assert_eq!(a.rows(), b.len(), "right-hand side length mismatch");
    if !ring.is_field() {
        return Err(Error::NotAField(ring));
    }
    if a.rows() == 0 {
        return Ok(Some(vec![Scalar::zero(); a.cols()]));
    }
    with_field(ring, |f| solve_impl(f, a, b), |f| solve_impl(f, a, b))
}

/// `dim(span(a) + span(b)) - dim(span(b))` for column spans in a common space.
pub fn relative_rank(a: &Matrix, b: &Matrix, ring: CoefficientRing) -> Result<usize> {
    let joint = rank(&a.hconcat(b), ring)?;
    Ok(joint - rank(b, ring)?)
}
