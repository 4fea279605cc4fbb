//! Front spinning on linearized complexes.
//!
//! Every generator `q` of the input gives four generators of the spun
//! complex: `q[0]`, `q[2]` in the degree of `q` and `^q[1]`, `^q[3]` one
//! degree higher. The boundary copies `d` into the `[0]` and `[2]` blocks and
//! sends `^q[b]` to `q[0] + q[2] + d(q)` written in the `[b]` block.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::augmentation::Augmentation;
use crate::complex::{poincare_chekanov, BasedChainComplex};
use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::matrix::Matrix;
use crate::ring::CoefficientRing;

/// Position of each block inside the spun basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpinBlock {
    Zero,
    Two,
    HatOne,
    HatThree,
}

impl SpinBlock {
    pub const ALL: [SpinBlock; 4] = [SpinBlock::Zero, SpinBlock::Two, SpinBlock::HatOne, SpinBlock::HatThree];

    fn offset(self) -> usize {
        match self {
            SpinBlock::Zero => 0,
            SpinBlock::Two => 1,
            SpinBlock::HatOne => 2,
            SpinBlock::HatThree => 3,
        }
    }

    pub fn label(self, base: &str) -> String {
        match self {
            SpinBlock::Zero => format!("{base}[0]"),
            SpinBlock::Two => format!("{base}[2]"),
            SpinBlock::HatOne => format!("^{base}[1]"),
            SpinBlock::HatThree => format!("^{base}[3]"),
        }
    }

    fn degree_shift(self) -> i64 {
        match self {
            SpinBlock::Zero | SpinBlock::Two => 0,
            SpinBlock::HatOne | SpinBlock::HatThree => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpunComplex {
    complex: BasedChainComplex,
    source_len: usize,
}

impl SpunComplex {
    pub fn complex(&self) -> &BasedChainComplex {
        &self.complex
    }

    pub fn into_complex(self) -> BasedChainComplex {
        self.complex
    }

    /// Index in the spun basis of generator `i` of the input, in block `b`.
    pub fn index(&self, i: usize, b: SpinBlock) -> usize {
        b.offset() * self.source_len + i
    }
}

fn check_input(c: &BasedChainComplex) -> Result<()> {
    if c.ring() != CoefficientRing::Z2 {
        return Err(Error::Unsupported(format!(
            "spinning is defined over Z2, not {}",
            c.ring()
        )));
    }
    if !c.grading().is_integral() {
        return Err(Error::Unsupported(format!(
            "spinning needs a Z-grading, not {}",
            c.grading()
        )));
    }
    Ok(())
}

pub fn spin_complex(c: &BasedChainComplex) -> Result<SpunComplex> {
    check_input(c)?;
    let n = c.len();
    let ring = c.ring();
    let d = c.boundary();
    let mut basis = Vec::with_capacity(4 * n);
    for b in SpinBlock::ALL {
        basis.extend(
            c.basis()
                .iter()
                .map(|e| (b.label(&e.label), e.degree + b.degree_shift())),
        );
    }
    let mut m = Matrix::zeros(4 * n, 4 * n);
    for b in SpinBlock::ALL {
        m.place(b.offset() * n, b.offset() * n, d);
    }
    let id = Matrix::identity(n, ring);
    for b in [SpinBlock::HatOne, SpinBlock::HatThree] {
        m.place(0, b.offset() * n, &id);
        m.place(n, b.offset() * n, &id);
    }
    let complex = BasedChainComplex::new(ring, c.grading(), basis, m)?;
    Ok(SpunComplex {
        complex,
        source_len: n,
    })
}

/// Applies [`spin_complex`] `times` times.
pub fn spin_times(c: &BasedChainComplex, times: usize) -> Result<BasedChainComplex> {
    let mut out = c.clone();
    for _ in 0..times {
        out = spin_complex(&out)?.into_complex();
    }
    Ok(out)
}

/// `eps(q[a]) = eps(q)` and `eps(^q[b]) = 0`, labelled like the spun basis.
pub fn spin_augmentation(eps: &Augmentation) -> Augmentation {
    let zero = crate::ring::Scalar::from_integer(0.into());
    let mut labels = Vec::new();
    let mut values = Vec::new();
    for b in SpinBlock::ALL {
        for (l, v) in eps.labels().iter().zip(eps.values()) {
            labels.push(b.label(l));
            values.push(match b {
                SpinBlock::Zero | SpinBlock::Two => v.clone(),
                _ => zero.clone(),
            });
        }
    }
    Augmentation::from_parts(labels, values)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct KunnethReport {
    pub holds: bool,
    pub input: LaurentPoly,
    pub spun: LaurentPoly,
    pub expected: LaurentPoly,
    pub spun_dims: BTreeMap<i64, usize>,
}

/// Checks that the Poincaré polynomial of the spin is `(1 + t) P(t)`.
pub fn kunneth_check(c: &BasedChainComplex) -> Result<KunnethReport> {
    let input = poincare_chekanov(&c.homology_field()?)?;
    let spun_h = spin_complex(c)?.complex.homology_field()?;
    let spun = poincare_chekanov(&spun_h)?;
    let expected = input.mul(&LaurentPoly::from_terms([(0, 1), (1, 1)]));
    Ok(KunnethReport {
        holds: spun == expected,
        input,
        spun,
        expected,
        spun_dims: spun_h.dims(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::augmentation::{enumerate_augmentations, linearize};
    use crate::catalog;
    use crate::linalg;

    fn chekanov_complex() -> BasedChainComplex {
        let dga = catalog::chekanov_knot();
        let eps = enumerate_augmentations(&dga).unwrap().remove(0);
        linearize(&dga, &eps).unwrap()
    }

    #[test]
    fn double_spin_of_the_knot() {
        let c = spin_times(&chekanov_complex(), 2).unwrap();
        let dims = c.homology_field().unwrap().dims();
        let expected: BTreeMap<i64, usize> =
            [(-2, 1), (-1, 2), (0, 1), (1, 1), (2, 3), (3, 3), (4, 1)].into();
        assert_eq!(dims, expected);
    }

    #[test]
    fn spun_flying_saucer() {
        let dga = catalog::flying_saucer(3, CoefficientRing::Z2).unwrap();
        let c = linearize(&dga, &Augmentation::zero(&dga).unwrap()).unwrap();
        let s = spin_complex(&c).unwrap();
        assert_eq!(
            s.complex().homology_field().unwrap().dims(),
            BTreeMap::from([(3, 1), (4, 1)])
        );
        assert!(kunneth_check(&c).unwrap().holds);
    }

    #[test]
    fn zero_complex_spins_to_zero() {
        let c = BasedChainComplex::zero(CoefficientRing::Z2, crate::grading::GradingGroup::Z);
        assert!(spin_complex(&c).unwrap().complex().is_empty());
        assert!(kunneth_check(&c).unwrap().holds);
    }

    #[test]
    fn other_rings_are_refused() {
        let dga = catalog::flying_saucer(2, CoefficientRing::Rationals).unwrap();
        let c = linearize(&dga, &Augmentation::zero(&dga).unwrap()).unwrap();
        assert!(spin_complex(&c).is_err());
    }

    // Basis change ^q[3] -> ^q[1] + ^q[3] splits the spin into three pieces:
    // the copy on the [0] block, the span of q[0] + q[2] together with the
    // ^q[1] block, and the ^q[1] + ^q[3] block, a copy of the input shifted up by one.
    #[test]
    fn basis_change_splits_the_spin() {
        let c = chekanov_complex();
        let ring = c.ring();
        let n = c.len();
        let s = spin_complex(&c).unwrap();
        let d = s.complex().boundary();
        // New basis vectors as columns in old coordinates.
        let mut t = Matrix::identity(4 * n, ring);
        for i in 0..n {
            // q[2] -> q[0] + q[2]
            t.set(s.index(i, SpinBlock::Zero), s.index(i, SpinBlock::Two), ring.one());
            // ^q[3] -> ^q[1] + ^q[3]
            t.set(s.index(i, SpinBlock::HatOne), s.index(i, SpinBlock::HatThree), ring.one());
        }
        // Over Z2 this basis change is an involution.
        assert_eq!(t.mul(&t, ring), Matrix::identity(4 * n, ring));
        let d2 = t.mul(&d.mul(&t, ring), ring);
        let block = |a: SpinBlock, b: SpinBlock| {
            let rows: Vec<usize> = (0..n).map(|i| s.index(i, a)).collect();
            let cols: Vec<usize> = (0..n).map(|i| s.index(i, b)).collect();
            d2.select(&rows, &cols)
        };
        // ^q[1] + ^q[3] spans a subcomplex isomorphic to the input.
        assert_eq!(block(SpinBlock::HatThree, SpinBlock::HatThree), *c.boundary());
        for other in [SpinBlock::Zero, SpinBlock::Two, SpinBlock::HatOne] {
            assert!(block(other, SpinBlock::HatThree).is_zero());
        }
        // The [0] block is a subcomplex isomorphic to the input.
        assert_eq!(block(SpinBlock::Zero, SpinBlock::Zero), *c.boundary());
        // q[0] + q[2] and ^q[1] form an acyclic piece: ^q[1] hits q[0] + q[2] isomorphically.
        assert_eq!(block(SpinBlock::Two, SpinBlock::HatOne), Matrix::identity(n, ring));
        let piece: Vec<usize> = (0..n)
            .flat_map(|i| [s.index(i, SpinBlock::Two), s.index(i, SpinBlock::HatOne)])
            .collect();
        let sub = d2.select(&piece, &piece);
        assert_eq!(linalg::rank(&sub, ring).unwrap(), n);
    }

    #[test]
    fn spin_commutes_with_direct_sums() {
        let a = chekanov_complex();
        let dga = catalog::flying_saucer(2, CoefficientRing::Z2).unwrap();
        let b = linearize(&dga, &Augmentation::zero(&dga).unwrap()).unwrap();
        let sum = spin_complex(&a.direct_sum(&b).unwrap()).unwrap();
        let parts = spin_complex(&a)
            .unwrap()
            .complex()
            .direct_sum(spin_complex(&b).unwrap().complex())
            .unwrap();
        assert_eq!(
            sum.complex().homology_field().unwrap().dims(),
            parts.homology_field().unwrap().dims()
        );
        assert_eq!(sum.complex().chain_dims(), parts.chain_dims());
    }

    #[test]
    fn spun_augmentation() {
        let dga = catalog::chekanov_knot();
        let eps = enumerate_augmentations(&dga).unwrap().remove(0);
        let s = spin_augmentation(&eps);
        assert_eq!(
            s.support(),
            vec!["q7[0]", "q8[0]", "q9[0]", "q7[2]", "q8[2]", "q9[2]"]
        );
        let ss = spin_augmentation(&s);
        assert_eq!(ss.support().len(), 12);
        assert!(ss.support().iter().all(|l| !l.starts_with('^')));
    }
}
