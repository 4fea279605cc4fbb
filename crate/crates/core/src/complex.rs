//! Based chain complexes and their homology.
//!
//! A complex is stored as a flat, ordered basis (each element carrying its
//! degree) together with one square boundary matrix of degree `-1`. The
//! per-degree boundary blocks `M_k : C_k -> C_{k-1}` are extracted on demand;
//! within a degree, basis order is the order of the flat list.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::grading::GradingGroup;
use crate::laurent::LaurentPoly;
use crate::linalg;
use crate::matrix::Matrix;
use crate::ring::{CoefficientRing, Scalar};
use crate::smith;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BasisElement {
    pub label: String,
    pub degree: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasedChainComplex {
    ring: CoefficientRing,
    grading: GradingGroup,
    basis: Vec<BasisElement>,
    boundary: Matrix,
}

impl BasedChainComplex {
    /// Checks shapes, ring membership, the degree of the boundary and `d^2 = 0`.
    pub fn new(
        ring: CoefficientRing,
        grading: GradingGroup,
        basis: Vec<(String, i64)>,
        boundary: Matrix,
    ) -> Result<Self> {
        let c = Self::new_unchecked(ring, grading, basis, boundary)?;
        let sq = c.boundary.mul(&c.boundary, ring);
        if !sq.is_zero() {
            let (i, j, _) = sq.nonzero_entries().next().expect("nonzero");
            return Err(Error::NotAComplex(format!(
                "d^2 has a nonzero entry from `{}` to `{}`",
                c.basis[j].label, c.basis[i].label
            )));
        }
        Ok(c)
    }

    /// Like [`BasedChainComplex::new`] without the `d^2 = 0` check.
    pub(crate) fn new_unchecked(
        ring: CoefficientRing,
        grading: GradingGroup,
        basis: Vec<(String, i64)>,
        boundary: Matrix,
    ) -> Result<Self> {
        let n = basis.len();
        if boundary.shape() != (n, n) {
            return Err(Error::Dimension(format!(
                "boundary is {}x{} for a basis of size {n}",
                boundary.rows(),
                boundary.cols()
            )));
        }
        let basis: Vec<BasisElement> = basis
            .into_iter()
            .map(|(label, d)| BasisElement {
                label,
                degree: grading.reduce(d),
            })
            .collect();
        let mut normalized = Matrix::zeros(n, n);
        for (i, j, v) in boundary.nonzero_entries() {
            let v = ring.element(v.clone())?;
            if ring.is_zero(&v) {
                continue;
            }
            if basis[i].degree != grading.reduce(basis[j].degree - 1) {
                return Err(Error::Degree(format!(
                    "boundary of `{}` (degree {}) hits `{}` (degree {})",
                    basis[j].label, basis[j].degree, basis[i].label, basis[i].degree
                )));
            }
            normalized.set(i, j, v);
        }
        Ok(BasedChainComplex {
            ring,
            grading,
            basis,
            boundary: normalized,
        })
    }

    pub fn zero(ring: CoefficientRing, grading: GradingGroup) -> Self {
        BasedChainComplex {
            ring,
            grading,
            basis: Vec::new(),
            boundary: Matrix::zeros(0, 0),
        }
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn grading(&self) -> GradingGroup {
        self.grading
    }

    pub fn basis(&self) -> &[BasisElement] {
        &self.basis
    }

    pub fn boundary(&self) -> &Matrix {
        &self.boundary
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Sorted distinct degrees carrying basis elements.
    pub fn degrees(&self) -> Vec<i64> {
        let mut d: Vec<i64> = self.basis.iter().map(|b| b.degree).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn indices_in_degree(&self, k: i64) -> Vec<usize> {
        let k = self.grading.reduce(k);
        (0..self.basis.len())
            .filter(|&i| self.basis[i].degree == k)
            .collect()
    }

    pub fn labels_in_degree(&self, k: i64) -> Vec<&str> {
        self.indices_in_degree(k)
            .into_iter()
            .map(|i| self.basis[i].label.as_str())
            .collect()
    }

    pub fn dim(&self, k: i64) -> usize {
        self.indices_in_degree(k).len()
    }

    pub fn chain_dims(&self) -> BTreeMap<i64, usize> {
        let mut out = BTreeMap::new();
        for b in &self.basis {
            *out.entry(b.degree).or_insert(0) += 1;
        }
        out
    }

    /// `M_k : C_k -> C_{k-1}` in the per-degree bases.
    pub fn block(&self, k: i64) -> Matrix {
        let src = self.indices_in_degree(k);
        let tgt = self.indices_in_degree(k - 1);
        self.boundary.select(&tgt, &src)
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.label == label)
    }

    /// Same basis and boundary, coefficients reinterpreted in `ring`.
    pub fn change_ring(&self, ring: CoefficientRing) -> Result<Self> {
        let m = self.boundary.map(|v| v.clone());
        let mut converted = Matrix::zeros(m.rows(), m.cols());
        for (i, j, v) in m.nonzero_entries() {
            converted.set(i, j, ring.element(v.clone())?);
        }
        BasedChainComplex::new(ring, self.grading, self.labelled_degrees(), converted)
    }

    pub(crate) fn labelled_degrees(&self) -> Vec<(String, i64)> {
        self.basis
            .iter()
            .map(|b| (b.label.clone(), b.degree))
            .collect()
    }

    /// Degrees moved by `s`; the boundary is unchanged.
    pub fn shift(&self, s: i64) -> Self {
        BasedChainComplex {
            ring: self.ring,
            grading: self.grading,
            basis: self
                .basis
                .iter()
                .map(|b| BasisElement {
                    label: b.label.clone(),
                    degree: self.grading.reduce(b.degree + s),
                })
                .collect(),
            boundary: self.boundary.clone(),
        }
    }

    pub fn relabel(&self, f: impl Fn(&str) -> String) -> Self {
        let mut out = self.clone();
        for b in &mut out.basis {
            b.label = f(&b.label);
        }
        out
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.same_setting(other)?;
        let n = self.len();
        let mut m = Matrix::zeros(n + other.len(), n + other.len());
        m.place(0, 0, &self.boundary);
        m.place(n, n, &other.boundary);
        let mut basis = self.labelled_degrees();
        basis.extend(other.labelled_degrees());
        BasedChainComplex::new(self.ring, self.grading, basis, m)
    }

    fn same_setting(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring || self.grading != other.grading {
            return Err(Error::InvalidParameter(format!(
                "complexes over {} / {} and {} / {} cannot be combined",
                self.ring, self.grading, other.ring, other.grading
            )));
        }
        Ok(())
    }

    /// Homology over the coefficient field:
    /// `dim H_k = dim C_k - rank M_k - rank M_{k+1}`.
    pub fn homology_field(&self) -> Result<HomologyProfile> {
        if !self.ring.is_field() {
            return Err(Error::NotAField(self.ring));
        }
        let mut groups = BTreeMap::new();
        for k in self.degrees() {
            let out_rank = linalg::rank(&self.block(k), self.ring)?;
            let in_rank = linalg::rank(&self.block(k + 1), self.ring)?;
            let dim = self.dim(k) - out_rank - in_rank;
            if dim > 0 {
                groups.insert(
                    k,
                    HomologyGroup {
                        rank: dim,
                        torsion: Vec::new(),
                    },
                );
            }
        }
        Ok(HomologyProfile {
            ring: self.ring,
            grading: self.grading,
            groups,
        })
    }

    /// Integral homology through Smith normal forms of the boundary blocks.
    pub fn homology_integral(&self) -> Result<HomologyProfile> {
        if self.ring != CoefficientRing::Integers {
            return Err(Error::InvalidParameter(format!(
                "integral homology needs Z coefficients, not {}",
                self.ring
            )));
        }
        let mut groups = BTreeMap::new();
        for k in self.degrees() {
            let out_factors = smith::invariant_factors(&self.block(k))?;
            let in_factors = smith::invariant_factors(&self.block(k + 1))?;
            let rank = self.dim(k) - out_factors.len() - in_factors.len();
            let torsion: Vec<BigInt> = in_factors.into_iter().filter(|f| !f.is_one()).collect();
            if rank > 0 || !torsion.is_empty() {
                groups.insert(k, HomologyGroup { rank, torsion });
            }
        }
        Ok(HomologyProfile {
            ring: self.ring,
            grading: self.grading,
            groups,
        })
    }

    /// Field homology when the ring is a field, Smith normal form over `Z`.
    pub fn homology(&self) -> Result<HomologyProfile> {
        match self.ring {
            CoefficientRing::Integers => self.homology_integral(),
            r if r.is_field() => self.homology_field(),
            r => Err(Error::NotAField(r)),
        }
    }

    /// Euler characteristic, computed on chains and on homology and compared.
    pub fn euler_characteristic(&self) -> Result<i64> {
        if !self.grading.has_parity() {
            return Err(Error::Unsupported(format!(
                "Euler characteristic over a grading group of odd order {}",
                self.grading.order()
            )));
        }
        let sign = |k: i64| if k.rem_euclid(2) == 0 { 1 } else { -1 };
        let chain: i64 = self
            .chain_dims()
            .iter()
            .map(|(&k, &d)| sign(k) * d as i64)
            .sum();
        let profile = self.homology()?;
        let homology: i64 = profile
            .groups
            .iter()
            .map(|(&k, g)| sign(k) * g.rank as i64)
            .sum();
        if chain != homology {
            return Err(Error::NotAComplex(format!(
                "Euler characteristic mismatch: chains {chain}, homology {homology}"
            )));
        }
        Ok(chain)
    }

    pub fn is_acyclic(&self) -> Result<bool> {
        Ok(self.homology()?.is_zero())
    }

    /// The dual complex `p_i <-> q_i` with `deg p_i = n - 2 - deg q_i` and
    /// boundary the transpose, so that `<d p_j, q_k> = <p_j, d q_k>`.
    pub fn dualize(&self, n: i64) -> Result<Self> {
        self.dualize_with_labels(n, |l| format!("p_{l}"))
    }

    pub fn dualize_with_labels(&self, n: i64, label: impl Fn(&str) -> String) -> Result<Self> {
        if !self.ring.is_field() {
            return Err(Error::NotAField(self.ring));
        }
        let basis = self
            .basis
            .iter()
            .map(|b| (label(&b.label), n - 2 - b.degree))
            .collect();
        BasedChainComplex::new(self.ring, self.grading, basis, self.boundary.transpose())
    }

    /// Checks that `f` (target x source) has degree `shift` between `self` and `target`.
    pub fn check_map_degree(&self, target: &Self, f: &Matrix, shift: i64) -> Result<()> {
        if f.shape() != (target.len(), self.len()) {
            return Err(Error::Dimension(format!(
                "map is {}x{}, expected {}x{}",
                f.rows(),
                f.cols(),
                target.len(),
                self.len()
            )));
        }
        for (i, j, _) in f.nonzero_entries() {
            let want = self.grading.reduce(self.basis[j].degree + shift);
            if target.basis[i].degree != want {
                return Err(Error::Degree(format!(
                    "`{}` (degree {}) maps to `{}` (degree {}), expected degree {want}",
                    self.basis[j].label,
                    self.basis[j].degree,
                    target.basis[i].label,
                    target.basis[i].degree
                )));
            }
        }
        Ok(())
    }

    /// Rank of the map induced on homology by `f : C_k -> D_{k+shift}`.
    /// Works for maps commuting with the boundaries up to sign.
    pub fn induced_rank(&self, target: &Self, f: &Matrix, shift: i64, k: i64) -> Result<usize> {
        let ring = self.ring;
        let src = self.indices_in_degree(k);
        let tgt = target.indices_in_degree(k + shift);
        if src.is_empty() || tgt.is_empty() {
            return Ok(0);
        }
        let cycles = linalg::kernel_basis(&self.block(k), ring)?;
        let image = f.select(&tgt, &src).mul(&cycles, ring);
        let boundaries = target.block(k + shift + 1);
        linalg::relative_rank(&image, &boundaries, ring)
    }
}

/// Mapping cone of a degree `-1` chain map `f : C -> D`: the complex on
/// `C + D` with `(c, d) -> (-d_C c, f(c) + d_D d)`.
pub fn mapping_cone(
    source: &BasedChainComplex,
    target: &BasedChainComplex,
    f: &Matrix,
) -> Result<BasedChainComplex> {
    source.same_setting(target)?;
    source.check_map_degree(target, f, -1)?;
    let ring = source.ring;
    let lhs = f.mul(&source.boundary, ring);
    let rhs = target.boundary.mul(f, ring);
    if lhs != rhs {
        return Err(Error::NotAChainMap(
            "f d_C differs from d_D f".to_string(),
        ));
    }
    let n = source.len();
    let total = n + target.len();
    let mut m = Matrix::zeros(total, total);
    m.place(0, 0, &source.boundary.neg(ring));
    m.place(n, 0, f);
    m.place(n, n, &target.boundary);
    let mut basis = source.labelled_degrees();
    basis.extend(target.labelled_degrees());
    BasedChainComplex::new(ring, source.grading, basis, m)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    /// Free rank, or dimension over a field.
    pub rank: usize,
    /// Invariant factors greater than one.
    #[serde(serialize_with = "serialize_bigints")]
    pub torsion: Vec<BigInt>,
}

fn serialize_bigints<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|b| b.to_string()))
}

/// Homology by degree; only nonzero groups are stored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyProfile {
    pub ring: CoefficientRing,
    pub grading: GradingGroup,
    pub groups: BTreeMap<i64, HomologyGroup>,
}

impl HomologyProfile {
    pub fn dims(&self) -> BTreeMap<i64, usize> {
        self.groups
            .iter()
            .filter(|(_, g)| g.rank > 0)
            .map(|(&k, g)| (k, g.rank))
            .collect()
    }

    pub fn rank(&self, k: i64) -> usize {
        self.groups
            .get(&self.grading.reduce(k))
            .map_or(0, |g| g.rank)
    }

    pub fn is_zero(&self) -> bool {
        self.groups.is_empty()
    }

    pub fn has_torsion(&self) -> bool {
        self.groups.values().any(|g| !g.torsion.is_empty())
    }
}

/// `P(t) = sum_k dim H_k t^k` for a field profile over `Z`.
pub fn poincare_chekanov(profile: &HomologyProfile) -> Result<LaurentPoly> {
    if !profile.grading.is_integral() {
        return Err(Error::Unsupported(format!(
            "no Laurent polynomial for the cyclic grading {}",
            profile.grading
        )));
    }
    if profile.has_torsion() {
        return Err(Error::Unsupported(
            "Poincaré polynomial of a profile with torsion".to_string(),
        ));
    }
    Ok(LaurentPoly::from_terms(
        profile.dims().into_iter().map(|(k, d)| (k, d as i64)),
    ))
}

/// Incremental construction of a based complex.
#[derive(Debug, Clone)]
pub struct ComplexBuilder {
    ring: CoefficientRing,
    grading: GradingGroup,
    basis: Vec<(String, i64)>,
    entries: Vec<(usize, usize, Scalar)>,
}

impl ComplexBuilder {
    pub fn new(ring: CoefficientRing, grading: GradingGroup) -> Self {
        ComplexBuilder {
            ring,
            grading,
            basis: Vec::new(),
            entries: Vec::new(),
        }
    }

    pub fn generator(&mut self, label: impl Into<String>, degree: i64) -> usize {
        self.basis.push((label.into(), degree));
        self.basis.len() - 1
    }

    /// Adds `coeff * target` to the boundary of `source`.
    pub fn boundary_entry(&mut self, source: usize, target: usize, coeff: Scalar) {
        self.entries.push((source, target, coeff));
    }

    pub fn build(self) -> Result<BasedChainComplex> {
        let n = self.basis.len();
        let mut m = Matrix::zeros(n, n);
        for (src, tgt, c) in self.entries {
            if src >= n || tgt >= n {
                return Err(Error::Dimension(format!(
                    "boundary entry ({src} -> {tgt}) outside a basis of size {n}"
                )));
            }
            let v = self.ring.add(m.get(tgt, src), &c);
            m.set(tgt, src, v);
        }
        BasedChainComplex::new(self.ring, self.grading, self.basis, m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z2: CoefficientRing = CoefficientRing::Z2;

    fn two_term(ring: CoefficientRing, a: i64) -> BasedChainComplex {
        let mut b = ComplexBuilder::new(ring, GradingGroup::Z);
        let x = b.generator("x", 1);
        let y = b.generator("y", 0);
        b.boundary_entry(x, y, ring.from_int(a));
        b.build().unwrap()
    }

    #[test]
    fn multiplication_by_two_has_torsion() {
        let c = two_term(CoefficientRing::Integers, 2);
        let h = c.homology_integral().unwrap();
        assert_eq!(h.rank(1), 0);
        assert_eq!(h.groups[&0].rank, 0);
        assert_eq!(h.groups[&0].torsion, vec![BigInt::from(2)]);
        assert!(!h.groups.contains_key(&1));
        // Over Q the same complex is acyclic; over Z2 it is not.
        assert!(c.change_ring(CoefficientRing::Rationals).unwrap().is_acyclic().unwrap());
        assert_eq!(c.change_ring(Z2).unwrap().homology_field().unwrap().dims().len(), 2);
    }

    #[test]
    fn zero_complex() {
        let c = BasedChainComplex::zero(Z2, GradingGroup::Z);
        assert!(c.homology_field().unwrap().is_zero());
        assert_eq!(c.euler_characteristic().unwrap(), 0);
        assert!(c.dualize(3).unwrap().is_empty());
        assert!(poincare_chekanov(&c.homology_field().unwrap()).unwrap().is_zero());
    }

    #[test]
    fn square_nonzero_is_rejected() {
        let mut b = ComplexBuilder::new(Z2, GradingGroup::cyclic(1));
        let x = b.generator("x", 0);
        b.boundary_entry(x, x, Z2.one());
        assert!(matches!(b.build(), Err(Error::NotAComplex(_))));
    }

    #[test]
    fn wrong_degree_is_rejected() {
        let mut b = ComplexBuilder::new(Z2, GradingGroup::Z);
        let x = b.generator("x", 2);
        let y = b.generator("y", 0);
        b.boundary_entry(x, y, Z2.one());
        assert!(matches!(b.build(), Err(Error::Degree(_))));
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let c = two_term(Z2, 0);
        let shifted = c.shift(-1);
        let id = Matrix::identity(c.len(), Z2);
        let cone = mapping_cone(&c, &shifted, &id).unwrap();
        assert!(cone.is_acyclic().unwrap());
    }

    #[test]
    fn cone_of_zero_map_is_a_sum() {
        let c = two_term(CoefficientRing::Rationals, 0);
        let d = two_term(CoefficientRing::Rationals, 0).relabel(|l| format!("{l}'"));
        let f = Matrix::zeros(d.len(), c.len());
        let cone = mapping_cone(&c, &d, &f).unwrap();
        let h = cone.homology_field().unwrap().dims();
        assert_eq!(h, BTreeMap::from([(0, 2), (1, 2)]));
    }

    #[test]
    fn non_chain_map_is_rejected() {
        let c = two_term(Z2, 1);
        let d = BasedChainComplex::new(
            Z2,
            GradingGroup::Z,
            vec![("u".into(), 0), ("v".into(), -1)],
            Matrix::zeros(2, 2),
        )
        .unwrap();
        // x -> u, y -> 0: f d(x) = f(y) = 0 but d(f x) = d(u) = 0, fine; now y -> v.
        let mut f = Matrix::zeros(2, 2);
        f.set(1, 1, Z2.one());
        assert!(mapping_cone(&c, &d, &f).is_err());
    }

    #[test]
    fn cyclic_grading_homology() {
        // Z/2-graded: x (deg 1) -> y (deg 0) -> nothing, plus z (deg 0) -> w (deg 1).
        let g = GradingGroup::cyclic(2);
        let mut b = ComplexBuilder::new(Z2, g);
        let x = b.generator("x", 1);
        let y = b.generator("y", 0);
        let z = b.generator("z", 0);
        let w = b.generator("w", 1);
        b.boundary_entry(x, y, Z2.one());
        b.boundary_entry(z, w, Z2.one());
        let c = b.build().unwrap();
        assert!(c.homology_field().unwrap().is_zero());
        assert!(poincare_chekanov(&c.homology_field().unwrap()).is_err());
        assert_eq!(c.euler_characteristic().unwrap(), 0);
    }
}
