//! The linearized complex of the two-copy link, split as `Q + C + P`.
//!
//! `Q` is the linearized complex of `L`, `C` the Morse complex of a function
//! on `L` (shifted down by one), `P` the dual of `Q`. The maps
//! `rho : Q -> C`, `sigma : C -> P` and `eta : Q -> P` all have degree `-1`
//! and the assembled differential is
//!
//! ```text
//!  [ dq    0    0 ]
//!  [ rho  -dc   0 ]
//!  [ eta  sigma dp ]
//! ```

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::complex::{mapping_cone, BasedChainComplex};
use crate::error::{Error, Result};
use crate::grading::GradingGroup;
use crate::matrix::Matrix;
use crate::ring::CoefficientRing;

/// Critical points of a Morse function graded by index, with the flow-line boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorseComplex {
    n: i64,
    complex: BasedChainComplex,
}

impl MorseComplex {
    pub fn new(
        ring: CoefficientRing,
        n: i64,
        points: Vec<(String, i64)>,
        boundary: Matrix,
    ) -> Result<Self> {
        for (label, index) in &points {
            if !(0..=n).contains(index) {
                return Err(Error::InvalidParameter(format!(
                    "critical point `{label}` has index {index} outside [0, {n}]"
                )));
            }
        }
        for want in [0, n] {
            if !points.iter().any(|(_, i)| *i == want) {
                return Err(Error::InvalidParameter(format!(
                    "a closed manifold needs a critical point of index {want}"
                )));
            }
        }
        let complex = BasedChainComplex::new(ring, GradingGroup::Z, points, boundary)?;
        Ok(MorseComplex { n, complex })
    }

    /// Minimum and maximum only, no flow lines counted.
    pub fn sphere(ring: CoefficientRing, n: i64) -> Result<Self> {
        MorseComplex::new(
            ring,
            n,
            vec![("c_max".to_string(), n), ("c_min".to_string(), 0)],
            Matrix::zeros(2, 2),
        )
    }

    pub fn dim(&self) -> i64 {
        self.n
    }

    /// Graded by Morse index.
    pub fn complex(&self) -> &BasedChainComplex {
        &self.complex
    }

    /// The block `C` of the two-copy complex: degree `index - 1`.
    pub fn shifted(&self) -> BasedChainComplex {
        self.complex.shift(-1)
    }

    /// Betti numbers of the underlying manifold over a field.
    pub fn betti(&self) -> Result<BTreeMap<i64, usize>> {
        Ok(self.complex.homology_field()?.dims())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoCopyData {
    n: i64,
    q: BasedChainComplex,
    morse: MorseComplex,
    c: BasedChainComplex,
    p: BasedChainComplex,
    rho: Matrix,
    sigma: Matrix,
    eta: Matrix,
}

impl TwoCopyData {
    /// Checks gradings, the pairing of `P` with `Q` and the degrees of the maps.
    /// The block relations are left to [`TwoCopyData::verify_relations`].
    pub fn new(
        n: i64,
        q: BasedChainComplex,
        morse: MorseComplex,
        p: BasedChainComplex,
        rho: Matrix,
        sigma: Matrix,
        eta: Matrix,
    ) -> Result<Self> {
        let ring = q.ring();
        if !q.grading().is_integral() {
            return Err(Error::Grading("two-copy data needs a Z-grading".to_string()));
        }
        if morse.dim() != n {
            return Err(Error::Grading(format!(
                "Morse complex of a {}-manifold used with n = {n}",
                morse.dim()
            )));
        }
        for (name, block) in [("C", morse.complex()), ("P", &p)] {
            if block.ring() != ring || !block.grading().is_integral() {
                return Err(Error::Grading(format!(
                    "block {name} is over {} / {}, expected {ring} / Z",
                    block.ring(),
                    block.grading()
                )));
            }
        }
        if p.len() != q.len() {
            return Err(Error::Grading(format!(
                "P has {} generators, Q has {}",
                p.len(),
                q.len()
            )));
        }
        for (pi, qi) in p.basis().iter().zip(q.basis()) {
            if pi.degree != n - 2 - qi.degree {
                return Err(Error::Grading(format!(
                    "`{}` pairs with `{}` of degree {} and must have degree {}, not {}",
                    pi.label,
                    qi.label,
                    qi.degree,
                    n - 2 - qi.degree,
                    pi.degree
                )));
            }
        }
        let c = morse.shifted();
        q.check_map_degree(&c, &rho, -1)?;
        c.check_map_degree(&p, &sigma, -1)?;
        q.check_map_degree(&p, &eta, -1)?;
        Ok(TwoCopyData {
            n,
            q,
            morse,
            c,
            p,
            rho,
            sigma,
            eta,
        })
    }

    /// Uses `build_dual_block(q, n)` for `P`.
    pub fn with_dual_block(
        n: i64,
        q: BasedChainComplex,
        morse: MorseComplex,
        rho: Matrix,
        sigma: Matrix,
        eta: Matrix,
    ) -> Result<Self> {
        let p = build_dual_block(&q, n)?;
        TwoCopyData::new(n, q, morse, p, rho, sigma, eta)
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn ring(&self) -> CoefficientRing {
        self.q.ring()
    }

    pub fn q(&self) -> &BasedChainComplex {
        &self.q
    }

    pub fn morse(&self) -> &MorseComplex {
        &self.morse
    }

    pub fn c(&self) -> &BasedChainComplex {
        &self.c
    }

    pub fn p(&self) -> &BasedChainComplex {
        &self.p
    }

    pub fn rho(&self) -> &Matrix {
        &self.rho
    }

    pub fn sigma(&self) -> &Matrix {
        &self.sigma
    }

    pub fn eta(&self) -> &Matrix {
        &self.eta
    }

    /// Replaces the maps, keeping the blocks.
    pub fn with_maps(&self, rho: Matrix, sigma: Matrix, eta: Matrix) -> Result<Self> {
        TwoCopyData::new(
            self.n,
            self.q.clone(),
            self.morse.clone(),
            self.p.clone(),
            rho,
            sigma,
            eta,
        )
    }

    /// Basis of the assembled complex: `Q`, then `C`, then `P`.
    pub fn basis(&self) -> Vec<(String, i64)> {
        let mut b = Vec::new();
        for block in [&self.q, &self.c, &self.p] {
            b.extend(block.basis().iter().map(|e| (e.label.clone(), e.degree)));
        }
        b
    }

    /// The block lower-triangular differential, without any checks.
    pub fn assembled_differential(&self) -> Matrix {
        let ring = self.ring();
        let (nq, nc, np) = (self.q.len(), self.c.len(), self.p.len());
        let mut m = Matrix::zeros(nq + nc + np, nq + nc + np);
        m.place(0, 0, self.q.boundary());
        m.place(nq, 0, &self.rho);
        m.place(nq, nq, &self.c.boundary().neg(ring));
        m.place(nq + nc, 0, &self.eta);
        m.place(nq + nc, nq, &self.sigma);
        m.place(nq + nc, nq + nc, self.p.boundary());
        m
    }

    pub fn assembled_squares_to_zero(&self) -> bool {
        let m = self.assembled_differential();
        m.mul(&m, self.ring()).is_zero()
    }

    pub fn verify_relations(&self) -> RelationReport {
        let ring = self.ring();
        let dq = self.q.boundary();
        let dc = self.c.boundary();
        let dp = self.p.boundary();
        let (rho, sigma, eta) = (&self.rho, &self.sigma, &self.eta);
        let q_labels = labels(&self.q);
        let c_labels = labels(&self.c);
        let p_labels = labels(&self.p);
        let check = |name: &str, m: Matrix, rows: &[String], cols: &[String]| RelationCheck {
            relation: name.to_string(),
            failures: m
                .nonzero_entries()
                .map(|(i, j, _)| (cols[j].clone(), rows[i].clone()))
                .collect(),
        };
        let relations = vec![
            check("dq^2 = 0", dq.mul(dq, ring), &q_labels, &q_labels),
            check("dc^2 = 0", dc.mul(dc, ring), &c_labels, &c_labels),
            check("dp^2 = 0", dp.mul(dp, ring), &p_labels, &p_labels),
            check(
                "rho dq - dc rho = 0",
                rho.mul(dq, ring).sub(&dc.mul(rho, ring), ring),
                &c_labels,
                &q_labels,
            ),
            check(
                "dp sigma - sigma dc = 0",
                dp.mul(sigma, ring).sub(&sigma.mul(dc, ring), ring),
                &p_labels,
                &c_labels,
            ),
            check(
                "eta dq + dp eta + sigma rho = 0",
                eta.mul(dq, ring)
                    .add(&dp.mul(eta, ring), ring)
                    .add(&sigma.mul(rho, ring), ring),
                &p_labels,
                &q_labels,
            ),
        ];
        RelationReport { relations }
    }

    /// `QC = cone(-rho)`, with differential `[[-dq, 0], [-rho, dc]]`.
    pub fn qc(&self) -> Result<BasedChainComplex> {
        mapping_cone(&self.q, &self.c, &self.rho.neg(self.ring()))
    }

    /// `H = [eta sigma] : QC -> P`.
    pub fn h(&self) -> Matrix {
        self.eta.hconcat(&self.sigma)
    }
}

fn labels(c: &BasedChainComplex) -> Vec<String> {
    c.basis().iter().map(|b| b.label.clone()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationCheck {
    pub relation: String,
    /// `(source, target)` basis pairs where the identity fails.
    pub failures: Vec<(String, String)>,
}

impl RelationCheck {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub relations: Vec<RelationCheck>,
}

impl RelationReport {
    pub fn all_pass(&self) -> bool {
        self.relations.iter().all(RelationCheck::holds)
    }

    pub fn failing(&self) -> Vec<&str> {
        self.relations
            .iter()
            .filter(|r| !r.holds())
            .map(|r| r.relation.as_str())
            .collect()
    }
}

/// `P` as the dual of `Q`: `p_i` pairs with `q_i`, degree `n - 2 - |q_i|`,
/// boundary the transpose of `dq`.
pub fn build_dual_block(q: &BasedChainComplex, n: i64) -> Result<BasedChainComplex> {
    q.dualize(n)
}

/// The assembled complex on `Q + C + P`; fails with the first broken identity.
pub fn assemble(data: &TwoCopyData) -> Result<BasedChainComplex> {
    let report = data.verify_relations();
    let square_zero = data.assembled_squares_to_zero();
    debug_assert_eq!(report.all_pass(), square_zero);
    if let Some(r) = report.relations.iter().find(|r| !r.holds()) {
        let (src, tgt) = &r.failures[0];
        return Err(Error::RelationFailure(format!(
            "{} (from `{src}` to `{tgt}`)",
            r.relation
        )));
    }
    BasedChainComplex::new(
        data.ring(),
        GradingGroup::Z,
        data.basis(),
        data.assembled_differential(),
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsomorphismRow {
    /// Degree in `QC`; the class lands in degree `degree - 1` of `P`.
    pub degree: i64,
    pub qc_dim: usize,
    pub p_dim: usize,
    pub rank: usize,
}

/// One degree of `... -> H_k(C) -> H_k(QC) -> H_k(Q) -> H_{k-1}(C) -> ...`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SequenceRow {
    pub degree: i64,
    /// `H_k(C) = H_{k+1}(L)`.
    pub c_dim: usize,
    /// `H_k(QC) = H^{n-k-1}(Q)`.
    pub qc_dim: usize,
    pub q_dim: usize,
    pub inclusion_rank: usize,
    pub projection_rank: usize,
    /// Rank of `rho_* : H_k(Q) -> H_{k-1}(C) = H_k(L)`.
    pub rho_rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub relations: RelationReport,
    pub acyclic: bool,
    /// Induced map of `H` per degree, filled only when the cone is acyclic.
    pub isomorphism: Vec<IsomorphismRow>,
    pub sequence: Vec<SequenceRow>,
    pub exact: bool,
    /// `r_k`, the rank of `rho_*` out of `H_k(Q)`.
    pub r: BTreeMap<i64, usize>,
    pub notes: Vec<String>,
}

impl DualityReport {
    /// `H_*` is an isomorphism `H_k(QC) -> H_{k-1}(P)` in every degree.
    pub fn isomorphism_holds(&self) -> bool {
        self.acyclic
            && self
                .isomorphism
                .iter()
                .all(|r| r.qc_dim == r.p_dim && r.rank == r.qc_dim)
    }
}

pub fn duality_check(data: &TwoCopyData) -> Result<DualityReport> {
    let ring = data.ring();
    if !ring.is_field() {
        return Err(Error::NotAField(ring));
    }
    let relations = data.verify_relations();
    if !relations.all_pass() {
        assemble(data)?;
    }
    let mut notes = Vec::new();
    if !ring.is_char_two() && data.n.rem_euclid(2) == 1 {
        notes.push(format!(
            "signs over {ring} in odd dimension n = {} are taken literally",
            data.n
        ));
    }
    let q = &data.q;
    let c = &data.c;
    let p = &data.p;
    let qc = data.qc()?;
    let h = data.h();
    let cone = mapping_cone(&qc, p, &h)?;
    let acyclic = cone.is_acyclic()?;

    let hq = q.homology_field()?;
    let hc = c.homology_field()?;
    let hqc = qc.homology_field()?;
    let hp = p.homology_field()?;

    let mut isomorphism = Vec::new();
    if acyclic {
        let degrees: BTreeSet<i64> = hqc
            .dims()
            .keys()
            .copied()
            .chain(hp.dims().keys().map(|k| k + 1))
            .collect();
        for k in degrees {
            isomorphism.push(IsomorphismRow {
                degree: k,
                qc_dim: hqc.rank(k),
                p_dim: hp.rank(k - 1),
                rank: qc.induced_rank(p, &h, -1, k)?,
            });
        }
    }

    // Inclusion C -> QC and projection QC -> Q.
    let (nq, nc) = (q.len(), c.len());
    let mut incl = Matrix::zeros(nq + nc, nc);
    incl.place(nq, 0, &Matrix::identity(nc, ring));
    let mut proj = Matrix::zeros(nq, nq + nc);
    proj.place(0, 0, &Matrix::identity(nq, ring));

    let degrees: BTreeSet<i64> = [hq.dims(), hc.dims(), hqc.dims()]
        .iter()
        .flat_map(|d| d.keys().copied().collect::<Vec<_>>())
        .flat_map(|k| [k, k + 1])
        .collect();
    let mut sequence = Vec::new();
    let mut r = BTreeMap::new();
    for &k in &degrees {
        let rho_rank = q.induced_rank(c, &data.rho, -1, k)?;
        if rho_rank > 0 {
            r.insert(k, rho_rank);
        }
        sequence.push(SequenceRow {
            degree: k,
            c_dim: hc.rank(k),
            qc_dim: hqc.rank(k),
            q_dim: hq.rank(k),
            inclusion_rank: c.induced_rank(&qc, &incl, 0, k)?,
            projection_rank: qc.induced_rank(q, &proj, 0, k)?,
            rho_rank,
        });
    }
    let row = |k: i64| sequence.iter().find(|s| s.degree == k);
    let exact = sequence.iter().all(|s| {
        let rho_in = row(s.degree + 1).map_or(0, |t| t.rho_rank);
        s.c_dim - s.inclusion_rank == rho_in
            && s.qc_dim - s.projection_rank == s.inclusion_rank
            && s.q_dim - s.rho_rank == s.projection_rank
    });

    Ok(DualityReport {
        relations,
        acyclic,
        isomorphism,
        sequence,
        exact,
        r,
        notes,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdjointnessFailure {
    pub c: String,
    pub q: String,
    /// `<sigma x, q>`.
    pub pairing_side: String,
    /// `x . rho q`.
    pub intersection_side: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AdjointnessReport {
    pub failures: Vec<AdjointnessFailure>,
}

impl AdjointnessReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks `<sigma x, q> = x . rho q` for all basis elements `x` of `C` and `q`
/// of `Q`. `pairing[x][y]` is the intersection number `x . y`, nonzero only
/// when `deg x + deg y = n - 2`.
pub fn adjointness_check(data: &TwoCopyData, pairing: &Matrix) -> Result<AdjointnessReport> {
    let ring = data.ring();
    let c = &data.c;
    if pairing.shape() != (c.len(), c.len()) {
        return Err(Error::Dimension(format!(
            "pairing is {}x{}, C has {} generators",
            pairing.rows(),
            pairing.cols(),
            c.len()
        )));
    }
    for (x, y, _) in pairing.nonzero_entries() {
        let (dx, dy) = (c.basis()[x].degree, c.basis()[y].degree);
        if dx + dy != data.n - 2 {
            return Err(Error::Degree(format!(
                "pairing `{}` (degree {dx}) with `{}` (degree {dy})",
                c.basis()[x].label,
                c.basis()[y].label
            )));
        }
    }
    let rhs = pairing.mul(&data.rho, ring);
    let mut failures = Vec::new();
    for x in 0..c.len() {
        for j in 0..data.q.len() {
            let lhs = data.sigma.get(j, x);
            let r = rhs.get(x, j);
            if lhs != r {
                failures.push(AdjointnessFailure {
                    c: c.basis()[x].label.clone(),
                    q: data.q.basis()[j].label.clone(),
                    pairing_side: crate::ring::format_scalar(lhs),
                    intersection_side: crate::ring::format_scalar(r),
                });
            }
        }
    }
    Ok(AdjointnessReport { failures })
}

/// Ranks of `(sigma rho)_* : H_k(Q) -> H_{k-2}(P)`; all zero when the relations hold.
pub fn sigma_rho_ranks(data: &TwoCopyData) -> Result<BTreeMap<i64, usize>> {
    let ring = data.ring();
    let sr = data.sigma.mul(&data.rho, ring);
    let mut out = BTreeMap::new();
    for k in data.q.degrees() {
        out.insert(k, data.q.induced_rank(&data.p, &sr, -2, k)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::complex::ComplexBuilder;

    const Z2: CoefficientRing = CoefficientRing::Z2;

    #[test]
    fn flying_saucer_fixture() {
        let data = catalog::flying_saucer_two_copy(3).unwrap();
        assert!(data.verify_relations().all_pass());
        let total = assemble(&data).unwrap();
        assert!(total.is_acyclic().unwrap());
        let report = duality_check(&data).unwrap();
        assert!(report.acyclic);
        assert!(report.exact);
        assert!(report.isomorphism_holds());
        assert_eq!(report.r, BTreeMap::from([(3, 1)]));
        // Cone of rho: a single class in degree -1.
        let qc = data.qc().unwrap().homology_field().unwrap();
        assert_eq!(qc.dims(), BTreeMap::from([(-1, 1)]));
        assert!(sigma_rho_ranks(&data).unwrap().values().all(|&r| r == 0));
    }

    #[test]
    fn zero_maps_on_a_sphere_are_not_acyclic() {
        let q = BasedChainComplex::zero(Z2, GradingGroup::Z);
        let morse = MorseComplex::sphere(Z2, 3).unwrap();
        let data = TwoCopyData::with_dual_block(
            3,
            q,
            morse,
            Matrix::zeros(2, 0),
            Matrix::zeros(0, 2),
            Matrix::zeros(0, 0),
        )
        .unwrap();
        let total = assemble(&data).unwrap();
        assert_eq!(total.homology_field().unwrap().dims().len(), 2);
        assert!(!duality_check(&data).unwrap().acyclic);
    }

    #[test]
    fn empty_data_assembles_to_zero() {
        let q = BasedChainComplex::zero(Z2, GradingGroup::Z);
        let morse = MorseComplex::new(Z2, 0, vec![("pt".into(), 0)], Matrix::zeros(1, 1)).unwrap();
        let data = TwoCopyData::with_dual_block(
            0,
            q,
            morse,
            Matrix::zeros(1, 0),
            Matrix::zeros(0, 1),
            Matrix::zeros(0, 0),
        )
        .unwrap();
        assert!(data.verify_relations().all_pass());
        assert_eq!(assemble(&data).unwrap().len(), 1);
    }

    #[test]
    fn perturbed_rho_flags_one_relation() {
        // Q: a (deg 3) -> b (deg 2); C: sphere of dimension 3 (degrees 2, -1).
        let mut b = ComplexBuilder::new(Z2, GradingGroup::Z);
        let a = b.generator("a", 3);
        let bb = b.generator("b", 2);
        b.boundary_entry(a, bb, Z2.one());
        let q = b.build().unwrap();
        let morse = MorseComplex::sphere(Z2, 3).unwrap();
        let ok = TwoCopyData::with_dual_block(
            3,
            q,
            morse,
            Matrix::zeros(2, 2),
            Matrix::zeros(2, 2),
            Matrix::zeros(2, 2),
        )
        .unwrap();
        assert!(ok.verify_relations().all_pass());
        // rho(b) = c_mid (degree 1) breaks rho dq = dc rho.
        let morse = MorseComplex::new(
            Z2,
            3,
            vec![
                ("c_max".into(), 3),
                ("c_mid".into(), 2),
                ("c_mid2".into(), 1),
                ("c_min".into(), 0),
            ],
            Matrix::zeros(4, 4),
        )
        .unwrap();
        let data = TwoCopyData::with_dual_block(
            3,
            ok.q().clone(),
            morse,
            Matrix::zeros(4, 2),
            Matrix::zeros(2, 4),
            Matrix::zeros(2, 2),
        )
        .unwrap();
        let mut rho = Matrix::zeros(4, 2);
        rho.set(1, 1, Z2.one());
        let bad = data
            .with_maps(rho, Matrix::zeros(2, 4), Matrix::zeros(2, 2))
            .unwrap();
        let report = bad.verify_relations();
        assert_eq!(report.failing(), vec!["rho dq - dc rho = 0"]);
        assert!(!bad.assembled_squares_to_zero());
        assert!(matches!(assemble(&bad), Err(Error::RelationFailure(_))));
    }

    #[test]
    fn adjointness_on_the_fixture() {
        let data = catalog::flying_saucer_two_copy(3).unwrap();
        let c = data.c();
        let min = c.index_of("c_min").unwrap();
        let max = c.index_of("c_max").unwrap();
        let mut pairing = Matrix::zeros(2, 2);
        pairing.set(min, max, Z2.one());
        pairing.set(max, min, Z2.one());
        assert!(adjointness_check(&data, &pairing).unwrap().holds());

        let flipped = data
            .with_maps(data.rho().clone(), Matrix::zeros(1, 2), data.eta().clone())
            .unwrap();
        let report = adjointness_check(&flipped, &pairing).unwrap();
        assert_eq!(report.failures.len(), 1);
        assert_eq!(report.failures[0].c, "c_min");
        assert_eq!(report.failures[0].q, "c");

        let zero = data
            .with_maps(Matrix::zeros(2, 1), Matrix::zeros(1, 2), data.eta().clone())
            .unwrap();
        assert!(adjointness_check(&zero, &pairing).unwrap().holds());
        assert!(adjointness_check(&data, &Matrix::zeros(3, 3)).is_err());
    }
}
