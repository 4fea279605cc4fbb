//! Builders for the standard examples.

use std::collections::BTreeMap;

use crate::dga::{Dga, DgaBuilder};
use crate::duality::DualityInstance;
use crate::error::{Error, Result};
use crate::grading::GradingGroup;
use crate::matrix::Matrix;
use crate::ring::CoefficientRing;
use crate::two_copy::{MorseComplex, TwoCopyData};
use crate::augmentation::{linear_part, Augmentation};

/// The standard Legendrian `n`-sphere: one chord `c` of degree `n`, `d c = 0`.
pub fn flying_saucer(n: i64, ring: CoefficientRing) -> Result<Dga> {
    if n < 1 {
        return Err(Error::InvalidParameter(format!(
            "flying saucer needs n >= 1, got {n}"
        )));
    }
    DgaBuilder::new(ring, GradingGroup::Z)
        .ambient_dim(n)
        .generator("c", n)?
        .build()
}

/// A Legendrian knot in `R^3` with nine chords and a unique augmentation.
pub fn chekanov_knot() -> Dga {
    let degrees = [1, 1, 1, 1, 2, -2, 0, 0, 0];
    let mut b = DgaBuilder::new(CoefficientRing::Z2, GradingGroup::Z).ambient_dim(1);
    for (i, d) in degrees.iter().enumerate() {
        b = b
            .generator(&format!("q{}", i + 1), *d)
            .expect("distinct names");
    }
    b.differential("q1", &[(1, &[]), (1, &["q7"]), (1, &["q7", "q6", "q5"])])
        .differential("q2", &[(1, &[]), (1, &["q9"]), (1, &["q5", "q6", "q9"])])
        .differential("q3", &[(1, &[]), (1, &["q8", "q7"])])
        .differential("q4", &[(1, &[]), (1, &["q9", "q8"])])
        .build()
        .expect("well-formed")
}

/// Two flying saucers joined by a tube: chord counts only.
/// For `n <= 2` the degree argument for goodness fails and `good_dga` is false.
pub fn stabilized_spheres_counts(n: i64) -> Result<DualityInstance> {
    if n < 1 {
        return Err(Error::InvalidParameter(format!("need n >= 1, got {n}")));
    }
    let mut chords = BTreeMap::new();
    for (k, c) in [(0, 1), (n - 1, 3), (n, 3)] {
        *chords.entry(k).or_insert(0) += c;
    }
    Ok(DualityInstance::sphere(n)
        .with_chords(chords)
        .with_flags(n > 2, true)
        .with_constraint(0, 1))
}

fn sphere_product_dga(n: i64, chord_degrees: [i64; 2]) -> Result<Dga> {
    DgaBuilder::new(CoefficientRing::Z2, GradingGroup::Z)
        .ambient_dim(n)
        .generator("a", chord_degrees[0])?
        .generator("b", chord_degrees[1])?
        .build()
}

fn check_super_spun(p: i64, k: i64) -> Result<()> {
    if !(p > k && k > 1) {
        return Err(Error::InvalidParameter(format!(
            "super-spun product needs p > k > 1, got p = {p}, k = {k}"
        )));
    }
    Ok(())
}

/// `S^p x S^k` with two chords, of degrees `k + p` and `k`. The linearized
/// homology sits in the instance.
pub fn super_spun(p: i64, k: i64) -> Result<(Dga, DualityInstance)> {
    check_super_spun(p, k)?;
    super_spun_with_chord(p, k, k)
}

/// The same product with the roles of the factors exchanged: chords of
/// degrees `k + p` and `p`.
pub fn super_spun_reversed(p: i64, k: i64) -> Result<(Dga, DualityInstance)> {
    check_super_spun(p, k)?;
    super_spun_with_chord(p, k, p)
}

fn super_spun_with_chord(p: i64, k: i64, low: i64) -> Result<(Dga, DualityInstance)> {
    let n = p + k;
    let dga = sphere_product_dga(n, [n, low])?;
    let c = linear_part(&dga)?;
    let dims = c.homology_field()?.dims();
    let inst = DualityInstance::sphere_product(p, k)
        .with_chords(BTreeMap::from([(n, 1), (low, 1)]))
        .with_homology(dims)
        .with_flags(dga.is_good(), true);
    Ok((dga, inst))
}

/// A Legendrian `S^1 x S^n` built as a connected sum: chord counts only.
pub fn non_spun_torus_counts(n: i64) -> Result<DualityInstance> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("need n >= 2, got {n}")));
    }
    Ok(DualityInstance::sphere_product(1, n)
        .with_chords(BTreeMap::from([(0, 1), (n, 5), (n + 1, 4)]))
        .with_flags(true, true)
        .with_constraint(0, 1))
}

/// Two-copy data for the flying saucer over `Z2`: `Q = {c}` in degree `n`,
/// `C` the minimum and maximum of a function on `S^n`, `P = {p_c}` in degree
/// `-2`, with `rho(c) = c_max`, `sigma(c_min) = p_c` and `eta = 0`.
pub fn flying_saucer_two_copy(n: i64) -> Result<TwoCopyData> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "two-copy fixture needs n >= 2, got {n}"
        )));
    }
    let ring = CoefficientRing::Z2;
    let dga = flying_saucer(n, ring)?;
    let q = linear_part(&dga)?;
    let morse = MorseComplex::sphere(ring, n)?;
    // Morse basis: c_max, c_min.
    let rho = Matrix::from_i64_rows(&[vec![1], vec![0]], ring);
    let sigma = Matrix::from_i64_rows(&[vec![0, 1]], ring);
    let eta = Matrix::zeros(1, 1);
    TwoCopyData::with_dual_block(n, q, morse, rho, sigma, eta)
}

#[derive(Debug, Clone)]
pub enum Payload {
    Dga(Dga),
    Instance(DualityInstance),
    TwoCopy(TwoCopyData),
}

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: String,
    pub note: &'static str,
    pub payload: Payload,
    /// Present for fixtures that come with a duality instance as well as a DGA.
    pub instance: Option<DualityInstance>,
}

/// Size parameters for the parametrized fixtures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FixtureParams {
    pub n: i64,
    pub p: i64,
    pub k: i64,
}

impl Default for FixtureParams {
    fn default() -> Self {
        FixtureParams { n: 3, p: 3, k: 2 }
    }
}

pub const FIXTURE_NAMES: [&str; 7] = [
    "chekanov",
    "flying-saucer",
    "stabilized-spheres",
    "super-spun",
    "super-spun-reversed",
    "non-spun-torus",
    "flying-saucer-two-copy",
];

pub fn fixture(name: &str, params: FixtureParams) -> Result<Fixture> {
    let FixtureParams { n, p, k } = params;
    let (note, payload, instance) = match name {
        "chekanov" => {
            let dga = chekanov_knot();
            let eps = crate::augmentation::enumerate_augmentations(&dga)?.remove(0);
            let dims = crate::augmentation::linearize(&dga, &eps)?
                .homology_field()?
                .dims();
            let mut chords = BTreeMap::new();
            for g in dga.generators().iter() {
                *chords.entry(g.degree).or_insert(0) += 1;
            }
            let inst = DualityInstance::sphere(1)
                .with_chords(chords)
                .with_homology(dims)
                .with_flags(false, true);
            (
                "Legendrian knot in R^3 with nine Reeb chords, Z2 coefficients",
                Payload::Dga(dga),
                Some(inst),
            )
        }
        "flying-saucer" => {
            let dga = flying_saucer(n, CoefficientRing::Z2)?;
            let dims = linear_part(&dga)?.homology_field()?.dims();
            let inst = DualityInstance::sphere(n)
                .with_chords(BTreeMap::from([(n, 1)]))
                .with_homology(dims)
                .with_flags(true, true);
            (
                "standard Legendrian n-sphere with a single Reeb chord",
                Payload::Dga(dga),
                Some(inst),
            )
        }
        "stabilized-spheres" => (
            "two flying saucers joined by a tube (chord counts only)",
            Payload::Instance(stabilized_spheres_counts(n)?),
            None,
        ),
        "super-spun" => {
            let (dga, inst) = super_spun(p, k)?;
            ("S^p x S^k with chords in degrees k + p and k", Payload::Dga(dga), Some(inst))
        }
        "super-spun-reversed" => {
            let (dga, inst) = super_spun_reversed(p, k)?;
            ("S^p x S^k with chords in degrees k + p and p", Payload::Dga(dga), Some(inst))
        }
        "non-spun-torus" => (
            "Legendrian S^1 x S^n that is not spun (chord counts only)",
            Payload::Instance(non_spun_torus_counts(n)?),
            None,
        ),
        "flying-saucer-two-copy" => (
            "two-copy blocks of the flying saucer",
            Payload::TwoCopy(flying_saucer_two_copy(n)?),
            None,
        ),
        other => {
            return Err(Error::InvalidParameter(format!(
                "unknown fixture `{other}`; known: {}",
                FIXTURE_NAMES.join(", ")
            )))
        }
    };
    Ok(Fixture {
        name: name.to_string(),
        note,
        payload,
        instance,
    })
}

/// The augmentation used for a catalog DGA: the unique one for the knot, zero otherwise.
pub fn default_augmentation(dga: &Dga) -> Result<Augmentation> {
    if dga.ring().finite_field_order().is_some() {
        if let Some(first) = crate::augmentation::enumerate_augmentations(dga)?.into_iter().next() {
            return Ok(first);
        }
    }
    Augmentation::zero(dga)
}
