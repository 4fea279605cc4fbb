//! Augmentations, conjugation `q -> q + eps(q)` and the linearized complex.

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use crate::complex::BasedChainComplex;
use crate::dga::Dga;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::poly::{NoncommPoly, Word};
use crate::ring::{format_scalar, scalar_to_u64_mod, Scalar};

/// A graded unital algebra map to the coefficient ring, stored by generator index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Augmentation {
    labels: Vec<String>,
    values: Vec<Scalar>,
}

impl Augmentation {
    /// Checks both invariants against `dga`.
    pub fn new(dga: &Dga, values: Vec<Scalar>) -> Result<Self> {
        if values.len() != dga.len() {
            return Err(Error::Dimension(format!(
                "{} values for {} generators",
                values.len(),
                dga.len()
            )));
        }
        let ring = dga.ring();
        let values = values
            .into_iter()
            .map(|v| ring.element(v))
            .collect::<Result<Vec<_>>>()?;
        let aug = Augmentation {
            labels: dga.generators().names(),
            values,
        };
        aug.check(dga)?;
        Ok(aug)
    }

    /// Unchecked; for constructions whose validity follows from the input.
    pub(crate) fn from_parts(labels: Vec<String>, values: Vec<Scalar>) -> Self {
        Augmentation { labels, values }
    }

    pub fn zero(dga: &Dga) -> Result<Self> {
        Augmentation::new(dga, vec![dga.ring().zero(); dga.len()])
    }

    /// Values given by name; unnamed generators go to zero.
    pub fn from_assignments(dga: &Dga, assignments: &[(&str, Scalar)]) -> Result<Self> {
        let mut values = vec![dga.ring().zero(); dga.len()];
        for (name, v) in assignments {
            values[dga.generators().index_of(name)?] = v.clone();
        }
        Augmentation::new(dga, values)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn value(&self, i: usize) -> &Scalar {
        &self.values[i]
    }

    /// Names of the generators with a nonzero value, in table order.
    pub fn support(&self) -> Vec<&str> {
        self.labels
            .iter()
            .zip(&self.values)
            .filter(|(_, v)| *v != &Scalar::from_integer(0.into()))
            .map(|(l, _)| l.as_str())
            .collect()
    }

    pub fn evaluate(&self, p: &NoncommPoly) -> Scalar {
        p.evaluate(&|i| self.values[i].clone())
    }

    pub fn check(&self, dga: &Dga) -> Result<()> {
        if self.values.len() != dga.len() {
            return Err(Error::Dimension(format!(
                "augmentation on {} generators used with a DGA on {}",
                self.values.len(),
                dga.len()
            )));
        }
        let ring = dga.ring();
        for (i, g) in dga.generators().iter().enumerate() {
            if g.degree != 0 && !ring.is_zero(&self.values[i]) {
                return Err(Error::InvalidAugmentation(format!(
                    "nonzero on `{}` of degree {}",
                    g.name, g.degree
                )));
            }
        }
        for (i, g) in dga.generators().iter().enumerate() {
            let v = self.evaluate(dga.d(i));
            if !ring.is_zero(&v) {
                return Err(Error::InvalidAugmentation(format!(
                    "eps(d {}) = {}",
                    g.name,
                    format_scalar(&v)
                )));
            }
        }
        Ok(())
    }
}

impl Serialize for Augmentation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_map(
            self.labels
                .iter()
                .zip(&self.values)
                .map(|(l, v)| (l, format_scalar(v))),
        )
    }
}

/// All augmentations over a prime field, in lexicographic order of the
/// values on degree-zero generators (table order, values `0..p`).
pub fn enumerate_augmentations(dga: &Dga) -> Result<Vec<Augmentation>> {
    let ring = dga.ring();
    let Some(p) = ring.finite_field_order() else {
        return Err(Error::Unsupported(format!(
            "augmentations can only be enumerated over a finite field, not {ring}"
        )));
    };
    let free: Vec<usize> = (0..dga.len()).filter(|&i| dga.degree_of(i) == 0).collect();
    let mut position = vec![None; dga.len()];
    for (k, &i) in free.iter().enumerate() {
        position[i] = Some(k);
    }
    // Equations eps(d q) = 0 over u64 residues. Words through a generator of
    // nonzero degree vanish under any augmentation and are dropped.
    let equations: Vec<Equation> = (0..dga.len())
        .map(|i| Equation {
            terms: dga
                .d(i)
                .terms()
                .filter_map(|(w, c)| {
                    let vars: Option<Vec<usize>> =
                        w.letters().iter().map(|&l| position[l]).collect();
                    vars.map(|v| (scalar_to_u64_mod(c, p), v))
                })
                .collect(),
        })
        .collect();
    // Each equation is tested as soon as its last variable is assigned.
    let mut checks: Vec<Vec<usize>> = vec![Vec::new(); free.len() + 1];
    for (q, eq) in equations.iter().enumerate() {
        let last = eq.terms.iter().flat_map(|(_, v)| v.iter().copied()).max();
        checks[last.map_or(0, |k| k + 1)].push(q);
    }
    let search = Search {
        p,
        equations,
        checks,
    };
    let mut assignment = vec![0u64; free.len()];
    let mut found = Vec::new();
    if search.holds(&assignment, 0) {
        search.descend(0, &mut assignment, &mut found);
    }
    let labels = dga.generators().names();
    Ok(found
        .into_iter()
        .map(|a| {
            let mut values = vec![ring.zero(); dga.len()];
            for (k, &i) in free.iter().enumerate() {
                values[i] = ring.from_int(a[k] as i64);
            }
            Augmentation {
                labels: labels.clone(),
                values,
            }
        })
        .collect())
}

struct Equation {
    terms: Vec<(u64, Vec<usize>)>,
}

struct Search {
    p: u64,
    equations: Vec<Equation>,
    checks: Vec<Vec<usize>>,
}

impl Search {
    fn holds(&self, a: &[u64], level: usize) -> bool {
        self.checks[level].iter().all(|&q| {
            let mut acc = 0u64;
            for (c, vars) in &self.equations[q].terms {
                let mut t = *c;
                for &v in vars {
                    t = (t as u128 * a[v] as u128 % self.p as u128) as u64;
                }
                acc = ((acc as u128 + t as u128) % self.p as u128) as u64;
            }
            acc == 0
        })
    }

    fn descend(&self, depth: usize, a: &mut Vec<u64>, found: &mut Vec<Vec<u64>>) {
        if depth == a.len() {
            found.push(a.clone());
            return;
        }
        for v in 0..self.p {
            a[depth] = v;
            if self.holds(a, depth + 1) {
                self.descend(depth + 1, a, found);
            }
        }
        a[depth] = 0;
    }
}

/// The DGA with differential `d^eps = phi o d o phi^-1` where `phi(q) = q + eps(q)`;
/// concretely every letter of `d q` is replaced by `q + eps(q)`.
pub fn conjugate(dga: &Dga, eps: &Augmentation) -> Result<Dga> {
    eps.check(dga)?;
    let ring = dga.ring();
    let image = |l: usize| {
        let mut p = NoncommPoly::generator(ring, l);
        p.add_term(Word::unit(), eps.values[l].clone());
        p
    };
    let diff = dga
        .differential()
        .iter()
        .map(|d| d.substitute(&image))
        .collect();
    dga.with_differential(diff)
}

/// `(Q, d_1^eps)`: generators as basis, word-length-one part of the conjugated differential.
pub fn linearize(dga: &Dga, eps: &Augmentation) -> Result<BasedChainComplex> {
    let conj = conjugate(dga, eps)?;
    linear_part(&conj)
}

/// Word-length-one part of a good DGA's differential as a chain complex.
pub fn linear_part(dga: &Dga) -> Result<BasedChainComplex> {
    if !dga.is_good() {
        return Err(Error::InvalidAugmentation(
            "the differential has constant terms".to_string(),
        ));
    }
    let n = dga.len();
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for (w, c) in dga.d(i).component(1).terms() {
            m.set(w.letters()[0], i, c.clone());
        }
    }
    let basis = dga
        .generators()
        .iter()
        .map(|g| (g.name.clone(), g.degree))
        .collect();
    BasedChainComplex::new(dga.ring(), dga.grading(), basis, m)
}

/// Linearized boundary as readable strings, e.g. `q3 -> q8 + q7`.
pub fn describe_boundary(c: &BasedChainComplex) -> BTreeMap<String, String> {
    let ring = c.ring();
    let mut out = BTreeMap::new();
    for (j, b) in c.basis().iter().enumerate() {
        let mut terms = Vec::new();
        for (i, t) in c.basis().iter().enumerate() {
            let v = c.boundary().get(i, j);
            if ring.is_zero(v) {
                continue;
            }
            if *v == ring.one() {
                terms.push(t.label.clone());
            } else {
                terms.push(format!("{}*{}", format_scalar(v), t.label));
            }
        }
        let rhs = if terms.is_empty() {
            "0".to_string()
        } else {
            terms.join(" + ")
        };
        out.insert(b.label.clone(), rhs);
    }
    out
}
