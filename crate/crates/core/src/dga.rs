//! The free graded algebra on Reeb chords with its differential.

use std::collections::HashMap;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::grading::GradingGroup;
use crate::poly::{NoncommPoly, Word};
use crate::ring::{format_scalar, CoefficientRing, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    /// Reduced in the owning grading group.
    pub degree: i64,
    /// Chord length, when known. Always positive.
    pub action: Option<Scalar>,
}

/// Ordered generator list with unique names.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GeneratorTable {
    gens: Vec<Generator>,
    index: HashMap<String, usize>,
}

impl GeneratorTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, name: &str, degree: i64, action: Option<Scalar>) -> Result<usize> {
        if self.index.contains_key(name) {
            return Err(Error::DuplicateGenerator(name.to_string()));
        }
        if let Some(a) = &action {
            if !a.is_positive() {
                return Err(Error::InvalidParameter(format!(
                    "action of `{name}` must be positive, got {a}"
                )));
            }
        }
        let i = self.gens.len();
        self.gens.push(Generator {
            name: name.to_string(),
            degree,
            action,
        });
        self.index.insert(name.to_string(), i);
        Ok(i)
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&Generator> {
        self.gens.get(i)
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn iter(&self) -> impl Iterator<Item = &Generator> {
        self.gens.iter()
    }

    pub fn names(&self) -> Vec<String> {
        self.gens.iter().map(|g| g.name.clone()).collect()
    }

    /// Formats a polynomial with generator names: `1 + q7 + q7*q6*q5`.
    pub fn format_poly(&self, p: &NoncommPoly) -> String {
        if p.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (w, c)) in p.terms().enumerate() {
            let negative = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || w.is_empty() {
                factors.push(format_scalar(&mag));
            }
            factors.extend(
                w.letters()
                    .iter()
                    .map(|&l| self.gens.get(l).map_or_else(|| format!("#{l}"), |g| g.name.clone())),
            );
            out.push_str(&factors.join("*"));
        }
        out
    }

    pub fn format_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.letters()
            .iter()
            .map(|&l| self.gens.get(l).map_or_else(|| format!("#{l}"), |g| g.name.clone()))
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// A differential graded algebra `(A, d)` on a finite generator set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dga {
    ring: CoefficientRing,
    grading: GradingGroup,
    generators: GeneratorTable,
    differential: Vec<NoncommPoly>,
    ambient_dim: Option<i64>,
}

impl Dga {
    /// Assembles a DGA. Structural problems (bad indices, sign conventions)
    /// are errors; degree and `d^2` problems are left to [`Dga::validate`].
    pub fn new(
        ring: CoefficientRing,
        grading: GradingGroup,
        generators: GeneratorTable,
        differential: Vec<NoncommPoly>,
        ambient_dim: Option<i64>,
    ) -> Result<Self> {
        if !ring.is_char_two() && !grading.has_parity() {
            return Err(Error::OddGradingSigns {
                ring,
                order: grading.order(),
            });
        }
        if differential.len() != generators.len() {
            return Err(Error::Dimension(format!(
                "{} generators but {} differentials",
                generators.len(),
                differential.len()
            )));
        }
        for (i, g) in generators.iter().enumerate() {
            if grading.reduce(g.degree) != g.degree {
                return Err(Error::Grading(format!(
                    "degree {} of `{}` is not reduced in {grading}",
                    g.degree, g.name
                )));
            }
            let d = &differential[i];
            if d.ring() != ring {
                return Err(Error::InvalidParameter(format!(
                    "differential of `{}` has coefficients in {} instead of {ring}",
                    g.name,
                    d.ring()
                )));
            }
            if let Some(m) = d.max_letter() {
                if m >= generators.len() {
                    return Err(Error::GeneratorIndex(m));
                }
            }
        }
        Ok(Dga {
            ring,
            grading,
            generators,
            differential,
            ambient_dim,
        })
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn grading(&self) -> GradingGroup {
        self.grading
    }

    pub fn generators(&self) -> &GeneratorTable {
        &self.generators
    }

    pub fn ambient_dim(&self) -> Option<i64> {
        self.ambient_dim
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn degree_of(&self, i: usize) -> i64 {
        self.generators.gens[i].degree
    }

    /// Differential of the `i`-th generator.
    pub fn d(&self, i: usize) -> &NoncommPoly {
        &self.differential[i]
    }

    pub fn differential(&self) -> &[NoncommPoly] {
        &self.differential
    }

    pub fn word_degree(&self, w: &Word) -> i64 {
        self.grading
            .reduce(w.letters().iter().map(|&l| self.degree_of(l)).sum())
    }

    /// Same algebra with a replaced differential (used by conjugation).
    pub fn with_differential(&self, differential: Vec<NoncommPoly>) -> Result<Dga> {
        Dga::new(
            self.ring,
            self.grading,
            self.generators.clone(),
            differential,
            self.ambient_dim,
        )
    }

    /// Reinterprets the coefficients in another ring (reduction mod m, or Z into Q).
    pub fn change_ring(&self, ring: CoefficientRing) -> Result<Dga> {
        let diff = self
            .differential
            .iter()
            .map(|p| {
                let terms: Result<Vec<_>> = p
                    .terms()
                    .map(|(w, c)| Ok((w.clone(), ring.element(c.clone())?)))
                    .collect();
                Ok(NoncommPoly::from_terms(ring, terms?))
            })
            .collect::<Result<Vec<_>>>()?;
        Dga::new(ring, self.grading, self.generators.clone(), diff, self.ambient_dim)
    }

    /// Extends the differential to `p` by linearity and the graded Leibniz
    /// rule `d(ab) = (da)b + (-1)^|a| a(db)`.
    pub fn apply_differential(&self, p: &NoncommPoly) -> Result<NoncommPoly> {
        if let Some(m) = p.max_letter() {
            if m >= self.len() {
                return Err(Error::GeneratorIndex(m));
            }
        }
        let ring = self.ring;
        let mut out = NoncommPoly::zero(ring);
        for (w, c) in p.terms() {
            let letters = w.letters();
            let mut prefix_degree = 0i64;
            for (i, &l) in letters.iter().enumerate() {
                let dl = &self.differential[l];
                if !dl.is_zero() {
                    let odd = !ring.is_char_two() && prefix_degree.rem_euclid(2) == 1;
                    let coeff = ring.mul(c, &ring.sign(odd));
                    let left = Word(letters[..i].to_vec());
                    let right = Word(letters[i + 1..].to_vec());
                    for (mid, cm) in dl.terms() {
                        out.add_term(left.concat(mid).concat(&right), ring.mul(&coeff, cm));
                    }
                }
                prefix_degree += self.degree_of(l);
            }
        }
        Ok(out)
    }

    pub fn validate(&self) -> ValidityReport {
        let mut issues = Vec::new();
        for (i, g) in self.generators.iter().enumerate() {
            let target = self.grading.reduce(g.degree - 1);
            let degree_violations: Vec<TermDegree> = self.differential[i]
                .terms()
                .filter(|(w, _)| self.word_degree(w) != target)
                .map(|(w, _)| TermDegree {
                    term: self.generators.format_word(w),
                    degree: self.word_degree(w),
                })
                .collect();
            let dd = self
                .apply_differential(&self.differential[i])
                .expect("differential letters are checked at construction");
            if !degree_violations.is_empty() || !dd.is_zero() {
                issues.push(GeneratorIssue {
                    generator: g.name.clone(),
                    index: i,
                    expected_degree: target,
                    degree_violations,
                    d_squared: (!dd.is_zero()).then(|| self.generators.format_poly(&dd)),
                });
            }
        }
        ValidityReport { issues }
    }

    /// No constant terms in any differential.
    pub fn is_good(&self) -> bool {
        self.differential.iter().all(|p| p.constant_term().is_zero())
    }

    /// Checks `l(a) > sum l(b_j)` for every word `b_1...b_k` of `d a`.
    pub fn action_check(&self) -> Result<ActionReport> {
        let actions: Vec<Scalar> = self
            .generators
            .iter()
            .map(|g| {
                g.action
                    .clone()
                    .ok_or_else(|| Error::MissingData(format!("no action for `{}`", g.name)))
            })
            .collect::<Result<_>>()?;
        let mut violations = Vec::new();
        for (i, g) in self.generators.iter().enumerate() {
            for (w, _) in self.differential[i].terms() {
                let total: Scalar = w
                    .letters()
                    .iter()
                    .fold(Scalar::zero(), |acc, &l| acc + &actions[l]);
                if actions[i] <= total {
                    violations.push(ActionViolation {
                        generator: g.name.clone(),
                        word: self.generators.format_word(w),
                        generator_action: format_scalar(&actions[i]),
                        word_action: format_scalar(&total),
                    });
                }
            }
        }
        Ok(ActionReport { violations })
    }

    pub fn format_poly(&self, p: &NoncommPoly) -> String {
        self.generators.format_poly(p)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TermDegree {
    pub term: String,
    pub degree: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GeneratorIssue {
    pub generator: String,
    pub index: usize,
    pub expected_degree: i64,
    pub degree_violations: Vec<TermDegree>,
    /// Expanded `d(d q)` when nonzero.
    pub d_squared: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidityReport {
    pub issues: Vec<GeneratorIssue>,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.issues.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ActionViolation {
    pub generator: String,
    pub word: String,
    pub generator_action: String,
    pub word_action: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ActionReport {
    pub violations: Vec<ActionViolation>,
}

impl ActionReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Incremental construction by generator name.
#[derive(Debug, Clone)]
pub struct DgaBuilder {
    ring: CoefficientRing,
    grading: GradingGroup,
    generators: GeneratorTable,
    differential: Vec<(String, Vec<(Scalar, Vec<String>)>)>,
    ambient_dim: Option<i64>,
}

impl DgaBuilder {
    pub fn new(ring: CoefficientRing, grading: GradingGroup) -> Self {
        DgaBuilder {
            ring,
            grading,
            generators: GeneratorTable::new(),
            differential: Vec::new(),
            ambient_dim: None,
        }
    }

    pub fn ambient_dim(mut self, n: i64) -> Self {
        self.ambient_dim = Some(n);
        self
    }

    pub fn generator(self, name: &str, degree: i64) -> Result<Self> {
        self.generator_with_action(name, degree, None)
    }

    pub fn generator_with_action(
        mut self,
        name: &str,
        degree: i64,
        action: Option<Scalar>,
    ) -> Result<Self> {
        let d = self.grading.reduce(degree);
        self.generators.push(name, d, action)?;
        Ok(self)
    }

    /// Sets `d name = sum coeff * word`; words are lists of generator names,
    /// the empty list is the unit.
    pub fn differential(mut self, name: &str, terms: &[(i64, &[&str])]) -> Self {
        let terms = terms
            .iter()
            .map(|(c, w)| {
                (
                    self.ring.from_int(*c),
                    w.iter().map(|s| s.to_string()).collect(),
                )
            })
            .collect();
        self.differential.push((name.to_string(), terms));
        self
    }

    pub fn build(self) -> Result<Dga> {
        let mut diff = vec![NoncommPoly::zero(self.ring); self.generators.len()];
        for (name, terms) in &self.differential {
            let i = self.generators.index_of(name)?;
            let mut p = NoncommPoly::zero(self.ring);
            for (c, w) in terms {
                let word = w
                    .iter()
                    .map(|s| self.generators.index_of(s))
                    .collect::<Result<Vec<_>>>()?;
                p.add_term(Word(word), c.clone());
            }
            diff[i] = &diff[i] + &p;
        }
        Dga::new(self.ring, self.grading, self.generators, diff, self.ambient_dim)
    }
}
