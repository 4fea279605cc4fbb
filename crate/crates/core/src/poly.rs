//! Noncommutative polynomials: finite sums of words in generator indices.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use crate::ring::{CoefficientRing, Scalar};

/// A word in the generators; the empty word is the unit.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn letter(i: usize) -> Self {
        Word(vec![i])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

// Shorter words first, then lexicographic; keeps word-length components contiguous.
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Element of the free unital algebra. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NoncommPoly {
    ring: CoefficientRing,
    terms: BTreeMap<Word, Scalar>,
}

impl NoncommPoly {
    pub fn zero(ring: CoefficientRing) -> Self {
        NoncommPoly {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: CoefficientRing) -> Self {
        NoncommPoly::monomial(ring, ring.one(), Word::unit())
    }

    pub fn constant(ring: CoefficientRing, c: Scalar) -> Self {
        NoncommPoly::monomial(ring, c, Word::unit())
    }

    pub fn generator(ring: CoefficientRing, index: usize) -> Self {
        NoncommPoly::monomial(ring, ring.one(), Word::letter(index))
    }

    pub fn monomial(ring: CoefficientRing, c: Scalar, word: Word) -> Self {
        let mut p = NoncommPoly::zero(ring);
        p.add_term(word, c);
        p
    }

    pub fn from_terms(ring: CoefficientRing, terms: impl IntoIterator<Item = (Word, Scalar)>) -> Self {
        let mut p = NoncommPoly::zero(ring);
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn ring(&self) -> CoefficientRing {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, word: &Word) -> Scalar {
        self.terms.get(word).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&Word::unit())
    }

    /// Adds `c * word`, dropping the term if it cancels.
    pub fn add_term(&mut self, word: Word, c: Scalar) {
        let c = self.ring.reduce(c);
        if self.ring.is_zero(&c) {
            return;
        }
        let ring = self.ring;
        let entry = self.terms.entry(word);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = ring.add(o.get(), &c);
                if ring.is_zero(&sum) {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn scale(&self, c: &Scalar) -> NoncommPoly {
        NoncommPoly::from_terms(
            self.ring,
            self.terms
                .iter()
                .map(|(w, v)| (w.clone(), self.ring.mul(c, v))),
        )
    }

    /// Largest word length present, `None` for zero.
    pub fn max_word_length(&self) -> Option<usize> {
        self.terms.keys().map(Word::len).max()
    }

    /// Splits into homogeneous word-length pieces; only nonzero pieces appear.
    pub fn word_length_components(&self) -> BTreeMap<usize, NoncommPoly> {
        let mut out: BTreeMap<usize, NoncommPoly> = BTreeMap::new();
        for (w, c) in &self.terms {
            out.entry(w.len())
                .or_insert_with(|| NoncommPoly::zero(self.ring))
                .add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn component(&self, length: usize) -> NoncommPoly {
        NoncommPoly::from_terms(
            self.ring,
            self.terms
                .iter()
                .filter(|(w, _)| w.len() == length)
                .map(|(w, c)| (w.clone(), c.clone())),
        )
    }

    /// Algebra map determined by letter images; used for `q -> q + eps(q)`.
    pub fn substitute(&self, image: &dyn Fn(usize) -> NoncommPoly) -> NoncommPoly {
        let mut out = NoncommPoly::zero(self.ring);
        for (w, c) in &self.terms {
            let mut prod = NoncommPoly::constant(self.ring, c.clone());
            for &l in w.letters() {
                prod = &prod * &image(l);
            }
            out = &out + &prod;
        }
        out
    }

    /// Evaluates under a letter valuation into the ring.
    pub fn evaluate(&self, value: &dyn Fn(usize) -> Scalar) -> Scalar {
        let ring = self.ring;
        let mut acc = ring.zero();
        for (w, c) in &self.terms {
            let mut t = c.clone();
            for &l in w.letters() {
                t = ring.mul(&t, &value(l));
                if ring.is_zero(&t) {
                    break;
                }
            }
            acc = ring.add(&acc, &t);
        }
        acc
    }

    /// Largest letter index appearing in any term.
    pub fn max_letter(&self) -> Option<usize> {
        self.terms.keys().flat_map(|w| w.letters().iter().copied()).max()
    }
}

impl Add for &NoncommPoly {
    type Output = NoncommPoly;
    fn add(self, rhs: &NoncommPoly) -> NoncommPoly {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Add for NoncommPoly {
    type Output = NoncommPoly;
    fn add(self, rhs: NoncommPoly) -> NoncommPoly {
        &self + &rhs
    }
}

impl Neg for &NoncommPoly {
    type Output = NoncommPoly;
    fn neg(self) -> NoncommPoly {
        self.scale(&self.ring.from_int(-1))
    }
}

impl Sub for &NoncommPoly {
    type Output = NoncommPoly;
    fn sub(self, rhs: &NoncommPoly) -> NoncommPoly {
        self + &(-rhs)
    }
}

impl Mul for &NoncommPoly {
    type Output = NoncommPoly;
    fn mul(self, rhs: &NoncommPoly) -> NoncommPoly {
        let ring = self.ring;
        let mut out = NoncommPoly::zero(ring);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a.concat(b), ring.mul(ca, cb));
            }
        }
        out
    }
}

impl Mul for NoncommPoly {
    type Output = NoncommPoly;
    fn mul(self, rhs: NoncommPoly) -> NoncommPoly {
        &self * &rhs
    }
}
