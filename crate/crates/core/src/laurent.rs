//! Laurent polynomials with integer coefficients, used for Poincaré polynomials.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

/// `sum_k c_k t^k`; zero coefficients are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(degree: i64, coeff: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(degree, coeff);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut p = Self::zero();
        for (d, c) in terms {
            p.add_term(d, c);
        }
        p
    }

    pub fn add_term(&mut self, degree: i64, coeff: i64) {
        let e = self.coeffs.entry(degree).or_insert(0);
        *e += coeff;
        if *e == 0 {
            self.coeffs.remove(&degree);
        }
    }

    pub fn coefficient(&self, degree: i64) -> i64 {
        self.coeffs.get(&degree).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.coeffs.iter().map(|(&d, &c)| (d, c))
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.coeffs.values().all(|&c| c >= 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (d, c) in other.terms() {
            out.add_term(d, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (d, c) in other.terms() {
            out.add_term(d, -c);
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, ca) in self.terms() {
            for (b, cb) in other.terms() {
                out.add_term(a + b, ca * cb);
            }
        }
        out
    }

    /// `t^shift * P(t^{-1})`.
    pub fn reflect(&self, shift: i64) -> Self {
        Self::from_terms(self.terms().map(|(d, c)| (shift - d, c)))
    }

    /// Value at `t = -1`.
    pub fn alternating_sum(&self) -> i64 {
        self.terms()
            .map(|(d, c)| if d.rem_euclid(2) == 0 { c } else { -c })
            .sum()
    }
}

impl fmt::Display for LaurentPoly {
    /// Degree-ascending, e.g. `t^-2 + t + 2t^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (d, c)) in self.terms().enumerate() {
            let mag = c.abs();
            if k == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if c < 0 { " - " } else { " + " })?;
            }
            let var = match d {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{d}"),
            };
            match (mag, var.is_empty()) {
                (m, true) => write!(f, "{m}")?,
                (1, false) => write!(f, "{var}")?,
                (m, false) => write!(f, "{m}{var}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_format() {
        let p = LaurentPoly::from_terms([(-2, 1), (1, 1), (2, 1)]);
        assert_eq!(p.to_string(), "t^-2 + t + t^2");
        let q = LaurentPoly::from_terms([(0, 1), (3, 2), (4, 1)]);
        assert_eq!(q.to_string(), "1 + 2t^3 + t^4");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        assert_eq!(LaurentPoly::from_terms([(-1, -1), (2, 1)]).to_string(), "-t^-1 + t^2");
    }

    #[test]
    fn product_with_one_plus_t() {
        let p = LaurentPoly::from_terms([(-2, 1), (1, 1), (2, 1)]);
        let s = LaurentPoly::from_terms([(0, 1), (1, 1)]);
        let expected = LaurentPoly::from_terms([(-2, 1), (-1, 1), (1, 1), (2, 2), (3, 1)]);
        assert_eq!(p.mul(&s), expected);
    }
}
