//! Grading groups, reduced degrees and the index formulas for moduli spaces.

use std::fmt;

use num_integer::Integer;
use serde::Serialize;

/// `Z` (order 0) or the cyclic group `Z/N`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct GradingGroup {
    order: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    provenance: Option<Provenance>,
}

/// Data the cyclic order was derived from: the greatest divisor `g` of the
/// first Chern class and the Maslov number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Provenance {
    pub divisor: u64,
    pub maslov: u64,
}

impl GradingGroup {
    pub const Z: GradingGroup = GradingGroup {
        order: 0,
        provenance: None,
    };

    pub fn cyclic(order: u64) -> Self {
        GradingGroup {
            order,
            provenance: None,
        }
    }

    /// Grading group `Z/lcm(2g, m)`, where an lcm with a zero argument is the
    /// other argument (so `g = m = 0` gives `Z`).
    pub fn from_framing(divisor: u64, maslov: u64) -> Self {
        let two_g = 2 * divisor;
        let order = match (two_g, maslov) {
            (0, x) | (x, 0) => x,
            (a, b) => a.lcm(&b),
        };
        GradingGroup {
            order,
            provenance: Some(Provenance { divisor, maslov }),
        }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn provenance(&self) -> Option<Provenance> {
        self.provenance
    }

    pub fn is_integral(&self) -> bool {
        self.order == 0
    }

    /// Canonical representative: `d` itself over `Z`, else `d mod N` in `[0, N)`.
    pub fn reduce(&self, d: i64) -> i64 {
        if self.order == 0 {
            d
        } else {
            d.mod_floor(&(self.order as i64))
        }
    }

    pub fn degree(&self, d: i64) -> Degree {
        Degree {
            value: self.reduce(d),
            group: *self,
        }
    }

    /// Whether `(-1)^d` is well defined on the group.
    pub fn has_parity(&self) -> bool {
        self.order % 2 == 0
    }
}

impl fmt::Display for GradingGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.order == 0 {
            write!(f, "Z")
        } else {
            write!(f, "Z{}", self.order)
        }
    }
}

/// A degree stored in reduced form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Degree {
    value: i64,
    group: GradingGroup,
}

impl Degree {
    pub fn value(&self) -> i64 {
        self.value
    }

    pub fn group(&self) -> GradingGroup {
        self.group
    }

    pub fn add(&self, other: i64) -> Degree {
        self.group.degree(self.value + other)
    }

    pub fn pred(&self) -> Degree {
        self.add(-1)
    }

    /// Parity of the degree; `None` when the group has odd order.
    pub fn is_odd(&self) -> Option<bool> {
        self.group.has_parity().then_some(self.value.rem_euclid(2) == 1)
    }
}

/// Convenience wrapper for [`GradingGroup::degree`].
pub fn grading_reduce(d: i64, group: GradingGroup) -> Degree {
    group.degree(d)
}

/// Degree of a chord read off a front: `nu - 1` with `nu = D - U + I`.
pub fn front_grading(down_cusps: u64, up_cusps: u64, morse_index: u64) -> i64 {
    down_cusps as i64 - up_cusps as i64 + morse_index as i64 - 1
}

/// Dimension of disks with one positive puncture at `a` and negative
/// punctures at `bs`: `|a| - sum |b_j| + mu - 1`.
pub fn expected_dim_one_positive(deg_a: i64, deg_bs: &[i64], maslov_mu: i64) -> i64 {
    deg_a - deg_bs.iter().sum::<i64>() + maslov_mu - 1
}

/// Dimension of disks with two positive punctures:
/// `|a1| + |a2| - sum |b| - sum |c| - n + 1 + mu`.
pub fn expected_dim_two_positive(
    deg_a1: i64,
    deg_a2: i64,
    deg_bs: &[i64],
    deg_cs: &[i64],
    n: i64,
    maslov_mu: i64,
) -> i64 {
    deg_a1 + deg_a2 - deg_bs.iter().sum::<i64>() - deg_cs.iter().sum::<i64>() - n + 1 + maslov_mu
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PunctureSign {
    Positive,
    Negative,
}

/// Formal dimension of a generalized disk (disk plus flow line) whose Morse
/// puncture sits at a critical point of index `morse_index`.
pub fn expected_dim_generalized(dim_m: i64, morse_index: i64, n: i64, sign: PunctureSign) -> i64 {
    match sign {
        PunctureSign::Positive => dim_m + 1 + (morse_index - n),
        PunctureSign::Negative => dim_m + 1 - morse_index,
    }
}
