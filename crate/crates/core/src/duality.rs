//! Dimension-level consequences of the duality exact sequence
//!
//! ```text
//! ... -> H_{k+1}(L) -> H^{n-k-1}(Q) -> H_k(Q) -> H_k(L) -> H^{n-k}(Q) -> ...
//! ```
//!
//! over a field: sphere duality, the Arnold-type chord bound, feasibility of
//! the ranks `r_k` of `H_k(Q) -> H_k(L)` and deduction of Poincaré polynomials
//! from chord counts.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;

/// Betti numbers of `L`, linearized homology and chord counts, by degree.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct DualityInstance {
    pub n: i64,
    pub betti: BTreeMap<i64, usize>,
    pub homology: Option<BTreeMap<i64, usize>>,
    pub chords: Option<BTreeMap<i64, usize>>,
    pub good_dga: bool,
    pub ring_is_z2: bool,
    /// Known values `dim H_k(Q) = d`, used by [`solve_poincare`].
    pub constraints: Vec<(i64, usize)>,
}

fn get(m: &BTreeMap<i64, usize>, k: i64) -> usize {
    m.get(&k).copied().unwrap_or(0)
}

fn strip(m: BTreeMap<i64, usize>) -> BTreeMap<i64, usize> {
    m.into_iter().filter(|(_, v)| *v > 0).collect()
}

impl DualityInstance {
    pub fn new(n: i64, betti: BTreeMap<i64, usize>) -> Self {
        DualityInstance {
            n,
            betti: strip(betti),
            ..Default::default()
        }
    }

    /// A homology `n`-sphere.
    pub fn sphere(n: i64) -> Self {
        let betti = if n == 0 {
            BTreeMap::from([(0, 2)])
        } else {
            BTreeMap::from([(0, 1), (n, 1)])
        };
        DualityInstance::new(n, betti)
    }

    /// `S^a x S^b`.
    pub fn sphere_product(a: i64, b: i64) -> Self {
        let mut betti = BTreeMap::new();
        for k in [0, a, b, a + b] {
            *betti.entry(k).or_insert(0) += 1;
        }
        DualityInstance::new(a + b, betti)
    }

    pub fn with_homology(mut self, dims: BTreeMap<i64, usize>) -> Self {
        self.homology = Some(strip(dims));
        self
    }

    pub fn with_chords(mut self, counts: BTreeMap<i64, usize>) -> Self {
        self.chords = Some(strip(counts));
        self
    }

    pub fn with_flags(mut self, good_dga: bool, ring_is_z2: bool) -> Self {
        self.good_dga = good_dga;
        self.ring_is_z2 = ring_is_z2;
        self
    }

    pub fn with_constraint(mut self, degree: i64, dim: usize) -> Self {
        self.constraints.push((degree, dim));
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 0 {
            return Err(Error::InvalidParameter(format!(
                "dimension {} is negative",
                self.n
            )));
        }
        if let Some((&k, _)) = self.betti.iter().find(|(&k, &b)| b > 0 && !(0..=self.n).contains(&k)) {
            return Err(Error::InvalidParameter(format!(
                "Betti number in degree {k} outside [0, {}]",
                self.n
            )));
        }
        if get(&self.betti, 0) == 0 {
            return Err(Error::InvalidParameter(
                "a closed manifold has b_0 >= 1".to_string(),
            ));
        }
        Ok(())
    }

    fn homology_or_err(&self) -> Result<&BTreeMap<i64, usize>> {
        self.homology
            .as_ref()
            .ok_or_else(|| Error::MissingData("linearized homology dimensions".to_string()))
    }

    fn chords_or_err(&self) -> Result<&BTreeMap<i64, usize>> {
        self.chords
            .as_ref()
            .ok_or_else(|| Error::MissingData("Reeb chord counts".to_string()))
    }
}

/// `P(t) - t^{n-1} P(t^{-1}) = t^n - t^{-1}`.
pub fn sphere_duality_check(p: &LaurentPoly, n: i64) -> bool {
    p.sub(&p.reflect(n - 1)) == LaurentPoly::from_terms([(n, 1), (-1, -1)])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArnoldRow {
    pub m: i64,
    /// `c_m + c_{n-m}`.
    pub chords: usize,
    pub betti: usize,
    pub holds: bool,
}

/// `c_m + c_{n-m} >= b_m` for `0 <= m <= n`.
pub fn arnold_check(instance: &DualityInstance) -> Result<Vec<ArnoldRow>> {
    let c = instance.chords_or_err()?;
    let n = instance.n;
    Ok((0..=n)
        .map(|m| {
            let chords = get(c, m) + get(c, n - m);
            let betti = get(&instance.betti, m);
            ArnoldRow {
                m,
                chords,
                betti,
                holds: chords >= betti,
            }
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct RSolution {
    /// `r_k`, nonzero entries only.
    pub r: BTreeMap<i64, usize>,
    /// `q_k - r_k`, nonzero entries only.
    pub nonmanifold: BTreeMap<i64, usize>,
}

impl RSolution {
    pub fn r(&self, k: i64) -> usize {
        get(&self.r, k)
    }
}

/// Lists the constraints an `r`-vector violates against `q` and the instance.
///
/// Rank-exactness of the sequence over a field gives, with
/// `s_k = rank(H_k(L) -> H^{n-k}(Q))`:
///
/// * at `H_k(L)`: `b_k = r_k + s_k`, and adjointness of the two maps gives `s_k = r_{n-k}` (C2);
/// * at `H^{n-k-1}(Q)`: the part not coming from `H_{k+1}(L)` has dimension
///   `q_{n-k-1} - s_{k+1}`, and it injects into `H_k(Q)` onto the kernel of
///   `H_k(Q) -> H_k(L)`, so `q_k - r_k = q_{n-1-k} - r_{n-1-k}` (C3).
///
/// C1 bounds each rank by its source and target, C4 is the statement that
/// for a good DGA over `Z2` the map vanishes in degree 0 and is onto in degree `n`.
pub fn check_r_vector(
    instance: &DualityInstance,
    q: &BTreeMap<i64, usize>,
    r: &BTreeMap<i64, usize>,
) -> Vec<String> {
    let n = instance.n;
    let b = &instance.betti;
    let mut out = Vec::new();
    let mut degrees: BTreeSet<i64> = (0..=n).collect();
    for &k in q.keys().chain(r.keys()).chain(b.keys()) {
        degrees.extend([k, n - k, n - 1 - k]);
    }
    for &k in &degrees {
        let rk = get(r, k);
        if rk > get(q, k).min(get(b, k)) {
            out.push(format!("C1 at {k}: r = {rk} > min(q, b)"));
        }
        if get(b, k) != rk + get(r, n - k) {
            out.push(format!("C2 at {k}: b = {} != r_k + r_(n-k)", get(b, k)));
        }
        let left = get(q, k) as i64 - rk as i64;
        let right = get(q, n - 1 - k) as i64 - get(r, n - 1 - k) as i64;
        if left != right {
            out.push(format!("C3 at {k}: {left} != {right}"));
        }
    }
    if instance.good_dga && instance.ring_is_z2 {
        if get(r, 0) != 0 {
            out.push("C4: r_0 != 0".to_string());
        }
        if get(r, n) != get(b, n) {
            out.push("C4: r_n != b_n".to_string());
        }
    }
    out
}

/// Every `r`-vector consistent with the exact sequence, in lexicographic order.
pub fn feasibility_solve(instance: &DualityInstance) -> Result<Vec<RSolution>> {
    let q = instance.homology_or_err()?;
    feasibility_for(instance, q)
}

fn feasibility_for(instance: &DualityInstance, q: &BTreeMap<i64, usize>) -> Result<Vec<RSolution>> {
    instance.validate()?;
    let n = instance.n;
    let b = &instance.betti;
    // r_k vanishes outside [0, n] since b_k does; C2 fixes r_{n-k} from r_k.
    let free: Vec<i64> = (0..=n).filter(|k| 2 * k <= n).collect();
    let mut out = Vec::new();
    let mut r = BTreeMap::new();
    enumerate_r(instance, q, b, &free, 0, &mut r, &mut out);
    Ok(out)
}

fn enumerate_r(
    instance: &DualityInstance,
    q: &BTreeMap<i64, usize>,
    b: &BTreeMap<i64, usize>,
    free: &[i64],
    depth: usize,
    r: &mut BTreeMap<i64, usize>,
    out: &mut Vec<RSolution>,
) {
    let n = instance.n;
    if depth == free.len() {
        let r_nonzero = strip(r.clone());
        if check_r_vector(instance, q, &r_nonzero).is_empty() {
            let nonmanifold = strip(
                q.iter()
                    .map(|(&k, &d)| (k, d - get(&r_nonzero, k)))
                    .collect(),
            );
            out.push(RSolution {
                r: r_nonzero,
                nonmanifold,
            });
        }
        return;
    }
    let k = free[depth];
    let bk = get(b, k);
    for rk in 0..=get(q, k).min(bk) {
        let partner = n - k;
        if partner == k {
            if 2 * rk != bk {
                continue;
            }
            r.insert(k, rk);
        } else {
            let rp = bk - rk;
            if get(b, partner) != bk || rp > get(q, partner) {
                continue;
            }
            r.insert(k, rk);
            r.insert(partner, rp);
        }
        enumerate_r(instance, q, b, free, depth + 1, r, out);
        r.remove(&k);
        r.remove(&partner);
    }
}

/// Poincaré polynomials compatible with the chord counts, the constraints
/// (those of the instance plus `constraints`) and the exact sequence.
pub fn solve_poincare(
    instance: &DualityInstance,
    constraints: &[(i64, usize)],
) -> Result<Vec<LaurentPoly>> {
    let chords = instance.chords_or_err()?;
    if instance.betti.is_empty() {
        return Err(Error::MissingData("Betti numbers of L".to_string()));
    }
    let all: Vec<(i64, usize)> = instance
        .constraints
        .iter()
        .chain(constraints)
        .copied()
        .collect();
    let mut found = BTreeSet::new();
    let Some((&lo, _)) = chords.iter().next() else {
        let q = BTreeMap::new();
        if all.iter().all(|&(_, d)| d == 0) && !feasibility_for(instance, &q)?.is_empty() {
            found.insert(LaurentPoly::zero());
        }
        return Ok(found.into_iter().collect());
    };
    let hi = *chords.keys().next_back().expect("nonempty");
    let mut ranks = BTreeMap::new();
    let mut candidates = Vec::new();
    enumerate_ranks(chords, lo, hi, lo + 1, &mut ranks, &mut candidates);
    for q in candidates {
        if all.iter().any(|&(k, d)| get(&q, k) != d) {
            continue;
        }
        if !feasibility_for(instance, &q)?.is_empty() {
            found.insert(LaurentPoly::from_terms(
                q.iter().map(|(&k, &d)| (k, d as i64)),
            ));
        }
    }
    Ok(found.into_iter().collect())
}

// ranks[k] is the rank of d : C_k -> C_{k-1}; chosen in increasing k, so q_{k-1}
// is fixed once rank_k is.
fn enumerate_ranks(
    c: &BTreeMap<i64, usize>,
    lo: i64,
    hi: i64,
    k: i64,
    ranks: &mut BTreeMap<i64, usize>,
    out: &mut Vec<BTreeMap<i64, usize>>,
) {
    let q_of = |ranks: &BTreeMap<i64, usize>, j: i64| {
        get(c, j) as i64 - get(ranks, j) as i64 - get(ranks, j + 1) as i64
    };
    if k > hi {
        if q_of(ranks, hi) >= 0 {
            out.push(strip(
                (lo..=hi).map(|j| (j, q_of(ranks, j) as usize)).collect(),
            ));
        }
        return;
    }
    let bound = get(c, k).min(get(c, k - 1));
    for rank in 0..=bound {
        ranks.insert(k, rank);
        if q_of(ranks, k - 1) >= 0 {
            enumerate_ranks(c, lo, hi, k + 1, ranks, out);
        }
    }
    ranks.remove(&k);
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ManifoldRow {
    pub degree: i64,
    pub manifold: usize,
    pub nonmanifold: usize,
    /// `n - 1 - k`, where the dual nonmanifold part lives.
    pub partner: i64,
    pub partner_nonmanifold: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AnnihilatorRow {
    pub degree: i64,
    pub dim: usize,
    pub partner_dim: usize,
    pub betti: usize,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ManifoldClassReport {
    pub rows: Vec<ManifoldRow>,
    /// `dim V_k + dim V_{n-k} = b_k`, where `V_k` is the image of `H_k(Q)` in `H_k(L)`.
    pub annihilator: Vec<AnnihilatorRow>,
}

impl ManifoldClassReport {
    pub fn holds(&self) -> bool {
        self.annihilator.iter().all(|r| r.holds)
            && self
                .rows
                .iter()
                .all(|r| r.nonmanifold == r.partner_nonmanifold)
    }
}

pub fn manifold_class_report(solution: &RSolution, instance: &DualityInstance) -> ManifoldClassReport {
    let n = instance.n;
    let degrees: BTreeSet<i64> = solution
        .r
        .keys()
        .chain(solution.nonmanifold.keys())
        .copied()
        .collect();
    let rows = degrees
        .iter()
        .map(|&k| ManifoldRow {
            degree: k,
            manifold: solution.r(k),
            nonmanifold: get(&solution.nonmanifold, k),
            partner: n - 1 - k,
            partner_nonmanifold: get(&solution.nonmanifold, n - 1 - k),
        })
        .collect();
    let annihilator = (0..=n)
        .filter(|&k| get(&instance.betti, k) > 0 || solution.r(k) > 0)
        .map(|k| {
            let dim = solution.r(k);
            let partner_dim = solution.r(n - k);
            let betti = get(&instance.betti, k);
            AnnihilatorRow {
                degree: k,
                dim,
                partner_dim,
                betti,
                holds: dim + partner_dim == betti,
            }
        })
        .collect();
    ManifoldClassReport { rows, annihilator }
}
