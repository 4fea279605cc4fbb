//! Seeded random inputs for property checks: complexes, chain maps,
//! two-copy data, small DGAs and duality instances.
//!
//! Complexes are built with `d^2 = 0` by construction: each degree is split
//! into sources and targets, the boundary only sends sources to targets one
//! degree down, and the basis is then scrambled with elementary moves.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

use crate::complex::BasedChainComplex;
use crate::dga::{Dga, DgaBuilder};
use crate::duality::DualityInstance;
use crate::error::{Error, Result};
use crate::grading::GradingGroup;
use crate::linalg;
use crate::matrix::Matrix;
use crate::ring::{CoefficientRing, Scalar};
use crate::two_copy::{build_dual_block, MorseComplex, TwoCopyData};

pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Shape of a random complex.
#[derive(Debug, Clone, Copy)]
pub struct ComplexShape {
    pub min_degree: i64,
    pub max_degree: i64,
    pub max_per_degree: usize,
    /// Entries are drawn from `[-bound, bound]` (reduced into the ring).
    pub bound: i64,
}

impl Default for ComplexShape {
    fn default() -> Self {
        ComplexShape {
            min_degree: -3,
            max_degree: 4,
            max_per_degree: 6,
            bound: 3,
        }
    }
}

fn random_scalar(rng: &mut Rng8, ring: CoefficientRing, bound: i64) -> Scalar {
    ring.from_int(rng.gen_range(-bound..=bound))
}

/// Conjugates `m` by `x_i -> x_i + c x_j` inside each degree, `moves` times,
/// skipping moves that push an entry outside `[-bound, bound]`.
fn scramble(
    rng: &mut Rng8,
    ring: CoefficientRing,
    degrees: &[i64],
    m: &mut Matrix,
    moves: usize,
    bound: i64,
) {
    let n = degrees.len();
    if n < 2 {
        return;
    }
    let fits = |m: &Matrix| {
        m.nonzero_entries()
            .all(|(_, _, v)| v.is_integer() && v.to_integer().magnitude() <= &num_bigint::BigUint::from(bound as u64))
    };
    for _ in 0..moves {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        if i == j || degrees[i] != degrees[j] {
            continue;
        }
        let c = if rng.gen_bool(0.5) { ring.one() } else { ring.neg(&ring.one()) };
        // New basis e'_j = e_j + c e_i: column j += c column i, row i -= c row j.
        let mut next = m.clone();
        for r in 0..n {
            let v = ring.add(next.get(r, j), &ring.mul(&c, next.get(r, i)));
            next.set(r, j, v);
        }
        for col in 0..n {
            let v = ring.sub(next.get(i, col), &ring.mul(&c, next.get(j, col)));
            next.set(i, col, v);
        }
        if fits(&next) {
            *m = next;
        }
    }
}

/// A random complex over `ring` with at most `max_per_degree` generators in
/// each degree of `[min_degree, max_degree]`, graded by `Z`.
pub fn random_complex(rng: &mut Rng8, ring: CoefficientRing, shape: ComplexShape) -> BasedChainComplex {
    let mut basis = Vec::new();
    let mut is_source = Vec::new();
    for k in shape.min_degree..=shape.max_degree {
        let count = rng.gen_range(0..=shape.max_per_degree);
        for i in 0..count {
            let sign = if k < 0 { "m" } else { "" };
            basis.push((format!("x{sign}{}_{i}", k.abs()), k));
            is_source.push(rng.gen_bool(0.5));
        }
    }
    let n = basis.len();
    let mut m = Matrix::zeros(n, n);
    for j in 0..n {
        if !is_source[j] {
            continue;
        }
        for i in 0..n {
            if !is_source[i] && basis[i].1 == basis[j].1 - 1 && rng.gen_bool(0.5) {
                m.set(i, j, random_scalar(rng, ring, shape.bound));
            }
        }
    }
    let degrees: Vec<i64> = basis.iter().map(|b| b.1).collect();
    scramble(rng, ring, &degrees, &mut m, 3 * n, shape.bound);
    BasedChainComplex::new(ring, GradingGroup::Z, basis, m).expect("squares to zero by construction")
}

/// Positions `(target, source)` allowed for a map of degree `shift`.
fn positions(source: &BasedChainComplex, target: &BasedChainComplex, shift: i64) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (j, s) in source.basis().iter().enumerate() {
        for (i, t) in target.basis().iter().enumerate() {
            if t.degree == s.degree + shift {
                out.push((i, j));
            }
        }
    }
    out
}

/// Solves `op(f) = rhs` for `f : source -> target` of degree `shift`, with
/// `op` linear. Returns a particular solution and a kernel basis.
fn solve_linear_map(
    ring: CoefficientRing,
    source: &BasedChainComplex,
    target: &BasedChainComplex,
    shift: i64,
    op: &dyn Fn(&Matrix) -> Matrix,
    rhs: &Matrix,
) -> Result<Option<(Matrix, Vec<Matrix>)>> {
    let pos = positions(source, target, shift);
    let (rows, cols) = (target.len(), source.len());
    let unit = |k: usize| {
        let mut e = Matrix::zeros(rows, cols);
        e.set(pos[k].0, pos[k].1, ring.one());
        e
    };
    let images: Vec<Matrix> = (0..pos.len()).map(|k| op(&unit(k))).collect();
    let (er, ec) = rhs.shape();
    let mut a = Matrix::zeros(er * ec, pos.len());
    for (k, img) in images.iter().enumerate() {
        for (i, j, v) in img.nonzero_entries() {
            a.set(i * ec + j, k, v.clone());
        }
    }
    let b: Vec<Scalar> = (0..er * ec).map(|x| rhs.get(x / ec, x % ec).clone()).collect();
    let to_map = |x: &[Scalar]| {
        let mut f = Matrix::zeros(rows, cols);
        for (k, v) in x.iter().enumerate() {
            f.set(pos[k].0, pos[k].1, v.clone());
        }
        f
    };
    let Some(x) = linalg::solve(&a, &b, ring)? else {
        return Ok(None);
    };
    let kernel = linalg::kernel_basis(&a, ring)?;
    let basis = (0..kernel.cols()).map(|c| to_map(&kernel.column(c))).collect();
    Ok(Some((to_map(&x), basis)))
}

fn random_combination(rng: &mut Rng8, ring: CoefficientRing, base: Matrix, basis: &[Matrix]) -> Matrix {
    let mut f = base;
    for b in basis {
        let c = random_scalar(rng, ring, 2);
        if !ring.is_zero(&c) {
            f = f.add(&b.map(|v| ring.mul(v, &c)), ring);
        }
    }
    f
}

/// A random `f : source -> target` of degree `shift` with `f d_source = d_target f`.
/// Needs a field.
pub fn random_chain_map(
    rng: &mut Rng8,
    source: &BasedChainComplex,
    target: &BasedChainComplex,
    shift: i64,
) -> Result<Matrix> {
    let ring = source.ring();
    let (ds, dt) = (source.boundary().clone(), target.boundary().clone());
    let op = move |f: &Matrix| f.mul(&ds, ring).sub(&dt.mul(f, ring), ring);
    let zero = Matrix::zeros(target.len(), source.len());
    let (base, basis) = solve_linear_map(ring, source, target, shift, &op, &zero)?
        .expect("zero is always a solution");
    Ok(random_combination(rng, ring, base, &basis))
}

fn random_morse(rng: &mut Rng8, ring: CoefficientRing, n: i64, max_points: usize) -> Result<MorseComplex> {
    let shape = ComplexShape {
        min_degree: 0,
        max_degree: n,
        max_per_degree: 1.max(max_points / (n as usize + 1)),
        bound: 1,
    };
    let inner = random_complex(rng, ring, shape);
    let mut points: Vec<(String, i64)> = inner
        .basis()
        .iter()
        .enumerate()
        .map(|(i, b)| (format!("m{i}"), b.degree))
        .collect();
    let mut boundary = inner.boundary().clone();
    // A closed manifold model needs a minimum and a maximum.
    for want in [0, n] {
        if !points.iter().any(|(_, k)| *k == want) {
            points.push((format!("m{}", points.len()), want));
            let mut grown = Matrix::zeros(points.len(), points.len());
            grown.place(0, 0, &boundary);
            boundary = grown;
        }
    }
    MorseComplex::new(ring, n, points, boundary)
}

/// Size limits for random two-copy data.
#[derive(Debug, Clone, Copy)]
pub struct TwoCopyShape {
    pub max_n: i64,
    /// Bound on `|Q| + |C| + |P|`.
    pub max_total: usize,
}

impl Default for TwoCopyShape {
    fn default() -> Self {
        TwoCopyShape {
            max_n: 4,
            max_total: 24,
        }
    }
}

/// Random two-copy data over `Z2` satisfying every block relation.
///
/// `Q` and the Morse complex are random, `P` is the dual of `Q`, `rho` and
/// `sigma` are random chain maps and `eta` solves
/// `eta dq + dp eta = -sigma rho`; when that has no solution `sigma` is redrawn
/// and finally set to zero.
pub fn random_two_copy(rng: &mut Rng8, shape: TwoCopyShape) -> Result<TwoCopyData> {
    let ring = CoefficientRing::Z2;
    let n = rng.gen_range(2..=shape.max_n.max(2));
    let budget = shape.max_total;
    let morse = random_morse(rng, ring, n, budget / 3)?;
    let q_room = (budget - morse.complex().len()) / 2;
    let per = 1.max(q_room / (n as usize + 2));
    let mut q = random_complex(
        rng,
        ring,
        ComplexShape {
            min_degree: -1,
            max_degree: n,
            max_per_degree: per,
            bound: 1,
        },
    );
    while q.len() > q_room {
        q = random_complex(
            rng,
            ring,
            ComplexShape {
                min_degree: -1,
                max_degree: n,
                max_per_degree: per,
                bound: 1,
            },
        );
    }
    let q = q.relabel(|l| format!("q{}", &l[1..]));
    let p = build_dual_block(&q, n)?;
    let c = morse.shifted();
    let rho = random_chain_map(rng, &q, &c, -1)?;
    let (dq, dp) = (q.boundary().clone(), p.boundary().clone());
    let eta_op = move |e: &Matrix| e.mul(&dq, ring).add(&dp.mul(e, ring), ring);
    for attempt in 0..4 {
        let sigma = if attempt < 3 {
            random_chain_map(rng, &c, &p, -1)?
        } else {
            Matrix::zeros(p.len(), c.len())
        };
        let rhs = sigma.mul(&rho, ring).neg(ring);
        if let Some((base, basis)) = solve_linear_map(ring, &q, &p, -1, &eta_op, &rhs)? {
            let eta = random_combination(rng, ring, base, &basis);
            return TwoCopyData::new(n, q, morse, p, rho, sigma, eta);
        }
    }
    unreachable!("eta = 0 solves the homogeneous system")
}

/// Perturbs one entry of `rho`, `sigma` or `eta` (respecting degrees) until a
/// block relation fails. `None` if no single-entry change does.
pub fn break_two_copy(rng: &mut Rng8, data: &TwoCopyData) -> Result<Option<TwoCopyData>> {
    let ring = data.ring();
    let mut candidates = Vec::new();
    for (which, src, tgt) in [(0, data.q(), data.c()), (1, data.c(), data.p()), (2, data.q(), data.p())] {
        for pos in positions(src, tgt, -1) {
            candidates.push((which, pos));
        }
    }
    candidates.shuffle(rng);
    for (which, (i, j)) in candidates {
        let mut maps = [data.rho().clone(), data.sigma().clone(), data.eta().clone()];
        let m = &mut maps[which];
        let v = ring.add(m.get(i, j), &ring.one());
        m.set(i, j, v);
        let [rho, sigma, eta] = maps;
        let broken = data.with_maps(rho, sigma, eta)?;
        if !broken.verify_relations().all_pass() {
            return Ok(Some(broken));
        }
    }
    Ok(None)
}

/// Random two-copy data over `Z2` whose assembled complex is acyclic.
///
/// Starts from a direct sum of acyclic pieces compatible with the block
/// filtration `Q > C > P` and the duality between `Q` and `P`:
///
/// * `u -> v` in `Q` together with `p_v -> p_u` in `P`;
/// * `x -> c` by `rho` and `c' -> p_x` by `sigma`, with `c`, `c'` critical
///   points of index `|x|` and `n - |x|`;
/// * `x -> p_y` and `y -> p_x` by `eta` when `|x| + |y| = n - 1`;
/// * `c -> c'` inside the Morse complex.
///
/// and conjugates by a random filtration-preserving basis change, acting on
/// `P` by the inverse transpose of its action on `Q`.
pub fn random_acyclic_two_copy(rng: &mut Rng8, shape: TwoCopyShape) -> Result<TwoCopyData> {
    let ring = CoefficientRing::Z2;
    let n = rng.gen_range(2..=shape.max_n.max(2));
    let mut q_deg: Vec<i64> = Vec::new();
    let mut m_idx: Vec<i64> = Vec::new();
    // Edges: (block, index) pairs, block 0 = Q, 1 = C, 2 = P (P index = Q index).
    let mut edges: Vec<((u8, usize), (u8, usize))> = Vec::new();
    let total = |q: &Vec<i64>, m: &Vec<i64>| 2 * q.len() + m.len();
    // Always one piece realizing both the minimum and the maximum.
    let mut pieces = vec![(1u8, n)];
    for _ in 0..rng.gen_range(0..6) {
        pieces.push((rng.gen_range(0..4), rng.gen_range(0..=n)));
    }
    for (kind, d) in pieces {
        let need = match kind {
            0 => 4,
            1 => 4,
            2 => 4,
            _ => 2,
        };
        if total(&q_deg, &m_idx) + need > shape.max_total {
            continue;
        }
        match kind {
            0 => {
                let u = q_deg.len();
                q_deg.extend([d, d - 1]);
                edges.push(((0, u), (0, u + 1)));
                edges.push(((2, u + 1), (2, u)));
            }
            1 => {
                let x = q_deg.len();
                q_deg.push(d);
                let c = m_idx.len();
                m_idx.extend([d, n - d]);
                edges.push(((0, x), (1, c)));
                edges.push(((1, c + 1), (2, x)));
            }
            2 => {
                let x = q_deg.len();
                if 2 * d == n - 1 && rng.gen_bool(0.5) {
                    q_deg.push(d);
                    edges.push(((0, x), (2, x)));
                } else {
                    q_deg.extend([d, n - 1 - d]);
                    edges.push(((0, x), (2, x + 1)));
                    edges.push(((0, x + 1), (2, x)));
                }
            }
            _ => {
                if d == 0 {
                    continue;
                }
                let c = m_idx.len();
                m_idx.extend([d, d - 1]);
                edges.push(((1, c), (1, c + 1)));
            }
        }
    }
    let (nq, nc) = (q_deg.len(), m_idx.len());
    let offset = |b: u8| match b {
        0 => 0,
        1 => nq,
        _ => nq + nc,
    };
    let size = 2 * nq + nc;
    let mut degrees: Vec<i64> = q_deg.clone();
    degrees.extend(m_idx.iter().map(|i| i - 1));
    degrees.extend(q_deg.iter().map(|d| n - 2 - d));
    let block_of = |i: usize| if i < nq { 0 } else if i < nq + nc { 1 } else { 2 };
    let mut d = Matrix::zeros(size, size);
    for ((sb, si), (tb, ti)) in &edges {
        d.set(offset(*tb) + ti, offset(*sb) + si, ring.one());
    }
    // The C block enters the assembled differential as -dc; over Z2 the sign is invisible.
    let mut g = Matrix::identity(size, ring);
    let mut g_inv = Matrix::identity(size, ring);
    // Left-multiplying g by (I + e_ij) and right-multiplying g_inv by (I + e_ij)^{-1} = I + e_ij.
    let apply = |g: &mut Matrix, g_inv: &mut Matrix, i: usize, j: usize| {
        for col in 0..size {
            let v = ring.add(g.get(i, col), g.get(j, col));
            g.set(i, col, v);
        }
        for row in 0..size {
            let v = ring.add(g_inv.get(row, j), g_inv.get(row, i));
            g_inv.set(row, j, v);
        }
    };
    for _ in 0..3 * size {
        if size < 2 {
            break;
        }
        let i = rng.gen_range(0..size);
        let j = rng.gen_range(0..size);
        if i == j || degrees[i] != degrees[j] || block_of(i) < block_of(j) {
            continue;
        }
        if block_of(i) == 0 && block_of(j) == 0 {
            // Q move e_ij, paired with P move e_{p_j p_i}.
            let (pi, pj) = (nq + nc + i, nq + nc + j);
            apply(&mut g, &mut g_inv, i, j);
            apply(&mut g, &mut g_inv, pj, pi);
        } else if block_of(i) == 2 && block_of(j) == 2 {
            let (qi, qj) = (i - nq - nc, j - nq - nc);
            apply(&mut g, &mut g_inv, i, j);
            apply(&mut g, &mut g_inv, qj, qi);
        } else {
            apply(&mut g, &mut g_inv, i, j);
        }
    }
    let d = g.mul(&d.mul(&g_inv, ring), ring);
    let qi: Vec<usize> = (0..nq).collect();
    let ci: Vec<usize> = (nq..nq + nc).collect();
    let pi: Vec<usize> = (nq + nc..size).collect();
    let q_basis: Vec<(String, i64)> = q_deg.iter().enumerate().map(|(i, &k)| (format!("q{i}"), k)).collect();
    let m_basis: Vec<(String, i64)> = m_idx.iter().enumerate().map(|(i, &k)| (format!("m{i}"), k)).collect();
    let q = BasedChainComplex::new(ring, GradingGroup::Z, q_basis, d.select(&qi, &qi))?;
    let morse = MorseComplex::new(ring, n, m_basis, d.select(&ci, &ci))?;
    let data = TwoCopyData::with_dual_block(
        n,
        q,
        morse,
        d.select(&ci, &qi),
        d.select(&pi, &ci),
        d.select(&pi, &qi),
    )?;
    if data.p().boundary() != &d.select(&pi, &pi) {
        return Err(Error::RelationFailure("dual block drifted from the basis change".to_string()));
    }
    Ok(data)
}

/// A DGA with `zeros` generators `x_i` of degree 0 and `ones` generators
/// `y_j` of degree 1, `d y_j` a random sum of words of length at most 3 in the
/// `x_i` (constants included) and `d x_i = 0`.
pub fn random_degree_zero_dga(rng: &mut Rng8, ring: CoefficientRing, zeros: usize, ones: usize) -> Result<Dga> {
    let xs: Vec<String> = (1..=zeros).map(|i| format!("x{i}")).collect();
    let ys: Vec<String> = (1..=ones).map(|i| format!("y{i}")).collect();
    let mut b = DgaBuilder::new(ring, GradingGroup::Z).ambient_dim(1);
    for x in &xs {
        b = b.generator(x, 0)?;
    }
    for y in &ys {
        b = b.generator(y, 1)?;
    }
    let modulus = ring.characteristic().max(2) as i64;
    for y in &ys {
        let mut terms: Vec<(i64, Vec<&str>)> = Vec::new();
        for _ in 0..rng.gen_range(1..=4) {
            let len = if zeros == 0 { 0 } else { rng.gen_range(0..=3) };
            let word: Vec<&str> = (0..len).map(|_| xs[rng.gen_range(0..zeros)].as_str()).collect();
            terms.push((rng.gen_range(1..modulus), word));
        }
        let refs: Vec<(i64, &[&str])> = terms.iter().map(|(c, w)| (*c, w.as_slice())).collect();
        b = b.differential(y, &refs);
    }
    b.build()
}

/// A valid duality instance with `q_k <= c_k` for every `k`.
pub fn random_instance(rng: &mut Rng8) -> DualityInstance {
    let n = rng.gen_range(1..=6);
    let mut betti = BTreeMap::from([(0, 1)]);
    for k in 1..=n {
        if rng.gen_bool(0.4) {
            betti.insert(k, rng.gen_range(1..=2));
        }
    }
    if rng.gen_bool(0.7) {
        let top = betti.get(&0).copied().unwrap_or(1);
        betti.insert(n, top);
    }
    let mut chords = BTreeMap::new();
    let mut homology = BTreeMap::new();
    for k in -1..=n + 1 {
        let c = rng.gen_range(0..=3usize);
        if c > 0 {
            chords.insert(k, c);
            let h = rng.gen_range(0..=c);
            if h > 0 {
                homology.insert(k, h);
            }
        }
    }
    DualityInstance::new(n, betti)
        .with_chords(chords)
        .with_homology(homology)
        .with_flags(rng.gen_bool(0.5), rng.gen_bool(0.5))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::two_copy::duality_check;

    #[test]
    fn complexes_are_deterministic() {
        let a = random_complex(&mut rng(7), CoefficientRing::Integers, ComplexShape::default());
        let b = random_complex(&mut rng(7), CoefficientRing::Integers, ComplexShape::default());
        assert_eq!(a, b);
    }

    #[test]
    fn chain_maps_commute() {
        let mut r = rng(3);
        for _ in 0..10 {
            let c = random_complex(&mut r, CoefficientRing::Z2, ComplexShape::default());
            let d = random_complex(&mut r, CoefficientRing::Z2, ComplexShape::default());
            let f = random_chain_map(&mut r, &c, &d, -1).unwrap();
            crate::complex::mapping_cone(&c, &d, &f).unwrap();
        }
    }

    #[test]
    fn two_copy_generators() {
        let mut r = rng(11);
        for _ in 0..20 {
            let t = random_two_copy(&mut r, TwoCopyShape::default()).unwrap();
            assert!(t.verify_relations().all_pass());
            assert!(t.basis().len() <= 24);
            let a = random_acyclic_two_copy(&mut r, TwoCopyShape::default()).unwrap();
            assert!(a.verify_relations().all_pass());
            assert!(duality_check(&a).unwrap().acyclic);
        }
    }
}
