//! Independent reference computations over machine integers.
#![allow(dead_code)]

use std::collections::BTreeMap;

use lch_core::{BasedChainComplex, Dga, Matrix, Scalar};

pub fn to_i64(v: &Scalar) -> i64 {
    assert!(v.is_integer(), "non-integer entry {v}");
    i64::try_from(v.to_integer()).expect("small entry")
}

pub fn rows(m: &Matrix) -> Vec<Vec<i64>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(to_i64).collect()).collect()
}

fn pow_mod(mut b: i64, mut e: i64, p: i64) -> i64 {
    let mut acc = 1;
    b = b.rem_euclid(p);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Rank over `Z/p`, `p` prime.
pub fn rank_mod(m: &[Vec<i64>], p: i64) -> usize {
    let mut a: Vec<Vec<i64>> = m.iter().map(|r| r.iter().map(|v| v.rem_euclid(p)).collect()).collect();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..a.len()).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        let inv = pow_mod(a[rank][c], p - 2, p);
        for r in 0..a.len() {
            if r != rank && a[r][c] != 0 {
                let f = a[r][c] * inv % p;
                for k in 0..cols {
                    a[r][k] = (a[r][k] - f * a[rank][k]).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank over `Q` by fraction-free elimination.
pub fn rank_q(m: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&v| v as i128).collect()).collect();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..a.len()).find(|&r| a[r][c] != 0) else {
            continue;
        };
        a.swap(rank, piv);
        for r in 0..a.len() {
            if r != rank && a[r][c] != 0 {
                let (x, y) = (a[rank][c], a[r][c]);
                let mut g = 0;
                for k in 0..cols {
                    a[r][k] = a[r][k] * x - a[rank][k] * y;
                    g = gcd(g, a[r][k]);
                }
                if g > 1 {
                    for v in a[r].iter_mut() {
                        *v /= g;
                    }
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Rank of an integer matrix over the field of characteristic `p` (0 for `Q`).
pub fn rank(m: &[Vec<i64>], p: i64) -> usize {
    if p == 0 {
        rank_q(m)
    } else {
        rank_mod(m, p)
    }
}

fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| *v).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors from determinantal divisors: `d_k` is the gcd of the
/// `k x k` minors and the factors are `d_k / d_(k-1)`.
pub fn invariant_factors_by_minors(m: &[Vec<i64>]) -> Vec<i128> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut out = Vec::new();
    let mut prev = 1i128;
    for k in 1..=rows.min(cols) {
        let mut d = 0i128;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor: Vec<Vec<i128>> = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| m[r][c] as i128).collect())
                    .collect();
                d = gcd(d, det(&minor));
            }
        }
        if d == 0 {
            break;
        }
        out.push(d / prev);
        prev = d;
    }
    out
}

fn characteristic(c: &BasedChainComplex) -> i64 {
    match c.ring() {
        lch_core::CoefficientRing::IntegersMod(p) => p as i64,
        _ => 0,
    }
}

/// `dim H_k` from ranks of the boundary blocks.
pub fn homology_dims(c: &BasedChainComplex) -> BTreeMap<i64, usize> {
    let p = characteristic(c);
    let mut out = BTreeMap::new();
    for (&k, &dim) in &c.chain_dims() {
        let h = dim - rank(&rows(&c.block(k)), p) - rank(&rows(&c.block(k + 1)), p);
        if h > 0 {
            out.insert(k, h);
        }
    }
    out
}

/// Columns of `m` restricted to `cols` and rows to `rs`, as integer rows.
fn sub(m: &Matrix, rs: &[usize], cs: &[usize]) -> Vec<Vec<i64>> {
    rs.iter().map(|&r| cs.iter().map(|&c| to_i64(m.get(r, c))).collect()).collect()
}

fn hcat(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    a.iter().zip(b).map(|(x, y)| x.iter().chain(y).copied().collect()).collect()
}

/// Rank of `f_* : H_k(C) -> H_(k+shift)(D)` as
/// `dim(f(Z_k) + B) - dim B`, with cycles found by brute force over `Z/p`.
pub fn induced_rank_mod(c: &BasedChainComplex, d: &BasedChainComplex, f: &Matrix, shift: i64, k: i64, p: i64) -> usize {
    let src = c.indices_in_degree(k);
    let tgt = d.indices_in_degree(k + shift);
    if src.is_empty() || tgt.is_empty() {
        return 0;
    }
    let below = c.indices_in_degree(k - 1);
    let boundary = sub(c.boundary(), &below, &src);
    // Enumerate Z_k by brute force: fine for the small sizes used here.
    assert!((p as f64).powi(src.len() as i32) <= 1e6, "too many vectors");
    let mut images: Vec<Vec<i64>> = vec![Vec::new(); tgt.len()];
    let total = (p as u64).pow(src.len() as u32);
    for code in 0..total {
        let mut v = Vec::with_capacity(src.len());
        let mut x = code;
        for _ in 0..src.len() {
            v.push((x % p as u64) as i64);
            x /= p as u64;
        }
        let is_cycle = boundary
            .iter()
            .all(|row| row.iter().zip(&v).map(|(a, b)| a * b).sum::<i64>().rem_euclid(p) == 0);
        if !is_cycle {
            continue;
        }
        for (r, &t) in tgt.iter().enumerate() {
            let val: i64 = src.iter().zip(&v).map(|(&s, b)| to_i64(f.get(t, s)) * b).sum();
            images[r].push(val.rem_euclid(p));
        }
    }
    let above = d.indices_in_degree(k + shift + 1);
    let b = sub(d.boundary(), &tgt, &above);
    rank_mod(&hcat(&images, &b), p) - rank_mod(&b, p)
}

/// All augmentations of a DGA over `Z/p` by trying every assignment of the
/// degree-0 generators, in lexicographic order of the value vectors.
pub fn brute_force_augmentations(dga: &Dga, p: i64) -> Vec<Vec<i64>> {
    let n = dga.len();
    let zero_deg: Vec<usize> = (0..n).filter(|&i| dga.degree_of(i) == 0).collect();
    let polys: Vec<Vec<(i64, Vec<usize>)>> = dga
        .differential()
        .iter()
        .map(|d| d.terms().map(|(w, c)| (to_i64(c), w.letters().to_vec())).collect())
        .collect();
    let total = (p as u64).pow(zero_deg.len() as u32);
    let mut out = Vec::new();
    for code in 0..total {
        let mut vals = vec![0i64; n];
        let mut x = code;
        // Last generator varies fastest, so codes run in lexicographic order.
        for &i in zero_deg.iter().rev() {
            vals[i] = (x % p as u64) as i64;
            x /= p as u64;
        }
        let ok = polys.iter().all(|terms| {
            terms
                .iter()
                .map(|(c, w)| w.iter().fold(*c, |acc, &l| acc * vals[l] % p))
                .sum::<i64>()
                .rem_euclid(p)
                == 0
        });
        if ok {
            out.push(vals);
        }
    }
    out
}
