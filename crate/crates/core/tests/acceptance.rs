//! Acceptance checks, one line per criterion. Runs as a plain binary so the
//! lines are always printed.

mod common;

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};

use lch_core::augmentation::{enumerate_augmentations, linear_part, linearize};
use lch_core::catalog;
use lch_core::complex::{mapping_cone, poincare_chekanov};
use lch_core::duality::{arnold_check, feasibility_solve, solve_poincare, sphere_duality_check};
use lch_core::random::{self, ComplexShape, TwoCopyShape};
use lch_core::spinning::{kunneth_check, spin_times};
use lch_core::two_copy::duality_check;
use lch_core::{Augmentation, BasedChainComplex, CoefficientRing, LaurentPoly};
use rand::Rng;

type Outcome = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn criterion_1() -> Outcome {
    let dga = catalog::chekanov_knot();
    let augs = enumerate_augmentations(&dga).map_err(|e| e.to_string())?;
    ensure(augs.len() == 1, || format!("{} augmentations", augs.len()))?;
    ensure(augs[0].support() == vec!["q7", "q8", "q9"], || format!("support {:?}", augs[0].support()))?;
    let h = linearize(&dga, &augs[0]).unwrap().homology_field().unwrap();
    let want: BTreeMap<i64, usize> = [(-2, 1), (1, 1), (2, 1)].into();
    ensure(h.dims() == want, || format!("dims {:?}", h.dims()))?;
    for (k, d) in [(-2, 1), (-1, 0), (0, 0), (1, 1), (2, 1)] {
        ensure(h.rank(k) == d, || format!("dim H_{k} = {}", h.rank(k)))?;
    }
    let p = poincare_chekanov(&h).unwrap();
    ensure(p == LaurentPoly::from_terms([(-2, 1), (1, 1), (2, 1)]), || format!("P = {p}"))?;
    ensure(sphere_duality_check(&p, 1), || "sphere duality fails".into())
}

fn criterion_2() -> Outcome {
    for n in 2..=6 {
        let dga = catalog::flying_saucer(n, CoefficientRing::Z2).unwrap();
        let augs = enumerate_augmentations(&dga).unwrap();
        ensure(augs.len() == 1, || format!("n = {n}: {} augmentations", augs.len()))?;
        let h = linearize(&dga, &augs[0]).unwrap().homology_field().unwrap();
        ensure(h.dims() == BTreeMap::from([(n, 1)]), || format!("n = {n}: dims {:?}", h.dims()))?;
        let p = poincare_chekanov(&h).unwrap();
        ensure(sphere_duality_check(&p, n), || format!("n = {n}: sphere duality fails for {p}"))?;

        let data = catalog::flying_saucer_two_copy(n).unwrap();
        let r = duality_check(&data).unwrap();
        ensure(r.relations.all_pass(), || format!("n = {n}: relations {:?}", r.relations.failing()))?;
        ensure(r.acyclic, || format!("n = {n}: not acyclic"))?;
        ensure(r.exact, || format!("n = {n}: sequence not exact"))?;
        ensure(r.isomorphism_holds(), || format!("n = {n}: H(QC) -> H(P) not an isomorphism"))?;
        // 0 -> H_n(Q) -> H_(n-1)(C) -> 0: a single isomorphism, everything else zero.
        ensure(r.r == BTreeMap::from([(n, 1)]), || format!("n = {n}: r = {:?}", r.r))?;
        for row in &r.sequence {
            let (q, c) = (usize::from(row.degree == n), usize::from(row.degree == n - 1 || row.degree == -1));
            ensure(row.q_dim == q && row.c_dim == c, || format!("n = {n}: row {row:?}"))?;
            ensure(row.rho_rank == q, || format!("n = {n}: rho rank in row {row:?}"))?;
        }
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    for n in 3..=6 {
        let inst = catalog::stabilized_spheres_counts(n).unwrap();
        let sols = solve_poincare(&inst, &[]).unwrap();
        let want = LaurentPoly::from_terms([(0, 1), (n - 1, 1), (n, 1)]);
        ensure(sols == vec![want.clone()], || {
            format!("n = {n}: {:?}", sols.iter().map(|p| p.to_string()).collect::<Vec<_>>())
        })?;
    }
    Ok(())
}

fn catalog_complexes() -> Vec<(String, BasedChainComplex)> {
    let mut out = Vec::new();
    let dga = catalog::chekanov_knot();
    let eps = enumerate_augmentations(&dga).unwrap().remove(0);
    out.push(("chekanov".to_string(), linearize(&dga, &eps).unwrap()));
    for n in 1..=6 {
        let d = catalog::flying_saucer(n, CoefficientRing::Z2).unwrap();
        out.push((format!("flying-saucer {n}"), linear_part(&d).unwrap()));
    }
    for (p, k) in [(3, 2), (4, 2), (4, 3)] {
        for (tag, (d, _)) in [
            ("super-spun", catalog::super_spun(p, k).unwrap()),
            ("super-spun-reversed", catalog::super_spun_reversed(p, k).unwrap()),
        ] {
            out.push((format!("{tag} {p} {k}"), linear_part(&d).unwrap()));
        }
    }
    for n in 2..=6 {
        let t = catalog::flying_saucer_two_copy(n).unwrap();
        out.push((format!("two-copy Q {n}"), t.q().clone()));
        out.push((format!("two-copy C {n}"), t.c().clone()));
        out.push((format!("two-copy P {n}"), t.p().clone()));
        out.push((format!("two-copy QC {n}"), t.qc().unwrap()));
    }
    out
}

fn criterion_4() -> Outcome {
    let c = linearize(&catalog::chekanov_knot(), &enumerate_augmentations(&catalog::chekanov_knot()).unwrap()[0]).unwrap();
    let dims = spin_times(&c, 2).unwrap().homology_field().unwrap().dims();
    let want: BTreeMap<i64, usize> = [(-2, 1), (-1, 2), (0, 1), (1, 1), (2, 3), (3, 3), (4, 1)].into();
    ensure(dims == want, || format!("double spin dims {dims:?}"))?;
    let mut rng = random::rng(0x5eed_0004);
    for i in 0..100 {
        let c = random::random_complex(&mut rng, CoefficientRing::Z2, ComplexShape::default());
        let r = kunneth_check(&c).unwrap();
        ensure(r.holds, || format!("random complex {i}: {} vs {}", r.spun, r.expected))?;
    }
    for (name, c) in catalog_complexes() {
        let r = kunneth_check(&c).unwrap();
        ensure(r.holds, || format!("{name}: {} vs {}", r.spun, r.expected))?;
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    for n in 2..=5 {
        let inst = catalog::non_spun_torus_counts(n).unwrap();
        let sols = solve_poincare(&inst, &[]).unwrap();
        let want = LaurentPoly::from_terms([(0, 1), (n, 2), (n + 1, 1)]);
        ensure(sols == vec![want], || {
            format!("n = {n}: {:?}", sols.iter().map(|p| p.to_string()).collect::<Vec<_>>())
        })?;
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    for (p, k) in [(3, 2), (4, 2), (4, 3)] {
        let (_, inst) = catalog::super_spun(p, k).unwrap();
        let sols = feasibility_solve(&inst).unwrap();
        ensure(sols.len() == 1, || format!("({p}, {k}): {} solutions", sols.len()))?;
        ensure(sols[0].r(k) == 1 && sols[0].r(p) == 0, || format!("({p}, {k}): r = {:?}", sols[0].r))?;

        let (_, rev) = catalog::super_spun_reversed(p, k).unwrap();
        let sols = feasibility_solve(&rev).unwrap();
        ensure(sols.len() == 1, || format!("({p}, {k}) reversed: {} solutions", sols.len()))?;
        ensure(sols[0].r(p) == 1 && sols[0].r(k) == 0, || format!("({p}, {k}) reversed: r = {:?}", sols[0].r))?;
    }
    Ok(())
}

fn criterion_7a() -> Outcome {
    let mut rng = random::rng(0x5eed_007a);
    let mut valid = Vec::new();
    for _ in 0..200 {
        valid.push(random::random_two_copy(&mut rng, TwoCopyShape::default()).unwrap());
    }
    let mut broken = Vec::new();
    for t in valid.iter().cycle().take(2000) {
        if broken.len() == 20 {
            break;
        }
        if let Some(b) = random::break_two_copy(&mut rng, t).unwrap() {
            broken.push(b);
        }
    }
    ensure(broken.len() == 20, || format!("only {} constructed failures", broken.len()))?;
    for (i, t) in valid.iter().chain(&broken).enumerate() {
        ensure(t.basis().len() <= 24, || format!("instance {i} too large"))?;
        let relations = t.verify_relations().all_pass();
        ensure(relations == t.assembled_squares_to_zero(), || format!("instance {i}: relations {relations}"))?;
        ensure(relations == (i < 200), || format!("instance {i}: relations {relations}"))?;
    }
    Ok(())
}

fn criterion_7b() -> Outcome {
    let mut rng = random::rng(0x5eed_007b);
    let shape = ComplexShape { min_degree: -2, max_degree: 3, max_per_degree: 3, bound: 1 };
    let get = |m: &BTreeMap<i64, usize>, k: i64| m.get(&k).copied().unwrap_or(0);
    for i in 0..100 {
        let ring = CoefficientRing::Z2;
        let c = random::random_complex(&mut rng, ring, shape);
        let d = random::random_complex(&mut rng, ring, shape);
        let f = random::random_chain_map(&mut rng, &c, &d, -1).unwrap();
        let cone = mapping_cone(&c, &d, &f).unwrap();
        let (hc, hd, hx) = (
            c.homology_field().unwrap().dims(),
            d.homology_field().unwrap().dims(),
            cone.homology_field().unwrap().dims(),
        );
        for k in -3..=5 {
            let fk = c.induced_rank(&d, &f, -1, k).unwrap();
            let fk1 = c.induced_rank(&d, &f, -1, k + 1).unwrap();
            ensure(get(&hx, k) + fk + fk1 == get(&hd, k) + get(&hc, k), || {
                format!("map {i}, degree {k}: cone {} C {} D {} ranks {fk} {fk1}", get(&hx, k), get(&hc, k), get(&hd, k))
            })?;
        }
    }
    Ok(())
}

fn criterion_7c() -> Outcome {
    let mut rng = random::rng(0x5eed_007c);
    for p in [2u64, 3] {
        let ring = CoefficientRing::integers_mod(p).unwrap();
        for i in 0..40 {
            let zeros: usize = if i < 3 { 12 } else { rng.gen_range(0..=12) };
            let ones = rng.gen_range(zeros.saturating_sub(4)..=zeros + 1);
            let dga = random::random_degree_zero_dga(&mut rng, ring, zeros, ones).unwrap();
            let found: Vec<Vec<i64>> = enumerate_augmentations(&dga)
                .unwrap()
                .iter()
                .map(|a: &Augmentation| a.values().iter().map(common::to_i64).collect())
                .collect();
            let oracle = common::brute_force_augmentations(&dga, p as i64);
            ensure(found == oracle, || format!("Z{p}, instance {i}: {} vs {}", found.len(), oracle.len()))?;
        }
    }
    Ok(())
}

fn criterion_7d() -> Outcome {
    let mut rng = random::rng(0x5eed_007d);
    let shape = ComplexShape { min_degree: -1, max_degree: 2, max_per_degree: 2, bound: 3 };
    for i in 0..100 {
        let c = random::random_complex(&mut rng, CoefficientRing::Integers, shape);
        let z = c.homology_integral().unwrap();
        let q = c.change_ring(CoefficientRing::Rationals).unwrap().homology_field().unwrap();
        let free: BTreeMap<i64, usize> =
            z.groups.iter().filter(|(_, g)| g.rank > 0).map(|(k, g)| (*k, g.rank)).collect();
        ensure(free == q.dims(), || format!("complex {i}: Z {free:?} Q {:?}", q.dims()))?;
    }
    Ok(())
}

fn criterion_7e() -> Outcome {
    let mut rng = random::rng(0x5eed_007e);
    let mut feasible = 0;
    for i in 0..500 {
        let inst = random::random_instance(&mut rng);
        if !feasibility_solve(&inst).unwrap().is_empty() {
            feasible += 1;
            let rows = arnold_check(&inst).unwrap();
            ensure(rows.iter().all(|r| r.holds), || format!("instance {i}: {rows:?}"))?;
        }
    }
    ensure(feasible > 0, || "no feasible instance drawn".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("1  Chekanov knot", criterion_1),
        ("2  flying saucer", criterion_2),
        ("3  stabilized spheres", criterion_3),
        ("4  spinning", criterion_4),
        ("5  non-spun torus", criterion_5),
        ("6  super-spun product", criterion_6),
        ("7a two-copy square zero iff relations", criterion_7a),
        ("7b mapping cone exact sequence", criterion_7b),
        ("7c augmentations vs brute force", criterion_7c),
        ("7d Q ranks vs Smith normal form", criterion_7d),
        ("7e feasibility implies chord bound", criterion_7e),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".to_string()));
        match outcome {
            Ok(()) => println!("criterion {name}: PASS"),
            Err(e) => {
                failed += 1;
                println!("criterion {name}: FAIL ({e})");
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
