mod common;

use std::collections::HashSet;
use std::sync::Arc;

use proptest::prelude::*;
use tiltbench::algebra::path_algebra;
use tiltbench::homology::{ext, minimal_resolution};
use tiltbench::miyashita::Transport;
use tiltbench::modcat::{decompose, direct_sum, find_isomorphism, hom_space};
use tiltbench::tilting::enumerate_tilting;
use tiltbench::{BasedAlgebra, Mat, Module, Quiver};

fn a3_rel() -> Arc<BasedAlgebra> {
    let q = Quiver::new()
        .vertex("1")
        .vertex("2")
        .vertex("3")
        .arrow("a", "1", "2")
        .arrow("b", "2", "3")
        .relation(&[(1, "a.b")]);
    Arc::new(path_algebra(&q, 2).unwrap())
}

/// Random representation of a quiver algebra from arrow entries; `None`
/// when the relations fail.
fn build(alg: &Arc<BasedAlgebra>, dims: &[usize], bits: &[u32]) -> Option<Module> {
    let mut k = 0;
    let blocks = alg
        .arrows()
        .iter()
        .map(|&a| {
            let (r, c) = (dims[alg.tgt(a)], dims[alg.src(a)]);
            Mat::from_fn(r, c, alg.modulus(), |_, _| {
                k += 1;
                bits[k % bits.len()] % alg.modulus()
            })
        })
        .collect();
    Module::from_arrows(alg.clone(), dims.to_vec(), blocks).ok()
}

fn module_strategy(max: usize) -> impl Strategy<Value = (Vec<usize>, Vec<u32>)> {
    (prop::collection::vec(0..=max, 3), prop::collection::vec(0u32..2, 1..16))
}

/// `<x, y> = Σ x_i y_i - Σ_{arrows s->t} x_s y_t`.
fn euler(alg: &BasedAlgebra, x: &[usize], y: &[usize]) -> i64 {
    let mut e: i64 = x.iter().zip(y).map(|(a, b)| (a * b) as i64).sum();
    for &a in alg.arrows() {
        e -= (x[alg.src(a)] * y[alg.tgt(a)]) as i64;
    }
    e
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn decomposition_reassembles((dims, bits) in module_strategy(2)) {
        let alg = common::a3();
        let m = build(&alg, &dims, &bits).unwrap();
        let dec = decompose(&m).unwrap();
        let total: usize = dec.summands.iter().map(|s| s.module.dim()).sum();
        prop_assert_eq!(total, m.dim());
        let parts: Vec<Module> = dec.summands.iter().map(|s| s.module.clone()).collect();
        let sum = direct_sum(&alg, &parts).module;
        prop_assert!(find_isomorphism(&sum, &m).unwrap().is_some());
    }

    #[test]
    fn hom_minus_ext_is_euler_form((d1, b1) in module_strategy(2), (d2, b2) in module_strategy(2)) {
        let alg = common::a3();
        let x = build(&alg, &d1, &b1).unwrap();
        let y = build(&alg, &d2, &b2).unwrap();
        let h = hom_space(&x, &y).unwrap().dim() as i64;
        let e = ext(&x, &y, 1).unwrap() as i64;
        prop_assert_eq!(h - e, euler(&alg, &d1, &d2));
        prop_assert_eq!(ext(&x, &y, 2).unwrap(), 0);
    }

    #[test]
    fn hom_is_additive((d1, b1) in module_strategy(1), (d2, b2) in module_strategy(1), (d3, b3) in module_strategy(2)) {
        let alg = common::a3();
        let x = build(&alg, &d1, &b1).unwrap();
        let y = build(&alg, &d2, &b2).unwrap();
        let z = build(&alg, &d3, &b3).unwrap();
        let s = direct_sum(&alg, &[x.clone(), y.clone()]).module;
        prop_assert_eq!(
            hom_space(&s, &z).unwrap().dim(),
            hom_space(&x, &z).unwrap().dim() + hom_space(&y, &z).unwrap().dim()
        );
        prop_assert_eq!(
            hom_space(&z, &s).unwrap().dim(),
            hom_space(&z, &x).unwrap().dim() + hom_space(&z, &y).unwrap().dim()
        );
    }

    #[test]
    fn dimension_shift((d1, b1) in module_strategy(2), (d2, b2) in module_strategy(2)) {
        let alg = a3_rel();
        let (Some(x), Some(y)) = (build(&alg, &d1, &b1), build(&alg, &d2, &b2)) else {
            return Ok(());
        };
        let res = minimal_resolution(&x, 20).unwrap();
        if let Some(omega) = res.syzygies.get(1) {
            for i in 1..3 {
                prop_assert_eq!(ext(&x, &y, i + 1).unwrap(), ext(omega, &y, i).unwrap());
            }
        }
    }

    #[test]
    fn tensor_hom_adjunction((d1, b1) in module_strategy(2), pick in 0usize..5, which in 0usize..64) {
        let (s, u) = common::universe(&common::a3(), &[1, 1, 1]);
        let poset = enumerate_tilting(&s, &u, 1, false, 20).unwrap();
        let t = poset.spec(&u, pick % poset.elements.len());
        let tr = Transport::new(&t, &s, 1, 20).unwrap();
        let ug = tr.gamma_universe(&[1, 1, 1], 100_000).unwrap();
        let x = build(s.algebra(), &d1, &b1).unwrap();
        let y = &ug.modules[which % ug.len()];
        let left = hom_space(y, &tr.phi(&x).unwrap()).unwrap().dim();
        let right = hom_space(&tr.phi_prime(y).unwrap(), &x).unwrap().dim();
        prop_assert_eq!(left, right);
    }
}

/// Counts classes of `(δ_a)` modulo coboundaries by listing both sets.
fn brute_ext1(alg: &BasedAlgebra, c: &Module, a: &Module) -> usize {
    let p = alg.modulus() as usize;
    let arrows = alg.arrows();
    let shapes: Vec<(usize, usize)> = arrows.iter().map(|&x| (a.dims()[alg.tgt(x)], c.dims()[alg.src(x)])).collect();
    let n_delta: usize = shapes.iter().map(|(r, k)| r * k).sum();
    let vshapes: Vec<(usize, usize)> = (0..alg.vertex_count()).map(|v| (a.dims()[v], c.dims()[v])).collect();
    let n_h: usize = vshapes.iter().map(|(r, k)| r * k).sum();
    let mut boundaries = HashSet::new();
    for code in 0..p.pow(n_h as u32) {
        let mut digits = (0..n_h).map(|i| ((code / p.pow(i as u32)) % p) as u32);
        let hs: Vec<Mat> = vshapes
            .iter()
            .map(|&(r, k)| Mat::from_fn(r, k, alg.modulus(), |_, _| digits.next().unwrap()))
            .collect();
        let delta: Vec<u32> = arrows
            .iter()
            .flat_map(|&x| {
                let (s, t) = (alg.src(x), alg.tgt(x));
                let mut d = a.block(x).mul_mat(&hs[s]);
                d.add_scaled(&hs[t].mul_mat(c.block(x)), alg.modulus() - 1);
                d.entries().to_vec()
            })
            .collect();
        boundaries.insert(delta);
    }
    p.pow(n_delta as u32) / boundaries.len()
}

#[test]
fn ext1_matches_brute_force_classes() {
    let alg = common::a3();
    let (_, u) = common::universe(&alg, &[1, 1, 1]);
    for x in &u.modules {
        for y in &u.modules {
            if x.dim() + y.dim() > 3 {
                continue;
            }
            let classes = brute_ext1(&alg, x, y);
            assert_eq!(classes, 2usize.pow(ext(x, y, 1).unwrap() as u32));
        }
    }
}
