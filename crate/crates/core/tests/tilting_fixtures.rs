mod common;

use tiltbench::exactstruct::ExactStructure;
use tiltbench::modcat::simples;
use tiltbench::tilting::{
    check_tilting, check_tilting_t1t2, enumerate_tilting, in_thick_of_tilting, leq, mutate, perp_category,
    perp_in_reso, perp_three_ways, MutationOutcome,
};
use tiltbench::{Decision, SubcatSpec, Universe};

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

#[test]
fn a3_poset_has_five_elements() {
    let (s, u) = common::universe(&common::a3(), &[1, 1, 1]);
    assert_eq!(u.len(), 6);
    let poset = enumerate_tilting(&s, &u, 1, false, 20).unwrap();
    assert_eq!(poset.candidates, 20);
    assert_eq!(poset.elements.len(), 5);
    let l = &poset.laws;
    assert!(l.reflexive && l.antisymmetric && l.transitive && l.maximal_rigidity);
    assert!(l.maximum_is_projectives && l.order_cross_check);
    assert!(poset.undecided.is_empty());
    for e in &poset.elements {
        assert_eq!(e.indices.len(), 3);
    }
}

#[test]
fn dual_poset_is_trivial() {
    let (s, u) = common::universe(&common::dual(), &[2]);
    assert_eq!(u.len(), 2);
    let poset = enumerate_tilting(&s, &u, 1, false, 20).unwrap();
    assert_eq!(poset.elements.len(), 1);
    assert_eq!(poset.elements[0].names, vec!["P1".to_string()]);
    let sm = simples(s.algebra());
    assert_eq!(in_thick_of_tilting(&sm[0], &s, 20).unwrap(), Decision::No);
}

fn agreement(s: &ExactStructure, u: &Universe) -> usize {
    let k = s.projectives().len();
    let mut count = 0;
    for c in subsets(u.len(), k) {
        let t = u.spec("T", &c);
        for n in 0..=1 {
            let a = check_tilting(&t, n, s, 20).unwrap().overall;
            let b = check_tilting_t1t2(&t, n, s, u, 20).unwrap().overall;
            assert_eq!(a, b, "{:?} at n = {n}", t.names());
        }
        count += 1;
    }
    count
}

#[test]
fn both_tilting_tests_agree() {
    let mut total = 0;
    for (alg, bound) in [(common::a2(), vec![1, 1]), (common::a3(), vec![1, 1, 1]), (common::dual(), vec![2])] {
        let (s, u) = common::universe(&alg, &bound);
        total += agreement(&s, &u);
    }
    assert_eq!(total, 3 + 20 + 2);
}

#[test]
fn perp_class_three_ways_and_resolutions() {
    for (alg, bound) in [(common::a2(), vec![1, 1]), (common::a3(), vec![1, 1, 1])] {
        let (s, u) = common::universe(&alg, &bound);
        let poset = enumerate_tilting(&s, &u, 1, false, 20).unwrap();
        for (i, e) in poset.elements.iter().enumerate() {
            let t = poset.spec(&u, i);
            let [a, b, c] = perp_three_ways(&t, e.n.max(1), &s, &u, 20).unwrap();
            assert_eq!(a, c);
            assert_eq!(b, c);
            assert!(perp_in_reso(&t, e.n, &s, &u, 20).unwrap());
            assert_eq!(perp_category(&t, e.n.max(1), &s, &u, 20).unwrap().len(), c.len());
            let r = check_tilting_t1t2(&t, e.n, &s, &u, 20).unwrap();
            assert_eq!(r.ext_projectives.len(), t.len());
        }
    }
}

#[test]
fn a3_mutations_stay_in_the_poset() {
    let (s, u) = common::universe(&common::a3(), &[1, 1, 1]);
    let poset = enumerate_tilting(&s, &u, 1, false, 20).unwrap();
    let specs: Vec<SubcatSpec> = (0..poset.elements.len()).map(|i| poset.spec(&u, i)).collect();
    let mut successes = 0;
    for t in &specs {
        for k in 0..t.len() {
            for m in subsets(t.len(), k) {
                if let MutationOutcome::Mutated { spec, leq: order } = mutate(t, &m, &s, 20).unwrap() {
                    assert_eq!(order, Decision::Yes);
                    assert!(specs.iter().any(|x| x.same_as(&spec).unwrap()), "{:?}", spec.names());
                    assert_eq!(leq(&spec, t, &s, 20).unwrap(), Decision::Yes);
                    if m.len() < t.len() {
                        successes += 1;
                    }
                }
            }
        }
    }
    eprintln!("nontrivial mutations: {successes}");
}
