//! Acceptance checks, one line per criterion.

mod common;

use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::{Duration, Instant};

use tiltbench::algebra::path_algebra;
use tiltbench::homology::{ext, gldim, pdim, HomDim};
use tiltbench::miyashita::{gldim_transfer_check, round_trip_iso, two_resolving_check, verify_miyashita, Transport};
use tiltbench::modcat::{hom_space, indecomposable_projectives, simples, Module};
use tiltbench::report::{replay_axioms, replay_tilting};
use tiltbench::tilting::{
    check_tilting, check_tilting_t1t2, endo_special_one_tilt, enumerate_tilting, leq, mutate, perp_three_ways,
    special_tilting, MutationOutcome, TiltingPoset,
};
use tiltbench::{BasedAlgebra, Decision, ExactStructure, Mat, Quiver, SubcatSpec, Universe, DEFAULT_BUDGET};

const CUTOFF: usize = 20;
const LIMIT: Duration = Duration::from_secs(60);

type Check = std::result::Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn a2() -> Arc<BasedAlgebra> {
    let q = Quiver::new().vertex("1").vertex("2").arrow("a", "1", "2");
    Arc::new(path_algebra(&q, 2).unwrap())
}

fn a3() -> Arc<BasedAlgebra> {
    let q = Quiver::new().vertex("1").vertex("2").vertex("3").arrow("a", "1", "2").arrow("b", "2", "3");
    Arc::new(path_algebra(&q, 2).unwrap())
}

fn dual() -> Arc<BasedAlgebra> {
    let q = Quiver::new().vertex("1").arrow("x", "1", "1").relation(&[(1, "x.x")]);
    Arc::new(path_algebra(&q, 2).unwrap())
}

fn abelian(alg: &Arc<BasedAlgebra>, bound: &[usize]) -> (ExactStructure, Universe) {
    let s = ExactStructure::abelian(alg.clone()).unwrap();
    let u = Universe::enumerate(s.clone(), bound, DEFAULT_BUDGET).unwrap();
    (s, u)
}

fn fixtures() -> Vec<(&'static str, Arc<BasedAlgebra>, Vec<usize>)> {
    vec![("A2", a2(), vec![1, 1]), ("A3", a3(), vec![1, 1, 1]), ("DUAL", dual(), vec![2])]
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

fn specs(p: &TiltingPoset, u: &Universe) -> Vec<SubcatSpec> {
    (0..p.elements.len()).map(|i| p.spec(u, i)).collect()
}

/// `<dim x, dim y>` for a quiver without relations.
fn euler(alg: &BasedAlgebra, x: &Module, y: &Module) -> i64 {
    let (dx, dy) = (x.dims(), y.dims());
    let verts: i64 = (0..alg.vertex_count()).map(|v| (dx[v] * dy[v]) as i64).sum();
    let arrows: i64 = alg.arrows().iter().map(|&a| (dx[alg.src(a)] * dy[alg.tgt(a)]) as i64).sum();
    verts - arrows
}

/// Number of extension classes of `c` by `a`: all arrow cocycles modulo
/// the coboundaries of vertex maps, counted by enumeration.
fn extension_classes(alg: &BasedAlgebra, c: &Module, a: &Module) -> usize {
    let p = alg.modulus() as usize;
    let arrows = alg.arrows();
    let n_delta: usize = arrows.iter().map(|&x| a.dims()[alg.tgt(x)] * c.dims()[alg.src(x)]).sum();
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
                let mut d = a.block(x).mul_mat(&hs[alg.src(x)]);
                d.add_scaled(&hs[alg.tgt(x)].mul_mat(c.block(x)), alg.modulus() - 1);
                d.entries().to_vec()
            })
            .collect();
        boundaries.insert(delta);
    }
    p.pow(n_delta as u32) / boundaries.len()
}

fn catalan(n: u64) -> u64 {
    (1..=n).fold(1u64, |c, k| c * (n + k) / k) / (n + 1)
}

fn c1_euler_form() -> Check {
    let mut pairs = 0;
    let mut brute = 0;
    for (name, alg, bound) in fixtures().into_iter().take(2) {
        let (_, u) = abelian(&alg, &bound);
        for x in &u.modules {
            for y in &u.modules {
                let h = hom_space(x, y).unwrap().dim() as i64;
                let e = ext(x, y, 1).unwrap();
                ensure!(h - e as i64 == euler(&alg, x, y), "{name}: Euler form fails on {:?}, {:?}", x.dims(), y.dims());
                pairs += 1;
                if x.dim() + y.dim() <= 3 {
                    let classes = extension_classes(&alg, x, y);
                    ensure!(classes == 2usize.pow(e as u32), "{name}: {classes} classes vs Ext^1 = {e}");
                    brute += 1;
                }
            }
        }
    }
    Ok(format!("{pairs} pairs match the Euler form, {brute} pairs match cocycle counts"))
}

fn c2_counts() -> Check {
    let mut found = Vec::new();
    for (name, alg, bound) in fixtures() {
        let (s, u) = abelian(&alg, &bound);
        let poset = enumerate_tilting(&s, &u, 1, false, CUTOFF).unwrap();
        let k = s.projectives().len();
        // rigid |P|-subsets of the indecomposables
        let scan = subsets(u.len(), k)
            .into_iter()
            .filter(|c| c.iter().all(|&i| c.iter().all(|&j| ext(&u.modules[i], &u.modules[j], 1).unwrap() == 0)))
            .count();
        let tilting1 = poset.elements.iter().filter(|e| e.n <= 1).count();
        ensure!(tilting1 == scan, "{name}: enumerated {tilting1}, rigidity scan {scan}");
        found.push((name, tilting1));
    }
    let expect = [("A2", catalan(2) as usize), ("A3", catalan(3) as usize), ("DUAL", 1)];
    ensure!(found == expect, "counts {found:?}, expected {expect:?}");
    Ok(format!("{found:?}"))
}

fn c3_equivalence() -> Check {
    let mut counts = Vec::new();
    let mut replays = 0;
    for (name, alg, bound) in fixtures() {
        let (s, u) = abelian(&alg, &bound);
        let cands = subsets(u.len(), s.projectives().len());
        for c in &cands {
            let t = u.spec("T", c);
            for n in 0..=1 {
                let a = check_tilting(&t, n, &s, CUTOFF).unwrap();
                let b = check_tilting_t1t2(&t, n, &s, &u, CUTOFF).unwrap();
                ensure!(a.overall == b.overall, "{name} {:?} n = {n}: {:?} vs {:?}", t.names(), a.overall, b.overall);
                let ra = replay_tilting(&a, &t, &s, CUTOFF).unwrap();
                let rb = replay_axioms(&b, &t, &s, &u, CUTOFF).unwrap();
                ensure!(ra.ok && rb.ok, "{name} {:?}: replay {:?} {:?}", t.names(), ra.mismatch, rb.mismatch);
                replays += 2;
            }
        }
        counts.push(cands.len());
    }
    // DUAL has two indecomposables up to the bound, so two 1-subsets
    ensure!(counts == [3, 20, 2], "candidate counts {counts:?}");
    Ok(format!("agreement on {:?} candidates at n = 0, 1; {replays} replays", counts))
}

fn c4_perp_three_ways() -> Check {
    let mut checked = 0;
    for (name, alg, bound) in fixtures() {
        let (s, u) = abelian(&alg, &bound);
        let poset = enumerate_tilting(&s, &u, 1, false, CUTOFF).unwrap();
        for (e, t) in poset.elements.iter().zip(specs(&poset, &u)) {
            let [a, b, c] = perp_three_ways(&t, e.n.max(1), &s, &u, CUTOFF).unwrap();
            ensure!(a == c && b == c, "{name} {:?}: {a:?} / {b:?} / {c:?}", e.names);
            checked += 1;
        }
    }
    Ok(format!("{checked} tilting specs"))
}

fn c5_special() -> Check {
    let alg = a2();
    let s = ExactStructure::abelian(alg.clone()).unwrap();
    let p = indecomposable_projectives(&alg);
    let sm = simples(&alg);
    let m = SubcatSpec::new("M", vec![("P1".into(), p[0].clone())]).unwrap();
    let r = special_tilting(&m, 1, &s, CUTOFF).unwrap();
    let want = SubcatSpec::new("T", vec![("P1".into(), p[0].clone()), ("S1".into(), sm[0].clone())]).unwrap();
    ensure!(r.spec.same_as(&want).unwrap(), "special tilt is {:?}", r.spec.names());
    ensure!(check_tilting(&r.spec, 1, &s, CUTOFF).unwrap().overall == Decision::Yes, "special tilt fails check");
    let e = endo_special_one_tilt(&sm[0], &p[0], &s, None, DEFAULT_BUDGET, CUTOFF).unwrap();
    ensure!(e.end.dim() == 3, "dim Γ = {}", e.end.dim());
    ensure!(e.report.overall == Decision::Yes, "endo output not 1-tilting");
    ensure!(e.gen_match, "gen(T) != gen(P) over {} modules", e.universe_size);
    Ok(format!("add(P1+S1); dim Γ = 3, gen(T) = gen(P) over {} modules", e.universe_size))
}

fn c6_mutation() -> Check {
    let (s, u) = abelian(&a3(), &[1, 1, 1]);
    let poset = enumerate_tilting(&s, &u, 1, false, CUTOFF).unwrap();
    let all = specs(&poset, &u);
    let (mut tried, mut mutated, mut proper) = (0, 0, 0);
    for t in &all {
        for k in 0..=t.len() {
            for m in subsets(t.len(), k) {
                tried += 1;
                if let MutationOutcome::Mutated { spec, .. } = mutate(t, &m, &s, CUTOFF).unwrap() {
                    ensure!(all.iter().any(|x| x.same_as(&spec).unwrap()), "{:?} not in the poset", spec.names());
                    ensure!(leq(&spec, t, &s, CUTOFF).unwrap() == Decision::Yes, "{:?} not below", spec.names());
                    mutated += 1;
                    if m.len() < t.len() {
                        proper += 1;
                    }
                }
            }
        }
    }
    let alg = a2();
    let s2 = ExactStructure::abelian(alg.clone()).unwrap();
    let t = SubcatSpec::new(
        "T",
        vec![("P1".into(), indecomposable_projectives(&alg)[0].clone()), ("S1".into(), simples(&alg)[0].clone())],
    )
    .unwrap();
    match mutate(&t, &[0], &s2, CUTOFF).unwrap() {
        MutationOutcome::NotMutable { reason } => {
            ensure!(reason == "left approximation S1->0 is not an inflation", "reason: {reason}")
        }
        other => return Err(format!("A2 mutation gave {other:?}")),
    }
    Ok(format!("{tried} attempts, {mutated} succeeded ({proper} with a proper M); A2 not mutable"))
}

fn laws_oracle(name: &str, p: &TiltingPoset, projectives: &SubcatSpec, u: &Universe) -> Check {
    let n = p.elements.len();
    let o = &p.order;
    for i in 0..n {
        ensure!(o[i][i], "{name}: not reflexive at {i}");
        for j in 0..n {
            ensure!(!(i != j && o[i][j] && o[j][i]), "{name}: not antisymmetric at {i}, {j}");
            for k in 0..n {
                ensure!(!(o[i][j] && o[j][k]) || o[i][k], "{name}: not transitive at {i}, {j}, {k}");
            }
        }
    }
    let maxima: Vec<usize> = (0..n).filter(|&j| (0..n).all(|i| o[i][j])).collect();
    ensure!(maxima.len() == 1, "{name}: maxima {maxima:?}");
    ensure!(p.spec(u, maxima[0]).same_as(projectives).unwrap(), "{name}: maximum is not add(projectives)");
    for (i, a) in p.elements.iter().enumerate() {
        for (j, b) in p.elements.iter().enumerate() {
            let inside = a.indices.iter().all(|x| b.indices.contains(x));
            ensure!(i == j || !inside, "{name}: {:?} inside {:?}", a.names, b.names);
        }
    }
    let l = &p.laws;
    ensure!(l.reflexive && l.antisymmetric && l.transitive && l.unique_maximum == Some(maxima[0]), "{name}: reported laws {l:?}");
    ensure!(l.maximum_is_projectives && l.maximal_rigidity, "{name}: reported laws {l:?}");
    Ok(String::new())
}

fn c7_poset_laws() -> Check {
    let mut sizes = Vec::new();
    for (name, alg, bound) in fixtures() {
        let (s, u) = abelian(&alg, &bound);
        let poset = enumerate_tilting(&s, &u, 1, false, CUTOFF).unwrap();
        laws_oracle(name, &poset, s.projectives(), &u)?;
        sizes.push(poset.elements.len());
    }
    let alg = dual();
    let s = ExactStructure::relative(alg.clone(), vec![("S".into(), simples(&alg)[0].clone())]).unwrap();
    let u = Universe::enumerate(s.clone(), &[2], DEFAULT_BUDGET).unwrap();
    let poset = enumerate_tilting(&s, &u, 1, false, CUTOFF).unwrap();
    laws_oracle("DUAL relative", &poset, s.projectives(), &u)?;
    sizes.push(poset.elements.len());
    Ok(format!("poset sizes {sizes:?}"))
}

fn c8_miyashita() -> Check {
    let mut checked = 0;
    let mut isos = 0;
    for (name, alg, bound) in fixtures().into_iter().take(2) {
        let (s, u) = abelian(&alg, &bound);
        let poset = enumerate_tilting(&s, &u, 1, false, CUTOFF).unwrap();
        for (e, t) in poset.elements.iter().zip(specs(&poset, &u)) {
            let tr = Transport::new(&t, &s, e.n, CUTOFF).unwrap();
            let ug = tr.gamma_universe(&vec![1; t.len()], DEFAULT_BUDGET).unwrap();
            let r = verify_miyashita(&tr, &u, &ug).unwrap();
            let parts = [&r.part1, &r.part2, &r.part3, &r.part4, &r.part5];
            ensure!(
                r.overall && parts.iter().all(|p| p.holds),
                "{name} {:?}: {:?}",
                e.names,
                parts.iter().map(|p| &p.detail).collect::<Vec<_>>()
            );
            ensure!(r.perp_members.len() == r.tor_perp_members.len(), "{name} {:?}: class sizes differ", e.names);
            for m in &r.perp_members {
                let i = u.names.iter().position(|x| x == m).unwrap();
                let x = &u.modules[i];
                let c = tr.end.counit(x).unwrap();
                ensure!(c.inverse().is_some(), "{name}: counit at {m} not invertible");
                ensure!(round_trip_iso(&tr, x).unwrap().is_some(), "{name}: no round trip at {m}");
                isos += 1;
            }
            for m in &r.tor_perp_members {
                let j = ug.names.iter().position(|x| x == m).unwrap();
                ensure!(tr.end.unit(&ug.modules[j]).unwrap().inverse().is_some(), "{name}: unit at {m}");
                isos += 1;
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} tilting specs, {isos} invertible (co)units"))
}

fn c9_relative() -> Check {
    let alg = dual();
    let sm = simples(&alg);
    let lam = indecomposable_projectives(&alg)[0].clone();
    let s = ExactStructure::relative(alg.clone(), vec![("S".into(), sm[0].clone())]).unwrap();
    let f = hom_space(&sm[0], &lam).unwrap().basis[0].clone();
    let (_, g) = f.cokernel();
    let c = s.is_conflation(&f, &g).unwrap();
    ensure!(c.short_exact && !c.holds(), "0->S->Λ->S->0 accepted: {c:?}");
    let u = Universe::enumerate(s.clone(), &[2], DEFAULT_BUDGET).unwrap();
    let gd = gldim(&s, Some(&u.modules), CUTOFF).unwrap();
    ensure!(gd == HomDim::Finite(0), "relative gldim {gd:?}");
    let poset = enumerate_tilting(&s, &u, 1, false, CUTOFF).unwrap();
    let want = SubcatSpec::new("T", vec![("P1".into(), lam.clone()), ("S".into(), sm[0].clone())]).unwrap();
    ensure!(poset.elements.len() == 1, "relative poset {:?}", poset.elements);
    ensure!(poset.spec(&u, 0).same_as(&want).unwrap(), "relative tilting is {:?}", poset.elements[0].names);
    ensure!(two_resolving_check(&s, &[2, 2], DEFAULT_BUDGET, CUTOFF).unwrap().holds, "2-resolving fails");

    let alg = a2();
    let p = indecomposable_projectives(&alg);
    let rel = ExactStructure::relative(alg.clone(), vec![("P1".into(), p[0].clone()), ("P2".into(), p[1].clone())])
        .unwrap();
    let ab = ExactStructure::abelian(alg.clone()).unwrap();
    let ur = Universe::enumerate(rel.clone(), &[1, 1], DEFAULT_BUDGET).unwrap();
    let ua = Universe::enumerate(ab.clone(), &[1, 1], DEFAULT_BUDGET).unwrap();
    ensure!(ur.names == ua.names, "universes differ");
    let mut compared = 0;
    for x in &ua.modules {
        ensure!(pdim(x, &rel, CUTOFF).unwrap() == pdim(x, &ab, CUTOFF).unwrap(), "pdim differs");
        for y in &ua.modules {
            for i in 0..3 {
                ensure!(rel.ext(x, y, i, CUTOFF).unwrap() == ab.ext(x, y, i, CUTOFF).unwrap(), "Ext^{i} differs");
                compared += 1;
            }
        }
    }
    let strip = |v: serde_json::Value| -> serde_json::Value {
        let mut v = v;
        v.as_object_mut().unwrap().remove("structure");
        v
    };
    let pr = strip(serde_json::to_value(enumerate_tilting(&rel, &ur, 1, false, CUTOFF).unwrap()).unwrap());
    let pa = strip(serde_json::to_value(enumerate_tilting(&ab, &ua, 1, false, CUTOFF).unwrap()).unwrap());
    ensure!(pr == pa, "posets differ");
    for c in subsets(ua.len(), 2) {
        for n in 0..=1 {
            let r = strip(serde_json::to_value(check_tilting(&ur.spec("T", &c), n, &rel, CUTOFF).unwrap()).unwrap());
            let a = strip(serde_json::to_value(check_tilting(&ua.spec("T", &c), n, &ab, CUTOFF).unwrap()).unwrap());
            ensure!(r == a, "tilting reports differ on {c:?}");
            compared += 1;
        }
    }
    let gr = gldim(&rel, Some(&ur.modules), CUTOFF).unwrap();
    let ga = gldim(&ab, Some(&ua.modules), CUTOFF).unwrap();
    ensure!(gr == ga, "gldim {gr:?} vs {ga:?}");
    Ok(format!("DUAL relative: add(Λ+S), gldim 0; A2: {compared} comparisons equal"))
}

fn c10_gldim() -> Check {
    let mut pairs = 0;
    for (name, alg, bound) in fixtures() {
        let (s, u) = abelian(&alg, &bound);
        let poset = enumerate_tilting(&s, &u, 1, false, CUTOFF).unwrap();
        for (e, t) in poset.elements.iter().zip(specs(&poset, &u)) {
            let tr = Transport::new(&t, &s, e.n, CUTOFF).unwrap();
            let gb = if name == "DUAL" { vec![2; t.len()] } else { vec![1; t.len()] };
            let ug = tr.gamma_universe(&gb, DEFAULT_BUDGET).unwrap();
            let r = verify_miyashita(&tr, &u, &ug).unwrap();
            let g = gldim_transfer_check(&tr, &u, &ug, r.resolving_depth).unwrap();
            ensure!(g.holds == Decision::Yes, "{name} {:?}: {:?}", e.names, g.inequalities);
            ensure!(g.inequalities.iter().all(|i| i.holds != Decision::Undecided), "{name}: undecided inequality");
            pairs += 1;
        }
    }
    let (s, u) = abelian(&dual(), &[2]);
    let gd = gldim(&s, Some(&u.modules), CUTOFF).unwrap();
    ensure!(gd == HomDim::Infinite, "DUAL gldim {gd:?}");
    Ok(format!("{pairs} (fixture, tilting) pairs; DUAL gldim infinite"))
}

fn c11_determinism() -> Check {
    let mut lines = 0;
    for name in ["a2", "a3", "dual"] {
        let golden = std::fs::read_to_string(common::golden(name)).map_err(|e| format!("{name}: {e}"))?;
        for jobs in ["1", "4"] {
            let t = common::transcript(name, &["--jobs", jobs]);
            ensure!(t == golden, "{name} transcript with --jobs {jobs} differs from the golden file");
        }
        for cmd in common::transcript_commands(name) {
            let mut args = cmd.clone();
            args.push("--verify-witness");
            let (code, v) = common::json(name, &args);
            ensure!(code == 0 || code == 1, "{name} {cmd:?} exited {code}");
            if let Some(r) = v.get("witness_replay") {
                ensure!(r["ok"] == true, "{name} {cmd:?}: replay {r}");
            }
        }
        lines += golden.lines().count();
    }
    Ok(format!("3 transcripts ({lines} lines) stable across jobs 1 and 4; replays ok"))
}

fn main() {
    let criteria: [(&str, fn() -> Check); 11] = [
        ("1 homological kernel vs Euler form", c1_euler_form),
        ("2 tilting counts", c2_counts),
        ("3 tilting test equivalence", c3_equivalence),
        ("4 perpendicular class three ways", c4_perp_three_ways),
        ("5 special tilting", c5_special),
        ("6 mutation soundness", c6_mutation),
        ("7 poset laws", c7_poset_laws),
        ("8 transport verification", c8_miyashita),
        ("9 relative structures", c9_relative),
        ("10 gldim transfer", c10_gldim),
        ("11 determinism and witness replay", c11_determinism),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let start = Instant::now();
        let out = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".into()));
        let took = start.elapsed();
        let out = match out {
            Ok(_) if took > LIMIT => Err(format!("took {took:.1?}")),
            o => o,
        };
        match out {
            Ok(msg) => println!("PASS criterion {name} ({took:.2?}): {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {name} ({took:.2?}): {msg}");
            }
        }
    }
    println!("{} of 11 criteria passed", 11 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
