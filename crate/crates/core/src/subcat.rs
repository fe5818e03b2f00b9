//! Additive subcategories `add(T)` and membership tests for the chain
//! operators `gen_n`, `pres_n`, `Cores_n`, `Reso_n` and perpendicular classes.
//!
//! Chains are always built from minimal approximations; a failed minimal
//! chain is reported as a failure.

use std::sync::Arc;

use once_cell::sync::OnceCell;
use rayon::prelude::*;

use crate::algebra::BasedAlgebra;
use crate::error::{Error, Result};
use crate::exactstruct::{vertex_projective_names, ExactStructure};
use crate::homology::{in_add, left_approximation, right_approximation, Approximation, LengthFlag};
use crate::modcat::{
    decompose, direct_sum, endo_radical, enumerate_indecomposables, ext1_cocycle_basis,
    extension_from_cocycle, hom_space, indecomposable_iso, indecomposable_injectives,
    indecomposable_projectives, is_indecomposable, simples, Module, ModuleMap,
};
use crate::Decision;

type RadicalTable = Vec<Vec<Vec<ModuleMap>>>;

/// `add(T_1 ⊕ ... ⊕ T_k)` for pairwise non-isomorphic indecomposables `T_i`.
#[derive(Clone)]
pub struct SubcatSpec {
    pub name: String,
    names: Vec<String>,
    summands: Vec<Module>,
    radicals: Arc<OnceCell<RadicalTable>>,
}

impl std::fmt::Debug for SubcatSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}{{{}}}", self.name, self.names.join(","))
    }
}

impl SubcatSpec {
    fn new_unchecked(name: &str, named: Vec<(String, Module)>) -> SubcatSpec {
        let (names, summands) = named.into_iter().unzip();
        SubcatSpec {
            name: name.to_string(),
            names,
            summands,
            radicals: Arc::new(OnceCell::new()),
        }
    }

    /// Checks that every summand is indecomposable and that no two are isomorphic.
    pub fn new(name: &str, named: Vec<(String, Module)>) -> Result<SubcatSpec> {
        for (i, (ni, mi)) in named.iter().enumerate() {
            if !mi.same_algebra_as(&named[0].1) {
                return Err(Error::AlgebraMismatch);
            }
            if !is_indecomposable(mi)? {
                return Err(Error::Precondition(format!("{ni} is not indecomposable")));
            }
            for (nj, mj) in &named[..i] {
                if indecomposable_iso(mi, mj)?.is_some() {
                    return Err(Error::Precondition(format!("{ni} is isomorphic to {nj}")));
                }
            }
        }
        Ok(Self::new_unchecked(name, named))
    }

    /// Indecomposables with repetitions removed (first occurrence wins).
    pub fn basic_closure(name: &str, named: Vec<(String, Module)>) -> Result<SubcatSpec> {
        let mut kept: Vec<(String, Module)> = Vec::new();
        for (n, m) in named {
            if !is_indecomposable(&m)? {
                return Err(Error::Precondition(format!("{n} is not indecomposable")));
            }
            let mut dup = false;
            for (_, k) in &kept {
                if indecomposable_iso(k, &m)?.is_some() {
                    dup = true;
                    break;
                }
            }
            if !dup {
                kept.push((n, m));
            }
        }
        Ok(Self::new_unchecked(name, kept))
    }

    /// `add` of arbitrary modules: decomposes each and keeps one copy of
    /// every indecomposable summand.
    pub fn add_of(name: &str, named: &[(String, Module)]) -> Result<SubcatSpec> {
        let mut parts = Vec::new();
        for (n, m) in named {
            let dec = decompose(m)?;
            let reps = dec.with_multiplicities();
            let many = reps.len() > 1;
            for (k, (r, _)) in reps.into_iter().enumerate() {
                parts.push((if many { format!("{n}[{k}]") } else { n.clone() }, r));
            }
        }
        Self::basic_closure(name, parts)
    }

    /// The indecomposable projectives `P_v`.
    pub fn projectives(alg: &Arc<BasedAlgebra>) -> Result<SubcatSpec> {
        let named = vertex_projective_names(alg)
            .into_iter()
            .zip(indecomposable_projectives(alg))
            .collect();
        Ok(Self::new_unchecked("P", named))
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn summands(&self) -> &[Module] {
        &self.summands
    }

    pub fn summand(&self, i: usize) -> &Module {
        &self.summands[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn named(&self) -> Vec<(String, Module)> {
        self.names.iter().cloned().zip(self.summands.iter().cloned()).collect()
    }

    /// `T_1 ⊕ ... ⊕ T_k`.
    pub fn sum(&self, alg: &Arc<BasedAlgebra>) -> Module {
        direct_sum(alg, &self.summands).module
    }

    /// `rad(T_i, T_j)`: all maps for `i != j`, the radical of `End(T_i)` otherwise.
    pub fn radical(&self, i: usize, j: usize) -> Result<&[ModuleMap]> {
        let table = self.radicals.get_or_try_init(|| -> Result<RadicalTable> {
            let k = self.summands.len();
            let mut rows = Vec::with_capacity(k);
            for a in 0..k {
                let mut row = Vec::with_capacity(k);
                for b in 0..k {
                    if a == b {
                        row.push(endo_radical(&self.summands[a])?);
                    } else {
                        row.push(hom_space(&self.summands[a], &self.summands[b])?.basis);
                    }
                }
                rows.push(row);
            }
            Ok(rows)
        })?;
        Ok(&table[i][j])
    }

    /// Index of the summand isomorphic to the indecomposable `m`.
    pub fn position(&self, m: &Module) -> Result<Option<usize>> {
        for (i, t) in self.summands.iter().enumerate() {
            if indecomposable_iso(t, m)?.is_some() {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    pub fn sub(&self, name: &str, indices: &[usize]) -> SubcatSpec {
        let named = indices
            .iter()
            .map(|&i| (self.names[i].clone(), self.summands[i].clone()))
            .collect();
        Self::new_unchecked(name, named)
    }

    /// Whether both specs have the same summands up to isomorphism.
    pub fn same_as(&self, other: &SubcatSpec) -> Result<bool> {
        if self.len() != other.len() {
            return Ok(false);
        }
        for m in &other.summands {
            if self.position(m)?.is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Whether every summand of `self` is (isomorphic to) a summand of `other`.
    pub fn contained_in(&self, other: &SubcatSpec) -> Result<bool> {
        for m in &self.summands {
            if other.position(m)?.is_none() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// A finite, duplicate-free list of indecomposables standing in for the
/// whole category in universally quantified checks.
#[derive(Clone, Debug)]
pub struct Universe {
    pub modules: Vec<Module>,
    pub names: Vec<String>,
    pub structure: ExactStructure,
    pub bound: Vec<usize>,
}

/// Conventional names: `P<v>`, `S<v>`, `I<v>` when the module is one of
/// those (in that order of preference), `M<k>` otherwise.
pub fn standard_name(alg: &Arc<BasedAlgebra>, m: &Module, fallback: usize) -> Result<String> {
    let labels = alg.vertex_labels();
    let families = [
        ("P", indecomposable_projectives(alg)),
        ("S", simples(alg)),
        ("I", indecomposable_injectives(alg)),
    ];
    for (prefix, mods) in &families {
        for (v, x) in mods.iter().enumerate() {
            if indecomposable_iso(x, m)?.is_some() {
                return Ok(format!("{prefix}{}", labels[v]));
            }
        }
    }
    Ok(format!("M{fallback}"))
}

impl Universe {
    pub fn new(structure: ExactStructure, named: Vec<(String, Module)>, bound: Vec<usize>) -> Result<Universe> {
        for (i, (_, m)) in named.iter().enumerate() {
            for (nj, mj) in &named[..i] {
                if indecomposable_iso(m, mj)?.is_some() {
                    return Err(Error::Precondition(format!("universe repeats {nj}")));
                }
            }
        }
        let (names, modules) = named.into_iter().unzip();
        Ok(Universe {
            modules,
            names,
            structure,
            bound,
        })
    }

    /// All indecomposables up to the dimension bound.
    pub fn enumerate(structure: ExactStructure, bound: &[usize], budget: u64) -> Result<Universe> {
        let alg = structure.algebra().clone();
        let modules = enumerate_indecomposables(&alg, bound, budget)?;
        let mut names = Vec::new();
        let mut fresh = 0;
        for m in &modules {
            let n = standard_name(&alg, m, fresh)?;
            if n.starts_with('M') {
                fresh += 1;
            }
            names.push(n);
        }
        Ok(Universe {
            modules,
            names,
            structure,
            bound: bound.to_vec(),
        })
    }

    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    pub fn position(&self, m: &Module) -> Result<Option<usize>> {
        for (i, x) in self.modules.iter().enumerate() {
            if indecomposable_iso(x, m)?.is_some() {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    pub fn spec(&self, name: &str, indices: &[usize]) -> SubcatSpec {
        let named = indices
            .iter()
            .map(|&i| (self.names[i].clone(), self.modules[i].clone()))
            .collect();
        SubcatSpec::new_unchecked(name, named)
    }

    /// Evaluates a predicate on every member in parallel, in member order.
    pub fn members<F>(&self, f: F) -> Result<Vec<Decision>>
    where
        F: Fn(&Module) -> Result<Decision> + Sync,
    {
        self.modules.par_iter().map(|m| f(m)).collect()
    }
}

/// Which positive degrees a perpendicularity test covers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Degrees {
    /// Every `i >= 1`, decided through a projective-dimension certificate.
    Positive,
    List(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct ExtWitness {
    pub source: String,
    pub target: String,
    pub degree: usize,
    pub dim: usize,
}

#[derive(Clone, Debug)]
pub struct PerpVerdict {
    pub decision: Decision,
    pub witness: Option<ExtWitness>,
}

/// Degrees of `Ext^i(X, -)` that must vanish for `Ext^{>=1}(X, -) = 0`,
/// and whether that list is a certificate (`false` when truncated).
pub fn certified_degrees(x: &Module, s: &ExactStructure, cutoff: usize) -> Result<(Vec<usize>, bool)> {
    let res = s.resolution(x, cutoff)?;
    Ok(match res.flag {
        LengthFlag::Finite { length } => ((1..=length).collect(), true),
        LengthFlag::Periodic { entry, .. } => ((1..=entry.max(1)).collect(), true),
        LengthFlag::Truncated { cutoff } => ((1..=cutoff).collect(), false),
    })
}

/// Whether `Ext^i(T, M) = 0` for the given degrees.
pub fn in_perp(t: &SubcatSpec, m: &Module, degrees: &Degrees, s: &ExactStructure, cutoff: usize) -> Result<PerpVerdict> {
    let mut undecided = false;
    for (ti, name) in t.summands().iter().zip(t.names()) {
        let (list, certified) = match degrees {
            Degrees::Positive => certified_degrees(ti, s, cutoff)?,
            Degrees::List(l) => (l.clone(), true),
        };
        for &i in &list {
            let d = s.ext(ti, m, i, cutoff)?;
            if d != 0 {
                return Ok(PerpVerdict {
                    decision: Decision::No,
                    witness: Some(ExtWitness {
                        source: name.clone(),
                        target: String::new(),
                        degree: i,
                        dim: d,
                    }),
                });
            }
        }
        undecided |= !certified;
    }
    Ok(PerpVerdict {
        decision: if undecided { Decision::Undecided } else { Decision::Yes },
        witness: None,
    })
}

/// One stage of an approximation chain.
#[derive(Clone, Debug)]
pub struct ChainStage {
    pub approximation: Approximation,
    /// Kernel (right chains) or cokernel (left chains) passed to the next stage.
    pub remainder: Module,
}

#[derive(Clone, Debug)]
pub struct ChainVerdict {
    pub holds: bool,
    pub stages: Vec<ChainStage>,
    pub failure: Option<String>,
}

impl ChainVerdict {
    fn success(stages: Vec<ChainStage>) -> ChainVerdict {
        ChainVerdict {
            holds: true,
            stages,
            failure: None,
        }
    }

    fn failed(stages: Vec<ChainStage>, reason: String) -> ChainVerdict {
        ChainVerdict {
            holds: false,
            stages,
            failure: Some(reason),
        }
    }
}

fn right_chain(t: &SubcatSpec, m: &Module, n: i64, s: &ExactStructure, check_gen: bool) -> Result<ChainVerdict> {
    let mut stages = Vec::new();
    let mut cur = m.clone();
    for k in 0..=n.max(-1) {
        if cur.is_zero() {
            break;
        }
        let approx = right_approximation(&cur, t)?;
        if !approx.map.is_surjective() {
            return Ok(ChainVerdict::failed(
                stages,
                format!("stage {k}: right {}-approximation is not surjective", t.name),
            ));
        }
        if !s.is_deflation(&approx.map)? {
            return Ok(ChainVerdict::failed(
                stages,
                format!("stage {k}: right {}-approximation is not a deflation", t.name),
            ));
        }
        let (kernel, _) = approx.map.kernel();
        if check_gen {
            for (ti, name) in t.summands().iter().zip(t.names()) {
                let mid = hom_space(ti, approx.object())?.dim();
                let sides = hom_space(ti, &kernel)?.dim() + hom_space(ti, &cur)?.dim();
                if mid != sides {
                    return Ok(ChainVerdict::failed(
                        stages,
                        format!("stage {k}: Hom({name}, -) is not exact"),
                    ));
                }
            }
        }
        stages.push(ChainStage {
            approximation: approx,
            remainder: kernel.clone(),
        });
        cur = kernel;
    }
    Ok(ChainVerdict::success(stages))
}

/// Membership in `gen_n(T)`; `n < 0` accepts everything.
pub fn in_gen_n(t: &SubcatSpec, m: &Module, n: i64, s: &ExactStructure) -> Result<ChainVerdict> {
    right_chain(t, m, n, s, true)
}

/// Minimal-chain membership in `pres_n(T)`; `n < 0` accepts everything.
pub fn in_pres_n(t: &SubcatSpec, m: &Module, n: i64, s: &ExactStructure) -> Result<ChainVerdict> {
    right_chain(t, m, n, s, false)
}

/// Exhaustive search for a presentation chain built from arbitrary
/// surjections out of `add(T)` (multiplicity at most `max_mult` per summand),
/// used when the minimal chain fails. Returns `Undecided` when the budget,
/// counted in candidate maps, runs out.
pub fn in_pres_n_exhaustive(
    t: &SubcatSpec,
    m: &Module,
    n: i64,
    s: &ExactStructure,
    max_mult: usize,
    budget: u64,
) -> Result<Decision> {
    let mut left = budget;
    let r = pres_search(t, m, n, s, max_mult, &mut left)?;
    Ok(match r {
        Some(true) => Decision::Yes,
        Some(false) => Decision::No,
        None => Decision::Undecided,
    })
}

fn pres_search(t: &SubcatSpec, m: &Module, n: i64, s: &ExactStructure, max_mult: usize, left: &mut u64) -> Result<Option<bool>> {
    if n < 0 || m.is_zero() {
        return Ok(Some(true));
    }
    let alg = m.algebra().clone();
    let p = alg.modulus() as u64;
    let k = t.len();
    let mut mults = vec![0usize; k];
    let mut exhausted_budget = false;
    loop {
        // next multiplicity vector
        let mut i = 0;
        while i < k {
            mults[i] += 1;
            if mults[i] <= max_mult {
                break;
            }
            mults[i] = 0;
            i += 1;
        }
        if i == k {
            break;
        }
        let mods: Vec<Module> = mults
            .iter()
            .enumerate()
            .flat_map(|(j, &c)| std::iter::repeat(t.summand(j).clone()).take(c))
            .collect();
        let x = direct_sum(&alg, &mods).module;
        if x.dim() < m.dim() {
            continue;
        }
        let hom = hom_space(&x, m)?;
        let count = p.checked_pow(hom.dim() as u32).unwrap_or(u64::MAX);
        if count > *left {
            exhausted_budget = true;
            continue;
        }
        *left -= count;
        let mut coeffs = vec![0u32; hom.dim()];
        for _ in 0..count {
            let f = hom.combination(&coeffs);
            if f.is_surjective() && s.is_deflation(&f)? {
                let (kernel, _) = f.kernel();
                match pres_search(t, &kernel, n - 1, s, max_mult, left)? {
                    Some(true) => return Ok(Some(true)),
                    Some(false) => {}
                    None => exhausted_budget = true,
                }
            }
            for c in coeffs.iter_mut() {
                *c += 1;
                if (*c as u64) < p {
                    break;
                }
                *c = 0;
            }
        }
    }
    Ok(if exhausted_budget { None } else { Some(false) })
}

/// Membership in `Cores_n(T)`: at most `n` left approximations, each an
/// inflation, ending in `add(T)`.
pub fn in_cores_n(t: &SubcatSpec, m: &Module, n: usize, s: &ExactStructure) -> Result<ChainVerdict> {
    let mut stages = Vec::new();
    let mut cur = m.clone();
    for k in 0..=n {
        if in_add(&cur, t)? {
            return Ok(ChainVerdict::success(stages));
        }
        if k == n {
            return Ok(ChainVerdict::failed(
                stages,
                format!("cokernel after {n} steps is not in add({})", t.name),
            ));
        }
        let approx = left_approximation(&cur, t)?;
        if !s.is_inflation(&approx.map)? {
            return Ok(ChainVerdict::failed(
                stages,
                format!("stage {k}: left {}-approximation is not an inflation", t.name),
            ));
        }
        let (coker, _) = approx.map.cokernel();
        stages.push(ChainStage {
            approximation: approx,
            remainder: coker.clone(),
        });
        cur = coker;
    }
    unreachable!("loop returns at k == n")
}

/// Membership in `Reso_n(T)`: at most `n` right approximations, each a
/// deflation, ending in `add(T)`.
pub fn in_reso_n(t: &SubcatSpec, m: &Module, n: usize, s: &ExactStructure) -> Result<ChainVerdict> {
    let mut stages = Vec::new();
    let mut cur = m.clone();
    for k in 0..=n {
        if in_add(&cur, t)? {
            return Ok(ChainVerdict::success(stages));
        }
        if k == n {
            return Ok(ChainVerdict::failed(
                stages,
                format!("kernel after {n} steps is not in add({})", t.name),
            ));
        }
        let approx = right_approximation(&cur, t)?;
        if !s.is_deflation(&approx.map)? {
            return Ok(ChainVerdict::failed(
                stages,
                format!("stage {k}: right {}-approximation is not a deflation", t.name),
            ));
        }
        let (kernel, _) = approx.map.kernel();
        stages.push(ChainStage {
            approximation: approx,
            remainder: kernel.clone(),
        });
        cur = kernel;
    }
    unreachable!("loop returns at k == n")
}

#[derive(Clone, Debug)]
pub struct ResolvingVerdict {
    pub holds: bool,
    pub counterexample: Option<String>,
}

/// Resolving test over a finite universe: contains the projectives, closed
/// under kernels of deflations and under extensions between members
/// (enumerated up to `budget` maps or classes), and generating.
pub fn is_resolving(t: &SubcatSpec, u: &Universe, budget: u64) -> Result<ResolvingVerdict> {
    let s = &u.structure;
    let fail = |msg: String| {
        Ok(ResolvingVerdict {
            holds: false,
            counterexample: Some(msg),
        })
    };
    for (name, p) in s.projectives().named() {
        if t.position(&p)?.is_none() {
            return fail(format!("projective {name} is missing"));
        }
    }
    let alg = s.algebra().clone();
    let pp = alg.modulus() as u64;
    let mut spent: u64 = 0;
    // kernels of deflations X -> Y with X a sum of at most two summands
    let k = t.len();
    let mut sources: Vec<(String, Module)> = t.named();
    for i in 0..k {
        for j in i..k {
            let m = direct_sum(&alg, &[t.summand(i).clone(), t.summand(j).clone()]).module;
            sources.push((format!("{}+{}", t.names()[i], t.names()[j]), m));
        }
    }
    for (xn, x) in &sources {
        for (yn, y) in t.named() {
            let hom = hom_space(x, &y)?;
            let count = pp.checked_pow(hom.dim() as u32).unwrap_or(u64::MAX);
            spent = spent.saturating_add(count);
            if spent > budget {
                return Err(Error::Budget(format!("deflation scan over Hom({xn}, {yn})")));
            }
            let mut coeffs = vec![0u32; hom.dim()];
            for _ in 0..count {
                let f = hom.combination(&coeffs);
                if f.is_surjective() && s.is_deflation(&f)? {
                    let (kernel, _) = f.kernel();
                    if !in_add(&kernel, t)? {
                        return fail(format!("kernel of a deflation {xn} -> {yn} leaves {}", t.name));
                    }
                }
                for c in coeffs.iter_mut() {
                    *c += 1;
                    if (*c as u64) < pp {
                        break;
                    }
                    *c = 0;
                }
            }
        }
    }
    // extensions between summands
    for (cn, c) in t.named() {
        for (an, a) in t.named() {
            let reps = ext1_cocycle_basis(&c, &a)?;
            let count = pp.checked_pow(reps.len() as u32).unwrap_or(u64::MAX);
            spent = spent.saturating_add(count);
            if spent > budget {
                return Err(Error::Budget(format!("extension scan over Ext^1({cn}, {an})")));
            }
            let mut coeffs = vec![0u32; reps.len()];
            for _ in 0..count {
                if coeffs.iter().any(|&x| x != 0) {
                    let len = reps[0].len();
                    let mut delta = vec![0u32; len];
                    for (r, &cf) in reps.iter().zip(&coeffs) {
                        for (d, &v) in delta.iter_mut().zip(r) {
                            *d = (*d + cf * v) % alg.modulus();
                        }
                    }
                    let e = extension_from_cocycle(&c, &a, &delta)?;
                    if s.is_conflation(&e.inflation, &e.deflation)?.holds() && !in_add(&e.middle, t)? {
                        return fail(format!("an extension of {cn} by {an} leaves {}", t.name));
                    }
                }
                for x in coeffs.iter_mut() {
                    *x += 1;
                    if (*x as u64) < pp {
                        break;
                    }
                    *x = 0;
                }
            }
        }
    }
    for (name, m) in u.names.iter().zip(&u.modules) {
        if !in_gen_n(t, m, 0, s)?.holds {
            return fail(format!("{name} is not generated by {}", t.name));
        }
    }
    Ok(ResolvingVerdict {
        holds: true,
        counterexample: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{path_algebra, Quiver};

    fn a2() -> Arc<BasedAlgebra> {
        let q = Quiver::new().vertex("1").vertex("2").arrow("a", "1", "2");
        Arc::new(path_algebra(&q, 2).unwrap())
    }

    fn dual() -> Arc<BasedAlgebra> {
        let q = Quiver::new().vertex("1").arrow("x", "1", "1").relation(&[(1, "x.x")]);
        Arc::new(path_algebra(&q, 2).unwrap())
    }

    struct A2 {
        s: ExactStructure,
        u: Universe,
        p1: Module,
        p2: Module,
        s1: Module,
        s2: Module,
    }

    fn setup() -> A2 {
        let a = a2();
        let s = ExactStructure::abelian(a.clone()).unwrap();
        let u = Universe::enumerate(s.clone(), &[1, 1], 1000).unwrap();
        let p = indecomposable_projectives(&a);
        let sm = simples(&a);
        A2 {
            s,
            u,
            p1: p[0].clone(),
            p2: p[1].clone(),
            s1: sm[0].clone(),
            s2: sm[1].clone(),
        }
    }

    fn spec(items: &[(&str, &Module)]) -> SubcatSpec {
        SubcatSpec::new("T", items.iter().map(|(n, m)| (n.to_string(), (*m).clone())).collect()).unwrap()
    }

    #[test]
    fn universe_names() {
        let f = setup();
        assert_eq!(f.u.names, vec!["P2", "S1", "P1"]);
    }

    #[test]
    fn perp_examples() {
        let f = setup();
        let t = spec(&[("P1", &f.p1), ("S1", &f.s1)]);
        let v = in_perp(&t, &f.s2, &Degrees::Positive, &f.s, 20).unwrap();
        assert_eq!(v.decision, Decision::No);
        assert_eq!(v.witness.unwrap().source, "S1");
        for m in [&f.p1, &f.s1] {
            assert_eq!(in_perp(&t, m, &Degrees::Positive, &f.s, 20).unwrap().decision, Decision::Yes);
        }
    }

    #[test]
    fn chain_examples() {
        let f = setup();
        let t = spec(&[("P1", &f.p1), ("S1", &f.s1)]);
        assert!(in_pres_n(&t, &f.p1, 1, &f.s).unwrap().holds);
        assert!(!in_pres_n(&t, &f.s2, 1, &f.s).unwrap().holds);
        assert!(!in_pres_n(&t, &f.p2, 1, &f.s).unwrap().holds);
        assert!(in_cores_n(&t, &f.p2, 1, &f.s).unwrap().holds);
        assert!(!in_cores_n(&t, &f.p2, 0, &f.s).unwrap().holds);

        let tp = spec(&[("P1", &f.p1)]);
        assert!(in_gen_n(&tp, &f.s1, 0, &f.s).unwrap().holds);
        assert!(!in_gen_n(&tp, &f.s2, 0, &f.s).unwrap().holds);
        assert!(!in_cores_n(&tp, &f.s1, 3, &f.s).unwrap().holds);
        assert!(in_gen_n(&tp, &f.s2, -1, &f.s).unwrap().holds);

        let proj = SubcatSpec::projectives(f.s.algebra()).unwrap();
        assert!(in_reso_n(&proj, &f.s1, 1, &f.s).unwrap().holds);
        assert!(!in_reso_n(&proj, &f.s1, 0, &f.s).unwrap().holds);

        let d = dual();
        let sd = ExactStructure::abelian(d.clone()).unwrap();
        let pd = SubcatSpec::projectives(&d).unwrap();
        for n in 0..6 {
            assert!(!in_reso_n(&pd, &simples(&d)[0], n, &sd).unwrap().holds);
        }
    }

    #[test]
    fn resolving_examples() {
        let f = setup();
        let proj = SubcatSpec::projectives(f.s.algebra()).unwrap();
        assert!(is_resolving(&proj, &f.u, 100_000).unwrap().holds);
        let t = spec(&[("P1", &f.p1), ("P2", &f.p2), ("S1", &f.s1)]);
        assert!(is_resolving(&t, &f.u, 100_000).unwrap().holds);
        let t = spec(&[("S1", &f.s1), ("S2", &f.s2)]);
        let v = is_resolving(&t, &f.u, 100_000).unwrap();
        assert!(!v.holds);
        assert!(v.counterexample.unwrap().contains("P1"));
    }

    #[test]
    fn spec_rejects_duplicates() {
        let f = setup();
        let err = SubcatSpec::new("T", vec![("A".into(), f.s2.clone()), ("B".into(), f.p2.clone())]);
        assert!(err.is_err());
    }
}
