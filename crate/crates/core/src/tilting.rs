//! Tilting subcategories: the decision procedures, perpendicular categories,
//! constructions (special tilting, mutation, the endomorphism-ring 1-tilt),
//! the partial order and poset enumeration.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::BasedAlgebra;
use crate::error::{Error, Result};
use crate::exactstruct::ExactStructure;
use crate::homology::{in_add, left_approximation, pdim, right_approximation, HomDim};
use crate::linalg::Mat;
use crate::miyashita::EndAlgebra;
use crate::modcat::{decompose, direct_sum, DirectSum, map_from_sum, map_into_sum, Module, ModuleMap};
use crate::subcat::{
    in_cores_n, in_gen_n, in_perp, in_pres_n, in_reso_n, standard_name, Degrees, ExtWitness, SubcatSpec,
    Universe,
};
use crate::Decision;

/// One coresolution `0 -> P -> T_0 -> ... ` per projective, as summand names.
#[derive(Clone, Debug, Serialize)]
pub struct CoresolutionWitness {
    pub projective: String,
    /// Summand names (with repetition) of each approximating term.
    pub terms: Vec<Vec<String>>,
    pub holds: bool,
    pub failure: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TiltingReport {
    pub candidate: Vec<String>,
    pub n: usize,
    pub structure: String,
    pub t1: Decision,
    pub t1_witness: Option<ExtWitness>,
    pub t2: Decision,
    pub pdims: Vec<(String, HomDim)>,
    pub t3: Decision,
    pub coresolutions: Vec<CoresolutionWitness>,
    pub overall: Decision,
}

fn part_names(t: &SubcatSpec, parts: &[usize]) -> Vec<String> {
    parts.iter().map(|&i| t.names()[i].clone()).collect()
}

/// Self-orthogonality: `Ext^i(T, T') = 0` for all summands, with a witness.
pub fn self_orthogonal(t: &SubcatSpec, s: &ExactStructure, cutoff: usize) -> Result<(Decision, Option<ExtWitness>)> {
    let mut acc = Decision::Yes;
    for (name, m) in t.names().iter().zip(t.summands()) {
        let v = in_perp(t, m, &Degrees::Positive, s, cutoff)?;
        if let Some(mut w) = v.witness {
            w.target = name.clone();
            return Ok((Decision::No, Some(w)));
        }
        acc = acc.and(v.decision);
    }
    Ok((acc, None))
}

/// Decides `n`-tilting through self-orthogonality, the projective dimension
/// bound and coresolutions of the projectives.
pub fn check_tilting(t: &SubcatSpec, n: usize, s: &ExactStructure, cutoff: usize) -> Result<TiltingReport> {
    let (t1, t1_witness) = self_orthogonal(t, s, cutoff)?;
    let mut t2 = Decision::Yes;
    let mut pdims = Vec::new();
    for (name, m) in t.names().iter().zip(t.summands()) {
        let d = pdim(m, s, cutoff)?;
        t2 = t2.and(match d {
            HomDim::Finite(k) => Decision::from_bool(k <= n),
            HomDim::Infinite => Decision::No,
            HomDim::Undecided => Decision::Undecided,
        });
        pdims.push((name.clone(), d));
    }
    let mut t3 = Decision::Yes;
    let mut coresolutions = Vec::new();
    for (name, p) in s.projectives().named() {
        let v = in_cores_n(t, &p, n, s)?;
        t3 = t3.and(Decision::from_bool(v.holds));
        coresolutions.push(CoresolutionWitness {
            projective: name,
            terms: v.stages.iter().map(|st| part_names(t, &st.approximation.parts)).collect(),
            holds: v.holds,
            failure: v.failure,
        });
    }
    Ok(TiltingReport {
        candidate: t.names().to_vec(),
        n,
        structure: s.label(),
        t1,
        t1_witness,
        t2,
        pdims,
        t3,
        coresolutions,
        overall: t1.and(t2).and(t3),
    })
}

/// Direct check of the defining axioms over a universe.
#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub candidate: Vec<String>,
    pub n: usize,
    pub perp_members: Vec<String>,
    pub self_orthogonal: Decision,
    pub witness: Option<ExtWitness>,
    /// Right `T`-approximations of perp members are deflations with perp kernels.
    pub enough_projectives: bool,
    pub ext_projectives: Vec<String>,
    pub ext_projectives_match: bool,
    pub injectives_in_perp: bool,
    /// Every member has a length-`n` coresolution by perp members.
    pub coresolving: bool,
    pub failures: Vec<String>,
    pub overall: Decision,
}

fn perp_indices(t: &SubcatSpec, s: &ExactStructure, u: &Universe, cutoff: usize) -> Result<(Vec<usize>, bool)> {
    let flags = u.members(|x| Ok(in_perp(t, x, &Degrees::Positive, s, cutoff)?.decision))?;
    let undecided = flags.contains(&Decision::Undecided);
    Ok(((0..u.len()).filter(|&i| flags[i] == Decision::Yes).collect(), undecided))
}

pub fn check_tilting_t1t2(t: &SubcatSpec, n: usize, s: &ExactStructure, u: &Universe, cutoff: usize) -> Result<AxiomReport> {
    let mut failures = Vec::new();
    let (so, witness) = self_orthogonal(t, s, cutoff)?;
    if so == Decision::No {
        failures.push("T is not self-orthogonal".to_string());
    }
    let (perp, undecided) = perp_indices(t, s, u, cutoff)?;
    if undecided {
        failures.push("perpendicularity undecided for some member".into());
    }
    let perp_spec = u.spec("T^perp", &perp);

    let mut enough = true;
    for &i in &perp {
        let x = &u.modules[i];
        let a = right_approximation(x, t)?;
        let ok = a.map.is_surjective() && s.is_deflation(&a.map)? && {
            let (k, _) = a.map.kernel();
            k.is_zero() || in_perp(t, &k, &Degrees::Positive, s, cutoff)?.decision == Decision::Yes
        };
        if !ok {
            enough = false;
            failures.push(format!("right approximation of {} fails", u.names[i]));
        }
    }

    let mut ext_proj = Vec::new();
    for &i in &perp {
        let mut proj = true;
        for &j in &perp {
            if s.ext(&u.modules[i], &u.modules[j], 1, cutoff)? != 0 {
                proj = false;
                break;
            }
        }
        if proj {
            ext_proj.push(i);
        }
    }
    let ext_spec = u.spec("P(T^perp)", &ext_proj);
    let mut matches = ext_spec.len() == t.len();
    for m in t.summands() {
        matches &= ext_spec.position(m)?.is_some();
    }
    if !matches {
        failures.push("Ext-projectives of the perpendicular category differ from T".into());
    }

    let mut inj_ok = true;
    for (i, x) in u.modules.iter().enumerate() {
        let mut injective = true;
        for y in &u.modules {
            if s.ext(y, x, 1, cutoff)? != 0 {
                injective = false;
                break;
            }
        }
        if injective && !perp.contains(&i) {
            inj_ok = false;
            failures.push(format!("injective {} is not perpendicular", u.names[i]));
        }
    }

    let cores: Vec<bool> = u
        .modules
        .par_iter()
        .map(|x| Ok(!perp_spec.is_empty() && in_cores_n(&perp_spec, x, n, s)?.holds))
        .collect::<Result<_>>()?;
    let mut coresolving = true;
    for (i, ok) in cores.iter().enumerate() {
        if !ok {
            coresolving = false;
            failures.push(format!("{} has no length-{n} perpendicular coresolution", u.names[i]));
        }
    }

    let decided = Decision::from_bool(enough && matches && inj_ok && coresolving);
    let overall = if undecided && decided == Decision::Yes {
        Decision::Undecided
    } else {
        so.and(decided)
    };
    Ok(AxiomReport {
        candidate: t.names().to_vec(),
        n,
        perp_members: perp.iter().map(|&i| u.names[i].clone()).collect(),
        self_orthogonal: so,
        witness,
        enough_projectives: enough,
        ext_projectives: ext_proj.iter().map(|&i| u.names[i].clone()).collect(),
        ext_projectives_match: matches,
        injectives_in_perp: inj_ok,
        coresolving,
        failures,
        overall,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PerpMember {
    pub name: String,
    /// Summand names of each stage of the `gen_{n-1}` chain.
    pub chain: Vec<Vec<String>>,
}

/// Members of `T^perp` in the universe, each with its generation chain.
pub fn perp_category(t: &SubcatSpec, n: usize, s: &ExactStructure, u: &Universe, cutoff: usize) -> Result<Vec<PerpMember>> {
    let (perp, _) = perp_indices(t, s, u, cutoff)?;
    perp.iter()
        .map(|&i| {
            let v = in_gen_n(t, &u.modules[i], n as i64 - 1, s)?;
            Ok(PerpMember {
                name: u.names[i].clone(),
                chain: v.stages.iter().map(|st| part_names(t, &st.approximation.parts)).collect(),
            })
        })
        .collect()
}

/// The perpendicular class computed three ways: via `pres_{n-1}`, `pres_n`
/// and raw Ext vanishing.
pub fn perp_three_ways(
    t: &SubcatSpec,
    n: usize,
    s: &ExactStructure,
    u: &Universe,
    cutoff: usize,
) -> Result<[Vec<String>; 3]> {
    let via = |k: i64| -> Result<Vec<String>> {
        let flags = u.members(|x| Ok(Decision::from_bool(in_pres_n(t, x, k, s)?.holds)))?;
        Ok((0..u.len()).filter(|&i| flags[i].is_yes()).map(|i| u.names[i].clone()).collect())
    };
    let (perp, _) = perp_indices(t, s, u, cutoff)?;
    Ok([
        via(n as i64 - 1)?,
        via(n as i64)?,
        perp.iter().map(|&i| u.names[i].clone()).collect(),
    ])
}

/// Membership of every perpendicular member in `Reso(T)`.
pub fn perp_in_reso(t: &SubcatSpec, n: usize, s: &ExactStructure, u: &Universe, cutoff: usize) -> Result<bool> {
    let (perp, _) = perp_indices(t, s, u, cutoff)?;
    for &i in &perp {
        if !in_reso_n(t, &u.modules[i], n.max(1) * u.modules[i].dim().max(1), s)?.holds {
            return Ok(false);
        }
    }
    Ok(true)
}

fn named_parts(alg: &Arc<BasedAlgebra>, m: &Module, fresh: &mut usize) -> Result<Vec<(String, Module)>> {
    let mut out = Vec::new();
    for (r, _) in decompose(m)?.with_multiplicities() {
        let name = standard_name(alg, &r, *fresh)?;
        if name.starts_with('M') {
            *fresh += 1;
        }
        out.push((name, r));
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct SpecialTilt {
    pub spec: SubcatSpec,
    pub report: TiltingReport,
}

/// `add(M)` together with the `n`-th cosyzygies of the projectives taken by
/// minimal left `M`-approximations.
pub fn special_tilting(m: &SubcatSpec, n: usize, s: &ExactStructure, cutoff: usize) -> Result<SpecialTilt> {
    let alg = s.algebra().clone();
    let (so, w) = self_orthogonal(m, s, cutoff)?;
    if so != Decision::Yes {
        return Err(Error::Precondition(format!("M is not self-orthogonal: {w:?}")));
    }
    for (name, x) in m.names().iter().zip(m.summands()) {
        match pdim(x, s, cutoff)? {
            HomDim::Finite(k) if k <= n.max(1) => {}
            d => return Err(Error::Precondition(format!("pdim {name} = {d} exceeds the bound"))),
        }
    }
    let mut named = m.named();
    let mut failing = Vec::new();
    let mut fresh = 0;
    for (pname, p) in s.projectives().named() {
        let mut cur = p.clone();
        let mut ok = true;
        for step in 0..n {
            if cur.is_zero() {
                break;
            }
            let a = left_approximation(&cur, m)?;
            if !a.map.is_injective() || !s.is_inflation(&a.map)? {
                failing.push(format!("{pname} (step {step}: no inflation into add({}))", m.name));
                ok = false;
                break;
            }
            cur = a.map.cokernel().0;
        }
        if ok && !cur.is_zero() {
            named.extend(named_parts(&alg, &cur, &mut fresh)?);
        }
    }
    if !failing.is_empty() {
        return Err(Error::Precondition(format!("failing projectives: {}", failing.join(", "))));
    }
    let spec = SubcatSpec::basic_closure("T", named)?;
    let report = check_tilting(&spec, n, s, cutoff)?;
    Ok(SpecialTilt { spec, report })
}

#[derive(Clone, Debug)]
pub struct EndoTilt {
    pub end: EndAlgebra,
    /// `Hom(Q, E)`.
    pub p: SubcatSpec,
    pub t: SubcatSpec,
    pub report: TiltingReport,
    pub universe_size: usize,
    pub gen_t: Vec<String>,
    pub gen_p: Vec<String>,
    pub gen_match: bool,
}

/// The special 1-tilt over `End(M ⊕ Q)` obtained by applying `Hom(-, E)`
/// to a right `add(Q)`-approximation `Q' -> E`.
pub fn endo_special_one_tilt(
    m: &Module,
    q: &Module,
    s: &ExactStructure,
    bound: Option<&[usize]>,
    budget: u64,
    cutoff: usize,
) -> Result<EndoTilt> {
    let alg = s.algebra().clone();
    if !in_add(q, s.projectives())? {
        return Err(Error::Precondition("Q is not projective".into()));
    }
    let e_spec = SubcatSpec::add_of("E", &[("M".into(), m.clone()), ("Q".into(), q.clone())])?;
    let q_spec = SubcatSpec::add_of("Q", &[("Q".into(), q.clone())])?;
    let e = e_spec.sum(&alg);
    let rho = right_approximation(&e, &q_spec)?;
    if !rho.map.is_surjective() {
        return Err(Error::Precondition("no epimorphism from add(Q) onto M".into()));
    }
    let end = EndAlgebra::new(&e_spec)?;
    let hom_e = end.hom_from(&e)?;
    let hom_q = end.hom_from(rho.object())?;
    let induced = end.hom_from_map(&rho.map)?;
    debug_assert!(induced.source().dims() == hom_e.dims() && induced.target().dims() == hom_q.dims());
    let (t1, _) = induced.cokernel();
    let p_mod = end.hom_from(q)?;
    let p = SubcatSpec::add_of("P", &[("Hom(Q,E)".into(), p_mod.clone())])?;
    let mut named = vec![("Hom(Q,E)".to_string(), p_mod)];
    if !t1.is_zero() {
        named.push(("T1".into(), t1));
    }
    let t = SubcatSpec::add_of("T", &named)?;
    let bs = ExactStructure::abelian(end.algebra.clone())?;
    let report = check_tilting(&t, 1, &bs, cutoff)?;
    let default_bound: Vec<usize>;
    let bound = match bound {
        Some(b) => b,
        None => {
            default_bound = vec![2; end.algebra.vertex_count()];
            &default_bound
        }
    };
    let ub = Universe::enumerate(bs.clone(), bound, budget)?;
    let gt = ub.members(|y| Ok(Decision::from_bool(in_gen_n(&t, y, 0, &bs)?.holds)))?;
    let gp = ub.members(|y| Ok(Decision::from_bool(in_gen_n(&p, y, 0, &bs)?.holds)))?;
    let pick = |flags: &[Decision]| -> Vec<String> {
        (0..ub.len()).filter(|&i| flags[i].is_yes()).map(|i| ub.names[i].clone()).collect()
    };
    Ok(EndoTilt {
        p,
        t,
        report,
        universe_size: ub.len(),
        gen_t: pick(&gt),
        gen_p: pick(&gp),
        gen_match: gt == gp,
        end,
    })
}

#[derive(Clone, Debug)]
pub enum MutationOutcome {
    Mutated { spec: SubcatSpec, leq: Decision },
    NotMutable { reason: String },
}

/// Replaces the complement `X` of `M` in `T` by the cokernels `Y` of the
/// minimal left `M`-approximations of its summands.
pub fn mutate(t: &SubcatSpec, m_indices: &[usize], s: &ExactStructure, cutoff: usize) -> Result<MutationOutcome> {
    let alg = s.algebra().clone();
    let m = t.sub("M", m_indices);
    let x_idx: Vec<usize> = (0..t.len()).filter(|i| !m_indices.contains(i)).collect();
    if x_idx.is_empty() {
        return Ok(MutationOutcome::Mutated {
            spec: t.clone(),
            leq: Decision::Yes,
        });
    }
    let not = |reason: String| Ok(MutationOutcome::NotMutable { reason });
    let mut named = m.named();
    let mut fresh = 0;
    let mut ys = Vec::new();
    for &i in &x_idx {
        let (xn, x) = (&t.names()[i], t.summand(i));
        if m.is_empty() || !in_gen_n(&m, x, 0, s)?.holds {
            return not(format!("{xn} is not generated by add({})", m.name));
        }
        let a = left_approximation(x, &m)?;
        if !a.map.is_injective() || !s.is_inflation(&a.map)? {
            let tgt = if a.parts.is_empty() {
                "0".to_string()
            } else {
                part_names(&m, &a.parts).join("+")
            };
            return not(format!("left approximation {xn}->{tgt} is not an inflation"));
        }
        let (y, _) = a.map.cokernel();
        // X = Ω_M Y: the kernel of the right M-approximation of Y recovers X
        let r = right_approximation(&y, &m)?;
        if !r.map.is_surjective() {
            return not(format!("cokernel of {xn} is not generated by add({})", m.name));
        }
        let (k, _) = r.map.kernel();
        let rest: Vec<Module> = decompose(&k)?
            .summands
            .into_iter()
            .map(|sm| sm.module)
            .filter(|sm| !matches!(m.position(sm), Ok(Some(_))))
            .collect();
        if rest.len() != 1 || !crate::modcat::is_isomorphic(&rest[0], x)? {
            return not(format!("kernel of the right approximation of Ω^-({xn}) is not {xn}"));
        }
        ys.push(y.clone());
        named.extend(named_parts(&alg, &y, &mut fresh)?);
    }
    for y in &ys {
        for (yn, part) in named_parts(&alg, y, &mut 0)? {
            let a = left_approximation(&part, &m)?;
            if !a.map.is_injective() {
                return not(format!("{yn} is not cogenerated by add({})", m.name));
            }
        }
    }
    let spec = SubcatSpec::basic_closure("T~", named)?;
    let (so, w) = self_orthogonal(&spec, s, cutoff)?;
    if so != Decision::Yes {
        return not(format!("mutated subcategory is not self-orthogonal: {w:?}"));
    }
    let order = leq(&spec, t, s, cutoff)?;
    Ok(MutationOutcome::Mutated { spec, leq: order })
}

/// `T1 <= T2`: every summand of `T1` lies in `T2^perp`.
pub fn leq(t1: &SubcatSpec, t2: &SubcatSpec, s: &ExactStructure, cutoff: usize) -> Result<Decision> {
    let mut acc = Decision::Yes;
    for m in t1.summands() {
        acc = acc.and(in_perp(t2, m, &Degrees::Positive, s, cutoff)?.decision);
        if acc == Decision::No {
            break;
        }
    }
    Ok(acc)
}

/// `T1^perp ⊆ T2^perp` over the universe.
pub fn leq_by_perp(t1: &SubcatSpec, t2: &SubcatSpec, s: &ExactStructure, u: &Universe, cutoff: usize) -> Result<bool> {
    let (a, _) = perp_indices(t1, s, u, cutoff)?;
    let (b, _) = perp_indices(t2, s, u, cutoff)?;
    Ok(a.iter().all(|i| b.contains(i)))
}

#[derive(Clone, Debug, Serialize)]
pub struct PosetElement {
    pub names: Vec<String>,
    pub indices: Vec<usize>,
    /// Least `n` for which the element is `n`-tilting.
    pub n: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct PosetLaws {
    pub reflexive: bool,
    pub antisymmetric: bool,
    pub transitive: bool,
    pub unique_maximum: Option<usize>,
    pub maximum_is_projectives: bool,
    pub maximal_rigidity: bool,
    pub order_cross_check: bool,
    /// Connectivity of the graph joining elements that differ in one summand.
    pub mutation_connected: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TiltingPoset {
    pub structure: String,
    pub candidates: usize,
    pub elements: Vec<PosetElement>,
    pub order: Vec<Vec<bool>>,
    pub undecided: Vec<Vec<String>>,
    pub laws: PosetLaws,
}

impl TiltingPoset {
    pub fn spec(&self, u: &Universe, i: usize) -> SubcatSpec {
        u.spec("T", &self.elements[i].indices)
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Least `n <= n_max` with `T` `n`-tilting.
pub fn tilting_level(t: &SubcatSpec, s: &ExactStructure, n_max: usize, cutoff: usize) -> Result<(Decision, usize)> {
    let mut undecided = false;
    for n in 0..=n_max {
        let r = check_tilting(t, n, s, cutoff)?;
        match r.overall {
            Decision::Yes => return Ok((Decision::Yes, n)),
            Decision::Undecided => undecided = true,
            Decision::No => {}
        }
        if r.t1 == Decision::No {
            break;
        }
    }
    Ok((if undecided { Decision::Undecided } else { Decision::No }, 0))
}

/// All basic tilting subcategories drawn from the universe, with the order.
pub fn enumerate_tilting(
    s: &ExactStructure,
    u: &Universe,
    n_max: usize,
    all_sizes: bool,
    cutoff: usize,
) -> Result<TiltingPoset> {
    let k = s.projectives().len();
    let sizes: Vec<usize> = if all_sizes { (1..=u.len()).collect() } else { vec![k] };
    let candidates: Vec<Vec<usize>> = sizes.iter().flat_map(|&z| subsets(u.len(), z)).collect();
    let verdicts: Vec<(Decision, usize)> = candidates
        .par_iter()
        .map(|c| tilting_level(&u.spec("T", c), s, n_max, cutoff))
        .collect::<Result<_>>()?;
    let mut elements = Vec::new();
    let mut undecided = Vec::new();
    for (c, (d, n)) in candidates.iter().zip(&verdicts) {
        let names: Vec<String> = c.iter().map(|&i| u.names[i].clone()).collect();
        match d {
            Decision::Yes => elements.push(PosetElement {
                names,
                indices: c.clone(),
                n: *n,
            }),
            Decision::Undecided => undecided.push(names),
            Decision::No => {}
        }
    }
    let specs: Vec<SubcatSpec> = elements.iter().map(|e| u.spec("T", &e.indices)).collect();
    let e = specs.len();
    let pairs: Vec<(usize, usize)> = (0..e).flat_map(|i| (0..e).map(move |j| (i, j))).collect();
    let rel: Vec<(bool, bool)> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let b = leq(&specs[i], &specs[j], s, cutoff)?.is_yes();
            let a = leq_by_perp(&specs[i], &specs[j], s, u, cutoff)?;
            Ok((b, a))
        })
        .collect::<Result<_>>()?;
    let mut order = vec![vec![false; e]; e];
    let mut cross = true;
    for (&(i, j), &(b, a)) in pairs.iter().zip(&rel) {
        order[i][j] = b;
        cross &= a == b;
    }
    let reflexive = (0..e).all(|i| order[i][i]);
    let antisymmetric = (0..e).all(|i| (0..e).all(|j| i == j || !(order[i][j] && order[j][i])));
    let transitive =
        (0..e).all(|i| (0..e).all(|j| (0..e).all(|l| !(order[i][j] && order[j][l]) || order[i][l])));
    let maxima: Vec<usize> = (0..e).filter(|&m| (0..e).all(|i| order[i][m])).collect();
    let unique_maximum = (maxima.len() == 1).then(|| maxima[0]);
    let maximum_is_projectives = match unique_maximum {
        Some(m) => specs[m].same_as(s.projectives())?,
        None => false,
    };
    let maximal_rigidity = (0..e).all(|i| {
        (0..e).all(|j| {
            i == j || !elements[i].indices.iter().all(|x| elements[j].indices.contains(x))
        })
    });
    let mut seen = vec![false; e];
    if e > 0 {
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in 0..e {
                let common = elements[i].indices.iter().filter(|x| elements[j].indices.contains(x)).count();
                let adjacent = elements[i].indices.len() == elements[j].indices.len()
                    && common + 1 == elements[i].indices.len();
                if adjacent && !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
    }
    Ok(TiltingPoset {
        structure: s.label(),
        candidates: candidates.len(),
        elements,
        order,
        undecided,
        laws: PosetLaws {
            reflexive,
            antisymmetric,
            transitive,
            unique_maximum,
            maximum_is_projectives,
            maximal_rigidity,
            order_cross_check: cross,
            mutation_connected: seen.iter().all(|&x| x),
        },
    })
}

#[derive(Clone, Debug)]
pub struct PushoutChain {
    /// `T_0, T_1, ...` in `add(T)`.
    pub terms: Vec<Module>,
    /// `T_0 -> L`, then `T_k -> T_(k-1)`.
    pub maps: Vec<ModuleMap>,
    pub l: Module,
    /// The inflation `X -> L`.
    pub comparison: ModuleMap,
}

/// Map `W -> Z` induced by `g` through a surjection `pi: D -> W` with
/// `g` vanishing on its kernel.
fn descend(pi: &ModuleMap, g: &ModuleMap) -> Result<ModuleMap> {
    let p = pi.source().modulus();
    let blocks = pi
        .blocks()
        .iter()
        .zip(g.blocks())
        .map(|(pb, gb)| {
            if pb.rows() == 0 {
                return Mat::zeros(gb.rows(), 0, p);
            }
            let rinv = pb.transpose().left_inverse().expect("surjective").transpose();
            gb.mul_mat(&rinv)
        })
        .collect();
    ModuleMap::new(pi.target().clone(), g.target().clone(), blocks)
}

/// Pushout of `f: C -> D` along `iota: C -> E`; returns `D -> W`, `E -> W`,
/// the quotient `D ⊕ E -> W` and the sum itself.
fn pushout(alg: &Arc<BasedAlgebra>, f: &ModuleMap, iota: &ModuleMap) -> (ModuleMap, ModuleMap, ModuleMap, DirectSum) {
    let sum = direct_sum(alg, &[f.target().clone(), iota.target().clone()]);
    let h = map_into_sum(f.source(), &sum, &[f.clone(), iota.neg()]);
    let (_, pi) = h.cokernel();
    let fd = pi.compose(&sum.inclusions[0]);
    let fe = pi.compose(&sum.inclusions[1]);
    (fd, fe, pi, sum)
}

/// Replaces a chain `X_(n-1) -> ... -> X_0 -> X -> 0` whose terms admit
/// coresolutions by `T` with one in `add(T)`, pushing out along left
/// `T`-approximations from the top. `chain[0]: X_0 -> X`,
/// `chain[k]: X_k -> X_(k-1)`.
pub fn pushout_coresolve(t: &SubcatSpec, chain: &[ModuleMap], s: &ExactStructure) -> Result<PushoutChain> {
    let alg = s.algebra().clone();
    let n = chain.len();
    if n == 0 {
        return Err(Error::Precondition("empty chain".into()));
    }
    for k in 1..n {
        if !chain[k - 1].compose(&chain[k]).is_zero() {
            return Err(Error::Precondition(format!("chain maps {k} and {} do not compose to zero", k - 1)));
        }
    }
    let x = chain[0].target().clone();
    let mut terms: Vec<Module> = vec![Module::zero(alg.clone()); n];
    let mut up: Vec<Option<ModuleMap>> = vec![None; n]; // T_k -> W_(k-1), later completed
    let mut cur = chain[n - 1].clone(); // C_k -> D
    let mut comparison = None;
    let mut l = x.clone();
    let mut t0_to_l = None;
    for k in (0..n).rev() {
        let c = cur.source().clone();
        let iota = if in_add(&c, t)? {
            ModuleMap::identity(&c)
        } else {
            let a = left_approximation(&c, t)?;
            if !a.map.is_injective() || !s.is_inflation(&a.map)? {
                return Err(Error::Precondition(format!("left approximation of term {k} is not an inflation")));
            }
            a.map
        };
        terms[k] = iota.target().clone();
        if k + 1 < n {
            // close the differential T_(k+1) -> C_k -> T_k
            let prev = up[k + 1].take().expect("set in the previous step");
            up[k + 1] = Some(iota.compose(&prev));
        }
        let (fd, fe, pi, sum) = pushout(&alg, &cur, &iota);
        if k == 0 {
            l = pi.target().clone();
            comparison = Some(fd);
            t0_to_l = Some(fe);
        } else {
            up[k] = Some(fe);
            let g_parts = [chain[k - 1].clone(), ModuleMap::zero(iota.target(), chain[k - 1].target())];
            let g = map_from_sum(&sum, chain[k - 1].target(), &g_parts);
            cur = descend(&pi, &g)?;
        }
    }
    let mut maps = vec![t0_to_l.expect("k = 0 reached")];
    for m in up.into_iter().skip(1) {
        maps.push(m.expect("every differential closed"));
    }
    let comparison = comparison.expect("k = 0 reached");
    if !comparison.is_injective() || !s.is_inflation(&comparison)? {
        return Err(Error::Precondition("comparison map is not an inflation".into()));
    }
    Ok(PushoutChain {
        terms,
        maps,
        l,
        comparison,
    })
}

/// Membership in the thick hull of a tilting subcategory, i.e. finite
/// projective dimension.
pub fn in_thick_of_tilting(m: &Module, s: &ExactStructure, cutoff: usize) -> Result<Decision> {
    Ok(match pdim(m, s, cutoff)? {
        HomDim::Finite(_) => Decision::Yes,
        HomDim::Infinite => Decision::No,
        HomDim::Undecided => Decision::Undecided,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{path_algebra, Quiver};
    use crate::homology::minimal_resolution;
    use crate::modcat::{indecomposable_projectives, is_isomorphic, simples};

    fn a2() -> (ExactStructure, Vec<Module>, Vec<Module>) {
        let q = Quiver::new().vertex("1").vertex("2").arrow("a", "1", "2");
        let a = Arc::new(path_algebra(&q, 2).unwrap());
        let s = ExactStructure::abelian(a.clone()).unwrap();
        (s, indecomposable_projectives(&a), simples(&a))
    }

    fn spec(parts: &[(&str, &Module)]) -> SubcatSpec {
        SubcatSpec::new("T", parts.iter().map(|(n, m)| (n.to_string(), (*m).clone())).collect()).unwrap()
    }

    #[test]
    fn check_tilting_examples() {
        let (s, p, sm) = a2();
        assert_eq!(check_tilting(&spec(&[("P1", &p[0]), ("P2", &p[1])]), 0, &s, 20).unwrap().overall, Decision::Yes);
        let r = check_tilting(&spec(&[("P1", &p[0]), ("S1", &sm[0])]), 1, &s, 20).unwrap();
        assert_eq!(r.overall, Decision::Yes);
        assert_eq!(r.pdims[1].1, HomDim::Finite(1));
        let r = check_tilting(&spec(&[("S1", &sm[0]), ("S2", &sm[1])]), 1, &s, 20).unwrap();
        assert_eq!(r.overall, Decision::No);
        let w = r.t1_witness.unwrap();
        assert_eq!((w.source.as_str(), w.target.as_str(), w.degree, w.dim), ("S1", "S2", 1, 1));
    }

    #[test]
    fn axioms_and_perp() {
        let (s, p, sm) = a2();
        let u = Universe::enumerate(s.clone(), &[1, 1], 1000).unwrap();
        let t = spec(&[("P1", &p[0]), ("S1", &sm[0])]);
        let r = check_tilting_t1t2(&t, 1, &s, &u, 20).unwrap();
        assert_eq!(r.overall, Decision::Yes, "{r:?}");
        let mut perp = r.perp_members.clone();
        perp.sort();
        assert_eq!(perp, vec!["P1", "S1"]);
        let proj = SubcatSpec::projectives(s.algebra()).unwrap();
        assert_eq!(perp_category(&proj, 0, &s, &u, 20).unwrap().len(), 3);
        let [a, b, c] = perp_three_ways(&t, 1, &s, &u, 20).unwrap();
        assert_eq!(a, c);
        assert_eq!(b, c);
    }

    #[test]
    fn special_tilting_examples() {
        let (s, p, sm) = a2();
        let r = special_tilting(&spec(&[("P1", &p[0])]), 1, &s, 20).unwrap();
        assert_eq!(r.report.overall, Decision::Yes);
        let expected = spec(&[("P1", &p[0]), ("S1", &sm[0])]);
        assert!(r.spec.same_as(&expected).unwrap());
        let all = SubcatSpec::projectives(s.algebra()).unwrap();
        assert!(special_tilting(&all, 0, &s, 20).unwrap().spec.same_as(&all).unwrap());
        let err = special_tilting(&spec(&[("S1", &sm[0])]), 1, &s, 20).unwrap_err();
        assert!(err.to_string().contains("P2"), "{err}");
    }

    #[test]
    fn endo_tilt_example() {
        let (s, p, sm) = a2();
        let r = endo_special_one_tilt(&sm[0], &p[0], &s, None, 100_000, 20).unwrap();
        assert_eq!(r.end.dim(), 3);
        assert_eq!(r.end.algebra.vertex_count(), 2);
        assert_eq!(r.report.overall, Decision::Yes);
        assert!(r.gen_match);
        let z = Module::zero(s.algebra().clone());
        let r0 = endo_special_one_tilt(&z, &p[0], &s, None, 100_000, 20).unwrap();
        assert_eq!(r0.report.overall, Decision::Yes);
        assert!(r0.t.same_as(&r0.p).unwrap());
        let rp = endo_special_one_tilt(&p[1], &p[0], &s, None, 100_000, 20);
        assert!(rp.is_err());
        let both = direct_sum(s.algebra(), &p).module;
        let rq = endo_special_one_tilt(&p[1], &both, &s, None, 100_000, 20).unwrap();
        assert_eq!(rq.report.overall, Decision::Yes);
    }

    #[test]
    fn mutation_examples() {
        let (s, p, sm) = a2();
        let t = spec(&[("P1", &p[0]), ("S1", &sm[0])]);
        match mutate(&t, &[0], &s, 20).unwrap() {
            MutationOutcome::NotMutable { reason } => {
                assert!(reason.contains("S1->0 is not an inflation"), "{reason}")
            }
            other => panic!("{other:?}"),
        }
        match mutate(&t, &[0, 1], &s, 20).unwrap() {
            MutationOutcome::Mutated { spec, .. } => assert!(spec.same_as(&t).unwrap()),
            other => panic!("{other:?}"),
        }
        let proj = spec(&[("P1", &p[0]), ("P2", &p[1])]);
        match mutate(&proj, &[0], &s, 20).unwrap() {
            MutationOutcome::NotMutable { reason } => assert!(reason.contains("P2 is not generated")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn order_and_poset() {
        let (s, p, sm) = a2();
        let t = spec(&[("P1", &p[0]), ("S1", &sm[0])]);
        let proj = spec(&[("P1", &p[0]), ("P2", &p[1])]);
        assert_eq!(leq(&t, &t, &s, 20).unwrap(), Decision::Yes);
        assert_eq!(leq(&t, &proj, &s, 20).unwrap(), Decision::Yes);
        assert_eq!(leq(&proj, &t, &s, 20).unwrap(), Decision::No);
        let u = Universe::enumerate(s.clone(), &[1, 1], 1000).unwrap();
        let poset = enumerate_tilting(&s, &u, 1, false, 20).unwrap();
        assert_eq!(poset.candidates, 3);
        assert_eq!(poset.elements.len(), 2);
        let l = &poset.laws;
        assert!(l.reflexive && l.antisymmetric && l.transitive && l.maximal_rigidity);
        assert!(l.maximum_is_projectives && l.order_cross_check && l.mutation_connected);
        let wide = enumerate_tilting(&s, &u, 1, true, 20).unwrap();
        assert_eq!(wide.elements.len(), 2);
    }

    #[test]
    fn pushout_example() {
        let (s, p, sm) = a2();
        let t = spec(&[("P1", &p[0]), ("S1", &sm[0])]);
        let res = minimal_resolution(&sm[0], 20).unwrap();
        let chain = vec![res.differentials[0].clone(), res.differentials[1].clone()];
        let out = pushout_coresolve(&t, &chain, &s).unwrap();
        assert!(out.terms.iter().all(|m| in_add(m, &t).unwrap()));
        assert!(decompose(&out.l).unwrap().summands.iter().any(|x| is_isomorphic(&x.module, &sm[0]).unwrap()));
        assert!(out.maps[0].compose(&out.maps[1]).is_zero());
        let inside = vec![ModuleMap::identity(&p[0])];
        let same = pushout_coresolve(&t, &inside, &s).unwrap();
        assert!(is_isomorphic(&same.l, &p[0]).unwrap());
    }

    #[test]
    fn thick_membership() {
        let (s, p, sm) = a2();
        assert_eq!(in_thick_of_tilting(&p[0], &s, 20).unwrap(), Decision::Yes);
        assert_eq!(in_thick_of_tilting(&sm[0], &s, 20).unwrap(), Decision::Yes);
    }
}
