//! Approximations, minimal resolutions, Ext and Tor.
//!
//! Everything here is parametrised by a [`SubcatSpec`] of projective objects,
//! so the abelian and the relative structures share one code path: the
//! projective cover is the minimal right approximation by the indecomposable
//! projectives, and a relative resolution uses the relative projectives.

use std::sync::Arc;

use serde::Serialize;

use crate::algebra::BasedAlgebra;
use crate::error::{Error, Result};
use crate::exactstruct::ExactStructure;
use crate::linalg::{Mat, SpanBuilder};
use crate::modcat::{
    direct_sum, find_isomorphism, hom_space, map_from_sum, map_into_sum, simples, DirectSum, Module,
    ModuleMap,
};
use crate::subcat::SubcatSpec;

/// A minimal approximation by `add(T)`.
#[derive(Clone, Debug)]
pub struct Approximation {
    /// Summand index of each copy in the approximating object, in order.
    pub parts: Vec<usize>,
    pub sum: DirectSum,
    /// Right approximations map `sum -> M`, left ones `M -> sum`.
    pub map: ModuleMap,
}

impl Approximation {
    pub fn object(&self) -> &Module {
        &self.sum.module
    }

    pub fn multiplicities(&self, n: usize) -> Vec<usize> {
        let mut out = vec![0; n];
        for &i in &self.parts {
            out[i] += 1;
        }
        out
    }
}

/// Picks basis elements of `hom` whose classes span `hom / rad_images`.
fn top_complement(hom: &crate::modcat::HomSpace, rad_images: &[ModuleMap]) -> Vec<usize> {
    let p = hom.source.modulus();
    let h = hom.dim();
    let mut span = SpanBuilder::new(h, p);
    for g in rad_images {
        span.insert(&hom.coords(g));
    }
    let mut chosen = Vec::new();
    for k in 0..h {
        let mut e = vec![0; h];
        e[k] = 1;
        if span.insert(&e) {
            chosen.push(k);
        }
    }
    chosen
}

/// Minimal right `add(T)`-approximation `T_0 -> M`.
pub fn right_approximation(m: &Module, t: &SubcatSpec) -> Result<Approximation> {
    let alg = m.algebra().clone();
    let summands = t.summands();
    let homs: Vec<_> = summands
        .iter()
        .map(|ti| hom_space(ti, m))
        .collect::<Result<_>>()?;
    let mut parts = Vec::new();
    let mut comps = Vec::new();
    for i in 0..summands.len() {
        let mut images = Vec::new();
        for j in 0..summands.len() {
            for h in t.radical(i, j)? {
                for g in &homs[j].basis {
                    images.push(g.compose(&h));
                }
            }
        }
        for k in top_complement(&homs[i], &images) {
            parts.push(i);
            comps.push(homs[i].basis[k].clone());
        }
    }
    let mods: Vec<Module> = parts.iter().map(|&i| summands[i].clone()).collect();
    let sum = direct_sum(&alg, &mods);
    let map = map_from_sum(&sum, m, &comps);
    Ok(Approximation { parts, sum, map })
}

/// Minimal left `add(T)`-approximation `M -> T^0`.
pub fn left_approximation(m: &Module, t: &SubcatSpec) -> Result<Approximation> {
    let alg = m.algebra().clone();
    let summands = t.summands();
    let homs: Vec<_> = summands
        .iter()
        .map(|ti| hom_space(m, ti))
        .collect::<Result<_>>()?;
    let mut parts = Vec::new();
    let mut comps = Vec::new();
    for i in 0..summands.len() {
        let mut images = Vec::new();
        for j in 0..summands.len() {
            for h in t.radical(j, i)? {
                for g in &homs[j].basis {
                    images.push(h.compose(g));
                }
            }
        }
        for k in top_complement(&homs[i], &images) {
            parts.push(i);
            comps.push(homs[i].basis[k].clone());
        }
    }
    let mods: Vec<Module> = parts.iter().map(|&i| summands[i].clone()).collect();
    let sum = direct_sum(&alg, &mods);
    let map = map_into_sum(m, &sum, &comps);
    Ok(Approximation { parts, sum, map })
}

/// Whether `M` lies in `add(T)`.
pub fn in_add(m: &Module, t: &SubcatSpec) -> Result<bool> {
    if m.is_zero() {
        return Ok(true);
    }
    Ok(right_approximation(m, t)?.map.is_iso())
}

pub fn projective_cover(m: &Module) -> Result<Approximation> {
    right_approximation(m, &SubcatSpec::projectives(m.algebra())?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum LengthFlag {
    Finite { length: usize },
    /// `Ω^entry ≅ Ω^(entry - period)`.
    Periodic { period: usize, entry: usize },
    Truncated { cutoff: usize },
}

#[derive(Clone, Debug)]
pub struct Resolution {
    pub target: Module,
    /// `P_0, P_1, ...`
    pub terms: Vec<Module>,
    pub multiplicities: Vec<Vec<usize>>,
    /// `d_0: P_0 -> M`, then `d_i: P_i -> P_(i-1)`.
    pub differentials: Vec<ModuleMap>,
    /// `Ω^0 = M, Ω^1, ...`
    pub syzygies: Vec<Module>,
    /// `Ω^(i+1) -> P_i`.
    pub syzygy_inclusions: Vec<ModuleMap>,
    pub flag: LengthFlag,
}

impl Resolution {
    pub fn length(&self) -> Option<usize> {
        match self.flag {
            LengthFlag::Finite { length } => Some(length),
            _ => None,
        }
    }

    /// Degree in `0..=computed` carrying the same Ext/Tor as degree `i`, or
    /// `None` when the cutoff leaves degree `i` undecided. `Some(None)` means
    /// the group vanishes.
    fn reduce_degree(&self, i: usize) -> Option<Option<usize>> {
        match self.flag {
            LengthFlag::Finite { length } => Some((i <= length).then_some(i)),
            LengthFlag::Periodic { period, entry } => {
                let mut j = i;
                while j > entry {
                    j -= period;
                }
                Some(Some(j))
            }
            LengthFlag::Truncated { cutoff } => (i <= cutoff).then_some(Some(i)),
        }
    }
}

/// Minimal resolution by iterated minimal right approximations.
pub fn resolve(m: &Module, projectives: &SubcatSpec, cutoff: usize) -> Result<Resolution> {
    let mut res = Resolution {
        target: m.clone(),
        terms: Vec::new(),
        multiplicities: Vec::new(),
        differentials: Vec::new(),
        syzygies: vec![m.clone()],
        syzygy_inclusions: Vec::new(),
        flag: LengthFlag::Finite { length: 0 },
    };
    if m.is_zero() {
        return Ok(res);
    }
    let n = projectives.len();
    let mut prev_incl: Option<ModuleMap> = None;
    for j in 0..=cutoff {
        let omega = res.syzygies[j].clone();
        let approx = right_approximation(&omega, projectives)?;
        if !approx.map.is_surjective() {
            return Err(Error::Precondition(format!(
                "{} does not generate a module with dimension vector {:?}",
                projectives.name, omega.dims()
            )));
        }
        let d = match &prev_incl {
            None => approx.map.clone(),
            Some(incl) => incl.compose(&approx.map),
        };
        res.multiplicities.push(approx.multiplicities(n));
        res.terms.push(approx.object().clone());
        res.differentials.push(d);
        let (k, k_incl) = approx.map.kernel();
        res.syzygies.push(k.clone());
        res.syzygy_inclusions.push(k_incl.clone());
        prev_incl = Some(k_incl);
        let next = j + 1;
        if k.is_zero() {
            res.flag = LengthFlag::Finite { length: j };
            return Ok(res);
        }
        for earlier in 0..next {
            let e = &res.syzygies[earlier];
            if e.dims() == k.dims() && find_isomorphism(e, &k)?.is_some() {
                res.flag = LengthFlag::Periodic {
                    period: next - earlier,
                    entry: next,
                };
                return Ok(res);
            }
        }
        if next > cutoff {
            break;
        }
    }
    res.flag = LengthFlag::Truncated { cutoff };
    Ok(res)
}

pub fn minimal_resolution(m: &Module, cutoff: usize) -> Result<Resolution> {
    resolve(m, &SubcatSpec::projectives(m.algebra())?, cutoff)
}

/// `dim Ext^i(M, N)` from a resolution of `M` by (relative) projectives.
pub fn ext_from(res: &Resolution, n: &Module, i: usize) -> Result<usize> {
    if i == 0 {
        return Ok(hom_space(&res.target, n)?.dim());
    }
    let j = match res.reduce_degree(i) {
        None => {
            return Err(Error::Undecided(format!(
                "Ext^{i} beyond the resolution cutoff"
            )))
        }
        Some(None) => return Ok(0),
        Some(Some(j)) => j,
    };
    // Ext^j(M, N) = coker(Hom(P_(j-1), N) -> Hom(Ω^j, N))
    let omega = &res.syzygies[j];
    let incl = &res.syzygy_inclusions[j - 1];
    let target = hom_space(omega, n)?;
    if target.dim() == 0 {
        return Ok(0);
    }
    let source = hom_space(&res.terms[j - 1], n)?;
    let p = n.modulus();
    let mut span = SpanBuilder::new(target.dim(), p);
    for g in &source.basis {
        span.insert(&target.coords(&g.compose(incl)));
    }
    Ok(target.dim() - span.dim())
}

pub fn ext_with_cutoff(m: &Module, n: &Module, i: usize, cutoff: usize) -> Result<usize> {
    ext_from(&minimal_resolution(m, cutoff)?, n, i)
}

pub fn ext(m: &Module, n: &Module, i: usize) -> Result<usize> {
    ext_with_cutoff(m, n, i, crate::DEFAULT_CUTOFF.max(i))
}

/// `(dim Ext^0, ..., dim Ext^upto)`.
pub fn ext_table(res: &Resolution, n: &Module, upto: usize) -> Result<Vec<usize>> {
    (0..=upto).map(|i| ext_from(res, n, i)).collect()
}

/// `Y ⊗_A M` for a right module `Y` (a left module over the opposite
/// algebra) and a left module `M`.
#[derive(Clone, Debug)]
pub struct Tensor {
    pub dim: usize,
    /// Raw space `⊕_v Y_v ⊗ M_v` to the quotient.
    pub projection: Mat,
    /// Quotient back to the raw space.
    pub section: Mat,
    pub raw_offsets: Vec<usize>,
}

pub fn tensor(y: &Module, m: &Module) -> Result<Tensor> {
    let alg = m.algebra();
    if !y.algebra().is_opposite_of(alg) {
        return Err(Error::AlgebraMismatch);
    }
    let p = alg.modulus();
    let nv = alg.vertex_count();
    let sizes: Vec<usize> = (0..nv).map(|v| y.dims()[v] * m.dims()[v]).collect();
    let offs = crate::modcat::prefix_sums(&sizes);
    let raw: usize = sizes.iter().sum();
    let mut rel_blocks = Vec::new();
    for &b in alg.arrows() {
        let (s, t) = (alg.src(b), alg.tgt(b));
        let cols = y.dims()[t] * m.dims()[s];
        if cols == 0 {
            continue;
        }
        let mut r = Mat::zeros(raw, cols, p);
        if sizes[s] > 0 {
            r.set_block(offs[s], 0, &y.block(b).kron(&Mat::identity(m.dims()[s], p)));
        }
        if sizes[t] > 0 {
            let right = Mat::identity(y.dims()[t], p).kron(m.block(b)).scale(p - 1);
            let mut cur = r.block(offs[t], 0, sizes[t], cols);
            cur.add_scaled(&right, 1);
            r.set_block(offs[t], 0, &cur);
        }
        rel_blocks.push(r);
    }
    let relations = if rel_blocks.is_empty() {
        Mat::zeros(raw, 0, p)
    } else {
        let refs: Vec<&Mat> = rel_blocks.iter().collect();
        Mat::hstack(&refs, raw, p).column_space()
    };
    let comp = relations.complement_columns();
    let full = Mat::hstack(&[&relations, &comp], raw, p);
    let inv = full.inverse().expect("basis completion is invertible");
    let projection = inv.block(relations.cols(), 0, comp.cols(), raw);
    Ok(Tensor {
        dim: comp.cols(),
        projection,
        section: comp,
        raw_offsets: offs,
    })
}

/// `g ⊗ 1: Y' ⊗ M -> Y ⊗ M` for `g: Y' -> Y`.
pub fn tensor_map(g: &ModuleMap, m: &Module, from: &Tensor, to: &Tensor) -> Mat {
    let p = m.modulus();
    let blocks: Vec<Mat> = g
        .blocks()
        .iter()
        .zip(m.dims())
        .map(|(b, &d)| b.kron(&Mat::identity(d, p)))
        .collect();
    let refs: Vec<&Mat> = blocks.iter().collect();
    let raw = Mat::block_diag(&refs, p);
    to.projection.mul_mat(&raw).mul_mat(&from.section)
}

/// `dim Tor_i(Y, M)` from a resolution of the right module `Y`.
pub fn tor_from(res: &Resolution, m: &Module, i: usize) -> Result<usize> {
    if i == 0 {
        return Ok(tensor(&res.target, m)?.dim);
    }
    let j = match res.reduce_degree(i) {
        None => {
            return Err(Error::Undecided(format!(
                "Tor_{i} beyond the resolution cutoff"
            )))
        }
        Some(None) => return Ok(0),
        Some(Some(j)) => j,
    };
    // Tor_j(Y, M) = ker(Ω^j ⊗ M -> P_(j-1) ⊗ M)
    let omega = &res.syzygies[j];
    let incl = &res.syzygy_inclusions[j - 1];
    let from = tensor(omega, m)?;
    let to = tensor(&res.terms[j - 1], m)?;
    Ok(from.dim - tensor_map(incl, m, &from, &to).rank())
}

pub fn tor_with_cutoff(y: &Module, m: &Module, i: usize, cutoff: usize) -> Result<usize> {
    if !y.algebra().is_opposite_of(m.algebra()) {
        return Err(Error::AlgebraMismatch);
    }
    tor_from(&minimal_resolution(y, cutoff)?, m, i)
}

pub fn tor(y: &Module, m: &Module, i: usize) -> Result<usize> {
    tor_with_cutoff(y, m, i, crate::DEFAULT_CUTOFF.max(i))
}

/// Projective or global dimension.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "value", rename_all = "lowercase")]
pub enum HomDim {
    Finite(usize),
    Infinite,
    Undecided,
}

impl HomDim {
    pub fn finite(self) -> Option<usize> {
        match self {
            HomDim::Finite(n) => Some(n),
            _ => None,
        }
    }

    /// Supremum of two dimensions; `Infinite` absorbs `Undecided`.
    pub fn max(self, other: HomDim) -> HomDim {
        match (self, other) {
            (HomDim::Infinite, _) | (_, HomDim::Infinite) => HomDim::Infinite,
            (HomDim::Undecided, _) | (_, HomDim::Undecided) => HomDim::Undecided,
            (HomDim::Finite(a), HomDim::Finite(b)) => HomDim::Finite(a.max(b)),
        }
    }
}

impl std::fmt::Display for HomDim {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            HomDim::Finite(n) => write!(f, "{n}"),
            HomDim::Infinite => write!(f, "infinite"),
            HomDim::Undecided => write!(f, "undecided"),
        }
    }
}

pub fn flag_dimension(flag: LengthFlag) -> HomDim {
    match flag {
        LengthFlag::Finite { length } => HomDim::Finite(length),
        LengthFlag::Periodic { .. } => HomDim::Infinite,
        LengthFlag::Truncated { .. } => HomDim::Undecided,
    }
}

/// Projective dimension in the given structure; infinity is certified by
/// syzygy periodicity.
pub fn pdim(m: &Module, s: &ExactStructure, cutoff: usize) -> Result<HomDim> {
    Ok(flag_dimension(s.resolution(m, cutoff)?.flag))
}

/// Global dimension: the maximum projective dimension of the simples for the
/// abelian structure, or of the supplied test modules for a relative one.
pub fn gldim(s: &ExactStructure, tests: Option<&[Module]>, cutoff: usize) -> Result<HomDim> {
    let owned;
    let list: &[Module] = match (s.is_abelian(), tests) {
        (true, _) => {
            owned = simples(s.algebra());
            &owned
        }
        (false, Some(t)) => t,
        (false, None) => {
            return Err(Error::Precondition(
                "relative global dimension needs a test list".into(),
            ))
        }
    };
    let mut acc = HomDim::Finite(0);
    for m in list {
        acc = acc.max(pdim(m, s, cutoff)?);
    }
    Ok(acc)
}

/// The regular module of `alg` as a left module over itself.
pub fn regular_module(alg: &Arc<BasedAlgebra>) -> Module {
    direct_sum(alg, &crate::modcat::indecomposable_projectives(alg)).module
}
