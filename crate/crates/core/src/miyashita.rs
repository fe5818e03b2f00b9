//! Endomorphism algebras of basic modules and the transport functors
//! `Hom(T, -)`, `Hom(-, T)` and `- ⊗ T` between a module category and the
//! modules over `End(T)`.
//!
//! With `B = End(T_0)` (product = composition) and `Γ = B^op`:
//! `Hom(T_0, X)` is a `Γ`-module by precomposition, `Hom(X, T_0)` a
//! `B`-module by postcomposition, and `T_0` itself a `B`-module, so that
//! `Y ⊗_B T_0` is a module over the base algebra for every `Γ`-module `Y`.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::BasedAlgebra;
use crate::error::{Error, Result};
use crate::exactstruct::ExactStructure;
use crate::homology::{
    gldim, in_add, minimal_resolution, tensor, tor_from, HomDim, LengthFlag, Resolution,
};
use crate::linalg::Mat;
use crate::modcat::{
    endo_radical, find_isomorphism, hom_space, indecomposable_projectives, is_indecomposable, HomSpace,
    Module, ModuleMap,
};
use crate::subcat::{certified_degrees, in_perp, Degrees, SubcatSpec, Universe};
use crate::tilting::check_tilting;
use crate::Decision;

/// `End(T_1 ⊕ ... ⊕ T_k)` as a based algebra whose vertex `i` is `T_i`.
#[derive(Clone, Debug)]
pub struct EndAlgebra {
    pub spec: SubcatSpec,
    pub base: Arc<BasedAlgebra>,
    /// Composition algebra `B`.
    pub algebra: Arc<BasedAlgebra>,
    /// `Γ = B^op`.
    pub gamma: Arc<BasedAlgebra>,
    maps: Vec<ModuleMap>,
    /// `corner[i][j]`: basis indices of `Hom(T_i, T_j)`.
    corner: Vec<Vec<Vec<usize>>>,
    /// `coords[i][j]`: left inverse of the flattened corner basis.
    coords: Vec<Vec<Mat>>,
}

impl EndAlgebra {
    pub fn new(spec: &SubcatSpec) -> Result<EndAlgebra> {
        let k = spec.len();
        if k == 0 {
            return Err(Error::Precondition("endomorphism algebra of the zero module".into()));
        }
        let base = spec.summand(0).algebra().clone();
        let p = base.modulus();
        let names = spec.names();
        let mut labels: Vec<String> = names.iter().map(|n| format!("id_{n}")).collect();
        let mut maps: Vec<ModuleMap> = spec.summands().iter().map(ModuleMap::identity).collect();
        let mut corner = vec![vec![Vec::new(); k]; k];
        for (i, row) in corner.iter_mut().enumerate() {
            row[i].push(i);
        }
        for i in 0..k {
            for j in 0..k {
                let extra = if i == j {
                    endo_radical(spec.summand(i))?
                } else {
                    hom_space(spec.summand(i), spec.summand(j))?.basis
                };
                for (c, f) in extra.into_iter().enumerate() {
                    corner[i][j].push(maps.len());
                    labels.push(format!("{}->{}#{}", names[i], names[j], c));
                    maps.push(f);
                }
            }
        }
        let mut coords = vec![vec![Mat::zeros(0, 0, p); k]; k];
        for i in 0..k {
            for j in 0..k {
                let idx = &corner[i][j];
                if idx.is_empty() {
                    continue;
                }
                let flat: Vec<Vec<u32>> = idx.iter().map(|&b| maps[b].flatten()).collect();
                let len = flat[0].len();
                let m = Mat::from_fn(len, idx.len(), p, |r, c| flat[c][r]);
                coords[i][j] = m
                    .left_inverse()
                    .ok_or_else(|| Error::InvalidAlgebra("dependent endomorphism basis".into()))?;
            }
        }
        let d = maps.len();
        let ends: Vec<(usize, usize)> = (0..d).map(|b| endpoints(&corner, b)).collect();
        let mut consts = vec![0u32; d * d * d];
        for a in 0..d {
            for b in 0..d {
                let (bi, bj) = ends[b];
                let (ai, ak) = ends[a];
                if ai != bj {
                    continue;
                }
                let prod = maps[a].compose(&maps[b]);
                let c = coords[bi][ak].mul_mat(&Mat::column(p, &prod.flatten()));
                for (pos, &basis) in corner[bi][ak].iter().enumerate() {
                    consts[(a * d + b) * d + basis] = c.get(pos, 0);
                }
            }
        }
        let algebra = Arc::new(BasedAlgebra::new(
            p,
            labels,
            names.to_vec(),
            consts,
            (0..k).collect(),
        )?);
        let gamma = Arc::new(algebra.opposite());
        Ok(EndAlgebra {
            spec: spec.clone(),
            base,
            algebra,
            gamma,
            maps,
            corner,
            coords,
        })
    }

    pub fn dim(&self) -> usize {
        self.maps.len()
    }

    /// The map `T_i -> T_j` of a basis element.
    pub fn map(&self, b: usize) -> &ModuleMap {
        &self.maps[b]
    }

    /// Coordinates of `f: T_i -> T_j` in the basis of the algebra.
    pub fn coordinates(&self, i: usize, j: usize, f: &ModuleMap) -> Vec<(usize, u32)> {
        let p = self.base.modulus();
        if self.corner[i][j].is_empty() {
            return Vec::new();
        }
        let c = self.coords[i][j].mul_mat(&Mat::column(p, &f.flatten()));
        self.corner[i][j].iter().enumerate().map(|(pos, &b)| (b, c.get(pos, 0))).collect()
    }

    fn ends(&self, b: usize) -> (usize, usize) {
        endpoints(&self.corner, b)
    }

    /// `Hom(X, T_0)` as a `B`-module (postcomposition).
    pub fn hom_from(&self, x: &Module) -> Result<Module> {
        let homs: Vec<HomSpace> = self
            .spec
            .summands()
            .iter()
            .map(|t| hom_space(x, t))
            .collect::<Result<_>>()?;
        let p = self.base.modulus();
        let dims: Vec<usize> = homs.iter().map(|h| h.dim()).collect();
        let blocks = (0..self.dim())
            .map(|b| {
                let (i, j) = self.ends(b);
                let cols: Vec<Vec<u32>> = homs[i]
                    .basis
                    .iter()
                    .map(|g| homs[j].coords(&self.maps[b].compose(g)))
                    .collect();
                Mat::from_fn(dims[j], dims[i], p, |r, c| cols[c][r])
            })
            .collect();
        Module::new(self.algebra.clone(), dims, blocks)
    }

    /// `Hom(u, T_0): Hom(X', T_0) -> Hom(X, T_0)` for `u: X -> X'`.
    pub fn hom_from_map(&self, u: &ModuleMap) -> Result<ModuleMap> {
        let src = self.hom_from(u.target())?;
        let tgt = self.hom_from(u.source())?;
        let mut blocks = Vec::new();
        for t in self.spec.summands() {
            let h_src = hom_space(u.target(), t)?;
            let h_tgt = hom_space(u.source(), t)?;
            let cols: Vec<Vec<u32>> = h_src.basis.iter().map(|g| h_tgt.coords(&g.compose(u))).collect();
            blocks.push(Mat::from_fn(h_tgt.dim(), h_src.dim(), self.base.modulus(), |r, c| cols[c][r]));
        }
        ModuleMap::new(src, tgt, blocks)
    }

    /// `Hom(T_0, X)` as a `Γ`-module (precomposition).
    pub fn hom_to(&self, x: &Module) -> Result<Module> {
        let homs: Vec<HomSpace> = self
            .spec
            .summands()
            .iter()
            .map(|t| hom_space(t, x))
            .collect::<Result<_>>()?;
        let p = self.base.modulus();
        let dims: Vec<usize> = homs.iter().map(|h| h.dim()).collect();
        let blocks = (0..self.dim())
            .map(|b| {
                // b: T_i -> T_j acts Hom(T_j, X) -> Hom(T_i, X)
                let (i, j) = self.ends(b);
                let cols: Vec<Vec<u32>> = homs[j]
                    .basis
                    .iter()
                    .map(|g| homs[i].coords(&g.compose(&self.maps[b])))
                    .collect();
                Mat::from_fn(dims[i], dims[j], p, |r, c| cols[c][r])
            })
            .collect();
        Module::new(self.gamma.clone(), dims, blocks)
    }

    /// `Hom(T_0, u)` for `u: X -> X'`.
    pub fn hom_to_map(&self, u: &ModuleMap) -> Result<ModuleMap> {
        let src = self.hom_to(u.source())?;
        let tgt = self.hom_to(u.target())?;
        let mut blocks = Vec::new();
        for t in self.spec.summands() {
            let h_src = hom_space(t, u.source())?;
            let h_tgt = hom_space(t, u.target())?;
            let cols: Vec<Vec<u32>> = h_src.basis.iter().map(|g| h_tgt.coords(&u.compose(g))).collect();
            blocks.push(Mat::from_fn(h_tgt.dim(), h_src.dim(), self.base.modulus(), |r, c| cols[c][r]));
        }
        ModuleMap::new(src, tgt, blocks)
    }

    /// `T_0` as a `B`-module.
    pub fn t0_over_b(&self) -> Module {
        let dims: Vec<usize> = self.spec.summands().iter().map(|t| t.dim()).collect();
        let blocks = self.maps.iter().map(|f| f.matrix()).collect();
        Module::new_unchecked(self.algebra.clone(), dims, blocks)
    }

    /// `Y ⊗_B T_0` as a module over the base algebra.
    pub fn tensor_back(&self, y: &Module) -> Result<TensorBack> {
        let tb = self.t0_over_b();
        let t = tensor(y, &tb)?;
        let base = &self.base;
        let p = base.modulus();
        let k = self.spec.len();
        let actions: Vec<Mat> = (0..base.dim())
            .map(|a| {
                let blocks: Vec<Mat> = (0..k)
                    .map(|i| Mat::identity(y.dims()[i], p).kron(&self.spec.summand(i).action(a)))
                    .collect();
                let refs: Vec<&Mat> = blocks.iter().collect();
                let raw = Mat::block_diag(&refs, p);
                t.projection.mul_mat(&raw).mul_mat(&t.section)
            })
            .collect();
        let (module, change) = if t.dim == 0 {
            (Module::zero(base.clone()), Mat::zeros(0, 0, p))
        } else {
            Module::from_action_matrices(base.clone(), &actions)?
        };
        let change_inv = change.inverse().expect("change of basis is invertible");
        Ok(TensorBack {
            module,
            projection: change_inv.mul_mat(&t.projection),
            section: t.section.mul_mat(&change),
            raw_offsets: t.raw_offsets,
            y_dims: y.dims().to_vec(),
        })
    }

    /// Evaluation `Hom(T_0, X) ⊗_B T_0 -> X`.
    pub fn counit(&self, x: &Module) -> Result<ModuleMap> {
        let y = self.hom_to(x)?;
        let tb = self.tensor_back(&y)?;
        let p = self.base.modulus();
        let mut cols: Vec<Vec<u32>> = Vec::new();
        for (i, t) in self.spec.summands().iter().enumerate() {
            let h = hom_space(t, x)?;
            for g in &h.basis {
                let gm = g.matrix();
                for c in 0..t.dim() {
                    cols.push(gm.col(c));
                }
            }
            debug_assert_eq!(h.dim(), tb.y_dims[i]);
        }
        let raw = cols.len();
        let eval = Mat::from_fn(x.dim(), raw, p, |r, c| cols[c][r]);
        let m = eval.mul_mat(&tb.section);
        ModuleMap::from_matrix(tb.module.clone(), x.clone(), &m)
    }

    /// `Y -> Hom(T_0, Y ⊗_B T_0)`, `y ↦ (t ↦ y ⊗ t)`.
    pub fn unit(&self, y: &Module) -> Result<ModuleMap> {
        let tb = self.tensor_back(y)?;
        let z = &tb.module;
        let target = self.hom_to(z)?;
        let p = self.base.modulus();
        let raw: usize = tb.projection.cols();
        let mut blocks = Vec::new();
        for (i, t) in self.spec.summands().iter().enumerate() {
            let h = hom_space(t, z)?;
            let d = t.dim();
            let mut cols = Vec::new();
            for k in 0..y.dims()[i] {
                let start = tb.raw_offsets[i] + k * d;
                let embed = Mat::from_fn(raw, d, p, |r, c| u32::from(r == start + c));
                let f = tb.projection.mul_mat(&embed);
                let g = ModuleMap::from_matrix(t.clone(), z.clone(), &f)?;
                cols.push(h.coords(&g));
            }
            blocks.push(Mat::from_fn(h.dim(), y.dims()[i], p, |r, c| cols[c][r]));
        }
        ModuleMap::new(y.clone(), target, blocks)
    }
}

fn endpoints(corner: &[Vec<Vec<usize>>], b: usize) -> (usize, usize) {
    for (i, row) in corner.iter().enumerate() {
        for (j, idx) in row.iter().enumerate() {
            if idx.contains(&b) {
                return (i, j);
            }
        }
    }
    unreachable!("every basis element lies in a corner")
}

/// `Y ⊗_B T_0` with the maps relating it to the raw tensor space.
#[derive(Clone, Debug)]
pub struct TensorBack {
    pub module: Module,
    /// Raw space `⊕ Y_i ⊗ T_i` to graded coordinates of `module`.
    pub projection: Mat,
    /// Graded coordinates back to raw representatives.
    pub section: Mat,
    pub raw_offsets: Vec<usize>,
    pub y_dims: Vec<usize>,
}

/// Everything needed to move modules along a tilting subcategory.
pub struct Transport {
    pub end: EndAlgebra,
    pub n: usize,
    pub structure: ExactStructure,
    pub b_structure: ExactStructure,
    pub gamma_structure: ExactStructure,
    /// `T_0` as a `B`-module.
    pub t_b: Module,
    t_b_resolution: Arc<Resolution>,
    pub cutoff: usize,
}

impl Transport {
    /// Requires the abelian structure and a tilting `T` of projective dimension `n`.
    pub fn new(t: &SubcatSpec, s: &ExactStructure, n: usize, cutoff: usize) -> Result<Transport> {
        if !s.is_abelian() {
            return Err(Error::Precondition(
                "transport is implemented for the abelian structure".into(),
            ));
        }
        let end = EndAlgebra::new(t)?;
        let b_structure = ExactStructure::abelian(end.algebra.clone())?;
        let gamma_structure = ExactStructure::abelian(end.gamma.clone())?;
        let t_b = end.t0_over_b();
        let t_b_resolution = b_structure.resolution(&t_b, cutoff)?;
        Ok(Transport {
            end,
            n,
            structure: s.clone(),
            b_structure,
            gamma_structure,
            t_b,
            t_b_resolution,
            cutoff,
        })
    }

    pub fn phi(&self, x: &Module) -> Result<Module> {
        self.end.hom_to(x)
    }

    pub fn phi_prime(&self, y: &Module) -> Result<Module> {
        Ok(self.end.tensor_back(y)?.module)
    }

    /// `Hom(P, T_0)` over `B`; `P` must be projective.
    pub fn psi(&self, p: &Module) -> Result<Module> {
        if !in_add(p, self.structure.projectives())? {
            return Err(Error::Precondition("psi is only defined on projectives".into()));
        }
        self.end.hom_from(p)
    }

    /// `Tor_i^Γ(T_0, Y) = 0` for `1 <= i <= n`.
    pub fn in_tor_perp(&self, y: &Module) -> Result<bool> {
        for i in 1..=self.n {
            if tor_from(&self.t_b_resolution, y, i)? != 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Universe over `Γ` within the given bound.
    pub fn gamma_universe(&self, bound: &[usize], budget: u64) -> Result<Universe> {
        Universe::enumerate(self.gamma_structure.clone(), bound, budget)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PartVerdict {
    pub holds: bool,
    pub detail: String,
}

impl PartVerdict {
    fn ok(detail: impl Into<String>) -> PartVerdict {
        PartVerdict {
            holds: true,
            detail: detail.into(),
        }
    }

    fn fail(detail: impl Into<String>) -> PartVerdict {
        PartVerdict {
            holds: false,
            detail: detail.into(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MiyashitaReport {
    pub n: usize,
    pub gamma_dim: usize,
    pub lambda_bound: Vec<usize>,
    pub gamma_bound: Vec<usize>,
    pub perp_members: Vec<String>,
    pub tor_perp_members: Vec<String>,
    pub part1: PartVerdict,
    pub part2: PartVerdict,
    pub part3: PartVerdict,
    pub part4: PartVerdict,
    pub part5: PartVerdict,
    /// Resolving depth: least `m` with `Ω^m Y` Tor-perpendicular for all members.
    pub resolving_depth: usize,
    pub overall: bool,
    pub note: String,
}

/// Checks the five transport statements over the two universes.
pub fn verify_miyashita(tr: &Transport, u: &Universe, ug: &Universe) -> Result<MiyashitaReport> {
    let cutoff = tr.cutoff;
    let s = &tr.structure;
    let t = &tr.end.spec;
    let lam = s.algebra().clone();
    let projectives = indecomposable_projectives(&lam);

    // (1) psi of the projectives is n-tilting over B
    let psis: Vec<Module> = projectives.iter().map(|p| tr.psi(p)).collect::<Result<_>>()?;
    let named: Vec<(String, Module)> = psis
        .iter()
        .zip(lam.vertex_labels())
        .map(|(m, v)| (format!("psi(P{v})"), m.clone()))
        .collect();
    let t_tilde = SubcatSpec::add_of("T~", &named)?;
    let rep = check_tilting(&t_tilde, tr.n, &tr.b_structure, cutoff)?;
    let part1 = if rep.overall == Decision::Yes {
        PartVerdict::ok(format!("psi(P) is {}-tilting over End(T)", tr.n))
    } else {
        PartVerdict::fail(format!("psi(P) fails the tilting test: {:?}", rep.overall))
    };

    // (2) psi is a duality P -> add(T~)
    let mut part2 = PartVerdict::ok("Hom dimensions agree, images indecomposable and distinct");
    if t_tilde.len() != projectives.len() {
        part2 = PartVerdict::fail("psi(P) has the wrong number of summands");
    }
    for (k, pk) in projectives.iter().enumerate() {
        if !is_indecomposable(&psis[k])? {
            part2 = PartVerdict::fail(format!("psi(P{}) decomposes", lam.vertex_labels()[k]));
        }
        for (l, pl) in projectives.iter().enumerate() {
            if hom_space(pk, pl)?.dim() != hom_space(&psis[l], &psis[k])?.dim() {
                part2 = PartVerdict::fail(format!("Hom dimension mismatch at ({k},{l})"));
            }
        }
    }

    // (3) Reso_n of the Tor-perpendicular class is everything
    let mut part3 = PartVerdict::ok(format!("every Γ-module has Ω^{} in the Tor-perpendicular class", tr.n));
    for q in indecomposable_projectives(&tr.end.gamma) {
        if !tr.in_tor_perp(&q)? {
            part3 = PartVerdict::fail("a projective Γ-module is not Tor-perpendicular");
        }
    }
    let mut depth = 0;
    let depths: Vec<Result<Option<usize>>> = ug
        .modules
        .par_iter()
        .map(|y| -> Result<Option<usize>> {
            let res = minimal_resolution(y, tr.n.max(1) + 1)?;
            for k in 0..=tr.n {
                let omega = match res.syzygies.get(k) {
                    Some(o) => o,
                    None => return Ok(Some(k)),
                };
                if omega.is_zero() || tr.in_tor_perp(omega)? {
                    return Ok(Some(k));
                }
            }
            Ok(None)
        })
        .collect();
    for (name, d) in ug.names.iter().zip(depths) {
        match d? {
            Some(k) => depth = depth.max(k),
            None => part3 = PartVerdict::fail(format!("Ω^n {name} is not Tor-perpendicular")),
        }
    }

    // (4) restricted equivalence with explicit unit and counit
    let perp_flags = u.members(|x| Ok(in_perp(t, x, &Degrees::Positive, s, cutoff)?.decision))?;
    let perp_idx: Vec<usize> = (0..u.len()).filter(|&i| perp_flags[i] == Decision::Yes).collect();
    let tor_flags: Vec<bool> = ug
        .modules
        .par_iter()
        .map(|y| tr.in_tor_perp(y))
        .collect::<Result<_>>()?;
    let tor_idx: Vec<usize> = (0..ug.len()).filter(|&i| tor_flags[i]).collect();
    let mut part4 = PartVerdict::ok(format!(
        "{} Ext-perpendicular members correspond to {} Tor-perpendicular members",
        perp_idx.len(),
        tor_idx.len()
    ));
    if perp_flags.iter().any(|d| *d == Decision::Undecided) {
        part4 = PartVerdict::fail("perpendicularity undecided for some member");
    }
    let mut hit = vec![false; ug.len()];
    for &i in &perp_idx {
        let x = &u.modules[i];
        let y = tr.phi(x)?;
        if !tr.in_tor_perp(&y)? {
            part4 = PartVerdict::fail(format!("phi({}) is not Tor-perpendicular", u.names[i]));
            continue;
        }
        if !tr.end.counit(x)?.is_iso() {
            part4 = PartVerdict::fail(format!("counit at {} is not invertible", u.names[i]));
        }
        match ug.position(&y)? {
            Some(j) if !hit[j] => hit[j] = true,
            Some(_) => part4 = PartVerdict::fail(format!("phi({}) repeats an image", u.names[i])),
            None => part4 = PartVerdict::fail(format!("phi({}) lies outside the Γ-universe", u.names[i])),
        }
    }
    for &j in &tor_idx {
        let y = &ug.modules[j];
        if !tr.end.unit(y)?.is_iso() {
            part4 = PartVerdict::fail(format!("unit at {} is not invertible", ug.names[j]));
        }
        let x = tr.phi_prime(y)?;
        if in_perp(t, &x, &Degrees::Positive, s, cutoff)?.decision != Decision::Yes {
            part4 = PartVerdict::fail(format!("phi'({}) is not Ext-perpendicular", ug.names[j]));
        }
        if !hit[j] {
            part4 = PartVerdict::fail(format!("{} is not hit by phi", ug.names[j]));
        }
    }
    if perp_idx.len() != tor_idx.len() {
        part4 = PartVerdict::fail(format!(
            "{} Ext-perpendicular vs {} Tor-perpendicular members",
            perp_idx.len(),
            tor_idx.len()
        ));
    }

    // (5) phi agrees with Hom(T_0, -) and is exact on perpendicular conflations
    let t0 = t.sum(&lam);
    let mut part5 = PartVerdict::ok("phi matches Hom(T_0, -) and is exact on T-approximation sequences");
    for &i in &perp_idx {
        let x = &u.modules[i];
        let y = tr.phi(x)?;
        if y.dim() != hom_space(&t0, x)?.dim() {
            part5 = PartVerdict::fail(format!("dimension of phi({}) differs", u.names[i]));
        }
        let approx = crate::homology::right_approximation(x, t)?;
        let (k, _) = approx.map.kernel();
        let middle = tr.phi(approx.object())?.dim();
        if middle != tr.phi(&k)?.dim() + y.dim() {
            part5 = PartVerdict::fail(format!("phi is not exact on the sequence ending in {}", u.names[i]));
        }
    }

    let overall = part1.holds && part2.holds && part3.holds && part4.holds && part5.holds;
    Ok(MiyashitaReport {
        n: tr.n,
        gamma_dim: tr.end.dim(),
        lambda_bound: u.bound.clone(),
        gamma_bound: ug.bound.clone(),
        perp_members: perp_idx.iter().map(|&i| u.names[i].clone()).collect(),
        tor_perp_members: tor_idx.iter().map(|&j| ug.names[j].clone()).collect(),
        part1,
        part2,
        part3,
        part4,
        part5,
        resolving_depth: depth,
        overall,
        note: "functor category realised as modules over End(T); Tor-perpendicular class taken over End(T)^op".into(),
    })
}

/// `a <= b + k` with infinities.
fn le_plus(a: HomDim, b: HomDim, k: usize) -> Decision {
    match (a, b) {
        (HomDim::Undecided, _) | (_, HomDim::Undecided) => Decision::Undecided,
        (_, HomDim::Infinite) => Decision::Yes,
        (HomDim::Infinite, HomDim::Finite(_)) => Decision::No,
        (HomDim::Finite(x), HomDim::Finite(y)) => Decision::from_bool(x <= y + k),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Inequality {
    pub statement: String,
    pub holds: Decision,
}

#[derive(Clone, Debug, Serialize)]
pub struct GldimReport {
    pub gldim_lambda: HomDim,
    pub gldim_gamma: HomDim,
    pub gldim_perp_class: HomDim,
    pub gldim_tor_perp_class: HomDim,
    pub n: usize,
    pub m: usize,
    pub inequalities: Vec<Inequality>,
    pub cartan_det_lambda: i64,
    pub cartan_det_gamma: i64,
    pub cartan_match: Option<bool>,
    pub holds: Decision,
}

/// Largest nonvanishing `Ext^i` among members of a class, with infinity
/// certified by a periodic resolution carrying nonzero groups.
fn class_gldim(members: &[Module], s: &ExactStructure, cutoff: usize) -> Result<HomDim> {
    let mut best = HomDim::Finite(0);
    for x in members {
        let res = s.resolution(x, cutoff)?;
        let (degrees, certified) = certified_degrees(x, s, cutoff)?;
        let periodic_from = match res.flag {
            LengthFlag::Periodic { period, entry } => Some(entry + 1 - period),
            _ => None,
        };
        for y in members {
            for &i in &degrees {
                if s.ext(x, y, i, cutoff)? != 0 {
                    if periodic_from.is_some_and(|f| i >= f) {
                        return Ok(HomDim::Infinite);
                    }
                    best = best.max(HomDim::Finite(i));
                }
            }
        }
        if !certified {
            best = best.max(HomDim::Undecided);
        }
    }
    Ok(best)
}

/// Absolute determinant by fraction-free elimination.
pub fn abs_det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    (sign * a[n - 1][n - 1]).unsigned_abs() as i64
}

/// Global dimension inequalities along the transport.
pub fn gldim_transfer_check(tr: &Transport, u: &Universe, ug: &Universe, m: usize) -> Result<GldimReport> {
    let cutoff = tr.cutoff;
    let s = &tr.structure;
    let gl = gldim(s, None, cutoff)?;
    let gg = gldim(&tr.gamma_structure, None, cutoff)?;
    let t = &tr.end.spec;
    let perp: Vec<Module> = u
        .modules
        .iter()
        .filter_map(|x| match in_perp(t, x, &Degrees::Positive, s, cutoff) {
            Ok(v) if v.decision == Decision::Yes => Some(Ok(x.clone())),
            Ok(_) => None,
            Err(e) => Some(Err(e)),
        })
        .collect::<Result<_>>()?;
    let tor_perp: Vec<Module> = ug
        .modules
        .iter()
        .filter_map(|y| match tr.in_tor_perp(y) {
            Ok(true) => Some(Ok(y.clone())),
            Ok(false) => None,
            Err(e) => Some(Err(e)),
        })
        .collect::<Result<_>>()?;
    let gp = class_gldim(&perp, s, cutoff)?;
    let gt = class_gldim(&tor_perp, &tr.gamma_structure, cutoff)?;
    let n = tr.n;
    let inequalities = vec![
        Inequality {
            statement: format!("gldim Λ <= gldim Γ + {n}"),
            holds: le_plus(gl, gg, n),
        },
        Inequality {
            statement: format!("gldim Γ <= gldim Λ + {m}"),
            holds: le_plus(gg, gl, m),
        },
        Inequality {
            statement: "gldim T^perp <= gldim Λ".into(),
            holds: le_plus(gp, gl, 0),
        },
        Inequality {
            statement: format!("gldim Λ <= gldim T^perp + {n}"),
            holds: le_plus(gl, gp, n),
        },
        Inequality {
            statement: "gldim Tor-perp <= gldim Γ".into(),
            holds: le_plus(gt, gg, 0),
        },
        Inequality {
            statement: format!("gldim Γ <= gldim Tor-perp + {m}"),
            holds: le_plus(gg, gt, m),
        },
    ];
    let holds = inequalities.iter().fold(Decision::Yes, |acc, i| acc.and(i.holds));
    let dl = abs_det(&s.algebra().cartan_matrix());
    let dg = abs_det(&tr.end.gamma.cartan_matrix());
    let cartan_match = (gl.finite().is_some() && gg.finite().is_some()).then_some(dl == dg);
    Ok(GldimReport {
        gldim_lambda: gl,
        gldim_gamma: gg,
        gldim_perp_class: gp,
        gldim_tor_perp_class: gt,
        n,
        m,
        inequalities,
        cartan_det_lambda: dl,
        cartan_det_gamma: dg,
        cartan_match,
        holds,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TwoResolvingReport {
    pub checked: usize,
    pub failures: Vec<String>,
    pub holds: bool,
}

/// For a relative structure with projectives `Q`: the second syzygy of every
/// `End(Q)^op`-module in the universe lies in the image of `Hom(Q, -)`,
/// witnessed by an invertible unit.
pub fn two_resolving_check(s: &ExactStructure, bound: &[usize], budget: u64, cutoff: usize) -> Result<TwoResolvingReport> {
    let end = EndAlgebra::new(s.projectives())?;
    let gs = ExactStructure::abelian(end.gamma.clone())?;
    let ug = Universe::enumerate(gs.clone(), bound, budget)?;
    let mut failures = Vec::new();
    for (name, y) in ug.names.iter().zip(&ug.modules) {
        let res = gs.resolution(y, cutoff.max(2))?;
        let omega2 = match res.syzygies.get(2) {
            Some(o) => o.clone(),
            None => continue,
        };
        if omega2.is_zero() {
            continue;
        }
        if !end.unit(&omega2)?.is_iso() {
            failures.push(name.clone());
        }
    }
    Ok(TwoResolvingReport {
        checked: ug.len(),
        holds: failures.is_empty(),
        failures,
    })
}

/// Whether an explicit isomorphism `phi'(phi(X)) -> X` exists; used by tests.
pub fn round_trip_iso(tr: &Transport, x: &Module) -> Result<Option<ModuleMap>> {
    let back = tr.phi_prime(&tr.phi(x)?)?;
    find_isomorphism(&back, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{path_algebra, Quiver};
    use crate::modcat::{direct_sum, simples};

    fn a2() -> Arc<BasedAlgebra> {
        let q = Quiver::new().vertex("1").vertex("2").arrow("a", "1", "2");
        Arc::new(path_algebra(&q, 2).unwrap())
    }

    fn setup() -> (ExactStructure, SubcatSpec, Vec<Module>, Vec<Module>) {
        let a = a2();
        let s = ExactStructure::abelian(a.clone()).unwrap();
        let p = indecomposable_projectives(&a);
        let sm = simples(&a);
        let t = SubcatSpec::new("T", vec![("P1".into(), p[0].clone()), ("S1".into(), sm[0].clone())]).unwrap();
        (s, t, p, sm)
    }

    #[test]
    fn endo_algebra_examples() {
        let (s, t, p, sm) = setup();
        let e = EndAlgebra::new(&t).unwrap();
        assert_eq!(e.dim(), 3);
        assert_eq!(e.algebra.vertex_count(), 2);
        assert_eq!(e.algebra.loewy_length(), 2);
        let proj = SubcatSpec::projectives(s.algebra()).unwrap();
        let ep = EndAlgebra::new(&proj).unwrap();
        assert_eq!(ep.dim(), 3);
        assert_eq!(ep.gamma.quiver_shape().1.len(), 1);
        let single = SubcatSpec::new("S", vec![("S2".into(), sm[1].clone())]).unwrap();
        assert_eq!(EndAlgebra::new(&single).unwrap().dim(), 1);
        let _ = p;
    }

    #[test]
    fn transport_examples() {
        let (s, t, p, sm) = setup();
        let tr = Transport::new(&t, &s, 1, 20).unwrap();
        assert_eq!(tr.phi(&p[0]).unwrap().dim(), 1);
        assert_eq!(tr.phi(&sm[1]).unwrap().dim(), 0);
        assert_eq!(tr.psi(&p[1]).unwrap().dim(), 1);
        assert!(tr.psi(&sm[0]).is_err());
        let back = tr.phi_prime(&tr.phi(&p[0]).unwrap()).unwrap();
        assert!(find_isomorphism(&back, &p[0]).unwrap().is_some());
        assert!(tr.end.counit(&p[0]).unwrap().is_iso());
        assert!(tr.end.counit(&sm[0]).unwrap().is_iso());
        let t0 = t.sum(s.algebra());
        let gamma_regular = tr.phi(&t0).unwrap();
        let reg = direct_sum(&tr.end.gamma, &indecomposable_projectives(&tr.end.gamma)).module;
        assert!(find_isomorphism(&gamma_regular, &reg).unwrap().is_some());
        assert!(find_isomorphism(&tr.phi_prime(&reg).unwrap(), &t0).unwrap().is_some());
        assert!(tr.phi_prime(&Module::zero(tr.end.gamma.clone())).unwrap().is_zero());
    }

    #[test]
    fn verify_on_a2() {
        let (s, t, _, _) = setup();
        let u = Universe::enumerate(s.clone(), &[1, 1], 1000).unwrap();
        let tr = Transport::new(&t, &s, 1, 20).unwrap();
        let ug = tr.gamma_universe(&[1, 1], 1000).unwrap();
        let r = verify_miyashita(&tr, &u, &ug).unwrap();
        assert!(r.overall, "{r:?}");
        assert_eq!(r.perp_members.len(), 2);
        assert_eq!(r.tor_perp_members.len(), 2);
        let g = gldim_transfer_check(&tr, &u, &ug, r.resolving_depth).unwrap();
        assert_eq!(g.holds, Decision::Yes, "{g:?}");
        assert_eq!(g.cartan_match, Some(true));
    }

    #[test]
    fn determinants() {
        assert_eq!(abs_det(&[vec![1, 1], vec![0, 1]]), 1);
        assert_eq!(abs_det(&[vec![0, 2], vec![3, 0]]), 6);
        assert_eq!(abs_det(&[vec![2, 0, 0], vec![0, 2, 0], vec![1, 1, 1]]), 4);
    }
}
