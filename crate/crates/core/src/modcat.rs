//! The category of finite-dimensional left modules over a based algebra.
//!
//! Modules are stored graded by vertex: the underlying space is
//! `M_1 ⊕ ... ⊕ M_n` with `M_v = e_v M`, and a homogeneous basis element from
//! `s` to `t` is stored as a single `dim M_t × dim M_s` block. Module maps are
//! block diagonal, one block per vertex.

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;

use crate::algebra::BasedAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{Mat, SpanBuilder};

pub(crate) fn same_algebra(a: &Arc<BasedAlgebra>, b: &Arc<BasedAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

#[derive(Clone)]
pub struct Module {
    alg: Arc<BasedAlgebra>,
    dims: Vec<usize>,
    blocks: Vec<Mat>,
}

impl PartialEq for Module {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.alg, &other.alg) && self.dims == other.dims && self.blocks == other.blocks
    }
}

impl Eq for Module {}

impl fmt::Debug for Module {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Module{:?}", self.dims)?;
        for a in self.alg.arrows() {
            write!(f, " {}={:?}", self.alg.label(*a), self.blocks[*a])?;
        }
        Ok(())
    }
}

/// Blocks of every basis element from the blocks of the arrows.
fn blocks_from_arrows(alg: &BasedAlgebra, dims: &[usize], arrow_blocks: &[Mat]) -> Vec<Mat> {
    let p = alg.modulus();
    (0..alg.dim())
        .map(|b| {
            let (s, t) = (alg.src(b), alg.tgt(b));
            if let Some(v) = alg.idempotent_vertex(b) {
                return Mat::identity(dims[v], p);
            }
            let mut acc = Mat::zeros(dims[t], dims[s], p);
            for (c, word) in alg.words(b) {
                let mut prod = Mat::identity(dims[s], p);
                for &pos in word {
                    prod = arrow_blocks[pos].mul_mat(&prod);
                }
                acc.add_scaled(&prod, *c);
            }
            acc
        })
        .collect()
}

impl Module {
    /// Builds a module from one block per basis element and checks the axioms.
    pub fn new(alg: Arc<BasedAlgebra>, dims: Vec<usize>, blocks: Vec<Mat>) -> Result<Module> {
        let m = Module { alg, dims, blocks };
        m.validate()?;
        Ok(m)
    }

    pub(crate) fn new_unchecked(alg: Arc<BasedAlgebra>, dims: Vec<usize>, blocks: Vec<Mat>) -> Module {
        let m = Module { alg, dims, blocks };
        debug_assert!(m.validate().is_ok(), "{:?}", m.validate());
        m
    }

    /// Builds a module from blocks on the arrows only; the remaining basis
    /// elements act as forced by their expansions in arrow words.
    pub fn from_arrows(alg: Arc<BasedAlgebra>, dims: Vec<usize>, arrow_blocks: Vec<Mat>) -> Result<Module> {
        if arrow_blocks.len() != alg.arrows().len() || dims.len() != alg.vertex_count() {
            return Err(Error::InvalidModule("wrong number of arrow blocks".into()));
        }
        for (pos, &a) in alg.arrows().iter().enumerate() {
            if arrow_blocks[pos].shape() != (dims[alg.tgt(a)], dims[alg.src(a)]) {
                return Err(Error::InvalidModule(format!(
                    "block for {} has shape {:?}",
                    alg.label(a),
                    arrow_blocks[pos].shape()
                )));
            }
        }
        let blocks = blocks_from_arrows(&alg, &dims, &arrow_blocks);
        Module::new(alg, dims, blocks)
    }

    /// Regrades a module given by full (ungraded) action matrices, returning
    /// the graded module and the change of basis whose columns are the new
    /// basis vectors in old coordinates.
    pub fn from_action_matrices(alg: Arc<BasedAlgebra>, actions: &[Mat]) -> Result<(Module, Mat)> {
        let p = alg.modulus();
        let n = actions.first().map_or(0, |a| a.rows());
        let mut bases = Vec::new();
        for v in 0..alg.vertex_count() {
            bases.push(actions[alg.idempotent(v)].column_space());
        }
        let refs: Vec<&Mat> = bases.iter().collect();
        let change = Mat::hstack(&refs, n, p);
        let inv = change
            .inverse()
            .ok_or_else(|| Error::InvalidModule("idempotents do not split the space".into()))?;
        let dims: Vec<usize> = bases.iter().map(|b| b.cols()).collect();
        let offsets = prefix_sums(&dims);
        let blocks = (0..alg.dim())
            .map(|b| {
                let (s, t) = (alg.src(b), alg.tgt(b));
                let rows = inv.block(offsets[t], 0, dims[t], n);
                rows.mul_mat(&actions[b]).mul_mat(&bases[s])
            })
            .collect();
        let m = Module::new(alg, dims, blocks)?;
        Ok((m, change))
    }

    pub fn zero(alg: Arc<BasedAlgebra>) -> Module {
        let dims = vec![0; alg.vertex_count()];
        let p = alg.modulus();
        let blocks = (0..alg.dim()).map(|_| Mat::zeros(0, 0, p)).collect();
        Module { alg, dims, blocks }
    }

    fn validate(&self) -> Result<()> {
        let alg = &*self.alg;
        if self.dims.len() != alg.vertex_count() || self.blocks.len() != alg.dim() {
            return Err(Error::InvalidModule("shape does not match the algebra".into()));
        }
        let p = alg.modulus();
        for b in 0..alg.dim() {
            let want = (self.dims[alg.tgt(b)], self.dims[alg.src(b)]);
            if self.blocks[b].shape() != want || self.blocks[b].modulus() != p {
                return Err(Error::InvalidModule(format!(
                    "block for {} has shape {:?}, expected {:?}",
                    alg.label(b),
                    self.blocks[b].shape(),
                    want
                )));
            }
            if let Some(v) = alg.idempotent_vertex(b) {
                if self.blocks[b] != Mat::identity(self.dims[v], p) {
                    return Err(Error::InvalidModule(format!(
                        "{} does not act as the identity on its vertex",
                        alg.label(b)
                    )));
                }
            }
        }
        for i in 0..alg.dim() {
            for j in 0..alg.dim() {
                if alg.src(i) != alg.tgt(j) || alg.is_idempotent(i) || alg.is_idempotent(j) {
                    continue;
                }
                let lhs = self.blocks[i].mul_mat(&self.blocks[j]);
                let mut rhs = Mat::zeros(lhs.rows(), lhs.cols(), p);
                for (k, &c) in alg.product(i, j).iter().enumerate() {
                    if c != 0 {
                        rhs.add_scaled(&self.blocks[k], c);
                    }
                }
                if lhs != rhs {
                    return Err(Error::InvalidModule(format!(
                        "action violates the product {} * {}",
                        alg.label(i),
                        alg.label(j)
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn algebra(&self) -> &Arc<BasedAlgebra> {
        &self.alg
    }

    pub fn modulus(&self) -> u32 {
        self.alg.modulus()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn offsets(&self) -> Vec<usize> {
        prefix_sums(&self.dims)
    }

    pub fn block(&self, b: usize) -> &Mat {
        &self.blocks[b]
    }

    pub fn blocks(&self) -> &[Mat] {
        &self.blocks
    }

    /// Full `dim × dim` action matrix of a basis element.
    pub fn action(&self, b: usize) -> Mat {
        let n = self.dim();
        let off = self.offsets();
        let mut m = Mat::zeros(n, n, self.modulus());
        let (s, t) = (self.alg.src(b), self.alg.tgt(b));
        m.set_block(off[t], off[s], &self.blocks[b]);
        m
    }

    /// Action of an algebra element given in basis coordinates.
    pub fn action_of(&self, coeffs: &[u32]) -> Mat {
        let n = self.dim();
        let mut m = Mat::zeros(n, n, self.modulus());
        for (b, &c) in coeffs.iter().enumerate() {
            if c != 0 {
                m.add_scaled(&self.action(b), c);
            }
        }
        m
    }

    /// Whether the two modules live over the same algebra.
    pub fn same_algebra_as(&self, other: &Module) -> bool {
        same_algebra(&self.alg, &other.alg)
    }

    pub fn rank_profile(&self) -> Vec<usize> {
        self.blocks.iter().map(|b| b.rank()).collect()
    }

    /// Graded submodule spanned per vertex by the given independent columns,
    /// with its inclusion.
    pub fn submodule(&self, bases: &[Mat]) -> Result<(Module, ModuleMap)> {
        let alg = &self.alg;
        let lefts: Vec<Mat> = bases
            .iter()
            .map(|s| {
                s.left_inverse()
                    .ok_or_else(|| Error::InvalidModule("dependent submodule basis".into()))
            })
            .collect::<Result<_>>()?;
        let dims: Vec<usize> = bases.iter().map(|s| s.cols()).collect();
        let mut blocks = Vec::with_capacity(alg.dim());
        for b in 0..alg.dim() {
            let (s, t) = (alg.src(b), alg.tgt(b));
            let image = self.blocks[b].mul_mat(&bases[s]);
            let y = lefts[t].mul_mat(&image);
            if bases[t].mul_mat(&y) != image {
                return Err(Error::InvalidModule(format!(
                    "subspace is not stable under {}",
                    alg.label(b)
                )));
            }
            blocks.push(y);
        }
        let sub = Module::new_unchecked(alg.clone(), dims, blocks);
        let incl = ModuleMap::new_unchecked(sub.clone(), self.clone(), bases.to_vec());
        Ok((sub, incl))
    }

    /// Quotient by a graded submodule given per vertex, with its projection.
    pub fn quotient(&self, bases: &[Mat]) -> Result<(Module, ModuleMap)> {
        let alg = &self.alg;
        let mut comps = Vec::new();
        let mut projs = Vec::new();
        for (v, s) in bases.iter().enumerate() {
            let c = s.complement_columns();
            let full = Mat::hstack(&[s, &c], self.dims[v], self.modulus());
            let inv = full
                .inverse()
                .ok_or_else(|| Error::InvalidModule("dependent submodule basis".into()))?;
            projs.push(inv.block(s.cols(), 0, c.cols(), self.dims[v]));
            comps.push(c);
        }
        let dims: Vec<usize> = comps.iter().map(|c| c.cols()).collect();
        let blocks = (0..alg.dim())
            .map(|b| {
                let (s, t) = (alg.src(b), alg.tgt(b));
                projs[t].mul_mat(&self.blocks[b]).mul_mat(&comps[s])
            })
            .collect();
        let q = Module::new_unchecked(alg.clone(), dims, blocks);
        let proj = ModuleMap::new_unchecked(self.clone(), q.clone(), projs);
        Ok((q, proj))
    }

    /// The dual `Hom(M, F_p)` as a module over `target`, which must be the
    /// opposite algebra of `M`'s algebra.
    pub fn dual_over(&self, target: Arc<BasedAlgebra>) -> Result<Module> {
        if !self.alg.is_opposite_of(&target) {
            return Err(Error::AlgebraMismatch);
        }
        let blocks = self.blocks.iter().map(|b| b.transpose()).collect();
        Module::new(target, self.dims.clone(), blocks)
    }

    /// The dual over a freshly built opposite algebra.
    pub fn dual(&self) -> Module {
        let op = Arc::new(self.alg.opposite());
        self.dual_over(op).expect("opposite algebra matches")
    }

    /// Same module, reattached to a structurally equal algebra handle.
    pub fn rebase(&self, alg: Arc<BasedAlgebra>) -> Result<Module> {
        if !same_algebra(&self.alg, &alg) {
            return Err(Error::AlgebraMismatch);
        }
        Ok(Module {
            alg,
            dims: self.dims.clone(),
            blocks: self.blocks.clone(),
        })
    }
}

pub(crate) fn prefix_sums(dims: &[usize]) -> Vec<usize> {
    let mut off = Vec::with_capacity(dims.len());
    let mut acc = 0;
    for &d in dims {
        off.push(acc);
        acc += d;
    }
    off
}

/// A homomorphism, stored as one block per vertex.
#[derive(Clone, PartialEq, Eq)]
pub struct ModuleMap {
    source: Module,
    target: Module,
    blocks: Vec<Mat>,
}

impl fmt::Debug for ModuleMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModuleMap{:?}", self.blocks)
    }
}

impl ModuleMap {
    pub fn new(source: Module, target: Module, blocks: Vec<Mat>) -> Result<ModuleMap> {
        if !source.same_algebra_as(&target) {
            return Err(Error::AlgebraMismatch);
        }
        let f = ModuleMap {
            source,
            target,
            blocks,
        };
        f.validate()?;
        Ok(f)
    }

    pub(crate) fn new_unchecked(source: Module, target: Module, blocks: Vec<Mat>) -> ModuleMap {
        let f = ModuleMap {
            source,
            target,
            blocks,
        };
        debug_assert!(f.validate().is_ok(), "{:?}", f.validate());
        f
    }

    /// From a full `target.dim × source.dim` matrix, which must be block diagonal.
    pub fn from_matrix(source: Module, target: Module, m: &Mat) -> Result<ModuleMap> {
        if m.shape() != (target.dim(), source.dim()) {
            return Err(Error::DimensionMismatch("map matrix shape".into()));
        }
        let so = source.offsets();
        let to = target.offsets();
        let nv = source.dims.len();
        let mut blocks = Vec::new();
        for v in 0..nv {
            for w in 0..nv {
                let blk = m.block(to[v], so[w], target.dims[v], source.dims[w]);
                if v == w {
                    blocks.push(blk);
                } else if !blk.is_zero() {
                    return Err(Error::InvalidModule("map does not respect the grading".into()));
                }
            }
        }
        ModuleMap::new(source, target, blocks)
    }

    fn validate(&self) -> Result<()> {
        let alg = &self.source.alg;
        let nv = alg.vertex_count();
        if self.blocks.len() != nv {
            return Err(Error::InvalidModule("one block per vertex required".into()));
        }
        for v in 0..nv {
            if self.blocks[v].shape() != (self.target.dims[v], self.source.dims[v]) {
                return Err(Error::DimensionMismatch(format!("map block at vertex {v}")));
            }
        }
        for &a in alg.arrows() {
            let (s, t) = (alg.src(a), alg.tgt(a));
            let lhs = self.target.blocks[a].mul_mat(&self.blocks[s]);
            let rhs = self.blocks[t].mul_mat(&self.source.blocks[a]);
            if lhs != rhs {
                return Err(Error::InvalidModule(format!(
                    "map does not commute with {}",
                    alg.label(a)
                )));
            }
        }
        Ok(())
    }

    pub fn zero(source: &Module, target: &Module) -> ModuleMap {
        let p = source.modulus();
        let blocks = (0..source.dims.len())
            .map(|v| Mat::zeros(target.dims[v], source.dims[v], p))
            .collect();
        ModuleMap {
            source: source.clone(),
            target: target.clone(),
            blocks,
        }
    }

    pub fn identity(m: &Module) -> ModuleMap {
        let p = m.modulus();
        let blocks = m.dims.iter().map(|&d| Mat::identity(d, p)).collect();
        ModuleMap {
            source: m.clone(),
            target: m.clone(),
            blocks,
        }
    }

    pub fn source(&self) -> &Module {
        &self.source
    }

    pub fn target(&self) -> &Module {
        &self.target
    }

    pub fn blocks(&self) -> &[Mat] {
        &self.blocks
    }

    pub fn block(&self, v: usize) -> &Mat {
        &self.blocks[v]
    }

    /// Full block-diagonal matrix.
    pub fn matrix(&self) -> Mat {
        let refs: Vec<&Mat> = self.blocks.iter().collect();
        let p = self.source.modulus();
        let mut m = Mat::zeros(self.target.dim(), self.source.dim(), p);
        let (mut r, mut c) = (0, 0);
        for b in refs {
            m.set_block(r, c, b);
            r += b.rows();
            c += b.cols();
        }
        m
    }

    /// Row-major concatenation of the vertex blocks.
    pub fn flatten(&self) -> Vec<u32> {
        self.blocks.iter().flat_map(|b| b.entries().iter().copied()).collect()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ModuleMap) -> ModuleMap {
        debug_assert_eq!(other.target.dims, self.source.dims);
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| a.mul_mat(b))
            .collect();
        ModuleMap {
            source: other.source.clone(),
            target: self.target.clone(),
            blocks,
        }
    }

    pub fn add(&self, other: &ModuleMap) -> ModuleMap {
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| a + b).collect();
        ModuleMap {
            source: self.source.clone(),
            target: self.target.clone(),
            blocks,
        }
    }

    pub fn scale(&self, c: u32) -> ModuleMap {
        let blocks = self.blocks.iter().map(|a| a.scale(c)).collect();
        ModuleMap {
            source: self.source.clone(),
            target: self.target.clone(),
            blocks,
        }
    }

    pub fn neg(&self) -> ModuleMap {
        self.scale(self.source.modulus() - 1)
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|b| b.is_zero())
    }

    pub fn rank(&self) -> usize {
        self.blocks.iter().map(|b| b.rank()).sum()
    }

    pub fn is_injective(&self) -> bool {
        self.rank() == self.source.dim()
    }

    pub fn is_surjective(&self) -> bool {
        self.rank() == self.target.dim()
    }

    pub fn is_iso(&self) -> bool {
        self.source.dims == self.target.dims && self.is_injective()
    }

    pub fn inverse(&self) -> Option<ModuleMap> {
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.inverse())
            .collect::<Option<Vec<_>>>()?;
        Some(ModuleMap {
            source: self.target.clone(),
            target: self.source.clone(),
            blocks,
        })
    }

    pub fn power(&self, e: usize) -> ModuleMap {
        let blocks = self.blocks.iter().map(|b| b.pow(e)).collect();
        ModuleMap {
            source: self.source.clone(),
            target: self.target.clone(),
            blocks,
        }
    }

    pub fn kernel(&self) -> (Module, ModuleMap) {
        let bases: Vec<Mat> = self.blocks.iter().map(|b| b.kernel_basis()).collect();
        self.source.submodule(&bases).expect("kernel is a submodule")
    }

    /// Image as a submodule of the target, with the inclusion and the
    /// corestriction `source -> image`.
    pub fn image(&self) -> (Module, ModuleMap, ModuleMap) {
        let bases: Vec<Mat> = self.blocks.iter().map(|b| b.column_space()).collect();
        let (img, incl) = self.target.submodule(&bases).expect("image is a submodule");
        let co = self
            .blocks
            .iter()
            .zip(&bases)
            .map(|(f, s)| s.left_inverse().expect("independent").mul_mat(f))
            .collect();
        let corestriction = ModuleMap::new_unchecked(self.source.clone(), img.clone(), co);
        (img, incl, corestriction)
    }

    pub fn cokernel(&self) -> (Module, ModuleMap) {
        let bases: Vec<Mat> = self.blocks.iter().map(|b| b.column_space()).collect();
        self.target.quotient(&bases).expect("image is a submodule")
    }

    /// Some `g` with `self ∘ g = h` (lifting `h: X -> target` through self),
    /// solved vertexwise; `None` if no lift exists. The lift need not be a
    /// module map unless `source` has enough structure; callers verify.
    pub fn factor_through(&self, h: &ModuleMap) -> Result<Option<ModuleMap>> {
        // maps g: X -> source with self∘g = h form an affine space inside Hom(X, source)
        let hom = hom_space(h.source(), &self.source)?;
        let images: Vec<Vec<u32>> = hom.basis.iter().map(|g| self.compose(g).flatten()).collect();
        let target = h.flatten();
        if images.is_empty() {
            return Ok(if h.is_zero() { Some(ModuleMap::zero(h.source(), &self.source)) } else { None });
        }
        let p = self.source.modulus();
        let n = target.len();
        let a = Mat::from_fn(n, images.len(), p, |i, j| images[j][i]);
        let b = Mat::from_vec(n, 1, p, target)?;
        Ok(a.solve(&b)?.map(|x| hom.combination(&x.col(0))))
    }
}

/// A basis of `Hom(M, N)` with a coordinate solver.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub source: Module,
    pub target: Module,
    pub basis: Vec<ModuleMap>,
    left_inverse: Mat,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a homomorphism in the basis.
    pub fn coords(&self, f: &ModuleMap) -> Vec<u32> {
        let v = Mat::column(self.source.modulus(), &f.flatten());
        self.left_inverse.mul_mat(&v).col(0)
    }

    pub fn combination(&self, coeffs: &[u32]) -> ModuleMap {
        let mut acc = ModuleMap::zero(&self.source, &self.target);
        for (g, &c) in self.basis.iter().zip(coeffs) {
            if c != 0 {
                acc = acc.add(&g.scale(c));
            }
        }
        acc
    }
}

pub fn hom_space(m: &Module, n: &Module) -> Result<HomSpace> {
    if !m.same_algebra_as(n) {
        return Err(Error::AlgebraMismatch);
    }
    let alg = m.algebra().clone();
    let p = alg.modulus();
    let nv = alg.vertex_count();
    // unknown X_v is n_v × m_v, row-major
    let sizes: Vec<usize> = (0..nv).map(|v| n.dims[v] * m.dims[v]).collect();
    let offs = prefix_sums(&sizes);
    let unknowns: usize = sizes.iter().sum();
    let mut eq_blocks: Vec<Mat> = Vec::new();
    for &a in alg.arrows() {
        let (i, j) = (alg.src(a), alg.tgt(a));
        let rows = n.dims[j] * m.dims[i];
        if rows == 0 {
            continue;
        }
        let mut eq = Mat::zeros(rows, unknowns, p);
        if sizes[i] > 0 {
            let left = n.blocks[a].kron(&Mat::identity(m.dims[i], p));
            let mut cur = eq.block(0, offs[i], rows, sizes[i]);
            cur.add_scaled(&left, 1);
            eq.set_block(0, offs[i], &cur);
        }
        if sizes[j] > 0 {
            let right = Mat::identity(n.dims[j], p).kron(&m.blocks[a].transpose());
            let mut cur = eq.block(0, offs[j], rows, sizes[j]);
            cur.add_scaled(&right, p - 1);
            eq.set_block(0, offs[j], &cur);
        }
        eq_blocks.push(eq);
    }
    let kernel = if eq_blocks.is_empty() {
        Mat::identity(unknowns, p)
    } else {
        let refs: Vec<&Mat> = eq_blocks.iter().collect();
        Mat::vstack(&refs, unknowns, p).kernel_basis()
    };
    let basis = (0..kernel.cols())
        .map(|c| {
            let col = kernel.col(c);
            let blocks = (0..nv)
                .map(|v| {
                    Mat::from_vec(n.dims[v], m.dims[v], p, col[offs[v]..offs[v] + sizes[v]].to_vec())
                        .expect("sizes agree")
                })
                .collect();
            ModuleMap::new_unchecked(m.clone(), n.clone(), blocks)
        })
        .collect();
    let left_inverse = if kernel.cols() == 0 {
        Mat::zeros(0, unknowns, p)
    } else {
        kernel.left_inverse().expect("kernel basis is independent")
    };
    Ok(HomSpace {
        source: m.clone(),
        target: n.clone(),
        basis,
        left_inverse,
    })
}

pub fn hom_dim(m: &Module, n: &Module) -> Result<usize> {
    Ok(hom_space(m, n)?.dim())
}

pub fn simples(alg: &Arc<BasedAlgebra>) -> Vec<Module> {
    let p = alg.modulus();
    (0..alg.vertex_count())
        .map(|k| {
            let mut dims = vec![0; alg.vertex_count()];
            dims[k] = 1;
            let blocks = (0..alg.dim())
                .map(|b| {
                    let (s, t) = (alg.src(b), alg.tgt(b));
                    let c = u32::from(b == alg.idempotent(k));
                    Mat::from_vec(dims[t], dims[s], p, vec![c; dims[t] * dims[s]]).unwrap()
                })
                .collect();
            Module::new_unchecked(alg.clone(), dims, blocks)
        })
        .collect()
}

/// Basis of `P_k = A e_k` at vertex `v`: the basis elements from `k` to `v`.
pub(crate) fn projective_layout(alg: &BasedAlgebra, k: usize) -> Vec<Vec<usize>> {
    (0..alg.vertex_count()).map(|v| alg.corner(k, v)).collect()
}

pub fn indecomposable_projectives(alg: &Arc<BasedAlgebra>) -> Vec<Module> {
    let p = alg.modulus();
    (0..alg.vertex_count())
        .map(|k| {
            let layout = projective_layout(alg, k);
            let dims: Vec<usize> = layout.iter().map(|l| l.len()).collect();
            let blocks = (0..alg.dim())
                .map(|a| {
                    let (s, t) = (alg.src(a), alg.tgt(a));
                    Mat::from_fn(dims[t], dims[s], p, |r, c| {
                        alg.structure_constant(a, layout[s][c], layout[t][r])
                    })
                })
                .collect();
            Module::new_unchecked(alg.clone(), dims, blocks)
        })
        .collect()
}

pub fn indecomposable_injectives(alg: &Arc<BasedAlgebra>) -> Vec<Module> {
    let op = Arc::new(alg.opposite());
    indecomposable_projectives(&op)
        .into_iter()
        .map(|q| q.dual_over(alg.clone()).expect("double opposite matches"))
        .collect()
}

/// A direct sum with its structure maps.
#[derive(Clone, Debug)]
pub struct DirectSum {
    pub module: Module,
    pub inclusions: Vec<ModuleMap>,
    pub projections: Vec<ModuleMap>,
}

pub fn direct_sum(alg: &Arc<BasedAlgebra>, parts: &[Module]) -> DirectSum {
    let p = alg.modulus();
    let nv = alg.vertex_count();
    let dims: Vec<usize> = (0..nv).map(|v| parts.iter().map(|m| m.dims[v]).sum()).collect();
    let blocks = (0..alg.dim())
        .map(|b| {
            let refs: Vec<&Mat> = parts.iter().map(|m| &m.blocks[b]).collect();
            Mat::block_diag(&refs, p)
        })
        .collect();
    let module = Module::new_unchecked(alg.clone(), dims.clone(), blocks);
    let mut inclusions = Vec::new();
    let mut projections = Vec::new();
    let mut offs = vec![0usize; nv];
    for m in parts {
        let (mut inc, mut proj) = (Vec::new(), Vec::new());
        for v in 0..nv {
            let mut i = Mat::zeros(dims[v], m.dims[v], p);
            i.set_block(offs[v], 0, &Mat::identity(m.dims[v], p));
            proj.push(i.transpose());
            inc.push(i);
            offs[v] += m.dims[v];
        }
        inclusions.push(ModuleMap::new_unchecked(m.clone(), module.clone(), inc));
        projections.push(ModuleMap::new_unchecked(module.clone(), m.clone(), proj));
    }
    DirectSum {
        module,
        inclusions,
        projections,
    }
}

/// Map `⊕ sources -> target` given componentwise.
pub fn map_from_sum(sum: &DirectSum, target: &Module, comps: &[ModuleMap]) -> ModuleMap {
    let mut acc = ModuleMap::zero(&sum.module, target);
    for (c, pr) in comps.iter().zip(&sum.projections) {
        acc = acc.add(&c.compose(pr));
    }
    acc
}

/// Map `source -> ⊕ targets` given componentwise.
pub fn map_into_sum(source: &Module, sum: &DirectSum, comps: &[ModuleMap]) -> ModuleMap {
    let mut acc = ModuleMap::zero(source, &sum.module);
    for (c, inc) in comps.iter().zip(&sum.inclusions) {
        acc = acc.add(&inc.compose(c));
    }
    acc
}

/// Budget for the endomorphism sweep in [`decompose`], counted in tested elements.
pub const SWEEP_BUDGET: u64 = 200_000;

enum EndAnalysis {
    Local(Vec<ModuleMap>),
    Split(ModuleMap),
}

fn nilpotent_shift(phi: &ModuleMap, n: usize) -> (Option<u32>, Option<ModuleMap>) {
    // returns (λ with φ-λ nilpotent, splitting power)
    let p = phi.source().modulus();
    let id = ModuleMap::identity(phi.source());
    let try_shift = |lambda: u32| -> (bool, Option<ModuleMap>) {
        let psi = phi.add(&id.scale(p - lambda));
        let pw = psi.power(n);
        let r = pw.rank();
        if r == 0 {
            (true, None)
        } else if r < n {
            (false, Some(pw))
        } else {
            (false, None)
        }
    };
    if n as u32 % p != 0 {
        let tr: u32 = phi.blocks().iter().map(|b| (0..b.rows()).map(|i| b.get(i, i)).sum::<u32>()).sum::<u32>() % p;
        let lambda = tr * crate::linalg::inv_mod(n as u32 % p, p) % p;
        let (nil, split) = try_shift(lambda);
        if nil {
            return (Some(lambda), None);
        }
        if split.is_some() {
            return (None, split);
        }
    }
    for lambda in 0..p {
        let (nil, split) = try_shift(lambda);
        if nil {
            return (Some(lambda), None);
        }
        if split.is_some() {
            return (None, split);
        }
    }
    (None, None)
}

fn split_candidate(psi: &ModuleMap, n: usize) -> Option<ModuleMap> {
    let pw = psi.power(n);
    let r = pw.rank();
    (r > 0 && r < n).then_some(pw)
}

fn analyze_endomorphisms(m: &Module) -> Result<EndAnalysis> {
    let n = m.dim();
    let p = m.modulus();
    let end = hom_space(m, m)?;
    let h = end.dim();
    let id = ModuleMap::identity(m);
    let mut shifted = Vec::new();
    let mut all_shiftable = true;
    for phi in &end.basis {
        match nilpotent_shift(phi, n) {
            (Some(lambda), _) => shifted.push(phi.add(&id.scale(p - lambda))),
            (None, Some(split)) => return Ok(EndAnalysis::Split(split)),
            (None, None) => all_shiftable = false,
        }
    }
    if all_shiftable {
        // span of the nilpotent parts, then its powers
        let mut span = SpanBuilder::new(h, p);
        let mut rad = Vec::new();
        for s in &shifted {
            if span.insert(&end.coords(s)) {
                rad.push(s.clone());
            }
        }
        if rad.len() + 1 == h {
            let mut closed = true;
            let mut power = rad.clone();
            let mut steps = 0;
            while !power.is_empty() && closed {
                steps += 1;
                if steps > n + 1 {
                    closed = false;
                    break;
                }
                let mut next_span = SpanBuilder::new(h, p);
                let mut next = Vec::new();
                for r in &rad {
                    for x in &power {
                        let prod = r.compose(x);
                        if prod.is_zero() {
                            continue;
                        }
                        if let Some(split) = split_candidate(&prod, n) {
                            return Ok(EndAnalysis::Split(split));
                        }
                        if prod.power(n).rank() != 0 {
                            closed = false;
                        }
                        if next_span.insert(&end.coords(&prod)) {
                            next.push(prod);
                        }
                    }
                }
                power = next;
            }
            if closed {
                let mut rad_span = SpanBuilder::new(h, p);
                for r in &rad {
                    rad_span.insert(&end.coords(r));
                }
                // products must stay inside the radical span for it to be an ideal
                let ideal = rad.iter().all(|r| {
                    rad.iter().all(|s| rad_span.contains(&end.coords(&r.compose(s))))
                });
                if ideal {
                    return Ok(EndAnalysis::Local(rad));
                }
            }
        }
    }
    // pairwise sums and products
    for i in 0..h {
        for j in 0..h {
            let a = &end.basis[i];
            let b = &end.basis[j];
            for c in [a.compose(b), a.add(b)] {
                if let Some(split) = split_candidate(&c, n) {
                    return Ok(EndAnalysis::Split(split));
                }
            }
        }
    }
    // exhaustive sweep within budget
    let total = (p as u64).checked_pow(h as u32).unwrap_or(u64::MAX);
    if total > SWEEP_BUDGET {
        return Err(Error::Budget(format!(
            "endomorphism sweep over {}^{} elements for a module with dimension vector {:?}",
            p,
            h,
            m.dims()
        )));
    }
    let mut coeffs = vec![0u32; h];
    for _ in 0..total {
        let c = end.combination(&coeffs);
        if let Some(split) = split_candidate(&c, n) {
            return Ok(EndAnalysis::Split(split));
        }
        for x in coeffs.iter_mut() {
            *x += 1;
            if *x < p {
                break;
            }
            *x = 0;
        }
    }
    Err(Error::InvalidModule(format!(
        "indecomposable module {:?} has an endomorphism ring with residue field larger than F_{}",
        m.dims(),
        p
    )))
}

/// Radical of `End(M)` for an indecomposable `M`, as a basis of maps.
pub fn endo_radical(m: &Module) -> Result<Vec<ModuleMap>> {
    match analyze_endomorphisms(m)? {
        EndAnalysis::Local(rad) => Ok(rad),
        EndAnalysis::Split(_) => Err(Error::Precondition("module is decomposable".into())),
    }
}

pub fn is_indecomposable(m: &Module) -> Result<bool> {
    if m.is_zero() {
        return Ok(false);
    }
    Ok(matches!(analyze_endomorphisms(m)?, EndAnalysis::Local(_)))
}

/// An indecomposable summand with its structure maps into and out of the
/// decomposed module.
#[derive(Clone, Debug)]
pub struct Summand {
    pub module: Module,
    pub inclusion: ModuleMap,
    pub projection: ModuleMap,
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub summands: Vec<Summand>,
    /// Isomorphism classes as lists of summand indices; the first index is the
    /// class representative.
    pub classes: Vec<Vec<usize>>,
}

impl Decomposition {
    /// Representatives with multiplicities.
    pub fn with_multiplicities(&self) -> Vec<(Module, usize)> {
        self.classes
            .iter()
            .map(|c| (self.summands[c[0]].module.clone(), c.len()))
            .collect()
    }
}

fn split_recursive(m: &Module, out: &mut Vec<Summand>) -> Result<()> {
    if m.is_zero() {
        return Ok(());
    }
    match analyze_endomorphisms(m)? {
        EndAnalysis::Local(_) => {
            out.push(Summand {
                module: m.clone(),
                inclusion: ModuleMap::identity(m),
                projection: ModuleMap::identity(m),
            });
            Ok(())
        }
        EndAnalysis::Split(pw) => {
            let (k, k_incl) = pw.kernel();
            let (i, i_incl, _) = pw.image();
            // M = K ⊕ I; invert [ι_K ι_I] vertexwise to get projections
            let p = m.modulus();
            let mut k_proj = Vec::new();
            let mut i_proj = Vec::new();
            for v in 0..m.dims().len() {
                let both = Mat::hstack(&[k_incl.block(v), i_incl.block(v)], m.dims()[v], p);
                let inv = both.inverse().ok_or_else(|| {
                    Error::InvalidModule("Fitting splitting is not a direct sum".into())
                })?;
                let kd = k.dims()[v];
                k_proj.push(inv.block(0, 0, kd, m.dims()[v]));
                i_proj.push(inv.block(kd, 0, i.dims()[v], m.dims()[v]));
            }
            let k_proj = ModuleMap::new_unchecked(m.clone(), k.clone(), k_proj);
            let i_proj = ModuleMap::new_unchecked(m.clone(), i.clone(), i_proj);
            for (part, incl, proj) in [(&k, &k_incl, &k_proj), (&i, &i_incl, &i_proj)] {
                let mut sub = Vec::new();
                split_recursive(part, &mut sub)?;
                for s in sub {
                    out.push(Summand {
                        module: s.module,
                        inclusion: incl.compose(&s.inclusion),
                        projection: s.projection.compose(proj),
                    });
                }
            }
            Ok(())
        }
    }
}

/// Krull–Schmidt decomposition by Fitting splitting.
pub fn decompose(m: &Module) -> Result<Decomposition> {
    let mut summands = Vec::new();
    split_recursive(m, &mut summands)?;
    // canonical order: by dimension vector, then discovery order
    let mut order: Vec<usize> = (0..summands.len()).collect();
    order.sort_by(|&a, &b| {
        let da = &summands[a].module;
        let db = &summands[b].module;
        (da.dim(), da.dims()).cmp(&(db.dim(), db.dims())).then(a.cmp(&b))
    });
    let summands: Vec<Summand> = order.into_iter().map(|i| summands[i].clone()).collect();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, s) in summands.iter().enumerate() {
        let mut placed = false;
        for c in classes.iter_mut() {
            if indecomposable_iso(&summands[c[0]].module, &s.module)?.is_some() {
                c.push(i);
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push(vec![i]);
        }
    }
    Ok(Decomposition { summands, classes })
}

/// Isomorphism between two modules known to be indecomposable.
pub fn indecomposable_iso(x: &Module, y: &Module) -> Result<Option<ModuleMap>> {
    if !x.same_algebra_as(y) {
        return Err(Error::AlgebraMismatch);
    }
    if x.dims() != y.dims() || x.rank_profile() != y.rank_profile() {
        return Ok(None);
    }
    let hom = hom_space(x, y)?;
    Ok(hom.basis.into_iter().find(|f| f.is_iso()))
}

/// An explicit isomorphism `M -> N`, if one exists.
pub fn find_isomorphism(m: &Module, n: &Module) -> Result<Option<ModuleMap>> {
    if !m.same_algebra_as(n) {
        return Err(Error::AlgebraMismatch);
    }
    if m.dims() != n.dims() {
        return Ok(None);
    }
    if m.is_zero() {
        return Ok(Some(ModuleMap::zero(m, n)));
    }
    let dm = decompose(m)?;
    let dn = decompose(n)?;
    if dm.summands.len() != dn.summands.len() {
        return Ok(None);
    }
    let mut used = vec![false; dn.summands.len()];
    let mut acc = ModuleMap::zero(m, n);
    for sm in &dm.summands {
        let mut found = false;
        for (j, sn) in dn.summands.iter().enumerate() {
            if used[j] {
                continue;
            }
            if let Some(f) = indecomposable_iso(&sm.module, &sn.module)? {
                used[j] = true;
                acc = acc.add(&sn.inclusion.compose(&f).compose(&sm.projection));
                found = true;
                break;
            }
        }
        if !found {
            return Ok(None);
        }
    }
    debug_assert!(acc.is_iso());
    Ok(Some(acc))
}

pub fn is_isomorphic(m: &Module, n: &Module) -> Result<bool> {
    Ok(find_isomorphism(m, n)?.is_some())
}

/// Dimension vectors `0 < d <= bound`, ordered by total dimension then
/// lexicographically.
pub fn dimension_vectors(bound: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &b in bound {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (0..=b).map(move |x| {
                    let mut v = prefix.clone();
                    v.push(x);
                    v
                })
            })
            .collect();
    }
    out.retain(|v| v.iter().any(|&x| x > 0));
    out.sort_by(|a, b| (a.iter().sum::<usize>(), a).cmp(&(b.iter().sum::<usize>(), b)));
    out
}

fn arrow_entry_count(alg: &BasedAlgebra, dims: &[usize]) -> usize {
    alg.arrows()
        .iter()
        .map(|&a| dims[alg.tgt(a)] * dims[alg.src(a)])
        .sum()
}

fn module_from_index(alg: &Arc<BasedAlgebra>, dims: &[usize], mut idx: u64) -> Result<Module> {
    let p = alg.modulus();
    let mut blocks = Vec::new();
    for &a in alg.arrows() {
        let (r, c) = (dims[alg.tgt(a)], dims[alg.src(a)]);
        let mut entries = Vec::with_capacity(r * c);
        for _ in 0..r * c {
            entries.push((idx % p as u64) as u32);
            idx /= p as u64;
        }
        blocks.push(Mat::from_vec(r, c, p, entries)?);
    }
    Module::from_arrows(alg.clone(), dims.to_vec(), blocks)
}

/// All indecomposables with dimension vector at most `bound`, up to
/// isomorphism, found by scanning every tuple of arrow matrices.
pub fn enumerate_indecomposables(alg: &Arc<BasedAlgebra>, bound: &[usize], budget: u64) -> Result<Vec<Module>> {
    if bound.len() != alg.vertex_count() {
        return Err(Error::DimensionMismatch("bound needs one entry per vertex".into()));
    }
    let p = alg.modulus() as u64;
    let vectors = dimension_vectors(bound);
    let mut total: u64 = 0;
    for d in &vectors {
        let e = arrow_entry_count(alg, d) as u32;
        let count = p.checked_pow(e).unwrap_or(u64::MAX);
        total = total.saturating_add(count);
        if total > budget {
            return Err(Error::Budget(format!(
                "enumeration reached {} candidate tuples at dimension vector {:?}",
                total, d
            )));
        }
    }
    let mut found: Vec<Module> = Vec::new();
    for d in &vectors {
        let e = arrow_entry_count(alg, d) as u32;
        let count = p.pow(e);
        let candidates: Vec<(u64, Module)> = (0..count)
            .into_par_iter()
            .filter_map(|idx| {
                let m = module_from_index(alg, d, idx).ok()?;
                Some((idx, m))
            })
            .collect();
        let mut fresh: Vec<Module> = Vec::new();
        for (_, m) in candidates {
            let mut dup = false;
            for f in &fresh {
                if indecomposable_iso(f, &m)?.is_some() {
                    dup = true;
                    break;
                }
            }
            if dup || !is_indecomposable(&m)? {
                continue;
            }
            fresh.push(m);
        }
        found.extend(fresh);
    }
    Ok(found)
}

/// Cocycles for extensions `0 -> A -> E -> C -> 0`: per arrow `a: i -> j`, a
/// block `A_j × C_i`, concatenated row-major in arrow order.
pub fn cocycle_space(c: &Module, a: &Module) -> Result<Mat> {
    if !c.same_algebra_as(a) {
        return Err(Error::AlgebraMismatch);
    }
    let alg = c.algebra().clone();
    let p = alg.modulus();
    let layout = delta_layout(&alg, c, a);
    let total: usize = layout.iter().map(|(_, r, cc)| r * cc).sum();
    let mut columns: Vec<Vec<u32>> = Vec::with_capacity(total);
    for k in 0..total {
        let mut delta = vec![0u32; total];
        delta[k] = 1;
        columns.push(cocycle_defect(&alg, c, a, &layout, &delta));
    }
    let rows = columns.first().map_or(0, |v| v.len());
    if rows == 0 {
        return Ok(Mat::identity(total, p));
    }
    let defect = Mat::from_fn(rows, total, p, |i, j| columns[j][i]);
    Ok(defect.kernel_basis())
}

fn delta_layout(alg: &BasedAlgebra, c: &Module, a: &Module) -> Vec<(usize, usize, usize)> {
    let mut off = 0;
    alg.arrows()
        .iter()
        .map(|&ar| {
            let r = a.dims()[alg.tgt(ar)];
            let cc = c.dims()[alg.src(ar)];
            let item = (off, r, cc);
            off += r * cc;
            item
        })
        .collect()
}

fn delta_blocks(p: u32, layout: &[(usize, usize, usize)], delta: &[u32]) -> Vec<Mat> {
    layout
        .iter()
        .map(|&(off, r, cc)| Mat::from_vec(r, cc, p, delta[off..off + r * cc].to_vec()).unwrap())
        .collect()
}

/// Upper-right blocks of the extension action for every basis element.
fn extension_offdiag(alg: &BasedAlgebra, c: &Module, a: &Module, deltas: &[Mat]) -> Vec<Mat> {
    let p = alg.modulus();
    (0..alg.dim())
        .map(|b| {
            let (s, t) = (alg.src(b), alg.tgt(b));
            let mut acc = Mat::zeros(a.dims()[t], c.dims()[s], p);
            if alg.is_idempotent(b) {
                return acc;
            }
            for (coef, word) in alg.words(b) {
                // upper-right block of the product of triangular matrices
                let mut off = Mat::zeros(a.dims()[s], c.dims()[s], p);
                let mut bottom = Mat::identity(c.dims()[s], p);
                for &pos in word {
                    let ar = alg.arrows()[pos];
                    let new_off = &a.block(ar).mul_mat(&off) + &deltas[pos].mul_mat(&bottom);
                    bottom = c.block(ar).mul_mat(&bottom);
                    off = new_off;
                }
                acc.add_scaled(&off, *coef);
            }
            acc
        })
        .collect()
}

fn cocycle_defect(alg: &BasedAlgebra, c: &Module, a: &Module, layout: &[(usize, usize, usize)], delta: &[u32]) -> Vec<u32> {
    let p = alg.modulus();
    let deltas = delta_blocks(p, layout, delta);
    let off = extension_offdiag(alg, c, a, &deltas);
    let mut out = Vec::new();
    for i in 0..alg.dim() {
        for j in 0..alg.dim() {
            if alg.src(i) != alg.tgt(j) || alg.is_idempotent(i) || alg.is_idempotent(j) {
                continue;
            }
            let mut lhs = &a.block(i).mul_mat(&off[j]) + &off[i].mul_mat(c.block(j));
            for (k, &coef) in alg.product(i, j).iter().enumerate() {
                if coef != 0 {
                    lhs.add_scaled(&off[k], p - coef);
                }
            }
            out.extend_from_slice(lhs.entries());
        }
    }
    out
}

/// Coboundaries `δ_h(a) = A(a) h_i - h_j C(a)` for graded `h: C -> A`, as columns.
pub fn coboundary_space(c: &Module, a: &Module) -> Result<Mat> {
    let alg = c.algebra().clone();
    let p = alg.modulus();
    let layout = delta_layout(&alg, c, a);
    let total: usize = layout.iter().map(|(_, r, cc)| r * cc).sum();
    let nv = alg.vertex_count();
    let sizes: Vec<usize> = (0..nv).map(|v| a.dims()[v] * c.dims()[v]).collect();
    let offs = prefix_sums(&sizes);
    let hn: usize = sizes.iter().sum();
    let mut cols = Vec::new();
    for k in 0..hn {
        let mut hv = vec![0u32; hn];
        hv[k] = 1;
        let hs: Vec<Mat> = (0..nv)
            .map(|w| Mat::from_vec(a.dims()[w], c.dims()[w], p, hv[offs[w]..offs[w] + sizes[w]].to_vec()).unwrap())
            .collect();
        let mut col = Vec::with_capacity(total);
        for &ar in alg.arrows() {
            let (i, j) = (alg.src(ar), alg.tgt(ar));
            let blk = &a.block(ar).mul_mat(&hs[i]) - &hs[j].mul_mat(c.block(ar));
            col.extend_from_slice(blk.entries());
        }
        cols.push(col);
    }
    if cols.is_empty() || total == 0 {
        return Ok(Mat::zeros(total, 0, p));
    }
    Ok(Mat::from_fn(total, cols.len(), p, |i, j| cols[j][i]).column_space())
}

/// A short exact sequence `0 -> A -> E -> C -> 0`.
#[derive(Clone, Debug)]
pub struct Extension {
    pub middle: Module,
    pub inflation: ModuleMap,
    pub deflation: ModuleMap,
}

/// The middle term built from a cocycle.
pub fn extension_from_cocycle(c: &Module, a: &Module, delta: &[u32]) -> Result<Extension> {
    let alg = c.algebra().clone();
    let p = alg.modulus();
    let layout = delta_layout(&alg, c, a);
    let deltas = delta_blocks(p, &layout, delta);
    let nv = alg.vertex_count();
    let dims: Vec<usize> = (0..nv).map(|v| a.dims()[v] + c.dims()[v]).collect();
    let arrow_blocks: Vec<Mat> = alg
        .arrows()
        .iter()
        .enumerate()
        .map(|(pos, &ar)| {
            let (i, j) = (alg.src(ar), alg.tgt(ar));
            let mut m = Mat::zeros(dims[j], dims[i], p);
            m.set_block(0, 0, a.block(ar));
            m.set_block(0, a.dims()[i], &deltas[pos]);
            m.set_block(a.dims()[j], a.dims()[i], c.block(ar));
            m
        })
        .collect();
    let middle = Module::from_arrows(alg.clone(), dims.clone(), arrow_blocks)?;
    let mut inc = Vec::new();
    let mut proj = Vec::new();
    for v in 0..nv {
        let mut i = Mat::zeros(dims[v], a.dims()[v], p);
        i.set_block(0, 0, &Mat::identity(a.dims()[v], p));
        inc.push(i);
        let mut q = Mat::zeros(c.dims()[v], dims[v], p);
        q.set_block(0, a.dims()[v], &Mat::identity(c.dims()[v], p));
        proj.push(q);
    }
    Ok(Extension {
        inflation: ModuleMap::new(a.clone(), middle.clone(), inc)?,
        deflation: ModuleMap::new(middle.clone(), c.clone(), proj)?,
        middle,
    })
}

/// Cocycles representing a basis of `Ext^1(C, A)` modulo coboundaries.
pub fn ext1_cocycle_basis(c: &Module, a: &Module) -> Result<Vec<Vec<u32>>> {
    let z = cocycle_space(c, a)?;
    let b = coboundary_space(c, a)?;
    let p = c.modulus();
    let mut span = SpanBuilder::new(z.rows(), p);
    for j in 0..b.cols() {
        span.insert(&b.col(j));
    }
    let mut reps = Vec::new();
    for j in 0..z.cols() {
        let v = z.col(j);
        if span.insert(&v) {
            reps.push(v);
        }
    }
    Ok(reps)
}
