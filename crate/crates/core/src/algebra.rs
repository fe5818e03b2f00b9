//! Based algebras: finite-dimensional algebras presented by a basis and
//! structure constants, together with the quiver-with-relations constructor.
//!
//! Every algebra in the crate uses a *radical-adapted* basis: the primitive
//! idempotents `e_v` are basis elements, every other basis element `b`
//! satisfies `b = e_t b e_s` for a single pair of vertices `(s, t)`, and the
//! non-idempotent basis elements span a nilpotent ideal. The quotient by that
//! ideal is then a product of copies of `F_p`, so simples are one-dimensional
//! and modules are graded by vertex.
//!
//! Products read right to left: `b_i * b_j` means "first `b_j`, then `b_i`",
//! so a homogeneous element from `s` to `t` maps the vertex-`s` part of a left
//! module to the vertex-`t` part.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::{check_modulus, inv_mod, Mat, SpanBuilder};

/// Longest path the path-algebra constructor explores before declaring the
/// quotient infinite-dimensional.
pub const MAX_PATH_LENGTH: usize = 64;

/// A word in the arrows: positions into [`BasedAlgebra::arrows`], listed in
/// the order they are applied.
pub type Word = Vec<usize>;

#[derive(Clone)]
pub struct BasedAlgebra {
    modulus: u32,
    labels: Vec<String>,
    vertex_labels: Vec<String>,
    consts: Vec<u32>,
    idempotents: Vec<usize>,
    src: Vec<usize>,
    tgt: Vec<usize>,
    vertex_of_idempotent: Vec<Option<usize>>,
    arrows: Vec<usize>,
    words: Vec<Vec<(u32, Word)>>,
    loewy_length: usize,
}

impl PartialEq for BasedAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus
            && self.labels == other.labels
            && self.vertex_labels == other.vertex_labels
            && self.idempotents == other.idempotents
            && self.consts == other.consts
    }
}

impl Eq for BasedAlgebra {}

impl fmt::Debug for BasedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BasedAlgebra")
            .field("modulus", &self.modulus)
            .field("labels", &self.labels)
            .field("vertices", &self.vertex_labels)
            .finish()
    }
}

impl BasedAlgebra {
    /// Validates and builds a based algebra. `consts[(i*d + j)*d + k]` is the
    /// coefficient of `b_k` in `b_i * b_j`; `idempotents[v]` is the basis index
    /// of `e_v`.
    pub fn new(
        modulus: u32,
        labels: Vec<String>,
        vertex_labels: Vec<String>,
        consts: Vec<u32>,
        idempotents: Vec<usize>,
    ) -> Result<BasedAlgebra> {
        check_modulus(modulus)?;
        let d = labels.len();
        if consts.len() != d * d * d {
            return Err(Error::InvalidAlgebra(format!(
                "{} structure constants for dimension {}",
                consts.len(),
                d
            )));
        }
        if idempotents.len() != vertex_labels.len() || idempotents.is_empty() {
            return Err(Error::InvalidAlgebra(
                "one idempotent per vertex is required".into(),
            ));
        }
        let mut vertex_of_idempotent = vec![None; d];
        for (v, &e) in idempotents.iter().enumerate() {
            if e >= d || vertex_of_idempotent[e].is_some() {
                return Err(Error::InvalidAlgebra(format!("bad idempotent index {e}")));
            }
            vertex_of_idempotent[e] = Some(v);
        }
        let consts: Vec<u32> = consts.into_iter().map(|c| c % modulus).collect();
        let mut alg = BasedAlgebra {
            modulus,
            labels,
            vertex_labels,
            consts,
            idempotents,
            src: vec![0; d],
            tgt: vec![0; d],
            vertex_of_idempotent,
            arrows: Vec::new(),
            words: Vec::new(),
            loewy_length: 0,
        };
        alg.check_idempotents()?;
        alg.assign_vertices()?;
        alg.check_associative()?;
        alg.check_radical()?;
        alg.compute_generators()?;
        Ok(alg)
    }

    fn unit_vec(&self, i: usize) -> Vec<u32> {
        let mut v = vec![0; self.dim()];
        v[i] = 1;
        v
    }

    fn check_idempotents(&self) -> Result<()> {
        let d = self.dim();
        for (k, &ek) in self.idempotents.iter().enumerate() {
            for (l, &el) in self.idempotents.iter().enumerate() {
                let expect = if k == l { self.unit_vec(ek) } else { vec![0; d] };
                if self.product(ek, el) != expect.as_slice() {
                    return Err(Error::InvalidAlgebra(format!(
                        "idempotents {} and {} are not orthogonal idempotents",
                        self.labels[ek], self.labels[el]
                    )));
                }
            }
        }
        for j in 0..d {
            let mut left = vec![0u32; d];
            let mut right = vec![0u32; d];
            for &e in &self.idempotents {
                add_into(&mut left, self.product(e, j), 1, self.modulus);
                add_into(&mut right, self.product(j, e), 1, self.modulus);
            }
            let unit = self.unit_vec(j);
            if left != unit || right != unit {
                return Err(Error::InvalidAlgebra(
                    "idempotents do not sum to the identity".into(),
                ));
            }
        }
        Ok(())
    }

    fn assign_vertices(&mut self) -> Result<()> {
        let d = self.dim();
        for b in 0..d {
            let unit = self.unit_vec(b);
            let mut s = None;
            let mut t = None;
            for (v, &e) in self.idempotents.iter().enumerate() {
                if self.product(b, e) == unit.as_slice() {
                    if s.replace(v).is_some() {
                        return Err(Error::InvalidAlgebra(format!(
                            "{} is not homogeneous",
                            self.labels[b]
                        )));
                    }
                }
                if self.product(e, b) == unit.as_slice() {
                    if t.replace(v).is_some() {
                        return Err(Error::InvalidAlgebra(format!(
                            "{} is not homogeneous",
                            self.labels[b]
                        )));
                    }
                }
            }
            match (s, t) {
                (Some(s), Some(t)) => {
                    self.src[b] = s;
                    self.tgt[b] = t;
                }
                _ => {
                    return Err(Error::InvalidAlgebra(format!(
                        "{} is not homogeneous with respect to the idempotents",
                        self.labels[b]
                    )))
                }
            }
        }
        Ok(())
    }

    fn check_associative(&self) -> Result<()> {
        let d = self.dim();
        let p = self.modulus;
        for i in 0..d {
            for j in 0..d {
                if self.src[i] != self.tgt[j] {
                    continue;
                }
                let ij = self.product(i, j).to_vec();
                for k in 0..d {
                    if self.src[j] != self.tgt[k] {
                        continue;
                    }
                    let jk = self.product(j, k);
                    let mut lhs = vec![0u32; d];
                    for (m, &c) in ij.iter().enumerate() {
                        if c != 0 {
                            add_into(&mut lhs, self.product(m, k), c, p);
                        }
                    }
                    let mut rhs = vec![0u32; d];
                    for (m, &c) in jk.iter().enumerate() {
                        if c != 0 {
                            add_into(&mut rhs, self.product(i, m), c, p);
                        }
                    }
                    if lhs != rhs {
                        return Err(Error::InvalidAlgebra(format!(
                            "associativity fails on ({}, {}, {})",
                            self.labels[i], self.labels[j], self.labels[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_radical(&mut self) -> Result<()> {
        let d = self.dim();
        let rad: Vec<usize> = (0..d).filter(|&b| !self.is_idempotent(b)).collect();
        for &r in &rad {
            for b in 0..d {
                for prod in [self.product(b, r), self.product(r, b)] {
                    if self.idempotents.iter().any(|&e| prod[e] != 0) {
                        return Err(Error::InvalidAlgebra(format!(
                            "non-idempotent basis elements do not span an ideal (via {})",
                            self.labels[r]
                        )));
                    }
                }
            }
        }
        // powers of the radical must reach zero
        let mut power: Vec<Vec<u32>> = rad.iter().map(|&r| self.unit_vec(r)).collect();
        let mut length = 1;
        while !power.is_empty() {
            if length > d + 1 {
                return Err(Error::InvalidAlgebra(
                    "radical is not nilpotent; a corner algebra is not local".into(),
                ));
            }
            let mut next = SpanBuilder::new(d, self.modulus);
            let mut basis = Vec::new();
            for &r in &rad {
                for v in &power {
                    let w = self.mul_vec(&self.unit_vec(r), v);
                    if next.insert(&w) {
                        basis.push(w);
                    }
                }
            }
            power = basis;
            length += 1;
        }
        self.loewy_length = length;
        Ok(())
    }

    fn compute_generators(&mut self) -> Result<()> {
        let d = self.dim();
        let p = self.modulus;
        let rad: Vec<usize> = (0..d).filter(|&b| !self.is_idempotent(b)).collect();
        // rad^2 spanned by products of radical basis elements
        let mut rad2 = SpanBuilder::new(d, p);
        for &r in &rad {
            for &s in &rad {
                rad2.insert(self.product(r, s));
            }
        }
        let mut arrows = Vec::new();
        for &r in &rad {
            if rad2.insert(&self.unit_vec(r)) {
                arrows.push(r);
            }
        }
        self.arrows = arrows;

        // words level by level, keeping a basis of each level's span
        let mut chosen: Vec<(Word, Vec<u32>)> = Vec::new();
        let mut level: Vec<(Word, Vec<u32>)> = self
            .arrows
            .iter()
            .enumerate()
            .map(|(pos, &a)| (vec![pos], self.unit_vec(a)))
            .collect();
        let mut global = SpanBuilder::new(d, p);
        while !level.is_empty() {
            for (w, v) in &level {
                if global.insert(v) {
                    chosen.push((w.clone(), v.clone()));
                }
            }
            let mut next_span = SpanBuilder::new(d, p);
            let mut next = Vec::new();
            for (w, v) in &level {
                let end = self.word_target(w);
                for (pos, &a) in self.arrows.iter().enumerate() {
                    if self.src[a] != end {
                        continue;
                    }
                    let prod = self.mul_vec(&self.unit_vec(a), v);
                    if next_span.insert(&prod) {
                        let mut w2 = w.clone();
                        w2.push(pos);
                        next.push((w2, prod));
                    }
                }
            }
            level = next;
        }
        let cols: Vec<u32> = chosen.iter().flat_map(|(_, v)| v.iter().copied()).collect();
        let word_mat = Mat::from_vec(chosen.len(), d, p, cols)?.transpose();
        let mut words = vec![Vec::new(); d];
        for &r in &rad {
            let target = Mat::column(p, &self.unit_vec(r));
            let x = word_mat.solve(&target)?.ok_or_else(|| {
                Error::InvalidAlgebra(format!(
                    "{} is not generated by arrows",
                    self.labels[r]
                ))
            })?;
            words[r] = (0..chosen.len())
                .filter(|&c| x.get(c, 0) != 0)
                .map(|c| (x.get(c, 0), chosen[c].0.clone()))
                .collect();
        }
        self.words = words;
        Ok(())
    }

    fn word_target(&self, w: &Word) -> usize {
        self.tgt[self.arrows[*w.last().expect("nonempty word")]]
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, b: usize) -> &str {
        &self.labels[b]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn vertex_count(&self) -> usize {
        self.idempotents.len()
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.vertex_labels
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertex_labels.iter().position(|l| l == label)
    }

    pub fn idempotents(&self) -> &[usize] {
        &self.idempotents
    }

    pub fn idempotent(&self, v: usize) -> usize {
        self.idempotents[v]
    }

    pub fn is_idempotent(&self, b: usize) -> bool {
        self.vertex_of_idempotent[b].is_some()
    }

    /// Vertex `v` if `b = e_v`.
    pub fn idempotent_vertex(&self, b: usize) -> Option<usize> {
        self.vertex_of_idempotent[b]
    }

    pub fn src(&self, b: usize) -> usize {
        self.src[b]
    }

    pub fn tgt(&self, b: usize) -> usize {
        self.tgt[b]
    }

    /// Coefficients of `b_i * b_j` in the basis.
    pub fn product(&self, i: usize, j: usize) -> &[u32] {
        let d = self.dim();
        &self.consts[(i * d + j) * d..(i * d + j + 1) * d]
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> u32 {
        let d = self.dim();
        self.consts[(i * d + j) * d + k]
    }

    pub fn mul_vec(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        let d = self.dim();
        let p = self.modulus;
        let mut out = vec![0u32; d];
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b == 0 || self.src[i] != self.tgt[j] {
                    continue;
                }
                add_into(&mut out, self.product(i, j), a * b % p, p);
            }
        }
        out
    }

    /// Basis indices of the arrows (a basis of `rad / rad^2`).
    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    /// Expansion of a radical basis element as a combination of arrow words.
    pub fn words(&self, b: usize) -> &[(u32, Word)] {
        &self.words[b]
    }

    pub fn loewy_length(&self) -> usize {
        self.loewy_length
    }

    /// Basis elements `b` with `src(b) = s` and `tgt(b) = t`, in index order.
    pub fn corner(&self, s: usize, t: usize) -> Vec<usize> {
        (0..self.dim())
            .filter(|&b| self.src[b] == s && self.tgt[b] == t)
            .collect()
    }

    /// `C[i][j] = dim e_i A e_j`, the composition multiplicity of `S_i` in `P_j`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.vertex_count();
        let mut c = vec![vec![0i64; n]; n];
        for b in 0..self.dim() {
            c[self.tgt[b]][self.src[b]] += 1;
        }
        c
    }

    /// Vertex count and sorted arrow endpoints: an isomorphism invariant for
    /// algebras given by quivers with admissible relations.
    pub fn quiver_shape(&self) -> (usize, Vec<(usize, usize)>) {
        let mut arrows: Vec<(usize, usize)> = self
            .arrows
            .iter()
            .map(|&a| (self.src[a], self.tgt[a]))
            .collect();
        arrows.sort_unstable();
        (self.vertex_count(), arrows)
    }

    pub fn opposite(&self) -> BasedAlgebra {
        let d = self.dim();
        let mut consts = vec![0u32; d * d * d];
        for i in 0..d {
            for j in 0..d {
                let src = (j * d + i) * d;
                consts[(i * d + j) * d..(i * d + j + 1) * d]
                    .copy_from_slice(&self.consts[src..src + d]);
            }
        }
        BasedAlgebra::new(
            self.modulus,
            self.labels.clone(),
            self.vertex_labels.clone(),
            consts,
            self.idempotents.clone(),
        )
        .expect("opposite of a valid algebra is valid")
    }

    /// Whether `other` is the opposite algebra of `self`, basis for basis.
    pub fn is_opposite_of(&self, other: &BasedAlgebra) -> bool {
        let d = self.dim();
        if self.modulus != other.modulus
            || self.labels != other.labels
            || self.idempotents != other.idempotents
        {
            return false;
        }
        (0..d).all(|i| (0..d).all(|j| self.product(i, j) == other.product(j, i)))
    }
}

pub(crate) fn add_into(acc: &mut [u32], v: &[u32], c: u32, p: u32) {
    if c == 0 {
        return;
    }
    for (a, &b) in acc.iter_mut().zip(v) {
        *a = (*a + b * c) % p;
    }
}

/// A finite quiver with relations, each relation an `F_p`-combination of
/// paths sharing source and target.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<(String, usize, usize)>,
    pub relations: Vec<Vec<(i64, Vec<usize>)>>,
}

impl Quiver {
    pub fn new() -> Quiver {
        Quiver::default()
    }

    pub fn vertex(mut self, label: &str) -> Quiver {
        self.vertices.push(label.to_string());
        self
    }

    pub fn arrow(mut self, label: &str, src: &str, tgt: &str) -> Quiver {
        let s = self.vertices.iter().position(|v| v == src).expect("declared vertex");
        let t = self.vertices.iter().position(|v| v == tgt).expect("declared vertex");
        self.arrows.push((label.to_string(), s, t));
        self
    }

    /// Adds a relation from `(coefficient, "a.b.c")` terms.
    pub fn relation(mut self, terms: &[(i64, &str)]) -> Quiver {
        let rel = terms
            .iter()
            .map(|(c, path)| {
                let arrows = path
                    .split('.')
                    .map(|a| {
                        self.arrows
                            .iter()
                            .position(|(l, _, _)| l == a)
                            .expect("declared arrow")
                    })
                    .collect();
                (*c, arrows)
            })
            .collect();
        self.relations.push(rel);
        self
    }

    pub fn arrow_index(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|(l, _, _)| l == label)
    }

    fn path_src(&self, path: &[usize]) -> usize {
        self.arrows[path[0]].1
    }

    fn path_tgt(&self, path: &[usize]) -> usize {
        self.arrows[*path.last().unwrap()].2
    }

    fn composable(&self, path: &[usize]) -> bool {
        path.windows(2).all(|w| self.arrows[w[0]].2 == self.arrows[w[1]].1)
    }

    fn path_key(&self, path: &[usize]) -> (usize, Vec<String>) {
        (
            path.len(),
            path.iter().map(|&a| self.arrows[a].0.clone()).collect(),
        )
    }
}

struct Rule {
    lead: Vec<usize>,
    tail: Vec<(u32, Vec<usize>)>,
}

struct Rewriter<'a> {
    quiver: &'a Quiver,
    rules: Vec<Rule>,
    modulus: u32,
}

impl Rewriter<'_> {
    fn find_lead(&self, path: &[usize]) -> Option<(usize, usize)> {
        for (ri, rule) in self.rules.iter().enumerate() {
            let l = rule.lead.len();
            if l <= path.len() {
                if let Some(pos) = (0..=path.len() - l).find(|&s| path[s..s + l] == rule.lead[..]) {
                    return Some((ri, pos));
                }
            }
        }
        None
    }

    fn is_normal_suffix(&self, path: &[usize]) -> bool {
        self.rules.iter().all(|r| !path.ends_with(&r.lead))
    }

    /// Reduces a combination of paths to normal form.
    fn reduce(&self, start: Vec<(u32, Vec<usize>)>) -> BTreeMap<Vec<usize>, u32> {
        let p = self.modulus;
        let mut done: BTreeMap<Vec<usize>, u32> = BTreeMap::new();
        let mut pending: BTreeMap<(usize, Vec<String>, Vec<usize>), u32> = BTreeMap::new();
        let push = |pending: &mut BTreeMap<(usize, Vec<String>, Vec<usize>), u32>,
                    c: u32,
                    path: Vec<usize>| {
            let (len, key) = self.quiver.path_key(&path);
            let e = pending.entry((len, key, path)).or_insert(0);
            *e = (*e + c) % p;
        };
        for (c, path) in start {
            push(&mut pending, c, path);
        }
        // largest terms first so rewriting strictly descends
        while let Some(((_, _, path), c)) = pending.pop_last() {
            if c == 0 {
                continue;
            }
            match self.find_lead(&path) {
                None => {
                    let e = done.entry(path).or_insert(0);
                    *e = (*e + c) % p;
                }
                Some((ri, pos)) => {
                    let rule = &self.rules[ri];
                    let l = rule.lead.len();
                    for (tc, tp) in &rule.tail {
                        let mut np = path[..pos].to_vec();
                        np.extend_from_slice(tp);
                        np.extend_from_slice(&path[pos + l..]);
                        push(&mut pending, c * tc % p, np);
                    }
                }
            }
        }
        done.retain(|_, c| *c != 0);
        done
    }
}

/// Builds the based algebra `F_p Q / I` on reduced paths. Relations are
/// oriented longest-path-first with a lexicographic tiebreak on arrow labels.
pub fn path_algebra(q: &Quiver, modulus: u32) -> Result<BasedAlgebra> {
    check_modulus(modulus)?;
    if q.vertices.is_empty() {
        return Err(Error::InvalidAlgebra("quiver has no vertices".into()));
    }
    let p = modulus;
    let mut rules = Vec::new();
    for (ri, rel) in q.relations.iter().enumerate() {
        let mut terms: BTreeMap<Vec<usize>, u32> = BTreeMap::new();
        for (c, path) in rel {
            if path.len() < 2 {
                return Err(Error::InvalidAlgebra(format!(
                    "relation {} has a path of length < 2",
                    ri + 1
                )));
            }
            if !q.composable(path) {
                return Err(Error::InvalidAlgebra(format!(
                    "relation {} has a non-composable path",
                    ri + 1
                )));
            }
            let e = terms.entry(path.clone()).or_insert(0);
            *e = (*e + crate::linalg::reduce(*c, p)) % p;
        }
        terms.retain(|_, c| *c != 0);
        if terms.is_empty() {
            continue;
        }
        let ends: Vec<(usize, usize)> = terms
            .keys()
            .map(|path| (q.path_src(path), q.path_tgt(path)))
            .collect();
        if ends.iter().any(|e| *e != ends[0]) {
            return Err(Error::InvalidAlgebra(format!(
                "relation {} mixes paths with different endpoints",
                ri + 1
            )));
        }
        let lead = terms
            .keys()
            .max_by_key(|path| q.path_key(path))
            .unwrap()
            .clone();
        let lead_c = terms[&lead];
        let scale = p - inv_mod(lead_c, p);
        let tail = terms
            .iter()
            .filter(|(path, _)| **path != lead)
            .map(|(path, &c)| (c * scale % p, path.clone()))
            .collect();
        rules.push(Rule { lead, tail });
    }
    let rw = Rewriter {
        quiver: q,
        rules,
        modulus: p,
    };

    // normal paths, length by length
    let mut paths: Vec<Vec<usize>> = Vec::new();
    let mut level: Vec<Vec<usize>> = (0..q.arrows.len())
        .map(|a| vec![a])
        .filter(|path| rw.is_normal_suffix(path))
        .collect();
    let mut length = 1;
    while !level.is_empty() {
        if length > MAX_PATH_LENGTH {
            return Err(Error::InfiniteDimensional(format!(
                "reduced paths of length {} exist",
                MAX_PATH_LENGTH
            )));
        }
        paths.extend(level.iter().cloned());
        let mut next = Vec::new();
        for path in &level {
            let end = q.path_tgt(path);
            for (a, arrow) in q.arrows.iter().enumerate() {
                if arrow.1 != end {
                    continue;
                }
                let mut np = path.clone();
                np.push(a);
                if rw.is_normal_suffix(&np) {
                    next.push(np);
                }
            }
        }
        level = next;
        length += 1;
    }

    let nv = q.vertices.len();
    let d = nv + paths.len();
    let mut labels: Vec<String> = q.vertices.iter().map(|v| format!("e{v}")).collect();
    for path in &paths {
        let names: Vec<&str> = path.iter().map(|&a| q.arrows[a].0.as_str()).collect();
        labels.push(names.join("."));
    }
    let index: BTreeMap<Vec<usize>, usize> = paths
        .iter()
        .enumerate()
        .map(|(i, path)| (path.clone(), nv + i))
        .collect();
    // endpoints of each basis element
    let src_of = |b: usize| if b < nv { b } else { q.path_src(&paths[b - nv]) };
    let tgt_of = |b: usize| if b < nv { b } else { q.path_tgt(&paths[b - nv]) };
    let mut consts = vec![0u32; d * d * d];
    for i in 0..d {
        for j in 0..d {
            // b_i * b_j: first b_j, then b_i
            if tgt_of(j) != src_of(i) {
                continue;
            }
            let out = &mut consts[(i * d + j) * d..(i * d + j + 1) * d];
            if i < nv {
                out[j] = 1;
                continue;
            }
            if j < nv {
                out[i] = 1;
                continue;
            }
            let mut cat = paths[j - nv].clone();
            cat.extend_from_slice(&paths[i - nv]);
            for (path, c) in rw.reduce(vec![(1, cat)]) {
                let k = *index.get(&path).ok_or_else(|| {
                    Error::InvalidAlgebra("reduction left the normal basis".into())
                })?;
                out[k] = c;
            }
        }
    }
    BasedAlgebra::new(p, labels, q.vertices.clone(), consts, (0..nv).collect())
}

/// The semisimple algebra `F_p x ... x F_p` on `n` vertices.
pub fn semisimple(n: usize, modulus: u32) -> Result<BasedAlgebra> {
    let mut q = Quiver::new();
    for v in 1..=n {
        q = q.vertex(&v.to_string());
    }
    path_algebra(&q, modulus)
}
