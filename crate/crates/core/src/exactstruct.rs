//! Exact structures on a module category: the abelian one, and relative
//! structures in which a conflation must stay exact under `Hom(G, -)` for
//! every generator `G`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::algebra::BasedAlgebra;
use crate::error::{Error, Result};
use crate::homology::{ext_from, resolve, Resolution};
use crate::linalg::Mat;
use crate::modcat::{decompose, hom_space, indecomposable_projectives, Module, ModuleMap};
use crate::subcat::SubcatSpec;

#[derive(Clone, Debug)]
pub enum StructureKind {
    Abelian,
    Relative { generators: Vec<(String, Module)> },
}

type CacheKey = (Vec<usize>, Vec<Mat>, usize);

struct Inner {
    alg: Arc<BasedAlgebra>,
    kind: StructureKind,
    projectives: SubcatSpec,
    resolutions: Mutex<HashMap<CacheKey, Arc<Resolution>>>,
}

/// An exact structure together with its indecomposable projectives.
#[derive(Clone)]
pub struct ExactStructure {
    inner: Arc<Inner>,
}

impl std::fmt::Debug for ExactStructure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ExactStructure({})", self.label())
    }
}

/// Outcome of a conflation test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConflationCheck {
    pub short_exact: bool,
    /// First generator on which `Hom(G, -)` fails to be exact.
    pub failing_generator: Option<String>,
}

impl ConflationCheck {
    pub fn holds(&self) -> bool {
        self.short_exact && self.failing_generator.is_none()
    }
}

pub(crate) fn vertex_projective_names(alg: &BasedAlgebra) -> Vec<String> {
    alg.vertex_labels().iter().map(|v| format!("P{v}")).collect()
}

impl ExactStructure {
    pub fn abelian(alg: Arc<BasedAlgebra>) -> Result<ExactStructure> {
        let projectives = SubcatSpec::projectives(&alg)?;
        Ok(Self::build(alg, StructureKind::Abelian, projectives))
    }

    /// The relative structure generated by the given modules; its projectives
    /// are `add(A ⊕ generators)`.
    pub fn relative(alg: Arc<BasedAlgebra>, generators: Vec<(String, Module)>) -> Result<ExactStructure> {
        if generators.is_empty() {
            return Err(Error::Precondition("a relative structure needs at least one generator".into()));
        }
        let mut named: Vec<(String, Module)> = vertex_projective_names(&alg)
            .into_iter()
            .zip(indecomposable_projectives(&alg))
            .collect();
        for (name, g) in &generators {
            if !g.same_algebra_as(&named[0].1) {
                return Err(Error::AlgebraMismatch);
            }
            let dec = decompose(g)?;
            let many = dec.classes.len() > 1;
            for (k, (m, _)) in dec.with_multiplicities().into_iter().enumerate() {
                let label = if many { format!("{name}[{k}]") } else { name.clone() };
                named.push((label, m));
            }
        }
        let projectives = SubcatSpec::basic_closure("Q", named)?;
        Ok(Self::build(alg, StructureKind::Relative { generators }, projectives))
    }

    fn build(alg: Arc<BasedAlgebra>, kind: StructureKind, projectives: SubcatSpec) -> ExactStructure {
        ExactStructure {
            inner: Arc::new(Inner {
                alg,
                kind,
                projectives,
                resolutions: Mutex::new(HashMap::new()),
            }),
        }
    }

    pub fn algebra(&self) -> &Arc<BasedAlgebra> {
        &self.inner.alg
    }

    pub fn kind(&self) -> &StructureKind {
        &self.inner.kind
    }

    pub fn is_abelian(&self) -> bool {
        matches!(self.inner.kind, StructureKind::Abelian)
    }

    pub fn label(&self) -> String {
        match &self.inner.kind {
            StructureKind::Abelian => "abelian".into(),
            StructureKind::Relative { generators } => {
                let names: Vec<&str> = generators.iter().map(|(n, _)| n.as_str()).collect();
                format!("relative({})", names.join(","))
            }
        }
    }

    /// Indecomposable projective objects of the structure.
    pub fn projectives(&self) -> &SubcatSpec {
        &self.inner.projectives
    }

    pub fn generators(&self) -> &[(String, Module)] {
        match &self.inner.kind {
            StructureKind::Abelian => &[],
            StructureKind::Relative { generators } => generators,
        }
    }

    /// Whether `0 -> A -f-> B -g-> C -> 0` is a conflation.
    pub fn is_conflation(&self, f: &ModuleMap, g: &ModuleMap) -> Result<ConflationCheck> {
        let b = f.target();
        let short_exact = f.target().dims() == g.source().dims()
            && f.is_injective()
            && g.is_surjective()
            && g.compose(f).is_zero()
            && f.rank() + g.rank() == b.dim();
        if !short_exact {
            return Ok(ConflationCheck {
                short_exact,
                failing_generator: None,
            });
        }
        Ok(ConflationCheck {
            short_exact,
            failing_generator: self.failing_generator(f.source(), b, g.target())?,
        })
    }

    fn failing_generator(&self, a: &Module, b: &Module, c: &Module) -> Result<Option<String>> {
        for (name, g) in self.generators() {
            let hb = hom_space(g, b)?.dim();
            let ha = hom_space(g, a)?.dim();
            let hc = hom_space(g, c)?.dim();
            if hb != ha + hc {
                return Ok(Some(name.clone()));
            }
        }
        Ok(None)
    }

    /// Whether a surjection is a deflation (its kernel sequence is a conflation).
    pub fn is_deflation(&self, g: &ModuleMap) -> Result<bool> {
        if !g.is_surjective() {
            return Ok(false);
        }
        let (_, incl) = g.kernel();
        Ok(self.is_conflation(&incl, g)?.holds())
    }

    /// Whether an injection is an inflation (its cokernel sequence is a conflation).
    pub fn is_inflation(&self, f: &ModuleMap) -> Result<bool> {
        if !f.is_injective() {
            return Ok(false);
        }
        let (_, proj) = f.cokernel();
        Ok(self.is_conflation(f, &proj)?.holds())
    }

    /// Indices of the candidates lying in the relative projectives.
    pub fn relative_projectives(&self, candidates: &[Module]) -> Result<Vec<usize>> {
        if self.is_abelian() {
            return Err(Error::Precondition(
                "relative projectives requested for the abelian structure".into(),
            ));
        }
        let mut out = Vec::new();
        for (i, m) in candidates.iter().enumerate() {
            if crate::homology::in_add(m, self.projectives())? {
                out.push(i);
            }
        }
        Ok(out)
    }

    /// Minimal (relative) projective resolution, cached per module.
    pub fn resolution(&self, m: &Module, cutoff: usize) -> Result<Arc<Resolution>> {
        if !crate::modcat::same_algebra(m.algebra(), self.algebra()) {
            return Err(Error::AlgebraMismatch);
        }
        let key = (m.dims().to_vec(), m.blocks().to_vec(), cutoff);
        if let Some(r) = self.inner.resolutions.lock().expect("cache lock").get(&key) {
            return Ok(r.clone());
        }
        let r = Arc::new(resolve(m, self.projectives(), cutoff)?);
        self.inner
            .resolutions
            .lock()
            .expect("cache lock")
            .insert(key, r.clone());
        Ok(r)
    }

    /// `dim Ext^i(M, N)` in this structure.
    pub fn ext(&self, m: &Module, n: &Module, i: usize, cutoff: usize) -> Result<usize> {
        ext_from(&*self.resolution(m, cutoff.max(i))?, n, i)
    }

    /// Entry `i` is `dim Ext^i(M, N)` for `i = 0..=upto`.
    pub fn ext_table(&self, m: &Module, n: &Module, upto: usize, cutoff: usize) -> Result<Vec<usize>> {
        let res = self.resolution(m, cutoff.max(upto))?;
        (0..=upto).map(|i| ext_from(&res, n, i)).collect()
    }
}

/// Relative resolution; errors for the abelian structure.
pub fn relative_resolution(s: &ExactStructure, m: &Module, cutoff: usize) -> Result<Arc<Resolution>> {
    if s.is_abelian() {
        return Err(Error::Precondition("relative resolution over the abelian structure".into()));
    }
    s.resolution(m, cutoff)
}

/// Relative Ext; errors for the abelian structure.
pub fn relative_ext(s: &ExactStructure, m: &Module, n: &Module, i: usize, cutoff: usize) -> Result<usize> {
    if s.is_abelian() {
        return Err(Error::Precondition("relative Ext over the abelian structure".into()));
    }
    s.ext(m, n, i, cutoff)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{path_algebra, Quiver};
    use crate::homology::{ext, LengthFlag};
    use crate::modcat::{direct_sum, simples};

    fn a2() -> Arc<BasedAlgebra> {
        let q = Quiver::new().vertex("1").vertex("2").arrow("a", "1", "2");
        Arc::new(path_algebra(&q, 2).unwrap())
    }

    fn dual() -> Arc<BasedAlgebra> {
        let q = Quiver::new().vertex("1").arrow("x", "1", "1").relation(&[(1, "x.x")]);
        Arc::new(path_algebra(&q, 2).unwrap())
    }

    #[test]
    fn split_sequences_are_conflations() {
        let a = a2();
        let s = simples(&a);
        let p = indecomposable_projectives(&a);
        let sum = direct_sum(&a, &[s[0].clone(), p[1].clone()]);
        let rel = ExactStructure::relative(a.clone(), vec![("S1".into(), s[0].clone())]).unwrap();
        for st in [ExactStructure::abelian(a.clone()).unwrap(), rel] {
            let c = st
                .is_conflation(&sum.inclusions[0], &sum.projections[1])
                .unwrap();
            assert!(c.holds());
        }
    }

    #[test]
    fn dual_numbers_relative_rejects_nonsplit() {
        let d = dual();
        let s = simples(&d)[0].clone();
        let lam = indecomposable_projectives(&d)[0].clone();
        let rel = ExactStructure::relative(d.clone(), vec![("S".into(), s.clone())]).unwrap();
        let cover = crate::homology::projective_cover(&s).unwrap();
        let (_, incl2) = cover.map.kernel();
        let c = rel.is_conflation(&incl2, &cover.map).unwrap();
        assert!(c.short_exact);
        assert_eq!(c.failing_generator.as_deref(), Some("S"));
        let ab = ExactStructure::abelian(d.clone()).unwrap();
        assert!(ab.is_conflation(&incl2, &cover.map).unwrap().holds());

        assert_eq!(rel.relative_projectives(&[s.clone(), lam.clone()]).unwrap(), vec![0, 1]);
        assert_eq!(relative_resolution(&rel, &s, 20).unwrap().flag, LengthFlag::Finite { length: 0 });
        assert_eq!(relative_ext(&rel, &s, &s, 1, 20).unwrap(), 0);
        assert_eq!(ext(&s, &s, 1).unwrap(), 1);
        assert!(ab.relative_projectives(&[s]).is_err());
    }

    #[test]
    fn a2_relative_examples() {
        let a = a2();
        let s = simples(&a);
        let p = indecomposable_projectives(&a);
        let rel = ExactStructure::relative(a.clone(), vec![("S1".into(), s[0].clone())]).unwrap();
        // S2 coincides with the projective P2, so it is relative projective too
        assert_eq!(rel.relative_projectives(&[s[1].clone(), s[0].clone()]).unwrap(), vec![0, 1]);
        let i2 = crate::modcat::indecomposable_injectives(&a)[1].clone();
        assert_eq!(rel.relative_projectives(&[i2]).unwrap(), vec![0]);
        let gen = direct_sum(&a, &[p[0].clone(), p[1].clone()]).module;
        let rp = ExactStructure::relative(a.clone(), vec![("P".into(), gen)]).unwrap();
        assert_eq!(rp.projectives().len(), 2);
        let r = relative_resolution(&rp, &s[0], 20).unwrap();
        assert_eq!(r.flag, LengthFlag::Finite { length: 1 });
        let ab = ExactStructure::abelian(a.clone()).unwrap();
        let all = [s[0].clone(), s[1].clone(), p[0].clone()];
        for x in &all {
            for y in &all {
                for i in 0..3 {
                    assert_eq!(rp.ext(x, y, i, 20).unwrap(), ab.ext(x, y, i, 20).unwrap());
                }
            }
        }
    }
}
