//! Text input: a quiver with relations followed by named modules.
//!
//! ```text
//! field 2
//! vertex 1
//! vertex 2
//! arrow a 1 2
//! relation 1*a.b + 1*c
//! module M dim 1 1
//! act a = [[1]]
//! ```
//!
//! Paths `a.b` mean first `a`, then `b`. `act` gives the block of a basis
//! element as a `dim M_tgt x dim M_src` matrix; omitted elements act as
//! forced by the arrows, and any supplied non-arrow block must agree.

use std::sync::Arc;

use crate::algebra::{path_algebra, BasedAlgebra, Quiver};
use crate::error::{Error, Result};
use crate::homology::regular_module;
use crate::linalg::Mat;
use crate::modcat::{indecomposable_injectives, indecomposable_projectives, simples, Module};

#[derive(Clone, Debug)]
pub struct Document {
    pub quiver: Quiver,
    pub algebra: Arc<BasedAlgebra>,
    pub modules: Vec<(String, Module)>,
}

struct PendingModule {
    line: usize,
    name: String,
    dims: Vec<usize>,
    acts: Vec<(usize, String, String)>,
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Parses `[[1,0],[0,1]]` (entries reduced mod `p`) into a matrix of the
/// expected shape; `[]` stands for any shape with a zero dimension.
pub fn parse_matrix(text: &str, rows: usize, cols: usize, p: u32) -> std::result::Result<Mat, String> {
    let parsed: Vec<Vec<i64>> = serde_json::from_str(text.trim()).map_err(|e| format!("bad matrix: {e}"))?;
    if parsed.is_empty() && (rows == 0 || cols == 0) {
        return Ok(Mat::zeros(rows, cols, p));
    }
    if parsed.len() != rows || parsed.iter().any(|r| r.len() != cols) {
        return Err(format!("expected a {rows}x{cols} matrix"));
    }
    Ok(Mat::from_fn(rows, cols, p, |i, j| crate::linalg::reduce(parsed[i][j], p)))
}

fn parse_relation(q: &Quiver, body: &str, line: usize) -> Result<Vec<(i64, String)>> {
    let mut terms = Vec::new();
    let normalized = body.replace('-', "+-");
    for raw in normalized.split('+') {
        let t = raw.trim();
        if t.is_empty() {
            continue;
        }
        let (c, path) = match t.split_once('*') {
            Some((c, path)) => {
                let c = c.trim();
                let c: i64 = match c {
                    "" => 1,
                    "-" => -1,
                    _ => c.parse().map_err(|_| perr(line, format!("bad coefficient {c:?}")))?,
                };
                (c, path.trim())
            }
            None => match t.strip_prefix('-') {
                Some(rest) => (-1, rest.trim()),
                None => (1, t),
            },
        };
        for a in path.split('.') {
            if q.arrow_index(a).is_none() {
                return Err(perr(line, format!("unknown arrow {a:?}")));
            }
        }
        terms.push((c, path.to_string()));
    }
    if terms.is_empty() {
        return Err(perr(line, "empty relation"));
    }
    Ok(terms)
}

pub fn parse_document(text: &str) -> Result<Document> {
    let mut modulus = None;
    let mut q = Quiver::new();
    let mut relations: Vec<(usize, Vec<(i64, String)>)> = Vec::new();
    let mut pending: Vec<PendingModule> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut words = content.split_whitespace();
        let head = words.next().unwrap_or("");
        match head {
            "field" => {
                let p: u32 = words
                    .next()
                    .and_then(|w| w.parse().ok())
                    .ok_or_else(|| perr(line, "field needs a prime"))?;
                crate::linalg::check_modulus(p).map_err(|e| perr(line, e.to_string()))?;
                modulus = Some(p);
            }
            "vertex" => {
                let v = words.next().ok_or_else(|| perr(line, "vertex needs a label"))?;
                if q.vertices.iter().any(|x| x == v) {
                    return Err(perr(line, format!("vertex {v} declared twice")));
                }
                q = q.vertex(v);
            }
            "arrow" => {
                let parts: Vec<&str> = words.collect();
                if parts.len() != 3 {
                    return Err(perr(line, "arrow needs a label, a source and a target"));
                }
                for v in &parts[1..] {
                    if !q.vertices.iter().any(|x| x == v) {
                        return Err(perr(line, format!("unknown vertex {v}")));
                    }
                }
                if q.arrow_index(parts[0]).is_some() {
                    return Err(perr(line, format!("arrow {} declared twice", parts[0])));
                }
                q = q.arrow(parts[0], parts[1], parts[2]);
            }
            "relation" => {
                let body = content["relation".len()..].trim();
                relations.push((line, parse_relation(&q, body, line)?));
            }
            "module" => {
                let name = words.next().ok_or_else(|| perr(line, "module needs a name"))?;
                if words.next() != Some("dim") {
                    return Err(perr(line, "expected `module <name> dim ...`"));
                }
                let dims = words
                    .map(|w| w.parse::<usize>().map_err(|_| perr(line, format!("bad dimension {w:?}"))))
                    .collect::<Result<Vec<_>>>()?;
                pending.push(PendingModule {
                    line,
                    name: name.to_string(),
                    dims,
                    acts: Vec::new(),
                });
            }
            "act" => {
                let cur = pending.last_mut().ok_or_else(|| perr(line, "act outside a module block"))?;
                let rest = content["act".len()..].trim();
                let (label, mat) = rest.split_once('=').ok_or_else(|| perr(line, "expected `act <label> = [[...]]`"))?;
                cur.acts.push((line, label.trim().to_string(), mat.trim().to_string()));
            }
            other => return Err(perr(line, format!("unknown declaration {other:?}"))),
        }
    }
    let p = modulus.ok_or_else(|| perr(1, "missing `field` declaration"))?;
    for (_, terms) in &relations {
        let borrowed: Vec<(i64, &str)> = terms.iter().map(|(c, s)| (*c, s.as_str())).collect();
        q = q.relation(&borrowed);
    }
    let first_rel = relations.first().map(|r| r.0).unwrap_or(1);
    let algebra = Arc::new(path_algebra(&q, p).map_err(|e| perr(first_rel, e.to_string()))?);
    let mut modules = Vec::new();
    for pm in pending {
        if modules.iter().any(|(n, _): &(String, Module)| n == &pm.name) {
            return Err(perr(pm.line, format!("module {} declared twice", pm.name)));
        }
        let m = build_module(&algebra, &pm)?;
        modules.push((pm.name, m));
    }
    Ok(Document {
        quiver: q,
        algebra,
        modules,
    })
}

fn build_module(alg: &Arc<BasedAlgebra>, pm: &PendingModule) -> Result<Module> {
    let p = alg.modulus();
    if pm.dims.len() != alg.vertex_count() {
        return Err(perr(pm.line, format!("expected {} dimensions", alg.vertex_count())));
    }
    let mut given: Vec<Option<(usize, Mat)>> = vec![None; alg.dim()];
    for (line, label, text) in &pm.acts {
        let b = alg.index_of(label).ok_or_else(|| perr(*line, format!("unknown basis element {label:?}")))?;
        let shape = (pm.dims[alg.tgt(b)], pm.dims[alg.src(b)]);
        let m = parse_matrix(text, shape.0, shape.1, p).map_err(|e| perr(*line, e))?;
        if given[b].is_some() {
            return Err(perr(*line, format!("{label} given twice")));
        }
        given[b] = Some((*line, m));
    }
    let arrow_blocks = alg
        .arrows()
        .iter()
        .map(|&a| match &given[a] {
            Some((_, m)) => m.clone(),
            None => Mat::zeros(pm.dims[alg.tgt(a)], pm.dims[alg.src(a)], p),
        })
        .collect();
    let m = Module::from_arrows(alg.clone(), pm.dims.clone(), arrow_blocks).map_err(|e| perr(pm.line, e.to_string()))?;
    for (b, g) in given.iter().enumerate() {
        if let Some((line, mat)) = g {
            if m.block(b) != mat {
                return Err(perr(*line, format!("{} disagrees with the action forced by the arrows", alg.label(b))));
            }
        }
    }
    Ok(m)
}

impl Document {
    /// A declared module, or one of the standard names `P<v>`, `S<v>`,
    /// `I<v>`, `Lambda`.
    pub fn module(&self, name: &str) -> Result<Module> {
        if let Some((_, m)) = self.modules.iter().find(|(n, _)| n == name) {
            return Ok(m.clone());
        }
        let alg = &self.algebra;
        if name == "Lambda" {
            return Ok(regular_module(alg));
        }
        let families: [(&str, fn(&Arc<BasedAlgebra>) -> Vec<Module>); 3] = [
            ("P", indecomposable_projectives),
            ("S", simples),
            ("I", indecomposable_injectives),
        ];
        for (prefix, f) in families {
            if let Some(v) = name.strip_prefix(prefix).and_then(|v| alg.vertex_index(v)) {
                return Ok(f(alg)[v].clone());
            }
        }
        Err(Error::UnknownName(name.to_string()))
    }

    /// Modules for a comma-separated list of names.
    pub fn named_list(&self, list: &str) -> Result<Vec<(String, Module)>> {
        list.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|n| Ok((n.to_string(), self.module(n)?)))
            .collect()
    }
}
