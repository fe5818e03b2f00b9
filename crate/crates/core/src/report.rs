//! JSON views of modules and maps, the report envelope, and witness replay:
//! each replay recomputes the objects a report cites and checks them
//! against what the report claims.

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::error::Result;
use crate::exactstruct::ExactStructure;
use crate::homology::{left_approximation, pdim, right_approximation};
use crate::linalg::Mat;
use crate::miyashita::{MiyashitaReport, Transport};
use crate::modcat::{Module, ModuleMap};
use crate::subcat::{in_cores_n, ExtWitness, SubcatSpec, Universe};
use crate::tilting::{check_tilting, leq, AxiomReport, PerpMember, TiltingPoset, TiltingReport};
use crate::Decision;

pub const SCHEMA: u32 = 1;

fn rows(m: &Mat) -> Vec<Vec<u32>> {
    (0..m.rows()).map(|i| m.row(i).to_vec()).collect()
}

/// Matrices row-major, blocks keyed by basis label.
pub struct ModuleView<'a>(pub &'a Module);

impl Serialize for ModuleView<'_> {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        struct Blocks<'a>(&'a Module);
        impl Serialize for Blocks<'_> {
            fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
                let alg = self.0.algebra();
                let mut map = ser.serialize_map(Some(alg.arrows().len()))?;
                for &a in alg.arrows() {
                    map.serialize_entry(alg.label(a), &rows(self.0.block(a)))?;
                }
                map.end()
            }
        }
        let mut st = ser.serialize_struct("Module", 3)?;
        st.serialize_field("modulus", &self.0.modulus())?;
        st.serialize_field("dims", self.0.dims())?;
        st.serialize_field("arrows", &Blocks(self.0))?;
        st.end()
    }
}

pub struct MapView<'a>(pub &'a ModuleMap);

impl Serialize for MapView<'_> {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        let blocks: Vec<Vec<Vec<u32>>> = self.0.blocks().iter().map(rows).collect();
        let mut st = ser.serialize_struct("ModuleMap", 3)?;
        st.serialize_field("source_dims", self.0.source().dims())?;
        st.serialize_field("target_dims", self.0.target().dims())?;
        st.serialize_field("blocks", &blocks)?;
        st.end()
    }
}

#[derive(Serialize)]
pub struct Envelope<'a, T: Serialize> {
    pub schema: u32,
    pub command: &'a str,
    pub structure: String,
    pub report: &'a T,
}

pub fn envelope<'a, T: Serialize>(command: &'a str, s: &ExactStructure, report: &'a T) -> Envelope<'a, T> {
    Envelope {
        schema: SCHEMA,
        command,
        structure: s.label(),
        report,
    }
}

/// Outcome of a replay, with the first discrepancy.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Replay {
    pub checked: usize,
    pub ok: bool,
    pub mismatch: Option<String>,
}

impl Replay {
    fn new() -> Replay {
        Replay {
            checked: 0,
            ok: true,
            mismatch: None,
        }
    }

    fn check(&mut self, cond: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !cond && self.ok {
            self.ok = false;
            self.mismatch = Some(what());
        }
    }
}

fn find<'a>(t: &'a SubcatSpec, name: &str) -> Option<&'a Module> {
    t.names().iter().position(|n| n == name).map(|i| t.summand(i))
}

fn replay_ext(r: &mut Replay, w: &ExtWitness, src: &SubcatSpec, tgt: &SubcatSpec, s: &ExactStructure, cutoff: usize) -> Result<()> {
    match (find(src, &w.source), find(tgt, &w.target)) {
        (Some(x), Some(y)) => {
            let d = s.ext(x, y, w.degree, cutoff)?;
            r.check(d == w.dim && d != 0, || format!("Ext^{}({}, {}) = {d}", w.degree, w.source, w.target));
        }
        _ => r.check(false, || format!("witness names {} / {} not found", w.source, w.target)),
    }
    Ok(())
}

/// Replays the chain of left approximations cited for each projective.
fn replay_coresolutions(r: &mut Replay, rep: &TiltingReport, t: &SubcatSpec, s: &ExactStructure) -> Result<()> {
    for (name, p) in s.projectives().named() {
        let Some(w) = rep.coresolutions.iter().find(|c| c.projective == name) else {
            r.check(false, || format!("no coresolution recorded for {name}"));
            continue;
        };
        let mut cur = p.clone();
        for (k, names) in w.terms.iter().enumerate() {
            let a = left_approximation(&cur, t)?;
            let got: Vec<&str> = a.parts.iter().map(|&i| t.names()[i].as_str()).collect();
            r.check(got == *names, || format!("{name}: term {k} is {got:?}"));
            r.check(s.is_inflation(&a.map)?, || format!("{name}: term {k} not an inflation"));
            cur = a.map.cokernel().0;
        }
        if w.holds {
            r.check(cur.is_zero() || crate::homology::in_add(&cur, t)?, || format!("{name}: chain does not end in add(T)"));
        } else {
            let v = in_cores_n(t, &p, rep.n, s)?;
            r.check(!v.holds, || format!("{name}: failing chain now holds"));
        }
    }
    Ok(())
}

pub fn replay_tilting(rep: &TiltingReport, t: &SubcatSpec, s: &ExactStructure, cutoff: usize) -> Result<Replay> {
    let mut r = Replay::new();
    if let Some(w) = &rep.t1_witness {
        replay_ext(&mut r, w, t, t, s, cutoff)?;
    }
    for (name, d) in &rep.pdims {
        match find(t, name) {
            Some(m) => {
                let now = pdim(m, s, cutoff)?;
                r.check(now == *d, || format!("pdim {name} = {now}"));
            }
            None => r.check(false, || format!("summand {name} missing")),
        }
    }
    replay_coresolutions(&mut r, rep, t, s)?;
    let again = check_tilting(t, rep.n, s, cutoff)?;
    r.check(again.overall == rep.overall, || "overall verdict changed".into());
    Ok(r)
}

pub fn replay_axioms(rep: &AxiomReport, t: &SubcatSpec, s: &ExactStructure, u: &Universe, cutoff: usize) -> Result<Replay> {
    let mut r = Replay::new();
    if let Some(w) = &rep.witness {
        replay_ext(&mut r, w, t, t, s, cutoff)?;
    }
    for name in &rep.perp_members {
        let Some(i) = u.names.iter().position(|n| n == name) else {
            r.check(false, || format!("{name} not in the universe"));
            continue;
        };
        for (tn, tm) in t.names().iter().zip(t.summands()) {
            for d in crate::subcat::certified_degrees(tm, s, cutoff)?.0 {
                let e = s.ext(tm, &u.modules[i], d, cutoff)?;
                r.check(e == 0, || format!("Ext^{d}({tn}, {name}) = {e}"));
            }
        }
    }
    Ok(r)
}

pub fn replay_perp(members: &[PerpMember], t: &SubcatSpec, u: &Universe) -> Result<Replay> {
    let mut r = Replay::new();
    for pm in members {
        let Some(i) = u.names.iter().position(|n| n == &pm.name) else {
            r.check(false, || format!("{} not in the universe", pm.name));
            continue;
        };
        let mut cur = u.modules[i].clone();
        for (k, names) in pm.chain.iter().enumerate() {
            let a = right_approximation(&cur, t)?;
            let got: Vec<&str> = a.parts.iter().map(|&j| t.names()[j].as_str()).collect();
            r.check(got == *names, || format!("{}: stage {k} is {got:?}", pm.name));
            r.check(a.map.is_surjective(), || format!("{}: stage {k} not surjective", pm.name));
            cur = a.map.kernel().0;
        }
    }
    Ok(r)
}

pub fn replay_poset(poset: &TiltingPoset, s: &ExactStructure, u: &Universe, cutoff: usize) -> Result<Replay> {
    let mut r = Replay::new();
    let specs: Vec<SubcatSpec> = (0..poset.elements.len()).map(|i| poset.spec(u, i)).collect();
    for (e, t) in poset.elements.iter().zip(&specs) {
        let rep = check_tilting(t, e.n, s, cutoff)?;
        r.check(rep.overall == Decision::Yes, || format!("{:?} is not {}-tilting", e.names, e.n));
        if e.n > 0 {
            let lower = check_tilting(t, e.n - 1, s, cutoff)?;
            r.check(lower.overall != Decision::Yes, || format!("{:?} is already {}-tilting", e.names, e.n - 1));
        }
    }
    for (i, ti) in specs.iter().enumerate() {
        for (j, tj) in specs.iter().enumerate() {
            let l = leq(ti, tj, s, cutoff)?.is_yes();
            r.check(l == poset.order[i][j], || format!("order entry ({i}, {j}) changed"));
        }
    }
    Ok(r)
}

pub fn replay_miyashita(rep: &MiyashitaReport, tr: &Transport, u: &Universe, ug: &Universe) -> Result<Replay> {
    let mut r = Replay::new();
    for name in &rep.perp_members {
        match u.names.iter().position(|n| n == name) {
            Some(i) => {
                let c = tr.end.counit(&u.modules[i])?;
                r.check(c.is_iso() && c.inverse().is_some(), || format!("counit at {name}"));
            }
            None => r.check(false, || format!("{name} not in the universe")),
        }
    }
    for name in &rep.tor_perp_members {
        match ug.names.iter().position(|n| n == name) {
            Some(j) => {
                let y = &ug.modules[j];
                r.check(tr.in_tor_perp(y)?, || format!("{name} is not Tor-perpendicular"));
                let e = tr.end.unit(y)?;
                r.check(e.is_iso() && e.inverse().is_some(), || format!("unit at {name}"));
            }
            None => r.check(false, || format!("{name} not in the Γ-universe")),
        }
    }
    Ok(r)
}
