use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use tiltbench::exactstruct::ExactStructure;
use tiltbench::homology::{gldim, pdim, HomDim, LengthFlag};
use tiltbench::io::{parse_document, Document};
use tiltbench::miyashita::{gldim_transfer_check, two_resolving_check, verify_miyashita, GldimReport, MiyashitaReport, Transport};
use tiltbench::modcat::{indecomposable_injectives, indecomposable_projectives};
use tiltbench::report::{
    envelope, replay_axioms, replay_miyashita, replay_perp, replay_poset, replay_tilting, ModuleView, Replay,
};
use tiltbench::tilting::{
    check_tilting, check_tilting_t1t2, endo_special_one_tilt, enumerate_tilting, mutate, perp_category,
    special_tilting, tilting_level, MutationOutcome,
};
use tiltbench::{Decision, Error, SubcatSpec, Universe};

#[derive(Parser)]
#[command(name = "tiltbench", version, about = "Tilting theory workbench for quiver algebras over prime fields")]
struct Cli {
    /// Algebra and module definitions.
    file: std::path::PathBuf,
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Exact structure on the module category.
    #[arg(long, value_enum, default_value_t = StructureArg::Abelian, global = true)]
    structure: StructureArg,
    /// Comma-separated generators of a relative structure.
    #[arg(long, global = true, default_value = "")]
    generators: String,
    /// Resolution cutoff.
    #[arg(long, global = true, default_value_t = tiltbench::DEFAULT_CUTOFF)]
    cutoff: usize,
    /// Budget for exhaustive scans, in candidate tuples.
    #[arg(long, global = true, default_value_t = tiltbench::DEFAULT_BUDGET)]
    budget: u64,
    /// Dimension bound of the enumerated universe, e.g. `1,1,1`.
    #[arg(long, global = true)]
    bound: Option<String>,
    /// Worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Recompute every witness in the report before printing it.
    #[arg(long, global = true)]
    verify_witness: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum StructureArg {
    Abelian,
    Relative,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether T is n-tilting.
    CheckTilting {
        #[arg(long = "T")]
        t: String,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// Members of the perpendicular category of T.
    Perp {
        #[arg(long = "T")]
        t: String,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// All basic tilting subcategories and their order.
    Enumerate {
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        #[arg(long)]
        all_sizes: bool,
    },
    /// Mutate T at the complement of M.
    Mutate {
        #[arg(long = "T")]
        t: String,
        #[arg(long = "M")]
        m: String,
    },
    /// Special tilting subcategory built from M.
    SpecialTilt {
        #[arg(long = "M")]
        m: String,
        #[arg(long, default_value_t = 1)]
        n: usize,
    },
    /// Special 1-tilt over the endomorphism algebra of M ⊕ Q.
    Endo {
        #[arg(long = "M")]
        m: String,
        #[arg(long = "Q")]
        q: String,
        /// Dimension bound of the universe over End(E); defaults to 2 per vertex.
        #[arg(long)]
        end_bound: Option<String>,
    },
    /// Transport along a tilting subcategory and global dimension bounds.
    MiyashitaVerify {
        #[arg(long = "T")]
        t: String,
        #[arg(long, default_value_t = 4)]
        n_max: usize,
    },
    /// Global dimension of the structure.
    Gldim,
    /// Projectives, projective dimensions and structure checks.
    StructureCheck,
    /// Minimal (relative) projective resolution of a module.
    Resolve {
        #[arg(long = "M")]
        m: String,
    },
}

struct Ctx {
    doc: Document,
    s: ExactStructure,
    common: Common,
}

impl Ctx {
    fn spec(&self, name: &str, list: &str) -> tiltbench::Result<SubcatSpec> {
        SubcatSpec::add_of(name, &self.doc.named_list(list)?)
    }

    fn bound(&self) -> tiltbench::Result<Vec<usize>> {
        let alg = &self.doc.algebra;
        match &self.common.bound {
            Some(b) => {
                let v = parse_bound(b)?;
                if v.len() != alg.vertex_count() {
                    return Err(Error::Precondition(format!("bound needs {} entries", alg.vertex_count())));
                }
                Ok(v)
            }
            None => {
                // large enough for every indecomposable projective and injective
                let mut b = vec![1; alg.vertex_count()];
                for m in indecomposable_projectives(alg).iter().chain(&indecomposable_injectives(alg)) {
                    for (x, &d) in b.iter_mut().zip(m.dims()) {
                        *x = (*x).max(d);
                    }
                }
                Ok(b)
            }
        }
    }

    fn universe(&self) -> tiltbench::Result<Universe> {
        Universe::enumerate(self.s.clone(), &self.bound()?, self.common.budget)
    }
}

fn parse_bound(b: &str) -> tiltbench::Result<Vec<usize>> {
    b.split(',')
        .map(|x| x.trim().parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| Error::Precondition(format!("bad bound {b:?}")))
}

struct Outcome {
    json: serde_json::Value,
    exit: u8,
    summary: String,
    replay: Option<Replay>,
}

fn exit_of(d: Decision) -> u8 {
    match d {
        Decision::Yes => 0,
        Decision::No => 1,
        Decision::Undecided => 2,
    }
}

fn to_json<T: Serialize>(ctx: &Ctx, command: &str, body: &T) -> serde_json::Value {
    serde_json::to_value(envelope(command, &ctx.s, body)).expect("reports serialize")
}

fn replay_if(ctx: &Ctx, f: impl FnOnce() -> tiltbench::Result<Replay>) -> tiltbench::Result<Option<Replay>> {
    if ctx.common.verify_witness {
        f().map(Some)
    } else {
        Ok(None)
    }
}

#[derive(Serialize)]
struct SpecView {
    names: Vec<String>,
    modules: Vec<serde_json::Value>,
}

fn spec_view(t: &SubcatSpec) -> SpecView {
    SpecView {
        names: t.names().to_vec(),
        modules: t
            .summands()
            .iter()
            .map(|m| serde_json::to_value(ModuleView(m)).expect("modules serialize"))
            .collect(),
    }
}

fn run(ctx: &Ctx, command: &Command) -> tiltbench::Result<Outcome> {
    let s = &ctx.s;
    let cutoff = ctx.common.cutoff;
    match command {
        Command::CheckTilting { t, n } => {
            let spec = ctx.spec("T", t)?;
            let rep = check_tilting(&spec, *n, s, cutoff)?;
            let replay = replay_if(ctx, || replay_tilting(&rep, &spec, s, cutoff))?;
            let summary = match &rep.t1_witness {
                Some(w) => format!("overall {:?}; Ext^{}({}, {}) = {}", rep.overall, w.degree, w.source, w.target, w.dim),
                None => format!("overall {:?}", rep.overall),
            };
            Ok(Outcome {
                json: to_json(ctx, "check-tilting", &rep),
                exit: exit_of(rep.overall),
                summary,
                replay,
            })
        }
        Command::Perp { t, n } => {
            let spec = ctx.spec("T", t)?;
            let u = ctx.universe()?;
            let members = perp_category(&spec, *n, s, &u, cutoff)?;
            let axioms = check_tilting_t1t2(&spec, *n, s, &u, cutoff)?;
            let replay = replay_if(ctx, || {
                let mut a = replay_perp(&members, &spec, &u)?;
                let b = replay_axioms(&axioms, &spec, s, &u, cutoff)?;
                a.checked += b.checked;
                if a.ok && !b.ok {
                    a = Replay { checked: a.checked, ..b };
                }
                Ok(a)
            })?;
            #[derive(Serialize)]
            struct Body<'a> {
                bound: Vec<usize>,
                universe: &'a [String],
                members: &'a [tiltbench::tilting::PerpMember],
                axioms: &'a tiltbench::tilting::AxiomReport,
            }
            let body = Body {
                bound: u.bound.clone(),
                universe: &u.names,
                members: &members,
                axioms: &axioms,
            };
            Ok(Outcome {
                json: to_json(ctx, "perp", &body),
                exit: 0,
                summary: format!("{} of {} members are perpendicular", members.len(), u.len()),
                replay,
            })
        }
        Command::Enumerate { n_max, all_sizes } => {
            let u = ctx.universe()?;
            let poset = enumerate_tilting(s, &u, *n_max, *all_sizes, cutoff)?;
            let replay = replay_if(ctx, || replay_poset(&poset, s, &u, cutoff))?;
            #[derive(Serialize)]
            struct Body<'a> {
                bound: Vec<usize>,
                universe: &'a [String],
                poset: &'a tiltbench::tilting::TiltingPoset,
            }
            let exit = if poset.undecided.is_empty() { 0 } else { 2 };
            Ok(Outcome {
                json: to_json(ctx, "enumerate", &Body { bound: u.bound.clone(), universe: &u.names, poset: &poset }),
                exit,
                summary: format!("{} tilting subcategories among {} candidates", poset.elements.len(), poset.candidates),
                replay,
            })
        }
        Command::Mutate { t, m } => {
            let spec = ctx.spec("T", t)?;
            let keep: Vec<String> = ctx.doc.named_list(m)?.into_iter().map(|(n, _)| n).collect();
            let idx: Vec<usize> = keep
                .iter()
                .map(|n| {
                    spec.names()
                        .iter()
                        .position(|x| x == n)
                        .ok_or_else(|| Error::UnknownName(format!("{n} is not a summand of T")))
                })
                .collect::<tiltbench::Result<_>>()?;
            let out = mutate(&spec, &idx, s, cutoff)?;
            let replay = replay_if(ctx, || {
                let again = mutate(&spec, &idx, s, cutoff)?;
                let same = match (&out, &again) {
                    (MutationOutcome::Mutated { spec: a, .. }, MutationOutcome::Mutated { spec: b, .. }) => a.same_as(b)?,
                    (MutationOutcome::NotMutable { reason: a }, MutationOutcome::NotMutable { reason: b }) => a == b,
                    _ => false,
                };
                Ok(Replay {
                    checked: 1,
                    ok: same,
                    mismatch: (!same).then(|| "mutation outcome changed".to_string()),
                })
            })?;
            #[derive(Serialize)]
            #[serde(tag = "outcome", rename_all = "snake_case")]
            enum Body {
                Mutated { result: SpecView, leq: Decision },
                NotMutable { reason: String },
            }
            let (body, exit, summary) = match out {
                MutationOutcome::Mutated { spec, leq } => {
                    let summary = format!("mutated to {}", spec.names().join(","));
                    (Body::Mutated { result: spec_view(&spec), leq }, 0, summary)
                }
                MutationOutcome::NotMutable { reason } => {
                    let summary = format!("not mutable: {reason}");
                    (Body::NotMutable { reason }, 1, summary)
                }
            };
            Ok(Outcome {
                json: to_json(ctx, "mutate", &body),
                exit,
                summary,
                replay,
            })
        }
        Command::SpecialTilt { m, n } => {
            let spec = ctx.spec("M", m)?;
            let r = special_tilting(&spec, *n, s, cutoff)?;
            let replay = replay_if(ctx, || replay_tilting(&r.report, &r.spec, s, cutoff))?;
            #[derive(Serialize)]
            struct Body<'a> {
                result: SpecView,
                report: &'a tiltbench::tilting::TiltingReport,
            }
            Ok(Outcome {
                json: to_json(ctx, "special-tilt", &Body { result: spec_view(&r.spec), report: &r.report }),
                exit: exit_of(r.report.overall),
                summary: format!("special tilting subcategory {}", r.spec.names().join(",")),
                replay,
            })
        }
        Command::Endo { m, q, end_bound } => {
            let mm = ctx.doc.module(m)?;
            let qm = ctx.doc.module(q)?;
            let bound = end_bound.as_deref().map(parse_bound).transpose()?;
            let r = endo_special_one_tilt(&mm, &qm, s, bound.as_deref(), ctx.common.budget, cutoff)?;
            let bs = ExactStructure::abelian(r.end.algebra.clone())?;
            let replay = replay_if(ctx, || replay_tilting(&r.report, &r.t, &bs, cutoff))?;
            #[derive(Serialize)]
            struct Body<'a> {
                algebra_dim: usize,
                vertices: &'a [String],
                basis: &'a [String],
                p: SpecView,
                t: SpecView,
                report: &'a tiltbench::tilting::TiltingReport,
                universe_size: usize,
                gen_t: &'a [String],
                gen_p: &'a [String],
                gen_match: bool,
            }
            let body = Body {
                algebra_dim: r.end.dim(),
                vertices: r.end.algebra.vertex_labels(),
                basis: r.end.algebra.labels(),
                p: spec_view(&r.p),
                t: spec_view(&r.t),
                report: &r.report,
                universe_size: r.universe_size,
                gen_t: &r.gen_t,
                gen_p: &r.gen_p,
                gen_match: r.gen_match,
            };
            let exit = if r.gen_match { exit_of(r.report.overall) } else { 1 };
            Ok(Outcome {
                json: to_json(ctx, "endo", &body),
                exit,
                summary: format!("End(E) of dimension {}, tilting {:?}", r.end.dim(), r.report.overall),
                replay,
            })
        }
        Command::MiyashitaVerify { t, n_max } => {
            let spec = ctx.spec("T", t)?;
            let (d, n) = tilting_level(&spec, s, *n_max, cutoff)?;
            if d != Decision::Yes {
                return Err(Error::Precondition(format!("T is not n-tilting for n <= {n_max}")));
            }
            let u = ctx.universe()?;
            let tr = Transport::new(&spec, s, n, cutoff)?;
            let ug = tr.gamma_universe(&vec![1; spec.len()], ctx.common.budget)?;
            let rep = verify_miyashita(&tr, &u, &ug)?;
            let g = gldim_transfer_check(&tr, &u, &ug, rep.resolving_depth)?;
            let replay = replay_if(ctx, || replay_miyashita(&rep, &tr, &u, &ug))?;
            #[derive(Serialize)]
            struct Body<'a> {
                transport: &'a MiyashitaReport,
                gldim: &'a GldimReport,
            }
            let exit = if rep.overall { exit_of(g.holds) } else { 1 };
            Ok(Outcome {
                json: to_json(ctx, "miyashita-verify", &Body { transport: &rep, gldim: &g }),
                exit,
                summary: format!("transport {}, gldim bounds {:?}", if rep.overall { "verified" } else { "failed" }, g.holds),
                replay,
            })
        }
        Command::Gldim => {
            let u = ctx.universe()?;
            let d = gldim(s, Some(&u.modules), cutoff)?;
            #[derive(Serialize)]
            struct Body {
                gldim: HomDim,
            }
            let exit = if d == HomDim::Undecided { 2 } else { 0 };
            Ok(Outcome {
                json: to_json(ctx, "gldim", &Body { gldim: d }),
                exit,
                summary: format!("gldim {d}"),
                replay: None,
            })
        }
        Command::StructureCheck => {
            let u = ctx.universe()?;
            let pd: Vec<(String, HomDim)> = u
                .names
                .iter()
                .zip(&u.modules)
                .map(|(n, m)| Ok((n.clone(), pdim(m, s, cutoff)?)))
                .collect::<tiltbench::Result<_>>()?;
            let relative_projectives: Vec<String> = if s.is_abelian() {
                Vec::new()
            } else {
                s.relative_projectives(&u.modules)?.into_iter().map(|i| u.names[i].clone()).collect()
            };
            let two = if s.is_abelian() {
                None
            } else {
                Some(two_resolving_check(s, &vec![1; s.projectives().len()], ctx.common.budget, cutoff)?)
            };
            #[derive(Serialize)]
            struct Body {
                projectives: Vec<String>,
                universe: Vec<String>,
                relative_projectives: Vec<String>,
                pdims: Vec<(String, HomDim)>,
                two_resolving: Option<tiltbench::miyashita::TwoResolvingReport>,
            }
            let exit = match &two {
                Some(t) if !t.holds => 1,
                _ => 0,
            };
            let body = Body {
                projectives: s.projectives().names().to_vec(),
                universe: u.names.clone(),
                relative_projectives,
                pdims: pd,
                two_resolving: two,
            };
            Ok(Outcome {
                json: to_json(ctx, "structure-check", &body),
                exit,
                summary: format!("{} projectives, {} universe members", s.projectives().len(), u.len()),
                replay: None,
            })
        }
        Command::Resolve { m } => {
            let x = ctx.doc.module(m)?;
            let res = s.resolution(&x, cutoff)?;
            let proj = s.projectives();
            #[derive(Serialize)]
            struct Body {
                flag: LengthFlag,
                terms: Vec<Vec<String>>,
                syzygy_dims: Vec<Vec<usize>>,
            }
            let terms = res
                .multiplicities
                .iter()
                .map(|mult| {
                    mult.iter()
                        .enumerate()
                        .flat_map(|(i, &c)| std::iter::repeat_n(proj.names()[i].clone(), c))
                        .collect()
                })
                .collect();
            let body = Body {
                flag: res.flag,
                terms,
                syzygy_dims: res.syzygies.iter().map(|o| o.dims().to_vec()).collect(),
            };
            let exit = if matches!(res.flag, LengthFlag::Truncated { .. }) { 2 } else { 0 };
            Ok(Outcome {
                json: to_json(ctx, "resolve", &body),
                exit,
                summary: format!("{:?}", res.flag),
                replay: None,
            })
        }
    }
}

fn error_exit(e: &Error) -> u8 {
    match e {
        Error::Precondition(_) => 1,
        _ => 2,
    }
}

fn emit(v: &serde_json::Value) {
    use std::io::Write;
    let text = serde_json::to_string_pretty(v).expect("json");
    // a closed pipe is not an error for a report printer
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(j) = cli.common.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j.max(1)).build_global() {
            eprintln!("warning: {e}");
        }
    }
    let text = match std::fs::read_to_string(&cli.file) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {}: {e}", cli.file.display());
            return ExitCode::from(2);
        }
    };
    let setup = (|| -> tiltbench::Result<Ctx> {
        let doc = parse_document(&text)?;
        let s = match cli.common.structure {
            StructureArg::Abelian => ExactStructure::abelian(doc.algebra.clone())?,
            StructureArg::Relative => ExactStructure::relative(doc.algebra.clone(), doc.named_list(&cli.common.generators)?)?,
        };
        Ok(Ctx {
            doc,
            s,
            common: cli.common,
        })
    })();
    let ctx = match setup {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match run(&ctx, &cli.command) {
        Ok(mut out) => {
            if let Some(r) = &out.replay {
                if let serde_json::Value::Object(map) = &mut out.json {
                    map.insert("witness_replay".into(), serde_json::to_value(r).expect("replay serializes"));
                }
                if !r.ok {
                    eprintln!("witness replay failed: {}", r.mismatch.as_deref().unwrap_or("?"));
                    out.exit = 2;
                }
            }
            emit(&out.json);
            eprintln!("{}", out.summary);
            ExitCode::from(out.exit)
        }
        Err(e) => {
            let body = serde_json::json!({ "schema": tiltbench::report::SCHEMA, "error": e.to_string() });
            emit(&body);
            eprintln!("error: {e}");
            ExitCode::from(error_exit(&e))
        }
    }
}
