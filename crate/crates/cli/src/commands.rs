//! One function per subcommand. Reports are tab-separated lines; commands
//! that produce hypergraphs print MMP lines, each preceded by a `#: name`
//! annotation so the output can be fed back in.

use std::fmt::Write as _;
use std::fs;

use mmpks::mmp::{Hypergraph, Record};
use mmpks::parity::has_parity_proof;
use mmpks::pipeline::{self, ClassStatistics, GenerateOptions, MasterRegistry, Reduction, StripPlan};
use mmpks::solver::{self, ReduceMode, SolverError};
use mmpks::structure::{self, DedupStore};
use mmpks::vector::{self, ComponentAlphabet};
use mmpks::{validate, ParseOptions};

use crate::input::{records, single};
use crate::{Cli, CliError, Command, Global, Mode, PlanArgs, PlanKind, Status};

/// Masters this large are only stripped with an explicit per-item budget.
const LARGE_MASTER_EDGES: usize = 600;

pub fn run(cli: &Cli) -> Result<Status, CliError> {
    let g = &cli.global;
    let opts = ParseOptions { dimension: g.dim, ..ParseOptions::default() };
    match &cli.command {
        Command::Parse { input } => each(input, &opts, |r| {
            emit(r.name.as_deref(), &r.hypergraph.to_mmp());
            Ok(Status::Yes)
        }),
        Command::Validate { input } => each(input, &opts, |r| {
            let rep = validate(&r.hypergraph, g.dim);
            if rep.is_valid() {
                report("valid", r, &[]);
                Ok(Status::Yes)
            } else {
                let v: Vec<String> = rep.violations.iter().map(|v| v.to_string()).collect();
                report("invalid", r, &[v.join("; ")]);
                Ok(Status::No)
            }
        }),
        Command::KsCheck { input } => each(input, &opts, |r| match solver::is_ks_limited(&r.hypergraph, g.limits()) {
            Ok(v) if v.is_ks => {
                report("KS", r, &[]);
                Ok(Status::Yes)
            }
            Ok(v) => {
                let ones = v.witness.expect("non-KS has a witness").labels(&r.hypergraph).join(",");
                report("non-KS", r, &[format!("ones={ones}")]);
                Ok(Status::No)
            }
            Err(_) => unknown(r),
        }),
        Command::Witness { input } => each(input, &opts, |r| match solver::max_ones_witness_limited(&r.hypergraph, g.limits()) {
            Ok(w) => {
                let m = r.hypergraph.n_edges();
                let ones = w.ones.labels(&r.hypergraph).join(",");
                report(&format!("{}/{m}", w.satisfied), r, &[format!("ones={ones}")]);
                Ok(if w.satisfied == m { Status::Yes } else { Status::No })
            }
            Err(_) => unknown(r),
        }),
        Command::Critical { input } => each(input, &opts, |r| match solver::criticality_limited(&r.hypergraph, g.limits()) {
            Ok(c) if c.is_critical => {
                report("critical", r, &[]);
                Ok(Status::Yes)
            }
            Ok(c) => {
                let e: Vec<String> = c.removable_edges.iter().map(|e| e.to_string()).collect();
                report("not-critical", r, &[format!("removable={}", e.join(","))]);
                Ok(Status::No)
            }
            Err(SolverError::NotKs) => {
                report("non-KS", r, &[]);
                Ok(Status::No)
            }
            Err(SolverError::Timeout) => unknown(r),
        }),
        Command::Reduce { input } => {
            let mode = match g.mode {
                Mode::Det => ReduceMode::Deterministic,
                Mode::Rand => ReduceMode::Random { seed: g.require_seed("--mode rand")? },
            };
            each(input, &opts, |r| match solver::reduce_to_critical_limited(&r.hypergraph, mode, g.limits()) {
                Ok(c) => {
                    emit(Some(&c.type_name()), &c.to_mmp());
                    Ok(Status::Yes)
                }
                Err(SolverError::NotKs) => {
                    eprintln!("{}: not a KS set", name_of(r));
                    Ok(Status::No)
                }
                Err(SolverError::Timeout) => unknown(r),
            })
        }
        Command::Parity { input } => each(input, &opts, |r| match has_parity_proof(&r.hypergraph) {
            Some(c) => {
                let sub = r.hypergraph.select_edges(&c.edges);
                report("parity", r, &[format!("edges={}", c.len()), format!("minimum={}", c.minimum), sub.to_mmp()]);
                Ok(Status::Yes)
            }
            None => {
                report("no-parity", r, &[]);
                Ok(Status::No)
            }
        }),
        Command::Canon { input } => each(input, &opts, |r| {
            let f = structure::canonical_form(&r.hypergraph);
            emit(Some(&format!("{} {:016x}", r.hypergraph.type_name(), f.hash())), f.text());
            Ok(Status::Yes)
        }),
        Command::Dedup { input } => {
            let store = collect(input, &opts)?;
            for (h, n) in store.representatives() {
                emit(Some(&format!("{} x{n}", h.type_name())), &h.to_mmp());
            }
            eprintln!("{} in, {} out", store.total(), store.len());
            Ok(Status::Yes)
        }
        Command::Subgraph { a, b } => {
            let ra = single(a, &opts)?;
            let rb = single(b, &opts)?;
            match structure::find_embedding(&ra.hypergraph, &rb.hypergraph, g.limits()) {
                Ok(Some(e)) => {
                    let map: Vec<String> = e
                        .vertex_map
                        .iter()
                        .enumerate()
                        .map(|(v, &w)| format!("{}>{}", ra.hypergraph.label(v), rb.hypergraph.label(w)))
                        .collect();
                    println!("contained\t{}", map.join(","));
                    Ok(Status::Yes)
                }
                Ok(None) => {
                    println!("not-contained");
                    Ok(Status::No)
                }
                Err(_) => {
                    println!("unknown");
                    Ok(Status::Unknown)
                }
            }
        }
        Command::Loops { input } => each(input, &opts, |r| {
            let l = structure::maximal_loop_limited(&r.hypergraph, g.limits(), None);
            let h = &r.hypergraph;
            let edges: Vec<String> = l.edges.iter().map(|e| e.to_string()).collect();
            let links: Vec<String> = l.vertices.iter().map(|&v| h.label(v).to_string()).collect();
            let tag = if l.exact { "loop" } else { "loop-lower-bound" };
            report(tag, r, &[format!("length={}", l.len()), format!("edges={}", edges.join(",")), format!("links={}", links.join(","))]);
            Ok(if l.exact { Status::Yes } else { Status::Unknown })
        }),
        Command::Strip { input, plan } => {
            let plan = strip_plan(plan, g, false)?;
            each(input, &opts, |r| {
                for s in pipeline::strip(&r.hypergraph, &plan)? {
                    emit(Some(&s.type_name()), &s.to_mmp());
                }
                Ok(Status::Yes)
            })
        }
        Command::Generate { input, master, plan, checkpoint, out, stats } => {
            let h = match (input, master) {
                (_, Some(name)) => MasterRegistry::default().load(name)?.hypergraph,
                (Some(i), None) => single(i, &opts)?.hypergraph,
                (None, None) => return Err(CliError::Usage("generate needs an input or --master".into())),
            };
            if h.n_edges() >= LARGE_MASTER_EDGES && g.budget.is_none() {
                return Err(CliError::Usage(format!(
                    "master has {} edges; pass --budget to bound each item",
                    h.n_edges()
                )));
            }
            let mut o = GenerateOptions::new(strip_plan(plan, g, true)?);
            o.reduction = match g.mode {
                Mode::Det => Reduction::Deterministic,
                Mode::Rand => Reduction::Seeded(g.require_seed("--mode rand")?),
            };
            o.jobs = g.jobs;
            o.item_budget = g.duration();
            o.checkpoint = checkpoint.clone();
            let res = pipeline::generate_class(&h, &o)?;
            let tsv = res.stats.to_tsv();
            print!("{tsv}");
            if let Some(p) = stats {
                fs::write(p, &tsv).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
            }
            if let Some(p) = out {
                let text = pipeline::write_criticals(&res.criticals, h.dimension());
                fs::write(p, text).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?;
            }
            let classes = res.ks_classes.map_or(String::new(), |c| format!(", {c} KS classes"));
            eprintln!("{} items, {} KS{classes}, {} criticals, {} undecided", res.items, res.ks_items, res.criticals.len(), res.failures.len());
            for f in &res.failures {
                eprintln!("item {} undecided: {}", f.item, f.error);
            }
            Ok(if res.failures.is_empty() { Status::Yes } else { Status::Unknown })
        }
        Command::VectorsFind { input } => {
            let alphabet = ComponentAlphabet::resolve(&g.alphabet)?;
            let seed = match g.mode {
                Mode::Det => g.seed,
                Mode::Rand => Some(g.require_seed("--mode rand")?),
            };
            each(input, &opts, |r| {
                let h = &r.hypergraph;
                let dim = g.dim.or(h.uniform_edge_size()).ok_or(vector::CoordError::NonUniform)?;
                match vector::find_coordinatization(h, &alphabet, dim, seed, g.limits()) {
                    Ok(o) => match o.assignment {
                        Some(va) => {
                            println!("# {} over {}: {} nodes", name_of(r), alphabet.name, o.nodes);
                            print!("{}", vector::format_coordinates(&va, Some(h)));
                            Ok(Status::Yes)
                        }
                        None => {
                            println!("# {} over {}: none, {} nodes", name_of(r), alphabet.name, o.nodes);
                            Ok(Status::No)
                        }
                    },
                    Err(vector::CoordError::Budget { nodes }) => {
                        println!("# {} over {}: budget exhausted after {nodes} nodes", name_of(r), alphabet.name);
                        Ok(Status::Unknown)
                    }
                    Err(e) => Err(e.into()),
                }
            })
        }
        Command::VectorsVerify { input, coordinates } => {
            let r = single(input, &opts)?;
            let text = fs::read_to_string(coordinates).map_err(|e| CliError::Io(format!("{}: {e}", coordinates.display())))?;
            let va = vector::parse_coordinates(&text)?;
            let rep = vector::verify_coordinatization(&r.hypergraph, &va);
            if rep.is_valid() {
                report("valid", &r, &[]);
                Ok(Status::Yes)
            } else {
                report("invalid", &r, &[format!("{rep:?}")]);
                Ok(Status::No)
            }
        }
        Command::Stats { input } => {
            let store = collect(input, &opts)?;
            print!("{}", ClassStatistics::from_store(&store).to_tsv());
            Ok(Status::Yes)
        }
        Command::ExportDot { input, loops } => {
            let r = single(input, &opts)?;
            let highlight = match loops {
                Some(p) => loop_edges(&fs::read_to_string(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?)?,
                None => Vec::new(),
            };
            print!("{}", dot(&r, &highlight));
            Ok(Status::Yes)
        }
    }
}

fn each(input: &str, opts: &ParseOptions, mut f: impl FnMut(&Record) -> Result<Status, CliError>) -> Result<Status, CliError> {
    let mut worst = Status::Yes;
    for rec in records(input, opts)? {
        worst = worst.max(f(&rec?)?);
    }
    Ok(worst)
}

fn collect(input: &str, opts: &ParseOptions) -> Result<DedupStore, CliError> {
    let mut store = DedupStore::new();
    for rec in records(input, opts)? {
        store.insert(rec?.hypergraph);
    }
    Ok(store)
}

fn name_of(r: &Record) -> String {
    r.name.clone().unwrap_or_else(|| format!("line {}", r.line))
}

fn report(verdict: &str, r: &Record, extra: &[String]) {
    let mut line = format!("{verdict}\t{}\t{}", r.hypergraph.type_name(), name_of(r));
    for x in extra {
        line.push('\t');
        line.push_str(x);
    }
    println!("{line}");
}

fn unknown(r: &Record) -> Result<Status, CliError> {
    report("unknown", r, &[]);
    Ok(Status::Unknown)
}

fn emit(name: Option<&str>, mmp: &str) {
    if let Some(n) = name {
        println!("#: {n}");
    }
    println!("{mmp}");
}

fn strip_plan(p: &PlanArgs, g: &Global, allow_closure: bool) -> Result<StripPlan, CliError> {
    let kind = p.plan.unwrap_or(if p.samples.is_some() { PlanKind::Random } else { PlanKind::Exhaustive });
    let range = || -> Result<(usize, usize), CliError> {
        match (p.k, p.k_min, p.k_max) {
            (Some(k), None, None) => Ok((k, k)),
            (None, Some(a), Some(b)) => Ok((a, b)),
            _ => Err(CliError::Usage("give --k, or both --k-min and --k-max".into())),
        }
    };
    match kind {
        PlanKind::Closure if allow_closure => Ok(StripPlan::Closure),
        PlanKind::Closure => Err(CliError::Usage("the closure plan only applies to generate".into())),
        PlanKind::Exhaustive => {
            let (k_min, k_max) = range()?;
            Ok(StripPlan::Exhaustive { k_min, k_max })
        }
        PlanKind::Random => {
            let k = p.k.ok_or_else(|| CliError::Usage("a random plan needs --k".into()))?;
            let samples = p.samples.ok_or_else(|| CliError::Usage("a random plan needs --samples".into()))?;
            Ok(StripPlan::Random { k, samples, seed: g.require_seed("a random plan")? })
        }
    }
}

/// Edge indices from the first `loops` report line.
fn loop_edges(text: &str) -> Result<Vec<usize>, CliError> {
    let line = text.lines().find(|l| l.starts_with("loop")).ok_or_else(|| CliError::Input("no loop report found".into()))?;
    let field = line
        .split('\t')
        .find_map(|f| f.strip_prefix("edges="))
        .ok_or_else(|| CliError::Input("loop report has no edges field".into()))?;
    field
        .split(',')
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| CliError::Input(format!("bad edge index {s:?}"))))
        .collect()
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Bipartite incidence graph: vertices as circles, edges as boxes. Loop
/// edges and the vertices linking them are drawn in red.
fn dot(r: &Record, highlight: &[usize]) -> String {
    let h: &Hypergraph = &r.hypergraph;
    let mut link = vec![false; h.n_vertices()];
    let k = highlight.len();
    for i in 0..k {
        let (a, b) = (highlight[i], highlight[(i + 1) % k]);
        if a < h.n_edges() && b < h.n_edges() {
            for &v in h.edge(a) {
                if h.edge(b).contains(&v) {
                    link[v] = true;
                }
            }
        }
    }
    let mut out = String::new();
    let _ = writeln!(out, "graph {} {{", quote(&name_of(r)));
    for v in 0..h.n_vertices() {
        let color = if link[v] { ", color=red" } else { "" };
        let _ = writeln!(out, "  {} [shape=circle{color}];", quote(&format!("v{}", h.label(v))));
    }
    for (i, e) in h.edges().iter().enumerate() {
        let hot = highlight.contains(&i);
        let color = if hot { ", color=red" } else { "" };
        let names: String = e.iter().map(|&v| h.label(v).to_string()).collect();
        let _ = writeln!(out, "  {} [shape=box, label={}{color}];", quote(&format!("e{i}")), quote(&names));
        for &v in e {
            let edge_color = if hot && link[v] { " [color=red]" } else { "" };
            let _ = writeln!(out, "  {} -- {}{edge_color};", quote(&format!("e{i}")), quote(&format!("v{}", h.label(v))));
        }
    }
    out.push_str("}\n");
    out
}
