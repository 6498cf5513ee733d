//! The `flowknot` command line. Each `cmd_*` builds a [`Report`]; [`run`]
//! parses arguments, prints the report and returns the exit code.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::complexes::{HomologyGroup, HomologyTable};
use crate::flowcat::{
    cjs_realize, coherence_failures, hypercube_category, khovanov_category, ladybug_pairings, FlowCategory,
};
use crate::grid::{
    enumerate_states, parse_grid, sign_violations, solve_sign_assignment, tilde_differential, Coefficients,
    GridDiagram, SignScope, MAX_SIGN_GRID,
};
use crate::gridflow::{
    cd_homology, decompositions, detect_bubble_ends, enumerate_positive_domains, moduli_shape, obstruction_complex,
    pair_strips, ModuliKind, MAX_FLOW_MU, MAX_OBSTRUCTION_GRID,
};
use crate::khovanov::{detect_ladybugs, khovanov_complex, parse_pd, LadybugPolicy, LinkDiagram, Vertex};
use crate::{Error, Result};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Parser)]
#[command(name = "flowknot", version, about = "Flow categories for Khovanov and grid homology")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Coefficient ring for homology.
    #[arg(long, global = true, value_enum, default_value_t = Coefficients::Gf2)]
    pub coeff: Coefficients,

    /// Ladybug matching convention.
    #[arg(long, global = true, value_enum, default_value_t = LadybugPolicy::Right)]
    pub policy: LadybugPolicy,

    /// Largest Maslov index of positive domains.
    #[arg(long = "mu-max", global = true, default_value_t = 3, value_parser = clap::value_parser!(i32).range(1..=4))]
    pub mu_max: i32,

    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Khovanov complex and homology of a PD code.
    Khovanov { pd: PathBuf },
    /// Moduli spaces of the Khovanov flow category, or of the cube category.
    Flowcat {
        #[arg(required_unless_present = "hypercube")]
        pd: Option<PathBuf>,
        /// Use the cube flow category of this dimension.
        #[arg(long, conflicts_with = "pd")]
        hypercube: Option<usize>,
    },
    /// Tilde grid homology.
    Grid {
        grid: PathBuf,
        /// Also compute the obstruction complex homology.
        #[arg(long)]
        cd: bool,
    },
    /// Positive domains and their moduli spaces.
    Gridflow {
        #[command(subcommand)]
        action: GridflowAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum GridflowAction {
    Report { grid: PathBuf },
}

#[derive(Clone, Copy, Debug)]
pub struct Config {
    pub coefficients: Coefficients,
    pub policy: LadybugPolicy,
    pub mu_max: i32,
}

impl Default for Config {
    fn default() -> Self {
        Config { coefficients: Coefficients::Gf2, policy: LadybugPolicy::Right, mu_max: 3 }
    }
}

/// A command's result: `ok` is false when an internal check failed.
#[derive(Clone, Debug)]
pub struct Report {
    pub ok: bool,
    pub json: Value,
    pub text: String,
}

impl Report {
    fn new(command: &str, ok: bool, mut body: Value, text: String) -> Self {
        body["schema"] = json!(SCHEMA);
        body["command"] = json!(command);
        body["ok"] = json!(ok);
        Report { ok, json: body, text }
    }

    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            serde_json::to_string_pretty(&self.json).expect("json values serialize") + "\n"
        } else {
            self.text.clone()
        }
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn homology_json(h: &HomologyTable) -> Value {
    Value::Array(h.iter().map(|(k, g)| json!({"grading": k, "betti": g.betti, "torsion": g.torsion})).collect())
}

fn bigraded_json(rows: &[(i32, i32, HomologyGroup)], names: [&str; 2]) -> Value {
    Value::Array(
        rows.iter()
            .map(|(a, b, g)| json!({names[0]: a, names[1]: b, "betti": g.betti, "torsion": g.torsion}))
            .collect(),
    )
}

fn homology_lines(out: &mut String, h: &HomologyTable) {
    for (k, g) in h.iter() {
        let _ = writeln!(out, "  H_{k} = {g}");
    }
}

fn homology_with(c: &crate::complexes::GradedChainComplex, coeff: Coefficients) -> Result<HomologyTable> {
    match coeff {
        Coefficients::Gf2 => c.homology_gf2(),
        Coefficients::Int => c.homology(),
    }
}

pub fn cmd_khovanov(path: &Path, cfg: &Config) -> Result<Report> {
    khovanov_report(&parse_pd(&read(path)?)?, cfg)
}

pub fn khovanov_report(d: &LinkDiagram, cfg: &Config) -> Result<Report> {
    let kc = khovanov_complex(d)?;
    let d_squared = kc.complex.verify_d_squared();
    let homology = homology_with(&kc.complex, cfg.coefficients)?.nonzero();
    let bigraded = match cfg.coefficients {
        Coefficients::Int => kc.bigraded_homology()?,
        Coefficients::Gf2 => Vec::new(),
    };
    let mut per_vertex: BTreeMap<String, usize> = BTreeMap::new();
    for g in &kc.generators {
        *per_vertex.entry(g.vertex.to_string()).or_default() += 1;
    }
    let ladybugs = detect_ladybugs(d);

    let mut text = String::new();
    let _ = writeln!(text, "crossings: {}  free unknots: {}", d.n(), d.unknots());
    let _ = writeln!(text, "generators: {}", kc.generators.len());
    for v in Vertex::all(d.n()) {
        let _ = writeln!(text, "  {v}: {}", per_vertex.get(&v.to_string()).copied().unwrap_or(0));
    }
    let _ = writeln!(text, "d^2 = 0: {d_squared}");
    let _ = writeln!(text, "homology ({:?}):", cfg.coefficients);
    homology_lines(&mut text, &homology);
    for (h, q, g) in &bigraded {
        let _ = writeln!(text, "  Kh^{{{h},{q}}} = {g}");
    }
    let _ = writeln!(text, "ladybug faces: {}", ladybugs.len());
    for f in &ladybugs {
        let _ = writeln!(text, "  crossings {} {} top {}", f.i + 1, f.j + 1, f.top);
    }

    let body = json!({
        "crossings": d.n(),
        "unknots": d.unknots(),
        "coefficients": cfg.coefficients,
        "generators": kc.generators.len(),
        "generators_per_vertex": per_vertex,
        "d_squared": d_squared,
        "homology": homology_json(&homology),
        "bigraded": bigraded_json(&bigraded, ["h", "q"]),
        "ladybugs": ladybugs.iter().map(|f| json!({"crossings": [f.i + 1, f.j + 1], "top": f.top.to_string()})).collect::<Vec<_>>(),
    });
    Ok(Report::new("khovanov", d_squared, body, text))
}

/// Boundary cycle lengths of the polygons between each pair of objects with
/// fully broken flowlines.
fn polygon_census(cat: &FlowCategory) -> Vec<Value> {
    cat.fully_broken_flowlines()
        .iter()
        .map(|(&(y, z), lines)| {
            let mut cycles: Vec<usize> = cat.polygons_between(y, z).map(|p| p.cycle.len()).collect();
            cycles.sort_unstable();
            json!({"from": cat.objects[y].id, "to": cat.objects[z].id, "flowlines": lines.len(), "cycles": cycles})
        })
        .collect()
}

pub fn cmd_flowcat(pd: Option<&Path>, hypercube: Option<usize>, cfg: &Config) -> Result<Report> {
    match (pd, hypercube) {
        (_, Some(n)) => flowcat_report(None, Some(n), &format!("hypercube {n}"), cfg),
        (Some(path), None) => flowcat_report(Some(&parse_pd(&read(path)?)?), None, &path.display().to_string(), cfg),
        (None, None) => Err(Error::InvalidComplex("flowcat needs a PD file or --hypercube".into())),
    }
}

/// Flow category report for a diagram, or for the cube of dimension
/// `hypercube` when that is given.
pub fn flowcat_report(d: Option<&LinkDiagram>, hypercube: Option<usize>, source: &str, cfg: &Config) -> Result<Report> {
    let (cat, pairings) = match (d, hypercube) {
        (_, Some(n)) => (hypercube_category(n)?, None),
        (Some(d), None) => {
            let kc = khovanov_complex(d)?;
            let cat = khovanov_category(&kc, cfg.policy)?;
            let pairings = ladybug_pairings(&kc, &cat)?;
            (cat, Some(pairings))
        }
        (None, None) => return Err(Error::InvalidComplex("flowcat needs a diagram or a cube dimension".into())),
    };
    let dim1 = coherence_failures(&cat, 1);
    let dim2 = coherence_failures(&cat, 2);
    let census = polygon_census(&cat);

    let chain = cat.chain_complex()?;
    let shift = chain.grading_range().map_or(0, |(lo, _)| (2 - lo).max(0));
    let cw = cjs_realize(&cat, shift)?;
    let cells = homology_with(&cw.cellular_complex()?, cfg.coefficients)?.nonzero();
    let expected = homology_with(&chain, cfg.coefficients)?.nonzero().shifted(shift);
    let realization_ok = cells == expected;
    let ok = dim1.is_empty() && dim2.is_empty() && realization_ok;

    let mut text = String::new();
    let _ = writeln!(text, "flow category of {source}");
    let _ = writeln!(
        text,
        "objects {}  points {}  intervals {}  polygons {}",
        cat.objects.len(),
        cat.points.len(),
        cat.intervals.len(),
        cat.polygons.len()
    );
    let _ = writeln!(text, "coherence dim 1: {}", if dim1.is_empty() { "ok" } else { "FAILED" });
    let _ = writeln!(text, "coherence dim 2: {}", if dim2.is_empty() { "ok" } else { "FAILED" });
    for f in dim1.iter().chain(&dim2) {
        let _ = writeln!(text, "  {f}");
    }
    for c in &census {
        let _ = writeln!(text, "  {} -> {}: {} fully broken flowlines, cycles {}", c["from"].as_str().unwrap_or(""), c["to"].as_str().unwrap_or(""), c["flowlines"], c["cycles"]);
    }
    if let Some(ps) = &pairings {
        for p in ps {
            let _ = writeln!(text, "ladybug {} -> {}: {{{}}}", p.from, p.to, p.matching.join(", "));
        }
    }
    let _ = writeln!(text, "realization shift {shift}: reduced homology matches: {realization_ok}");
    homology_lines(&mut text, &cells);

    let body = json!({
        "source": source,
        "policy": cfg.policy,
        "coefficients": cfg.coefficients,
        "moduli": cat.to_json(),
        "coherence": {"dim1": dim1, "dim2": dim2},
        "polygons": census,
        "ladybug_pairings": pairings.map(|ps| ps.iter().map(|p| json!({"from": p.from, "to": p.to, "matching": p.matching})).collect::<Vec<_>>()),
        "realization": {
            "shift": shift,
            "cells": cw.cells.len(),
            "reduced_homology": homology_json(&cells),
            "matches_chain_homology": realization_ok,
        },
    });
    Ok(Report::new("flowcat", ok, body, text))
}

fn load_grid(path: &Path) -> Result<GridDiagram> {
    parse_grid(&read(path)?)
}

fn cd_json(g: &GridDiagram, mu_max: i32, text: &mut String) -> (bool, Value) {
    if g.n() > MAX_OBSTRUCTION_GRID || mu_max < 2 {
        let _ = writeln!(text, "obstruction complex: skipped (needs n <= {MAX_OBSTRUCTION_GRID} and mu-max >= 2)");
        return (true, json!({"skipped": true}));
    }
    match obstruction_complex(g, mu_max) {
        Ok(c) => {
            let d_squared = c.verify_d_squared();
            let h = if d_squared { c.homology().ok() } else { None };
            let _ = writeln!(text, "obstruction complex (mu <= {mu_max}): generators {:?}, d^2 = 0: {d_squared}", c.counts());
            if let Some(h) = &h {
                homology_lines(text, h);
            }
            let counts: BTreeMap<i32, usize> = c.counts();
            (
                d_squared,
                json!({"mu_max": mu_max, "generators": counts, "d_squared": d_squared, "homology": h.as_ref().map(homology_json)}),
            )
        }
        Err(e) => {
            let _ = writeln!(text, "obstruction complex: {e}");
            (false, json!({"error": e.to_string()}))
        }
    }
}

pub fn cmd_grid(path: &Path, cd: bool, cfg: &Config) -> Result<Report> {
    grid_report(&load_grid(path)?, cd, cfg)
}

pub fn grid_report(g: &GridDiagram, cd: bool, cfg: &Config) -> Result<Report> {
    let signs = if g.n() <= MAX_SIGN_GRID { Some(solve_sign_assignment(g, SignScope::Empty)?) } else { None };
    let complex = match cfg.coefficients {
        Coefficients::Gf2 => tilde_differential(g, Coefficients::Gf2, None)?,
        Coefficients::Int => {
            let s = signs.as_ref().ok_or_else(|| Error::OutOfRange(format!("integral signs on a {0}x{0} grid", g.n())))?;
            tilde_differential(g, Coefficients::Int, Some(s))?
        }
    };
    let d_squared = complex.verify_d_squared();
    let homology = complex.homology()?.nonzero();
    let bigraded = complex.bigraded_homology()?;
    let violations = signs.as_ref().map(|s| sign_violations(g, s).len());

    let mut text = String::new();
    let _ = writeln!(text, "grid {}x{}: {} states", g.n(), g.n(), complex.states.len());
    let _ = writeln!(text, "d^2 = 0: {d_squared}");
    match (&signs, violations) {
        (Some(s), Some(v)) => {
            let _ = writeln!(text, "sign assignment: {} rectangles, {} constraints, {} violations", s.len(), s.constraints(), v);
        }
        _ => {
            let _ = writeln!(text, "sign assignment: skipped");
        }
    }
    let _ = writeln!(text, "homology ({:?}), total rank {}:", cfg.coefficients, homology.total_rank());
    homology_lines(&mut text, &homology);
    for (m, a, h) in &bigraded {
        let _ = writeln!(text, "  (M {m}, A {a}) = {h}");
    }
    let mut ok = d_squared && violations.unwrap_or(0) == 0;
    let cd_value = if cd {
        let (cd_ok, v) = cd_json(g, cfg.mu_max, &mut text);
        ok &= cd_ok;
        v
    } else {
        Value::Null
    };

    let body = json!({
        "n": g.n(),
        "x": g.x(),
        "o": g.o(),
        "coefficients": cfg.coefficients,
        "states": complex.states.len(),
        "d_squared": d_squared,
        "signs": signs.as_ref().map(|s| json!({"rectangles": s.len(), "constraints": s.constraints(), "violations": violations})),
        "homology": homology_json(&homology),
        "total_rank": homology.total_rank(),
        "bigraded": bigraded_json(&bigraded, ["maslov", "alexander"]),
        "cd": cd_value,
    });
    Ok(Report::new("grid", ok, body, text))
}

fn shape_key(kind: ModuliKind, edges: usize) -> String {
    match kind {
        ModuliKind::Point => "point".into(),
        ModuliKind::Interval => "interval".into(),
        ModuliKind::Polygon => format!("polygon{edges}"),
        ModuliKind::OutsideCatalog => "outside_catalog".into(),
    }
}

pub fn cmd_gridflow_report(path: &Path, cfg: &Config) -> Result<Report> {
    gridflow_report(&load_grid(path)?, cfg)
}

pub fn gridflow_report(g: &GridDiagram, cfg: &Config) -> Result<Report> {
    if !(1..=MAX_FLOW_MU).contains(&cfg.mu_max) {
        return Err(Error::OutOfRange(format!("maslov bound {}", cfg.mu_max)));
    }
    let states = enumerate_states(g);
    let mut domains_per_mu: BTreeMap<i32, usize> = BTreeMap::new();
    let mut decomposition_counts: BTreeMap<i32, BTreeMap<usize, usize>> = BTreeMap::new();
    let mut shapes: BTreeMap<i32, BTreeMap<String, usize>> = BTreeMap::new();
    let mut two_ends_failures = 0usize;
    for x in &states {
        for y in &states {
            for d in enumerate_positive_domains(g, x, y, cfg.mu_max)? {
                let mu = crate::grid::maslov_index(&d)?;
                *domains_per_mu.entry(mu).or_default() += 1;
                if mu == 0 {
                    continue;
                }
                let decs = decompositions(g, &d).len();
                *decomposition_counts.entry(mu).or_default().entry(decs).or_default() += 1;
                if mu == 2 && decs + detect_bubble_ends(g, &d).len() != 2 {
                    two_ends_failures += 1;
                }
                if mu <= 3 {
                    let s = moduli_shape(g, &d)?;
                    *shapes.entry(mu).or_default().entry(shape_key(s.kind, s.edges)).or_default() += 1;
                }
            }
        }
    }
    let strips = pair_strips(g);

    let mut text = String::new();
    let _ = writeln!(text, "grid {}x{}: {} states, mu <= {}", g.n(), g.n(), states.len(), cfg.mu_max);
    for (mu, count) in &domains_per_mu {
        let _ = writeln!(text, "  mu {mu}: {count} positive domains");
        if let Some(h) = decomposition_counts.get(mu) {
            let parts: Vec<String> = h.iter().map(|(k, v)| format!("{v}x{k}")).collect();
            let _ = writeln!(text, "    decompositions: {}", parts.join(" "));
        }
        if let Some(h) = shapes.get(mu) {
            let parts: Vec<String> = h.iter().map(|(k, v)| format!("{v} {k}")).collect();
            let _ = writeln!(text, "    moduli: {}", parts.join(", "));
        }
    }
    let _ = writeln!(text, "index 2 domains with two ends: {}", two_ends_failures == 0);
    for s in &strips {
        let _ = writeln!(text, "  O in column {}: row strip {}, column strip {}", s.o_marking, s.horizontal, s.vertical);
    }
    let (cd_ok, cd) = cd_json(g, cfg.mu_max, &mut text);
    let ok = two_ends_failures == 0 && cd_ok;

    let body = json!({
        "n": g.n(),
        "mu_max": cfg.mu_max,
        "states": states.len(),
        "domains_per_mu": domains_per_mu,
        "decomposition_counts": decomposition_counts,
        "moduli_shapes": shapes,
        "two_ends_failures": two_ends_failures,
        "strip_pairs": strips,
        "cd": cd,
    });
    Ok(Report::new("gridflow", ok, body, text))
}

/// Obstruction homology without the rest of the report.
pub fn cmd_cd(path: &Path, cfg: &Config) -> Result<HomologyTable> {
    cd_homology(&load_grid(path)?, cfg.mu_max)
}

pub fn execute(cli: &Cli) -> Result<Report> {
    let cfg = Config { coefficients: cli.coeff, policy: cli.policy, mu_max: cli.mu_max };
    match &cli.command {
        Command::Khovanov { pd } => cmd_khovanov(pd, &cfg),
        Command::Flowcat { pd, hypercube } => cmd_flowcat(pd.as_deref(), *hypercube, &cfg),
        Command::Grid { grid, cd } => cmd_grid(grid, *cd, &cfg),
        Command::Gridflow { action: GridflowAction::Report { grid } } => cmd_gridflow_report(grid, &cfg),
    }
}

/// Exit codes: 0 success, 1 a check failed, 2 bad input.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(report) => {
            print!("{}", report.render(cli.json));
            if report.ok {
                0
            } else {
                1
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
