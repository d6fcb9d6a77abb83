//! Batch command-line front end.
//!
//! Exit codes: 0 success, 1 I/O, 2 malformed input, 3 validation failure,
//! 4 mismatch or failed check, 5 resource budget exceeded.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::coeffs::Coeffs;
use crate::corners::{validate_nice, CornersError, CornersModel, PanelStructure, Partition};
use crate::corpus::{self, CorpusError, CORPUS};
use crate::face_ring::{FaceRing, FaceRingGrading, StanleyReisnerReport};
use crate::hochster::{GroupsReport, HochsterError, HochsterTable, SphereDims};
use crate::oracle::{
    build_real_zq, build_zq_chain, cell_budget, compare_complex, compare_real, oracle_real_ring, Comparison,
    OracleError,
};
use crate::rings::{CohomologyRing, RingLaw};
use crate::GradedAbelianGroup;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_SCHEMA: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_MISMATCH: i32 = 4;
pub const EXIT_RESOURCE: i32 = 5;

#[derive(Parser, Debug)]
#[command(
    name = "strata",
    version,
    about = "Cohomology of moment-angle manifolds and polyhedral products over manifolds with corners"
)]
pub struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Compact JSON output.
    #[arg(long, global = true, conflicts_with = "pretty")]
    pub json: bool,
    /// Indented JSON output.
    #[arg(long, global = true)]
    pub pretty: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Load a model and check that it is nice.
    Validate {
        /// Model file or corpus name.
        model: String,
    },
    /// Cohomology groups from the decomposition over index sets.
    Groups {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        law: LawArgs,
        #[arg(long, value_enum, default_value = "z")]
        coeff: CoeffArg,
    },
    /// Ring structure constants and law checks.
    Ring {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        law: LawArgs,
        #[arg(long, value_enum, default_value = "z")]
        coeff: CoeffArg,
    },
    /// Hilbert series of the topological face ring.
    FaceRing {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value = "z")]
        coeff: CoeffArg,
        /// Highest degree kept (default 20 for degree-2 generators, 10 otherwise).
        #[arg(long)]
        truncate: Option<usize>,
        /// Compare with the Stanley–Reisner series of the nerve.
        #[arg(long)]
        sr_check: bool,
    },
    /// Build the space itself and compute its cohomology.
    Oracle {
        #[command(flatten)]
        target: Target,
        #[command(flatten)]
        kind: KindArgs,
        #[arg(long, value_enum, default_value = "z")]
        coeff: CoeffArg,
        /// Also compute multiplication ranks (real case only).
        #[arg(long)]
        ring: bool,
    },
    /// Compare formulas with the oracles; nonzero exit on any mismatch.
    Compare {
        /// Model files or corpus names (default: the whole corpus).
        models: Vec<String>,
        /// Partition applied to every model; defaults as for a single model.
        #[arg(long)]
        partition: Option<String>,
        #[command(flatten)]
        kind: KindArgs,
        /// Coefficients (default: both).
        #[arg(long, value_enum)]
        coeff: Option<CoeffArg>,
    },
    /// Write a bundled model as JSON.
    Corpus {
        /// Corpus name, e.g. square or polygon(7).
        name: Option<String>,
        /// Output file (defaults to stdout).
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// List bundled names.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Args, Debug)]
pub struct Target {
    /// Model file or corpus name.
    pub model: String,
    /// Blocks of 1-based facet indices such as "1,3|2,4", or "trivial" or "coarse".
    #[arg(long)]
    pub partition: Option<String>,
}

#[derive(Args, Debug)]
pub struct LawArgs {
    /// Real moment-angle space.
    #[arg(long, conflicts_with_all = ["complex", "law"])]
    pub real: bool,
    /// Complex moment-angle space (the default).
    #[arg(long, conflicts_with = "law")]
    pub complex: bool,
    /// Sphere dimensions n_1,..,n_k.
    #[arg(long)]
    pub law: Option<String>,
}

#[derive(Args, Debug)]
pub struct KindArgs {
    /// Real moment-angle space.
    #[arg(long, conflicts_with = "complex")]
    pub real: bool,
    /// Complex moment-angle space.
    #[arg(long)]
    pub complex: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
pub enum CoeffArg {
    Z,
    Z2,
}

impl CoeffArg {
    fn coeffs(self) -> Coeffs {
        match self {
            CoeffArg::Z => Coeffs::Integers,
            CoeffArg::Z2 => Coeffs::Mod(2),
        }
    }
}

#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn new(code: i32, message: impl Into<String>) -> Self {
        CliError { code, message: message.into() }
    }
}

impl From<CornersError> for CliError {
    fn from(e: CornersError) -> Self {
        let code = if matches!(e, CornersError::Schema(_)) { EXIT_SCHEMA } else { EXIT_VALIDATION };
        CliError::new(code, e.to_string())
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        let code = if matches!(e, OracleError::Budget { .. }) { EXIT_RESOURCE } else { EXIT_VALIDATION };
        CliError::new(code, e.to_string())
    }
}

impl From<HochsterError> for CliError {
    fn from(e: HochsterError) -> Self {
        let code = if matches!(e, HochsterError::BadLaw(_)) { EXIT_SCHEMA } else { EXIT_VALIDATION };
        CliError::new(code, e.to_string())
    }
}

/// Result of a command: a JSON document, its human-readable rendering and
/// the exit code.
pub struct Outcome {
    pub value: Value,
    pub text: String,
    pub code: i32,
}

impl Outcome {
    fn ok(value: Value, text: String) -> Self {
        Outcome { value, text, code: EXIT_OK }
    }

    fn with_check(value: Value, text: String, passed: bool) -> Self {
        Outcome { value, text, code: if passed { EXIT_OK } else { EXIT_MISMATCH } }
    }
}

/// Runs the command line; returns exit code, stdout and stderr.
pub fn run_args<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_SCHEMA } else { EXIT_OK };
            let rendered = e.render().to_string();
            return if code == EXIT_OK { (code, rendered, String::new()) } else { (code, String::new(), rendered) };
        }
    };
    run(&cli)
}

pub fn run(cli: &Cli) -> (i32, String, String) {
    let result = match cli.jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build() {
            Ok(pool) => pool.install(|| execute(&cli.command)),
            Err(e) => Err(CliError::new(EXIT_RESOURCE, e.to_string())),
        },
        None => execute(&cli.command),
    };
    match result {
        Ok(out) => {
            let mut stdout = if cli.pretty {
                serde_json::to_string_pretty(&out.value).expect("serializable")
            } else if cli.json {
                serde_json::to_string(&out.value).expect("serializable")
            } else {
                out.text
            };
            if !stdout.ends_with('\n') {
                stdout.push('\n');
            }
            (out.code, stdout, String::new())
        }
        Err(e) => (e.code, String::new(), format!("error: {}\n", e.message)),
    }
}

fn execute(cmd: &Command) -> Result<Outcome, CliError> {
    match cmd {
        Command::Validate { model } => cmd_validate(model),
        Command::Groups { target, law, coeff } => cmd_groups(target, law, *coeff),
        Command::Ring { target, law, coeff } => cmd_ring(target, law, *coeff),
        Command::FaceRing { target, coeff, truncate, sr_check } => cmd_face_ring(target, *coeff, *truncate, *sr_check),
        Command::Oracle { target, kind, coeff, ring } => cmd_oracle(target, kind, *coeff, *ring),
        Command::Compare { models, partition, kind, coeff } => cmd_compare(models, partition.as_deref(), kind, *coeff),
        Command::Corpus { name, output, list } => cmd_corpus(name.as_deref(), output.as_deref(), *list),
    }
}

/// A loaded model with the coarse partition of its corpus entry, if any.
pub struct Loaded {
    pub name: String,
    pub model: CornersModel,
    pub coarse: Option<Partition>,
}

/// Reads a model file, or falls back to a corpus name.
pub fn load(source: &str) -> Result<Loaded, CliError> {
    let path = Path::new(source);
    if path.exists() {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::new(EXIT_IO, format!("{source}: {e}")))?;
        let model = CornersModel::from_json(&text)?;
        let coarse = model.bundled_partition().cloned();
        return Ok(Loaded { name: source.to_string(), model, coarse });
    }
    match corpus::by_name(source) {
        Ok(e) => Ok(Loaded { name: e.name, model: e.model, coarse: e.coarse }),
        Err(CorpusError::Unknown(_)) => Err(CliError::new(EXIT_IO, format!("{source}: no such file or corpus model"))),
        Err(e) => Err(CliError::new(EXIT_SCHEMA, e.to_string())),
    }
}

fn require_nice(l: &Loaded) -> Result<(), CliError> {
    let report = validate_nice(&l.model);
    if !report.ok {
        return Err(CliError::new(EXIT_VALIDATION, format!("{}: {}", l.name, report.summary())));
    }
    Ok(())
}

/// Partition from a flag: absent means the bundled one or the trivial one.
pub fn resolve_partition(l: &Loaded, flag: Option<&str>) -> Result<Partition, CliError> {
    let m = l.model.m();
    match flag.map(str::trim) {
        None => Ok(l.model.bundled_partition().cloned().unwrap_or_else(|| Partition::trivial(m))),
        Some("trivial") => Ok(Partition::trivial(m)),
        Some("coarse") => l
            .coarse
            .clone()
            .ok_or_else(|| CliError::new(EXIT_VALIDATION, format!("{} has no coarse partition", l.name))),
        Some(s) => Ok(Partition::parse(s, m)?),
    }
}

fn resolve_law(law: &LawArgs, k: usize) -> Result<SphereDims, CliError> {
    let dims = if law.real {
        SphereDims::real(k)
    } else if let Some(s) = &law.law {
        SphereDims::parse(s)?
    } else {
        SphereDims::complex(k)
    };
    dims.check_len(k)?;
    Ok(dims)
}

fn law_name(d: &SphereDims) -> String {
    if d.is_real() {
        "real".into()
    } else if d.is_complex() {
        "complex".into()
    } else {
        d.dims().iter().map(usize::to_string).collect::<Vec<_>>().join(",")
    }
}

fn coeff_name(c: Coeffs) -> &'static str {
    if c == Coeffs::Integers {
        "z"
    } else {
        "z2"
    }
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable")
}

fn groups_text(g: &GradedAbelianGroup, k: Coeffs) -> String {
    if g.is_zero() {
        return "  0\n".into();
    }
    g.iter().map(|(p, a)| format!("  H^{p} = {}\n", a.display_over(k))).collect()
}

fn cmd_validate(source: &str) -> Result<Outcome, CliError> {
    let l = load(source)?;
    let report = validate_nice(&l.model);
    let nerve = l.model.nerve();
    let value = json!({
        "model": l.name,
        "dim": l.model.dim(),
        "facets": l.model.m(),
        "nice": report,
        "nerve_f_vector": nerve.f_vector(),
    });
    let text = format!("{}: dimension {}, {} facets\n{}\n", l.name, l.model.dim(), l.model.m(), report.summary());
    let mut out = Outcome::ok(value, text);
    if !report.ok {
        out.code = EXIT_VALIDATION;
    }
    Ok(out)
}

fn prepare<'a>(l: &'a Loaded, flag: Option<&str>) -> Result<PanelStructure<'a>, CliError> {
    require_nice(l)?;
    let p = resolve_partition(l, flag)?;
    Ok(l.model.panels(&p)?)
}

fn cmd_groups(target: &Target, law: &LawArgs, coeff: CoeffArg) -> Result<Outcome, CliError> {
    let l = load(&target.model)?;
    let panels = prepare(&l, target.partition.as_deref())?;
    let dims = resolve_law(law, panels.k())?;
    let table = HochsterTable::new(&panels, coeff.coeffs());
    let report = GroupsReport::new(&table, &dims);
    let total = table.total(|o| dims.n_of(o));
    let value = json!({
        "model": l.name,
        "partition": panels.partition().to_string(),
        "law": dims.dims(),
        "coeff": coeff_name(coeff.coeffs()),
        "betti": total.betti(),
        "groups": report.groups,
        "table": report.table,
    });
    let text = format!(
        "{} [{}], law {}, coefficients {}\n{}Betti numbers {:?}\n",
        l.name,
        panels.partition(),
        law_name(&dims),
        coeff_name(coeff.coeffs()),
        groups_text(&total, coeff.coeffs()),
        total.betti()
    );
    Ok(Outcome::ok(value, text))
}

fn cmd_ring(target: &Target, law: &LawArgs, coeff: CoeffArg) -> Result<Outcome, CliError> {
    let l = load(&target.model)?;
    let panels = prepare(&l, target.partition.as_deref())?;
    let dims = resolve_law(law, panels.k())?;
    let table = HochsterTable::new(&panels, coeff.coeffs());
    let ring = CohomologyRing::new(&table, RingLaw::new(dims.clone()))
        .map_err(|e| CliError::new(EXIT_VALIDATION, e.to_string()))?;
    let sc = ring.structure_constants();
    let annihilation = sc.check_annihilation();
    let associativity = sc.check_associativity();
    let commutativity = sc.graded_commutativity_check();
    let passed = annihilation.is_empty() && associativity.is_empty() && commutativity.ok;
    let value = json!({
        "model": l.name,
        "partition": panels.partition().to_string(),
        "law": dims.dims(),
        "coeff": coeff_name(coeff.coeffs()),
        "generators": sc.generators(),
        "poincare_polynomial": sc.poincare_polynomial(),
        "torsion": sc.torsion(),
        "checks": {
            "annihilation_violations": annihilation,
            "associativity_violations": associativity,
            "graded_commutativity": commutativity,
        },
        "duality_diagnostic": sc.duality_diagnostic(),
        "multiplication_ranks": sc.multiplication_ranks(),
        "table": sc,
    });
    let mut text = format!(
        "{} [{}], law {}, coefficients {}\n{} generators, Poincaré polynomial {}\n",
        l.name,
        panels.partition(),
        law_name(&dims),
        coeff_name(coeff.coeffs()),
        sc.generators().len(),
        sc.poincare_string()
    );
    for (d, o) in sc.torsion() {
        let _ = writeln!(text, "torsion generator of order {o} in degree {d}");
    }
    let _ = writeln!(
        text,
        "annihilation {}, associativity {}, graded commutativity {}",
        verdict(annihilation.is_empty()),
        verdict(associativity.is_empty()),
        verdict(commutativity.ok)
    );
    for e in sc.entries().iter().filter(|e| !e.product.is_empty()) {
        let target = (e.g.omega.union(e.h.omega), e.g.p + e.h.p);
        let terms: Vec<String> =
            e.product.iter().map(|t| format!("{}·[{},{},{}]", t.coeff, target.0, target.1, t.index)).collect();
        let _ = writeln!(
            text,
            "  [{},{},{}]·[{},{},{}] = {}",
            e.g.omega,
            e.g.p,
            e.g.index,
            e.h.omega,
            e.h.p,
            e.h.index,
            terms.join(" + ")
        );
    }
    Ok(Outcome::with_check(value, text, passed))
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn cmd_face_ring(
    target: &Target,
    coeff: CoeffArg,
    truncate: Option<usize>,
    sr_check: bool,
) -> Result<Outcome, CliError> {
    let l = load(&target.model)?;
    let panels = prepare(&l, target.partition.as_deref())?;
    let c = coeff.coeffs();
    let grading = FaceRingGrading::standard(panels.k(), c);
    let t = truncate.unwrap_or_else(|| grading.default_truncation());
    let ring = FaceRing::new(&panels, c, grading).map_err(|e| CliError::new(EXIT_VALIDATION, e.to_string()))?;
    let hilbert = ring.hilbert_series(t);
    let torsion = ring.torsion_series(t);
    let segre = ring.segre_check(t);
    let sr = if sr_check {
        Some(FaceRing::stanley_reisner_compare(&panels, t).map_err(|e| CliError::new(EXIT_VALIDATION, e.to_string()))?)
    } else {
        None
    };
    let sr_failed = matches!(sr, Some(StanleyReisnerReport::Applicable { equal: false, .. }));
    let value = json!({
        "model": l.name,
        "partition": panels.partition().to_string(),
        "coeff": coeff_name(c),
        "generator_degrees": ring.grading().degrees(),
        "truncation": t,
        "hilbert_series": hilbert,
        "torsion_series": torsion,
        "nerve": ring.nerve(),
        "segre_mismatches": segre,
        "stanley_reisner": sr,
    });
    let mut text =
        format!("{} [{}], coefficients {}\nHilbert series {}\n", l.name, panels.partition(), coeff_name(c), hilbert);
    if !torsion.is_zero() {
        let _ = writeln!(text, "torsion summands {torsion}");
    }
    let _ = writeln!(text, "Segre check {}", verdict(segre.is_empty()));
    match &sr {
        Some(StanleyReisnerReport::Applicable { equal, first_mismatch, stanley_reisner, .. }) => {
            let _ = writeln!(text, "Stanley–Reisner series {stanley_reisner}");
            match first_mismatch {
                None if *equal => {
                    let _ = writeln!(text, "equal through degree {t}");
                }
                _ => {
                    let _ = writeln!(text, "MISMATCH at degree {}", first_mismatch.unwrap_or(0));
                }
            }
        }
        Some(StanleyReisnerReport::NotApplicable { reason, .. }) => {
            let _ = writeln!(text, "Stanley–Reisner comparison not applicable: {reason}");
        }
        None => {}
    }
    Ok(Outcome::with_check(value, text, segre.is_empty() && !sr_failed))
}

fn cmd_oracle(target: &Target, kind: &KindArgs, coeff: CoeffArg, with_ring: bool) -> Result<Outcome, CliError> {
    let l = load(&target.model)?;
    let panels = prepare(&l, target.partition.as_deref())?;
    let c = coeff.coeffs();
    let budget = cell_budget();
    if kind.real {
        let sheets = build_real_zq(&panels, budget)?;
        let groups = sheets.complex.chain_complex(c).cohomology();
        let ranks = with_ring.then(|| oracle_real_ring(&sheets, c));
        let value = json!({
            "model": l.name,
            "partition": panels.partition().to_string(),
            "space": "real",
            "coeff": coeff_name(c),
            "simplices": sheets.complex.total_simplices(),
            "cohomology": groups,
            "betti": groups.betti(),
            "multiplication_ranks": ranks,
        });
        let mut text = format!(
            "{} [{}], real moment-angle manifold, {} simplices, coefficients {}\n{}",
            l.name,
            panels.partition(),
            sheets.complex.total_simplices(),
            coeff_name(c),
            groups_text(&groups, c)
        );
        if let Some(r) = &ranks {
            for (key, v) in &r.0 {
                let _ = writeln!(text, "  multiplication rank ({key}): {v}");
            }
        }
        return Ok(Outcome::ok(value, text));
    }
    if with_ring {
        return Err(CliError::new(EXIT_VALIDATION, "--ring needs --real"));
    }
    let cells = build_zq_chain(&panels, c, budget)?;
    let homology = cells.chain.homology();
    let cohomology = cells.chain.cohomology();
    let value = json!({
        "model": l.name,
        "partition": panels.partition().to_string(),
        "space": "complex",
        "coeff": coeff_name(c),
        "cells": cells.cells,
        "homology": homology,
        "cohomology": cohomology,
        "betti": cohomology.betti(),
    });
    let text = format!(
        "{} [{}], moment-angle manifold, {} cells, coefficients {}\ncohomology\n{}",
        l.name,
        panels.partition(),
        cells.cells,
        coeff_name(c),
        groups_text(&cohomology, c)
    );
    Ok(Outcome::ok(value, text))
}

#[derive(Serialize)]
struct CompareRow {
    model: String,
    partition: String,
    space: &'static str,
    coeff: &'static str,
    comparison: Comparison,
}

fn cmd_compare(
    models: &[String],
    partition: Option<&str>,
    kind: &KindArgs,
    coeff: Option<CoeffArg>,
) -> Result<Outcome, CliError> {
    let sources: Vec<String> =
        if models.is_empty() { CORPUS.iter().map(|s| s.to_string()).collect() } else { models.to_vec() };
    let coeffs: Vec<Coeffs> = match coeff {
        Some(c) => vec![c.coeffs()],
        None => vec![Coeffs::Integers, Coeffs::Mod(2)],
    };
    let (real, complex) = match (kind.real, kind.complex) {
        (false, false) => (true, true),
        other => other,
    };
    let budget = cell_budget();
    let mut rows = Vec::new();
    for source in &sources {
        let l = load(source)?;
        require_nice(&l)?;
        let partitions = match partition {
            Some(flag) => vec![resolve_partition(&l, Some(flag))?],
            None => {
                let mut v = vec![resolve_partition(&l, None)?];
                if let Some(c) = &l.coarse {
                    if !v.contains(c) {
                        v.push(c.clone());
                    }
                }
                v
            }
        };
        for p in partitions {
            let panels = l.model.panels(&p)?;
            for &c in &coeffs {
                if real {
                    let comparison = compare_real(&panels, c, budget, true)?;
                    rows.push(CompareRow {
                        model: l.name.clone(),
                        partition: p.to_string(),
                        space: "real",
                        coeff: coeff_name(c),
                        comparison,
                    });
                }
                if complex {
                    let comparison = compare_complex(&panels, c, budget)?;
                    rows.push(CompareRow {
                        model: l.name.clone(),
                        partition: p.to_string(),
                        space: "complex",
                        coeff: coeff_name(c),
                        comparison,
                    });
                }
            }
        }
    }
    let passed = rows.iter().all(|r| r.comparison.ok);
    let mut text = String::new();
    for r in &rows {
        let _ = writeln!(text, "{} {} [{}] {} {}", verdict(r.comparison.ok), r.model, r.partition, r.space, r.coeff);
        for d in &r.comparison.group_diffs {
            let _ = writeln!(text, "    H^{}: formula {} vs oracle {}", d.degree, d.formula, d.oracle);
        }
        for d in &r.comparison.rank_diffs {
            let _ = writeln!(text, "    ranks ({}): formula {} vs oracle {}", d.bidegree, d.formula, d.oracle);
        }
    }
    let _ = writeln!(text, "{} of {} comparisons passed", rows.iter().filter(|r| r.comparison.ok).count(), rows.len());
    let value = json!({ "ok": passed, "comparisons": to_value(&rows) });
    Ok(Outcome::with_check(value, text, passed))
}

fn cmd_corpus(name: Option<&str>, output: Option<&Path>, list: bool) -> Result<Outcome, CliError> {
    if list {
        let names: Vec<&str> = CORPUS.to_vec();
        let mut text = names.join("\n");
        text.push_str("\npolygon(m) for 3 <= m <= 24, simplex(n) for 1 <= n <= 8\n");
        return Ok(Outcome::ok(json!({ "models": names }), text));
    }
    let name = name.ok_or_else(|| CliError::new(EXIT_SCHEMA, "corpus needs a model name or --list"))?;
    let entry = corpus::by_name(name).map_err(|e| CliError::new(EXIT_SCHEMA, e.to_string()))?;
    let spec = entry.model.to_spec();
    let body = serde_json::to_string_pretty(&spec).expect("serializable");
    match output {
        Some(path) => {
            std::fs::write(path, format!("{body}\n"))
                .map_err(|e| CliError::new(EXIT_IO, format!("{}: {e}", path.display())))?;
            let text = format!("wrote {} ({} facets) to {}\n", entry.name, entry.model.m(), path.display());
            Ok(Outcome::ok(
                json!({ "model": entry.name, "facets": entry.model.m(), "path": path.display().to_string() }),
                text,
            ))
        }
        None => Ok(Outcome::ok(to_value(&spec), body)),
    }
}
