//! Batch command-line front end: argument parsing, report assembly, and
//! exit-code mapping for the `spinchain` binary.
//!
//! Exit codes: 0 = completed, 1 = precondition or regression failure,
//! 2 = input error, 3 = resource cap exceeded. Reports go to stdout;
//! errors are emitted as one JSON object on stderr.

use std::collections::BTreeMap;
use std::path::Path;

use clap::{Parser, Subcommand, ValueEnum};
use num::BigRational;
use num_complex::Complex;
use serde::Serialize;

use crate::catalog;
use crate::charge_solver::{ring_orbit_commutator, search_charges};
use crate::criteria::{
    check_injectivity, check_two_local_condition, hokkyo_test, iota2, Certificate, Verdict,
};
use crate::errors::{Result, SpinError};
use crate::frustration::{build_graph, classify, export_dot, GraphReport, DEFAULT_HOLE_BOUND};
use crate::lattice::{Boundary, HamiltonianSpec, ModelFile, ModelSpec};
use crate::operator::{Convention, LocalOperator};
use crate::poly::GRat;

/// Exact integrability checker for translationally invariant spin chains.
#[derive(Debug, Parser)]
#[command(name = "spinchain", version, about)]
pub struct Args {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum GraphFormat {
    #[default]
    Text,
    Json,
    Dot,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum BoundaryArg {
    Open,
    #[default]
    Periodic,
}

impl From<BoundaryArg> for Boundary {
    fn from(b: BoundaryArg) -> Boundary {
        match b {
            BoundaryArg::Open => Boundary::Open,
            BoundaryArg::Periodic => Boundary::Periodic,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide integrability: injectivity, the 2-local conservation
    /// condition, and the 3-local charge test on the composite form.
    Check {
        /// Catalog id or path to a JSON model file.
        model: String,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Brute-force search for conserved charge densities on a finite ring
    /// at a rational parameter point.
    Charge {
        /// Catalog id or path to a JSON model file.
        model: String,
        /// Window size in sites; defaults to three unit cells.
        #[arg(long)]
        window: Option<u32>,
        /// Ring size in sites.
        #[arg(long, default_value_t = 8)]
        n: u32,
        /// Rational parameter bindings, e.g. `c1=1,c2=2/3`.
        #[arg(long)]
        at: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Verify a stated charge density against a model on a finite ring.
    Verify {
        /// Catalog id or path to a JSON model file.
        model: String,
        /// Charge density text, or `@path` to read it from a file.
        #[arg(long)]
        charge: String,
        /// Ring size in sites.
        #[arg(long, default_value_t = 8)]
        n: u32,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Build, classify, and export the frustration graph.
    Graph {
        /// Catalog id or path to a JSON model file.
        model: String,
        /// Chain length in sites.
        #[arg(long, default_value_t = 8)]
        n: u32,
        #[arg(long, value_enum, default_value_t)]
        boundary: BoundaryArg,
        /// Even-hole search bound.
        #[arg(long, default_value_t = DEFAULT_HOLE_BOUND)]
        max_hole_len: u32,
        #[arg(long, value_enum, default_value_t)]
        format: GraphFormat,
    },
    /// List the built-in models or show one as a JSON model file.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Re-run the built-in classification and compare every model against
    /// the recorded expectations.
    Reproduce,
}

#[derive(Debug, Subcommand)]
pub enum CatalogAction {
    List,
    Show { id: String },
}

fn error_kind(err: &SpinError) -> &'static str {
    match err {
        SpinError::RingMismatch(_) => "ring-mismatch",
        SpinError::Parse(_) => "parse",
        SpinError::UnknownModel(_) => "unknown-model",
        SpinError::TranslationOverflow { .. } => "translation-overflow",
        SpinError::BadChainLength { .. } => "bad-chain-length",
        SpinError::SupportTooLarge { .. } => "support-too-large",
        SpinError::InjectivityUnverified => "injectivity-unverified",
        SpinError::Precondition(_) => "precondition",
        SpinError::MixedCommutation(_, _) => "mixed-commutation",
        SpinError::ResourceCap(_) => "resource-cap",
        SpinError::Io(_) => "io",
        SpinError::Json(_) => "json",
    }
}

/// Exit code for an error, per the documented mapping.
pub fn exit_code(err: &SpinError) -> i32 {
    match err {
        SpinError::Parse(_)
        | SpinError::UnknownModel(_)
        | SpinError::RingMismatch(_)
        | SpinError::Io(_)
        | SpinError::Json(_) => 2,
        SpinError::ResourceCap(_) => 3,
        _ => 1,
    }
}

/// Run a parsed command line; returns the process exit code.
pub fn run(args: Args) -> i32 {
    match dispatch(args.command) {
        Ok(code) => code,
        Err(err) => {
            let payload = serde_json::json!({
                "kind": error_kind(&err),
                "message": err.to_string(),
            });
            eprintln!("{payload}");
            exit_code(&err)
        }
    }
}

fn dispatch(command: Command) -> Result<i32> {
    match command {
        Command::Check { model, format } => cmd_check(&model, format),
        Command::Charge {
            model,
            window,
            n,
            at,
            format,
        } => cmd_charge(&model, window, n, at.as_deref(), format),
        Command::Verify {
            model,
            charge,
            n,
            format,
        } => cmd_verify(&model, &charge, n, format),
        Command::Graph {
            model,
            n,
            boundary,
            max_hole_len,
            format,
        } => cmd_graph(&model, n, boundary.into(), max_hole_len, format),
        Command::Catalog { action } => cmd_catalog(action),
        Command::Reproduce => cmd_reproduce(),
    }
}

/// Resolve a model source: a catalog id first, then a JSON model file.
pub fn load_model(source: &str) -> Result<ModelSpec> {
    if let Some(entry) = catalog::find(source) {
        return Ok(entry.spec);
    }
    if Path::new(source).exists() {
        let text = std::fs::read_to_string(source)?;
        let file: ModelFile = serde_json::from_str(&text)?;
        return file.to_spec();
    }
    Err(SpinError::UnknownModel(source.to_string()))
}

fn composite_of(model: &ModelSpec) -> Result<HamiltonianSpec> {
    match model {
        ModelSpec::NearestNeighbor(s) => Ok(s.clone()),
        ModelSpec::ThreeSite(s) => s.composite_map(),
    }
}

/// Parse `name=value` rational bindings; every declared parameter must be
/// bound, in any order.
pub fn parse_point(model: &ModelSpec, at: Option<&str>) -> Result<Vec<GRat>> {
    let names = model.ring().names();
    let mut bound: BTreeMap<String, GRat> = BTreeMap::new();
    if let Some(at) = at {
        for part in at.split(',').filter(|p| !p.trim().is_empty()) {
            let (name, value) = part
                .split_once('=')
                .ok_or_else(|| SpinError::Parse(format!("binding `{part}` is not name=value")))?;
            let name = name.trim();
            if !names.iter().any(|n| n == name) {
                return Err(SpinError::Parse(format!(
                    "`{name}` is not a parameter of this model"
                )));
            }
            let r: BigRational = value
                .trim()
                .parse()
                .map_err(|_| SpinError::Parse(format!("`{value}` is not a rational number")))?;
            bound.insert(name.to_string(), Complex::from(r));
        }
    }
    names
        .iter()
        .map(|n| {
            bound.get(n).cloned().ok_or_else(|| {
                SpinError::Precondition(format!("parameter `{n}` is unbound; pass --at {n}=<q>"))
            })
        })
        .collect()
}

#[derive(Debug, Serialize)]
pub struct CheckReport {
    pub model: String,
    pub injectivity_holds: bool,
    pub saturating_form: bool,
    pub admissible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub two_local_holds_generic: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
}

/// Run the full decision pipeline on the composite form of a model.
pub fn check_model(model: &ModelSpec) -> Result<CheckReport> {
    let spec = composite_of(model)?;
    let inj = check_injectivity(&spec);
    if !inj.admissible() {
        return Ok(CheckReport {
            model: spec.name.clone(),
            injectivity_holds: inj.holds,
            saturating_form: inj.saturating_form,
            admissible: false,
            two_local_holds_generic: None,
            certificate: None,
        });
    }
    let two = check_two_local_condition(&spec)?;
    let cert = hokkyo_test(&spec)?;
    Ok(CheckReport {
        model: spec.name.clone(),
        injectivity_holds: inj.holds,
        saturating_form: inj.saturating_form,
        admissible: true,
        two_local_holds_generic: Some(two.holds_generic),
        certificate: Some(cert),
    })
}

fn verdict_word(v: Verdict) -> &'static str {
    match v {
        Verdict::Integrable => "integrable",
        Verdict::Nonintegrable => "nonintegrable",
        Verdict::Inconclusive => "inconclusive",
    }
}

fn cmd_check(source: &str, format: Format) -> Result<i32> {
    let model = load_model(source)?;
    let report = check_model(&model)?;
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report)?),
        Format::Text => {
            println!("model: {}", report.model);
            println!(
                "injectivity: {}{}",
                if report.injectivity_holds { "holds" } else { "fails" },
                if report.saturating_form {
                    " (saturating product form)"
                } else {
                    ""
                }
            );
            if let Some(cert) = &report.certificate {
                println!(
                    "2-local condition: {}",
                    if report.two_local_holds_generic == Some(true) {
                        "holds generically"
                    } else {
                        "fails"
                    }
                );
                println!("verdict: {}", verdict_word(cert.verdict));
                if let Some(charge) = &cert.charge {
                    println!("charge density:");
                    for line in charge.lines() {
                        println!("  {line}");
                    }
                }
                if let Some(obs) = &cert.obstruction {
                    println!("obstruction: {}", obs.term);
                    for s in &obs.sources {
                        println!("  from {s}");
                    }
                }
                if cert.excluded_loci.is_empty() {
                    println!("excluded loci: none");
                } else {
                    println!("excluded loci: {}", cert.excluded_loci.join(", "));
                }
            } else {
                println!("verdict: not decidable by the 3-local charge test");
            }
        }
    }
    if report.admissible {
        Ok(0)
    } else {
        // inadmissible models are outside the test's preconditions
        Err(SpinError::Precondition(format!(
            "injectivity fails for {}; the 3-local charge test does not apply",
            report.model
        )))
    }
}

/// Window-size cap in sites; the candidate basis grows as `4^window`.
fn max_window() -> u32 {
    std::env::var("SPINCHAIN_MAX_WINDOW")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(8)
}

#[derive(Debug, Serialize)]
pub struct ChargeReport {
    pub model: String,
    pub window: u32,
    pub n_sites: u32,
    pub at: BTreeMap<String, String>,
    pub dimension: usize,
    pub basis: Vec<String>,
}

fn cmd_charge(
    source: &str,
    window: Option<u32>,
    n: u32,
    at: Option<&str>,
    format: Format,
) -> Result<i32> {
    let model = load_model(source)?;
    let window = window.unwrap_or(3 * model.unit_cell());
    if window > max_window() {
        return Err(SpinError::ResourceCap(format!(
            "window {window} exceeds the cap {}; raise SPINCHAIN_MAX_WINDOW to override",
            max_window()
        )));
    }
    let point = parse_point(&model, at)?;
    let search = search_charges(&model, window, n, &point)?;
    let at_map: BTreeMap<String, String> = model
        .ring()
        .names()
        .iter()
        .zip(&point)
        .map(|(n, v)| (n.clone(), v.re.to_string()))
        .collect();
    let report = ChargeReport {
        model: model.name().to_string(),
        window,
        n_sites: n,
        at: at_map,
        dimension: search.dimension,
        basis: search
            .basis
            .iter()
            .map(|b| b.to_text(model.unit_cell()))
            .collect(),
    };
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report)?),
        Format::Text => {
            let at_text = report
                .at
                .iter()
                .map(|(k, v)| format!("{k}={v}"))
                .collect::<Vec<_>>()
                .join(", ");
            println!(
                "model {}: window {} on a {}-site ring{}",
                report.model,
                report.window,
                report.n_sites,
                if at_text.is_empty() {
                    String::new()
                } else {
                    format!(" at {at_text}")
                }
            );
            println!("conserved densities: {}", report.dimension);
            for (i, b) in report.basis.iter().enumerate() {
                println!("[{}]", i + 1);
                for line in b.lines() {
                    println!("  {line}");
                }
            }
        }
    }
    Ok(0)
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub model: String,
    pub n_sites: u32,
    pub conserved: bool,
    /// One representative term per translation class of the commutator.
    pub residual: String,
}

fn cmd_verify(source: &str, charge: &str, n: u32, format: Format) -> Result<i32> {
    let model = load_model(source)?;
    let text = match charge.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)?,
        None => charge.to_string(),
    };
    let q = LocalOperator::from_text(model.ring(), &text)?;
    let h = model.instantiate(n)?;
    let residual = ring_orbit_commutator(&q, &h, n, model.unit_cell())?;
    let report = VerifyReport {
        model: model.name().to_string(),
        n_sites: n,
        conserved: residual.is_zero(),
        residual: residual.to_text(model.unit_cell()),
    };
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report)?),
        Format::Text => {
            println!(
                "model {}: charge is {} on a {}-site ring",
                report.model,
                if report.conserved {
                    "conserved"
                } else {
                    "not conserved"
                },
                report.n_sites
            );
            if !report.conserved {
                println!("residual classes:");
                for line in report.residual.lines() {
                    println!("  {line}");
                }
            }
        }
    }
    Ok(0)
}

fn implication_word(report: &GraphReport) -> &'static str {
    use crate::frustration::Implication::*;
    match report.implication {
        FreeFermionByGraph => "free-fermion-by-graph",
        IntegrableByGraph => "integrable-by-graph",
        NoGraphConclusion => "no-graph-conclusion",
    }
}

fn cmd_graph(
    source: &str,
    n: u32,
    boundary: Boundary,
    max_hole_len: u32,
    format: GraphFormat,
) -> Result<i32> {
    let model = load_model(source)?;
    let graph = build_graph(&model, n, boundary)?;
    let report = classify(&graph, max_hole_len);
    match format {
        GraphFormat::Dot => {
            println!(
                "// claws: {}, even holes (len <= {}): {}",
                report.claws.len(),
                max_hole_len,
                report.even_holes.len()
            );
            print!("{}", export_dot(&graph));
        }
        GraphFormat::Json => println!("{}", serde_json::to_string_pretty(&report)?),
        GraphFormat::Text => {
            println!(
                "model {}: {} vertices on {} sites ({:?})",
                model.name(),
                graph.n_vertices(),
                n,
                boundary
            );
            println!(
                "claw-free: {}, even-hole-free up to {}: {}",
                report.claw_free, max_hole_len, report.even_hole_free
            );
            println!("implication: {}", implication_word(&report));
            if report.extrapolated {
                println!("note: composite-cell graph; the graph criterion is extrapolated");
            }
            for w in report.claws.iter().chain(&report.even_holes) {
                println!(
                    "  {:?} {{{}}}{}",
                    w.kind,
                    w.vertices.join(", "),
                    if w.bulk { " (bulk)" } else { "" }
                );
            }
        }
    }
    Ok(0)
}

fn cmd_catalog(action: CatalogAction) -> Result<i32> {
    match action {
        CatalogAction::List => {
            for entry in catalog::catalog() {
                let verdict = entry
                    .expected
                    .verdict
                    .map_or("unclassified", verdict_word);
                println!("{:<18} {:<14} {}", entry.id, verdict, entry.description);
            }
        }
        CatalogAction::Show { id } => {
            let entry = catalog::find(&id).ok_or_else(|| SpinError::UnknownModel(id.clone()))?;
            let file = ModelFile::from_spec(&entry.spec);
            println!("{}", serde_json::to_string_pretty(&file)?);
        }
    }
    Ok(0)
}

fn parse_expected(spec: &HamiltonianSpec, text: &str) -> Result<LocalOperator> {
    LocalOperator::from_text(&spec.ring, text)
}

/// Generic rational point for a parameter ring: small distinct primes, off
/// every catalog locus.
fn generic_point(model: &ModelSpec) -> Vec<GRat> {
    [2i64, 3, 5]
        .iter()
        .take(model.ring().len())
        .map(|&v| crate::poly::grat_int(v))
        .collect()
}

/// Re-run the classification of one catalog entry against its record;
/// returns mismatch descriptions, empty when everything agrees.
pub fn reproduce_entry(entry: &catalog::CatalogEntry) -> Result<Vec<String>> {
    let mut mismatches = Vec::new();
    let spec = entry.composite();
    let u = spec.unit_cell;
    let expected = &entry.expected;

    let inj = check_injectivity(&spec);
    if inj.admissible() != expected.admissible {
        mismatches.push(format!(
            "admissibility: got {}, recorded {}",
            inj.admissible(),
            expected.admissible
        ));
        return Ok(mismatches);
    }

    if expected.admissible {
        let cert = hokkyo_test(&spec)?;
        if Some(cert.verdict) != expected.verdict {
            mismatches.push(format!(
                "verdict: got {}, recorded {:?}",
                verdict_word(cert.verdict),
                expected.verdict
            ));
            return Ok(mismatches);
        }
        let loci: Vec<&str> = cert.excluded_loci.iter().map(|s| s.as_str()).collect();
        if loci != expected.loci {
            mismatches.push(format!(
                "loci: got {:?}, recorded {:?}",
                loci, expected.loci
            ));
        }
        if let Some(correction) = expected.correction {
            let want = iota2(&spec)?.add(&parse_expected(&spec, correction)?)?;
            let got = parse_expected(&spec, cert.charge.as_deref().unwrap_or("0"))?;
            if got.sub(&want).map_or(true, |d| !d.is_zero()) {
                mismatches.push(format!("charge density differs from iota2 + {correction}"));
            }
        }
        if let Some(obstruction) = expected.obstruction {
            let want = parse_expected(&spec, obstruction)?;
            let got_text = cert.obstruction.as_ref().map(|o| o.term.clone());
            let got = parse_expected(&spec, got_text.as_deref().unwrap_or("0"))?;
            if got.sub(&want).map_or(true, |d| !d.is_zero()) {
                mismatches.push(format!(
                    "obstruction: got {}, recorded {obstruction}",
                    got_text.unwrap_or_else(|| "none".into())
                ));
            }
        }
    } else if expected.verdict == Some(Verdict::Nonintegrable) {
        // outside the 3-local test's preconditions the record rests on a
        // brute-force absence of new charges at a generic point
        let m = ModelSpec::NearestNeighbor(spec.clone());
        let point = generic_point(&m);
        let n = 6 * u;
        let d2 = search_charges(&m, 2 * u, n, &point)?;
        let d3 = search_charges(&m, 3 * u, n, &point)?;
        if d3.dimension != d2.dimension {
            mismatches.push(format!(
                "brute force found a strictly 3-cell charge ({} vs {})",
                d3.dimension, d2.dimension
            ));
        }
    }

    if expected.verdict == Some(Verdict::Inconclusive) {
        // an inconclusive record rests on bond symmetries: each density
        // must commute with every Hamiltonian term individually, so that
        // products at different bonds stay conserved at every locality
        let h = spec.density();
        for charge in expected.known_charges {
            let q = LocalOperator::from_text(&spec.ring, charge)?;
            let termwise = q.commutator(&h, Convention::Halved)?.is_zero()
                && q.commutator(&h.translated(u as i32), Convention::Halved)?
                    .is_zero()
                && q.translated(u as i32)
                    .commutator(&h, Convention::Halved)?
                    .is_zero();
            if !termwise {
                mismatches.push(format!(
                    "recorded symmetry does not commute termwise: {charge}"
                ));
            }
        }
    }

    for charge in expected.known_charges {
        let q = LocalOperator::from_text(entry.spec.ring(), charge)?;
        let support = q.max_site().map_or(1, |h| h + 1);
        let cell = entry.spec.unit_cell();
        let mut n = (2 * support).max(8);
        n += (cell - n % cell) % cell;
        let h = entry.spec.instantiate(n)?;
        let resid = ring_orbit_commutator(&q, &h, n, cell)?;
        if !resid.is_zero() {
            mismatches.push(format!("recorded charge is not conserved: {charge}"));
        }
    }

    if let Some((locus, charge)) = expected.special_point_charge {
        // all parameters equal to one lies on every recorded locus, which
        // is a difference of parameters
        let on_locus: Vec<GRat> = spec
            .ring
            .names()
            .iter()
            .map(|_| crate::poly::grat_one())
            .collect();
        let target = crate::poly::ParamSet::empty();
        let h = spec.instantiate(8)?.eval(&on_locus, &target)?;
        let q = LocalOperator::from_text(&target, charge)?;
        let resid = ring_orbit_commutator(&q, &h, 8, u)?;
        if !resid.is_zero() {
            mismatches.push(format!(
                "special locus charge {charge} is not conserved on {locus} = 0"
            ));
        }
    }

    Ok(mismatches)
}

fn cmd_reproduce() -> Result<i32> {
    let entries = catalog::catalog();
    let mut failures = 0usize;
    let mut splits: BTreeMap<&'static str, (usize, usize, usize)> = BTreeMap::new();
    for entry in &entries {
        let mismatches = reproduce_entry(entry)?;
        let verdict = entry
            .expected
            .verdict
            .map_or("unclassified", verdict_word);
        if mismatches.is_empty() {
            println!("ok   {:<18} {}", entry.id, verdict);
        } else {
            failures += 1;
            println!("FAIL {:<18} {}", entry.id, verdict);
            for m in &mismatches {
                println!("     {m}");
            }
        }
        let table = if entry.id.starts_with("min:") {
            Some("Table 1")
        } else if entry.id.starts_with("ext:") {
            Some("Table 2")
        } else {
            None
        };
        if let (Some(table), Some(v)) = (table, entry.expected.verdict) {
            let slot = splits.entry(table).or_default();
            match v {
                Verdict::Integrable => slot.0 += 1,
                Verdict::Nonintegrable => slot.1 += 1,
                Verdict::Inconclusive => slot.2 += 1,
            }
        }
    }
    for (table, (i, n, u)) in &splits {
        if *u == 0 {
            println!("{table} split: {i} integrable / {n} nonintegrable");
        } else {
            println!(
                "{table} split: {i} integrable / {n} nonintegrable / {u} inconclusive with bond symmetries"
            );
        }
    }
    if failures == 0 {
        println!("all {} catalog entries match the recorded classification", entries.len());
        Ok(0)
    } else {
        Err(SpinError::Precondition(format!(
            "{failures} catalog entries diverge from the recorded classification"
        )))
    }
}
