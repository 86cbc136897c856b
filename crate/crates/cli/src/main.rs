//! Command-line front end: analyze, certify and enumerate cone specs, and
//! re-run the bundled examples against their fixtures.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use cycert::certificate::Certificate;
use cycert::conespec::{toric_weights, ConeSpec, ResolvedSpec, ToricSpec};
use cycert::pipeline::{analyze_spec, enumerate_spec, run_pipeline, PipelineOptions};
use cycert::reproduce::{bundled_fixtures, chart_report, reproduce_paper, ReproError, ReproOptions};
use cycert::toric::ToricDiagram;
use cycert::transverse::InferenceStatus;
use serde_json::json;

const EXIT_OK: u8 = 0;
const EXIT_DIFFS: u8 = 1;
const EXIT_REJECTED: u8 = 2;
const EXIT_INPUT: u8 = 3;

#[derive(Parser)]
#[command(name = "cycert", version, about = "Certify Calabi-Yau smoothings of weighted-homogeneous cones")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate the presentation and compute the transverse cones.
    Analyze(SpecArgs),
    /// Reeb vector and coordinate weights of a toric cone.
    Reeb(ReebArgs),
    /// Run every stage and emit a certificate.
    Certify(SpecArgs),
    /// Certify every member of the spec's family.
    Enumerate(SpecArgs),
    /// Charts at infinity and their fibers.
    Charts(SpecArgs),
    /// Re-run the bundled examples and diff against the stored fixtures.
    ReproducePaper(ReproArgs),
}

#[derive(Args)]
#[group(multiple = false)]
struct Format {
    /// Emit JSON.
    #[arg(long)]
    json: bool,
    /// Emit a Markdown report.
    #[arg(long)]
    markdown: bool,
}

#[derive(Args)]
struct SpecArgs {
    /// Cone spec file (TOML).
    spec: PathBuf,
    /// Use this member of the spec's family instead of its `[smoothing]`.
    #[arg(long)]
    param: Option<i64>,
    /// Residual tolerance of the numeric backends.
    #[arg(long, default_value_t = 1e-10)]
    tolerance: f64,
    /// Random starts for the singular-point search on the smoothing; 0 disables it.
    #[arg(long, default_value_t = 64)]
    spot_check_starts: usize,
    #[command(flatten)]
    format: Format,
}

#[derive(Args)]
struct ReebArgs {
    /// Cone spec file with a `[toric]` section.
    #[arg(required_unless_present = "ckl", conflicts_with = "ckl")]
    spec: Option<PathBuf>,
    /// Use the cone `C_{k,l}`, given as `K,L`.
    #[arg(long, value_name = "K,L", value_parser = parse_pair)]
    ckl: Option<(u32, u32)>,
    #[command(flatten)]
    format: Format,
}

#[derive(Args)]
struct ReproArgs {
    /// Fixtures directory holding `specs/`, `expected/` and `charts/`.
    #[arg(long)]
    fixtures: Option<PathBuf>,
    /// Only run specs carrying this tag.
    #[arg(long)]
    only: Option<String>,
    /// Overwrite the fixtures with the current output.
    #[arg(long)]
    bless: bool,
}

fn parse_pair(s: &str) -> Result<(u32, u32), String> {
    let parse = |t: &str| match t.trim().parse::<u32>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(format!("`{t}` is not a positive integer")),
    };
    match s.split_once(',') {
        Some((k, l)) => Ok((parse(k)?, parse(l)?)),
        None => Err("expected K,L".into()),
    }
}

/// Input or configuration problem; always exit code 3.
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Analyze(a) => analyze(&a),
        Command::Reeb(a) => reeb(&a),
        Command::Certify(a) => certify(&a),
        Command::Enumerate(a) => enumerate(&a),
        Command::Charts(a) => charts(&a),
        Command::ReproducePaper(a) => reproduce(&a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(InputError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}

fn load(path: &Path) -> Result<ConeSpec, InputError> {
    let text = fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    ConeSpec::from_toml(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn resolve(a: &SpecArgs) -> Result<ResolvedSpec, InputError> {
    Ok(load(&a.spec)?.resolve(a.param)?)
}

fn options(a: &SpecArgs) -> PipelineOptions {
    let mut o = PipelineOptions::with_tolerance(a.tolerance);
    o.spot_check_starts = a.spot_check_starts;
    o
}

fn verdict_code(cert: &Certificate) -> u8 {
    if cert.is_certified() {
        EXIT_OK
    } else {
        EXIT_REJECTED
    }
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json value serializes"));
}

fn analyze(a: &SpecArgs) -> Result<u8, InputError> {
    let r = analyze_spec(&resolve(a)?);
    if a.format.json {
        print!("{}", r.to_json());
    } else if a.format.markdown {
        print!("{}", r.to_markdown());
    } else {
        println!("{}", r.name);
        for (p, d) in r.presentation.polynomials.iter().zip(&r.presentation.degrees) {
            println!("  {p} = 0  (degree {d})");
        }
        for c in &r.presentation.validation {
            println!("  {} {}: {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail);
        }
        for t in &r.transverse {
            match (&t.form, &t.d_s) {
                (Some(f), Some(ds)) => {
                    let tie = if t.status == Some(InferenceStatus::SymmetricTieBreak) { " (symmetric tie-break)" } else { "" };
                    println!("  axis z{}: {f}, v = ({}), d_s = {ds}{tie}", t.axis, t.v.join(", "))
                }
                _ => println!("  axis z{}: {}", t.axis, t.error.as_deref().unwrap_or("not computed")),
            }
        }
        if let Some(f) = &r.failure {
            println!("rejected at {}: {}", f.stage.as_deref().unwrap_or("?"), f.detail.as_deref().unwrap_or(""));
        }
    }
    Ok(if r.passed() { EXIT_OK } else { EXIT_REJECTED })
}

fn reeb(a: &ReebArgs) -> Result<u8, InputError> {
    let (name, toric, n) = match (&a.spec, &a.ckl) {
        (_, Some((k, l))) => {
            let (k, l) = (*k, *l);
            let t = ToricSpec {
                diagram: ToricDiagram::ckl(k, l).points().to_vec(),
                ckl: Some([k, l]),
                variable_generators: None,
            };
            (format!("C_{{{k},{l}}}"), t, 4)
        }
        (Some(path), None) => {
            let spec = load(path)?;
            let t = spec
                .toric
                .clone()
                .ok_or_else(|| InputError(format!("{}: no [toric] section", path.display())))?;
            (spec.name.clone(), t, spec.variables.len())
        }
        (None, None) => unreachable!("clap requires a spec or --ckl"),
    };
    let (weights, summary) = toric_weights(&toric, n)?;
    let exact: Vec<String> = weights.weights().iter().map(|w| w.to_string()).collect();
    if a.format.json {
        print_json(&json!({
            "name": name,
            "reeb": summary,
            "weights": if summary.inexact { serde_json::Value::Null } else { json!(exact) },
        }));
        return Ok(EXIT_OK);
    }
    let xi = summary.xi;
    let lines = [
        format!("xi = ({:.12}, {:.12}, {:.12})", xi[0], xi[1], xi[2]),
        match &summary.xi_exact {
            Some(x) => format!("exact xi = ({}, {}, {})", x[0], x[1], x[2]),
            None => "no closed form recognized; weights are floating point".into(),
        },
        format!("volume = {:.12}", summary.volume),
        format!(
            "weights = ({})",
            summary.coordinate_weights.iter().map(|w| format!("{w:.12}")).collect::<Vec<_>>().join(", ")
        ),
    ];
    if a.format.markdown {
        println!("# Reeb vector: {name}\n");
        for l in &lines {
            println!("- {l}");
        }
        if !summary.inexact {
            println!("- exact weights = ({})", exact.join(", "));
        }
    } else {
        println!("{name}");
        for l in &lines {
            println!("  {l}");
        }
        if !summary.inexact {
            println!("  exact weights = ({})", exact.join(", "));
        }
    }
    Ok(EXIT_OK)
}

fn certify(a: &SpecArgs) -> Result<u8, InputError> {
    let cert = run_pipeline(&resolve(a)?, &options(a));
    if a.format.json {
        print!("{}", cert.to_json());
    } else if a.format.markdown {
        print!("{}", cert.to_markdown());
    } else {
        let v = &cert.verdict;
        match (&v.stage, &v.reason) {
            (Some(stage), Some(reason)) => {
                println!("{}: rejected at {stage} ({reason})", cert.name);
                if let Some(d) = &v.detail {
                    println!("  {d}");
                }
            }
            _ => {
                println!("{}: certified", cert.name);
                if let Some(adm) = &cert.admissibility {
                    if let (Some(nu), Some(beta)) = (&adm.nu, &adm.beta) {
                        println!("  d_s = {}, nu = {nu}, beta = {beta}", adm.d_s);
                    }
                }
            }
        }
    }
    Ok(verdict_code(&cert))
}

fn enumerate(a: &SpecArgs) -> Result<u8, InputError> {
    let spec = load(&a.spec)?;
    if a.param.is_some() {
        return Err(InputError("--param does not apply to enumerate".into()));
    }
    let e = enumerate_spec(&spec, &options(a))?;
    let parameter = spec.family.as_ref().map(|f| f.parameter.clone()).unwrap_or_default();
    let rows: Vec<serde_json::Value> = e
        .evaluated
        .iter()
        .map(|(m, c)| match c {
            Ok(cert) => json!({
                "param": m,
                "status": cert.verdict.status,
                "reason": cert.verdict.reason,
                "nu": cert.admissibility.as_ref().and_then(|a| a.nu.as_ref()).map(|n| n.to_string()),
            }),
            Err(err) => json!({ "param": m, "status": "error", "reason": err }),
        })
        .collect();
    if a.format.json {
        print_json(&json!({ "name": spec.name, "parameter": parameter, "members": rows }));
    } else {
        let md = a.format.markdown;
        if md {
            println!("| {parameter} | verdict | nu |\n|---|---|---|");
        } else {
            let range = spec.family_range().expect("enumerate_spec checked the family");
            println!("{}: {parameter} in [{}, {}]", spec.name, range.start(), range.end());
        }
        for r in &rows {
            let status = match r["reason"].as_str() {
                Some(reason) => format!("{} ({reason})", r["status"].as_str().unwrap_or("")),
                None => r["status"].as_str().unwrap_or("").to_string(),
            };
            let nu = r["nu"].as_str().unwrap_or("-");
            if md {
                println!("| {} | {status} | {nu} |", r["param"]);
            } else {
                println!("  {parameter} = {:<3} {status:<30} nu = {nu}", r["param"].to_string());
            }
        }
        let ok: Vec<String> = e
            .evaluated
            .iter()
            .filter(|(_, c)| c.as_ref().is_ok_and(|c| c.is_certified()))
            .map(|(m, _)| m.to_string())
            .collect();
        if !md {
            println!("certified: {{{}}}", ok.join(", "));
        }
    }
    Ok(EXIT_OK)
}

fn charts(a: &SpecArgs) -> Result<u8, InputError> {
    let cert = run_pipeline(&resolve(a)?, &options(a));
    if cert.charts.is_empty() {
        let v = &cert.verdict;
        eprintln!(
            "no charts: rejected at {} ({}): {}",
            v.stage.as_deref().unwrap_or("?"),
            v.reason.as_deref().unwrap_or("?"),
            v.detail.as_deref().unwrap_or("")
        );
        return Ok(EXIT_REJECTED);
    }
    if a.format.json {
        print_json(&json!({ "name": cert.name, "charts": cert.charts, "fibers": cert.fibers }));
    } else if a.format.markdown {
        println!("# Charts: {}\n\n```\n{}```", cert.name, chart_report(&cert));
    } else {
        print!("{}", chart_report(&cert));
    }
    Ok(verdict_code(&cert))
}

fn reproduce(a: &ReproArgs) -> Result<u8, InputError> {
    let opts = ReproOptions {
        only_tag: a.only.clone(),
        bless: a.bless,
        pipeline: PipelineOptions::default(),
    };
    let dir = a.fixtures.clone().unwrap_or_else(bundled_fixtures);
    let report = reproduce_paper(&dir, &opts).map_err(|e: ReproError| InputError(e.to_string()))?;
    print!("{}", report.render());
    Ok(if report.is_clean() { EXIT_OK } else { EXIT_DIFFS })
}
