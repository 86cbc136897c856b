//! Re-runs the bundled specs and diffs the certificates and chart text
//! against the stored fixtures.
//!
//! Layout of a fixtures directory:
//! `specs/<name>.toml`, `expected/<name>.json`, and `charts/<name>.txt`
//! for every case whose certificate carries charts.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use serde_json::Value;

use crate::certificate::Certificate;
use crate::conespec::ConeSpec;
use crate::pipeline::{run_pipeline, PipelineOptions};

#[derive(Debug, thiserror::Error)]
pub enum ReproError {
    #[error("fixtures directory {0} has no specs/ subdirectory")]
    NoSpecs(PathBuf),
    #[error("missing fixture {0}")]
    MissingFixture(PathBuf),
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("invalid fixture {path}: {detail}")]
    Invalid { path: PathBuf, detail: String },
    #[error("no bundled spec carries tag `{0}`")]
    UnknownTag(String),
}

/// One difference between a run and its fixture.
#[derive(Debug, Clone, PartialEq)]
pub struct Diff {
    /// JSON pointer into the certificate, or `charts:<line>` for chart text.
    pub path: String,
    pub expected: String,
    pub actual: String,
}

impl fmt::Display for Diff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: expected {}, got {}", self.path, self.expected, self.actual)
    }
}

#[derive(Debug, Clone)]
pub struct CaseReport {
    pub name: String,
    pub certified: bool,
    pub diffs: Vec<Diff>,
}

#[derive(Debug, Clone, Default)]
pub struct ReproReport {
    pub cases: Vec<CaseReport>,
    /// Fixture files written in bless mode.
    pub written: Vec<PathBuf>,
}

impl ReproReport {
    pub fn diff_count(&self) -> usize {
        self.cases.iter().map(|c| c.diffs.len()).sum()
    }

    pub fn is_clean(&self) -> bool {
        self.diff_count() == 0
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.cases {
            let verdict = if c.certified { "certified" } else { "rejected" };
            if c.diffs.is_empty() {
                out.push_str(&format!("ok    {} ({verdict})\n", c.name));
            } else {
                out.push_str(&format!("DIFF  {} ({verdict}): {} difference(s)\n", c.name, c.diffs.len()));
                for d in &c.diffs {
                    out.push_str(&format!("      {d}\n"));
                }
            }
        }
        for p in &self.written {
            out.push_str(&format!("wrote {}\n", p.display()));
        }
        out.push_str(&format!("{} case(s), {} difference(s)\n", self.cases.len(), self.diff_count()));
        out
    }
}

#[derive(Debug, Clone, Default)]
pub struct ReproOptions {
    pub only_tag: Option<String>,
    /// Overwrite `expected/` and `charts/` with the current output.
    pub bless: bool,
    pub pipeline: PipelineOptions,
}

/// Fixtures shipped with this crate.
pub fn bundled_fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

/// Chart and fiber equations in the layout of `charts/<name>.txt`.
pub fn chart_report(cert: &Certificate) -> String {
    let mut out = String::new();
    for c in &cert.charts {
        out.push_str(&format!("[axis {} chart]\n", c.axis));
        for e in &c.equations {
            out.push_str(e);
            out.push('\n');
        }
        if let Some(err) = &c.error {
            out.push_str(&format!("error: {err}\n"));
        }
        if let Some(f) = cert.fibers.iter().find(|f| f.axis == c.axis) {
            out.push_str(&format!("[axis {} fiber]\n", c.axis));
            for e in &f.equations {
                out.push_str(e);
                out.push('\n');
            }
        }
    }
    out
}

fn read(path: &Path) -> Result<String, ReproError> {
    if !path.exists() {
        return Err(ReproError::MissingFixture(path.to_path_buf()));
    }
    fs::read_to_string(path).map_err(|source| ReproError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<(), ReproError> {
    if let Some(dir) = path.parent() {
        fs::create_dir_all(dir).map_err(|source| ReproError::Io {
            path: dir.to_path_buf(),
            source,
        })?;
    }
    fs::write(path, text).map_err(|source| ReproError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Loads every spec under `fixtures/specs`, sorted by file name.
pub fn load_specs(fixtures: &Path) -> Result<Vec<(PathBuf, ConeSpec)>, ReproError> {
    let dir = fixtures.join("specs");
    if !dir.is_dir() {
        return Err(ReproError::NoSpecs(fixtures.to_path_buf()));
    }
    let entries = fs::read_dir(&dir).map_err(|source| ReproError::Io {
        path: dir.clone(),
        source,
    })?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "toml"))
        .collect();
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let text = read(&p)?;
            let spec = ConeSpec::from_toml(&text).map_err(|e| ReproError::Invalid {
                path: p.clone(),
                detail: e.to_string(),
            })?;
            Ok((p, spec))
        })
        .collect()
}

pub fn reproduce_paper(fixtures: &Path, opts: &ReproOptions) -> Result<ReproReport, ReproError> {
    let mut specs = load_specs(fixtures)?;
    if let Some(tag) = &opts.only_tag {
        specs.retain(|(_, s)| s.tags.iter().any(|t| t == tag));
        if specs.is_empty() {
            return Err(ReproError::UnknownTag(tag.clone()));
        }
    }
    let certs = run_all(&specs, &opts.pipeline)?;

    let mut report = ReproReport::default();
    for ((_, spec), cert) in specs.iter().zip(certs) {
        let json_path = fixtures.join("expected").join(format!("{}.json", spec.name));
        let chart_path = fixtures.join("charts").join(format!("{}.txt", spec.name));
        let charts = chart_report(&cert);
        if opts.bless {
            write(&json_path, &cert.to_json())?;
            report.written.push(json_path);
            if !charts.is_empty() {
                write(&chart_path, &charts)?;
                report.written.push(chart_path);
            }
            report.cases.push(CaseReport {
                name: spec.name.clone(),
                certified: cert.is_certified(),
                diffs: Vec::new(),
            });
            continue;
        }
        let expected: Value = serde_json::from_str(&read(&json_path)?).map_err(|e| ReproError::Invalid {
            path: json_path.clone(),
            detail: e.to_string(),
        })?;
        let mut diffs = Vec::new();
        diff_json("", &expected, &cert.to_json_value(), &mut diffs);
        if !charts.is_empty() || chart_path.exists() {
            diff_lines(&read(&chart_path)?, &charts, &mut diffs);
        }
        report.cases.push(CaseReport {
            name: spec.name.clone(),
            certified: cert.is_certified(),
            diffs,
        });
    }
    Ok(report)
}

fn run_all(specs: &[(PathBuf, ConeSpec)], opts: &PipelineOptions) -> Result<Vec<Certificate>, ReproError> {
    let one = |(path, spec): &(PathBuf, ConeSpec)| {
        spec.resolve(None)
            .map(|r| run_pipeline(&r, opts))
            .map_err(|e| ReproError::Invalid {
                path: path.clone(),
                detail: e.to_string(),
            })
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        specs.par_iter().map(one).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        specs.iter().map(one).collect()
    }
}

const REL_TOL: f64 = 1e-9;

fn floats_match(a: f64, b: f64) -> bool {
    a == b || (a - b).abs() <= REL_TOL * a.abs().max(b.abs()).max(1.0)
}

fn short(v: &Value) -> String {
    let s = v.to_string();
    if s.chars().count() > 80 {
        format!("{}...", s.chars().take(77).collect::<String>())
    } else {
        s
    }
}

/// Recursive structural diff; integers compare exactly, other numbers at a relative tolerance.
pub fn diff_json(path: &str, expected: &Value, actual: &Value, out: &mut Vec<Diff>) {
    fn push(out: &mut Vec<Diff>, p: String, e: String, a: String) {
        out.push(Diff {
            path: if p.is_empty() { "/".into() } else { p },
            expected: e,
            actual: a,
        })
    }
    match (expected, actual) {
        (Value::Object(e), Value::Object(a)) => {
            for (k, ev) in e {
                let p = format!("{path}/{k}");
                match a.get(k) {
                    Some(av) => diff_json(&p, ev, av, out),
                    None => out.push(Diff {
                        path: p,
                        expected: short(ev),
                        actual: "<absent>".into(),
                    }),
                }
            }
            for (k, av) in a {
                if !e.contains_key(k) {
                    out.push(Diff {
                        path: format!("{path}/{k}"),
                        expected: "<absent>".into(),
                        actual: short(av),
                    });
                }
            }
        }
        (Value::Array(e), Value::Array(a)) => {
            for (i, (ev, av)) in e.iter().zip(a).enumerate() {
                diff_json(&format!("{path}/{i}"), ev, av, out);
            }
            if e.len() != a.len() {
                push(out, format!("{path}/length"), e.len().to_string(), a.len().to_string());
            }
        }
        (Value::Number(e), Value::Number(a)) => {
            let same = match (e.as_i64(), a.as_i64()) {
                (Some(x), Some(y)) => x == y,
                _ => match (e.as_f64(), a.as_f64()) {
                    (Some(x), Some(y)) => floats_match(x, y),
                    _ => e == a,
                },
            };
            if !same {
                push(out, path.to_string(), e.to_string(), a.to_string());
            }
        }
        (e, a) => {
            if e != a {
                push(out, path.to_string(), short(e), short(a));
            }
        }
    }
}

/// Byte-exact comparison of chart text, reported per line.
pub fn diff_lines(expected: &str, actual: &str, out: &mut Vec<Diff>) {
    if expected == actual {
        return;
    }
    let e: Vec<&str> = expected.split('\n').collect();
    let a: Vec<&str> = actual.split('\n').collect();
    for i in 0..e.len().max(a.len()) {
        let (x, y) = (e.get(i).copied(), a.get(i).copied());
        if x != y {
            out.push(Diff {
                path: format!("charts:{}", i + 1),
                expected: x.map(|s| format!("{s:?}")).unwrap_or_else(|| "<eof>".into()),
                actual: y.map(|s| format!("{s:?}")).unwrap_or_else(|| "<eof>".into()),
            });
        }
    }
}
