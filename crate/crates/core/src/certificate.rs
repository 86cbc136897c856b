//! The certificate document and its JSON and Markdown renderings.

use serde::Serialize;

use crate::admissibility::AdmissibilityCertificate;
use crate::charts::{BlowupCenter, FiberSmoothness, SpotCheck};
use crate::conespec::ToricSummary;
use crate::exactnum::QuadExt;
use crate::transverse::{AxisCheck, Check, InferenceStatus};

pub const SCHEMA: &str = "cy-cert/1";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    pub schema: String,
    pub name: String,
    pub tolerance: f64,
    pub presentation: PresentationSection,
    pub toric: Option<ToricSummary>,
    pub smoothing: SmoothingSection,
    pub transverse: Vec<TransverseSection>,
    pub admissibility: Option<AdmissibilityCertificate>,
    pub charts: Vec<ChartSection>,
    pub fibers: Vec<FiberSection>,
    pub spot_check: Option<SpotCheck>,
    pub attestation: Attestation,
    pub open_questions: Vec<String>,
    pub verdict: FinalVerdict,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PresentationSection {
    pub variables: Vec<String>,
    pub polynomials: Vec<String>,
    pub weights: Vec<QuadExt>,
    pub degrees: Vec<QuadExt>,
    pub complex_dim: usize,
    pub validation: Vec<Check>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SmoothingSection {
    pub q: Vec<String>,
    pub ell: Vec<QuadExt>,
    pub epsilon0: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransverseSection {
    /// 1-based.
    pub axis: usize,
    pub axis_check: AxisCheck,
    /// 1-based index of the polynomial singular along the axis.
    pub governing: Option<usize>,
    pub form: Option<String>,
    pub transverse_vars: Vec<String>,
    pub v: Vec<String>,
    pub d_s: Option<String>,
    pub status: Option<InferenceStatus>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChartSection {
    pub axis: usize,
    pub center: Option<BlowupCenter>,
    pub rate: Option<QuadExt>,
    pub xi_tilde_integral: Option<bool>,
    pub equations: Vec<String>,
    pub round_trip: Option<bool>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FiberSection {
    pub axis: usize,
    pub equations: Vec<String>,
    pub fiber_vars: Vec<String>,
    pub smoothness: FiberSmoothness,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Attestation {
    pub user_attested_orbifold: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FinalVerdict {
    pub status: String,
    pub stage: Option<String>,
    pub reason: Option<String>,
    pub detail: Option<String>,
}

impl FinalVerdict {
    pub fn certified() -> Self {
        FinalVerdict {
            status: "certified".into(),
            stage: None,
            reason: None,
            detail: None,
        }
    }

    pub fn rejected(stage: &str, reason: &str, detail: impl Into<String>) -> Self {
        FinalVerdict {
            status: "rejected".into(),
            stage: Some(stage.into()),
            reason: Some(reason.into()),
            detail: Some(detail.into()),
        }
    }

    pub fn is_certified(&self) -> bool {
        self.status == "certified"
    }
}

impl Certificate {
    pub fn is_certified(&self) -> bool {
        self.verdict.is_certified()
    }

    /// Pretty JSON with a trailing newline; field order is fixed by the types.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serializes");
        s.push('\n');
        s
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("certificate serializes")
    }

    pub fn to_markdown(&self) -> String {
        let mut md = String::new();
        let push = |md: &mut String, line: String| {
            md.push_str(&line);
            md.push('\n');
        };
        push(&mut md, format!("# Certificate: {}", self.name));
        push(&mut md, String::new());
        let v = &self.verdict;
        match (&v.stage, &v.reason) {
            (Some(stage), Some(reason)) => push(
                &mut md,
                format!(
                    "**Verdict:** rejected at stage `{stage}` ({reason}){}",
                    v.detail.as_deref().map(|d| format!(": {d}")).unwrap_or_default()
                ),
            ),
            _ => push(&mut md, "**Verdict:** certified".into()),
        }
        push(&mut md, String::new());
        push(&mut md, "## Presentation".into());
        push(&mut md, String::new());
        for (p, d) in self.presentation.polynomials.iter().zip(&self.presentation.degrees) {
            push(&mut md, format!("- `{p} = 0`, degree `{d}`"));
        }
        let weights: Vec<String> = self.presentation.weights.iter().map(|w| w.to_string()).collect();
        push(&mut md, format!("- weights `({})`", weights.join(", ")));
        for c in &self.presentation.validation {
            let mark = if c.passed { "pass" } else { "FAIL" };
            push(&mut md, format!("- {mark}: {} ({})", c.name, c.detail));
        }
        if let Some(t) = &self.toric {
            push(&mut md, String::new());
            push(&mut md, "## Reeb vector".into());
            push(&mut md, String::new());
            push(
                &mut md,
                format!("- xi = ({:.12}, {:.12}, {:.12}), volume {:.12}", t.xi[0], t.xi[1], t.xi[2], t.volume),
            );
            if let Some(x) = &t.xi_exact {
                push(&mut md, format!("- exact: ({}, {}, {})", x[0], x[1], x[2]));
            }
            if t.inexact {
                push(&mut md, "- weights are rounded floating-point values".into());
            }
        }
        push(&mut md, String::new());
        push(&mut md, "## Transverse cones".into());
        push(&mut md, String::new());
        for t in &self.transverse {
            match (&t.form, &t.d_s) {
                (Some(f), Some(ds)) => push(
                    &mut md,
                    format!("- axis z{}: `{f}`, v = ({}), d_s = {ds}", t.axis, t.v.join(", ")),
                ),
                _ => push(
                    &mut md,
                    format!("- axis z{}: {}", t.axis, t.error.as_deref().unwrap_or("not computed")),
                ),
            }
        }
        if let Some(a) = &self.admissibility {
            push(&mut md, String::new());
            push(&mut md, "## Admissibility".into());
            push(&mut md, String::new());
            let ell: Vec<String> = self.smoothing.ell.iter().map(|e| e.to_string()).collect();
            push(&mut md, format!("- l = ({}), d_s = {}", ell.join(", "), a.d_s));
            if let (Some(nu), Some(beta)) = (&a.nu, &a.beta) {
                push(&mut md, format!("- nu = {nu}, beta = {beta}, branch {:?}", a.branch));
            }
        }
        if !self.charts.is_empty() {
            push(&mut md, String::new());
            push(&mut md, "## Charts at infinity".into());
            for c in &self.charts {
                push(&mut md, String::new());
                push(&mut md, format!("Axis z{}:", c.axis));
                push(&mut md, String::new());
                push(&mut md, "```".into());
                for e in &c.equations {
                    push(&mut md, e.clone());
                }
                if let Some(err) = &c.error {
                    push(&mut md, format!("error: {err}"));
                }
                push(&mut md, "```".into());
            }
        }
        if !self.fibers.is_empty() {
            push(&mut md, String::new());
            push(&mut md, "## Fibers".into());
            push(&mut md, String::new());
            for f in &self.fibers {
                let verdict = match &f.smoothness {
                    FiberSmoothness::Smooth { .. } => "smooth (exact)".to_string(),
                    FiberSmoothness::Singular { witness, .. } => {
                        let w: Vec<String> = witness.iter().map(|(n, v)| format!("{n} = {v}")).collect();
                        format!("singular at {}", w.join(", "))
                    }
                    FiberSmoothness::InconclusiveSmooth { samples, .. } => {
                        format!("no singular point found over {samples} circle samples (probabilistic)")
                    }
                };
                push(&mut md, format!("- axis z{}: `{}`: {verdict}", f.axis, f.equations.join("`, `")));
            }
        }
        if !self.open_questions.is_empty() {
            push(&mut md, String::new());
            push(&mut md, "## Not determined".into());
            push(&mut md, String::new());
            for q in &self.open_questions {
                push(&mut md, format!("- {q}"));
            }
        }
        md
    }
}
