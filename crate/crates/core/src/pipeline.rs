//! Runs every stage on one case and assembles the certificate. Mathematical
//! failures end up in the certificate; they are never returned as errors.

use num_rational::BigRational;
use serde::Serialize;

use crate::admissibility::{certify, degree_window, enumerate_admissible, Enumeration, Evidence, FiberCheck};
use crate::certificate::{
    Attestation, Certificate, ChartSection, FiberSection, FinalVerdict, PresentationSection, SmoothingSection,
    TransverseSection, SCHEMA,
};
use crate::charts::{chart_substitution, fiber_smoothness, spot_check_smoothing, NumericOptions};
use crate::conespec::{ConeSpec, ResolvedSpec, SpecError, ToricSummary};
use crate::families::Case;
use crate::transverse::{
    axis_singularity_check, transverse_cone, transverse_cone_with_weights, validate_presentation, TransverseCone,
};

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineOptions {
    pub numeric: NumericOptions,
    /// Multi-start count for the search for singular points of `P = eps0 Q`; 0 disables it.
    pub spot_check_starts: usize,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            numeric: NumericOptions::default(),
            spot_check_starts: 64,
        }
    }
}

impl PipelineOptions {
    pub fn with_tolerance(tolerance: f64) -> Self {
        let mut o = PipelineOptions::default();
        o.numeric.tolerance = tolerance;
        o
    }
}

const OPEN_QUESTIONS: [&str; 3] = [
    "regularity class C^k (k <= d_s) of the compactified smoothing is not computed",
    "the finite groups of the transverse cones are not identified",
    "orbifold smoothness of the cone metric is recorded from the attestation flag only",
];

pub fn run_pipeline(spec: &ResolvedSpec, opts: &PipelineOptions) -> Certificate {
    run(&spec.case, spec.toric.clone(), &spec.transverse_weights, opts)
}

pub fn run_case(case: &Case, opts: &PipelineOptions) -> Certificate {
    run(case, None, &[], opts)
}

/// Validation and transverse data only, without a smoothing analysis.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Analysis {
    pub schema: String,
    pub name: String,
    pub presentation: PresentationSection,
    pub toric: Option<ToricSummary>,
    pub transverse: Vec<TransverseSection>,
    /// `None` when both stages pass.
    pub failure: Option<FinalVerdict>,
}

impl Analysis {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("analysis serializes");
        s.push('\n');
        s
    }

    pub fn to_markdown(&self) -> String {
        let cert = Certificate {
            schema: self.schema.clone(),
            name: self.name.clone(),
            tolerance: 0.0,
            presentation: self.presentation.clone(),
            toric: self.toric.clone(),
            smoothing: SmoothingSection {
                q: Vec::new(),
                ell: Vec::new(),
                epsilon0: String::new(),
            },
            transverse: self.transverse.clone(),
            admissibility: None,
            charts: Vec::new(),
            fibers: Vec::new(),
            spot_check: None,
            attestation: Attestation {
                user_attested_orbifold: false,
            },
            open_questions: Vec::new(),
            verdict: self.failure.clone().unwrap_or_else(FinalVerdict::certified),
        };
        let md = cert.to_markdown().replacen("# Certificate:", "# Analysis:", 1);
        if self.passed() {
            md.replacen("**Verdict:** certified", "**Verdict:** presentation and transverse cones computed", 1)
        } else {
            md
        }
    }
}

pub fn analyze_spec(spec: &ResolvedSpec) -> Analysis {
    let (cert, _) = front(&spec.case, spec.toric.clone(), &spec.transverse_weights, &PipelineOptions::default());
    Analysis {
        schema: cert.schema,
        name: cert.name,
        presentation: cert.presentation,
        toric: cert.toric,
        transverse: cert.transverse,
        failure: (!cert.verdict.is_certified()).then_some(cert.verdict),
    }
}

/// Validation and transverse stages; a rejected verdict means later stages are skipped.
fn front(
    case: &Case,
    toric: Option<ToricSummary>,
    overrides: &[(usize, Vec<BigRational>)],
    opts: &PipelineOptions,
) -> (Certificate, Vec<TransverseCone>) {
    let cp = &case.cone;
    let sc = &case.smoothing;
    let names = cp.names();
    let validation = validate_presentation(cp);
    let mut cert = Certificate {
        schema: SCHEMA.into(),
        name: case.name.clone(),
        tolerance: opts.numeric.tolerance,
        presentation: PresentationSection {
            variables: names.to_vec(),
            polynomials: cp.polys().iter().map(|p| p.display_with(names)).collect(),
            weights: cp.weights().weights().to_vec(),
            degrees: cp.degrees().to_vec(),
            complex_dim: cp.complex_dim(),
            validation: validation.checks.clone(),
        },
        toric,
        smoothing: SmoothingSection {
            q: sc.q.iter().map(|q| q.display_with(names)).collect(),
            ell: sc.ell.clone(),
            epsilon0: sc.epsilon0.to_string(),
        },
        transverse: Vec::new(),
        admissibility: None,
        charts: Vec::new(),
        fibers: Vec::new(),
        spot_check: None,
        attestation: Attestation {
            user_attested_orbifold: case.attested_orbifold,
        },
        open_questions: OPEN_QUESTIONS.iter().map(|s| s.to_string()).collect(),
        verdict: FinalVerdict::certified(),
    };
    if !validation.passed() {
        let detail: Vec<String> = validation.failures().map(|c| format!("{}: {}", c.name, c.detail)).collect();
        cert.verdict = FinalVerdict::rejected("validation", "presentation", detail.join("; "));
        return (cert, Vec::new());
    }
    if cp.declared_axes().is_empty() {
        cert.verdict = FinalVerdict::rejected("transverse", "no-singular-axes", "no axes declared");
        return (cert, Vec::new());
    }

    let mut cones: Vec<TransverseCone> = Vec::new();
    let mut failure: Option<(String, String)> = None;
    for &axis in cp.declared_axes() {
        let check = match axis_singularity_check(cp, axis) {
            Ok(c) => c,
            Err(e) => {
                failure.get_or_insert(("axis".into(), e.to_string()));
                continue;
            }
        };
        let result = match overrides.iter().find(|(a, _)| *a == axis) {
            Some((_, v)) => transverse_cone_with_weights(cp, axis, v.clone()),
            None => transverse_cone(cp, axis),
        };
        let section = match &result {
            Ok(tc) => TransverseSection {
                axis: axis + 1,
                axis_check: check,
                governing: Some(tc.forms.governing + 1),
                form: Some(tc.forms.display(tc.forms.governing)),
                transverse_vars: tc.forms.transverse_vars.iter().map(|&j| tc.forms.names()[j].clone()).collect(),
                v: tc.weights.v.iter().map(crate::exactnum::fmt_rational).collect(),
                d_s: Some(crate::exactnum::fmt_rational(&tc.weights.d_s)),
                status: Some(tc.weights.status),
                error: None,
            },
            Err(e) => {
                let reason = if check.contained_in_singular_locus { "transverse-weights" } else { "axis-not-singular" };
                failure.get_or_insert((reason.into(), e.to_string()));
                TransverseSection {
                    axis: axis + 1,
                    axis_check: check,
                    governing: None,
                    form: None,
                    transverse_vars: Vec::new(),
                    v: Vec::new(),
                    d_s: None,
                    status: None,
                    error: Some(e.to_string()),
                }
            }
        };
        cert.transverse.push(section);
        if let Ok(tc) = result {
            cones.push(tc);
        }
    }
    if let Some((reason, detail)) = failure {
        cert.verdict = FinalVerdict::rejected("transverse", &reason, detail);
    }
    (cert, cones)
}

fn run(
    case: &Case,
    toric: Option<ToricSummary>,
    overrides: &[(usize, Vec<BigRational>)],
    opts: &PipelineOptions,
) -> Certificate {
    let (mut cert, cones) = front(case, toric, overrides, opts);
    if !cert.is_certified() {
        return cert;
    }
    let cp = &case.cone;
    let sc = &case.smoothing;

    let d_s = cones[0].weights.d_s_exact();
    let window_ok = cp
        .degrees()
        .iter()
        .zip(&sc.ell)
        .all(|(d, ell)| degree_window(d, &d_s, ell).map(|w| w.ok).unwrap_or(false));
    let mut fiber_checks: Vec<FiberCheck> = Vec::new();
    if window_ok {
        for tc in &cones {
            match chart_substitution(cp, sc, tc) {
                Ok(chart) => {
                    let round_trip = chart.pull_back().map(|pb| {
                        pb.iter()
                            .zip(cp.polys())
                            .zip(&sc.q)
                            .all(|((x, p), q)| *x == p.sub(&q.scale(&sc.epsilon0)))
                    });
                    cert.charts.push(ChartSection {
                        axis: tc.axis() + 1,
                        center: Some(chart.center.clone()),
                        rate: Some(chart.rate.clone()),
                        xi_tilde_integral: Some(chart.integral_in_xi_tilde()),
                        equations: chart.render_lines(),
                        round_trip: Some(round_trip.unwrap_or(false)),
                        error: None,
                    });
                    let fiber = chart.fiber();
                    let smooth = fiber_smoothness(&fiber, &opts.numeric);
                    fiber_checks.push(smooth.to_check(tc.axis()));
                    cert.fibers.push(FiberSection {
                        axis: tc.axis() + 1,
                        equations: fiber.render_lines(),
                        fiber_vars: fiber.fiber_vars.iter().map(|&j| fiber.names[j].clone()).collect(),
                        smoothness: smooth,
                    });
                }
                Err(e) => {
                    cert.charts.push(ChartSection {
                        axis: tc.axis() + 1,
                        center: None,
                        rate: None,
                        xi_tilde_integral: None,
                        equations: Vec::new(),
                        round_trip: None,
                        error: Some(e.to_string()),
                    });
                    cert.verdict = FinalVerdict::rejected("charts", "chart-invalid", e.to_string());
                }
            }
        }
        if !cert.verdict.is_certified() {
            return cert;
        }
        if cert.charts.iter().any(|c| c.round_trip == Some(false)) {
            cert.verdict = FinalVerdict::rejected("charts", "round-trip", "pull-back differs from P - eps0 Q");
            return cert;
        }
        if opts.spot_check_starts > 0 && !sc.epsilon0.is_zero() {
            cert.spot_check = Some(spot_check_smoothing(
                cp,
                sc,
                opts.spot_check_starts,
                opts.numeric.tolerance,
                opts.numeric.seed,
            ));
        }
    }

    let evidence = Evidence {
        transverse: &cones,
        axes_verified: cert.transverse.iter().all(|t| t.axis_check.contained_in_singular_locus),
        fiber: &fiber_checks,
        user_attested_orbifold: case.attested_orbifold,
        smoothing_spot_check: cert.spot_check.as_ref().map(|s| !s.singular_point_found),
    };
    match certify(cp, sc, &evidence) {
        Ok(adm) => {
            if let crate::admissibility::Verdict::Rejected(r) = adm.verdict {
                let detail = match r {
                    crate::admissibility::RejectReason::Window => {
                        let ell: Vec<String> = sc.ell.iter().map(|e| e.to_string()).collect();
                        let d: Vec<String> = cp.degrees().iter().map(|e| e.to_string()).collect();
                        format!("need d - d_s <= l < d with d = ({}), d_s = {}, l = ({})", d.join(", "), adm.d_s, ell.join(", "))
                    }
                    _ => format!("assumption check `{}` failed", r.as_str()),
                };
                cert.verdict = FinalVerdict::rejected("admissibility", r.as_str(), detail);
            }
            cert.admissibility = Some(adm);
        }
        Err(e) => {
            cert.verdict = FinalVerdict::rejected("admissibility", "error", e.to_string());
        }
    }
    cert
}

/// Certificates for every member of the spec's family, in parameter order.
pub fn enumerate_spec(
    spec: &ConeSpec,
    opts: &PipelineOptions,
) -> Result<Enumeration<Result<Certificate, String>>, SpecError> {
    let range = spec
        .family_range()
        .ok_or_else(|| SpecError::Invalid("spec has no [family] section".into()))?;
    // surface input errors before the parallel run
    spec.resolve(Some(*range.start()))?;
    Ok(enumerate_admissible(range, |m| {
        spec.resolve(Some(m))
            .map(|r| run_pipeline(&r, opts))
            .map_err(|e| e.to_string())
    }))
}

pub fn certified_params(e: &Enumeration<Result<Certificate, String>>) -> Vec<i64> {
    e.evaluated
        .iter()
        .filter(|(_, c)| c.as_ref().is_ok_and(|c| c.is_certified()))
        .map(|(m, _)| *m)
        .collect()
}
