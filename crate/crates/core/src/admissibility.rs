//! Degree window, warping exponent and decay rate of a smoothing `P = eps Q`,
//! and the aggregate verdict.
//!
//! With `d`, `d_s` and `l` the degrees of `P`, of the transverse polynomial and
//! of the top part of `Q`, a smoothing is admissible when `d - d_s <= l < d` and
//! with `nu = (d_s - (d - l)) / d_s`, `beta = min(d_s, 4)` either
//! `beta > 2 / (1 - nu)` (branch A) or `3 < beta <= 2 / (1 - nu) < 9` (branch B).

use std::cmp::Ordering;

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exactnum::{ExactError, GaussRat, QuadExt};
use crate::transverse::{ConePresentation, TransverseCone};
use crate::wpoly::{WPoly, WPolyError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum AdmissibilityError {
    #[error("degree window violated: need {d} - {d_s} <= {ell} < {d}")]
    WindowViolated { d: String, d_s: String, ell: String },
    #[error("nu = {0} is outside [0, 1)")]
    NuOutOfRange(String),
    #[error("smoothing has {got} polynomials for {expected} defining equations")]
    Shape { expected: usize, got: usize },
    #[error("smoothing polynomial is zero")]
    ZeroSmoothing,
    #[error("missing fiber smoothness result for axis z{0}")]
    MissingFiber(usize),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    WPoly(#[from] WPolyError),
}

/// Right-hand sides `Q_j` of the smoothing, with their top degrees.
#[derive(Debug, Clone, PartialEq)]
pub struct SmoothingCandidate {
    pub q: Vec<WPoly>,
    pub ell: Vec<QuadExt>,
    pub epsilon0: GaussRat,
}

impl SmoothingCandidate {
    pub fn new(cp: &ConePresentation, q: Vec<WPoly>, epsilon0: GaussRat) -> Result<Self, AdmissibilityError> {
        if q.len() != cp.polys().len() {
            return Err(AdmissibilityError::Shape {
                expected: cp.polys().len(),
                got: q.len(),
            });
        }
        let ell = q
            .iter()
            .map(|qj| qj.top_degree(cp.weights())?.ok_or(AdmissibilityError::ZeroSmoothing))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SmoothingCandidate { q, ell, epsilon0 })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Window {
    pub ok: bool,
    /// `l - (d - d_s)`, nonnegative inside the window.
    pub lower_margin: QuadExt,
    /// `d - l`, positive inside the window.
    pub upper_margin: QuadExt,
}

pub fn degree_window(d: &QuadExt, d_s: &QuadExt, ell: &QuadExt) -> Result<Window, ExactError> {
    let lower_margin = ell.try_sub(&d.try_sub(d_s)?)?;
    let upper_margin = d.try_sub(ell)?;
    Ok(Window {
        ok: lower_margin.signum() >= 0 && upper_margin.signum() > 0,
        lower_margin,
        upper_margin,
    })
}

/// `nu = (d_s - (d - l)) / d_s` and `beta = min(d_s, 4)`.
pub fn compute_nu_beta(d: &QuadExt, d_s: &QuadExt, ell: &QuadExt) -> Result<(QuadExt, QuadExt), AdmissibilityError> {
    if !degree_window(d, d_s, ell)?.ok {
        return Err(AdmissibilityError::WindowViolated {
            d: d.to_string(),
            d_s: d_s.to_string(),
            ell: ell.to_string(),
        });
    }
    let nu = d_s.try_sub(&d.try_sub(ell)?)?.try_div(d_s)?;
    let four = QuadExt::from_int(4);
    let beta = if d_s.cmp_exact(&four)? == Ordering::Less {
        d_s.clone()
    } else {
        four
    };
    Ok((nu, beta))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Branch {
    /// `beta > 2 / (1 - nu)`.
    A,
    /// `3 < beta <= 2 / (1 - nu) < 9`.
    B,
    Fail,
}

pub fn rate_condition(nu: &QuadExt, beta: &QuadExt) -> Result<Branch, AdmissibilityError> {
    let one = QuadExt::one();
    if nu.signum() < 0 || nu.cmp_exact(&one)? != Ordering::Less {
        return Err(AdmissibilityError::NuOutOfRange(nu.to_string()));
    }
    let bound = QuadExt::from_int(2).try_div(&one.try_sub(nu)?)?;
    if beta.cmp_exact(&bound)? == Ordering::Greater {
        return Ok(Branch::A);
    }
    let three = QuadExt::from_int(3);
    let nine = QuadExt::from_int(9);
    if beta.cmp_exact(&three)? == Ordering::Greater && bound.cmp_exact(&nine)? == Ordering::Less {
        return Ok(Branch::B);
    }
    Ok(Branch::Fail)
}

/// Largest `nu` (exclusive) accepted by the rate condition for this `beta`;
/// `None` when no `nu >= 0` passes.
pub fn nu_supremum(beta: &QuadExt) -> Result<Option<QuadExt>, ExactError> {
    if beta.cmp_exact(&QuadExt::from_int(3))? == Ordering::Greater {
        return Ok(Some(QuadExt::from_ratio(7, 9)));
    }
    // branch A only: nu < 1 - 2 / beta
    let sup = QuadExt::one().try_sub(&QuadExt::from_int(2).try_div(beta)?)?;
    Ok((sup.signum() > 0).then_some(sup))
}

/// Half-open interval `[lo, hi)` of top degrees `l` that pass both the window
/// and the rate condition.
pub fn admissible_ell_interval(d: &QuadExt, d_s: &QuadExt) -> Result<Option<(QuadExt, QuadExt)>, ExactError> {
    let four = QuadExt::from_int(4);
    let beta = if d_s.cmp_exact(&four)? == Ordering::Less {
        d_s.clone()
    } else {
        four
    };
    let lo = d.try_sub(d_s)?;
    Ok(nu_supremum(&beta)?.map(|sup| {
        let hi = lo.try_add(&sup.try_mul(d_s).expect("same field")).expect("same field");
        (lo, hi)
    }))
}

/// Outcome of the fiber smoothness check along one axis.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FiberCheck {
    pub axis: usize,
    pub smooth: bool,
    /// Set when smoothness rests on sampling rather than a proof.
    pub probabilistic: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AssumptionFlags {
    pub axes_verified: bool,
    pub ds_uniform: bool,
    pub fiber_smooth: Vec<FiberCheck>,
    pub user_attested_orbifold: bool,
    /// `None` when no spot check of the smoothing was run.
    pub smoothing_spot_check: Option<bool>,
}

impl AssumptionFlags {
    pub fn all_pass(&self) -> bool {
        self.axes_verified
            && self.ds_uniform
            && self.fiber_smooth.iter().all(|f| f.smooth)
            && self.user_attested_orbifold
            && self.smoothing_spot_check != Some(false)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RejectReason {
    Window,
    NuNotUniform,
    Rate,
    AxesNotVerified,
    DsNotUniform,
    FiberNotSmooth,
    NotAttested,
    SpotCheckSingular,
}

impl RejectReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            RejectReason::Window => "window",
            RejectReason::NuNotUniform => "nu-not-uniform",
            RejectReason::Rate => "rate",
            RejectReason::AxesNotVerified => "axes-not-verified",
            RejectReason::DsNotUniform => "ds-not-uniform",
            RejectReason::FiberNotSmooth => "fiber-not-smooth",
            RejectReason::NotAttested => "not-attested",
            RejectReason::SpotCheckSingular => "spot-check-singular",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "reason", rename_all = "kebab-case")]
pub enum Verdict {
    Certified,
    Rejected(RejectReason),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdmissibilityCertificate {
    /// One window per defining polynomial.
    pub windows: Vec<Window>,
    pub window_ok: bool,
    pub d_s: QuadExt,
    pub nu: Option<QuadExt>,
    pub beta: Option<QuadExt>,
    pub branch: Option<Branch>,
    pub assumption_flags: AssumptionFlags,
    pub verdict: Verdict,
}

impl AdmissibilityCertificate {
    pub fn is_certified(&self) -> bool {
        self.verdict == Verdict::Certified
    }
}

/// Evidence gathered before the verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct Evidence<'a> {
    pub transverse: &'a [TransverseCone],
    pub axes_verified: bool,
    pub fiber: &'a [FiberCheck],
    pub user_attested_orbifold: bool,
    pub smoothing_spot_check: Option<bool>,
}

pub fn certify(
    cp: &ConePresentation,
    sc: &SmoothingCandidate,
    ev: &Evidence,
) -> Result<AdmissibilityCertificate, AdmissibilityError> {
    if sc.ell.len() != cp.degrees().len() {
        return Err(AdmissibilityError::Shape {
            expected: cp.degrees().len(),
            got: sc.ell.len(),
        });
    }
    let ds_uniform = crate::transverse::check_ds_uniform(ev.transverse);
    let d_s = ev
        .transverse
        .first()
        .map(|t| t.weights.d_s_exact())
        .unwrap_or_else(QuadExt::zero);
    let flags = AssumptionFlags {
        axes_verified: ev.axes_verified && !ev.transverse.is_empty(),
        ds_uniform,
        fiber_smooth: ev.fiber.to_vec(),
        user_attested_orbifold: ev.user_attested_orbifold,
        smoothing_spot_check: ev.smoothing_spot_check,
    };
    let windows = cp
        .degrees()
        .iter()
        .zip(&sc.ell)
        .map(|(d, ell)| degree_window(d, &d_s, ell))
        .collect::<Result<Vec<_>, _>>()?;
    let window_ok = d_s.signum() > 0 && windows.iter().all(|w| w.ok);
    let mut cert = AdmissibilityCertificate {
        windows,
        window_ok,
        d_s: d_s.clone(),
        nu: None,
        beta: None,
        branch: None,
        assumption_flags: flags,
        verdict: Verdict::Rejected(RejectReason::Window),
    };
    if !window_ok {
        return Ok(cert);
    }
    for tc in ev.transverse {
        if !ev.fiber.iter().any(|f| f.axis == tc.axis()) {
            return Err(AdmissibilityError::MissingFiber(tc.axis() + 1));
        }
    }
    let mut nus = Vec::new();
    let mut beta = QuadExt::zero();
    for (d, ell) in cp.degrees().iter().zip(&sc.ell) {
        let (nu, b) = compute_nu_beta(d, &d_s, ell)?;
        nus.push(nu);
        beta = b;
    }
    cert.beta = Some(beta.clone());
    if nus.windows(2).any(|w| w[0] != w[1]) {
        cert.verdict = Verdict::Rejected(RejectReason::NuNotUniform);
        return Ok(cert);
    }
    let nu = nus.swap_remove(0);
    let branch = rate_condition(&nu, &beta)?;
    cert.nu = Some(nu);
    cert.branch = Some(branch);
    let f = &cert.assumption_flags;
    cert.verdict = if branch == Branch::Fail {
        Verdict::Rejected(RejectReason::Rate)
    } else if !f.axes_verified {
        Verdict::Rejected(RejectReason::AxesNotVerified)
    } else if !f.ds_uniform {
        Verdict::Rejected(RejectReason::DsNotUniform)
    } else if !f.fiber_smooth.iter().all(|c| c.smooth) {
        Verdict::Rejected(RejectReason::FiberNotSmooth)
    } else if !f.user_attested_orbifold {
        Verdict::Rejected(RejectReason::NotAttested)
    } else if f.smoothing_spot_check == Some(false) {
        Verdict::Rejected(RejectReason::SpotCheckSingular)
    } else {
        Verdict::Certified
    };
    Ok(cert)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Enumeration<T> {
    pub evaluated: Vec<(i64, T)>,
}

impl Enumeration<AdmissibilityCertificate> {
    /// Parameters whose certificate is certified, ascending.
    pub fn certified(&self) -> Vec<i64> {
        self.evaluated
            .iter()
            .filter(|(_, c)| c.is_certified())
            .map(|(m, _)| *m)
            .collect()
    }
}

/// Evaluates `certify_one` on every parameter; output is in parameter order.
pub fn enumerate_admissible<T, F>(params: std::ops::RangeInclusive<i64>, certify_one: F) -> Enumeration<T>
where
    T: Send,
    F: Fn(i64) -> T + Sync + Send,
{
    let params: Vec<i64> = params.collect();
    #[cfg(feature = "parallel")]
    let evaluated = params.into_par_iter().map(|m| (m, certify_one(m))).collect();
    #[cfg(not(feature = "parallel"))]
    let evaluated = params.into_iter().map(|m| (m, certify_one(m))).collect();
    Enumeration { evaluated }
}
