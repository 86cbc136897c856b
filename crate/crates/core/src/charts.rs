//! Weighted blow-up charts at infinity and smoothness of their fibers.
//!
//! Near the end of the `z_i`-axis the coordinates are `xi` with
//! `omega[i,j] = xi^{w_j} z_j`, and the blow-up along the axis introduces
//! `zeta[i,j] = omega[i,j] / xi~^{v_j}` with `xi~ = xi^r`, `r = (d - l) / d_s`.
//! Exponents of `xi` are tracked exactly; they are printed as powers of `xi~`
//! whenever all of them are integral multiples of `r`.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num_complex::Complex64;
use num_rational::BigRational;
#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::admissibility::{FiberCheck, SmoothingCandidate};
use crate::exactnum::{ExactError, GaussRat, QuadExt};
use crate::numeric::{critical_system, PolySystem};
use crate::transverse::{ConePresentation, TransverseCone};
use crate::wpoly::{render_monomial, render_signed_sum, weighted_degree, Monomial, WPoly, WPolyError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ChartError {
    #[error("equation {equation}: term {term} has negative exponent {exponent} of xi")]
    NegativeExponent {
        equation: usize,
        term: String,
        exponent: String,
    },
    #[error("blow-up rate (d - l) / d_s = {0} is not positive")]
    NonPositiveRate(String),
    #[error("smoothing has {got} polynomials for {expected} equations")]
    Shape { expected: usize, got: usize },
    #[error("pull-back of equation {equation} is not homogeneous of degree {degree}")]
    RoundTrip { equation: usize, degree: String },
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    WPoly(#[from] WPolyError),
}

/// Center of the blow-up along one axis.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BlowupCenter {
    pub axis: usize,
    /// Coordinates kept as `omega`, the axis included; 0-based.
    pub coordinate_subset: Vec<usize>,
    /// Coordinates replaced by `zeta`, with their weights `v`.
    pub blown_up: Vec<usize>,
    #[serde(serialize_with = "ser_rationals")]
    pub v: Vec<BigRational>,
    pub xi_weight: u32,
}

fn ser_rationals<S: serde::Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(crate::exactnum::fmt_rational))
}

impl BlowupCenter {
    pub fn from_transverse(tc: &TransverseCone) -> Self {
        BlowupCenter {
            axis: tc.axis(),
            coordinate_subset: tc.forms.retained.clone(),
            blown_up: tc.forms.transverse_vars.clone(),
            v: tc.weights.v.clone(),
            xi_weight: 1,
        }
    }

    fn weight_of(&self, j: usize) -> Option<&BigRational> {
        self.blown_up.iter().position(|&b| b == j).map(|p| &self.v[p])
    }

    /// Chart coordinate names: `omega[i,j]` for kept and `zeta[i,j]` for blown-up coordinates.
    pub fn names(&self, n: usize) -> Vec<String> {
        let i = self.axis + 1;
        (0..n)
            .map(|j| {
                if self.blown_up.contains(&j) {
                    format!("zeta[{i},{}]", j + 1)
                } else {
                    format!("omega[{i},{}]", j + 1)
                }
            })
            .collect()
    }
}

/// `coefficient * xi^xi_exp * monomial` in chart coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartTerm {
    pub coefficient: GaussRat,
    pub xi_exp: QuadExt,
    pub monomial: Monomial,
}

/// One equation `lhs = rhs` after clearing the common power `xi^divisor`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartEquation {
    pub lhs: Vec<ChartTerm>,
    pub rhs: Vec<ChartTerm>,
    pub divisor: QuadExt,
    /// Weighted degree of the original defining polynomial.
    pub degree: QuadExt,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Chart {
    pub center: BlowupCenter,
    /// Exponent `r` with `xi~ = xi^r`.
    pub rate: QuadExt,
    pub equations: Vec<ChartEquation>,
    pub names: Vec<String>,
    pub epsilon0: GaussRat,
    weights: Vec<QuadExt>,
}

fn sort_terms(terms: &mut [ChartTerm]) {
    terms.sort_by(|a, b| {
        b.monomial
            .cmp(&a.monomial)
            .then_with(|| a.xi_exp.cmp_exact(&b.xi_exp).unwrap_or(Ordering::Equal))
    });
}

/// Rewrites `P_k = eps0 Q_k` in the chart of `tc`'s axis.
pub fn chart_substitution(
    cp: &ConePresentation,
    sc: &SmoothingCandidate,
    tc: &TransverseCone,
) -> Result<Chart, ChartError> {
    let k_eq = cp.polys().len();
    if sc.q.len() != k_eq {
        return Err(ChartError::Shape {
            expected: k_eq,
            got: sc.q.len(),
        });
    }
    let center = BlowupCenter::from_transverse(tc);
    let g = tc.forms.governing;
    let rate = cp.degrees()[g]
        .try_sub(&sc.ell[g])?
        .try_div(&tc.weights.d_s_exact())?;
    if !rate.is_positive() {
        return Err(ChartError::NonPositiveRate(rate.to_string()));
    }
    let names = center.names(cp.ambient_dim());
    // exponent of xi gained by a monomial from its blown-up factors
    let blow_shift = |m: &Monomial| -> QuadExt {
        let s = m
            .exponents()
            .iter()
            .enumerate()
            .filter_map(|(j, &a)| center.weight_of(j).map(|v| v * BigRational::from_integer(a.into())))
            .fold(BigRational::from_integer(0.into()), |acc, x| acc + x);
        rate.scale(&s)
    };
    let mut equations = Vec::with_capacity(k_eq);
    for (k, (p, q)) in cp.polys().iter().zip(&sc.q).enumerate() {
        let d = &cp.degrees()[k];
        let side = |poly: &WPoly, scale: &GaussRat| -> Result<Vec<ChartTerm>, ChartError> {
            let mut out = Vec::new();
            for (m, c) in poly.terms() {
                let deg = weighted_degree(m, cp.weights())?;
                let xi_exp = d.try_sub(&deg)?.try_add(&blow_shift(m))?;
                out.push(ChartTerm {
                    coefficient: c * scale,
                    xi_exp,
                    monomial: m.clone(),
                });
            }
            Ok(out)
        };
        let mut lhs = side(p, &GaussRat::one())?;
        let mut rhs = side(q, &sc.epsilon0)?;
        if sc.epsilon0.is_zero() {
            rhs.clear();
        }
        let mut divisor: Option<QuadExt> = None;
        for t in &lhs {
            divisor = Some(match divisor {
                None => t.xi_exp.clone(),
                Some(dv) => dv.min_exact(&t.xi_exp),
            });
        }
        let divisor = divisor.unwrap_or_else(QuadExt::zero);
        for t in lhs.iter_mut().chain(rhs.iter_mut()) {
            t.xi_exp = t.xi_exp.try_sub(&divisor)?;
            if t.xi_exp.signum() < 0 {
                return Err(ChartError::NegativeExponent {
                    equation: k + 1,
                    term: render_monomial(&t.monomial, &names),
                    exponent: t.xi_exp.to_string(),
                });
            }
        }
        sort_terms(&mut lhs);
        sort_terms(&mut rhs);
        equations.push(ChartEquation {
            lhs,
            rhs,
            divisor,
            degree: d.clone(),
        });
    }
    Ok(Chart {
        center,
        rate,
        equations,
        names,
        epsilon0: sc.epsilon0.clone(),
        weights: cp.weights().weights().to_vec(),
    })
}

impl Chart {
    pub fn axis(&self) -> usize {
        self.center.axis
    }

    fn terms(&self) -> impl Iterator<Item = &ChartTerm> {
        self.equations.iter().flat_map(|e| e.lhs.iter().chain(&e.rhs))
    }

    /// True when every exponent is an integer power of `xi~`.
    pub fn integral_in_xi_tilde(&self) -> bool {
        self.terms().all(|t| {
            t.xi_exp
                .try_div(&self.rate)
                .map(|x| x.is_integer())
                .unwrap_or(false)
        })
    }

    fn xi_factor(&self, e: &QuadExt, tilde: bool) -> Option<String> {
        if e.is_zero() {
            return None;
        }
        if tilde {
            let n = e.try_div(&self.rate).expect("integral exponent");
            return Some(if n == QuadExt::one() { "xi~".into() } else { format!("xi~^{n}") });
        }
        Some(if e.is_integer() { format!("xi^{e}") } else { format!("xi^({e})") })
    }

    fn render_side(&self, terms: &[ChartTerm], tilde: bool) -> String {
        let mut it = terms.iter().map(|t| {
            let mono = render_monomial(&t.monomial, &self.names);
            let text = match (self.xi_factor(&t.xi_exp, tilde), mono.is_empty()) {
                (Some(x), false) => format!("{x}*{mono}"),
                (Some(x), true) => x,
                (None, _) => mono,
            };
            (t.coefficient.clone(), text)
        });
        render_signed_sum(&mut it)
    }

    /// One line per equation, `lhs = rhs`.
    pub fn render_lines(&self) -> Vec<String> {
        let tilde = self.integral_in_xi_tilde();
        self.equations
            .iter()
            .map(|e| format!("{} = {}", self.render_side(&e.lhs, tilde), self.render_side(&e.rhs, tilde)))
            .collect()
    }

    pub fn render(&self) -> String {
        let mut s = self.render_lines().join("\n");
        s.push('\n');
        s
    }

    /// Substitutes the chart map back into every term and clears `xi^d`.
    /// Each term must land in degree exactly `d`; returns `lhs - rhs` per equation.
    pub fn pull_back(&self) -> Result<Vec<WPoly>, ChartError> {
        let n = self.names.len();
        let mut out = Vec::with_capacity(self.equations.len());
        for (k, eq) in self.equations.iter().enumerate() {
            let mut poly = WPoly::zero(n);
            for (t, sign) in eq.lhs.iter().map(|t| (t, 1)).chain(eq.rhs.iter().map(|t| (t, -1))) {
                let mut total = t.xi_exp.try_add(&eq.divisor)?;
                for (j, &a) in t.monomial.exponents().iter().enumerate() {
                    let mut wj = self.weights[j].clone();
                    if let Some(v) = self.center.weight_of(j) {
                        wj = wj.try_sub(&self.rate.scale(v))?;
                    }
                    total = total.try_add(&wj.scale(&BigRational::from_integer(a.into())))?;
                }
                if total != eq.degree {
                    return Err(ChartError::RoundTrip {
                        equation: k + 1,
                        degree: eq.degree.to_string(),
                    });
                }
                let c = if sign > 0 { t.coefficient.clone() } else { -&t.coefficient };
                poly.add_term(t.monomial.clone(), c);
            }
            out.push(poly);
        }
        Ok(out)
    }

    /// Restriction to the blow-up face `xi = 0`, with forced coordinates removed.
    pub fn fiber(&self) -> FiberVariety {
        fiber_equation(self)
    }
}

/// One fiber equation. A forced equation reads `variable = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct FiberEquation {
    pub lhs: WPoly,
    pub rhs: WPoly,
    pub forced_zero: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FiberVariety {
    pub axis: usize,
    pub equations: Vec<FiberEquation>,
    pub names: Vec<String>,
    /// Coordinates of the fiber: blown-up and unforced kept coordinates.
    pub fiber_vars: Vec<usize>,
    pub epsilon0: GaussRat,
}

pub fn fiber_equation(chart: &Chart) -> FiberVariety {
    let n = chart.names.len();
    let axis = chart.axis();
    let side = |terms: &[ChartTerm]| {
        let mut p = WPoly::zero(n);
        for t in terms.iter().filter(|t| t.xi_exp.is_zero()) {
            p.add_term(t.monomial.clone(), t.coefficient.clone());
        }
        p
    };
    let mut eqs: Vec<FiberEquation> = chart
        .equations
        .iter()
        .map(|e| FiberEquation {
            lhs: side(&e.lhs),
            rhs: side(&e.rhs),
            forced_zero: None,
        })
        .collect();
    let retained: Vec<usize> = chart.center.coordinate_subset.clone();
    let mut forced: Vec<usize> = Vec::new();
    loop {
        let hit = eqs.iter().enumerate().find_map(|(idx, e)| {
            if e.forced_zero.is_some() {
                return None;
            }
            let f = e.lhs.sub(&e.rhs);
            if f.num_terms() != 1 {
                return None;
            }
            let vars = f.variables();
            if !vars.iter().all(|v| retained.contains(v)) {
                return None;
            }
            match vars.iter().filter(|&&v| v != axis).collect::<Vec<_>>().as_slice() {
                [v] => Some((idx, **v)),
                _ => None,
            }
        });
        let Some((idx, var)) = hit else { break };
        forced.push(var);
        let x = WPoly::var(n, var);
        eqs[idx] = FiberEquation {
            lhs: x,
            rhs: WPoly::zero(n),
            forced_zero: Some(var),
        };
        for (j, e) in eqs.iter_mut().enumerate() {
            if j != idx && e.forced_zero.is_none() {
                e.lhs = e.lhs.set_zero(&[var]);
                e.rhs = e.rhs.set_zero(&[var]);
            }
        }
    }
    let fiber_vars: Vec<usize> = (0..n)
        .filter(|&j| j != axis && !forced.contains(&j))
        .collect();
    FiberVariety {
        axis,
        equations: eqs,
        names: chart.names.clone(),
        fiber_vars,
        epsilon0: chart.epsilon0.clone(),
    }
}

impl FiberVariety {
    pub fn render_lines(&self) -> Vec<String> {
        self.equations
            .iter()
            .map(|e| match e.forced_zero {
                Some(v) => format!("{} = 0", self.names[v]),
                None => format!("{} = {}", e.lhs.display_with(&self.names), e.rhs.display_with(&self.names)),
            })
            .collect()
    }

    /// Equations `lhs - rhs` of the fiber in the fiber coordinates.
    pub fn system(&self) -> Vec<WPoly> {
        self.equations
            .iter()
            .filter(|e| e.forced_zero.is_none())
            .map(|e| e.lhs.sub(&e.rhs))
            .filter(|p| !p.is_zero())
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SmoothnessMethod {
    Exact,
    Numeric,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum FiberSmoothness {
    Smooth {
        method: SmoothnessMethod,
        trace: Vec<String>,
    },
    Singular {
        method: SmoothnessMethod,
        /// `(coordinate, value)` pairs; the circle parameter comes first.
        witness: Vec<(String, String)>,
    },
    /// No singular point found at any sampled circle parameter.
    InconclusiveSmooth {
        samples: usize,
        starts_per_sample: usize,
        tolerance: f64,
        min_residual: f64,
    },
}

impl FiberSmoothness {
    pub fn is_smooth(&self) -> bool {
        !matches!(self, FiberSmoothness::Singular { .. })
    }

    pub fn is_probabilistic(&self) -> bool {
        matches!(self, FiberSmoothness::InconclusiveSmooth { .. })
    }

    pub fn to_check(&self, axis: usize) -> FiberCheck {
        FiberCheck {
            axis,
            smooth: self.is_smooth(),
            probabilistic: self.is_probabilistic(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NumericOptions {
    pub samples: usize,
    pub starts: usize,
    pub tolerance: f64,
    pub seed: u64,
}

impl Default for NumericOptions {
    fn default() -> Self {
        NumericOptions {
            samples: 256,
            starts: 8,
            tolerance: 1e-10,
            seed: 0x5eed,
        }
    }
}

/// Exact elimination first, sampling of the circle parameter otherwise.
pub fn fiber_smoothness(fv: &FiberVariety, opts: &NumericOptions) -> FiberSmoothness {
    exact_smoothness(fv).unwrap_or_else(|| numeric_smoothness(fv, opts))
}

fn critical(fv: &FiberVariety) -> Vec<WPoly> {
    let eqs = fv.system();
    critical_system(&eqs, &fv.fiber_vars, fv.names.len())
}

/// Successive elimination on the equations and Jacobian minors. A monomial in a
/// single unknown coordinate forces it to vanish; a monomial in the circle
/// parameter alone cannot vanish. `None` when neither conclusion is reached.
pub fn exact_smoothness(fv: &FiberVariety) -> Option<FiberSmoothness> {
    let names = &fv.names;
    let circle = &names[fv.axis];
    let mut system = critical(fv);
    let mut zero: BTreeSet<usize> = BTreeSet::new();
    let mut trace = Vec::new();
    loop {
        let mut progressed = false;
        for p in &system {
            if p.num_terms() != 1 {
                continue;
            }
            let unknown: Vec<usize> = p
                .variables()
                .into_iter()
                .filter(|v| *v != fv.axis)
                .collect();
            match unknown.as_slice() {
                [] => {
                    trace.push(format!(
                        "{} = 0 has no solution with {circle} on the unit circle",
                        p.display_with(names)
                    ));
                    return Some(FiberSmoothness::Smooth {
                        method: SmoothnessMethod::Exact,
                        trace,
                    });
                }
                [v] if fv.fiber_vars.contains(v) && !zero.contains(v) => {
                    trace.push(format!("{} = 0 forces {} = 0", p.display_with(names), names[*v]));
                    zero.insert(*v);
                    progressed = true;
                }
                _ => {}
            }
        }
        if !progressed {
            break;
        }
        let zs: Vec<usize> = zero.iter().copied().collect();
        system = system
            .iter()
            .map(|p| p.set_zero(&zs))
            .filter(|p| !p.is_zero())
            .collect();
    }
    if system.is_empty() && fv.fiber_vars.iter().all(|v| zero.contains(v)) {
        let mut witness = vec![(circle.clone(), "1".to_string())];
        witness.extend(fv.fiber_vars.iter().map(|&v| (names[v].clone(), "0".to_string())));
        return Some(FiberSmoothness::Singular {
            method: SmoothnessMethod::Exact,
            witness,
        });
    }
    None
}

fn fmt_complex(z: Complex64) -> String {
    format!("{:.12e}{:+.12e}*i", z.re, z.im)
}

/// Samples the circle parameter at `opts.samples` points and searches for a
/// common zero of the equations and Jacobian minors at each.
pub fn numeric_smoothness(fv: &FiberVariety, opts: &NumericOptions) -> FiberSmoothness {
    let n = fv.names.len();
    let sys = PolySystem::new(critical(fv), fv.fiber_vars.clone());
    let run = |s: usize| {
        let theta = std::f64::consts::TAU * s as f64 / opts.samples as f64;
        let mut template = vec![Complex64::new(0.0, 0.0); n];
        template[fv.axis] = Complex64::from_polar(1.0, theta);
        let root = sys.search(&template, opts.starts, opts.seed.wrapping_add(s as u64), opts.tolerance);
        (s, root)
    };
    #[cfg(feature = "parallel")]
    let roots: Vec<_> = (0..opts.samples).into_par_iter().map(run).collect();
    #[cfg(not(feature = "parallel"))]
    let roots: Vec<_> = (0..opts.samples).map(run).collect();
    let mut min_residual = f64::INFINITY;
    for (_, root) in &roots {
        if root.residual <= opts.tolerance {
            let mut witness = vec![(fv.names[fv.axis].clone(), fmt_complex(root.point[fv.axis]))];
            witness.extend(fv.fiber_vars.iter().map(|&v| (fv.names[v].clone(), fmt_complex(root.point[v]))));
            return FiberSmoothness::Singular {
                method: SmoothnessMethod::Numeric,
                witness,
            };
        }
        min_residual = min_residual.min(root.residual);
    }
    FiberSmoothness::InconclusiveSmooth {
        samples: opts.samples,
        starts_per_sample: opts.starts,
        tolerance: opts.tolerance,
        min_residual,
    }
}

/// Result of searching `P = eps0 Q` itself for singular points.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpotCheck {
    pub singular_point_found: bool,
    pub starts: usize,
    pub tolerance: f64,
    pub min_residual: f64,
}

pub fn spot_check_smoothing(
    cp: &ConePresentation,
    sc: &SmoothingCandidate,
    starts: usize,
    tolerance: f64,
    seed: u64,
) -> SpotCheck {
    let n = cp.ambient_dim();
    let eqs: Vec<WPoly> = cp
        .polys()
        .iter()
        .zip(&sc.q)
        .map(|(p, q)| p.sub(&q.scale(&sc.epsilon0)))
        .collect();
    let vars: Vec<usize> = (0..n).collect();
    let sys = PolySystem::new(critical_system(&eqs, &vars, n), vars);
    let root = sys.search(&vec![Complex64::new(0.0, 0.0); n], starts, seed, tolerance);
    SpotCheck {
        singular_point_found: root.residual <= tolerance,
        starts,
        tolerance,
        min_residual: root.residual,
    }
}
