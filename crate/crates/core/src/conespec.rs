//! TOML cone specifications.
//!
//! ```toml
//! name = "spp_k2_m2"
//! variables = ["z1", "z2", "z3", "z4"]
//! weights = "toric"                  # or a list such as ["3 - sqrt(3)", "sqrt(3)", ...]
//! polynomials = ["z1*z2^2 + z3^2 + z4^2"]
//! declared_axes = [1]                # 1-based
//! attest_orbifold = true
//!
//! [toric]
//! diagram = [[0, 0], [2, 0], [1, 1], [0, 1]]
//! ckl = [2, 1]                       # closed form used for exact recognition
//! variable_generators = [0, 2, 3, 1] # dual generator carrying each variable's weight
//!
//! [smoothing]
//! q = ["z1^2 + 1"]
//! epsilon0 = ["1", "0"]              # real and imaginary parts
//!
//! [family]                           # optional; `q` may use the parameter
//! parameter = "m"
//! range = [1, 6]
//! q = ["z1^m + 1"]
//! ```

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::admissibility::{AdmissibilityError, SmoothingCandidate};
use crate::exactnum::{GaussRat, QuadExt};
use crate::expr::{parse_quadext, parse_rational, parse_with_params, ExprError};
use crate::families::Case;
use crate::toric::{
    coordinate_weights, coordinate_weights_exact, dual_generators, minimize_reeb, rays_from_diagram,
    recognize_ckl, ToricDiagram, ToricError,
};
use crate::transverse::{ConePresentation, TransverseError};
use crate::wpoly::{Multiweight, WPoly, WPolyError};

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("cannot read spec: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("{field}: {source}")]
    Expr {
        field: String,
        #[source]
        source: ExprError,
    },
    #[error("{0}")]
    Invalid(String),
    #[error("toric stage: {0}")]
    Toric(#[from] ToricError),
    #[error(transparent)]
    Transverse(#[from] TransverseError),
    #[error(transparent)]
    WPoly(#[from] WPolyError),
    #[error(transparent)]
    Admissibility(#[from] AdmissibilityError),
}

/// A number or a string expression.
#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

impl Scalar {
    fn text(&self) -> String {
        match self {
            Scalar::Int(n) => n.to_string(),
            Scalar::Text(s) => s.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
#[serde(untagged)]
pub enum WeightSpec {
    Keyword(String),
    List(Vec<Scalar>),
}

#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ToricSpec {
    pub diagram: Vec<[i64; 2]>,
    pub ckl: Option<[u32; 2]>,
    pub variable_generators: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct SmoothingSpec {
    pub q: Vec<String>,
    pub epsilon0: Option<[Scalar; 2]>,
}

#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    pub parameter: String,
    pub range: [i64; 2],
    pub q: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct TransverseOverride {
    pub axis: usize,
    pub v: Vec<Scalar>,
}

#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ConeSpec {
    pub name: String,
    pub variables: Vec<String>,
    pub weights: WeightSpec,
    pub polynomials: Vec<String>,
    pub declared_axes: Vec<usize>,
    #[serde(default)]
    pub attest_orbifold: bool,
    pub toric: Option<ToricSpec>,
    pub smoothing: SmoothingSpec,
    pub family: Option<FamilySpec>,
    #[serde(default)]
    pub transverse_weights: Vec<TransverseOverride>,
    /// Labels used to select subsets of bundled specs.
    #[serde(default)]
    pub tags: Vec<String>,
}

/// Outcome of the Reeb computation behind `weights = "toric"`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ToricSummary {
    pub diagram: Vec<[i64; 2]>,
    pub xi: [f64; 3],
    pub volume: f64,
    pub gradient_norm: f64,
    pub iterations: usize,
    pub method: String,
    /// Closed-form Reeb vector when recognized.
    pub xi_exact: Option<[QuadExt; 3]>,
    pub coordinate_weights: Vec<f64>,
    /// Set when the weights are rounded floats rather than exact values.
    pub inexact: bool,
}

/// A spec resolved into exact objects.
#[derive(Debug, Clone)]
pub struct ResolvedSpec {
    pub case: Case,
    pub toric: Option<ToricSummary>,
    /// `(axis, v)` with 0-based axes.
    pub transverse_weights: Vec<(usize, Vec<BigRational>)>,
}

impl ConeSpec {
    pub fn from_toml(text: &str) -> Result<Self, SpecError> {
        let spec: ConeSpec = toml::from_str(text)?;
        spec.check_shape()?;
        Ok(spec)
    }

    fn check_shape(&self) -> Result<(), SpecError> {
        let n = self.variables.len();
        if n == 0 {
            return Err(SpecError::Invalid("no variables".into()));
        }
        if let WeightSpec::List(w) = &self.weights {
            if w.len() != n {
                return Err(SpecError::Invalid(format!("{n} variables but {} weights", w.len())));
            }
        }
        if let WeightSpec::Keyword(k) = &self.weights {
            if k != "toric" {
                return Err(SpecError::Invalid(format!("unknown weight keyword `{k}`")));
            }
            if self.toric.is_none() {
                return Err(SpecError::Invalid("weights = \"toric\" needs a [toric] section".into()));
            }
        }
        if self.declared_axes.iter().any(|&a| a == 0 || a > n) {
            return Err(SpecError::Invalid("declared_axes are 1-based variable indices".into()));
        }
        if self.smoothing.q.len() != self.polynomials.len() {
            return Err(SpecError::Invalid(format!(
                "{} polynomials but {} smoothing terms",
                self.polynomials.len(),
                self.smoothing.q.len()
            )));
        }
        if let Some(f) = &self.family {
            if f.q.len() != self.polynomials.len() || f.range[0] > f.range[1] {
                return Err(SpecError::Invalid("family needs one q per polynomial and range [lo, hi]".into()));
            }
        }
        Ok(())
    }

    fn parse_poly(&self, field: &str, s: &str, params: &[(String, i64)]) -> Result<WPoly, SpecError> {
        parse_with_params(s, &self.variables, params).map_err(|source| SpecError::Expr {
            field: field.into(),
            source,
        })
    }

    fn weights(&self) -> Result<(Multiweight, Option<ToricSummary>), SpecError> {
        match &self.weights {
            WeightSpec::List(list) => {
                let w = list
                    .iter()
                    .enumerate()
                    .map(|(j, s)| {
                        parse_quadext(&s.text()).map_err(|source| SpecError::Expr {
                            field: format!("weights[{j}]"),
                            source,
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok((Multiweight::new(w)?, None))
            }
            WeightSpec::Keyword(_) => {
                let t = self.toric.as_ref().expect("checked in check_shape");
                let (w, summary) = toric_weights(t, self.variables.len())?;
                Ok((w, Some(summary)))
            }
        }
    }

    /// Resolves the spec; `param` selects a member of the family.
    pub fn resolve(&self, param: Option<i64>) -> Result<ResolvedSpec, SpecError> {
        let (weights, toric) = self.weights()?;
        let polys = self
            .polynomials
            .iter()
            .enumerate()
            .map(|(j, s)| self.parse_poly(&format!("polynomials[{j}]"), s, &[]))
            .collect::<Result<Vec<_>, _>>()?;
        let axes = self.declared_axes.iter().map(|a| a - 1).collect();
        let cone = ConePresentation::new(self.variables.clone(), polys, weights, axes)?;
        let (q_src, params, name) = match (param, &self.family) {
            (Some(p), Some(f)) => (&f.q, vec![(f.parameter.clone(), p)], format!("{}[{}={p}]", self.name, f.parameter)),
            (Some(_), None) => return Err(SpecError::Invalid("spec has no [family] section".into())),
            (None, _) => (&self.smoothing.q, vec![], self.name.clone()),
        };
        let q = q_src
            .iter()
            .enumerate()
            .map(|(j, s)| self.parse_poly(&format!("smoothing.q[{j}]"), s, &params))
            .collect::<Result<Vec<_>, _>>()?;
        let eps0 = match &self.smoothing.epsilon0 {
            None => GaussRat::one(),
            Some([re, im]) => GaussRat::new(rational(&re.text(), "epsilon0")?, rational(&im.text(), "epsilon0")?),
        };
        let smoothing = SmoothingCandidate::new(&cone, q, eps0)?;
        let transverse_weights = self
            .transverse_weights
            .iter()
            .map(|o| {
                let v = o
                    .v
                    .iter()
                    .map(|s| rational(&s.text(), "transverse_weights"))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok((o.axis.wrapping_sub(1), v))
            })
            .collect::<Result<Vec<_>, SpecError>>()?;
        Ok(ResolvedSpec {
            case: Case {
                name,
                cone,
                smoothing,
                attested_orbifold: self.attest_orbifold,
            },
            toric,
            transverse_weights,
        })
    }

    pub fn family_range(&self) -> Option<std::ops::RangeInclusive<i64>> {
        self.family.as_ref().map(|f| f.range[0]..=f.range[1])
    }
}

fn rational(s: &str, field: &str) -> Result<BigRational, SpecError> {
    parse_rational(s).map_err(|source| SpecError::Expr {
        field: field.into(),
        source,
    })
}

/// Reeb vector and coordinate weights for `n` variables of a toric cone.
pub fn toric_weights(t: &ToricSpec, n: usize) -> Result<(Multiweight, ToricSummary), SpecError> {
    let diagram = ToricDiagram::new(t.diagram.clone())?;
    let dg = dual_generators(&rays_from_diagram(&diagram))?;
    let sol = minimize_reeb(&dg)?;
    let gen_of = match (&t.variable_generators, t.ckl) {
        (Some(g), _) => g.clone(),
        (None, Some(_)) => vec![0, 2, 3, 1],
        (None, None) => (0..n).collect(),
    };
    if gen_of.len() != n || gen_of.iter().any(|&g| g >= dg.normals().len()) {
        return Err(SpecError::Invalid(format!(
            "variable_generators must name one of {} generators per variable",
            dg.normals().len()
        )));
    }
    let float_w = coordinate_weights(&sol.xi, &dg);
    let exact_xi = t.ckl.and_then(|[k, l]| recognize_ckl(&sol.xi, k, l, 1e-6));
    let (weights, inexact) = match &exact_xi {
        Some(xi) => {
            let w = coordinate_weights_exact(xi, &dg);
            (gen_of.iter().map(|&g| w[g].clone()).collect::<Vec<_>>(), false)
        }
        None => {
            let w = gen_of
                .iter()
                .map(|&g| {
                    QuadExt::from_f64_exact(float_w[g])
                        .ok_or_else(|| SpecError::Invalid("non-finite Reeb weight".into()))
                })
                .collect::<Result<Vec<_>, _>>()?;
            (w, true)
        }
    };
    let summary = ToricSummary {
        diagram: t.diagram.clone(),
        xi: sol.xi.xi,
        volume: sol.volume,
        gradient_norm: sol.gradient_norm,
        iterations: sol.iterations,
        method: format!("{:?}", sol.method),
        xi_exact: exact_xi,
        coordinate_weights: gen_of.iter().map(|&g| float_w[g]).collect(),
        inexact,
    };
    Ok((Multiweight::new(weights)?, summary))
}

#[cfg(test)]
mod tests {
    use super::*;

    const SPP: &str = r#"
name = "spp"
variables = ["z1", "z2", "z3", "z4"]
weights = "toric"
polynomials = ["z1*z2^2 + z3^2 + z4^2"]
declared_axes = [1]
attest_orbifold = true

[toric]
diagram = [[0, 0], [2, 0], [1, 1], [0, 1]]
ckl = [2, 1]

[smoothing]
q = ["z1^2 + 1"]

[family]
parameter = "m"
range = [1, 6]
q = ["z1^m + 1"]
"#;

    #[test]
    fn toric_weights_are_recognized_exactly() {
        let spec = ConeSpec::from_toml(SPP).unwrap();
        let r = spec.resolve(None).unwrap();
        let w = r.case.cone.weights().weights();
        assert_eq!(w[0], QuadExt::from_int(3) - QuadExt::sqrt(3));
        assert_eq!(w[1], QuadExt::sqrt(3));
        assert!(!r.toric.unwrap().inexact);
        let fam = spec.resolve(Some(3)).unwrap();
        assert_eq!(fam.case.smoothing.q[0].to_string(), "z1^3 + 1");
    }

    #[test]
    fn shape_errors() {
        let bad = SPP.replace("declared_axes = [1]", "declared_axes = [0]");
        assert!(matches!(ConeSpec::from_toml(&bad), Err(SpecError::Invalid(_))));
        let bad = SPP.replace("q = [\"z1^2 + 1\"]", "q = [\"z1^-2\"]");
        let spec = ConeSpec::from_toml(&bad).unwrap();
        assert!(matches!(spec.resolve(None), Err(SpecError::Expr { .. })));
    }
}
