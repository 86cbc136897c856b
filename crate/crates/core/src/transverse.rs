//! Cone presentations, their singular axes and the transverse cones normal to
//! each axis.
//!
//! Along the `z_i`-axis the circle parameter `omega[i,i]` has weight 0 and the
//! transverse polynomial is the defining polynomial whose gradient vanishes on
//! the axis. Its variables other than `z_i` carry the transverse weights `v`
//! with `sum v - d_s = 2`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exactnum::QuadExt;
use crate::wpoly::{Multiweight, WPoly, WPolyError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TransverseError {
    #[error("presentation mismatch: {0}")]
    Shape(String),
    #[error("axis {0} is out of range")]
    AxisOutOfRange(usize),
    #[error("axis z{0} is not contained in the singular locus")]
    AxisNotSingular(usize),
    #[error("no unique defining polynomial is singular along axis z{0}")]
    NoGoverningPolynomial(usize),
    #[error("transverse polynomial is not quasi-homogeneous for any positive weights")]
    NotQuasiHomogeneous,
    #[error("transverse weights are not determined even after the symmetric tie-break")]
    Underdetermined,
    #[error("transverse weights must be positive, got {0:?}")]
    InvalidWeights(Vec<String>),
    #[error(transparent)]
    WPoly(#[from] WPolyError),
}

/// Affine cone `{P_1 = ... = P_c = 0}` with a positive weight vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ConePresentation {
    names: Vec<String>,
    polys: Vec<WPoly>,
    weights: Multiweight,
    degrees: Vec<QuadExt>,
    axes: Vec<usize>,
}

impl ConePresentation {
    /// Axes are 0-based. Each degree is the top weighted degree of its polynomial.
    pub fn new(
        names: Vec<String>,
        polys: Vec<WPoly>,
        weights: Multiweight,
        axes: Vec<usize>,
    ) -> Result<Self, TransverseError> {
        let n = names.len();
        if polys.is_empty() {
            return Err(TransverseError::Shape("no defining polynomials".into()));
        }
        if weights.len() != n || polys.iter().any(|p| p.ambient_dim() != n) {
            return Err(TransverseError::Shape(format!(
                "{n} variables but {} weights",
                weights.len()
            )));
        }
        if let Some(&bad) = axes.iter().find(|&&a| a >= n) {
            return Err(TransverseError::AxisOutOfRange(bad + 1));
        }
        let degrees = polys
            .iter()
            .map(|p| Ok(p.top_degree(&weights)?.unwrap_or_else(QuadExt::zero)))
            .collect::<Result<Vec<_>, WPolyError>>()?;
        Ok(ConePresentation {
            names,
            polys,
            weights,
            degrees,
            axes,
        })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn polys(&self) -> &[WPoly] {
        &self.polys
    }

    pub fn weights(&self) -> &Multiweight {
        &self.weights
    }

    pub fn degrees(&self) -> &[QuadExt] {
        &self.degrees
    }

    pub fn declared_axes(&self) -> &[usize] {
        &self.axes
    }

    pub fn ambient_dim(&self) -> usize {
        self.names.len()
    }

    pub fn complex_dim(&self) -> usize {
        self.ambient_dim() - self.polys.len()
    }

    pub fn is_hypersurface(&self) -> bool {
        self.polys.len() == 1
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Homogeneity of every polynomial and `sum w - sum d = ambient_dim - #polys`.
pub fn validate_presentation(cp: &ConePresentation) -> ValidationReport {
    let mut checks = Vec::new();
    for (j, p) in cp.polys.iter().enumerate() {
        let name = format!("homogeneous P{}", j + 1);
        let check = match p.is_homogeneous(&cp.weights) {
            Ok(Some(h)) if !h.degenerate => Check {
                name,
                passed: true,
                detail: format!("degree {}", h.degree),
            },
            Ok(Some(_)) => Check {
                name,
                passed: false,
                detail: "zero polynomial".into(),
            },
            Ok(None) => Check {
                name,
                passed: false,
                detail: "monomials have different weighted degrees".into(),
            },
            Err(e) => Check {
                name,
                passed: false,
                detail: e.to_string(),
            },
        };
        checks.push(check);
    }
    let sum_w = cp.weights.sum();
    let sum_d = cp.degrees.iter().fold(QuadExt::zero(), |acc, d| acc + d);
    let expected = QuadExt::from_int(cp.complex_dim() as i64);
    let name = "calabi-yau normalization".to_string();
    checks.push(match sum_w.try_sub(&sum_d) {
        Ok(diff) => Check {
            name,
            passed: diff == expected,
            detail: format!("sum w - sum d = ({sum_w}) - ({sum_d}) = {diff}, dimension {expected}"),
        },
        Err(e) => Check {
            name,
            passed: false,
            detail: e.to_string(),
        },
    });
    ValidationReport { checks }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AxisCheck {
    pub axis: usize,
    pub contained_in_singular_locus: bool,
    pub evidence: Vec<String>,
}

/// Determinant of a square matrix of polynomials by cofactor expansion.
pub(crate) fn poly_det(m: &[Vec<WPoly>], dim: usize) -> WPoly {
    let n = m.len();
    match n {
        0 => WPoly::constant(dim, crate::exactnum::GaussRat::one()),
        1 => m[0][0].clone(),
        _ => {
            let mut acc = WPoly::zero(dim);
            for col in 0..n {
                if m[0][col].is_zero() {
                    continue;
                }
                let minor: Vec<Vec<WPoly>> = m[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|(c, _)| *c != col)
                            .map(|(_, p)| p.clone())
                            .collect()
                    })
                    .collect();
                let term = m[0][col].mul(&poly_det(&minor, dim));
                acc = if col % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc
        }
    }
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Jacobian matrix restricted to the axis, rows indexed by polynomials.
fn axis_jacobian(cp: &ConePresentation, i: usize) -> Result<Vec<Vec<WPoly>>, TransverseError> {
    cp.polys
        .iter()
        .map(|p| {
            (0..cp.ambient_dim())
                .map(|j| Ok(p.partial_derivative(j)?.restrict_to_axis(i)?))
                .collect()
        })
        .collect()
}

/// Whether the `z_i`-axis (0-based `i`) lies in the singular locus of the cone.
pub fn axis_singularity_check(cp: &ConePresentation, i: usize) -> Result<AxisCheck, TransverseError> {
    if i >= cp.ambient_dim() {
        return Err(TransverseError::AxisOutOfRange(i + 1));
    }
    let mut evidence = Vec::new();
    let mut on_cone = true;
    for (j, p) in cp.polys.iter().enumerate() {
        let r = p.restrict_to_axis(i)?;
        if r.is_zero() {
            evidence.push(format!("P{} vanishes on the z{}-axis", j + 1, i + 1));
        } else {
            on_cone = false;
            evidence.push(format!("P{} restricted to the z{}-axis is {}", j + 1, i + 1, r.display_with(&cp.names)));
        }
    }
    let jac = axis_jacobian(cp, i)?;
    let c = cp.polys.len();
    let mut rank_drops = on_cone;
    if on_cone {
        for cols in combinations(cp.ambient_dim(), c) {
            let sub: Vec<Vec<WPoly>> = jac
                .iter()
                .map(|row| cols.iter().map(|&col| row[col].clone()).collect())
                .collect();
            let minor = poly_det(&sub, cp.ambient_dim());
            if !minor.is_zero() {
                rank_drops = false;
                let cols1: Vec<String> = cols.iter().map(|c| format!("z{}", c + 1)).collect();
                evidence.push(format!(
                    "Jacobian minor in ({}) is {} on the axis",
                    cols1.join(", "),
                    minor.display_with(&cp.names)
                ));
                break;
            }
        }
        if rank_drops {
            evidence.push(if c == 1 {
                "every first partial derivative vanishes on the axis".into()
            } else {
                format!("every {c}x{c} Jacobian minor vanishes on the axis")
            });
        }
    }
    Ok(AxisCheck {
        axis: i,
        contained_in_singular_locus: on_cone && rank_drops,
        evidence,
    })
}

/// Defining polynomials written in the coordinates `omega[i,j]` along one axis.
#[derive(Debug, Clone, PartialEq)]
pub struct TransverseForms {
    pub axis: usize,
    pub polys: Vec<WPoly>,
    /// Index of the polynomial whose gradient vanishes on the axis.
    pub governing: usize,
    /// Variables of the governing polynomial other than the axis, ascending.
    pub transverse_vars: Vec<usize>,
    /// The axis and the variables absent from the governing polynomial.
    pub retained: Vec<usize>,
}

impl TransverseForms {
    pub fn governing_poly(&self) -> &WPoly {
        &self.polys[self.governing]
    }

    pub fn names(&self) -> Vec<String> {
        omega_names(self.axis, self.polys[0].ambient_dim())
    }

    pub fn display(&self, j: usize) -> String {
        self.polys[j].display_with(&self.names())
    }
}

/// `omega[i,1], ..., omega[i,n]` with 1-based indices.
pub fn omega_names(axis: usize, n: usize) -> Vec<String> {
    (1..=n).map(|j| format!("omega[{},{}]", axis + 1, j)).collect()
}

pub fn transverse_polynomial(cp: &ConePresentation, i: usize) -> Result<TransverseForms, TransverseError> {
    let check = axis_singularity_check(cp, i)?;
    if !check.contained_in_singular_locus {
        return Err(TransverseError::AxisNotSingular(i + 1));
    }
    let jac = axis_jacobian(cp, i)?;
    let singular: Vec<usize> = (0..cp.polys.len())
        .filter(|&j| jac[j].iter().all(WPoly::is_zero))
        .collect();
    let governing = match singular.as_slice() {
        [g] => *g,
        _ => return Err(TransverseError::NoGoverningPolynomial(i + 1)),
    };
    let vars = cp.polys[governing].variables();
    let transverse_vars: Vec<usize> = vars.iter().copied().filter(|&j| j != i).collect();
    let retained: Vec<usize> = (0..cp.ambient_dim())
        .filter(|j| !transverse_vars.contains(j))
        .collect();
    Ok(TransverseForms {
        axis: i,
        polys: cp.polys.clone(),
        governing,
        transverse_vars,
        retained,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InferenceStatus {
    Determined,
    SymmetricTieBreak,
    UserSupplied,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TransverseWeights {
    /// One weight per transverse variable, in ascending variable order.
    pub v: Vec<BigRational>,
    pub d_s: BigRational,
    pub status: InferenceStatus,
}

impl TransverseWeights {
    pub fn multiweight(&self) -> Result<Multiweight, WPolyError> {
        Multiweight::new(self.v.iter().cloned().map(QuadExt::from_rational).collect())
    }

    pub fn d_s_exact(&self) -> QuadExt {
        QuadExt::from_rational(self.d_s.clone())
    }
}

fn rint(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref(m: &mut [Vec<BigRational>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let lead = m[row][col].clone();
        for x in m[row].iter_mut() {
            *x = &*x / &lead;
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..m[r].len() {
                    let sub = &f * &m[row][c];
                    m[r][c] -= sub;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    pivots
}

/// Solves `A x = b` exactly. Returns a particular solution and a null-space basis.
fn solve_affine(
    a: &[Vec<BigRational>],
    b: &[BigRational],
) -> Option<(Vec<BigRational>, Vec<Vec<BigRational>>)> {
    let n = a.first().map_or(0, Vec::len);
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut m, n + 1);
    if pivots.contains(&n) {
        return None;
    }
    let mut x = vec![BigRational::zero(); n];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][n].clone();
    }
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let null = free
        .iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); n];
            v[f] = BigRational::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -m[r][f].clone();
            }
            v
        })
        .collect();
    Some((x, null))
}

/// Weights for the transverse variables making `form` homogeneous of degree
/// `d_s` with `sum v - d_s = 2`. The exponent of the axis variable is ignored.
pub fn infer_transverse_weights(
    form: &WPoly,
    transverse_vars: &[usize],
) -> Result<TransverseWeights, TransverseError> {
    let m = transverse_vars.len();
    if form.is_zero() || m == 0 {
        return Err(TransverseError::NotQuasiHomogeneous);
    }
    // unknowns (v_1, ..., v_m, d_s)
    let mut a = Vec::new();
    let mut b = Vec::new();
    for (mono, _) in form.terms() {
        let mut row: Vec<BigRational> = transverse_vars
            .iter()
            .map(|&j| rint(mono.exponents()[j] as i64))
            .collect();
        row.push(rint(-1));
        if !a.contains(&row) {
            a.push(row);
            b.push(BigRational::zero());
        }
    }
    let mut norm_row = vec![BigRational::one(); m];
    norm_row.push(rint(-1));
    a.push(norm_row);
    b.push(rint(2));
    let (x0, null) = solve_affine(&a, &b).ok_or(TransverseError::NotQuasiHomogeneous)?;
    let (x, status) = if null.is_empty() {
        (x0, InferenceStatus::Determined)
    } else {
        (symmetric_tie_break(&x0, &null, m)?, InferenceStatus::SymmetricTieBreak)
    };
    let (v, d_s) = (x[..m].to_vec(), x[m].clone());
    if v.iter().any(|vi| !vi.is_positive()) || !d_s.is_positive() {
        return Err(TransverseError::InvalidWeights(
            x.iter().map(|q| q.to_string()).collect(),
        ));
    }
    Ok(TransverseWeights { v, d_s, status })
}

/// Point of `x0 + span(null)` minimizing the spread `sum (v_j - mean v)^2`.
fn symmetric_tie_break(
    x0: &[BigRational],
    null: &[Vec<BigRational>],
    m: usize,
) -> Result<Vec<BigRational>, TransverseError> {
    let centered = |x: &[BigRational]| -> Vec<BigRational> {
        let mean = x[..m].iter().fold(BigRational::zero(), |acc, v| acc + v) / rint(m as i64);
        x[..m].iter().map(|v| v - &mean).collect()
    };
    let dot = |p: &[BigRational], q: &[BigRational]| -> BigRational {
        p.iter().zip(q).fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
    };
    let cn: Vec<Vec<BigRational>> = null.iter().map(|n| centered(n)).collect();
    let cx = centered(x0);
    let k = null.len();
    let gram: Vec<Vec<BigRational>> = (0..k).map(|r| (0..k).map(|c| dot(&cn[r], &cn[c])).collect()).collect();
    let rhs: Vec<BigRational> = (0..k).map(|r| -dot(&cn[r], &cx)).collect();
    let (t, rest) = solve_affine(&gram, &rhs).ok_or(TransverseError::Underdetermined)?;
    if !rest.is_empty() {
        return Err(TransverseError::Underdetermined);
    }
    let mut x = x0.to_vec();
    for (ti, n) in t.iter().zip(null) {
        for (xi, ni) in x.iter_mut().zip(n) {
            *xi += ti * ni;
        }
    }
    Ok(x)
}

/// Transverse data along one axis.
#[derive(Debug, Clone, PartialEq)]
pub struct TransverseCone {
    pub forms: TransverseForms,
    pub weights: TransverseWeights,
}

impl TransverseCone {
    pub fn axis(&self) -> usize {
        self.forms.axis
    }

    /// Transverse weight of variable `j`, if `j` is transverse.
    pub fn weight_of(&self, j: usize) -> Option<&BigRational> {
        self.forms
            .transverse_vars
            .iter()
            .position(|&t| t == j)
            .map(|p| &self.weights.v[p])
    }
}

pub fn transverse_cone(cp: &ConePresentation, i: usize) -> Result<TransverseCone, TransverseError> {
    let forms = transverse_polynomial(cp, i)?;
    let weights = infer_transverse_weights(forms.governing_poly(), &forms.transverse_vars)?;
    Ok(TransverseCone { forms, weights })
}

/// Uses supplied weights after checking homogeneity and `sum v - d_s = 2`.
pub fn transverse_cone_with_weights(
    cp: &ConePresentation,
    i: usize,
    v: Vec<BigRational>,
) -> Result<TransverseCone, TransverseError> {
    let forms = transverse_polynomial(cp, i)?;
    if v.len() != forms.transverse_vars.len() {
        return Err(TransverseError::Shape(format!(
            "{} transverse weights for {} transverse variables",
            v.len(),
            forms.transverse_vars.len()
        )));
    }
    if v.iter().any(|x| !x.is_positive()) {
        return Err(TransverseError::InvalidWeights(v.iter().map(|q| q.to_string()).collect()));
    }
    let mut d_s: Option<BigRational> = None;
    for (mono, _) in forms.governing_poly().terms() {
        let deg = forms
            .transverse_vars
            .iter()
            .zip(&v)
            .fold(BigRational::zero(), |acc, (&j, w)| acc + w * rint(mono.exponents()[j] as i64));
        match &d_s {
            None => d_s = Some(deg),
            Some(prev) if *prev == deg => {}
            Some(_) => return Err(TransverseError::NotQuasiHomogeneous),
        }
    }
    let d_s = d_s.ok_or(TransverseError::NotQuasiHomogeneous)?;
    let sum = v.iter().fold(BigRational::zero(), |acc, x| acc + x);
    if sum - &d_s != rint(2) {
        return Err(TransverseError::InvalidWeights(v.iter().map(|q| q.to_string()).collect()));
    }
    Ok(TransverseCone {
        forms,
        weights: TransverseWeights {
            v,
            d_s,
            status: InferenceStatus::UserSupplied,
        },
    })
}

/// True iff every transverse degree agrees exactly.
pub fn check_ds_uniform(tcs: &[TransverseCone]) -> bool {
    tcs.windows(2).all(|w| w[0].weights.d_s == w[1].weights.d_s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::GaussRat;

    fn poly(dim: usize, terms: &[(i64, &[u32])]) -> WPoly {
        WPoly::from_terms(dim, terms.iter().map(|(c, e)| (GaussRat::from_int(*c), e.to_vec())))
    }

    fn names(n: usize) -> Vec<String> {
        WPoly::default_names(n)
    }

    fn orbifold(n: u32) -> ConePresentation {
        let p = poly(4, &[(1, &[1, 1, 1, 0]), (-1, &[0, 0, 0, n])]);
        let n = n as i64;
        ConePresentation::new(names(4), vec![p], Multiweight::from_ints(&[n, n, n, 3]).unwrap(), vec![0, 1, 2])
            .unwrap()
    }

    fn ci() -> ConePresentation {
        let p1 = poly(5, &[(1, &[1, 0, 0, 0, 1]), (-1, &[0, 0, 0, 2, 0])]);
        let p2 = poly(5, &[(1, &[0, 1, 1, 0, 0]), (-1, &[0, 0, 0, 0, 2])]);
        ConePresentation::new(names(5), vec![p1, p2], Multiweight::from_ints(&[2, 4, 4, 3, 4]).unwrap(), vec![0, 1, 2])
            .unwrap()
    }

    #[test]
    fn normalization_of_examples() {
        for n in 2..5 {
            assert!(validate_presentation(&orbifold(n)).passed());
        }
        let report = validate_presentation(&ci());
        assert!(report.passed(), "{report:?}");
        assert_eq!(ci().degrees(), &[QuadExt::from_int(6), QuadExt::from_int(8)]);
    }

    #[test]
    fn orbifold_axes() {
        let cp = orbifold(3);
        for i in 0..3 {
            assert!(axis_singularity_check(&cp, i).unwrap().contained_in_singular_locus);
        }
        assert!(!axis_singularity_check(&cp, 3).unwrap().contained_in_singular_locus);
        assert_eq!(transverse_polynomial(&cp, 3), Err(TransverseError::AxisNotSingular(4)));
    }

    #[test]
    fn orbifold_transverse() {
        let tc = transverse_cone(&orbifold(3), 0).unwrap();
        assert_eq!(tc.forms.display(0), "omega[1,1]*omega[1,2]*omega[1,3] - omega[1,4]^3");
        assert_eq!(tc.weights.v, vec![rint(3), rint(3), rint(2)]);
        assert_eq!(tc.weights.d_s, rint(6));
        assert_eq!(tc.weights.status, InferenceStatus::SymmetricTieBreak);
    }

    #[test]
    fn ci_axes_and_forms() {
        let cp = ci();
        let t1 = transverse_cone(&cp, 0).unwrap();
        assert_eq!(t1.forms.governing, 1);
        assert_eq!(t1.forms.transverse_vars, vec![1, 2, 4]);
        assert_eq!(t1.forms.retained, vec![0, 3]);
        let t2 = transverse_cone(&cp, 1).unwrap();
        assert_eq!(t2.forms.governing, 0);
        assert_eq!(t2.forms.retained, vec![1, 2]);
        assert_eq!(t2.forms.display(1), "omega[2,2]*omega[2,3] - omega[2,5]^2");
        assert_eq!(t2.forms.display(0), "omega[2,1]*omega[2,5] - omega[2,4]^2");
        for t in [&t1, &t2] {
            assert_eq!(t.weights.v, vec![rint(2), rint(2), rint(2)]);
            assert_eq!(t.weights.d_s, rint(4));
            assert_eq!(t.weights.status, InferenceStatus::SymmetricTieBreak);
        }
        assert!(check_ds_uniform(&[t1, t2]));
        assert!(!axis_singularity_check(&cp, 3).unwrap().contained_in_singular_locus);
    }

    #[test]
    fn one_variable_inconsistent() {
        let p = poly(2, &[(1, &[0, 2]), (1, &[0, 3])]);
        assert_eq!(infer_transverse_weights(&p, &[1]), Err(TransverseError::NotQuasiHomogeneous));
    }

    #[test]
    fn supplied_weights_checked() {
        let cp = orbifold(2);
        let tc = transverse_cone_with_weights(&cp, 0, vec![rint(2), rint(2), rint(2)]).unwrap();
        assert_eq!(tc.weights.d_s, rint(4));
        assert_eq!(tc.weights.status, InferenceStatus::UserSupplied);
        assert!(transverse_cone_with_weights(&cp, 0, vec![rint(1), rint(3), rint(2)]).is_ok());
        assert!(transverse_cone_with_weights(&cp, 0, vec![rint(1), rint(1), rint(1)]).is_err());
    }
}
