//! Sparse multivariate polynomials with Gaussian-rational coefficients and
//! their weighted-degree structure under an `R+`-action `t.z = (t^w1 z1, ...)`.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use num_rational::BigRational;
use thiserror::Error;

use crate::exactnum::{ExactError, GaussRat, QuadExt};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WPolyError {
    #[error("dimension mismatch: expected {expected} variables, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("variable index {index} out of range for {dim} variables")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("weight {index} is not strictly positive: {value}")]
    NonPositiveWeight { index: usize, value: String },
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// Exponent vector of a monomial.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(dim: usize) -> Self {
        Monomial(vec![0; dim])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Variables with a positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }
}

/// A strictly positive weight vector, all entries in one quadratic field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multiweight {
    weights: Vec<QuadExt>,
}

impl Multiweight {
    pub fn new(weights: Vec<QuadExt>) -> Result<Self, WPolyError> {
        let mut radicand = 0;
        for (index, w) in weights.iter().enumerate() {
            if w.signum() != 1 {
                return Err(WPolyError::NonPositiveWeight {
                    index,
                    value: w.to_string(),
                });
            }
            if !w.is_rational() {
                if radicand != 0 && radicand != w.radicand() {
                    return Err(ExactError::IncompatibleField {
                        left: radicand,
                        right: w.radicand(),
                    }
                    .into());
                }
                radicand = w.radicand();
            }
        }
        Ok(Multiweight { weights })
    }

    pub fn from_ints(weights: &[i64]) -> Result<Self, WPolyError> {
        Self::new(weights.iter().map(|&w| QuadExt::from_int(w)).collect())
    }

    pub fn weights(&self) -> &[QuadExt] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn sum(&self) -> QuadExt {
        self.weights.iter().fold(QuadExt::zero(), |acc, w| acc + w)
    }

    /// Common radicand of the entries, 0 when all are rational.
    pub fn radicand(&self) -> u64 {
        self.weights
            .iter()
            .map(QuadExt::radicand)
            .find(|&d| d != 0)
            .unwrap_or(0)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.weights.iter().map(QuadExt::to_f64).collect()
    }
}

/// `sum_i a_i w_i` for the exponent vector `a`.
pub fn weighted_degree(m: &Monomial, w: &Multiweight) -> Result<QuadExt, WPolyError> {
    if m.dim() != w.len() {
        return Err(WPolyError::DimensionMismatch {
            expected: w.len(),
            got: m.dim(),
        });
    }
    let mut deg = QuadExt::zero();
    for (&a, wi) in m.exponents().iter().zip(w.weights()) {
        if a > 0 {
            deg = deg.try_add(&wi.scale(&BigRational::from_integer(a.into())))?;
        }
    }
    Ok(deg)
}

/// Degree information returned by [`WPoly::is_homogeneous`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousDegree {
    pub degree: QuadExt,
    /// Set for the zero polynomial, which is reported with degree 0.
    pub degenerate: bool,
}

/// Sparse polynomial in `ambient_dim` variables. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WPoly {
    ambient_dim: usize,
    terms: BTreeMap<Monomial, GaussRat>,
}

impl WPoly {
    pub fn zero(ambient_dim: usize) -> Self {
        WPoly {
            ambient_dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ambient_dim: usize, c: GaussRat) -> Self {
        let mut p = WPoly::zero(ambient_dim);
        p.add_term(Monomial::one(ambient_dim), c);
        p
    }

    pub fn var(ambient_dim: usize, index: usize) -> Self {
        let mut exps = vec![0; ambient_dim];
        exps[index] = 1;
        WPoly::monomial(Monomial(exps), GaussRat::one())
    }

    pub fn monomial(m: Monomial, c: GaussRat) -> Self {
        let mut p = WPoly::zero(m.dim());
        p.add_term(m, c);
        p
    }

    /// Builds a polynomial from `(coefficient, exponents)` pairs, combining duplicates.
    pub fn from_terms<I>(ambient_dim: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (GaussRat, Vec<u32>)>,
    {
        let mut p = WPoly::zero(ambient_dim);
        for (c, e) in terms {
            assert_eq!(e.len(), ambient_dim, "exponent vector length");
            p.add_term(Monomial(e), c);
        }
        p
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending lexicographic order of exponent vectors.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &GaussRat)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> Option<&GaussRat> {
        self.terms.get(m)
    }

    pub fn add_term(&mut self, m: Monomial, c: GaussRat) {
        debug_assert_eq!(m.dim(), self.ambient_dim);
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                let sum = &*existing + &c;
                if sum.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &WPoly) -> WPoly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &WPoly) -> WPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> WPoly {
        self.scale(&GaussRat::from_int(-1))
    }

    pub fn scale(&self, c: &GaussRat) -> WPoly {
        let mut out = WPoly::zero(self.ambient_dim);
        for (m, k) in &self.terms {
            out.add_term(m.clone(), k * c);
        }
        out
    }

    pub fn mul(&self, other: &WPoly) -> WPoly {
        let mut out = WPoly::zero(self.ambient_dim);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, n: u32) -> WPoly {
        let mut out = WPoly::constant(self.ambient_dim, GaussRat::one());
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    /// The constant coefficient, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<GaussRat> {
        match self.terms.len() {
            0 => Some(GaussRat::zero()),
            1 => {
                let (m, c) = self.terms.iter().next()?;
                m.is_constant().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Variables that occur in some monomial.
    pub fn variables(&self) -> Vec<usize> {
        let mut used = vec![false; self.ambient_dim];
        for m in self.terms.keys() {
            for i in m.support() {
                used[i] = true;
            }
        }
        (0..self.ambient_dim).filter(|&i| used[i]).collect()
    }

    pub fn partial_derivative(&self, i: usize) -> Result<WPoly, WPolyError> {
        self.check_index(i)?;
        let mut out = WPoly::zero(self.ambient_dim);
        for (m, c) in &self.terms {
            let e = m.0[i];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[i] -= 1;
            out.add_term(Monomial(exps), c * &GaussRat::from_int(e as i64));
        }
        Ok(out)
    }

    /// Sets `z_j = 0` for every `j != i`.
    pub fn restrict_to_axis(&self, i: usize) -> Result<WPoly, WPolyError> {
        self.check_index(i)?;
        let zeroed: Vec<usize> = (0..self.ambient_dim).filter(|&j| j != i).collect();
        Ok(self.set_zero(&zeroed))
    }

    /// Sets the listed variables to zero.
    pub fn set_zero(&self, vars: &[usize]) -> WPoly {
        let mut out = WPoly::zero(self.ambient_dim);
        for (m, c) in &self.terms {
            if vars.iter().all(|&j| m.0[j] == 0) {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// Renames variables: variable `j` of `self` becomes variable `perm[j]`.
    pub fn permute(&self, perm: &[usize]) -> WPoly {
        let mut out = WPoly::zero(self.ambient_dim);
        for (m, c) in &self.terms {
            let mut exps = vec![0; self.ambient_dim];
            for (j, &e) in m.0.iter().enumerate() {
                exps[perm[j]] = e;
            }
            out.add_term(Monomial(exps), c.clone());
        }
        out
    }

    pub fn eval_complex(&self, point: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (m, c) in &self.terms {
            let mut t = c.to_complex();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= x.powu(e);
                }
            }
            acc += t;
        }
        acc
    }

    /// Common weighted degree of all monomials, if there is one.
    pub fn is_homogeneous(&self, w: &Multiweight) -> Result<Option<HomogeneousDegree>, WPolyError> {
        self.check_dim(w)?;
        let mut degree: Option<QuadExt> = None;
        for m in self.terms.keys() {
            let d = weighted_degree(m, w)?;
            match &degree {
                None => degree = Some(d),
                Some(prev) if *prev == d => {}
                Some(_) => return Ok(None),
            }
        }
        Ok(Some(match degree {
            Some(degree) => HomogeneousDegree {
                degree,
                degenerate: false,
            },
            None => HomogeneousDegree {
                degree: QuadExt::zero(),
                degenerate: true,
            },
        }))
    }

    /// Groups terms by exact weighted degree, highest degree first.
    pub fn homogeneous_decomposition(
        &self,
        w: &Multiweight,
    ) -> Result<Vec<(QuadExt, WPoly)>, WPolyError> {
        self.check_dim(w)?;
        let mut parts: Vec<(QuadExt, WPoly)> = Vec::new();
        for (m, c) in &self.terms {
            let d = weighted_degree(m, w)?;
            match parts.iter_mut().find(|(deg, _)| *deg == d) {
                Some((_, p)) => p.add_term(m.clone(), c.clone()),
                None => parts.push((d, WPoly::monomial(m.clone(), c.clone()))),
            }
        }
        let mut err = None;
        parts.sort_by(|a, b| match b.0.cmp_exact(&a.0) {
            Ok(o) => o,
            Err(e) => {
                err = Some(e);
                std::cmp::Ordering::Equal
            }
        });
        if let Some(e) = err {
            return Err(e.into());
        }
        Ok(parts)
    }

    /// Highest weighted degree among the terms; `None` for the zero polynomial.
    pub fn top_degree(&self, w: &Multiweight) -> Result<Option<QuadExt>, WPolyError> {
        Ok(self
            .homogeneous_decomposition(w)?
            .into_iter()
            .next()
            .map(|(d, _)| d))
    }

    /// Canonical text with the given variable names: terms in descending
    /// lexicographic order of exponents, `*` for products, `^` for powers.
    pub fn display_with(&self, names: &[String]) -> String {
        let mut terms = self.terms.iter().rev().map(|(m, c)| (c.clone(), render_monomial(m, names)));
        render_signed_sum(&mut terms)
    }

    /// Default names `z1, ..., zn`.
    pub fn default_names(n: usize) -> Vec<String> {
        (1..=n).map(|i| format!("z{i}")).collect()
    }

    fn check_index(&self, i: usize) -> Result<(), WPolyError> {
        if i >= self.ambient_dim {
            return Err(WPolyError::IndexOutOfRange {
                index: i,
                dim: self.ambient_dim,
            });
        }
        Ok(())
    }

    fn check_dim(&self, w: &Multiweight) -> Result<(), WPolyError> {
        if w.len() != self.ambient_dim {
            return Err(WPolyError::DimensionMismatch {
                expected: self.ambient_dim,
                got: w.len(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for WPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with(&WPoly::default_names(self.ambient_dim)))
    }
}

/// `z1*z2^2`; empty string for the constant monomial.
pub(crate) fn render_monomial(m: &Monomial, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[i].clone()),
            _ => parts.push(format!("{}^{}", names[i], e)),
        }
    }
    parts.join("*")
}

/// Joins `(coefficient, monomial text)` pairs into a signed sum. An empty
/// monomial text denotes a constant term.
pub(crate) fn render_signed_sum(terms: &mut dyn Iterator<Item = (GaussRat, String)>) -> String {
    let mut out = String::new();
    for (idx, (c, mono)) in terms.enumerate() {
        let negative = c.is_negative_like();
        let abs = if negative { -&c } else { c };
        let body = if mono.is_empty() {
            abs.to_string()
        } else if abs.is_one() {
            mono
        } else {
            format!("{abs}*{mono}")
        };
        match (idx, negative) {
            (0, false) => out.push_str(&body),
            (0, true) => {
                out.push('-');
                out.push_str(&body);
            }
            (_, false) => {
                out.push_str(" + ");
                out.push_str(&body);
            }
            (_, true) => {
                out.push_str(" - ");
                out.push_str(&body);
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
