//! Toric geometry of 3-dimensional Gorenstein cones: lattice diagram, rays,
//! dual generators, the volume functional on the Reeb cone, its minimizer and
//! the coordinate weights it induces.
//!
//! The volume of `Delta(xi) = { y in C* : <y, xi> <= 1 }` is computed exactly
//! over the rationals from the binary expansion of `xi`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::QuadExt;

/// First coordinate of every Reeb vector.
pub const XI_FIRST: f64 = 3.0;

/// Positions of the `(u, v, w, z)` coordinates of `C_{k,l}` among the dual
/// generators returned for [`ToricDiagram::ckl`].
pub const CKL_UVWZ: [usize; 4] = [2, 0, 3, 1];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ToricError {
    #[error("a toric diagram needs at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error("diagram points are not strictly convex and counterclockwise at point {0}")]
    NotConvex(usize),
    #[error("cone is degenerate (not full-dimensional or not strictly convex)")]
    DegenerateCone,
    #[error("Reeb vector {xi:?} is not interior: pairing with generator {index} is {pairing}")]
    Unbounded {
        xi: [f64; 3],
        index: usize,
        pairing: f64,
    },
    #[error("non-finite Reeb vector component")]
    NonFinite,
    #[error("optimizer did not converge: last iterate {last:?}, gradient norm {gradient_norm:e}")]
    NotConverged { last: [f64; 3], gradient_norm: f64 },
}

/// Counterclockwise lattice polygon in the plane `x1 = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToricDiagram {
    points: Vec<[i64; 2]>,
}

impl ToricDiagram {
    pub fn new(points: Vec<[i64; 2]>) -> Result<Self, ToricError> {
        let n = points.len();
        if n < 3 {
            return Err(ToricError::TooFewPoints(n));
        }
        for i in 0..n {
            let a = points[(i + n - 1) % n];
            let b = points[i];
            let c = points[(i + 1) % n];
            let cross = (b[0] - a[0]) * (c[1] - b[1]) - (b[1] - a[1]) * (c[0] - b[0]);
            if cross <= 0 {
                return Err(ToricError::NotConvex(i));
            }
        }
        Ok(ToricDiagram { points })
    }

    /// The quadrilateral with vertices `(0,0), (k,0), (l,1), (0,1)`.
    pub fn ckl(k: u32, l: u32) -> Self {
        assert!(k >= 1 && l >= 1, "k and l must be positive");
        let (k, l) = (k as i64, l as i64);
        ToricDiagram::new(vec![[0, 0], [k, 0], [l, 1], [0, 1]]).expect("C_{k,l} diagram is convex")
    }

    pub fn points(&self) -> &[[i64; 2]] {
        &self.points
    }
}

/// Polyhedral cone in `Z^3` given by cyclically ordered generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cone3 {
    rays: Vec<[i64; 3]>,
}

impl Cone3 {
    pub fn from_vectors(rays: Vec<[i64; 3]>) -> Self {
        Cone3 { rays }
    }

    pub fn rays(&self) -> &[[i64; 3]] {
        &self.rays
    }
}

/// Primitive inward facet normals of a cone, one per facet, in facet order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DualGenerators {
    normals: Vec<[i64; 3]>,
}

impl DualGenerators {
    pub fn from_vectors(normals: Vec<[i64; 3]>) -> Self {
        DualGenerators { normals }
    }

    pub fn normals(&self) -> &[[i64; 3]] {
        &self.normals
    }

    /// The cone these vectors generate.
    pub fn as_cone(&self) -> Cone3 {
        Cone3::from_vectors(self.normals.clone())
    }
}

/// `xi = (3, beta, gamma)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReebVector {
    pub xi: [f64; 3],
}

impl ReebVector {
    pub fn new(beta: f64, gamma: f64) -> Self {
        ReebVector {
            xi: [XI_FIRST, beta, gamma],
        }
    }
}

pub fn rays_from_diagram(d: &ToricDiagram) -> Cone3 {
    Cone3::from_vectors(d.points.iter().map(|p| [1, p[0], p[1]]).collect())
}

fn cross(a: &[i64; 3], b: &[i64; 3]) -> [i64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot(a: &[i64; 3], b: &[i64; 3]) -> i64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn primitive(v: [i64; 3]) -> [i64; 3] {
    let g = v[0].gcd(&v[1]).gcd(&v[2]);
    if g == 0 {
        v
    } else {
        [v[0] / g, v[1] / g, v[2] / g]
    }
}

/// Inward primitive normals of the facets spanned by consecutive rays.
pub fn dual_generators(c: &Cone3) -> Result<DualGenerators, ToricError> {
    let rays = &c.rays;
    let n = rays.len();
    if n < 3 {
        return Err(ToricError::DegenerateCone);
    }
    let mut normals = Vec::with_capacity(n);
    for a in 0..n {
        let mut m = cross(&rays[a], &rays[(a + 1) % n]);
        if m == [0, 0, 0] {
            return Err(ToricError::DegenerateCone);
        }
        let pairings: Vec<i64> = rays.iter().map(|r| dot(&m, r)).collect();
        let pos = pairings.iter().any(|&p| p > 0);
        let neg = pairings.iter().any(|&p| p < 0);
        match (pos, neg) {
            (true, true) | (false, false) => return Err(ToricError::DegenerateCone),
            (false, true) => m = [-m[0], -m[1], -m[2]],
            (true, false) => {}
        }
        normals.push(primitive(m));
    }
    Ok(DualGenerators { normals })
}

fn to_rational(x: f64) -> Result<BigRational, ToricError> {
    BigRational::from_float(x).ok_or(ToricError::NonFinite)
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn dot_q(a: &[BigRational; 3], b: &[BigRational; 3]) -> BigRational {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

fn det_q(a: &[BigRational; 3], b: &[BigRational; 3], c: &[BigRational; 3]) -> BigRational {
    &a[0] * (&b[1] * &c[2] - &b[2] * &c[1]) - &a[1] * (&b[0] * &c[2] - &b[2] * &c[0])
        + &a[2] * (&b[0] * &c[1] - &b[1] * &c[0])
}

fn lift(v: &[i64; 3]) -> [BigRational; 3] {
    [rat(v[0]), rat(v[1]), rat(v[2])]
}

/// Exact evaluator of the volume of `Delta(xi)` for one cone.
///
/// The vertices of `Delta(xi)` other than the origin are `d / <d, xi>` where `d`
/// runs over the edges of `C*`. The edges and their cyclic order come from
/// intersecting facet planes of `C*` once, so each evaluation only needs the
/// pairings `<d, xi>` and a fan of tetrahedra from the origin.
#[derive(Debug, Clone)]
pub struct VolumeFunctional {
    generators: Vec<[i64; 3]>,
    /// Facet normals of `C*`, that is the rays of the original cone.
    facets: Vec<[i64; 3]>,
    /// Edges of `C*` in cyclic order.
    edges: Vec<[i64; 3]>,
    /// `det(e_0, e_j, e_{j+1})` for the fan triangulation of the cap.
    fan: Vec<i64>,
}

impl VolumeFunctional {
    pub fn new(dg: &DualGenerators) -> Result<Self, ToricError> {
        let facets = dual_generators(&dg.as_cone())?.normals;
        let n = facets.len();
        // pairwise facet intersections that satisfy every other half-space
        let mut edges: Vec<([i64; 3], Vec<usize>)> = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                let d = cross(&facets[a], &facets[b]);
                if d == [0, 0, 0] {
                    continue;
                }
                for d in [primitive(d), primitive(d.map(|x| -x))] {
                    let tight: Vec<usize> = (0..n).filter(|&c| dot(&facets[c], &d) == 0).collect();
                    let feasible = facets.iter().all(|f| dot(f, &d) >= 0);
                    if feasible && !edges.iter().any(|(e, _)| *e == d) {
                        edges.push((d, tight));
                    }
                }
            }
        }
        if edges.len() < 3 {
            return Err(ToricError::DegenerateCone);
        }
        // walk the cycle of edges through shared facets
        let mut order = vec![0];
        while order.len() < edges.len() {
            let last = &edges[*order.last().expect("nonempty")].1;
            let next = (0..edges.len())
                .find(|j| !order.contains(j) && edges[*j].1.iter().any(|f| last.contains(f)))
                .ok_or(ToricError::DegenerateCone)?;
            order.push(next);
        }
        let edges: Vec<[i64; 3]> = order.into_iter().map(|j| edges[j].0).collect();
        let e0 = [edges[0][0] as i128, edges[0][1] as i128, edges[0][2] as i128];
        let fan = edges
            .windows(2)
            .skip(1)
            .map(|w| {
                let det = det_i(&e0, &w[0], &w[1]);
                i64::try_from(det.abs()).map_err(|_| ToricError::DegenerateCone)
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(VolumeFunctional {
            generators: dg.normals.clone(),
            facets,
            edges,
            fan,
        })
    }

    pub fn generators(&self) -> &[[i64; 3]] {
        &self.generators
    }

    /// Rays of the original cone, primitive.
    pub fn rays(&self) -> &[[i64; 3]] {
        &self.facets
    }

    fn check_interior(&self, xi: &[BigRational; 3]) -> Result<(), ToricError> {
        for (index, m) in self.generators.iter().chain(&self.edges).enumerate() {
            let p = dot_q(&lift(m), xi);
            if !p.is_positive() {
                return Err(ToricError::Unbounded {
                    xi: xi.clone().map(|x| x.to_f64().unwrap_or(f64::NAN)),
                    index: index % self.generators.len(),
                    pairing: p.to_f64().unwrap_or(f64::NAN),
                });
            }
        }
        Ok(())
    }

    /// Exact volume at a rational point.
    pub fn volume_exact(&self, xi: &[BigRational; 3]) -> Result<BigRational, ToricError> {
        self.check_interior(xi)?;
        let s: Vec<BigRational> = self.edges.iter().map(|e| dot_q(&lift(e), xi)).collect();
        let mut six_vol = BigRational::zero();
        for (j, det) in self.fan.iter().enumerate() {
            six_vol += rat(*det) / (&s[0] * &s[j + 1] * &s[j + 2]);
        }
        Ok(six_vol / rat(6))
    }

    pub fn volume(&self, xi: &[f64; 3]) -> Result<f64, ToricError> {
        let q = [to_rational(xi[0])?, to_rational(xi[1])?, to_rational(xi[2])?];
        Ok(self.volume_exact(&q)?.to_f64().unwrap_or(f64::NAN))
    }

    /// Sum over rays of `det(r_{a-1}, r_a, r_{a+1}) / (det(r_{a-1}, r_a, xi) det(r_a, r_{a+1}, xi))`.
    pub fn closed_form(&self, xi: &[f64; 3]) -> Result<f64, ToricError> {
        let q = [to_rational(xi[0])?, to_rational(xi[1])?, to_rational(xi[2])?];
        self.check_interior(&q)?;
        let r: Vec<[BigRational; 3]> = self.facets.iter().map(lift).collect();
        let n = r.len();
        let mut total = BigRational::zero();
        for a in 0..n {
            let prev = &r[(a + n - 1) % n];
            let next = &r[(a + 1) % n];
            let num = det_q(prev, &r[a], next);
            let den = det_q(prev, &r[a], &q) * det_q(&r[a], next, &q);
            total += num / den;
        }
        Ok(total.to_f64().unwrap_or(f64::NAN))
    }
}

fn det_i(a: &[i128; 3], b: &[i64; 3], c: &[i64; 3]) -> i128 {
    let b = b.map(i128::from);
    let c = c.map(i128::from);
    a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0])
}

/// Volume of `Delta(xi)`; fails unless `xi` pairs positively with every generator.
pub fn reeb_volume(xi: &ReebVector, dg: &DualGenerators) -> Result<f64, ToricError> {
    VolumeFunctional::new(dg)?.volume(&xi.xi)
}

/// The alternative rational-function evaluator, proportional to [`reeb_volume`].
pub fn reeb_volume_closed_form(xi: &ReebVector, dg: &DualGenerators) -> Result<f64, ToricError> {
    VolumeFunctional::new(dg)?.closed_form(&xi.xi)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OptimizerMethod {
    Newton,
    NelderMeadThenNewton,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ReebSolution {
    pub xi: ReebVector,
    pub volume: f64,
    pub gradient_norm: f64,
    pub iterations: usize,
    pub method: OptimizerMethod,
}

#[derive(Debug, Clone)]
pub struct ReebOptions {
    /// Positive multiplier applied to the objective.
    pub objective_scale: BigRational,
    pub gradient_tolerance: f64,
    pub max_iterations: usize,
}

impl Default for ReebOptions {
    fn default() -> Self {
        ReebOptions {
            objective_scale: rat(1),
            gradient_tolerance: 1e-10,
            max_iterations: 200,
        }
    }
}

struct Objective<'a> {
    vol: &'a VolumeFunctional,
    scale: BigRational,
    step: BigRational,
}

struct Local {
    value: BigRational,
    grad: [f64; 2],
    hess: [[f64; 2]; 2],
}

impl Objective<'_> {
    fn point(&self, x: &[BigRational; 2]) -> [BigRational; 3] {
        [rat(3), x[0].clone(), x[1].clone()]
    }

    fn value(&self, x: &[BigRational; 2]) -> Option<BigRational> {
        self.vol
            .volume_exact(&self.point(x))
            .ok()
            .map(|v| v * &self.scale)
    }

    fn value_f(&self, x: [f64; 2]) -> Option<BigRational> {
        self.value(&[BigRational::from_float(x[0])?, BigRational::from_float(x[1])?])
    }

    /// Central differences evaluated exactly, so only truncation error remains.
    fn local(&self, x: [f64; 2]) -> Option<Local> {
        let c = [BigRational::from_float(x[0])?, BigRational::from_float(x[1])?];
        let h = &self.step;
        let at = |d0: i32, d1: i32| {
            let p = [&c[0] + h * rat(d0 as i64), &c[1] + h * rat(d1 as i64)];
            self.value(&p)
        };
        let f0 = at(0, 0)?;
        let fp0 = at(1, 0)?;
        let fm0 = at(-1, 0)?;
        let f0p = at(0, 1)?;
        let f0m = at(0, -1)?;
        let fpp = at(1, 1)?;
        let fpm = at(1, -1)?;
        let fmp = at(-1, 1)?;
        let fmm = at(-1, -1)?;
        let two = rat(2);
        let h2 = h * h;
        let g0 = (&fp0 - &fm0) / (&two * h);
        let g1 = (&f0p - &f0m) / (&two * h);
        let h00 = (&fp0 - &two * &f0 + &fm0) / &h2;
        let h11 = (&f0p - &two * &f0 + &f0m) / &h2;
        let h01 = (fpp - fpm - fmp + fmm) / (rat(4) * &h2);
        let f = |q: BigRational| q.to_f64().unwrap_or(f64::NAN);
        let h01 = f(h01);
        Some(Local {
            value: f0,
            grad: [f(g0), f(g1)],
            hess: [[f(h00), h01], [h01, f(h11)]],
        })
    }

    fn pairings(&self, x: [f64; 2]) -> Vec<(f64, [f64; 2])> {
        self.vol
            .generators
            .iter()
            .map(|m| {
                let s = XI_FIRST * m[0] as f64 + m[1] as f64 * x[0] + m[2] as f64 * x[1];
                (s, [m[1] as f64, m[2] as f64])
            })
            .collect()
    }

    fn feasible(&self, x: [f64; 2]) -> bool {
        x[0].is_finite() && x[1].is_finite() && self.pairings(x).iter().all(|(s, _)| *s > 0.0)
    }

    /// `-sum log <m, xi>` with its gradient and Hessian.
    fn barrier(&self, x: [f64; 2]) -> (f64, [f64; 2], [[f64; 2]; 2]) {
        let mut b = 0.0;
        let mut g = [0.0; 2];
        let mut hm = [[0.0; 2]; 2];
        for (s, m) in self.pairings(x) {
            b -= s.ln();
            for i in 0..2 {
                g[i] -= m[i] / s;
                for j in 0..2 {
                    hm[i][j] += m[i] * m[j] / (s * s);
                }
            }
        }
        (b, g, hm)
    }
}

fn norm(g: [f64; 2]) -> f64 {
    g[0].hypot(g[1])
}

/// Damped Newton on the barrier-augmented objective with weight `mu`.
/// Returns the final iterate and the number of iterations spent.
fn newton_phase(obj: &Objective, mut x: [f64; 2], mu: f64, tol: f64, max_iter: usize) -> ([f64; 2], usize) {
    for iter in 0..max_iter {
        let Some(loc) = obj.local(x) else {
            return (x, iter);
        };
        let (b, bg, bh) = obj.barrier(x);
        let g = [loc.grad[0] + mu * bg[0], loc.grad[1] + mu * bg[1]];
        if norm(g) <= tol {
            return (x, iter);
        }
        let hs = [
            [loc.hess[0][0] + mu * bh[0][0], loc.hess[0][1] + mu * bh[0][1]],
            [loc.hess[1][0] + mu * bh[1][0], loc.hess[1][1] + mu * bh[1][1]],
        ];
        let det = hs[0][0] * hs[1][1] - hs[0][1] * hs[1][0];
        let mut d = if hs[0][0] > 0.0 && det > 0.0 {
            [
                -(hs[1][1] * g[0] - hs[0][1] * g[1]) / det,
                -(-hs[1][0] * g[0] + hs[0][0] * g[1]) / det,
            ]
        } else {
            [-g[0], -g[1]]
        };
        let mut slope = g[0] * d[0] + g[1] * d[1];
        if slope >= 0.0 {
            d = [-g[0], -g[1]];
            slope = -(g[0] * g[0] + g[1] * g[1]);
        }
        let mut t = 1.0;
        let mut accepted = false;
        for _ in 0..60 {
            let cand = [x[0] + t * d[0], x[1] + t * d[1]];
            if cand != x && obj.feasible(cand) {
                if let Some(fv) = obj.value_f(cand) {
                    let df = (fv - &loc.value).to_f64().unwrap_or(f64::INFINITY);
                    let db = if mu > 0.0 { obj.barrier(cand).0 - b } else { 0.0 };
                    if df + mu * db <= 1e-4 * t * slope {
                        x = cand;
                        accepted = true;
                        break;
                    }
                }
            }
            t *= 0.5;
        }
        if !accepted {
            return (x, iter + 1);
        }
    }
    (x, max_iter)
}

/// Simplex search on the unaugmented objective.
fn nelder_mead(obj: &Objective, start: [f64; 2], iters: usize) -> [f64; 2] {
    let eval = |x: [f64; 2]| -> f64 {
        if !obj.feasible(x) {
            return f64::INFINITY;
        }
        obj.value_f(x)
            .and_then(|v| v.to_f64())
            .unwrap_or(f64::INFINITY)
    };
    let scale = 0.05 * (start[0].abs() + start[1].abs()).max(1.0);
    let mut simplex: Vec<([f64; 2], f64)> = [
        start,
        [start[0] + scale, start[1]],
        [start[0], start[1] + scale],
    ]
    .into_iter()
    .map(|p| (p, eval(p)))
    .collect();
    for _ in 0..iters {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let (best, worst) = (simplex[0], simplex[2]);
        let c = [
            (simplex[0].0[0] + simplex[1].0[0]) / 2.0,
            (simplex[0].0[1] + simplex[1].0[1]) / 2.0,
        ];
        let along = |t: f64| [c[0] + t * (worst.0[0] - c[0]), c[1] + t * (worst.0[1] - c[1])];
        let r = along(-1.0);
        let fr = eval(r);
        if fr < best.1 {
            let e = along(-2.0);
            let fe = eval(e);
            simplex[2] = if fe < fr { (e, fe) } else { (r, fr) };
        } else if fr < simplex[1].1 {
            simplex[2] = (r, fr);
        } else {
            let k = along(0.5);
            let fk = eval(k);
            if fk < worst.1 {
                simplex[2] = (k, fk);
            } else {
                for s in simplex.iter_mut().skip(1) {
                    let p = [(s.0[0] + best.0[0]) / 2.0, (s.0[1] + best.0[1]) / 2.0];
                    *s = (p, eval(p));
                }
            }
        }
        let spread = (simplex[2].0[0] - simplex[0].0[0]).abs() + (simplex[2].0[1] - simplex[0].0[1]).abs();
        if spread < 1e-13 {
            break;
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    simplex[0].0
}

/// Minimizer of the volume functional on the slice `xi_1 = 3`.
pub fn minimize_reeb(dg: &DualGenerators) -> Result<ReebSolution, ToricError> {
    minimize_reeb_with(dg, &ReebOptions::default())
}

pub fn minimize_reeb_with(dg: &DualGenerators, opts: &ReebOptions) -> Result<ReebSolution, ToricError> {
    let vol = VolumeFunctional::new(dg)?;
    let rays = vol.rays().to_vec();
    // barycenter of the rays, rescaled to the slice
    let mut mean = [0.0; 3];
    for r in &rays {
        for i in 0..3 {
            mean[i] += r[i] as f64;
        }
    }
    if mean[0] <= 0.0 {
        return Err(ToricError::DegenerateCone);
    }
    let start = [XI_FIRST * mean[1] / mean[0], XI_FIRST * mean[2] / mean[0]];
    let obj = Objective {
        vol: &vol,
        scale: opts.objective_scale.clone(),
        step: BigRational::new(BigInt::from(1), BigInt::from(1_000_000)),
    };
    if !obj.feasible(start) {
        return Err(ToricError::DegenerateCone);
    }
    let f0 = obj
        .value_f(start)
        .and_then(|v| v.to_f64())
        .ok_or(ToricError::NonFinite)?;
    let tol = opts.gradient_tolerance;
    let mut x = start;
    let mut iterations = 0;
    for mu in [1e-2 * f0, 1e-4 * f0, 1e-6 * f0] {
        let (nx, it) = newton_phase(&obj, x, mu, 1e-6 * f0.max(tol), opts.max_iterations);
        x = nx;
        iterations += it;
    }
    let (nx, it) = newton_phase(&obj, x, 0.0, tol, opts.max_iterations);
    x = nx;
    iterations += it;
    let mut method = OptimizerMethod::Newton;
    let mut gnorm = obj.local(x).map(|l| norm(l.grad)).unwrap_or(f64::INFINITY);
    if gnorm > tol {
        method = OptimizerMethod::NelderMeadThenNewton;
        let polished = nelder_mead(&obj, x, 2000);
        let (nx, it) = newton_phase(&obj, polished, 0.0, tol, opts.max_iterations);
        x = nx;
        iterations += it;
        gnorm = obj.local(x).map(|l| norm(l.grad)).unwrap_or(f64::INFINITY);
    }
    let xi = [XI_FIRST, x[0], x[1]];
    if gnorm > tol {
        return Err(ToricError::NotConverged {
            last: xi,
            gradient_norm: gnorm,
        });
    }
    Ok(ReebSolution {
        xi: ReebVector { xi },
        volume: vol.volume(&xi)?,
        gradient_norm: gnorm,
        iterations,
        method,
    })
}

/// `<m, xi>` for every dual generator, in generator order.
pub fn coordinate_weights(xi: &ReebVector, dg: &DualGenerators) -> Vec<f64> {
    dg.normals
        .iter()
        .map(|m| m[0] as f64 * xi.xi[0] + m[1] as f64 * xi.xi[1] + m[2] as f64 * xi.xi[2])
        .collect()
}

/// Exact version of [`coordinate_weights`].
pub fn coordinate_weights_exact(xi: &[QuadExt; 3], dg: &DualGenerators) -> Vec<QuadExt> {
    dg.normals
        .iter()
        .map(|m| {
            (0..3).fold(QuadExt::zero(), |acc, i| {
                acc + xi[i].scale(&rat(m[i]))
            })
        })
        .collect()
}

/// `(3, 3kl / (2(k + l - sqrt D)), 3k / (sqrt D + 2k - l))` with `D = k^2 - kl + l^2`.
pub fn closed_form_reeb(k: u32, l: u32) -> [QuadExt; 3] {
    assert!(k >= 1 && l >= 1, "k and l must be positive");
    let (k, l) = (k as i64, l as i64);
    let root = QuadExt::sqrt((k * k - k * l + l * l) as u64);
    let beta_den = (QuadExt::from_int(k + l) - root.clone()).scale(&rat(2));
    let gamma_den = root + QuadExt::from_int(2 * k - l);
    let beta = QuadExt::from_int(3 * k * l)
        .try_div(&beta_den)
        .expect("k + l exceeds sqrt D");
    let gamma = QuadExt::from_int(3 * k)
        .try_div(&gamma_den)
        .expect("sqrt D + 2k - l is positive");
    [QuadExt::from_int(3), beta, gamma]
}

pub fn to_reeb_vector(xi: &[QuadExt; 3]) -> ReebVector {
    ReebVector {
        xi: [xi[0].to_f64(), xi[1].to_f64(), xi[2].to_f64()],
    }
}

/// Exact weights of `(u, v, w, z)` on `C_{k,l}`.
pub fn ckl_weights_exact(k: u32, l: u32) -> [QuadExt; 4] {
    let dg = dual_generators(&rays_from_diagram(&ToricDiagram::ckl(k, l))).expect("C_{k,l} cone");
    let w = coordinate_weights_exact(&closed_form_reeb(k, l), &dg);
    CKL_UVWZ.map(|i| w[i].clone())
}

/// Matches a numerical Reeb vector against the closed form for `C_{k,l}`.
pub fn recognize_ckl(xi: &ReebVector, k: u32, l: u32, rel_tol: f64) -> Option<[QuadExt; 3]> {
    let exact = closed_form_reeb(k, l);
    let close = exact.iter().zip(xi.xi).all(|(e, x)| {
        let e = e.to_f64();
        (e - x).abs() <= rel_tol * e.abs().max(1.0)
    });
    close.then_some(exact)
}
