//! Multi-start damped Gauss-Newton search for common complex zeros of a
//! polynomial system, used to look for singular points.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::transverse::{combinations, poly_det};
use crate::wpoly::WPoly;

/// The equations together with every maximal minor of their Jacobian in `vars`.
/// A common zero is a singular point of `{equations = 0}`.
pub fn critical_system(equations: &[WPoly], vars: &[usize], dim: usize) -> Vec<WPoly> {
    let mut out: Vec<WPoly> = equations.to_vec();
    let c = equations.len();
    if c == 0 || c > vars.len() {
        return out;
    }
    let jac: Vec<Vec<WPoly>> = equations
        .iter()
        .map(|e| {
            vars.iter()
                .map(|&v| e.partial_derivative(v).expect("variable in range"))
                .collect()
        })
        .collect();
    for cols in combinations(vars.len(), c) {
        let sub: Vec<Vec<WPoly>> = jac
            .iter()
            .map(|row| cols.iter().map(|&k| row[k].clone()).collect())
            .collect();
        let minor = poly_det(&sub, dim);
        if !minor.is_zero() && !out.contains(&minor) {
            out.push(minor);
        }
    }
    out
}

#[derive(Debug, Clone)]
pub struct PolySystem {
    polys: Vec<WPoly>,
    vars: Vec<usize>,
    jac: Vec<Vec<WPoly>>,
}

#[derive(Debug, Clone)]
pub struct Root {
    /// Full point; entries outside the unknowns keep their fixed values.
    pub point: Vec<Complex64>,
    pub residual: f64,
}

impl PolySystem {
    /// Unknowns are the variables `vars`; all others are fixed per solve.
    pub fn new(polys: Vec<WPoly>, vars: Vec<usize>) -> Self {
        let jac = polys
            .iter()
            .map(|p| {
                vars.iter()
                    .map(|&v| p.partial_derivative(v).expect("variable in range"))
                    .collect()
            })
            .collect();
        PolySystem { polys, vars, jac }
    }

    pub fn residual(&self, point: &[Complex64]) -> DVector<Complex64> {
        DVector::from_iterator(self.polys.len(), self.polys.iter().map(|p| p.eval_complex(point)))
    }

    fn jacobian(&self, point: &[Complex64]) -> DMatrix<Complex64> {
        DMatrix::from_fn(self.polys.len(), self.vars.len(), |r, c| self.jac[r][c].eval_complex(point))
    }

    /// Levenberg-Marquardt iteration from `start`.
    pub fn refine(&self, mut point: Vec<Complex64>, max_iter: usize, tol: f64) -> Root {
        let mut f = self.residual(&point);
        let mut norm = f.norm();
        let mut lambda = 1e-3;
        for _ in 0..max_iter {
            if norm <= tol * 1e-3 || !norm.is_finite() {
                break;
            }
            let j = self.jacobian(&point);
            let jh = j.adjoint();
            let mut a = &jh * &j;
            let scale = (0..a.nrows()).map(|i| a[(i, i)].norm()).fold(0.0, f64::max).max(1e-300);
            for i in 0..a.nrows() {
                a[(i, i)] += Complex64::new(lambda * scale, 0.0);
            }
            let rhs = -(&jh * &f);
            let Some(step) = a.lu().solve(&rhs) else {
                lambda *= 10.0;
                continue;
            };
            let mut cand = point.clone();
            for (k, &v) in self.vars.iter().enumerate() {
                cand[v] += step[k];
            }
            let fc = self.residual(&cand);
            let nc = fc.norm();
            if nc < norm {
                point = cand;
                f = fc;
                norm = nc;
                lambda = (lambda / 3.0).max(1e-15);
            } else {
                lambda *= 4.0;
                if lambda > 1e12 {
                    break;
                }
            }
        }
        Root { point, residual: norm }
    }

    /// Best root found from `starts` random initial points around `template`.
    pub fn search(&self, template: &[Complex64], starts: usize, seed: u64, tol: f64) -> Root {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut best: Option<Root> = None;
        for s in 0..starts {
            let mut p = template.to_vec();
            // the origin first, then random points of growing size
            let radius = if s == 0 { 0.0 } else { 0.5 * (1.0 + (s % 4) as f64) };
            for &v in &self.vars {
                p[v] = Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)) * radius;
            }
            let root = self.refine(p, 200, tol);
            let better = best.as_ref().is_none_or(|b| root.residual < b.residual);
            if better {
                let done = root.residual <= tol;
                best = Some(root);
                if done {
                    break;
                }
            }
        }
        best.unwrap_or(Root {
            point: template.to_vec(),
            residual: f64::INFINITY,
        })
    }
}
