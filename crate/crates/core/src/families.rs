//! Built-in cone presentations and smoothings.

use crate::admissibility::SmoothingCandidate;
use crate::exactnum::{GaussRat, QuadExt};
use crate::toric::ckl_weights_exact;
use crate::transverse::ConePresentation;
use crate::wpoly::{Multiweight, WPoly};

/// A presentation together with one smoothing of it.
#[derive(Debug, Clone, PartialEq)]
pub struct Case {
    pub name: String,
    pub cone: ConePresentation,
    pub smoothing: SmoothingCandidate,
    /// Orbifold smoothness of the cone metric, which is not checked here.
    pub attested_orbifold: bool,
}

fn poly(dim: usize, terms: &[(i64, &[u32])]) -> WPoly {
    WPoly::from_terms(dim, terms.iter().map(|(c, e)| (GaussRat::from_int(*c), e.to_vec())))
}

fn names(n: usize) -> Vec<String> {
    WPoly::default_names(n)
}

/// `z1^l z2^k + z3^2 + z4^2` with the Reeb weights of `C_{k,l}`; `z1 = v`, `z2 = u`.
pub fn ckl_presentation(k: u32, l: u32) -> ConePresentation {
    let [u, v, w, z] = ckl_weights_exact(k, l);
    let p = poly(4, &[(1, &[l, k, 0, 0]), (1, &[0, 0, 2, 0]), (1, &[0, 0, 0, 2])]);
    let mut axes = Vec::new();
    if k >= 2 {
        axes.push(0);
    }
    if l >= 2 {
        axes.push(1);
    }
    let weights = Multiweight::new(vec![v, u, w, z]).expect("Reeb weights are positive");
    ConePresentation::new(names(4), vec![p], weights, axes).expect("well-formed presentation")
}

fn case(name: String, cone: ConePresentation, q: Vec<WPoly>, eps0: GaussRat) -> Case {
    let smoothing = SmoothingCandidate::new(&cone, q, eps0).expect("nonzero smoothing");
    Case {
        name,
        cone,
        smoothing,
        attested_orbifold: true,
    }
}

/// `z1 z2^k + z3^2 + z4^2 = z1^m + 1` on `C_{k,1}`.
pub fn spp(k: u32, m: u32) -> Case {
    let cone = ckl_presentation(k, 1);
    let q = poly(4, &[(1, &[m, 0, 0, 0]), (1, &[0, 0, 0, 0])]);
    case(format!("spp_k{k}_m{m}"), cone, vec![q], GaussRat::one())
}

/// `z1^k z2^k + z3^2 + z4^2 = z1^m + z2^m + c` on `C_{k,k}`.
pub fn ckk(k: u32, m: u32, c: i64) -> Case {
    let cone = ckl_presentation(k, k);
    let q = poly(4, &[(1, &[m, 0, 0, 0]), (1, &[0, m, 0, 0]), (c, &[0, 0, 0, 0])]);
    case(format!("ckk_k{k}_m{m}"), cone, vec![q], GaussRat::one())
}

/// `z1 z2 z3 - z4^n` with weights `(n, n, n, 3)`.
pub fn c3_zn2_presentation(n: u32) -> ConePresentation {
    let p = poly(4, &[(1, &[1, 1, 1, 0]), (-1, &[0, 0, 0, n])]);
    let ni = n as i64;
    let weights = Multiweight::from_ints(&[ni, ni, ni, 3]).expect("positive weights");
    ConePresentation::new(names(4), vec![p], weights, vec![0, 1, 2]).expect("well-formed presentation")
}

/// `Q = z1^2 + z2^2 + z3^2 + 1`, of degree `2n`.
pub fn c3_zn2_quadratic(n: u32) -> Case {
    let q = poly(
        4,
        &[(1, &[2, 0, 0, 0]), (1, &[0, 2, 0, 0]), (1, &[0, 0, 2, 0]), (1, &[0, 0, 0, 0])],
    );
    case(format!("c3_z{n}2_quadratic"), c3_zn2_presentation(n), vec![q], GaussRat::one())
}

/// `Q = z1 + z2 + z3`, of degree `n`.
pub fn c3_zn2_linear(n: u32) -> Case {
    let q = poly(4, &[(1, &[1, 0, 0, 0]), (1, &[0, 1, 0, 0]), (1, &[0, 0, 1, 0])]);
    case(format!("c3_z{n}2_linear"), c3_zn2_presentation(n), vec![q], GaussRat::one())
}

/// `z1 z5 - z4^2 = z2 + z3`, `z2 z3 - z5^2 = z1^3 + 1` with weights `(2, 4, 4, 3, 4)`.
pub fn ci_presentation() -> ConePresentation {
    let p1 = poly(5, &[(1, &[1, 0, 0, 0, 1]), (-1, &[0, 0, 0, 2, 0])]);
    let p2 = poly(5, &[(1, &[0, 1, 1, 0, 0]), (-1, &[0, 0, 0, 0, 2])]);
    let weights = Multiweight::from_ints(&[2, 4, 4, 3, 4]).expect("positive weights");
    ConePresentation::new(names(5), vec![p1, p2], weights, vec![0, 1, 2]).expect("well-formed presentation")
}

pub fn ci_section4() -> Case {
    let q1 = poly(5, &[(1, &[0, 1, 0, 0, 0]), (1, &[0, 0, 1, 0, 0])]);
    let q2 = poly(5, &[(1, &[3, 0, 0, 0, 0]), (1, &[0, 0, 0, 0, 0])]);
    case("ci_section4".into(), ci_presentation(), vec![q1, q2], GaussRat::one())
}

/// `z1 z2^2 + z3^2 + z4^2 + 1 = 0`, the Milnor fiber of `C_{2,1}`.
pub fn milnor() -> Case {
    let cone = ckl_presentation(2, 1);
    let q = poly(4, &[(-1, &[0, 0, 0, 0])]);
    case("milnor_fiber".into(), cone, vec![q], GaussRat::one())
}

/// Same smoothing with `eps0 = 0`, i.e. the cone itself.
pub fn unperturbed(c: &Case) -> Case {
    let mut out = c.clone();
    out.name = format!("{}_eps0", c.name);
    out.smoothing.epsilon0 = GaussRat::zero();
    out
}

/// `sum w - sum d`, which equals the complex dimension for Calabi-Yau cones.
pub fn cy_balance(cp: &ConePresentation) -> QuadExt {
    let sd = cp
        .degrees()
        .iter()
        .fold(QuadExt::zero(), |acc, d| acc.try_add(d).expect("common field"));
    cp.weights().sum().try_sub(&sd).expect("common field")
}
