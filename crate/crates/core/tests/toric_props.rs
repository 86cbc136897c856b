use std::time::Instant;

use cycert::toric::*;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn ckl(k: u32, l: u32) -> DualGenerators {
    dual_generators(&rays_from_diagram(&ToricDiagram::ckl(k, l))).unwrap()
}

/// Random point of the slice `xi_1 = 3` that pairs positively with all generators.
fn random_interior(rng: &mut ChaCha8Rng, dg: &DualGenerators) -> [f64; 3] {
    loop {
        let xi = [3.0, rng.random_range(0.0..8.0), rng.random_range(0.0..8.0)];
        let ok = dg
            .normals()
            .iter()
            .all(|m| m[0] as f64 * xi[0] + m[1] as f64 * xi[1] + m[2] as f64 * xi[2] > 0.05);
        if ok {
            return xi;
        }
    }
}

/// Rejection sampling of `{y : <y, r> >= 0 for rays r, <y, xi> <= 1}` inside the
/// bounding box of the origin and the points `m / <m, xi>` for generators `m`.
fn monte_carlo_volume(rays: &[[i64; 3]], gens: &[[i64; 3]], xi: [f64; 3], samples: usize) -> f64 {
    let mut lo = [0.0f64; 3];
    let mut hi = [0.0f64; 3];
    for m in gens {
        let s = m[0] as f64 * xi[0] + m[1] as f64 * xi[1] + m[2] as f64 * xi[2];
        for i in 0..3 {
            lo[i] = lo[i].min(m[i] as f64 / s);
            hi[i] = hi[i].max(m[i] as f64 / s);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut hits = 0usize;
    for _ in 0..samples {
        let y: [f64; 3] = std::array::from_fn(|i| rng.random_range(lo[i]..hi[i]));
        let inside = rays
            .iter()
            .all(|m| m[0] as f64 * y[0] + m[1] as f64 * y[1] + m[2] as f64 * y[2] >= 0.0)
            && xi[0] * y[0] + xi[1] * y[1] + xi[2] * y[2] <= 1.0;
        if inside {
            hits += 1;
        }
    }
    let box_vol: f64 = (0..3).map(|i| hi[i] - lo[i]).product();
    hits as f64 / samples as f64 * box_vol
}

#[test]
fn conifold_volume_matches_monte_carlo() {
    let dg = ckl(1, 1);
    let xi = [3.0, 1.5, 1.5];
    let exact = reeb_volume(&ReebVector { xi }, &dg).unwrap();
    // rays of the conifold cone are the facet normals of its dual
    let rays = rays_from_diagram(&ToricDiagram::ckl(1, 1));
    let mc = monte_carlo_volume(rays.rays(), dg.normals(), xi, 2_000_000);
    assert!(exact > 0.0);
    assert!((exact - mc).abs() / exact < 0.01, "exact {exact} mc {mc}");
}

#[test]
fn volume_is_homogeneous_of_degree_minus_three() {
    let dg = ckl(2, 1);
    let xi = [3.0, 2.0, 1.0];
    let v1 = reeb_volume(&ReebVector { xi }, &dg).unwrap();
    let v2 = reeb_volume(&ReebVector { xi: xi.map(|x| 2.0 * x) }, &dg).unwrap();
    assert!((v1 / v2 - 8.0).abs() < 1e-12);
}

#[test]
fn boundary_xi_is_rejected() {
    let dg = ckl(2, 1);
    // <(1,0,-1), xi> = 0
    let err = reeb_volume(&ReebVector::new(1.0, 3.0), &dg).unwrap_err();
    assert!(matches!(err, ToricError::Unbounded { .. }));
}

#[test]
fn minimizer_agrees_with_closed_form_on_grid() {
    for k in 1..=4 {
        for l in 1..=4 {
            let start = Instant::now();
            let sol = minimize_reeb(&ckl(k, l)).unwrap();
            let exact = to_reeb_vector(&closed_form_reeb(k, l));
            for i in 0..3 {
                let rel = (sol.xi.xi[i] - exact.xi[i]).abs() / exact.xi[i];
                assert!(rel <= 1e-6, "(k,l)=({k},{l}) component {i}: {sol:?} vs {exact:?}");
            }
            assert!(sol.gradient_norm <= 1e-10);
            assert!(start.elapsed().as_secs_f64() < 5.0);
        }
    }
}

#[test]
fn midpoint_convexity_on_random_segments() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let cones = [ckl(1, 1), ckl(2, 1), ckl(3, 2)];
    for trial in 0..1000 {
        let dg = &cones[trial % cones.len()];
        let a = random_interior(&mut rng, dg);
        let b = random_interior(&mut rng, dg);
        let mid = [3.0, (a[1] + b[1]) / 2.0, (a[2] + b[2]) / 2.0];
        let f = |xi| reeb_volume(&ReebVector { xi }, dg).unwrap();
        let (fa, fb, fm) = (f(a), f(b), f(mid));
        assert!(fm <= (fa + fb) / 2.0 * (1.0 + 1e-12), "trial {trial}: {a:?} {b:?}");
    }
}

#[test]
fn argmin_is_scale_invariant() {
    for (k, l) in [(1, 1), (2, 1), (3, 2)] {
        let dg = ckl(k, l);
        let base = minimize_reeb(&dg).unwrap();
        let opts = ReebOptions {
            objective_scale: BigRational::from_integer(BigInt::from(10)),
            ..ReebOptions::default()
        };
        let scaled = minimize_reeb_with(&dg, &opts).unwrap();
        for i in 0..3 {
            assert!((base.xi.xi[i] - scaled.xi.xi[i]).abs() <= 1e-8);
        }
    }
}

#[test]
fn two_evaluators_have_constant_ratio() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (k, l) in [(1, 1), (2, 1), (4, 3)] {
        let dg = ckl(k, l);
        let ratios: Vec<f64> = (0..100)
            .map(|_| {
                let xi = ReebVector { xi: random_interior(&mut rng, &dg) };
                reeb_volume(&xi, &dg).unwrap() / reeb_volume_closed_form(&xi, &dg).unwrap()
            })
            .collect();
        let mean = ratios.iter().sum::<f64>() / ratios.len() as f64;
        let var = ratios.iter().map(|r| (r - mean).powi(2)).sum::<f64>() / ratios.len() as f64;
        assert!(var.sqrt() <= 1e-8, "std {}", var.sqrt());
        assert!((mean - 1.0 / 18.0).abs() < 1e-12, "mean {mean}");
    }
}

#[test]
fn weight_relation_balances() {
    for k in 1..=5u32 {
        for l in 1..=5u32 {
            let [u, v, w, z] = ckl_weights_exact(k, l);
            let lhs = u.scale(&BigRational::from_integer(k.into())) + v.scale(&BigRational::from_integer(l.into()));
            assert_eq!(lhs, w.clone() + z.clone());
            assert_eq!(w, z);
        }
    }
}

#[test]
fn numeric_weights_of_spp() {
    let dg = ckl(2, 1);
    let sol = minimize_reeb(&dg).unwrap();
    let w = coordinate_weights(&sol.xi, &dg);
    let uvwz = CKL_UVWZ.map(|i| w[i]);
    let s3 = 3f64.sqrt();
    let want = [s3, 3.0 - s3, (3.0 + s3) / 2.0, (3.0 + s3) / 2.0];
    for i in 0..4 {
        assert!((uvwz[i] - want[i]).abs() < 1e-9);
    }
    assert!(recognize_ckl(&sol.xi, 2, 1, 1e-6).is_some());
    assert!(recognize_ckl(&sol.xi, 3, 1, 1e-6).is_none());
}
