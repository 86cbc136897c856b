//! Browser bindings for the demo page in `www/`. Every export returns a JSON
//! string so the page needs no extra glue.

use cycert::conespec::ConeSpec;
use cycert::families::spp;
use cycert::pipeline::{run_case, run_pipeline, PipelineOptions};
use cycert::toric::{
    closed_form_reeb, dual_generators, minimize_reeb, rays_from_diagram, reeb_volume, ReebVector, ToricDiagram,
};
use serde_json::json;
use wasm_bindgen::prelude::*;

const SPECS: [(&str, &str); 8] = [
    ("spp_k2_m2", include_str!("../../core/fixtures/specs/spp_k2_m2.toml")),
    ("spp_k3_m2", include_str!("../../core/fixtures/specs/spp_k3_m2.toml")),
    ("ckk_k2_m2", include_str!("../../core/fixtures/specs/ckk_k2_m2.toml")),
    ("c3_z22_quadratic", include_str!("../../core/fixtures/specs/c3_z22_quadratic.toml")),
    ("c3_z32_quadratic", include_str!("../../core/fixtures/specs/c3_z32_quadratic.toml")),
    ("c3_z22_linear", include_str!("../../core/fixtures/specs/c3_z22_linear.toml")),
    ("ci_section4", include_str!("../../core/fixtures/specs/ci_section4.toml")),
    ("milnor_fiber", include_str!("../../core/fixtures/specs/milnor_fiber.toml")),
];

fn err(e: impl std::fmt::Display) -> JsError {
    JsError::new(&e.to_string())
}

/// Names and texts of the bundled specs.
#[wasm_bindgen]
pub fn bundled_specs() -> String {
    let v: Vec<_> = SPECS.iter().map(|(n, t)| json!({ "name": n, "toml": t })).collect();
    serde_json::to_string(&v).expect("json")
}

/// Volume of the Reeb polytope over the slice `xi_1 = 3` of the Reeb cone of
/// `C_{k,l}`, sampled on a `resolution x resolution` grid, plus the minimizer.
#[wasm_bindgen]
pub fn reeb_landscape(k: u32, l: u32, resolution: usize) -> Result<String, JsError> {
    if k == 0 || l == 0 || k > 12 || l > 12 {
        return Err(err("k and l must lie in 1..=12"));
    }
    let n = resolution.clamp(8, 160);
    let diagram = ToricDiagram::ckl(k, l);
    let dg = dual_generators(&rays_from_diagram(&diagram)).map_err(err)?;
    let sol = minimize_reeb(&dg).map_err(err)?;
    let exact = closed_form_reeb(k, l);
    let polygon: Vec<[f64; 2]> = diagram.points().iter().map(|p| [3.0 * p[0] as f64, 3.0 * p[1] as f64]).collect();
    let x1 = polygon.iter().map(|p| p[0]).fold(0.0, f64::max);
    let y1 = polygon.iter().map(|p| p[1]).fold(0.0, f64::max);
    let mut values = Vec::with_capacity(n * n);
    for j in 0..n {
        for i in 0..n {
            let xi = [3.0, (i as f64 + 0.5) * x1 / n as f64, (j as f64 + 0.5) * y1 / n as f64];
            values.push(reeb_volume(&ReebVector { xi }, &dg).ok());
        }
    }
    Ok(json!({
        "k": k,
        "l": l,
        "polygon": polygon,
        "bounds": [0.0, x1, 0.0, y1],
        "n": n,
        "values": values,
        "minimizer": sol.xi.xi,
        "min_volume": sol.volume,
        "iterations": sol.iterations,
        "exact": exact.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
    })
    .to_string())
}

/// Degree window and rate data for `z1 z2^k + z3^2 + z4^2 = z1^m + 1`, for
/// every `m` from 1 to `m_max`.
#[wasm_bindgen]
pub fn admissibility_window(k: u32, m_max: u32) -> Result<String, JsError> {
    if !(2..=8).contains(&k) || m_max == 0 || m_max > 40 {
        return Err(err("need 2 <= k <= 8 and 1 <= m_max <= 40"));
    }
    let opts = PipelineOptions {
        spot_check_starts: 0,
        ..PipelineOptions::default()
    };
    let mut rows = Vec::new();
    let mut header = None;
    for m in 1..=m_max {
        let cert = run_case(&spp(k, m), &opts);
        let ell = &cert.smoothing.ell[0];
        let adm = cert.admissibility.as_ref();
        if header.is_none() {
            if let Some(a) = adm {
                let d = &cert.presentation.degrees[0];
                let lo = d.try_sub(&a.d_s).map_err(err)?;
                header = Some(json!({
                    "d": d,
                    "d_s": a.d_s,
                    "ell_low": lo,
                    "ell_high": d,
                }));
            }
        }
        rows.push(json!({
            "m": m,
            "ell": ell,
            "nu": adm.and_then(|a| a.nu.clone()),
            "beta": adm.and_then(|a| a.beta.clone()),
            "branch": adm.and_then(|a| a.branch),
            "status": cert.verdict.status,
            "reason": cert.verdict.reason,
        }));
    }
    Ok(json!({ "k": k, "window": header, "members": rows }).to_string())
}

/// Certificate for a TOML spec, as `{ json, markdown, certified }`.
#[wasm_bindgen]
pub fn certify_spec(toml: &str, param: Option<i32>) -> Result<String, JsError> {
    let spec = ConeSpec::from_toml(toml).map_err(err)?;
    let resolved = spec.resolve(param.map(i64::from)).map_err(err)?;
    let opts = PipelineOptions {
        spot_check_starts: 16,
        ..PipelineOptions::default()
    };
    let cert = run_pipeline(&resolved, &opts);
    Ok(json!({
        "certified": cert.is_certified(),
        "json": cert.to_json(),
        "markdown": cert.to_markdown(),
    })
    .to_string())
}
