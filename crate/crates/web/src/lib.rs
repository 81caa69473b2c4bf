//! wasm-bindgen bindings for the static page in `www/`.
//!
//! Each export has a plain Rust twin returning `Result<_, String>` so the
//! logic is testable off the browser.

use wasm_bindgen::prelude::*;

use caputo_core::{
    build_interpolant, discrete_caputo, order_interior, FractionalOrder, HolderTestFunction, SchemeKind,
    UniformGrid,
};

fn scheme(name: &str) -> Result<SchemeKind, String> {
    name.parse::<SchemeKind>().map_err(|e| e.to_string())
}

/// Samples of the scheme's interpolant of `u_xi` at node `n`, interleaved as
/// `[s, interpolant(s), u(s), ...]` over `samples` points of `[0, t_n]`.
pub fn interpolant_samples(
    scheme_name: &str,
    m: u32,
    beta: f64,
    xi: f64,
    steps: usize,
    n: usize,
    samples: usize,
) -> Result<Vec<f64>, String> {
    let s = scheme(scheme_name)?;
    let f = HolderTestFunction::new(m, beta, xi).map_err(|e| e.to_string())?;
    let grid = UniformGrid::unit(steps).map_err(|e| e.to_string())?;
    let values = grid.sample(|t| f.eval(t));
    let p = build_interpolant(s, &grid, &values, n).map_err(|e| e.to_string())?;
    let end = grid.time(n);
    let count = samples.max(2);
    let mut out = Vec::with_capacity(3 * count);
    for i in 0..count {
        let t = end * i as f64 / (count - 1) as f64;
        out.extend([t, p.eval(t), f.eval(t)]);
    }
    Ok(out)
}

/// Discrete Caputo values of `u_xi` at every node `1..=steps`.
pub fn caputo_values(
    scheme_name: &str,
    alpha: f64,
    m: u32,
    beta: f64,
    xi: f64,
    steps: usize,
) -> Result<Vec<f64>, String> {
    let s = scheme(scheme_name)?;
    let alpha = FractionalOrder::new(alpha).map_err(|e| e.to_string())?;
    let f = HolderTestFunction::new(m, beta, xi).map_err(|e| e.to_string())?;
    let grid = UniformGrid::unit(steps).map_err(|e| e.to_string())?;
    let values = grid.sample(|t| f.eval(t));
    (1..=steps)
        .map(|n| {
            discrete_caputo(s, &grid, &values, n, alpha)
                .map(|v| v.value)
                .map_err(|e| e.to_string())
        })
        .collect()
}

/// Measured order `R` at `t = xi` with base step `2^-tau_exp`, returned as
/// `[R, m + beta - alpha]`.
pub fn measured_order(
    scheme_name: &str,
    alpha: f64,
    m: u32,
    beta: f64,
    xi: f64,
    tau_exp: i32,
) -> Result<Vec<f64>, String> {
    let s = scheme(scheme_name)?;
    let alpha = FractionalOrder::new(alpha).map_err(|e| e.to_string())?;
    let f = HolderTestFunction::new(m, beta, xi).map_err(|e| e.to_string())?;
    let row = order_interior(s, &f, alpha, (-f64::from(tau_exp)).exp2(), xi).map_err(|e| e.to_string())?;
    Ok(vec![row.measured_r, row.theoretical_order])
}

#[wasm_bindgen(js_name = interpolantSamples)]
pub fn interpolant_samples_js(
    scheme: &str,
    m: u32,
    beta: f64,
    xi: f64,
    steps: usize,
    n: usize,
    samples: usize,
) -> Result<Vec<f64>, JsValue> {
    interpolant_samples(scheme, m, beta, xi, steps, n, samples).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = caputoValues)]
pub fn caputo_values_js(scheme: &str, alpha: f64, m: u32, beta: f64, xi: f64, steps: usize) -> Result<Vec<f64>, JsValue> {
    caputo_values(scheme, alpha, m, beta, xi, steps).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = measuredOrder)]
pub fn measured_order_js(scheme: &str, alpha: f64, m: u32, beta: f64, xi: f64, tau_exp: i32) -> Result<Vec<f64>, JsValue> {
    measured_order(scheme, alpha, m, beta, xi, tau_exp).map_err(|e| JsValue::from_str(&e))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interpolant_is_interleaved_and_hits_nodes() {
        let out = interpolant_samples("l2", 1, 0.5, 0.5, 8, 8, 9).unwrap();
        assert_eq!(out.len(), 27);
        for chunk in out.chunks(3) {
            // the 9 samples land on the 8-step grid, where the interpolant is exact
            assert!((chunk[1] - chunk[2]).abs() < 1e-12);
        }
    }

    #[test]
    fn caputo_values_cover_every_node() {
        let v = caputo_values("lk3", 0.5, 1, 1.0, 0.25, 16).unwrap();
        assert_eq!(v.len(), 16);
        assert!(v.iter().all(|x| x.is_finite()));
    }

    #[test]
    fn measured_order_matches_theory_on_a_smooth_case() {
        let r = measured_order("l12", 0.5, 1, 0.5, 0.5, 7).unwrap();
        assert!((r[0] - r[1]).abs() < 0.1, "{r:?}");
    }

    #[test]
    fn bad_input_is_an_error_message() {
        assert!(measured_order("l9", 0.5, 1, 0.5, 0.5, 7).is_err());
        assert!(caputo_values("l1", 1.5, 1, 0.5, 0.5, 8).is_err());
        assert!(interpolant_samples("l2", 1, 0.5, 0.5, 8, 9, 10).is_err());
    }
}
