//! wasm-bindgen entry points for the static demo page in `www/`. Each returns
//! a JSON string of column arrays ready for plotting.

use ionqc::config::ScenarioBuilder;
use ionqc::oracle::adiabatic_trace;
use ionqc::report::{gate_report, GateMethod, Report};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn js(e: ionqc::Error) -> JsValue {
    JsValue::from_str(&e.to_string())
}

fn log_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    let n = points.max(2);
    (0..n)
        .map(|i| (lo.ln() + (hi.ln() - lo.ln()) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

fn column(reports: &[Report], key: &str) -> Value {
    reports.iter().map(|r| r.get(key)).collect::<Vec<_>>().into()
}

/// Rabi-flop failure and rate of a preset cavity as its finesse varies.
pub fn finesse_scan(preset: &str, finesse_lo: f64, finesse_hi: f64, points: usize) -> ionqc::Result<Value> {
    let base = ScenarioBuilder::new().preset(preset)?;
    let grid = log_grid(finesse_lo, finesse_hi, points);
    let reports = grid
        .iter()
        .map(|&f| {
            let mut b = base.clone();
            b.set_number("cavity.finesse", f)?;
            gate_report(&b.build()?, GateMethod::RabiFlop)
        })
        .collect::<ionqc::Result<Vec<_>>>()?;
    Ok(json!({
        "finesse": grid,
        "p": column(&reports, "p"),
        "rate_hz": column(&reports, "rate_hz"),
    }))
}

/// Light-shift gate figures for strings of `n_lo..=n_hi` ions at 5λ spacing.
pub fn string_scan(species: &str, n_lo: u32, n_hi: u32) -> ionqc::Result<Value> {
    let n_lo = n_lo.max(2);
    let n_hi = n_hi.max(n_lo);
    let step = ((n_hi - n_lo) / 60).max(1);
    let ns: Vec<u32> = (n_lo..=n_hi).step_by(step as usize).collect();
    let reports = ns
        .iter()
        .map(|&n| {
            let text = format!("species = \"{species}\"\n[trap]\nn_ions = {n}\n");
            let sc = ScenarioBuilder::new().text(&text, "demo")?.build()?;
            gate_report(&sc, GateMethod::Lightshift)
        })
        .collect::<ionqc::Result<Vec<_>>>()?;
    Ok(json!({
        "n_ions": ns,
        "axial_freq_hz": column(&reports, "axial_freq_hz"),
        "eta": column(&reports, "eta"),
        "rate_hz": column(&reports, "rate_hz"),
        "p_est": column(&reports, "p_est"),
        "per_ion_time_s": column(&reports, "per_ion_time_s"),
    }))
}

/// Populations during a linear-ramp passage, time in units of 1/Ω.
pub fn passage_trace(t_omega: f64, g_over_omega: f64, kappa_over_g: f64, points: usize) -> ionqc::Result<Value> {
    let g = g_over_omega;
    let trace = adiabatic_trace(1.0, g, kappa_over_g * g, 0.0, t_omega, points.clamp(2, 2000))?;
    let pick = |k: usize| trace.iter().map(|s| s.1[k]).collect::<Vec<_>>();
    Ok(json!({
        "t_omega": trace.iter().map(|s| s.0).collect::<Vec<_>>(),
        "p_ba0": pick(4),
        "p_ab0": pick(0),
        "p_bb1": pick(2),
        "p_excited": trace.iter().map(|s| s.1[1] + s.1[3]).collect::<Vec<_>>(),
        "leaked": trace.iter().map(|s| s.2).collect::<Vec<_>>(),
        "p1_analytic": 4.0 / (t_omega * t_omega),
        "p2_analytic": kappa_over_g * g * t_omega / (2.0 * g * g),
    }))
}

#[wasm_bindgen]
pub fn rabi_flop_vs_finesse(preset: &str, finesse_lo: f64, finesse_hi: f64, points: usize) -> Result<String, JsValue> {
    finesse_scan(preset, finesse_lo, finesse_hi, points)
        .map(|v| v.to_string())
        .map_err(js)
}

#[wasm_bindgen]
pub fn ion_string_scan(species: &str, n_lo: u32, n_hi: u32) -> Result<String, JsValue> {
    string_scan(species, n_lo, n_hi).map(|v| v.to_string()).map_err(js)
}

#[wasm_bindgen]
pub fn adiabatic_passage_trace(
    t_omega: f64,
    g_over_omega: f64,
    kappa_over_g: f64,
    points: usize,
) -> Result<String, JsValue> {
    passage_trace(t_omega, g_over_omega, kappa_over_g, points)
        .map(|v| v.to_string())
        .map_err(js)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finesse_scan_shape() {
        let v = finesse_scan("cs-fp-cavity", 1e4, 1e7, 4).unwrap();
        let p: Vec<f64> = serde_json::from_value(v["p"].clone()).unwrap();
        assert_eq!(p.len(), 4);
        // p ∝ F^(-1/2): three decades → factor √1000
        assert!((p[0] / p[3] - 1000f64.sqrt()).abs() < 1e-9);
        assert!(finesse_scan("nope", 1e4, 1e7, 4).is_err());
    }

    #[test]
    fn string_scan_monotone() {
        let v = string_scan("ca", 2, 200).unwrap();
        let t: Vec<f64> = serde_json::from_value(v["per_ion_time_s"].clone()).unwrap();
        assert!(t.len() > 10);
        assert!(t.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn trace_transfers_population() {
        let v = passage_trace(30.0, 10.0, 0.0, 50).unwrap();
        let a: Vec<f64> = serde_json::from_value(v["p_ab0"].clone()).unwrap();
        let b: Vec<f64> = serde_json::from_value(v["p_ba0"].clone()).unwrap();
        assert_eq!(a.len(), 51);
        assert!(b[0] > 0.999 && a[50] > 0.95);
    }
}
