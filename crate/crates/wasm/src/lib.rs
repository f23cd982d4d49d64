//! Browser bindings for the demo page in `www/`.
//!
//! Each export returns a JSON string; errors become a thrown string. The
//! `*_json` functions hold the logic and are what the native tests call.

use std::f64::consts::TAU;

use rosenthal::bounds::{l2_bound, mixing_time_from_table, AngleLaw, CoefficientTable};
use rosenthal::branching::fourier_profile;
use rosenthal::weyl::WeylCharacter;
use rosenthal::{LabelBudget, OddLabel};
use serde::Serialize;
use wasm_bindgen::prelude::*;

fn label(text: &str) -> Result<OddLabel, String> {
    text.trim().parse().map_err(|e: rosenthal::Error| e.to_string())
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("plain data serializes")
}

#[derive(Serialize)]
struct CharacterCurve {
    label: String,
    d: String,
    theta: Vec<f64>,
    weyl: Vec<f64>,
    fourier: Vec<f64>,
    max_abs_diff: f64,
}

/// Character ratio on `points` interior angles of `(0, 2π)`, from the Weyl
/// formula and from the Fourier profile.
pub fn character_curve_json(label_text: &str, points: usize) -> Result<String, String> {
    let a = label(label_text)?;
    if !(2..=4000).contains(&points) {
        return Err("points must be between 2 and 4000".into());
    }
    let chi = WeylCharacter::new(&a).map_err(|e| e.to_string())?;
    let profile = fourier_profile(&a).map_err(|e| e.to_string())?;
    let theta: Vec<f64> = (1..=points).map(|k| TAU * k as f64 / (points + 1) as f64).collect();
    let weyl = theta.iter().map(|&t| chi.ratio(t)).collect::<Result<Vec<_>, _>>().map_err(|e| e.to_string())?;
    let fourier: Vec<f64> = theta.iter().map(|&t| profile.ratio(t)).collect();
    let max_abs_diff = weyl.iter().zip(&fourier).map(|(w, f)| (w - f).abs()).fold(0.0, f64::max);
    Ok(json(&CharacterCurve { label: a.to_string(), d: profile.d.to_string(), theta, weyl, fourier, max_abs_diff }))
}

pub fn profile_json(label_text: &str) -> Result<String, String> {
    let a = label(label_text)?;
    fourier_profile(&a).map(|p| json(&p)).map_err(|e| e.to_string())
}

fn law(kind: &str, param: f64) -> Result<AngleLaw, String> {
    let law = match kind {
        "fixed" => AngleLaw::Fixed { theta: param },
        "truncated" => AngleLaw::TruncatedUniform { eps: param },
        "uniform" => AngleLaw::Uniform,
        _ => return Err(format!("unknown law {kind:?}")),
    };
    law.validate().map_err(|e| e.to_string())?;
    Ok(law)
}

#[derive(Serialize)]
struct BoundCurve {
    t: Vec<u64>,
    bound_tv: Vec<f64>,
    bound_tv_half: Vec<f64>,
    labels: usize,
    flagged: Vec<String>,
    /// Smallest `t` with `bound_tv ≤ 1/4`, if the labels allow it.
    t_quarter: Option<u64>,
    note: String,
}

/// Truncated L² bound for `t = 1..=t_max`.
pub fn bound_curve_json(n: usize, kind: &str, param: f64, max_sum: u64, t_max: u64) -> Result<String, String> {
    if !(1..=12).contains(&n) || max_sum > 40 || !(1..=2000).contains(&t_max) {
        return Err("keep 1 <= n <= 12, max_sum <= 40 and 1 <= t_max <= 2000 in the browser".into());
    }
    let law = law(kind, param)?;
    let budget = LabelBudget::by_total(n, max_sum).map_err(|e| e.to_string())?;
    let table = CoefficientTable::build(n, law, budget).map_err(|e| e.to_string())?;
    let grid: Vec<u64> = (1..=t_max).collect();
    let rep = l2_bound(n, law, budget, &grid, 1).map_err(|e| e.to_string())?;
    let t_quarter = mixing_time_from_table(&table, 0.25).ok().map(|m| m.t);
    Ok(json(&BoundCurve {
        t: grid,
        bound_tv: rep.points.iter().map(|p| p.bound_tv).collect(),
        bound_tv_half: rep.points.iter().map(|p| p.bound_tv_half).collect(),
        labels: table.entries.len(),
        flagged: rep.flagged.iter().map(ToString::to_string).collect(),
        t_quarter,
        note: rep.truncation_note,
    }))
}

#[wasm_bindgen]
pub fn character_curve(label: &str, points: usize) -> Result<String, JsValue> {
    character_curve_json(label, points).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn profile(label: &str) -> Result<String, JsValue> {
    profile_json(label).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen]
pub fn bound_curve(n: usize, law: &str, param: f64, max_sum: u64, t_max: u64) -> Result<String, JsValue> {
    bound_curve_json(n, law, param, max_sum, t_max).map_err(|e| JsValue::from_str(&e))
}
