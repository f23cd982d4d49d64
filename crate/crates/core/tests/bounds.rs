mod common;

use rosenthal::bounds::{censoring_count, l2_bound, mixing_time_estimate, AngleLaw, BoundReport, CoefficientTable};
use rosenthal::{Error, LabelBudget};

use common::*;

#[test]
fn so3_uniform_bound_matches_closed_form() {
    // uniform angle: ρ_l = 1/(2l+1), so the bound is Σ (2l+1)^{2−2t}
    let rep = l2_bound(1, AngleLaw::Uniform, LabelBudget::by_total(1, 30).unwrap(), &[1, 2, 3, 8], 3).unwrap();
    for p in &rep.points {
        let want: f64 = (1..=30).map(|l| ((2 * l + 1) as f64).powi(2 - 2 * p.t as i32)).sum();
        assert!((p.bound_sq - want).abs() <= 1e-13 * want, "t={}", p.t);
    }
    assert_eq!(rep.points[1].top[0].label.to_string(), "1");
}

#[test]
fn bound_report_round_trips() {
    let rep = l2_bound(2, AngleLaw::TruncatedUniform { eps: 0.4 }, LabelBudget::by_total(2, 5).unwrap(), &[1, 5, 10], 2)
        .unwrap();
    rep.validate().unwrap();
    let back: BoundReport = serde_json::from_str(&serde_json::to_string(&rep).unwrap()).unwrap();
    assert_eq!(back, rep);
    let table = CoefficientTable::build(2, AngleLaw::TruncatedUniform { eps: 0.4 }, LabelBudget::by_total(2, 5).unwrap())
        .unwrap();
    let table_back: CoefficientTable = serde_json::from_str(&serde_json::to_string(&table).unwrap()).unwrap();
    assert_eq!(table_back.bound_sq(7), table.bound_sq(7));
}

#[test]
fn fixed_angle_matches_weyl_ratios() {
    let theta = 1.3;
    let budget = LabelBudget::by_total(1, 6).unwrap();
    let rep = l2_bound(1, AngleLaw::Fixed { theta }, budget, &[4], 0).unwrap();
    let want: f64 = (1..=6u32)
        .map(|l| {
            let d = (2 * l + 1) as f64;
            d * d * (so3_character(l, theta) / d).powi(8)
        })
        .sum();
    assert!((rep.points[0].bound_sq - want).abs() <= 1e-12 * want);
}

#[test]
fn mixing_time_is_minimal() {
    let budget = LabelBudget::by_total(2, 6).unwrap();
    let est = mixing_time_estimate(2, AngleLaw::Uniform, budget, 0.25).unwrap();
    assert!(est.bound_tv <= 0.25);
    assert!(est.bound_tv_before.map_or(true, |b| b > 0.25));
    let rep = l2_bound(2, AngleLaw::Uniform, budget, &[est.t], 0).unwrap();
    assert_eq!(rep.points[0].bound_tv, est.bound_tv);
}

#[test]
fn bad_inputs_are_domain_errors() {
    let budget = LabelBudget::by_total(2, 3).unwrap();
    assert!(matches!(l2_bound(2, AngleLaw::Uniform, budget, &[0], 0), Err(Error::Domain(_))));
    assert!(matches!(l2_bound(3, AngleLaw::Uniform, budget, &[1], 0), Err(Error::Domain(_))));
    assert!(matches!(l2_bound(2, AngleLaw::TruncatedUniform { eps: 2.5 }, budget, &[1], 0), Err(Error::Domain(_))));
    assert!(matches!(mixing_time_estimate(2, AngleLaw::Uniform, budget, 0.0), Err(Error::Domain(_))));
    assert!(censoring_count(0.5, 3, 0.1).is_err());
    assert!(censoring_count(2.0, 3, 1.0).is_err());
}

#[test]
fn censoring_monotone_in_c_and_eps() {
    for t in [1u64, 4, 15, 60] {
        for eps in [0.05, 0.2, 0.5, 0.8] {
            let mut prev = 0.0;
            for c in [1.0, 1.2, 1.5, 2.0, 3.0, 6.0] {
                let p = censoring_count(c, t, eps).unwrap();
                assert!(p >= prev - 1e-15, "c={c} t={t} eps={eps}");
                prev = p;
            }
        }
        for c in [1.0, 2.0, 4.0] {
            let mut prev = 1.0;
            for eps in [0.01, 0.1, 0.3, 0.6, 0.95] {
                let p = censoring_count(c, t, eps).unwrap();
                assert!(p <= prev + 1e-15, "c={c} t={t} eps={eps}");
                prev = p;
            }
        }
    }
}

#[test]
fn censoring_is_not_monotone_in_t() {
    // P[Bin(3, 0.9) ≥ 1] < P[Bin(6, 0.9) ≥ 2]
    let p1 = censoring_count(3.0, 1, 0.1).unwrap();
    let p2 = censoring_count(3.0, 2, 0.1).unwrap();
    assert!(p2 > p1);
    // at a fixed number of trials the tail does decrease in t
    let m = 12.0;
    let tails: Vec<f64> = (1..=12).map(|t| censoring_count(m / t as f64, t, 0.3).unwrap()).collect();
    assert!(tails.windows(2).all(|w| w[1] <= w[0]));
}

#[test]
fn censoring_large_m_uses_log_space_consistently() {
    // m = 20000 exact, m = 20001 log-space; at ε = 1/2 the tails are
    // 1/2 + C(20000, 10000)/2^20001 and 1/2 + C(20001, 10000)/2^20001
    let a = censoring_count(2.0, 10_000, 0.5).unwrap();
    let b = censoring_count(2.0001, 10_000, 0.5).unwrap();
    assert!((a - 0.502_820_912_656_110_2).abs() < 1e-15, "{a}");
    assert!((b - 0.505_641_543_249_161_1).abs() < 1e-10, "{b}");
    let c = censoring_count(2.0, 15_000, 0.5).unwrap();
    assert!((c - 0.502_303_275_135_769_4).abs() < 1e-10, "{c}");
}
