use std::f64::consts::PI;

use rosenthal::bounds::{step_coefficient, AngleLaw};
use rosenthal::walk::{
    character_decay_check, decay_from_stats, haar_rotation, simulate, trial_rng, TraceStat, WalkConfig, WalkKind, Walker,
};
use rosenthal::{Error, OddLabel};

fn config(size: usize, kind: WalkKind, law: AngleLaw, steps: usize, trials: u64, seed: u64) -> WalkConfig {
    WalkConfig { size, kind, law, steps, trials, seed }
}

#[test]
fn truncated_uniform_decay_for_three_characters() {
    let cfg = config(5, WalkKind::RosenthalConjugacy, AngleLaw::TruncatedUniform { eps: 0.6 }, 8, 20_000, 3);
    let stats = simulate(&cfg).unwrap();
    assert_eq!(stats.per_step.len(), 9);
    for s in ["0,1", "1,1", "0,2"] {
        let rep = decay_from_stats(&stats, &s.parse().unwrap()).unwrap();
        assert!(rep.max_abs_z <= 4.5, "{s}: {rep:?}");
    }
}

#[test]
fn kac_walk_standard_character_decays() {
    let cfg = config(7, WalkKind::KacPair, AngleLaw::Uniform, 10, 20_000, 5);
    let label: OddLabel = "0,0,1".parse().unwrap();
    let rep = character_decay_check(&cfg, &label).unwrap();
    assert!((rep.rho - 5.0 / 7.0).abs() < 1e-15);
    assert!(rep.max_abs_z <= 4.5, "{rep:?}");
    let err = character_decay_check(&cfg, &"0,1,1".parse().unwrap()).unwrap_err();
    assert!(matches!(err, Error::Domain(_)));
}

#[test]
fn haar_trace_squared_moments() {
    // E[(Tr Q)²] = 1 and E[Tr Q²] = 1 for Haar Q in SO(N), N ≥ 3
    let mut rng = trial_rng(77, 0);
    let n = 6;
    let (mut s1, mut s2) = (0.0, 0.0);
    let k = 20_000;
    for _ in 0..k {
        let q = haar_rotation(n, &mut rng);
        s1 += q.trace().powi(2);
        s2 += (&q * &q).trace();
    }
    let (m1, m2) = (s1 / k as f64, s2 / k as f64);
    assert!((m1 - 1.0).abs() < 0.05, "{m1}");
    assert!((m2 - 1.0).abs() < 0.05, "{m2}");
}

#[test]
fn uniform_law_mixes_traces_to_haar_values() {
    let cfg = config(5, WalkKind::RosenthalConjugacy, AngleLaw::Uniform, 40, 5_000, 11);
    let stats = simulate(&cfg).unwrap();
    let (m, se) = stats.mean_se(40, TraceStat::Trace);
    assert!(m.abs() <= 4.0 * se, "{m} ± {se}");
    let rho = step_coefficient(&"0,1".parse().unwrap(), &AngleLaw::Uniform).unwrap();
    assert!((rho - 0.6).abs() < 1e-15);
}

#[test]
fn rows_have_seven_columns_and_start_at_identity() {
    let cfg = config(3, WalkKind::RosenthalConjugacy, AngleLaw::Fixed { theta: PI / 3.0 }, 3, 300, 1);
    let stats = simulate(&cfg).unwrap();
    let rows = stats.rows();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0].values[0], 3.0);
    assert_eq!(rows[0].values[1], 0.0);
    assert_eq!(rows[0].values[2], 9.0);
    assert_eq!(rows[0].values[4], 3.0);
    // one fixed-angle step is deterministic in trace
    assert!((rows[1].values[0] - 2.0).abs() < 1e-13);
    assert!(rows[1].values[1] < 1e-12);
}

#[test]
fn single_trial_replays_its_stream() {
    let cfg = config(4, WalkKind::KacPair, AngleLaw::Uniform, 70, 1, 21);
    let stats = simulate(&cfg).unwrap();
    let mut rng = trial_rng(21, 0);
    let mut w = Walker::new(&cfg);
    for t in 1..=70 {
        w.advance(&mut rng);
        assert_eq!(stats.per_step[t].mean, w.trace_triple(), "t={t}");
    }
}

#[test]
fn so3_decay_at_full_trial_count() {
    let cfg = config(3, WalkKind::RosenthalConjugacy, AngleLaw::Fixed { theta: 2.0 }, 10, 100_000, 13);
    let stats = simulate(&cfg).unwrap();
    for s in ["1", "2"] {
        let rep = decay_from_stats(&stats, &s.parse().unwrap()).unwrap();
        assert!(rep.max_abs_z <= 4.0, "{s}: {rep:?}");
    }
}
