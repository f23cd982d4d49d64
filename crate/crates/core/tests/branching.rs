mod common;

use num_bigint::BigUint;
use num_traits::Zero;
use rosenthal::branching::{
    brute_force_profile, brute_force_profile_capped, fourier_profile, restrict_even_to_odd, restrict_odd_to_even,
    FourierProfile,
};
use rosenthal::diagnostics::{check_lemma2, lemma2_relations, lemma_report, sweep, SweepSettings};
use rosenthal::labels::EvenLabel;
use rosenthal::weyl::dimension;
use rosenthal::{Error, LabelBudget, OddLabel};

use common::*;

fn label(s: &str) -> OddLabel {
    s.parse().unwrap()
}

#[test]
fn restriction_preserves_dimension() {
    // SO(2n+1) → SO(2n) → SO(2n−1): dimension of the two-step restriction
    for a in labels_up_to(3, 5).into_iter().filter(|a| a.rank() >= 2) {
        let d = dimension(&a).unwrap();
        let two_step: BigUint = restrict_odd_to_even(&a)
            .iter()
            .flat_map(|b| restrict_even_to_odd(b))
            .map(|c| dimension(&c).unwrap())
            .sum();
        assert_eq!(two_step, d, "{a}");
    }
}

#[test]
fn restriction_interlaces() {
    let a = label("1,2,4");
    let bs = restrict_odd_to_even(&a);
    for b in &bs {
        let p = b.parts();
        assert!(p[0].unsigned_abs() <= 1 && p[1] >= 1 && p[1] <= 2 && p[2] >= 2 && p[2] <= 4);
    }
    assert_eq!(bs.len(), 3 * 2 * 3);
    assert!(restrict_even_to_odd(&EvenLabel::new(vec![3]).unwrap()).is_empty());
}

#[test]
fn so3_profiles_are_classical() {
    for l in 0..10u32 {
        let p = fourier_profile(&OddLabel::new(vec![l]).unwrap()).unwrap();
        let mut alpha = vec![BigUint::from(2u32); l as usize + 1];
        alpha[0] = 1u32.into();
        assert_eq!(p.alpha, alpha);
        let mut beta = vec![BigUint::zero(); l as usize + 1];
        beta[l as usize] = 1u32.into();
        assert_eq!(p.beta, beta);
    }
}

#[test]
fn dp_matches_brute_force_beyond_the_criterion() {
    for a in labels_up_to(3, 6) {
        assert_eq!(fourier_profile(&a).unwrap(), brute_force_profile(&a).unwrap(), "{a}");
    }
}

#[test]
fn brute_force_respects_cap() {
    assert!(matches!(brute_force_profile_capped(&label("2,4,6"), 100), Err(Error::Resource(_))));
}

#[test]
fn profile_json_round_trip_and_rejects_tampering() {
    let p = fourier_profile(&label("1,1,3")).unwrap();
    let s = serde_json::to_string(&p).unwrap();
    let back: FourierProfile = serde_json::from_str(&s).unwrap();
    assert_eq!(back, p);
    let tampered = s.replacen("\"alpha\":[\"", "\"alpha\":[\"1", 1);
    assert!(serde_json::from_str::<FourierProfile>(&tampered).is_err());
}

#[test]
fn lemma2_holds_for_rank_two_and_up() {
    for a in labels_up_to(4, 8).into_iter().filter(|a| a.rank() >= 2) {
        let p = fourier_profile(&a).unwrap();
        assert_eq!(lemma2_relations(&check_lemma2(&p)), [true; 3], "{a}");
    }
}

#[test]
fn sweep_reports_are_consistent() {
    let reports = sweep(&LabelBudget::by_total(3, 4).unwrap(), &SweepSettings::default()).unwrap();
    assert_eq!(reports.len(), 11);
    for r in &reports {
        for name in ["lemma1_monotone", "terms_below_mu", "dim_ratio_exact", "ratio_at_pi_agrees"] {
            assert!(r.check(name).unwrap().passed(), "{} {name}", r.label);
        }
    }
    let single = lemma_report(&label("0,1,2"), &SweepSettings::default()).unwrap();
    assert_eq!(serde_json::to_value(&single).unwrap()["label"], "0,1,2");
}
