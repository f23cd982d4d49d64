//! Exact checks of the Fourier-coefficient inequalities, the Rosenthal
//! terms at `θ = π`, the `W_s` products, the dimension-ratio chain and the
//! regime classification, for one label or a whole sweep.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::branching::{self, FourierProfile};
use crate::config;
use crate::error::Result;
use crate::exact::{factorial, ln_biguint, ratio_to_f64};
use crate::labels::{enumerate_odd, LabelBudget, OddLabel};
use crate::weyl;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    NotApplicable,
}

/// Outcome of one check, with the numbers that decided it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub status: CheckStatus,
    pub witness: BTreeMap<String, String>,
}

impl CheckResult {
    fn new(name: &str, status: CheckStatus) -> Self {
        Self {
            name: name.to_owned(),
            status,
            witness: BTreeMap::new(),
        }
    }

    fn with(mut self, key: &str, value: impl ToString) -> Self {
        self.witness.insert(key.to_owned(), value.to_string());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}

fn int(x: &BigUint) -> BigInt {
    BigInt::from(x.clone())
}

fn list(xs: &[BigUint]) -> String {
    let body: Vec<String> = xs.iter().map(ToString::to_string).collect();
    format!("[{}]", body.join(","))
}

/// `α_1 ≥ α_2 ≥ … ≥ α_m`; `α_0` is left out.
pub fn check_lemma1(profile: &FourierProfile) -> CheckResult {
    let alpha = &profile.alpha;
    let violation = (1..alpha.len().saturating_sub(1)).find(|&j| alpha[j] < alpha[j + 1]);
    match violation {
        None => CheckResult::new("lemma1_monotone", CheckStatus::Pass).with("alpha", list(alpha)),
        Some(j) => CheckResult::new("lemma1_monotone", CheckStatus::Fail)
            .with("alpha", list(alpha))
            .with("j", j)
            .with("alpha_j", &alpha[j])
            .with("alpha_j+1", &alpha[j + 1]),
    }
}

/// `2β_j = α_j − α_{j+1}` (`j ≥ 1`), `2β_0 = 2α_0 − α_1`, and
/// `(2j+3) β_j ≥ (2j+1) β_{j+1}` (`j ≥ 0`), all in integers. Each relation's
/// outcome is recorded separately in the witness; the check passes only if
/// all three hold.
pub fn check_lemma2(profile: &FourierProfile) -> CheckResult {
    let alpha: Vec<BigInt> = profile.alpha.iter().map(int).collect();
    let beta: Vec<BigInt> = profile.beta.iter().map(int).collect();
    let at = |xs: &[BigInt], j: usize| xs.get(j).cloned().unwrap_or_else(BigInt::zero);
    let two = BigInt::from(2);

    let beta0 = {
        let lhs = &two * at(&beta, 0);
        let rhs = &two * at(&alpha, 0) - at(&alpha, 1);
        (lhs != rhs).then(|| format!("j=0: {lhs} != {rhs}"))
    };
    let differences = (1..=profile.m()).find_map(|j| {
        let lhs = &two * at(&beta, j);
        let rhs = at(&alpha, j) - at(&alpha, j + 1);
        (lhs != rhs).then(|| format!("j={j}: {lhs} != {rhs}"))
    });
    let ratio = (0..=profile.m()).find_map(|j| {
        let lhs = BigInt::from(2 * j + 3) * at(&beta, j);
        let rhs = BigInt::from(2 * j + 1) * at(&beta, j + 1);
        (lhs < rhs).then(|| format!("j={j}: {lhs} < {rhs}"))
    });

    let ok = beta0.is_none() && differences.is_none() && ratio.is_none();
    let verdict = |v: Option<String>| v.map_or_else(|| "pass".to_owned(), |w| format!("fail {w}"));
    CheckResult::new(
        "lemma2_beta_relations",
        if ok { CheckStatus::Pass } else { CheckStatus::Fail },
    )
    .with("alpha", list(&profile.alpha))
    .with("beta", list(&profile.beta))
    .with("2beta_0 = 2alpha_0 - alpha_1", verdict(beta0))
    .with("2beta_j = alpha_j - alpha_j+1", verdict(differences))
    .with("(2j+3)beta_j >= (2j+1)beta_j+1", verdict(ratio))
}

/// Which of the three Lemma 2 relations held, read back from a check.
pub fn lemma2_relations(check: &CheckResult) -> [bool; 3] {
    [
        "2beta_0 = 2alpha_0 - alpha_1",
        "2beta_j = alpha_j - alpha_j+1",
        "(2j+3)beta_j >= (2j+1)beta_j+1",
    ]
    .map(|k| check.witness.get(k).is_some_and(|v| v == "pass"))
}

/// Ratio `α̃₀ / (α̃₀ − α̃₁)^{1/3}` against the threshold `constant`; not
/// applicable when `α̃₀ ≤ α̃₁`.
pub fn check_lemma3(profile: &FourierProfile, constant: f64) -> (CheckResult, Option<f64>) {
    let tilde = profile.alpha_tilde();
    let a0 = tilde[0].clone();
    let a1 = tilde.get(1).cloned().unwrap_or_else(BigRational::zero);
    if a0 <= a1 {
        let res = CheckResult::new("lemma3_cube_root", CheckStatus::NotApplicable)
            .with("alpha_tilde_0", ratio_to_f64(&a0))
            .with("alpha_tilde_1", ratio_to_f64(&a1));
        return (res, None);
    }
    let ratio = ratio_to_f64(&a0) / ratio_to_f64(&(&a0 - &a1)).cbrt();
    let status = if ratio <= constant {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail
    };
    let res = CheckResult::new("lemma3_cube_root", status)
        .with("alpha_tilde_0", ratio_to_f64(&a0))
        .with("alpha_tilde_1", ratio_to_f64(&a1))
        .with("ratio", ratio)
        .with("constant", constant);
    (res, Some(ratio))
}

/// `T_a(j)` and `μ(j) = T_{0^n}(j)`, `j = 1..n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RosenthalTerms {
    pub t: Vec<f64>,
    pub mu: Vec<f64>,
    #[serde(skip)]
    pub t_exact: Vec<BigRational>,
    #[serde(skip)]
    pub mu_exact: Vec<BigRational>,
}

impl RosenthalTerms {
    /// `r_a(π) = Σ_j (−1)^{a_j} T_a(j)`, exact.
    pub fn ratio_at_pi(&self, label: &OddLabel) -> BigRational {
        self.t_exact
            .iter()
            .zip(label.parts())
            .fold(BigRational::zero(), |acc, (t, &a)| {
                if a % 2 == 0 {
                    acc + t
                } else {
                    acc - t
                }
            })
    }
}

fn terms_exact(label: &OddLabel) -> Vec<BigRational> {
    let shifts = label.doubled_shifts();
    let n = shifts.len() as u64;
    let top = BigInt::from(factorial(2 * n - 1));
    shifts
        .iter()
        .enumerate()
        .map(|(j, &lj)| {
            let den = shifts
                .iter()
                .enumerate()
                .filter(|&(r, _)| r != j)
                .fold(BigInt::from(lj), |acc, (_, &lr)| acc * (lr * lr - lj * lj));
            // (−1)^j times the product's sign (−1)^{j−1} is always −1 (1-based j);
            // the leading minus makes Σ μ(j) = +1.
            let sign = if j % 2 == 0 { -1 } else { 1 };
            -BigRational::new(top.clone() * sign, den)
        })
        .collect()
}

pub fn rosenthal_terms(label: &OddLabel) -> RosenthalTerms {
    let t_exact = terms_exact(label);
    let mu_exact = terms_exact(&OddLabel::trivial(label.rank()));
    RosenthalTerms {
        t: t_exact.iter().map(ratio_to_f64).collect(),
        mu: mu_exact.iter().map(ratio_to_f64).collect(),
        t_exact,
        mu_exact,
    }
}

/// `W_s = ∏_{r>s} |((a_r+r)² − (a_s+s)²) / (r² − s²)|`, `s = 1..n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WValues {
    pub w: Vec<f64>,
    pub min: f64,
    pub max: f64,
    /// `ln max / ln min`, when `min > 1`.
    pub exponent: Option<f64>,
    /// Whether `max_s W_s ≤ (min_s W_s)^{2n}` holds for this label.
    pub gap_claim_holds: bool,
}

pub fn w_values(label: &OddLabel) -> WValues {
    let a: Vec<i64> = label.parts().iter().map(|&x| i64::from(x)).collect();
    let n = a.len();
    let exact: Vec<BigRational> = (0..n)
        .map(|s| {
            let (ss, shift_s) = (s as i64 + 1, a[s] + s as i64 + 1);
            ((s + 1)..n).fold(BigRational::one(), |acc, r| {
                let (rr, shift_r) = (r as i64 + 1, a[r] + r as i64 + 1);
                let num = BigInt::from(shift_r * shift_r - shift_s * shift_s).abs();
                acc * BigRational::new(num, BigInt::from(rr * rr - ss * ss))
            })
        })
        .collect();
    let min = exact.iter().min().expect("n >= 1").clone();
    let max = exact.iter().max().expect("n >= 1").clone();
    let gap_claim_holds = max <= num_traits::pow(min.clone(), 2 * n);
    let (min_f, max_f) = (ratio_to_f64(&min), ratio_to_f64(&max));
    WValues {
        w: exact.iter().map(ratio_to_f64).collect(),
        min: min_f,
        max: max_f,
        exponent: (min_f > 1.0).then(|| max_f.ln() / min_f.ln()),
        gap_claim_holds,
    }
}

/// The dimension ratio `d_a / d_{0^n}` and the successive bounds on it, for
/// `a = (0^{n−k}, a_{n−k+1}, …, a_n)`. Bounds after the first are natural
/// logarithms with the unspecified multiplicative constant dropped.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DimRatioBound {
    /// Exact ratio from the shifted-coordinate product; an integer.
    pub exact_ratio: String,
    /// Number of entries after the zero prefix.
    pub k: usize,
    pub log_exact: f64,
    /// Prefix-times-suffix factorisation (pairs inside the suffix omitted).
    pub log_factored: f64,
    /// `Σ_r a_r (Σ_s 1/(r−s) + Σ_s 1/(r+s))`.
    pub log_harmonic: f64,
    /// `Σ_r a_r [ln((r−1)/(r−n+k)) + ln((r+n−k)/(r+1))]`.
    pub log_integrated: f64,
    /// `Σ_r a_r ln n − Σ_j a_{n−k+j} ln j`.
    pub log_final: f64,
    #[serde(skip)]
    pub exact: BigRational,
}

pub fn dim_ratio_bound(label: &OddLabel) -> DimRatioBound {
    let a: Vec<i64> = label.parts().iter().map(|&x| i64::from(x)).collect();
    let n = a.len();
    let shifts = label.doubled_shifts();
    let base = OddLabel::trivial(n).doubled_shifts();

    let mut exact = BigRational::one();
    for q in 0..n {
        exact *= BigRational::new(shifts[q].into(), base[q].into());
        for s in 0..q {
            exact *= BigRational::new(
                (shifts[q] * shifts[q] - shifts[s] * shifts[s]).into(),
                (base[q] * base[q] - base[s] * base[s]).into(),
            );
        }
    }

    let k = a.iter().filter(|&&x| x != 0).count();
    let prefix = n - k;
    let suffix = (prefix + 1)..=n; // 1-based r
    let a_at = |r: usize| a[r - 1];

    let mut factored = BigRational::one();
    for r in suffix.clone() {
        let ri = r as i64;
        factored *= BigRational::new((2 * a_at(r) + 2 * ri - 1).into(), (2 * ri - 1).into());
        for s in 1..=prefix as i64 {
            factored *= BigRational::new((a_at(r) + ri - s).into(), (ri - s).into());
            factored *= BigRational::new((a_at(r) + ri + s - 1).into(), (ri + s - 1).into());
        }
    }

    let mut harmonic = 0.0;
    let mut integrated = 0.0;
    let mut last = 0.0;
    for (j, r) in suffix.enumerate() {
        let ar = a_at(r) as f64;
        let rf = r as f64;
        let h: f64 = (1..=prefix)
            .map(|s| 1.0 / (rf - s as f64) + 1.0 / (rf + s as f64))
            .sum();
        harmonic += ar * h;
        if prefix > 0 {
            let p = prefix as f64;
            integrated += ar * (((rf - 1.0) / (rf - p)).ln() + ((rf + p) / (rf + 1.0)).ln());
        }
        last += ar * (n as f64).ln() - ar * ((j + 1) as f64).ln();
    }

    let exact_int = exact.to_integer();
    DimRatioBound {
        exact_ratio: exact_int.to_string(),
        k,
        log_exact: ln_biguint(exact_int.magnitude()),
        log_factored: ratio_to_f64(&factored).ln(),
        log_harmonic: harmonic,
        log_integrated: integrated,
        log_final: last,
        exact,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Regime {
    R1,
    R2,
    R3,
    Unclassified,
}

/// Decay estimates from every applicable regime argument.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegimeReport {
    pub r_pi: f64,
    /// Primary tag from the `r(π)` gate.
    pub regime: Regime,
    /// `(regime, per-step decay estimate)` for each argument that applies.
    pub estimates: Vec<(Regime, f64)>,
    /// Smallest estimate, if any.
    pub best: Option<(Regime, f64)>,
}

/// Regime tag and per-step decay estimates. The trivial label is tagged R1
/// with no estimates.
pub fn classify_regime(profile: &FourierProfile, eps: f64) -> Result<RegimeReport> {
    weyl::check_eps(eps)?;
    let r_pi_exact = profile.ratio_at_pi();
    let r_pi = ratio_to_f64(&r_pi_exact);
    let gate = BigRational::new(1.into(), 6.into());
    let regime = if r_pi_exact > gate {
        Regime::R1
    } else if r_pi_exact < gate {
        Regime::R3
    } else {
        Regime::Unclassified
    };
    let mut estimates = Vec::new();
    if profile.label.is_trivial() {
        return Ok(RegimeReport { r_pi, regime, estimates, best: None });
    }
    let top = f64::from(profile.label.top());
    match regime {
        Regime::R1 => {
            // sup over [ε, 2π−ε] is attained at the endpoints
            estimates.push((Regime::R1, 1.0 - (1.0 - eps.cos()) * (1.0 - r_pi) / (2.0 * top)));
        }
        Regime::R3 => {
            estimates.push((Regime::R3, weyl::integrated_ratio_from_profile(profile, eps)?));
        }
        _ => {}
    }
    let n = profile.label.rank() as f64;
    let w = w_values(&profile.label);
    // at θ = π the sine factor is 1
    let r2 = (n / w.min).min(1.0);
    if r2 < 1.0 {
        estimates.push((Regime::R2, r2));
    }
    let best = estimates
        .iter()
        .copied()
        .min_by(|x, y| x.1.total_cmp(&y.1));
    Ok(RegimeReport { r_pi, regime, estimates, best })
}

/// Everything the sweep records about one label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LemmaReport {
    pub label: OddLabel,
    pub d: String,
    pub checks: Vec<CheckResult>,
    pub regime: RegimeReport,
    pub terms: RosenthalTerms,
    pub w: WValues,
    pub dim_ratio: DimRatioBound,
    pub cube_root_constant: Option<f64>,
}

impl LemmaReport {
    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Settings for [`lemma_report`] and [`sweep`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSettings {
    pub eps: f64,
    pub lemma3_constant: f64,
}

impl Default for SweepSettings {
    fn default() -> Self {
        Self { eps: 0.5, lemma3_constant: config::LEMMA3_CONSTANT }
    }
}

pub fn lemma_report(label: &OddLabel, settings: &SweepSettings) -> Result<LemmaReport> {
    let profile = branching::fourier_profile(label)?;
    let (lemma3, constant) = check_lemma3(&profile, settings.lemma3_constant);
    let terms = rosenthal_terms(label);
    let dim_ratio = dim_ratio_bound(label);

    let t_ok = terms
        .t
        .iter()
        .zip(&terms.mu)
        .all(|(t, m)| *t <= m + 1e-12);
    let terms_check = CheckResult::new(
        "terms_below_mu",
        if t_ok { CheckStatus::Pass } else { CheckStatus::Fail },
    )
    .with("t", format!("{:?}", terms.t))
    .with("mu", format!("{:?}", terms.mu));

    let d_ok = dim_ratio.exact_ratio == profile.d.to_string() && dim_ratio.exact.is_integer();
    let dim_check = CheckResult::new(
        "dim_ratio_exact",
        if d_ok { CheckStatus::Pass } else { CheckStatus::Fail },
    )
    .with("ratio", &dim_ratio.exact)
    .with("d", &profile.d);

    let r_branch = profile.ratio_at_pi();
    let r_terms = terms.ratio_at_pi(label);
    let pi_check = CheckResult::new(
        "ratio_at_pi_agrees",
        if r_branch == r_terms { CheckStatus::Pass } else { CheckStatus::Fail },
    )
    .with("from_alpha", &r_branch)
    .with("from_terms", &r_terms);

    let w = w_values(label);
    let gap = CheckResult::new(
        "w_gap_claim",
        if w.gap_claim_holds { CheckStatus::Pass } else { CheckStatus::NotApplicable },
    )
    .with("min", w.min)
    .with("max", w.max);

    Ok(LemmaReport {
        label: label.clone(),
        d: profile.d.to_string(),
        checks: vec![
            check_lemma1(&profile),
            check_lemma2(&profile),
            lemma3,
            terms_check,
            dim_check,
            pi_check,
            gap,
        ],
        regime: classify_regime(&profile, settings.eps)?,
        terms,
        w,
        dim_ratio,
        cube_root_constant: constant,
    })
}

/// Reports for every label in `budget`, in label order.
pub fn sweep(budget: &LabelBudget, settings: &SweepSettings) -> Result<Vec<LemmaReport>> {
    let labels = enumerate_odd(budget);
    reports_for(&labels, settings)
}

pub fn reports_for(labels: &[OddLabel], settings: &SweepSettings) -> Result<Vec<LemmaReport>> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        labels.par_iter().map(|l| lemma_report(l, settings)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        labels.iter().map(|l| lemma_report(l, settings)).collect()
    }
}

/// Largest Lemma 3 ratio over a sweep, with the label attaining it.
pub fn max_cube_root_constant(reports: &[LemmaReport]) -> Option<(OddLabel, f64)> {
    reports
        .iter()
        .filter_map(|r| r.cube_root_constant.map(|c| (r.label.clone(), c)))
        .max_by(|x, y| x.1.total_cmp(&y.1))
}

/// Half-width `√n` window summary of `μ`: mass outside `j ≤ c√n`.
pub fn mu_tail_mass(n: usize, c: f64) -> f64 {
    let terms = rosenthal_terms(&OddLabel::trivial(n));
    let cut = c * (n as f64).sqrt();
    terms
        .mu
        .iter()
        .enumerate()
        .filter(|(j, _)| (*j + 1) as f64 > cut)
        .map(|(_, m)| m)
        .sum()
}
