//! Truncated character-sum bound on the L² distance to Haar measure.
//!
//! For a step law constant on conjugacy classes, every nontrivial irrep
//! contributes `d_a² ρ_a^{2t}` after `t` steps, where `ρ_a` is the mean
//! character ratio under the angle law.

use std::f64::consts::{PI, TAU};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::branching;
use crate::config;
use crate::error::{Error, Result};
use crate::exact::{biguint_to_f64, f64_to_ratio, ratio_to_f64, CompensatedSum};
use crate::labels::{enumerate_odd, LabelBudget, OddLabel};
use crate::weyl::{self, WeylCharacter};

/// Distribution of the rotation angle of one step.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AngleLaw {
    Fixed { theta: f64 },
    /// Uniform on `[ε, 2π − ε]`.
    TruncatedUniform { eps: f64 },
    /// Uniform on `[0, 2π)`.
    Uniform,
}

impl AngleLaw {
    pub fn validate(&self) -> Result<()> {
        match *self {
            AngleLaw::Fixed { theta } => {
                if theta.is_finite() && theta > 0.0 && theta < TAU {
                    Ok(())
                } else {
                    Err(Error::domain(format!("fixed angle {theta} outside (0, 2pi)")))
                }
            }
            AngleLaw::TruncatedUniform { eps } => weyl::check_eps(eps),
            AngleLaw::Uniform => Ok(()),
        }
    }

    /// Draws an angle from a uniform `[0, 1)` variate.
    pub fn angle_from_unit(&self, u: f64) -> f64 {
        match *self {
            AngleLaw::Fixed { theta } => theta,
            AngleLaw::TruncatedUniform { eps } => eps + u * (TAU - 2.0 * eps),
            AngleLaw::Uniform => u * TAU,
        }
    }

    /// `E[cos θ]`.
    pub fn mean_cos(&self) -> f64 {
        match *self {
            AngleLaw::Fixed { theta } => theta.cos(),
            AngleLaw::TruncatedUniform { eps } => -eps.sin() / (PI - eps),
            AngleLaw::Uniform => 0.0,
        }
    }
}

impl fmt::Display for AngleLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AngleLaw::Fixed { theta } => write!(f, "fixed({theta})"),
            AngleLaw::TruncatedUniform { eps } => write!(f, "truncated_uniform({eps})"),
            AngleLaw::Uniform => f.write_str("uniform"),
        }
    }
}

/// Per-step Fourier scalar `ρ_a = E_law[r_a(θ)]`.
pub fn step_coefficient(label: &OddLabel, law: &AngleLaw) -> Result<f64> {
    law.validate()?;
    if label.is_trivial() {
        return Ok(1.0);
    }
    match *law {
        AngleLaw::Fixed { theta } => weyl::character_ratio(label, theta),
        AngleLaw::TruncatedUniform { eps } => weyl::integrated_ratio(label, eps),
        AngleLaw::Uniform => Ok(branching::fourier_profile(label)?.alpha_tilde_f64()[0]),
    }
}

/// One nontrivial label's data for the bound.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LabelCoefficient {
    pub label: OddLabel,
    pub d: String,
    pub coefficient: f64,
    pub on_boundary: bool,
    /// `d` rounded to `f64`.
    pub dim: f64,
}

impl LabelCoefficient {
    /// `d² ρ^{2t}`.
    pub fn contribution(&self, t: u64) -> f64 {
        let rho = self.coefficient.abs();
        if rho == 0.0 {
            return 0.0;
        }
        let amp = if t <= i32::MAX as u64 {
            self.dim * rho.powi(t as i32)
        } else {
            self.dim * rho.powf(t as f64)
        };
        if amp.is_finite() {
            amp * amp
        } else {
            (2.0 * (self.dim.ln() + t as f64 * rho.ln())).exp()
        }
    }
}

/// Coefficients of all nontrivial labels of a budget, sorted by label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientTable {
    pub n: usize,
    pub law: AngleLaw,
    pub budget: LabelBudget,
    pub entries: Vec<LabelCoefficient>,
}

impl CoefficientTable {
    pub fn build(n: usize, law: AngleLaw, budget: LabelBudget) -> Result<Self> {
        law.validate()?;
        if budget.n != n {
            return Err(Error::domain(format!("budget is for n = {}, not {n}", budget.n)));
        }
        let labels: Vec<OddLabel> = enumerate_odd(&budget)
            .into_iter()
            .filter(|l| !l.is_trivial())
            .collect();
        if labels.is_empty() {
            return Err(Error::domain("budget contains no nontrivial label"));
        }
        let one = |label: &OddLabel| -> Result<LabelCoefficient> {
            let (d, coefficient) = match law {
                AngleLaw::Fixed { theta } => {
                    let w = WeylCharacter::new(label)?;
                    (w.dimension().clone(), w.ratio(theta)?)
                }
                AngleLaw::TruncatedUniform { eps } => {
                    let p = branching::fourier_profile(label)?;
                    let rho = weyl::integrated_ratio_from_profile(&p, eps)?;
                    (p.d, rho)
                }
                AngleLaw::Uniform => {
                    let p = branching::fourier_profile(label)?;
                    let rho = p.alpha_tilde_f64()[0];
                    (p.d, rho)
                }
            };
            Ok(LabelCoefficient {
                label: label.clone(),
                dim: biguint_to_f64(&d),
                d: d.to_string(),
                coefficient,
                on_boundary: budget.on_boundary(label),
            })
        };
        #[cfg(feature = "parallel")]
        let entries = {
            use rayon::prelude::*;
            labels.par_iter().map(one).collect::<Result<Vec<_>>>()?
        };
        #[cfg(not(feature = "parallel"))]
        let entries = labels.iter().map(one).collect::<Result<Vec<_>>>()?;
        Ok(Self { n, law, budget, entries })
    }

    /// Labels whose coefficient keeps the series from decaying.
    pub fn nonconvergent(&self) -> Vec<&LabelCoefficient> {
        self.entries
            .iter()
            .filter(|e| e.coefficient.abs() >= 1.0 - config::NONCONVERGENT_COEFF)
            .collect()
    }

    /// `Σ_{a ≠ 0} d_a² ρ_a^{2t}`, compensated, in label order.
    pub fn bound_sq(&self, t: u64) -> f64 {
        self.entries
            .iter()
            .map(|e| e.contribution(t))
            .collect::<CompensatedSum>()
            .value()
    }

    fn point(&self, t: u64, top_k: usize) -> BoundPoint {
        let bound_sq = self.bound_sq(t);
        let mut ranked: Vec<(f64, &LabelCoefficient)> =
            self.entries.iter().map(|e| (e.contribution(t), e)).collect();
        ranked.sort_by(|x, y| y.0.total_cmp(&x.0).then_with(|| x.1.label.cmp(&y.1.label)));
        let boundary_max = self
            .entries
            .iter()
            .filter(|e| e.on_boundary)
            .map(|e| e.contribution(t))
            .fold(0.0, f64::max);
        BoundPoint {
            t,
            bound_sq,
            bound_tv: bound_sq.sqrt(),
            bound_tv_half: 0.5 * bound_sq.sqrt(),
            top: ranked
                .into_iter()
                .take(top_k)
                .map(|(c, e)| Contribution { label: e.label.clone(), contribution: c })
                .collect(),
            boundary_max,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Contribution {
    pub label: OddLabel,
    pub contribution: f64,
}

/// The bound at one step count.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundPoint {
    pub t: u64,
    pub bound_sq: f64,
    /// `√bound_sq`: distance with the TV norm taken without the factor 1/2.
    pub bound_tv: f64,
    /// `√bound_sq / 2`: distance with the usual factor 1/2.
    pub bound_tv_half: f64,
    /// Largest contributions, largest first.
    pub top: Vec<Contribution>,
    /// Largest contribution from a label on the edge of the budget.
    pub boundary_max: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: usize,
    pub law: AngleLaw,
    pub budget: LabelBudget,
    pub t_grid: Vec<u64>,
    pub points: Vec<BoundPoint>,
    pub coefficients: Vec<LabelCoefficient>,
    /// Labels with `|ρ_a| ≥ 1 − 1e−12`.
    pub flagged: Vec<OddLabel>,
    pub truncation_note: String,
}

impl BoundReport {
    pub fn validate(&self) -> Result<()> {
        self.law.validate()?;
        if self.points.len() != self.t_grid.len() {
            return Err(Error::consistency("bound report has mismatched t grid"));
        }
        for (p, &t) in self.points.iter().zip(&self.t_grid) {
            if p.t != t || !(p.bound_sq >= 0.0) || (p.bound_tv - p.bound_sq.sqrt()).abs() > 1e-12 * p.bound_tv.max(1.0) {
                return Err(Error::consistency(format!("bound report point t={t} is inconsistent")));
            }
        }
        Ok(())
    }
}

/// Evaluates the truncated bound on `t_grid`, keeping the `top_k` largest
/// contributions per step count.
pub fn l2_bound(
    n: usize,
    law: AngleLaw,
    budget: LabelBudget,
    t_grid: &[u64],
    top_k: usize,
) -> Result<BoundReport> {
    if t_grid.is_empty() || t_grid.contains(&0) {
        return Err(Error::domain("t grid must be nonempty positive integers"));
    }
    let table = CoefficientTable::build(n, law, budget)?;
    Ok(report_from_table(&table, t_grid, top_k))
}

pub fn report_from_table(table: &CoefficientTable, t_grid: &[u64], top_k: usize) -> BoundReport {
    let points: Vec<BoundPoint> = t_grid.iter().map(|&t| table.point(t, top_k)).collect();
    let flagged: Vec<OddLabel> = table.nonconvergent().into_iter().map(|e| e.label.clone()).collect();
    let worst_edge = points.iter().map(|p| p.boundary_max).fold(0.0, f64::max);
    let truncation_note = format!(
        "sum over {} nontrivial labels with total <= {} and top <= {}; largest single boundary-label contribution on the grid is {:.3e}; no tail estimate included{}",
        table.entries.len(),
        table.budget.max_total,
        table.budget.max_top,
        worst_edge,
        if flagged.is_empty() {
            String::new()
        } else {
            format!("; {} label(s) have |rho| >= 1 - 1e-12 and prevent decay", flagged.len())
        }
    );
    BoundReport {
        n: table.n,
        law: table.law,
        budget: table.budget,
        t_grid: t_grid.to_vec(),
        points,
        coefficients: table.entries.clone(),
        flagged,
        truncation_note,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixingEstimate {
    pub t: u64,
    pub target: f64,
    pub bound_tv: f64,
    /// `bound_tv` at `t − 1` (`None` when `t = 1`).
    pub bound_tv_before: Option<f64>,
    pub budget: LabelBudget,
    pub top_label: OddLabel,
    pub top_contribution: f64,
}

/// Smallest `t` with `bound_tv(t) ≤ target`.
pub fn mixing_time_estimate(
    n: usize,
    law: AngleLaw,
    budget: LabelBudget,
    target: f64,
) -> Result<MixingEstimate> {
    let table = CoefficientTable::build(n, law, budget)?;
    mixing_time_from_table(&table, target)
}

pub fn mixing_time_from_table(table: &CoefficientTable, target: f64) -> Result<MixingEstimate> {
    if !(target > 0.0) || !target.is_finite() {
        return Err(Error::domain(format!("target {target} must be positive")));
    }
    if let Some(bad) = table.nonconvergent().first() {
        return Err(Error::domain(format!(
            "label {} has step coefficient {} and the bound does not decay",
            bad.label, bad.coefficient
        )));
    }
    let tv = |t: u64| table.bound_sq(t).sqrt();
    let mut hi = 1u64;
    while tv(hi) > target {
        if hi >= 1 << 52 {
            return Err(Error::resource("bound did not reach target before t = 2^52"));
        }
        hi *= 2;
    }
    let mut lo = hi / 2; // tv(lo) > target unless lo == 0
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if tv(mid) > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let point = table.point(hi, 1);
    let top = point.top.into_iter().next().expect("table is nonempty");
    Ok(MixingEstimate {
        t: hi,
        target,
        bound_tv: point.bound_tv,
        bound_tv_before: (hi > 1).then(|| tv(hi - 1)),
        budget: table.budget,
        top_label: top.label,
        top_contribution: top.contribution,
    })
}

/// `P[#K ≥ t]` after `m = round(c t)` steps, each independently in `K` with
/// probability `1 − ε`: `Σ_{j=t}^{m} C(m, j) (1−ε)^j ε^{m−j}`.
pub fn censoring_count(c: f64, t: u64, eps: f64) -> Result<f64> {
    if !(c.is_finite() && c >= 1.0) {
        return Err(Error::domain(format!("c = {c} must be >= 1")));
    }
    if !(eps.is_finite() && eps > 0.0 && eps < 1.0) {
        return Err(Error::domain(format!("eps = {eps} outside (0, 1)")));
    }
    let m_f = (c * t as f64).round();
    if m_f > 1e12 {
        return Err(Error::domain(format!("c t = {m_f} is too large")));
    }
    let m = m_f as u64;
    if m < t {
        return Err(Error::domain(format!("round(c t) = {m} is below t = {t}")));
    }
    if t == 0 {
        return Ok(1.0);
    }
    if m <= config::CENSOR_EXACT_MAX {
        Ok(binomial_tail_exact(m, t, eps))
    } else {
        Ok(binomial_tail_logspace(m, t, eps))
    }
}

/// Exact tail with `ε` taken as the dyadic rational it is stored as.
fn binomial_tail_exact(m: u64, t: u64, eps: f64) -> f64 {
    let eps_r = f64_to_ratio(eps).expect("finite");
    // common denominator 2^e: ε = q / 2^e, 1 − ε = p / 2^e
    let den = eps_r.denom().clone();
    let q = eps_r.numer().clone();
    let p = &den - &q;
    let (p, q) = (p.to_biguint().expect("p > 0"), q.to_biguint().expect("q > 0"));

    // Σ_{j=t}^{m} C(m,j) p^j q^{m−j} = p^t Σ_{j=t}^{m} C(m,j) p^{j−t} q^{m−j}, by Horner in p
    let mut binom = BigUint::one(); // C(m, j), starting at j = m
    let mut q_pow = BigUint::one(); // q^{m−j}
    let mut acc = BigUint::zero();
    let mut j = m;
    loop {
        acc = acc * &p + &binom * &q_pow;
        if j == t {
            break;
        }
        // C(m, j−1) = C(m, j) · j / (m − j + 1)
        binom *= j;
        let (quot, rem) = binom.div_rem(&BigUint::from(m - j + 1));
        debug_assert!(rem.is_zero());
        binom = quot;
        q_pow *= &q;
        j -= 1;
    }
    let num = acc * p.pow(u32::try_from(t).expect("t <= m <= cap"));
    let total = den.pow(u32::try_from(m).expect("m <= cap"));
    ratio_to_f64(&BigRational::new(BigInt::from(num), total))
}

fn binomial_tail_logspace(m: u64, t: u64, eps: f64) -> f64 {
    let (lp, lq) = ((1.0 - eps).ln(), eps.ln());
    let mode = (((m + 1) as f64) * (1.0 - eps)).floor().clamp(t as f64, m as f64) as u64;
    // log C(m, j) via running sums from j = t
    let mut log_binom: f64 = (1..=t).map(|i| ((m - t + i) as f64 / i as f64).ln()).sum();
    let mut logs = Vec::with_capacity((m - t + 1) as usize);
    for j in t..=m {
        logs.push(log_binom + j as f64 * lp + (m - j) as f64 * lq);
        if j < m {
            log_binom += ((m - j) as f64 / (j + 1) as f64).ln();
        }
    }
    let peak = logs[(mode - t) as usize].max(logs.iter().copied().fold(f64::MIN, f64::max));
    let s: CompensatedSum = logs.iter().map(|l| (l - peak).exp()).collect();
    (s.value().ln() + peak).exp().min(1.0)
}
