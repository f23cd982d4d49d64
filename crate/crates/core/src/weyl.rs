//! Dimensions and planar-rotation characters of SO(2n+1).
//!
//! With doubled shifts `L_j = 2a_j + 2j − 1` and half-angle `x = θ/2`, the
//! character ratio at `R(1,2;θ)` is
//!
//! ```text
//! r_a(θ) = Σ_j K_j sin(L_j x) / sin(x)^{2n−1},
//! K_j    = (2n−1)! / (L_j ∏_{r≠j} (L_r² − L_j²)).
//! ```
//!
//! The numerator vanishes to order `2n − 1` at `x = 0`, so near the identity
//! the direct sum cancels catastrophically. There the same sum is evaluated
//! through its Taylor expansion, whose coefficients are computed exactly and
//! whose leading `n − 1` terms are identically zero.

use std::f64::consts::{PI, TAU};
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::branching::FourierProfile;
use crate::config;
use crate::error::{Error, Result};
use crate::exact::{biguint_to_f64, factorial, ratio_to_f64};
use crate::labels::OddLabel;

/// Number of Taylor terms kept beyond the first nonvanishing one.
const SERIES_TERMS: usize = 64;

/// Error estimate below which the direct sum is accepted without trying
/// the series.
const DIRECT_OK: f64 = 1e-13;

/// Character of one irrep at one planar rotation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CharacterValue {
    pub theta: f64,
    /// Trace `c_a(θ)`.
    pub value: f64,
    /// `c_a(θ) / d_a`.
    pub ratio: f64,
}

/// Exact dimension of the irrep labelled `label`.
///
/// Evaluated as `∏ L_q ∏_{s<r} (L_r² − L_s²) / (∏_{k=1}^n (2k−1)! · 4^{n(n−1)/2})`.
pub fn dimension(label: &OddLabel) -> Result<BigUint> {
    let shifts = label.doubled_shifts();
    let n = shifts.len();
    let mut num = BigUint::one();
    for (r, &lr) in shifts.iter().enumerate() {
        num *= lr as u64;
        for &ls in &shifts[..r] {
            num *= (lr * lr - ls * ls) as u64;
        }
    }
    let mut den = BigUint::one() << (n * (n - 1));
    for k in 1..=n as u64 {
        den *= factorial(2 * k - 1);
    }
    let (q, rem) = num.div_rem(&den);
    if !rem.is_zero() {
        return Err(Error::consistency(format!(
            "dimension of {label} is not an integer: {num}/{den}"
        )));
    }
    Ok(q)
}

/// Cached closed-form character of one label.
#[derive(Debug)]
pub struct WeylCharacter {
    label: OddLabel,
    dimension: BigUint,
    shifts: Vec<i64>,
    exact_coeffs: Vec<BigRational>,
    coeffs: Vec<f64>,
    abs_weight: f64,
    series: OnceLock<Result<Vec<f64>>>,
    cutoff: f64,
}

impl WeylCharacter {
    pub fn new(label: &OddLabel) -> Result<Self> {
        Self::with_cutoff(label, config::THETA_CUTOFF)
    }

    pub fn with_cutoff(label: &OddLabel, cutoff: f64) -> Result<Self> {
        let dimension = dimension(label)?;
        let shifts = label.doubled_shifts();
        let n = shifts.len() as u64;
        let top = BigInt::from(factorial(2 * n - 1));
        let exact_coeffs: Vec<BigRational> = shifts
            .iter()
            .enumerate()
            .map(|(j, &lj)| {
                let den = shifts
                    .iter()
                    .enumerate()
                    .filter(|&(r, _)| r != j)
                    .fold(BigInt::from(lj), |acc, (_, &lr)| acc * (lr * lr - lj * lj));
                BigRational::new(top.clone(), den)
            })
            .collect();
        let coeffs: Vec<f64> = exact_coeffs.iter().map(ratio_to_f64).collect();
        let abs_weight = coeffs
            .iter()
            .zip(&shifts)
            .map(|(k, &l)| k.abs() * (1.0 + l as f64 * PI))
            .sum();
        Ok(Self {
            label: label.clone(),
            dimension,
            shifts,
            exact_coeffs,
            coeffs,
            abs_weight,
            series: OnceLock::new(),
            cutoff,
        })
    }

    pub fn label(&self) -> &OddLabel {
        &self.label
    }

    pub fn dimension(&self) -> &BigUint {
        &self.dimension
    }

    /// The exact signed coefficients `K_j`.
    pub fn coefficients(&self) -> &[BigRational] {
        &self.exact_coeffs
    }

    pub fn value(&self, theta: f64) -> Result<CharacterValue> {
        let ratio = self.ratio(theta)?;
        Ok(CharacterValue {
            theta,
            value: ratio * biguint_to_f64(&self.dimension),
            ratio,
        })
    }

    pub fn ratio(&self, theta: f64) -> Result<f64> {
        self.ratio_with_error(theta).map(|(r, _)| r)
    }

    /// Ratio together with a first-order rounding-error estimate.
    pub fn ratio_with_error(&self, theta: f64) -> Result<(f64, f64)> {
        if !theta.is_finite() || theta <= 0.0 || theta >= TAU {
            return Err(Error::domain(format!("theta {theta} outside (0, 2pi)")));
        }
        if theta.min(TAU - theta) < self.cutoff {
            return Err(Error::domain(format!(
                "theta {theta} within {} of the identity",
                self.cutoff
            )));
        }
        if self.label.is_trivial() {
            return Ok((1.0, 0.0));
        }
        // r is even and 2π-periodic
        let folded = if theta > PI { TAU - theta } else { theta };
        let x = 0.5 * folded;
        let power = 2 * self.shifts.len() as i32 - 1;
        let denom = x.sin().powi(power);

        let direct: f64 = self
            .coeffs
            .iter()
            .zip(&self.shifts)
            .map(|(k, &l)| k * (l as f64 * x).sin())
            .sum::<f64>()
            / denom;
        let direct_err = 4.0 * f64::EPSILON * self.abs_weight / denom;
        if direct_err <= DIRECT_OK {
            return Ok((direct, direct_err));
        }
        match self.series_at(x, power)? {
            Some((s, err)) if err < direct_err => Ok((s, err)),
            _ => Ok((direct, direct_err)),
        }
    }

    fn series_at(&self, x: f64, power: i32) -> Result<Option<(f64, f64)>> {
        let coeffs = self
            .series
            .get_or_init(|| series_coefficients(&self.shifts, &self.exact_coeffs))
            .as_ref()
            .map_err(Clone::clone)?;
        let y = x * x;
        let mut sum = 0.0;
        let mut abs = 0.0;
        let mut yk = 1.0;
        let mut converged = false;
        let mut small_run = 0;
        for c in coeffs {
            let term = c * yk;
            sum += term;
            abs += term.abs();
            // two consecutive negligible terms, so an isolated zero coefficient
            // does not end the sum early
            small_run = if term.abs() <= 1e-18 * sum.abs() { small_run + 1 } else { 0 };
            if small_run == 2 {
                converged = true;
                break;
            }
            yk *= y;
        }
        if !converged {
            return Ok(None);
        }
        let scale = (x / x.sin()).powi(power);
        Ok(Some((scale * sum, 4.0 * f64::EPSILON * scale * abs)))
    }
}

/// Coefficients `c_i` with `Σ K_j sin(L_j x) = x^{2n−1} Σ_i c_i x^{2i}`.
fn series_coefficients(shifts: &[i64], coeffs: &[BigRational]) -> Result<Vec<f64>> {
    let n = shifts.len();
    let squares: Vec<BigInt> = shifts.iter().map(|&l| BigInt::from(l * l)).collect();
    let mut powers: Vec<BigInt> = shifts.iter().map(|&l| BigInt::from(l)).collect();
    let mut fact = BigInt::one();
    let mut out = Vec::with_capacity(SERIES_TERMS);
    for k in 0..(n - 1 + SERIES_TERMS) {
        // fact = (2k+1)!
        if k > 0 {
            fact *= BigInt::from((2 * k) * (2 * k + 1));
        }
        let moment: BigRational = coeffs
            .iter()
            .zip(&powers)
            .map(|(c, p)| c * BigRational::from_integer(p.clone()))
            .fold(BigRational::zero(), |a, b| a + b);
        if k + 1 < n {
            if !moment.is_zero() {
                return Err(Error::consistency(format!(
                    "Weyl numerator moment {k} is {moment}, expected 0"
                )));
            }
        } else {
            let mut c = moment / BigRational::from_integer(fact.clone());
            if k % 2 == 1 {
                c = -c;
            }
            out.push(ratio_to_f64(&c));
        }
        for (p, s) in powers.iter_mut().zip(&squares) {
            *p *= s;
        }
    }
    if out.first().is_some_and(|c| !c.is_finite() || *c == 0.0) {
        return Err(Error::consistency("leading Weyl series coefficient vanishes"));
    }
    Ok(out)
}

/// `c_a(θ)` and `r_a(θ)` at the planar rotation `R(1,2;θ)`.
pub fn character_value(label: &OddLabel, theta: f64) -> Result<CharacterValue> {
    WeylCharacter::new(label)?.value(theta)
}

pub fn character_ratio(label: &OddLabel, theta: f64) -> Result<f64> {
    WeylCharacter::new(label)?.ratio(theta)
}

/// Mean of `r_a` over `θ` uniform on `[ε, 2π − ε]`.
pub fn integrated_ratio(label: &OddLabel, eps: f64) -> Result<f64> {
    let profile = crate::branching::fourier_profile(label)?;
    integrated_ratio_from_profile(&profile, eps)
}

/// Closed form `α̃₀ − Σ_{j≥1} α̃_j sin(εj) / (j(π − ε))`.
pub fn integrated_ratio_from_profile(profile: &FourierProfile, eps: f64) -> Result<f64> {
    check_eps(eps)?;
    let tilde = profile.alpha_tilde_f64();
    let tail: f64 = tilde
        .iter()
        .enumerate()
        .skip(1)
        .map(|(j, a)| a * (eps * j as f64).sin() / (j as f64 * (PI - eps)))
        .sum();
    Ok(tilde[0] - tail)
}

pub(crate) fn check_eps(eps: f64) -> Result<()> {
    if eps.is_finite() && eps > 0.0 && eps < PI - 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("eps {eps} outside (0, pi - 1)")))
    }
}

/// Exact `r_a(π)` from the closed form: `Σ_j (−1)^{a_j+j−1} K_j`.
pub fn ratio_at_pi_exact(label: &OddLabel) -> Result<BigRational> {
    let w = WeylCharacter::new(label)?;
    Ok(w
        .exact_coeffs
        .iter()
        .zip(label.parts())
        .enumerate()
        .map(|(i, (k, &a))| {
            if (u64::from(a) + i as u64).is_odd() {
                -k.clone()
            } else {
                k.clone()
            }
        })
        .fold(BigRational::zero(), |acc, k| acc + k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn label(s: &str) -> OddLabel {
        s.parse().unwrap()
    }

    #[test]
    fn dimension_examples() {
        for n in 1..=6 {
            assert_eq!(dimension(&OddLabel::trivial(n)).unwrap(), BigUint::one());
        }
        for l in 0..20u32 {
            let a = OddLabel::new(vec![l]).unwrap();
            assert_eq!(dimension(&a).unwrap(), BigUint::from(2 * l + 1));
        }
        assert_eq!(dimension(&label("0,1")).unwrap(), BigUint::from(5u32));
        assert_eq!(dimension(&label("1,1")).unwrap(), BigUint::from(10u32));
        assert_eq!(dimension(&label("0,2")).unwrap(), BigUint::from(14u32));
        // standard representation of SO(2n+1)
        assert_eq!(dimension(&label("0,0,0,1")).unwrap(), BigUint::from(9u32));
    }

    #[test]
    fn trivial_character_is_one() {
        for n in 1..=5 {
            let c = character_value(&OddLabel::trivial(n), PI / 2.0).unwrap();
            assert_eq!(c.value, 1.0);
            assert_eq!(c.ratio, 1.0);
        }
    }

    #[test]
    fn standard_rep_of_so5() {
        let a = label("0,1");
        for i in 1..40 {
            let theta = i as f64 * TAU / 40.0;
            let c = character_value(&a, theta).unwrap();
            let trace = 3.0 + 2.0 * theta.cos();
            assert!((c.value - trace).abs() < 1e-12, "{theta}: {} vs {trace}", c.value);
            assert!((c.ratio - trace / 5.0).abs() < 1e-12);
        }
        assert!((character_ratio(&a, PI).unwrap() - 0.2).abs() < 1e-15);
    }

    #[test]
    fn so3_characters() {
        for l in 0..6u32 {
            let a = OddLabel::new(vec![l]).unwrap();
            for i in 1..30 {
                let theta = i as f64 * 0.2;
                let expect = 1.0 + 2.0 * (1..=l).map(|j| (j as f64 * theta).cos()).sum::<f64>();
                let c = character_value(&a, theta).unwrap();
                assert!((c.value - expect).abs() < 1e-11 * f64::from(2 * l + 1));
            }
        }
    }

    #[test]
    fn ratio_tends_to_one_near_identity() {
        let labels = ["1", "3", "0,2", "1,3", "0,1,3", "2,2,2", "0,0,1,3", "1,1,2,3"];
        for s in labels {
            let a = label(s);
            let mut prev_gap = f64::INFINITY;
            for theta in [0.1, 0.01, 0.001] {
                let gap = (1.0 - character_ratio(&a, theta).unwrap()).abs();
                assert!(gap < prev_gap, "{s} at {theta}");
                prev_gap = gap;
            }
            assert!(prev_gap < 1e-3, "{s}: {prev_gap}");
        }
    }

    #[test]
    fn rejects_near_identity_angles() {
        let a = label("0,1");
        assert!(matches!(character_value(&a, 1e-7), Err(Error::Domain(_))));
        assert!(matches!(character_value(&a, TAU - 1e-8), Err(Error::Domain(_))));
        assert!(matches!(character_value(&a, 0.0), Err(Error::Domain(_))));
        assert!(matches!(character_value(&a, f64::NAN), Err(Error::Domain(_))));
        assert!(character_value(&a, 1e-5).is_ok());
    }

    #[test]
    fn ratio_is_symmetric_about_pi() {
        let a = label("1,2,4");
        for theta in [0.05, 0.7, 2.0, 3.0] {
            let l = character_ratio(&a, theta).unwrap();
            let r = character_ratio(&a, TAU - theta).unwrap();
            assert!((l - r).abs() < 1e-12);
        }
    }

    #[test]
    fn integrated_ratio_examples() {
        assert_eq!(integrated_ratio(&OddLabel::trivial(3), 0.5).unwrap(), 1.0);
        let got = integrated_ratio(&label("1"), 0.5).unwrap();
        let expect = 1.0 / 3.0 - (2.0 / 3.0) * 0.5f64.sin() / (PI - 0.5);
        assert!((got - expect).abs() < 1e-15);
        assert!(integrated_ratio(&label("1"), 0.0).is_err());
        assert!(integrated_ratio(&label("1"), PI - 1.0).is_err());
    }

    #[test]
    fn exact_ratio_at_pi() {
        assert_eq!(
            ratio_at_pi_exact(&label("0,1")).unwrap(),
            BigRational::new(1.into(), 5.into())
        );
        assert_eq!(ratio_at_pi_exact(&OddLabel::trivial(4)).unwrap(), BigRational::one());
    }
}
