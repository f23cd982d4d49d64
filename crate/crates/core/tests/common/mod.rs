//! Independent reference computations for the integration tests.
#![allow(dead_code)]

use std::f64::consts::PI;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rosenthal::{enumerate_odd, LabelBudget, OddLabel};

/// Double-exponential quadrature of `f` over `[a, b]`.
pub fn quad(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    quadrature::double_exponential::integrate(f, a, b, 1e-14).integral
}

/// All labels of rank `1..=n_max` with `Σ a ≤ total`.
pub fn labels_up_to(n_max: usize, total: u64) -> Vec<OddLabel> {
    (1..=n_max)
        .flat_map(|n| enumerate_odd(&LabelBudget::by_total(n, total).unwrap()))
        .collect()
}

/// `count` distinct rank-`n` labels with `Σ a ≤ total`, drawn with a fixed seed.
pub fn random_labels(n: usize, total: u64, count: usize, seed: u64) -> Vec<OddLabel> {
    let pool = enumerate_odd(&LabelBudget::by_total(n, total).unwrap());
    assert!(pool.len() >= count, "only {} labels available", pool.len());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked: Vec<OddLabel> = sample(&mut rng, pool.len(), count).into_iter().map(|i| pool[i].clone()).collect();
    picked.sort();
    picked
}

/// Weyl dimension in the classical convention: decreasing weights
/// `λ_i = a_{n+1−i}`, `ρ_i = n − i + 1/2`, evaluated in rationals.
pub fn classical_dimension(label: &OddLabel) -> BigRational {
    let n = label.rank();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let lam: Vec<BigRational> = label.parts().iter().rev().map(|&a| BigRational::from_integer(a.into())).collect();
    let rho: Vec<BigRational> = (1..=n).map(|i| BigRational::from_integer(BigInt::from(n - i)) + &half).collect();
    let l: Vec<BigRational> = lam.iter().zip(&rho).map(|(x, r)| x + r).collect();
    let mut d = BigRational::one();
    for i in 0..n {
        d *= &l[i] / &rho[i];
        for j in i + 1..n {
            d *= (&l[i] * &l[i] - &l[j] * &l[j]) / (&rho[i] * &rho[i] - &rho[j] * &rho[j]);
        }
    }
    d
}

/// SO(3) character of spin `l` from the classical formula `sin((2l+1)x)/sin x`, `x = θ/2`.
pub fn so3_character(l: u32, theta: f64) -> f64 {
    let x = theta / 2.0;
    ((2 * l + 1) as f64 * x).sin() / x.sin()
}

/// Mean of the SO(3) character ratio for `θ` uniform on `[ε, 2π − ε]`, by quadrature.
pub fn so3_truncated_ratio(l: u32, eps: f64) -> f64 {
    let d = (2 * l + 1) as f64;
    quad(|th| so3_character(l, th) / d, eps, PI) / (PI - eps)
}

/// `Σ_{l=1}^{max_l} (2l+1)² ρ_l^{2t}`.
pub fn so3_truncated_bound_sq(max_l: u32, eps: f64, t: u64) -> f64 {
    (1..=max_l)
        .map(|l| {
            let d = (2 * l + 1) as f64;
            d * d * so3_truncated_ratio(l, eps).powi(2 * t as i32)
        })
        .sum()
}

/// `μ(j) = (2n−1)! / ((j − 1/2) ∏_{r≠j} |(r − 1/2)² − (j − 1/2)²|) / 2^{2n−1}`
/// in plain floating point.
pub fn mu_reference(n: usize) -> Vec<f64> {
    let fact: f64 = (1..2 * n).map(|k| k as f64).product();
    (1..=n)
        .map(|j| {
            let hj = j as f64 - 0.5;
            let prod: f64 = (1..=n)
                .filter(|&r| r != j)
                .map(|r| {
                    let hr = r as f64 - 0.5;
                    (hr * hr - hj * hj).abs()
                })
                .product();
            fact / (hj * prod) / 2f64.powi(2 * n as i32 - 1)
        })
        .collect()
}

/// `x` rounded to `f64` without going through the library's conversion.
pub fn rational_to_f64(x: &BigRational) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let sign = if x.is_negative() { -1.0 } else { 1.0 };
    let num = x.numer().abs().to_biguint().unwrap();
    let den = x.denom().abs().to_biguint().unwrap();
    // choose k so the quotient carries about 80 significant bits
    let k = 80 + den.bits() as i64 - num.bits() as i64;
    let q: BigUint = if k >= 0 { (num << k as u64) / den } else { num / (den << (-k) as u64) };
    let bits = q.bits() as i64;
    let shift = (bits - 64).max(0);
    let top = (&q >> shift as u64).to_u64().unwrap() as f64;
    sign * top * 2f64.powi((shift - k) as i32)
}

/// `P[Bin(m, 1 − ε) ≥ t]` as `1 − Σ_{j<t}` summed upward in exact rationals.
pub fn reference_binomial_tail(m: u64, t: u64, eps: f64) -> f64 {
    let q = BigRational::from_float(eps).unwrap();
    let p = BigRational::one() - &q;
    let mut lower = BigRational::zero();
    let mut binom = BigInt::one();
    for j in 0..t.min(m + 1) {
        lower += BigRational::from_integer(binom.clone()) * p.pow(j as i32) * q.pow((m - j) as i32);
        binom = binom * BigInt::from(m - j) / BigInt::from(j + 1);
    }
    rational_to_f64(&(BigRational::one() - lower))
}
