//! Restriction along SO(2n+1) ⊃ SO(2n) ⊃ SO(2n−1) ⊃ … ⊃ SO(3) ⊃ SO(2).
//!
//! Both restriction steps are multiplicity free and governed by interlacing.
//! Counting chains that end at the SO(2) weight `±j` gives the coefficient
//! `α_j` of `cos(jθ)` in the character at `R(1,2;θ)`; counting chains that
//! pass through the SO(3) label `(j)` gives `β_j`.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::config;
use crate::error::{Error, Result};
use crate::exact::{biguint_to_f64, uint_ratio};
use crate::labels::{EvenLabel, OddLabel};
use crate::weyl;

/// Restriction of an SO(2n+1) irrep to SO(2n):
/// all `b` with `|b_1| ≤ a_1 ≤ b_2 ≤ a_2 ≤ … ≤ b_n ≤ a_n`.
pub fn restrict_odd_to_even(a: &OddLabel) -> Vec<EvenLabel> {
    odd_to_even(&to_signed(a.parts()))
        .into_iter()
        .map(EvenLabel::from_parts_unchecked)
        .collect()
}

/// Restriction of an SO(2n) irrep to SO(2n−1):
/// all `a` with `|b_1| ≤ a_1 ≤ b_2 ≤ … ≤ a_{n−1} ≤ b_n`. Empty for SO(2).
pub fn restrict_even_to_odd(b: &EvenLabel) -> Vec<OddLabel> {
    even_to_odd(b.parts())
        .into_iter()
        .map(|p| {
            OddLabel::new(p.into_iter().map(|x| x as u32).collect())
                .expect("interlacing yields nondecreasing labels")
        })
        .collect()
}

fn to_signed(parts: &[u32]) -> Vec<i64> {
    parts.iter().map(|&x| i64::from(x)).collect()
}

fn odd_to_even(a: &[i64]) -> Vec<Vec<i64>> {
    let ranges: Vec<(i64, i64)> = (0..a.len())
        .map(|k| if k == 0 { (-a[0], a[0]) } else { (a[k - 1], a[k]) })
        .collect();
    product(&ranges)
}

fn even_to_odd(b: &[i64]) -> Vec<Vec<i64>> {
    if b.len() <= 1 {
        return Vec::new();
    }
    let ranges: Vec<(i64, i64)> = (0..b.len() - 1)
        .map(|k| {
            let lo = if k == 0 { b[0].abs() } else { b[k] };
            (lo, b[k + 1])
        })
        .collect();
    product(&ranges)
}

/// Cartesian product of inclusive integer ranges, in lexicographic order.
fn product(ranges: &[(i64, i64)]) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::with_capacity(ranges.len())];
    for &(lo, hi) in ranges {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                (lo..=hi).map(move |v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    out
}

/// Fourier data of one irrep restricted to the planar rotations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourierProfile {
    pub label: OddLabel,
    pub d: BigUint,
    /// `α_j`, `j = 0..=a_n`; already includes both weights `±j`.
    pub alpha: Vec<BigUint>,
    /// `β_j`, `j = 0..=a_n`: multiplicity of the SO(3) irrep `(j)`.
    pub beta: Vec<BigUint>,
}

impl FourierProfile {
    /// `a_n`, the index of the last nonzero `α_j`.
    pub fn m(&self) -> usize {
        self.alpha.len() - 1
    }

    pub fn alpha_tilde(&self) -> Vec<BigRational> {
        self.alpha.iter().map(|a| uint_ratio(a, &self.d)).collect()
    }

    pub fn beta_tilde(&self) -> Vec<BigRational> {
        self.beta.iter().map(|b| uint_ratio(b, &self.d)).collect()
    }

    pub fn alpha_tilde_f64(&self) -> Vec<f64> {
        let d = biguint_to_f64(&self.d);
        self.alpha.iter().map(|a| biguint_to_f64(a) / d).collect()
    }

    /// Exact `r_a(π) = Σ_j α̃_j (−1)^j`.
    pub fn ratio_at_pi(&self) -> BigRational {
        let signed = self
            .alpha
            .iter()
            .enumerate()
            .fold(BigInt::zero(), |acc, (j, a)| {
                let a = BigInt::from(a.clone());
                if j % 2 == 0 {
                    acc + a
                } else {
                    acc - a
                }
            });
        BigRational::new(signed, BigInt::from(self.d.clone()))
    }

    /// `Σ_j α_j cos(jθ)`, the character evaluated through the branching data.
    pub fn character(&self, theta: f64) -> f64 {
        self.alpha
            .iter()
            .enumerate()
            .map(|(j, a)| biguint_to_f64(a) * (j as f64 * theta).cos())
            .sum()
    }

    pub fn ratio(&self, theta: f64) -> f64 {
        self.character(theta) / biguint_to_f64(&self.d)
    }

    /// Checks the structural invariants: `Σ α_j = d`, support `≤ a_n`,
    /// `α_{a_n} > 0`.
    pub fn validate(&self) -> Result<()> {
        let top = self.label.top() as usize;
        if self.alpha.len() != top + 1 || self.beta.len() != top + 1 {
            return Err(Error::consistency(format!(
                "profile of {} has support {} / {}, expected {}",
                self.label,
                self.alpha.len(),
                self.beta.len(),
                top + 1
            )));
        }
        let total: BigUint = self.alpha.iter().sum();
        if total != self.d {
            return Err(Error::consistency(format!(
                "profile of {}: sum alpha = {total} but d = {}",
                self.label, self.d
            )));
        }
        if self.alpha[top].is_zero() {
            return Err(Error::consistency(format!(
                "profile of {}: alpha_{top} vanishes",
                self.label
            )));
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct ProfileRecord {
    label: OddLabel,
    d: String,
    alpha: Vec<String>,
    beta: Vec<String>,
}

impl Serialize for FourierProfile {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ProfileRecord {
            label: self.label.clone(),
            d: self.d.to_string(),
            alpha: self.alpha.iter().map(ToString::to_string).collect(),
            beta: self.beta.iter().map(ToString::to_string).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FourierProfile {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let rec = ProfileRecord::deserialize(d)?;
        let parse = |s: &String| s.parse::<BigUint>().map_err(D::Error::custom);
        let profile = FourierProfile {
            label: rec.label,
            d: parse(&rec.d)?,
            alpha: rec.alpha.iter().map(parse).collect::<std::result::Result<_, _>>()?,
            beta: rec.beta.iter().map(parse).collect::<std::result::Result<_, _>>()?,
        };
        profile.validate().map_err(D::Error::custom)?;
        Ok(profile)
    }
}

type Level = BTreeMap<Vec<i64>, BigUint>;

fn descend(level: &Level, step: fn(&[i64]) -> Vec<Vec<i64>>) -> Level {
    let mut next = Level::new();
    for (label, mult) in level {
        for child in step(label) {
            *next.entry(child).or_insert_with(BigUint::zero) += mult;
        }
    }
    next
}

/// Level-by-level count of branching chains.
pub fn fourier_profile(a: &OddLabel) -> Result<FourierProfile> {
    let top = a.top() as usize;
    let mut level: Level = BTreeMap::from([(to_signed(a.parts()), BigUint::one())]);
    for _ in 1..a.rank() {
        level = descend(&descend(&level, odd_to_even), even_to_odd);
    }
    // level now holds SO(3) labels
    let mut beta = vec![BigUint::zero(); top + 1];
    for (label, mult) in &level {
        beta[label[0] as usize] += mult;
    }
    let so2 = descend(&level, odd_to_even);
    let mut alpha = vec![BigUint::zero(); top + 1];
    for (weight, mult) in &so2 {
        alpha[weight[0].unsigned_abs() as usize] += mult;
    }
    let profile = FourierProfile {
        label: a.clone(),
        d: weyl::dimension(a)?,
        alpha,
        beta,
    };
    profile.validate()?;
    Ok(profile)
}

/// Same result as [`fourier_profile`], by walking every chain explicitly.
pub fn brute_force_profile(a: &OddLabel) -> Result<FourierProfile> {
    brute_force_profile_capped(a, config::PATH_CAP)
}

pub fn brute_force_profile_capped(a: &OddLabel, cap: u64) -> Result<FourierProfile> {
    let top = a.top() as usize;
    let mut walker = PathWalker {
        alpha: vec![0; top + 1],
        beta: vec![0; top + 1],
        paths: 0,
        cap,
    };
    walker.visit_odd(&to_signed(a.parts()))?;
    Ok(FourierProfile {
        label: a.clone(),
        d: weyl::dimension(a)?,
        alpha: walker.alpha.into_iter().map(BigUint::from).collect(),
        beta: walker.beta.into_iter().map(BigUint::from).collect(),
    })
}

struct PathWalker {
    alpha: Vec<u64>,
    beta: Vec<u64>,
    paths: u64,
    cap: u64,
}

impl PathWalker {
    fn visit_odd(&mut self, a: &[i64]) -> Result<()> {
        if a.len() == 1 {
            self.beta[a[0] as usize] += 1;
        }
        for b in odd_to_even(a) {
            self.visit_even(&b)?;
        }
        Ok(())
    }

    fn visit_even(&mut self, b: &[i64]) -> Result<()> {
        if b.len() == 1 {
            self.paths += 1;
            if self.paths > self.cap {
                return Err(Error::resource(format!(
                    "more than {} branching paths",
                    self.cap
                )));
            }
            self.alpha[b[0].unsigned_abs() as usize] += 1;
            return Ok(());
        }
        for a in even_to_odd(b) {
            self.visit_odd(&a)?;
        }
        Ok(())
    }
}
