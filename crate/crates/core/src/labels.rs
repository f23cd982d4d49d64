//! Highest-weight labels for the odd and even special orthogonal groups.
//!
//! An irreducible representation of SO(2n+1) is labelled by a nondecreasing
//! tuple `0 ≤ a_1 ≤ … ≤ a_n`. The half-integer shifts `a_q + q − 1/2` that
//! appear in the Weyl formulas are kept doubled (`L_q = 2a_q + 2q − 1`) so that
//! all arithmetic on them stays in the integers.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Label of an SO(2n+1) irrep; `n` is the tuple length.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OddLabel {
    parts: Vec<u32>,
}

/// Returns true when `parts` is a nonempty nondecreasing tuple.
pub fn validate_odd(parts: &[u32]) -> bool {
    !parts.is_empty() && parts.windows(2).all(|w| w[0] <= w[1])
}

impl OddLabel {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if !validate_odd(&parts) {
            return Err(Error::domain(format!(
                "label {} is not a nonempty nondecreasing tuple",
                join(&parts)
            )));
        }
        Ok(Self { parts })
    }

    /// The trivial representation `(0^n)`.
    pub fn trivial(n: usize) -> Self {
        assert!(n >= 1, "SO(2n+1) needs n >= 1");
        Self { parts: vec![0; n] }
    }

    /// `n` such that the group is SO(2n+1).
    pub fn rank(&self) -> usize {
        self.parts.len()
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    /// Largest entry `a_n`.
    pub fn top(&self) -> u32 {
        *self.parts.last().expect("labels are nonempty")
    }

    pub fn total(&self) -> u64 {
        self.parts.iter().map(|&a| u64::from(a)).sum()
    }

    pub fn is_trivial(&self) -> bool {
        self.top() == 0
    }

    /// Doubled shifted coordinates `L_q = 2a_q + 2q − 1`, strictly increasing
    /// positive odd integers.
    pub fn doubled_shifts(&self) -> Vec<i64> {
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &a)| 2 * i64::from(a) + 2 * (i as i64 + 1) - 1)
            .collect()
    }

    /// Matrix size `2n + 1`.
    pub fn group_size(&self) -> usize {
        2 * self.rank() + 1
    }
}

impl fmt::Display for OddLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(&self.parts))
    }
}

impl FromStr for OddLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::domain(format!("bad label entry {p:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        OddLabel::new(parts)
    }
}

impl Serialize for OddLabel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for OddLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Label of an SO(2n) irrep: `|b_1| ≤ b_2 ≤ … ≤ b_n`. For SO(2) (`n = 1`) any
/// integer is allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EvenLabel {
    parts: Vec<i64>,
}

pub fn validate_even(parts: &[i64]) -> bool {
    match parts {
        [] => false,
        [_] => true,
        [first, rest @ ..] => {
            first.unsigned_abs() <= rest[0].unsigned_abs()
                && rest[0] >= 0
                && rest.windows(2).all(|w| w[0] <= w[1])
        }
    }
}

impl EvenLabel {
    pub fn new(parts: Vec<i64>) -> Result<Self> {
        if !validate_even(&parts) {
            return Err(Error::domain(format!(
                "SO(2n) label {} violates |b_1| <= b_2 <= ... <= b_n",
                join(&parts)
            )));
        }
        Ok(Self { parts })
    }

    pub(crate) fn from_parts_unchecked(parts: Vec<i64>) -> Self {
        debug_assert!(validate_even(&parts));
        Self { parts }
    }

    pub fn rank(&self) -> usize {
        self.parts.len()
    }

    pub fn parts(&self) -> &[i64] {
        &self.parts
    }
}

impl fmt::Display for EvenLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&join(&self.parts))
    }
}

/// Finite truncation of the dual of SO(2n+1).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelBudget {
    pub n: usize,
    /// Cap on `Σ a_q`.
    pub max_total: u64,
    /// Cap on `a_n`.
    pub max_top: u32,
}

impl LabelBudget {
    pub fn new(n: usize, max_total: u64, max_top: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("budget needs n >= 1"));
        }
        Ok(Self { n, max_total, max_top })
    }

    /// Budget capped only by the total weight.
    pub fn by_total(n: usize, max_total: u64) -> Result<Self> {
        let top = u32::try_from(max_total).unwrap_or(u32::MAX);
        Self::new(n, max_total, top)
    }

    pub fn contains(&self, label: &OddLabel) -> bool {
        label.rank() == self.n && label.total() <= self.max_total && label.top() <= self.max_top
    }

    /// True when increasing any single entry of `label` by one leaves the
    /// budget, i.e. the label sits on the truncation boundary.
    pub fn on_boundary(&self, label: &OddLabel) -> bool {
        label.total() == self.max_total || label.top() == self.max_top
    }
}

/// All labels in the budget, in lexicographic order, trivial label first.
pub fn enumerate_odd(budget: &LabelBudget) -> Vec<OddLabel> {
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(budget.n);
    extend(budget, &mut prefix, 0, 0, &mut out);
    out
}

fn extend(
    budget: &LabelBudget,
    prefix: &mut Vec<u32>,
    min: u32,
    sum: u64,
    out: &mut Vec<OddLabel>,
) {
    if prefix.len() == budget.n {
        out.push(OddLabel { parts: prefix.clone() });
        return;
    }
    let remaining = (budget.n - prefix.len()) as u64;
    let mut v = min;
    // every later entry is at least `v`
    while v <= budget.max_top && sum + u64::from(v) * remaining <= budget.max_total {
        prefix.push(v);
        extend(budget, prefix, v, sum + u64::from(v), out);
        prefix.pop();
        v += 1;
    }
}

fn join<T: fmt::Display>(xs: &[T]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}
