//! Monte Carlo simulation of rotation walks on SO(N).
//!
//! Two step kinds are supported: a rotation by `θ` in a uniformly random
//! 2-plane (conjugacy-class walk), and a rotation by `θ` in a uniformly
//! random coordinate plane (Kac walk). `X_0 = I` and `X_t = X_{t−1} S_t`.
//!
//! Trial `i` draws from `ChaCha8Rng::seed_from_u64(seed)` switched to
//! stream `i`, so results do not depend on thread count or scheduling.
//! Trials are grouped in fixed chunks of [`CHUNK`] and chunk statistics are
//! merged in chunk order.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::bounds::{step_coefficient, AngleLaw};
use crate::config;
use crate::error::{Error, Result};
use crate::exact::biguint_to_f64;
use crate::labels::OddLabel;
use crate::weyl;

/// Trials per aggregation chunk.
pub const CHUNK: u64 = 256;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WalkKind {
    /// `S = Q R(1,2;θ) Qᵀ` with `Q` Haar distributed.
    RosenthalConjugacy,
    /// `S = R(i,j;θ)` for a uniform pair `i < j`.
    KacPair,
}

impl fmt::Display for WalkKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WalkKind::RosenthalConjugacy => "rosenthal_conjugacy",
            WalkKind::KacPair => "kac_pair",
        })
    }
}

impl FromStr for WalkKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rosenthal_conjugacy" | "rosenthal" | "conjugacy" => Ok(WalkKind::RosenthalConjugacy),
            "kac_pair" | "kac" => Ok(WalkKind::KacPair),
            _ => Err(Error::domain(format!("unknown walk kind {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WalkConfig {
    /// Matrix size `N`.
    pub size: usize,
    pub kind: WalkKind,
    pub law: AngleLaw,
    pub steps: usize,
    pub trials: u64,
    pub seed: u64,
}

impl WalkConfig {
    pub fn validate(&self, budget: u64) -> Result<()> {
        if self.size < 3 {
            return Err(Error::domain(format!("walk needs N >= 3, got {}", self.size)));
        }
        if self.steps == 0 || self.trials == 0 {
            return Err(Error::domain("steps and trials must be positive"));
        }
        self.law.validate()?;
        let work = (self.steps as u64).saturating_mul(self.trials);
        if work > budget {
            return Err(Error::resource(format!(
                "steps * trials = {work} exceeds the budget {budget}"
            )));
        }
        Ok(())
    }
}

/// The random stream used by trial `trial`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Haar-distributed element of SO(N): QR of a Gaussian matrix, columns
/// rescaled by the signs of `diag(R)`, then one column negated if the
/// determinant is −1.
pub fn haar_rotation<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<f64> {
    if n == 1 {
        return DMatrix::identity(1, 1);
    }
    let g = DMatrix::<f64>::from_fn(n, n, |_, _| rng.sample(StandardNormal));
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for (k, mut col) in q.column_iter_mut().enumerate() {
        if r[(k, k)] < 0.0 {
            col.neg_mut();
        }
    }
    if q.determinant() < 0.0 {
        q.column_mut(0).neg_mut();
    }
    q
}

/// Uniformly distributed orthonormal pair in `R^N`; equal in law to the
/// first two columns of [`haar_rotation`].
fn random_two_frame<R: Rng + ?Sized>(n: usize, rng: &mut R) -> (DVector<f64>, DVector<f64>) {
    loop {
        let g1 = DVector::<f64>::from_fn(n, |_, _| rng.sample(StandardNormal));
        let g2 = DVector::<f64>::from_fn(n, |_, _| rng.sample(StandardNormal));
        let n1 = g1.norm();
        if n1 == 0.0 {
            continue;
        }
        let u = g1 / n1;
        let w = &g2 - &u * u.dot(&g2);
        let n2 = w.norm();
        if n2 > 1e-12 {
            return (u, w / n2);
        }
    }
}

/// One sampled step.
#[derive(Debug, Clone, PartialEq)]
pub enum StepSample {
    /// Rotation by `θ` in the plane of the orthonormal pair `(u, v)`.
    Plane { u: DVector<f64>, v: DVector<f64>, theta: f64 },
    /// Rotation by `θ` in coordinate plane `(i, j)`, `i < j`.
    Coordinates { i: usize, j: usize, theta: f64 },
}

impl StepSample {
    pub fn draw<R: Rng + ?Sized>(size: usize, kind: WalkKind, law: &AngleLaw, rng: &mut R) -> Self {
        match kind {
            WalkKind::RosenthalConjugacy => {
                let (u, v) = random_two_frame(size, rng);
                let theta = law.angle_from_unit(rng.random::<f64>());
                StepSample::Plane { u, v, theta }
            }
            WalkKind::KacPair => {
                let i = rng.random_range(0..size);
                let mut j = rng.random_range(0..size - 1);
                if j >= i {
                    j += 1;
                }
                let theta = law.angle_from_unit(rng.random::<f64>());
                StepSample::Coordinates { i: i.min(j), j: i.max(j), theta }
            }
        }
    }

    /// The step as an explicit matrix.
    pub fn matrix(&self, size: usize) -> DMatrix<f64> {
        let mut m = DMatrix::identity(size, size);
        self.apply(&mut m);
        m
    }

    /// `x ← x · S`.
    pub fn apply(&self, x: &mut DMatrix<f64>) {
        match self {
            StepSample::Plane { u, v, theta } => {
                let (s, c) = theta.sin_cos();
                let xu = &*x * u;
                let xv = &*x * v;
                // x S = x + xu ((c−1)u − s v)ᵀ + xv ((c−1)v + s u)ᵀ
                let a = u * (c - 1.0) - v * s;
                let b = v * (c - 1.0) + u * s;
                x.ger(1.0, &xu, &a, 1.0);
                x.ger(1.0, &xv, &b, 1.0);
            }
            &StepSample::Coordinates { i, j, theta } => {
                let (s, c) = theta.sin_cos();
                for r in 0..x.nrows() {
                    let (xi, xj) = (x[(r, i)], x[(r, j)]);
                    x[(r, i)] = c * xi + s * xj;
                    x[(r, j)] = -s * xi + c * xj;
                }
            }
        }
    }
}

/// `max |XᵀX − I|`.
pub fn orthogonality_defect(x: &DMatrix<f64>) -> f64 {
    let g = x.transpose() * x;
    g.iter()
        .enumerate()
        .map(|(k, v)| {
            let diag = k % g.nrows() == k / g.nrows();
            (v - if diag { 1.0 } else { 0.0 }).abs()
        })
        .fold(0.0, f64::max)
}

/// Gram–Schmidt re-orthonormalisation that keeps column orientation, and
/// hence the determinant sign.
pub fn reorthonormalize(x: &mut DMatrix<f64>) {
    let n = x.ncols();
    for k in 0..n {
        for _ in 0..2 {
            for p in 0..k {
                let proj = x.column(p).dot(&x.column(k));
                let prev = x.column(p).clone_owned();
                x.column_mut(k).axpy(-proj, &prev, 1.0);
            }
        }
        let norm = x.column(k).norm();
        x.column_mut(k).unscale_mut(norm);
    }
}

/// One step from `x`, re-orthonormalising if the drift exceeds tolerance.
pub fn step<R: Rng + ?Sized>(x: &DMatrix<f64>, config: &WalkConfig, rng: &mut R) -> DMatrix<f64> {
    let mut next = x.clone();
    StepSample::draw(config.size, config.kind, &config.law, rng).apply(&mut next);
    if orthogonality_defect(&next) > config::ORTHO_DRIFT {
        reorthonormalize(&mut next);
    }
    next
}

/// A single trajectory, checking drift every [`config::ORTHO_CHECK_EVERY`] steps.
#[derive(Debug, Clone)]
pub struct Walker {
    pub state: DMatrix<f64>,
    size: usize,
    kind: WalkKind,
    law: AngleLaw,
    steps_taken: usize,
}

impl Walker {
    pub fn new(config: &WalkConfig) -> Self {
        Self {
            state: DMatrix::identity(config.size, config.size),
            size: config.size,
            kind: config.kind,
            law: config.law,
            steps_taken: 0,
        }
    }

    pub fn advance<R: Rng + ?Sized>(&mut self, rng: &mut R) {
        StepSample::draw(self.size, self.kind, &self.law, rng).apply(&mut self.state);
        self.steps_taken += 1;
        if self.steps_taken.is_multiple_of(config::ORTHO_CHECK_EVERY)
            && orthogonality_defect(&self.state) > config::ORTHO_DRIFT
        {
            reorthonormalize(&mut self.state);
        }
    }

    pub fn trace(&self) -> f64 {
        self.state.trace()
    }

    /// `(Tr X, (Tr X)², Tr X²)`.
    pub fn trace_triple(&self) -> [f64; 3] {
        let x = &self.state;
        let tr = x.trace();
        let n = x.nrows();
        let mut trsq = 0.0;
        for i in 0..n {
            for j in 0..n {
                trsq += x[(i, j)] * x[(j, i)];
            }
        }
        [tr, tr * tr, trsq]
    }
}

/// Running mean and co-moment matrix of a 3-vector.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Moments {
    pub count: u64,
    pub mean: [f64; 3],
    pub comoment: [[f64; 3]; 3],
}

impl Moments {
    pub fn push(&mut self, x: [f64; 3]) {
        self.count += 1;
        let n = self.count as f64;
        let delta: [f64; 3] = std::array::from_fn(|i| x[i] - self.mean[i]);
        for i in 0..3 {
            self.mean[i] += delta[i] / n;
        }
        for i in 0..3 {
            for j in 0..3 {
                self.comoment[i][j] += delta[i] * (x[j] - self.mean[j]);
            }
        }
    }

    pub fn merge(&mut self, other: &Moments) {
        if other.count == 0 {
            return;
        }
        if self.count == 0 {
            *self = *other;
            return;
        }
        let (na, nb) = (self.count as f64, other.count as f64);
        let n = na + nb;
        let delta: [f64; 3] = std::array::from_fn(|i| other.mean[i] - self.mean[i]);
        for i in 0..3 {
            for j in 0..3 {
                self.comoment[i][j] += other.comoment[i][j] + delta[i] * delta[j] * na * nb / n;
            }
        }
        for i in 0..3 {
            self.mean[i] += delta[i] * nb / n;
        }
        self.count += other.count;
    }

    /// Mean and standard error of `w · x + offset`.
    pub fn linear(&self, w: [f64; 3], offset: f64) -> (f64, f64) {
        let mean = (0..3).map(|i| w[i] * self.mean[i]).sum::<f64>() + offset;
        if self.count < 2 {
            return (mean, f64::NAN);
        }
        let mut var = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                var += w[i] * w[j] * self.comoment[i][j];
            }
        }
        let var = (var / (self.count - 1) as f64).max(0.0);
        (mean, (var / self.count as f64).sqrt())
    }
}

/// Which trace statistic.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceStat {
    /// `Tr X`
    Trace,
    /// `(Tr X)²`
    TraceSquared,
    /// `Tr(X²)`
    TraceOfSquare,
}

impl TraceStat {
    fn weights(self) -> [f64; 3] {
        match self {
            TraceStat::Trace => [1.0, 0.0, 0.0],
            TraceStat::TraceSquared => [0.0, 1.0, 0.0],
            TraceStat::TraceOfSquare => [0.0, 0.0, 1.0],
        }
    }
}

/// Trace statistics at `t = 0..=steps`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceStats {
    pub config: WalkConfig,
    pub per_step: Vec<Moments>,
}

/// One CSV row: `t, mean_tr, se_tr, mean_tr2, se_tr2, mean_trsq, se_trsq`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceRow {
    pub t: usize,
    pub values: [f64; 6],
}

impl TraceStats {
    pub fn mean_se(&self, t: usize, stat: TraceStat) -> (f64, f64) {
        self.per_step[t].linear(stat.weights(), 0.0)
    }

    pub fn rows(&self) -> Vec<TraceRow> {
        self.per_step
            .iter()
            .enumerate()
            .map(|(t, m)| {
                let (a, b) = m.linear(TraceStat::Trace.weights(), 0.0);
                let (c, d) = m.linear(TraceStat::TraceSquared.weights(), 0.0);
                let (e, f) = m.linear(TraceStat::TraceOfSquare.weights(), 0.0);
                TraceRow { t, values: [a, b, c, d, e, f] }
            })
            .collect()
    }
}

fn run_chunk(config: &WalkConfig, chunk: u64) -> Vec<Moments> {
    let mut acc = vec![Moments::default(); config.steps + 1];
    let start = chunk * CHUNK;
    let end = (start + CHUNK).min(config.trials);
    for trial in start..end {
        let mut rng = trial_rng(config.seed, trial);
        let mut walker = Walker::new(config);
        acc[0].push(walker.trace_triple());
        for slot in acc.iter_mut().skip(1) {
            walker.advance(&mut rng);
            slot.push(walker.trace_triple());
        }
    }
    acc
}

pub fn simulate(config: &WalkConfig) -> Result<TraceStats> {
    simulate_with_budget(config, config::SIM_BUDGET)
}

pub fn simulate_with_budget(config: &WalkConfig, budget: u64) -> Result<TraceStats> {
    config.validate(budget)?;
    let chunks = config.trials.div_ceil(CHUNK);
    #[cfg(feature = "parallel")]
    let partials: Vec<Vec<Moments>> = {
        use rayon::prelude::*;
        (0..chunks).into_par_iter().map(|c| run_chunk(config, c)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let partials: Vec<Vec<Moments>> = (0..chunks).map(|c| run_chunk(config, c)).collect();

    let mut per_step = vec![Moments::default(); config.steps + 1];
    for part in &partials {
        for (total, m) in per_step.iter_mut().zip(part) {
            total.merge(m);
        }
    }
    Ok(TraceStats { config: *config, per_step })
}

/// Irreps whose character is a polynomial in `Tr X` and `Tr X²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Traceable {
    /// Defining representation, `χ = Tr X`.
    Standard,
    /// `Λ²`, `χ = ((Tr X)² − Tr X²) / 2`.
    Exterior,
    /// Traceless `Sym²`, `χ = ((Tr X)² + Tr X²) / 2 − 1`.
    SymmetricTraceless,
}

impl Traceable {
    /// Recognises the traceable label of SO(`size`).
    pub fn of(label: &OddLabel, size: usize) -> Result<Self> {
        if label.group_size() != size {
            return Err(Error::domain(format!(
                "label {label} belongs to SO({}), not SO({size})",
                label.group_size()
            )));
        }
        let p = label.parts();
        let n = p.len();
        let zeros_before = |k: usize| p[..n - k].iter().all(|&x| x == 0);
        if p[n - 1] == 1 && zeros_before(1) {
            Ok(Traceable::Standard)
        } else if n >= 2 && p[n - 1] == 1 && p[n - 2] == 1 && zeros_before(2) {
            Ok(Traceable::Exterior)
        } else if p[n - 1] == 2 && zeros_before(1) {
            Ok(Traceable::SymmetricTraceless)
        } else {
            Err(Error::domain(format!(
                "label {label} has no trace formula; use (0..0,1), (0..0,1,1) or (0..0,2)"
            )))
        }
    }

    fn weights(self) -> ([f64; 3], f64) {
        match self {
            Traceable::Standard => ([1.0, 0.0, 0.0], 0.0),
            Traceable::Exterior => ([0.0, 0.5, -0.5], 0.0),
            Traceable::SymmetricTraceless => ([0.0, 0.5, 0.5], -1.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecayRow {
    pub t: usize,
    pub mean: f64,
    pub se: f64,
    pub expected: f64,
    pub z: f64,
    /// Zero sample variance (e.g. one step of a fixed-angle conjugacy
    /// walk); `z` is then 0 when the mean matches to 1e−9 and infinite
    /// otherwise.
    pub degenerate: bool,
}

/// Empirical `E[χ_a(X_t)]` against `d_a ρ_a^t`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecayReport {
    pub label: OddLabel,
    pub traceable: Traceable,
    pub d: f64,
    pub rho: f64,
    pub rows: Vec<DecayRow>,
    pub max_abs_z: f64,
}

pub fn character_decay_check(config: &WalkConfig, label: &OddLabel) -> Result<DecayReport> {
    Traceable::of(label, config.size)?;
    let stats = simulate(config)?;
    decay_from_stats(&stats, label)
}

/// Decay comparison reusing an existing simulation.
pub fn decay_from_stats(stats: &TraceStats, label: &OddLabel) -> Result<DecayReport> {
    let config = &stats.config;
    let traceable = Traceable::of(label, config.size)?;
    if config.kind == WalkKind::KacPair && traceable != Traceable::Standard {
        return Err(Error::domain(
            "the Kac step is not conjugation invariant; only the standard character decays geometrically",
        ));
    }
    let d = biguint_to_f64(&weyl::dimension(label)?);
    let rho = step_coefficient(label, &config.law)?;
    let (w, offset) = traceable.weights();
    let mut rows = Vec::with_capacity(config.steps);
    for t in 1..=config.steps {
        let (mean, se) = stats.per_step[t].linear(w, offset);
        let expected = d * rho.powi(t as i32);
        let scale = expected.abs().max(1.0);
        let degenerate = !(se > 1e-9 * scale);
        let z = if degenerate {
            if (mean - expected).abs() <= 1e-9 * scale.max(d) {
                0.0
            } else {
                f64::INFINITY
            }
        } else {
            (mean - expected) / se
        };
        rows.push(DecayRow { t, mean, se, expected, z, degenerate });
    }
    let max_abs_z = rows.iter().map(|r| r.z.abs()).fold(0.0, f64::max);
    Ok(DecayReport { label: label.clone(), traceable, d, rho, rows, max_abs_z })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn config(size: usize, kind: WalkKind, law: AngleLaw, steps: usize, trials: u64) -> WalkConfig {
        WalkConfig { size, kind, law, steps, trials, seed: 7 }
    }

    #[test]
    fn haar_rotation_is_special_orthogonal() {
        let mut rng = trial_rng(1, 0);
        assert_eq!(haar_rotation(1, &mut rng), DMatrix::identity(1, 1));
        for n in [2, 3, 5, 8] {
            for _ in 0..20 {
                let q = haar_rotation(n, &mut rng);
                assert!(orthogonality_defect(&q) <= 1e-12);
                assert!((q.determinant() - 1.0).abs() <= 1e-9);
            }
        }
    }

    #[test]
    fn haar_trace_moments() {
        let mut rng = trial_rng(42, 3);
        let samples: Vec<f64> = (0..10_000).map(|_| haar_rotation(5, &mut rng).trace()).collect();
        let mut m = Moments::default();
        for &tr in &samples {
            m.push([tr, tr * tr, 0.0]);
        }
        let (mean, se) = m.linear([1.0, 0.0, 0.0], 0.0);
        assert!(mean.abs() < 3.0 * se, "{mean} ± {se}");
        let (mean2, se2) = m.linear([0.0, 1.0, 0.0], 0.0);
        assert!((mean2 - 1.0).abs() < 3.0 * se2, "{mean2} ± {se2}");
    }

    #[test]
    fn conjugacy_first_step_trace_is_exact() {
        let theta = 1.1;
        let cfg = config(6, WalkKind::RosenthalConjugacy, AngleLaw::Fixed { theta }, 1, 1);
        for trial in 0..200 {
            let mut rng = trial_rng(3, trial);
            let x = step(&DMatrix::identity(6, 6), &cfg, &mut rng);
            assert!((x.trace() - (4.0 + 2.0 * theta.cos())).abs() < 1e-13);
        }
    }

    #[test]
    fn step_matrix_matches_conjugation() {
        let mut rng = trial_rng(5, 0);
        let s = StepSample::draw(4, WalkKind::RosenthalConjugacy, &AngleLaw::Fixed { theta: 0.4 }, &mut rng);
        let StepSample::Plane { u, v, theta } = &s else { unreachable!() };
        // complete (u, v) to a basis; S must act as R(θ) on span(u, v) and as I elsewhere
        let m = s.matrix(4);
        let (sn, c) = theta.sin_cos();
        assert!((&m * u - (u * c + v * sn)).norm() < 1e-14);
        assert!((&m * v - (v * c - u * sn)).norm() < 1e-14);
        assert!((m.trace() - (2.0 + 2.0 * c)).abs() < 1e-14);
    }

    #[test]
    fn trajectories_stay_in_so_n() {
        for kind in [WalkKind::RosenthalConjugacy, WalkKind::KacPair] {
            let cfg = config(5, kind, AngleLaw::Uniform, 1000, 1);
            let mut rng = trial_rng(11, 0);
            let mut w = Walker::new(&cfg);
            for _ in 0..1000 {
                w.advance(&mut rng);
                assert!((w.state.determinant() - 1.0).abs() < 1e-9);
            }
            assert!(orthogonality_defect(&w.state) < 1e-9);
        }
    }

    #[test]
    fn reorthonormalize_fixes_drift() {
        let mut rng = trial_rng(9, 0);
        let mut q = haar_rotation(4, &mut rng);
        q[(0, 1)] += 1e-6;
        assert!(orthogonality_defect(&q) > 1e-7);
        reorthonormalize(&mut q);
        assert!(orthogonality_defect(&q) < 1e-14);
        assert!(q.determinant() > 0.0);
    }

    #[test]
    fn kac_one_step_mean_trace() {
        let cfg = config(5, WalkKind::KacPair, AngleLaw::Uniform, 1, 20_000);
        let stats = simulate(&cfg).unwrap();
        let (mean, se) = stats.mean_se(1, TraceStat::Trace);
        assert!((mean - 3.0).abs() < 4.0 * se, "{mean} ± {se}");
    }

    #[test]
    fn simulation_is_reproducible() {
        let cfg = config(4, WalkKind::RosenthalConjugacy, AngleLaw::TruncatedUniform { eps: 0.3 }, 5, 700);
        let a = simulate(&cfg).unwrap();
        let b = simulate(&cfg).unwrap();
        assert_eq!(a, b);
        let c = simulate(&WalkConfig { seed: 8, ..cfg }).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn moments_merge_matches_single_pass() {
        let xs: Vec<[f64; 3]> = (0..100).map(|i| {
            let x = (i as f64 * 0.37).sin();
            [x, x * x, (i as f64).cos()]
        }).collect();
        let mut whole = Moments::default();
        xs.iter().for_each(|&x| whole.push(x));
        let mut a = Moments::default();
        let mut b = Moments::default();
        xs[..37].iter().for_each(|&x| a.push(x));
        xs[37..].iter().for_each(|&x| b.push(x));
        a.merge(&b);
        for i in 0..3 {
            assert!((a.mean[i] - whole.mean[i]).abs() < 1e-12);
            for j in 0..3 {
                assert!((a.comoment[i][j] - whole.comoment[i][j]).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn traceable_labels() {
        let l = |s: &str| s.parse::<OddLabel>().unwrap();
        assert_eq!(Traceable::of(&l("0,1"), 5).unwrap(), Traceable::Standard);
        assert_eq!(Traceable::of(&l("1,1"), 5).unwrap(), Traceable::Exterior);
        assert_eq!(Traceable::of(&l("0,2"), 5).unwrap(), Traceable::SymmetricTraceless);
        assert_eq!(Traceable::of(&l("1"), 3).unwrap(), Traceable::Standard);
        assert_eq!(Traceable::of(&l("2"), 3).unwrap(), Traceable::SymmetricTraceless);
        assert!(Traceable::of(&l("1,2"), 5).is_err());
        assert!(Traceable::of(&l("0,1"), 7).is_err());
    }

    #[test]
    fn budget_and_config_errors() {
        let cfg = config(5, WalkKind::KacPair, AngleLaw::Uniform, 10, 10);
        assert!(matches!(simulate_with_budget(&cfg, 50), Err(Error::Resource(_))));
        assert!(simulate(&WalkConfig { size: 2, ..cfg }).is_err());
        assert!(simulate(&WalkConfig { law: AngleLaw::Fixed { theta: 7.0 }, ..cfg }).is_err());
    }

    #[test]
    fn so3_decay_small_run() {
        let cfg = config(3, WalkKind::RosenthalConjugacy, AngleLaw::Fixed { theta: PI / 3.0 }, 6, 4000);
        let rep = character_decay_check(&cfg, &"1".parse().unwrap()).unwrap();
        assert!((rep.rho - (1.0 + 2.0 * (PI / 3.0).cos()) / 3.0).abs() < 1e-12);
        assert!(rep.max_abs_z <= 4.0, "{rep:?}");
    }
}
