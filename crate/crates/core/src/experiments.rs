//! Monte Carlo harness.
//!
//! Every trial draws its graph from a seed derived from the master seed,
//! the sweep point and the trial index, so trials can run in any order or
//! in parallel and still reproduce. Per-trial results are collected in trial
//! order and reduced with sorted sums, which makes every aggregate
//! independent of execution order.

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::generators::{gen_er_block, gen_model_on, BridgeSpec, GenError, ModelParams, Substrate};
use crate::graph::{CommunityGraph, Community, NodeId};
use crate::metrics::{count_entry_paths, social_distances, MetricsError, DEFAULT_EXPANSION_BUDGET};
use crate::rng::{derive_seed, substream, STREAM_SOURCE};
use crate::theory::{social_distance_law, TheoryError, TheoryInputs};
use crate::tolerances::{MAX_MONOTONE_VIOLATIONS, MAX_UNREACHABLE_FRACTION, RESAMPLE_ATTEMPTS};

pub const SWEEP_CSV_HEADER: &str = "x,mean_dstar,std_dstar,analytic_dstar,unreachable_frac,cumulative_capital";

#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("no graph with connected blocks after {attempts} draws (x = {x}, trial {trial})")]
    ResampleExhausted { x: u64, trial: usize, attempts: u32 },
    #[error(transparent)]
    Gen(#[from] GenError),
    #[error(transparent)]
    Metrics(#[from] MetricsError),
    #[error(transparent)]
    Theory(#[from] TheoryError),
    #[error("io error: {0}")]
    Io(#[from] io::Error),
    #[error("config json: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConnectivityPolicy {
    /// Redraw until both blocks are connected.
    Resample,
    /// Keep every draw and count the disconnected ones.
    #[default]
    Record,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub n1: usize,
    pub p1: f64,
    pub n2: usize,
    pub p2: f64,
    #[serde(default)]
    pub substrate: Substrate,
    pub x_values: Vec<u64>,
    pub trials: usize,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub connectivity_policy: ConnectivityPolicy,
}

impl SweepConfig {
    pub fn from_json(s: &str) -> Result<Self, ExperimentError> {
        let cfg: SweepConfig = serde_json::from_str(s)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_path<P: AsRef<Path>>(path: P) -> Result<Self, ExperimentError> {
        Self::from_json(&fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<(), ExperimentError> {
        let bad = |m: String| Err(ExperimentError::InvalidConfig(m));
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if self.x_values.windows(2).any(|w| w[0] >= w[1]) {
            return bad("x_values must be distinct and ascending".into());
        }
        let capacity = self.n1 as u64 * self.n2 as u64;
        if let Some(&x) = self.x_values.iter().find(|&&x| x > capacity) {
            return bad(format!("x = {x} exceeds n1 * n2 = {capacity}"));
        }
        for (name, p) in [("p1", self.p1), ("p2", self.p2)] {
            if !(0.0..=1.0).contains(&p) {
                return bad(format!("{name} = {p} is not a probability"));
            }
        }
        Ok(())
    }

    /// Grid used for the ER against scale-free comparison.
    pub fn default_comparison() -> Self {
        SweepConfig {
            n1: 2000,
            p1: 0.005,
            n2: 500,
            p2: 0.02,
            substrate: Substrate::Er,
            x_values: vec![1, 3, 10, 30, 100, 300, 1000],
            trials: 30,
            seed: 0,
            connectivity_policy: ConnectivityPolicy::Record,
        }
    }

    fn model(&self, x: u64, seed: u64) -> ModelParams {
        ModelParams {
            n1: self.n1,
            p1: self.p1,
            n2: self.n2,
            p2: self.p2,
            bridges: BridgeSpec::Count(x),
            seed,
        }
    }

    /// `d0 + 1` at bridge count `x`, when the law applies.
    pub fn analytic_dstar(&self, x: u64) -> Option<f64> {
        let inputs = TheoryInputs::with_count(self.n1 as u64, self.n2 as u64, self.p1, x as f64);
        social_distance_law(&inputs).ok().map(|r| r.predicted_dstar)
    }
}

/// Measurements from one generated graph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialOutcome {
    pub mean_dstar: Option<f64>,
    pub unreachable_fraction: f64,
    pub cumulative_capital: f64,
    pub blocks_connected: bool,
}

impl TrialOutcome {
    pub fn counts_toward_mean(&self) -> bool {
        self.mean_dstar.is_some() && self.unreachable_fraction <= MAX_UNREACHABLE_FRACTION
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub x: u64,
    /// Mean of per-trial mean `d*` over trials that count toward the mean;
    /// NaN when none do.
    pub mean_dstar: f64,
    /// Sample standard deviation of the per-trial means.
    pub std_dstar: f64,
    pub analytic_dstar: Option<f64>,
    pub unreachable_frac: f64,
    pub cumulative_capital: f64,
    pub trials: usize,
    pub excluded_trials: usize,
    pub disconnected_trials: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepResult {
    pub config: SweepConfig,
    pub rows: Vec<SweepRow>,
}

impl SweepResult {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        writeln!(out, "{SWEEP_CSV_HEADER}").unwrap();
        for r in &self.rows {
            writeln!(
                out,
                "{},{},{},{},{},{}",
                r.x,
                fmt_f64(r.mean_dstar),
                fmt_f64(r.std_dstar),
                fmt_f64(r.analytic_dstar.unwrap_or(f64::NAN)),
                fmt_f64(r.unreachable_frac),
                fmt_f64(r.cumulative_capital),
            )
            .unwrap();
        }
        out
    }

    /// Number of steps where the empirical mean `d*` rises.
    pub fn monotone_violations(&self) -> usize {
        let means: Vec<f64> = self
            .rows
            .iter()
            .map(|r| r.mean_dstar)
            .filter(|m| m.is_finite())
            .collect();
        means.windows(2).filter(|w| w[1] > w[0]).count()
    }

    pub fn is_non_increasing(&self) -> bool {
        self.monotone_violations() <= MAX_MONOTONE_VIOLATIONS
    }
}

pub(crate) fn fmt_f64(v: f64) -> String {
    if v.is_nan() {
        "nan".to_string()
    } else {
        format!("{v:.6}")
    }
}

/// Sum after sorting, so the result does not depend on input order.
fn ordered_sum(values: &mut [f64]) -> f64 {
    values.sort_by(f64::total_cmp);
    values.iter().sum()
}

fn mean_and_std(mut values: Vec<f64>) -> (f64, f64) {
    let n = values.len();
    if n == 0 {
        return (f64::NAN, f64::NAN);
    }
    let mean = ordered_sum(&mut values) / n as f64;
    if n == 1 {
        return (mean, 0.0);
    }
    let mut sq: Vec<f64> = values.iter().map(|v| (v - mean) * (v - mean)).collect();
    (mean, (ordered_sum(&mut sq) / (n - 1) as f64).sqrt())
}

/// Reduces trial outcomes for one sweep point.
pub fn aggregate(x: u64, analytic_dstar: Option<f64>, outcomes: &[TrialOutcome]) -> SweepRow {
    let included: Vec<f64> = outcomes
        .iter()
        .filter(|o| o.counts_toward_mean())
        .filter_map(|o| o.mean_dstar)
        .collect();
    let excluded_trials = outcomes.len() - included.len();
    let (mean_dstar, std_dstar) = mean_and_std(included);
    let n = outcomes.len().max(1) as f64;
    let mut unreachable: Vec<f64> = outcomes.iter().map(|o| o.unreachable_fraction).collect();
    let mut capital: Vec<f64> = outcomes.iter().map(|o| o.cumulative_capital).collect();
    SweepRow {
        x,
        mean_dstar,
        std_dstar,
        analytic_dstar,
        unreachable_frac: ordered_sum(&mut unreachable) / n,
        cumulative_capital: ordered_sum(&mut capital) / n,
        trials: outcomes.len(),
        excluded_trials,
        disconnected_trials: outcomes.iter().filter(|o| !o.blocks_connected).count(),
    }
}

/// Draws and measures the graph for trial `trial` at sweep point `point`.
pub fn run_trial(
    config: &SweepConfig,
    point: usize,
    x: u64,
    trial: usize,
) -> Result<TrialOutcome, ExperimentError> {
    for attempt in 0..RESAMPLE_ATTEMPTS {
        let seed = derive_seed(config.seed, &[point as u64, trial as u64, attempt as u64]);
        let g = gen_model_on(&config.model(x, seed), config.substrate)?;
        let blocks_connected =
            g.is_block_connected(Community::Bc) && g.is_block_connected(Community::Fc);
        if !blocks_connected && config.connectivity_policy == ConnectivityPolicy::Resample {
            continue;
        }
        let report = social_distances(&g)?;
        return Ok(TrialOutcome {
            mean_dstar: report.mean_dstar,
            unreachable_fraction: report.unreachable_fraction(),
            cumulative_capital: report.cumulative_capital,
            blocks_connected,
        });
    }
    Err(ExperimentError::ResampleExhausted {
        x,
        trial,
        attempts: RESAMPLE_ATTEMPTS,
    })
}

/// Mean social distance against bridge count.
///
/// Runs on the current rayon pool; wrap in `ThreadPool::install` to pick the
/// thread count.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepResult, ExperimentError> {
    config.validate()?;
    let mut rows = Vec::with_capacity(config.x_values.len());
    for (point, &x) in config.x_values.iter().enumerate() {
        let outcomes = (0..config.trials)
            .into_par_iter()
            .map(|trial| run_trial(config, point, x, trial))
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(aggregate(x, config.analytic_dstar(x), &outcomes));
    }
    Ok(SweepResult {
        config: config.clone(),
        rows,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConcentrationConfig {
    pub n1: usize,
    pub p1: f64,
    pub n2: usize,
    pub p2: f64,
    pub b: f64,
    pub trials: usize,
    pub seed: u64,
    /// Longest entry path enumerated; `ceil(d0) + 1` when unset.
    pub max_length: Option<u32>,
    pub budget: u64,
}

impl ConcentrationConfig {
    pub fn new(n1: usize, p1: f64, n2: usize, b: f64, trials: usize, seed: u64) -> Self {
        ConcentrationConfig {
            n1,
            p1,
            n2,
            p2: 0.0,
            b,
            trials,
            seed,
            max_length: None,
            budget: DEFAULT_EXPANSION_BUDGET,
        }
    }

    pub fn theory_inputs(&self) -> TheoryInputs {
        TheoryInputs::with_prob(self.n1 as u64, self.n2 as u64, self.p1, self.b)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LengthStats {
    pub length: u32,
    /// Fraction of trials with `X_l >= 1`.
    pub fraction_nonzero: f64,
    pub mean: f64,
    /// Unbiased sample variance.
    pub variance: f64,
    /// Standard error of `mean`.
    pub std_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConcentrationResult {
    pub d0: Option<f64>,
    pub max_length: u32,
    pub trials: usize,
    /// Indexed by `length - 1`.
    pub per_length: Vec<LengthStats>,
    /// Fraction of trials whose shortest entry path is at most `max_length`.
    pub fraction_within: f64,
}

impl ConcentrationResult {
    pub fn at(&self, length: u32) -> Option<&LengthStats> {
        self.per_length.get(length.checked_sub(1)? as usize)
    }
}

/// Entry path counts from a uniformly chosen BC source over many draws.
pub fn run_concentration(config: &ConcentrationConfig) -> Result<ConcentrationResult, ExperimentError> {
    if config.trials == 0 || config.n1 == 0 {
        return Err(ExperimentError::InvalidConfig(
            "concentration needs trials >= 1 and n1 >= 1".into(),
        ));
    }
    let d0 = social_distance_law(&config.theory_inputs()).ok().map(|r| r.d0);
    let max_length = match (config.max_length, d0) {
        (Some(l), _) => l,
        (None, Some(d0)) if d0.is_finite() => (d0.ceil().max(0.0) as u32 + 1).min(config.n1 as u32),
        (None, _) => {
            return Err(ExperimentError::InvalidConfig(
                "max_length must be given when the distance law does not apply".into(),
            ))
        }
    };

    let counts = (0..config.trials)
        .into_par_iter()
        .map(|trial| -> Result<Vec<u64>, ExperimentError> {
            let seed = derive_seed(config.seed, &[trial as u64]);
            let params = ModelParams {
                n1: config.n1,
                p1: config.p1,
                n2: config.n2,
                p2: config.p2,
                bridges: BridgeSpec::Prob(config.b),
                seed,
            };
            let g = gen_model_on(&params, Substrate::Er)?;
            let source = substream(seed, &[STREAM_SOURCE]).random_range(0..config.n1 as u32);
            Ok(count_entry_paths(&g, NodeId(source), max_length, config.budget)?.counts)
        })
        .collect::<Result<Vec<_>, _>>()?;

    let trials = config.trials as f64;
    let per_length = (0..max_length as usize)
        .map(|i| {
            // Integer moments: exact, hence order independent.
            let (sum, sum_sq, nonzero) = counts.iter().fold((0u128, 0u128, 0usize), |acc, c| {
                let v = c[i] as u128;
                (acc.0 + v, acc.1 + v * v, acc.2 + (v > 0) as usize)
            });
            let mean = sum as f64 / trials;
            let variance = if config.trials > 1 {
                let n = config.trials as f64;
                ((sum_sq as f64) - (sum as f64) * (sum as f64) / n) / (n - 1.0)
            } else {
                0.0
            };
            LengthStats {
                length: i as u32 + 1,
                fraction_nonzero: nonzero as f64 / trials,
                mean,
                variance,
                std_error: (variance / trials).sqrt(),
            }
        })
        .collect();
    let within = counts.iter().filter(|c| c.iter().any(|&v| v > 0)).count();
    Ok(ConcentrationResult {
        d0,
        max_length,
        trials: config.trials,
        per_length,
        fraction_within: within as f64 / trials,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransitionRow {
    pub multiplier: f64,
    pub p: f64,
    pub connected_fraction: f64,
}

/// Connected fraction of `G(n, c ln(n)/n)` for each multiplier `c`.
pub fn run_connectivity_transition(
    n: usize,
    multipliers: &[f64],
    trials: usize,
    seed: u64,
) -> Result<Vec<TransitionRow>, ExperimentError> {
    if n < 100 || trials == 0 {
        return Err(ExperimentError::InvalidConfig(
            "connectivity transition needs n >= 100 and trials >= 1".into(),
        ));
    }
    let threshold = (n as f64).ln() / n as f64;
    multipliers
        .iter()
        .enumerate()
        .map(|(point, &c)| {
            if c.is_nan() || c < 0.0 {
                return Err(ExperimentError::InvalidConfig(format!("multiplier {c} is negative")));
            }
            let p = (c * threshold).min(1.0);
            let connected = (0..trials)
                .into_par_iter()
                .map(|trial| -> Result<bool, ExperimentError> {
                    let mut rng = substream(seed, &[point as u64, trial as u64]);
                    let g = CommunityGraph::build(n, 0, gen_er_block(n, p, &mut rng)?)
                        .map_err(GenError::from)?;
                    Ok(g.is_connected(None).map_err(GenError::from)?)
                })
                .collect::<Result<Vec<_>, _>>()?
                .into_iter()
                .filter(|&c| c)
                .count();
            Ok(TransitionRow {
                multiplier: c,
                p,
                connected_fraction: connected as f64 / trials as f64,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonResult {
    pub er: SweepResult,
    pub scale_free: SweepResult,
    /// Largest `|mean d*_ER - mean d*_SF|` over points where both are defined.
    pub max_divergence: f64,
    pub er_non_increasing: bool,
    pub scale_free_non_increasing: bool,
}

/// Runs the same sweep on ER and on preferential-attachment blocks of equal
/// order and matched expected size.
pub fn run_substrate_comparison(base: &SweepConfig) -> Result<ComparisonResult, ExperimentError> {
    let er = run_sweep(&SweepConfig {
        substrate: Substrate::Er,
        ..base.clone()
    })?;
    let scale_free = run_sweep(&SweepConfig {
        substrate: Substrate::ScaleFree,
        ..base.clone()
    })?;
    let max_divergence = er
        .rows
        .iter()
        .zip(&scale_free.rows)
        .map(|(a, b)| (a.mean_dstar - b.mean_dstar).abs())
        .filter(|d| d.is_finite())
        .fold(0.0, f64::max);
    Ok(ComparisonResult {
        er_non_increasing: er.is_non_increasing(),
        scale_free_non_increasing: scale_free.is_non_increasing(),
        er,
        scale_free,
        max_divergence,
    })
}
