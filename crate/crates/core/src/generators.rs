//! Random construction of community graphs.
//!
//! The base model is two Erdős–Rényi blocks joined by Bernoulli bridges.
//! A fixed-count bridge sampler and a preferential-attachment substrate are
//! provided for sweeps and for comparing substrates.

use rand::seq::index;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{CommunityGraph, GraphError};
use crate::rng::{self, STREAM_BLOCK1, STREAM_BLOCK2, STREAM_BRIDGES};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("{name} = {value} is not a probability in [0, 1]")]
    InvalidProbability { name: &'static str, value: f64 },
    #[error("{requested} bridges requested but only {capacity} cross pairs exist")]
    CountExceedsCapacity { requested: u64, capacity: u64 },
    #[error("preferential attachment needs 1 <= m < n (got n = {n}, m = {m})")]
    InvalidAttachment { n: usize, m: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// How bridges are placed between the two blocks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BridgeSpec {
    /// Each of the `n1 * n2` cross pairs independently with probability `b`.
    Prob(f64),
    /// Exactly this many distinct cross pairs, uniformly at random.
    Count(u64),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub n1: usize,
    pub p1: f64,
    pub n2: usize,
    pub p2: f64,
    pub bridges: BridgeSpec,
    pub seed: u64,
}

impl ModelParams {
    pub fn validate(&self) -> Result<(), GenError> {
        check_prob("p1", self.p1)?;
        check_prob("p2", self.p2)?;
        match self.bridges {
            BridgeSpec::Prob(b) => check_prob("b", b),
            BridgeSpec::Count(x) => {
                let capacity = cross_pairs(self.n1, self.n2);
                if x > capacity {
                    Err(GenError::CountExceedsCapacity {
                        requested: x,
                        capacity,
                    })
                } else {
                    Ok(())
                }
            }
        }
    }

    /// Bridging probability, exact for [`BridgeSpec::Prob`] and `x / (n1 n2)`
    /// for a fixed count.
    pub fn bridge_prob(&self) -> f64 {
        match self.bridges {
            BridgeSpec::Prob(b) => b,
            BridgeSpec::Count(x) => {
                let c = cross_pairs(self.n1, self.n2);
                if c == 0 {
                    0.0
                } else {
                    x as f64 / c as f64
                }
            }
        }
    }

    /// Expected bridge count `x = n1 n2 b`.
    pub fn expected_bridges(&self) -> f64 {
        match self.bridges {
            BridgeSpec::Prob(b) => self.n1 as f64 * self.n2 as f64 * b,
            BridgeSpec::Count(x) => x as f64,
        }
    }

    /// Set when `b >= 1/n2`: each BC node expects at least one bridge.
    pub fn outside_sparse_regime(&self) -> bool {
        self.n2 > 0 && self.bridge_prob() * self.n2 as f64 >= 1.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScaleFreeParams {
    pub n: usize,
    pub m: usize,
}

/// Substrate used for the two blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum Substrate {
    #[default]
    #[serde(rename = "er")]
    Er,
    /// Preferential attachment with `m = round(n p / 2)` so the edge count
    /// matches the expected edge count of `G(n, p)`.
    #[serde(rename = "sf")]
    ScaleFree,
}

fn check_prob(name: &'static str, value: f64) -> Result<(), GenError> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(GenError::InvalidProbability { name, value })
    }
}

fn cross_pairs(n1: usize, n2: usize) -> u64 {
    n1 as u64 * n2 as u64
}

/// Number of failures before the next success in Bernoulli(p) trials.
#[inline]
fn geometric_skip<R: Rng + ?Sized>(rng: &mut R, log_q: f64) -> f64 {
    let r: f64 = rng.random();
    ((1.0 - r).ln() / log_q).floor()
}

/// `G(n, p)` on local indices `0..n`.
///
/// Uses geometric skipping over the lower triangle, so the cost is linear
/// in `n` plus the number of edges produced.
pub fn gen_er_block<R: Rng + ?Sized>(
    n: usize,
    p: f64,
    rng: &mut R,
) -> Result<Vec<(u32, u32)>, GenError> {
    check_prob("p", p)?;
    let mut edges = Vec::new();
    if n < 2 || p == 0.0 {
        return Ok(edges);
    }
    if p == 1.0 {
        for v in 1..n as u32 {
            edges.extend((0..v).map(|w| (w, v)));
        }
        return Ok(edges);
    }
    let log_q = (1.0 - p).ln();
    edges.reserve((p * (n as f64) * (n as f64 - 1.0) / 2.0) as usize);
    let mut v: u64 = 1;
    let mut w: f64 = -1.0;
    let n = n as u64;
    while v < n {
        w += 1.0 + geometric_skip(rng, log_q);
        while w >= v as f64 && v < n {
            w -= v as f64;
            v += 1;
        }
        if v < n {
            edges.push((w as u32, v as u32));
        }
    }
    Ok(edges)
}

/// Bernoulli bridges over all `n1 * n2` cross pairs, in global indices.
pub fn gen_bridges_prob<R: Rng + ?Sized>(
    n1: usize,
    n2: usize,
    b: f64,
    rng: &mut R,
) -> Result<Vec<(u32, u32)>, GenError> {
    check_prob("b", b)?;
    let total = cross_pairs(n1, n2);
    let mut edges = Vec::new();
    if total == 0 || b == 0.0 {
        return Ok(edges);
    }
    if b == 1.0 {
        return Ok((0..total).map(|k| cross_pair(n1, n2, k)).collect());
    }
    let log_q = (1.0 - b).ln();
    let mut k: f64 = -1.0;
    loop {
        k += 1.0 + geometric_skip(rng, log_q);
        if k >= total as f64 {
            break;
        }
        edges.push(cross_pair(n1, n2, k as u64));
    }
    Ok(edges)
}

/// Exactly `x` distinct cross pairs sampled without replacement.
pub fn gen_bridges_count<R: Rng + ?Sized>(
    n1: usize,
    n2: usize,
    x: u64,
    rng: &mut R,
) -> Result<Vec<(u32, u32)>, GenError> {
    let total = cross_pairs(n1, n2);
    if x > total {
        return Err(GenError::CountExceedsCapacity {
            requested: x,
            capacity: total,
        });
    }
    if x == total {
        return Ok((0..total).map(|k| cross_pair(n1, n2, k)).collect());
    }
    let mut picks: Vec<usize> = index::sample(rng, total as usize, x as usize).into_vec();
    picks.sort_unstable();
    Ok(picks
        .into_iter()
        .map(|k| cross_pair(n1, n2, k as u64))
        .collect())
}

#[inline]
fn cross_pair(n1: usize, n2: usize, k: u64) -> (u32, u32) {
    let n2 = n2 as u64;
    ((k / n2) as u32, (n1 as u64 + k % n2) as u32)
}

/// Preferential attachment on local indices `0..n`.
///
/// Starts from a clique on `m + 1` nodes; every later node attaches to `m`
/// distinct existing nodes drawn with probability proportional to degree.
pub fn gen_scale_free<R: Rng + ?Sized>(
    params: ScaleFreeParams,
    rng: &mut R,
) -> Result<Vec<(u32, u32)>, GenError> {
    let ScaleFreeParams { n, m } = params;
    if m == 0 || m >= n {
        return Err(GenError::InvalidAttachment { n, m });
    }
    let mut edges = Vec::with_capacity(m * (m + 1) / 2 + (n - m - 1) * m);
    // Each node appears here once per incident edge.
    let mut endpoints: Vec<u32> = Vec::with_capacity(2 * edges.capacity());
    for v in 1..=m as u32 {
        for w in 0..v {
            edges.push((w, v));
            endpoints.push(w);
            endpoints.push(v);
        }
    }
    let mut targets: Vec<u32> = Vec::with_capacity(m);
    for t in (m + 1) as u32..n as u32 {
        targets.clear();
        while targets.len() < m {
            let pick = endpoints[rng.random_range(0..endpoints.len())];
            if !targets.contains(&pick) {
                targets.push(pick);
            }
        }
        for &w in &targets {
            edges.push((w, t));
            endpoints.push(w);
            endpoints.push(t);
        }
    }
    Ok(edges)
}

/// Attachment count whose edge total matches `G(n, p)` in expectation,
/// clamped to `1..n`.
pub fn matched_attachment(n: usize, p: f64) -> usize {
    let m = (n as f64 * p / 2.0).round() as usize;
    m.clamp(1, n.saturating_sub(1).max(1))
}

/// Erdős–Rényi blocks joined by bridges, deterministic in `params.seed`.
pub fn gen_model(params: &ModelParams) -> Result<CommunityGraph, GenError> {
    gen_model_on(params, Substrate::Er)
}

pub fn gen_model_on(params: &ModelParams, substrate: Substrate) -> Result<CommunityGraph, GenError> {
    params.validate()?;
    let ModelParams { n1, p1, n2, p2, .. } = *params;
    let mut edges = block(n1, p1, substrate, &mut rng::substream(params.seed, &[STREAM_BLOCK1]))?;
    let offset = n1 as u32;
    edges.extend(
        block(n2, p2, substrate, &mut rng::substream(params.seed, &[STREAM_BLOCK2]))?
            .into_iter()
            .map(|(u, v)| (u + offset, v + offset)),
    );
    let mut brng = rng::substream(params.seed, &[STREAM_BRIDGES]);
    edges.extend(match params.bridges {
        BridgeSpec::Prob(b) => gen_bridges_prob(n1, n2, b, &mut brng)?,
        BridgeSpec::Count(x) => gen_bridges_count(n1, n2, x, &mut brng)?,
    });
    Ok(CommunityGraph::build(n1, n2, edges)?)
}

fn block<R: Rng + ?Sized>(
    n: usize,
    p: f64,
    substrate: Substrate,
    rng: &mut R,
) -> Result<Vec<(u32, u32)>, GenError> {
    match substrate {
        Substrate::Er => gen_er_block(n, p, rng),
        Substrate::ScaleFree if n < 2 => Ok(Vec::new()),
        Substrate::ScaleFree => gen_scale_free(
            ScaleFreeParams {
                n,
                m: matched_attachment(n, p),
            },
            rng,
        ),
    }
}
