//! Closed-form predictions for the two-block model.
//!
//! Falling factorials are accumulated as sums of logarithms so that inputs up
//! to ~10^9 never overflow. Logarithms are natural throughout; in particular
//! the connectivity threshold `log(n)/n` uses `ln`.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TheoryError {
    #[error("n1 * p1 = {0} must exceed 1 for the distance law")]
    InvalidRegime(f64),
    #[error("expected bridge count must be positive (got {0})")]
    NoBridges(f64),
    #[error("path length {l} outside 1..={n}")]
    LengthOutOfRange { l: u64, n: u64 },
}

/// Ratio pair `(exact, approx)` returned by the approximation helpers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Approximation {
    pub exact: f64,
    pub approx: f64,
}

impl Approximation {
    pub fn ratio(&self) -> f64 {
        self.exact / self.approx
    }
}

/// `ln(n (n-1) ... (n-l+1))`.
fn ln_falling(n: u64, l: u64) -> f64 {
    (0..l).map(|i| ((n - i) as f64).ln()).sum()
}

/// `n!/(n-l)!` against `n^l`.
pub fn stirling_ratio_approx(n: u64, l: u64) -> Result<Approximation, TheoryError> {
    if l > n {
        return Err(TheoryError::LengthOutOfRange { l, n });
    }
    let ln_exact = ln_falling(n, l);
    let ln_approx = l as f64 * (n as f64).ln();
    Ok(Approximation {
        exact: ln_exact.exp(),
        approx: ln_approx.exp(),
    })
}

/// `exact / approx` for [`stirling_ratio_approx`], evaluated in log space so
/// it stays finite when both terms overflow.
pub fn stirling_ratio(n: u64, l: u64) -> Result<f64, TheoryError> {
    if l > n {
        return Err(TheoryError::LengthOutOfRange { l, n });
    }
    Ok((0..l).map(|i| (1.0 - i as f64 / n as f64).ln()).sum::<f64>().exp())
}

/// Number of candidate entry paths of length `l` from a fixed BC source:
/// exact `n2 (n1-1)!/(n1-l)!` and approximate `n2 n1^(l-1)`.
pub fn m_l(n1: u64, n2: u64, l: u64) -> Result<Approximation, TheoryError> {
    if l == 0 || l > n1 {
        return Err(TheoryError::LengthOutOfRange { l, n: n1 });
    }
    let ln_n2 = (n2 as f64).ln();
    Ok(Approximation {
        exact: (ln_n2 + ln_falling(n1 - 1, l - 1)).exp(),
        approx: (ln_n2 + (l - 1) as f64 * (n1 as f64).ln()).exp(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TheoryInputs {
    pub n1: u64,
    pub n2: u64,
    pub p1: f64,
    /// Bridging probability `b`; `x = n1 n2 b`.
    pub b: f64,
}

impl TheoryInputs {
    pub fn with_prob(n1: u64, n2: u64, p1: f64, b: f64) -> Self {
        TheoryInputs { n1, n2, p1, b }
    }

    pub fn with_count(n1: u64, n2: u64, p1: f64, x: f64) -> Self {
        TheoryInputs {
            n1,
            n2,
            p1,
            b: x / (n1 as f64 * n2 as f64),
        }
    }

    pub fn expected_bridges(&self) -> f64 {
        self.n1 as f64 * self.n2 as f64 * self.b
    }

    pub fn mean_degree(&self) -> f64 {
        self.n1 as f64 * self.p1
    }
}

/// `E[X_l]`: exact `M_l p1^(l-1) b` and approximate `(n2 b)(n1 p1)^(l-1)`.
///
/// Both are evaluated as one sum of logarithms, so a vanishing probability
/// yields zero instead of `inf * 0`.
pub fn expected_entry_paths(inputs: &TheoryInputs, l: u64) -> Result<Approximation, TheoryError> {
    if l == 0 || l > inputs.n1 {
        return Err(TheoryError::LengthOutOfRange { l, n: inputs.n1 });
    }
    let TheoryInputs { n1, n2, p1, b } = *inputs;
    if b == 0.0 || n2 == 0 || (l > 1 && p1 == 0.0) {
        return Ok(Approximation {
            exact: 0.0,
            approx: 0.0,
        });
    }
    let k = (l - 1) as f64;
    // p1^0 = 1 even when p1 = 0.
    let ln_p1_term = if l == 1 { 0.0 } else { k * p1.ln() };
    let ln_common = (n2 as f64).ln() + b.ln() + ln_p1_term;
    Ok(Approximation {
        exact: (ln_common + ln_falling(n1 - 1, l - 1)).exp(),
        approx: (ln_common + k * (n1 as f64).ln()).exp(),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoryReport {
    pub inputs: TheoryInputs,
    pub expected_bridges: f64,
    pub d0: f64,
    pub predicted_dstar: f64,
    /// `l -> E[X_l]` for `l = 1..=ceil(d0)+1`, capped at `n1`.
    pub expected_xl: BTreeMap<u64, Approximation>,
    pub m_l: BTreeMap<u64, Approximation>,
    pub connectivity_threshold_p0: f64,
    /// `x >= n1`: the law predicts `d* <= 1`.
    pub saturated: bool,
    /// `n2 b >= 1`: outside the sparse-bridge regime.
    pub dense_bridges: bool,
}

/// Predicted social distance `d0 + 1` with
/// `d0 = (ln n1 - ln x) / ln(n1 p1)`.
pub fn social_distance_law(inputs: &TheoryInputs) -> Result<TheoryReport, TheoryError> {
    let c = inputs.mean_degree();
    if c.is_nan() || c <= 1.0 {
        return Err(TheoryError::InvalidRegime(c));
    }
    let x = inputs.expected_bridges();
    if x.is_nan() || x <= 0.0 {
        return Err(TheoryError::NoBridges(x));
    }
    // Difference of logs, not ln(n1/x): ln(1000)/ln(10) rounds below 3.
    let d0 = ((inputs.n1 as f64).ln() - x.ln()) / c.ln();

    let top = if d0.is_finite() {
        (d0.ceil().max(0.0) as u64 + 1).min(inputs.n1)
    } else {
        1
    };
    let mut expected_xl = BTreeMap::new();
    let mut ml = BTreeMap::new();
    for l in 1..=top {
        expected_xl.insert(l, expected_entry_paths(inputs, l)?);
        ml.insert(l, m_l(inputs.n1, inputs.n2, l)?);
    }
    Ok(TheoryReport {
        inputs: *inputs,
        expected_bridges: x,
        d0,
        predicted_dstar: d0 + 1.0,
        expected_xl,
        m_l: ml,
        connectivity_threshold_p0: connectivity_threshold(inputs.n1.max(2)),
        saturated: x >= inputs.n1 as f64,
        dense_bridges: inputs.n2 as f64 * inputs.b >= 1.0,
    })
}

/// `ln(n)/n`.
pub fn connectivity_threshold(n: u64) -> f64 {
    (n as f64).ln() / n as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn falling_factorial_edges() {
        let a = stirling_ratio_approx(17, 0).unwrap();
        assert_eq!((a.exact, a.approx), (1.0, 1.0));
        let a = stirling_ratio_approx(17, 1).unwrap();
        assert!((a.exact - 17.0).abs() < 1e-12 && (a.approx - 17.0).abs() < 1e-12);
        assert!(stirling_ratio_approx(3, 4).is_err());
        let r = stirling_ratio(1_000_000, 10).unwrap();
        assert!((0.9999..=1.0).contains(&r), "{r}");
    }

    #[test]
    fn candidate_path_counts() {
        let m = m_l(7, 3, 1).unwrap();
        assert!((m.exact - 3.0).abs() < 1e-12 && (m.approx - 3.0).abs() < 1e-12);
        assert!((m_l(4, 2, 2).unwrap().exact - 6.0).abs() < 1e-12);
        let r = m_l(10_000, 1_000, 3).unwrap().ratio();
        assert!((0.999..=1.0).contains(&r), "{r}");
        assert!(m_l(4, 2, 0).is_err());
        assert!(m_l(4, 2, 5).is_err());
    }

    #[test]
    fn expected_paths() {
        let i = TheoryInputs::with_prob(5, 3, 0.5, 0.2);
        assert!((expected_entry_paths(&i, 1).unwrap().exact - 0.6).abs() < 1e-12);
        assert!((expected_entry_paths(&i, 3).unwrap().exact - 1.8).abs() < 1e-12);
        let i = TheoryInputs::with_prob(10_000, 1_000, 1e-3, 1e-4);
        assert!((expected_entry_paths(&i, 2).unwrap().approx - 1.0).abs() < 1e-12);
    }

    #[test]
    fn distance_law_worked_values() {
        let at = |x: f64| {
            social_distance_law(&TheoryInputs::with_count(10_000, 1_000, 1e-3, x))
                .unwrap()
                .predicted_dstar
        };
        assert_eq!(at(1.0), 5.0);
        assert_eq!(at(10.0), 4.0);
        assert_eq!(at(100.0), 3.0);

        let r = social_distance_law(&TheoryInputs::with_prob(10_000, 1_000, 1e-3, 1e-4)).unwrap();
        assert!((r.d0 - 1.0).abs() < 1e-12);
        assert_eq!(r.predicted_dstar, r.d0 + 1.0);
        assert!(!r.saturated && !r.dense_bridges);
    }

    #[test]
    fn distance_law_fractional_powers() {
        let (n1, p1) = (4096u64, 16.0 / 4096.0);
        let base = (n1 as f64).ln() / (n1 as f64 * p1).ln();
        let law = |x: f64| {
            social_distance_law(&TheoryInputs::with_count(n1, 50, p1, x))
                .unwrap()
                .predicted_dstar
        };
        assert!((law(1.0) - (base + 1.0)).abs() < 1e-12);
        assert!((law((n1 as f64).powf(0.25)) - (0.75 * base + 1.0)).abs() < 1e-12);
        assert!((law((n1 as f64).powf(0.5)) - (0.5 * base + 1.0)).abs() < 1e-12);
    }

    #[test]
    fn distance_law_errors_and_flags() {
        assert!(matches!(
            social_distance_law(&TheoryInputs::with_prob(100, 10, 0.01, 0.001)),
            Err(TheoryError::InvalidRegime(_))
        ));
        assert!(matches!(
            social_distance_law(&TheoryInputs::with_prob(100, 10, 0.1, 0.0)),
            Err(TheoryError::NoBridges(_))
        ));
        let r = social_distance_law(&TheoryInputs::with_count(100, 10, 0.1, 200.0)).unwrap();
        assert!(r.saturated);
        assert!(r.dense_bridges);
    }

    #[test]
    fn threshold() {
        assert!((connectivity_threshold(8) - 0.259_930_8).abs() < 1e-6);
        assert!((connectivity_threshold(1000) - 0.006_907_76).abs() < 1e-8);
        for n in 3..2000 {
            assert!(connectivity_threshold(n + 1) < connectivity_threshold(n));
        }
    }
}
