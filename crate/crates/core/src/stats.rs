//! Binomial point estimates with Wilson score intervals.

use serde::Serialize;

/// Two-sided 95% normal quantile.
pub const Z95: f64 = 1.959_963_984_540_054;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EstimateWithCI {
    pub successes: u64,
    pub trials: u64,
    pub estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

impl EstimateWithCI {
    /// Wilson 95% interval for `successes` out of `trials` (`trials >= 1`).
    pub fn wilson(successes: u64, trials: u64) -> Self {
        assert!(trials > 0 && successes <= trials);
        let t = trials as f64;
        let p = successes as f64 / t;
        let z2 = Z95 * Z95;
        let denom = 1.0 + z2 / t;
        let centre = (p + z2 / (2.0 * t)) / denom;
        let half = Z95 * (p * (1.0 - p) / t + z2 / (4.0 * t * t)).sqrt() / denom;
        Self {
            successes,
            trials,
            estimate: p,
            ci_low: (centre - half).clamp(0.0, p),
            ci_high: (centre + half).clamp(p, 1.0),
        }
    }

    pub fn contains(&self, p: f64) -> bool {
        self.ci_low <= p && p <= self.ci_high
    }

    /// Standard error of the point estimate.
    pub fn sigma(&self) -> f64 {
        (self.estimate * (1.0 - self.estimate) / self.trials as f64).sqrt()
    }
}
