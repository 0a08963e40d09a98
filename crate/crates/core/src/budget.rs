//! Work limits for the exhaustive routines.

use crate::error::{Error, Result};

pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Candidate budget, overridable through the `DDC_BUDGET` environment
/// variable.
pub fn budget() -> u64 {
    std::env::var("DDC_BUDGET")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

/// Counts work units against a limit.
#[derive(Debug, Clone)]
pub struct Meter {
    used: u64,
    limit: u64,
    what: &'static str,
}

impl Meter {
    pub fn new(what: &'static str) -> Self {
        Self::with_limit(what, budget())
    }

    pub fn with_limit(what: &'static str, limit: u64) -> Self {
        Self { used: 0, limit, what }
    }

    pub fn tick(&mut self, units: u64) -> Result<()> {
        self.used = self.used.saturating_add(units);
        if self.used > self.limit {
            return Err(Error::ResourceLimit(format!(
                "{} exceeded the budget of {} candidates (set DDC_BUDGET to raise it)",
                self.what, self.limit
            )));
        }
        Ok(())
    }

    pub fn used(&self) -> u64 {
        self.used
    }
}

/// Binomial coefficient, saturating at `u64::MAX`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}
