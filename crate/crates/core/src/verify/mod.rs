//! Cross-checks behind `strict-dpp verify`: every check recomputes a
//! quantity by two independent routes (or against an exact identity) and
//! reports the measured residuals next to their thresholds.

mod criteria;

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::{Error, Result};

pub use criteria::CRITERIA;

/// Groups of checks that can be run on their own.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Measures,
    Kernels,
    Limits,
    Sampling,
    Specfun,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Measures, Suite::Kernels, Suite::Limits, Suite::Sampling, Suite::Specfun];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Measures => "measures",
            Suite::Kernels => "kernels",
            Suite::Limits => "limits",
            Suite::Sampling => "sampling",
            Suite::Specfun => "specfun",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::invalid(format!("unknown suite '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct VerifyOptions {
    /// Coarser grids for the limit scans and the continuum comparisons.
    /// Thresholds are unchanged.
    pub fast: bool,
}

/// One measured quantity and the condition it must satisfy.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Measurement {
    pub label: String,
    pub value: f64,
    pub condition: String,
    pub passed: bool,
}

impl Measurement {
    pub fn below(label: impl Into<String>, value: f64, threshold: f64) -> Self {
        Self {
            label: label.into(),
            value,
            condition: format!("< {}", short(threshold)),
            passed: value < threshold,
        }
    }

    pub fn above(label: impl Into<String>, value: f64, threshold: f64) -> Self {
        Self {
            label: label.into(),
            value,
            condition: format!("> {}", short(threshold)),
            passed: value > threshold,
        }
    }

    pub fn within(label: impl Into<String>, value: f64, lo: f64, hi: f64) -> Self {
        Self {
            label: label.into(),
            value,
            condition: format!("in [{lo}, {hi}]"),
            passed: (lo..=hi).contains(&value),
        }
    }

    /// Strictly decreasing sequence; `value` is the largest ratio of successive terms.
    pub fn decreasing(label: impl Into<String>, values: &[f64]) -> Self {
        let worst = values.windows(2).map(|w| w[1] / w[0]).fold(0.0, f64::max);
        let listed: Vec<String> = values.iter().map(|v| format!("{v:.2e}")).collect();
        Self {
            label: label.into(),
            value: worst,
            condition: format!("(ratio) with errors {} decreasing", listed.join(" > ")),
            passed: values.windows(2).all(|w| w[1] < w[0]),
        }
    }
}

fn short(v: f64) -> String {
    if v == 0.0 || (1e-3..1e4).contains(&v.abs()) {
        format!("{v}")
    } else {
        format!("{v:.0e}")
    }
}

/// Outcome of one numbered criterion.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub id: usize,
    pub suite: Suite,
    pub title: &'static str,
    pub measurements: Vec<Measurement>,
    /// Set when a computation failed outright; names the violated invariant.
    pub error: Option<String>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CheckResult {
    pub fn passed(&self) -> bool {
        self.error.is_none() && !self.measurements.is_empty() && self.measurements.iter().all(|m| m.passed)
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} [{:>2}] {} ({}, {:.1}s)", self.id, self.title, self.suite, self.elapsed.as_secs_f64())?;
        if let Some(e) = &self.error {
            write!(f, "\n       error: {e}")?;
        }
        for m in &self.measurements {
            let mark = if m.passed { " " } else { "!" };
            write!(f, "\n     {mark} {}: {:.3e} {}", m.label, m.value, m.condition)?;
        }
        Ok(())
    }
}

/// A numbered criterion.
pub struct Criterion {
    pub id: usize,
    pub suite: Suite,
    pub title: &'static str,
    run: fn(&VerifyOptions) -> Result<Vec<Measurement>>,
}

impl Criterion {
    pub fn run(&self, opts: &VerifyOptions) -> CheckResult {
        let start = Instant::now();
        let (measurements, error) = match (self.run)(opts) {
            Ok(m) => (m, None),
            Err(e) => (Vec::new(), Some(e.to_string())),
        };
        CheckResult {
            id: self.id,
            suite: self.suite,
            title: self.title,
            measurements,
            error,
            elapsed: start.elapsed(),
        }
    }
}

/// Runs the selected suites (all when `suites` is empty), calling `report`
/// after each criterion.
pub fn run_with<F: FnMut(&CheckResult)>(suites: &[Suite], opts: &VerifyOptions, mut report: F) -> Vec<CheckResult> {
    CRITERIA
        .iter()
        .filter(|c| suites.is_empty() || suites.contains(&c.suite))
        .map(|c| {
            let r = c.run(opts);
            report(&r);
            r
        })
        .collect()
}

pub fn run(suites: &[Suite], opts: &VerifyOptions) -> Vec<CheckResult> {
    run_with(suites, opts, |_| {})
}
