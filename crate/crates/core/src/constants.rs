//! Per-run measurements of the quantities that bound kernel sizes.
//!
//! Nothing in the pipeline depends on these values; they are recorded so that
//! size trends can be inspected after a run.

use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Metric {
    /// |D| / |A| of a certified dominator.
    DvorakRatio,
    /// Number of realized projection profiles per vertex of the target set.
    ProjectionBoundRatio,
    /// |closure| / |input| of a projection or path closure.
    ClosureBlowup,
    /// Number of roots of a found water lily.
    LilyRootSize,
    /// Centres per root of a found water lily.
    LilyRatio,
    /// Kernel vertex count per unit of budget.
    KernelSizePerK,
    /// Greedy upper bound on a weak colouring number.
    WcolBound,
}

impl Metric {
    pub fn as_str(self) -> &'static str {
        match self {
            Metric::DvorakRatio => "dvorak_ratio",
            Metric::ProjectionBoundRatio => "projection_bound_ratio",
            Metric::ClosureBlowup => "closure_blowup",
            Metric::LilyRootSize => "lily_root_size",
            Metric::LilyRatio => "lily_ratio",
            Metric::KernelSizePerK => "kernel_size_per_k",
            Metric::WcolBound => "wcol_bound",
        }
    }
}

/// Nonnegative rational with a nonzero denominator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

impl Ratio {
    pub fn new(num: usize, den: usize) -> Option<Self> {
        (den != 0).then_some(Ratio {
            num: num as u64,
            den: den as u64,
        })
    }

    pub fn value(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{} ({:.3})", self.num, self.den, self.value())
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Measurement {
    pub metric: Metric,
    pub value: Ratio,
    pub instance: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct EmpiricalConstants {
    entries: Vec<Measurement>,
}

impl EmpiricalConstants {
    pub fn new() -> Self {
        Self::default()
    }

    /// Records `num / den`; returns `false` (recording nothing) when `den` is zero.
    pub fn record(&mut self, metric: Metric, num: usize, den: usize, instance: &str) -> bool {
        match Ratio::new(num, den) {
            Some(value) => {
                self.entries.push(Measurement {
                    metric,
                    value,
                    instance: instance.to_string(),
                });
                true
            }
            None => false,
        }
    }

    pub fn entries(&self) -> &[Measurement] {
        &self.entries
    }

    pub fn merge(&mut self, other: EmpiricalConstants) {
        self.entries.extend(other.entries);
    }

    /// Largest recorded value of `metric`, if any.
    pub fn max(&self, metric: Metric) -> Option<Ratio> {
        self.entries
            .iter()
            .filter(|m| m.metric == metric)
            .map(|m| m.value)
            .max_by(|a, b| (a.num as u128 * b.den as u128).cmp(&(b.num as u128 * a.den as u128)))
    }

    /// One `key=value` line per measurement.
    pub fn report_lines(&self) -> Vec<String> {
        self.entries
            .iter()
            .map(|m| format!("constant {}={} instance={}", m.metric.as_str(), m.value, m.instance))
            .collect()
    }
}
