//! Built-in reproductions of the two published counterexamples. Parameters are
//! fixed here exactly as printed and are not user-configurable.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::grid::Grid;
use super::monotone::{ratio_curve, Monotonicity, MonotonicityVerdict, SystemCurve, SystemFunction};
use super::DEFAULT_TOL;
use crate::error::{Error, Result};
use crate::parallel::ParallelSystem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CounterexampleId {
    /// Mixed cone ordering of shapes and scales under shape majorization.
    #[serde(rename = "CE3.1")]
    Ce31,
    /// Scale majorization with everything in `E₊`; the ratio increases.
    #[serde(rename = "CE3.2a")]
    Ce32a,
    /// Same scales with a different shape vector; the ratio decreases.
    #[serde(rename = "CE3.2b")]
    Ce32b,
}

impl CounterexampleId {
    pub const ALL: [CounterexampleId; 3] = [CounterexampleId::Ce31, CounterexampleId::Ce32a, CounterexampleId::Ce32b];

    pub fn as_str(self) -> &'static str {
        match self {
            CounterexampleId::Ce31 => "CE3.1",
            CounterexampleId::Ce32a => "CE3.2a",
            CounterexampleId::Ce32b => "CE3.2b",
        }
    }

    /// Shapes and scales of X, then of Y.
    pub fn parameters(self) -> ([f64; 3], [f64; 3], [f64; 3], [f64; 3]) {
        const CE31_LAMBDA: [f64; 3] = [4.0, 3.0, 0.2];
        const CE32_LAMBDA: [f64; 3] = [0.1, 0.3, 4.1];
        const CE32_DELTA: [f64; 3] = [0.2, 0.3, 4.0];
        match self {
            CounterexampleId::Ce31 => ([1.0, 1.0, 5.0], CE31_LAMBDA, [1.0, 2.0, 4.0], CE31_LAMBDA),
            CounterexampleId::Ce32a => ([0.1, 3.0, 5.0], CE32_LAMBDA, [0.1, 3.0, 5.0], CE32_DELTA),
            CounterexampleId::Ce32b => ([2.0, 3.0, 5.0], CE32_LAMBDA, [2.0, 3.0, 5.0], CE32_DELTA),
        }
    }

    /// Shape of `F_{3:3} / G_{3:3}` reported for each case.
    pub fn published_verdict(self) -> Monotonicity {
        match self {
            CounterexampleId::Ce31 => Monotonicity::NonMonotone,
            CounterexampleId::Ce32a => Monotonicity::Increasing,
            CounterexampleId::Ce32b => Monotonicity::Decreasing,
        }
    }

    pub fn systems(self) -> (ParallelSystem, ParallelSystem) {
        let (s, l, t, d) = self.parameters();
        (
            ParallelSystem::from_vectors(&s, &l).expect("built-in parameters are valid"),
            ParallelSystem::from_vectors(&t, &d).expect("built-in parameters are valid"),
        )
    }
}

impl fmt::Display for CounterexampleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CounterexampleId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_uppercase();
        CounterexampleId::ALL
            .into_iter()
            .find(|id| id.as_str().to_ascii_uppercase() == t)
            .ok_or_else(|| Error::Usage(format!("unknown counterexample id {s:?} (expected CE3.1, CE3.2a or CE3.2b)")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CounterexampleRun {
    pub id: CounterexampleId,
    pub x: ParallelSystem,
    pub y: ParallelSystem,
    /// `(x, F_X(x) / F_Y(x))` over the grid.
    pub curve: Vec<(f64, f64)>,
    pub verdict: MonotonicityVerdict,
}

impl CounterexampleRun {
    pub fn matches_published(&self) -> bool {
        self.verdict.kind == self.id.published_verdict()
    }

    /// `x,ratio` CSV with shortest round-trip decimal formatting.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("x,ratio\n");
        for (x, r) in &self.curve {
            out.push_str(&format!("{x},{r}\n"));
        }
        out
    }
}

/// Evaluates `F_X / F_Y` for a counterexample and classifies it.
pub fn run_counterexample(id: CounterexampleId, grid: &Grid) -> Result<CounterexampleRun> {
    let (x, y) = id.systems();
    let (curve, verdict) = ratio_curve(
        &SystemCurve::new(&x, SystemFunction::Cdf),
        &SystemCurve::new(&y, SystemFunction::Cdf),
        grid,
        DEFAULT_TOL,
    )?;
    Ok(CounterexampleRun {
        id,
        x,
        y,
        curve,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::majorization::{majorizes, order_class, OrderClass};

    #[test]
    fn parameters_satisfy_the_stated_side_conditions() {
        let (s, l, t, _) = CounterexampleId::Ce31.parameters();
        assert!(majorizes(&s, &t).unwrap());
        assert_eq!(order_class(&s), OrderClass::EPlus);
        assert_eq!(order_class(&t), OrderClass::EPlus);
        assert_eq!(order_class(&l), OrderClass::DPlus);
        let (_, l, _, d) = CounterexampleId::Ce32a.parameters();
        assert!(majorizes(&l, &d).unwrap());
        assert_eq!(order_class(&l), OrderClass::EPlus);
        assert_eq!(order_class(&d), OrderClass::EPlus);
    }

    #[test]
    fn ids_parse() {
        assert_eq!("ce3.2a".parse::<CounterexampleId>().unwrap(), CounterexampleId::Ce32a);
        assert!("CE4".parse::<CounterexampleId>().is_err());
    }

    #[test]
    fn csv_shape() {
        let run = run_counterexample(CounterexampleId::Ce31, &Grid::default()).unwrap();
        let csv = run.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("x,ratio"));
        assert_eq!(lines.count(), 2001);
    }
}
