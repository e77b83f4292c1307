use serde::Serialize;

use super::grid::Grid;
use crate::error::{Error, Result};
use crate::parallel::ParallelSystem;

/// Something that can be evaluated on `(0, 1)`.
///
/// Curves with a natural log form override [`ln_value`](Curve::ln_value) so
/// that ratios are built as `exp(ln num - ln den)` and never underflow.
pub trait Curve {
    fn value(&self, x: f64) -> Result<f64>;

    fn ln_value(&self, x: f64) -> Result<f64> {
        Ok(self.value(x)?.ln())
    }
}

impl<F: Fn(f64) -> f64> Curve for F {
    fn value(&self, x: f64) -> Result<f64> {
        Ok(self(x))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SystemFunction {
    Cdf,
    Survival,
    Pdf,
    Rhr,
    Hazard,
}

/// One of a system's functions, viewed as a [`Curve`].
#[derive(Debug, Clone, Copy)]
pub struct SystemCurve<'a> {
    pub system: &'a ParallelSystem,
    pub function: SystemFunction,
}

impl<'a> SystemCurve<'a> {
    pub fn new(system: &'a ParallelSystem, function: SystemFunction) -> Self {
        Self { system, function }
    }
}

impl Curve for SystemCurve<'_> {
    fn value(&self, x: f64) -> Result<f64> {
        let s = self.system;
        match self.function {
            SystemFunction::Cdf => s.cdf(x),
            SystemFunction::Survival => s.survival(x),
            SystemFunction::Pdf => s.pdf(x),
            SystemFunction::Rhr => s.rhr(x),
            SystemFunction::Hazard => s.hazard(x),
        }
    }

    fn ln_value(&self, x: f64) -> Result<f64> {
        let s = self.system;
        match self.function {
            SystemFunction::Cdf => s.ln_cdf(x),
            SystemFunction::Pdf => s.ln_pdf(x),
            // ln S = ln(-expm1(ln F)), accurate on both ends.
            SystemFunction::Survival => Ok((-s.ln_cdf(x)?.exp_m1()).ln()),
            _ => Ok(self.value(x)?.ln()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Monotonicity {
    Increasing,
    Decreasing,
    Constant,
    NonMonotone,
}

/// Classification of a sampled ratio.
///
/// A rise is a relative increase from some grid point to a later one; a fall
/// is a relative decrease from an earlier peak. Only excursions larger than
/// `tol` count, so slow drifts made of many sub-tolerance steps are still
/// seen while floating-point noise is not. The witnesses are the `(earlier,
/// later)` point pairs of the largest rise and fall.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonotonicityVerdict {
    pub kind: Monotonicity,
    pub rise: Option<(f64, f64)>,
    pub fall: Option<(f64, f64)>,
    /// Largest relative run-up (0 if none).
    pub max_rise: f64,
    /// Largest relative drawdown, as a positive number.
    pub max_fall: f64,
    /// Largest relative change between adjacent points.
    pub max_relative_step: f64,
}

/// Sampled ratio `num / den` with its log where both logs are finite.
pub(crate) struct RatioSamples {
    pub xs: Vec<f64>,
    pub ratio: Vec<f64>,
    pub ln_ratio: Vec<Option<f64>>,
}

pub(crate) fn sample_ratio(num: &dyn Curve, den: &dyn Curve, grid: &Grid) -> Result<RatioSamples> {
    let n = grid.len();
    let mut out = RatioSamples {
        xs: grid.points().to_vec(),
        ratio: Vec::with_capacity(n),
        ln_ratio: Vec::with_capacity(n),
    };
    for &x in grid.points() {
        let ln_den = den.ln_value(x)?;
        if !ln_den.is_finite() {
            let value = den.value(x)?;
            return Err(Error::NonPositiveDenominator { x, value });
        }
        let ln_num = num.ln_value(x)?;
        if ln_num.is_finite() {
            let lr = ln_num - ln_den;
            out.ratio.push(lr.exp());
            out.ln_ratio.push(Some(lr));
        } else {
            out.ratio.push(num.value(x)? / den.value(x)?);
            out.ln_ratio.push(None);
        }
    }
    Ok(out)
}

fn relative_step(r0: f64, r1: f64, l0: Option<f64>, l1: Option<f64>) -> f64 {
    match (l0, l1) {
        (Some(a), Some(b)) => (b - a).exp_m1(),
        _ if r1 == r0 => 0.0,
        _ if r0 != 0.0 => (r1 - r0) / r0.abs(),
        _ => (r1 - r0).signum() * f64::INFINITY,
    }
}

pub(crate) fn classify(s: &RatioSamples, tol: f64) -> MonotonicityVerdict {
    let step = |i: usize, j: usize| relative_step(s.ratio[i], s.ratio[j], s.ln_ratio[i], s.ln_ratio[j]);
    let mut best_rise = (0.0, None);
    let mut best_fall = (0.0, None);
    let mut max_step = 0.0_f64;
    // Indices of the running minimum and maximum seen so far.
    let (mut lo, mut hi) = (0, 0);
    for j in 1..s.xs.len() {
        max_step = max_step.max(step(j - 1, j).abs());
        let up = step(lo, j);
        if up > best_rise.0 {
            best_rise = (up, Some((s.xs[lo], s.xs[j])));
        }
        let down = -step(hi, j);
        if down > best_fall.0 {
            best_fall = (down, Some((s.xs[hi], s.xs[j])));
        }
        if s.ratio[j] < s.ratio[lo] {
            lo = j;
        }
        if s.ratio[j] > s.ratio[hi] {
            hi = j;
        }
    }
    let rises = best_rise.0 > tol;
    let falls = best_fall.0 > tol;
    let kind = match (rises, falls) {
        (true, true) => Monotonicity::NonMonotone,
        (true, false) => Monotonicity::Increasing,
        (false, true) => Monotonicity::Decreasing,
        (false, false) => Monotonicity::Constant,
    };
    MonotonicityVerdict {
        kind,
        rise: if rises { best_rise.1 } else { None },
        fall: if falls { best_fall.1 } else { None },
        max_rise: best_rise.0,
        max_fall: best_fall.0,
        max_relative_step: max_step,
    }
}

/// Classifies `num(x) / den(x)` over `grid` with relative step tolerance `tol`.
pub fn ratio_monotonicity(num: &dyn Curve, den: &dyn Curve, grid: &Grid, tol: f64) -> Result<MonotonicityVerdict> {
    Ok(classify(&sample_ratio(num, den, grid)?, tol))
}

/// Sampled ratio as `(x, ratio)` pairs together with its classification.
pub fn ratio_curve(
    num: &dyn Curve,
    den: &dyn Curve,
    grid: &Grid,
    tol: f64,
) -> Result<(Vec<(f64, f64)>, MonotonicityVerdict)> {
    let s = sample_ratio(num, den, grid)?;
    let verdict = classify(&s, tol);
    Ok((s.xs.iter().copied().zip(s.ratio.iter().copied()).collect(), verdict))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stochorder::grid::GridSpec;

    fn grid() -> Grid {
        Grid::new(GridSpec { n: 101, ..GridSpec::default() }).unwrap()
    }

    #[test]
    fn constant_ratio() {
        let one = |_x: f64| 1.0;
        let v = ratio_monotonicity(&one, &one, &grid(), 1e-9).unwrap();
        assert_eq!(v.kind, Monotonicity::Constant);
        assert!(v.rise.is_none() && v.fall.is_none());
        assert!(v.max_relative_step <= 1e-9);
    }

    #[test]
    fn increasing_decreasing_and_bump() {
        let one = |_x: f64| 1.0;
        let up = |x: f64| 1.0 + x;
        let down = |x: f64| 2.0 - x;
        let bump = |x: f64| 1.0 + (x - 0.5).powi(2);
        let g = grid();
        assert_eq!(ratio_monotonicity(&up, &one, &g, 1e-9).unwrap().kind, Monotonicity::Increasing);
        assert_eq!(ratio_monotonicity(&down, &one, &g, 1e-9).unwrap().kind, Monotonicity::Decreasing);
        assert_eq!(ratio_monotonicity(&one, &up, &g, 1e-9).unwrap().kind, Monotonicity::Decreasing);
        let v = ratio_monotonicity(&bump, &one, &g, 1e-9).unwrap();
        assert_eq!(v.kind, Monotonicity::NonMonotone);
        let (a, b) = v.rise.unwrap();
        let (c, d) = v.fall.unwrap();
        assert!((0.49..=0.51).contains(&a) && b > 0.99);
        assert!(c < 0.01 && (0.49..=0.51).contains(&d));
    }

    #[test]
    fn wiggles_below_tolerance_are_flat() {
        let one = |_x: f64| 1.0;
        let wiggle = |x: f64| 1.0 + 1e-12 * (50.0 * x).sin();
        let v = ratio_monotonicity(&wiggle, &one, &grid(), 1e-9).unwrap();
        assert_eq!(v.kind, Monotonicity::Constant);
    }

    #[test]
    fn slow_drift_is_not_flat() {
        // Every adjacent step is ~1e-11, far below tol, but the total is 1e-8.
        let one = |_x: f64| 1.0;
        let drift = |x: f64| 1.0 - 1e-8 * x;
        let v = ratio_monotonicity(&drift, &one, &grid(), 1e-9).unwrap();
        assert_eq!(v.kind, Monotonicity::Decreasing);
        assert!(v.max_relative_step < 1e-9);
    }

    #[test]
    fn nonpositive_denominator_is_an_error() {
        let one = |_x: f64| 1.0;
        let bad = |x: f64| x - 0.5;
        let r = ratio_monotonicity(&one, &bad, &grid(), 1e-9);
        assert!(matches!(r, Err(Error::NonPositiveDenominator { .. })));
    }

    #[test]
    fn zero_numerator_falls_back_to_division() {
        let one = |_x: f64| 1.0;
        let ramp = |x: f64| if x < 0.5 { 0.0 } else { x - 0.5 };
        let v = ratio_monotonicity(&ramp, &one, &grid(), 1e-9).unwrap();
        assert_eq!(v.kind, Monotonicity::Increasing);
    }
}
