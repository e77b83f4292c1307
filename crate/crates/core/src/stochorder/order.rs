use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::grid::{Grid, GridSpec};
use super::monotone::{classify, sample_ratio, Monotonicity, MonotonicityVerdict, SystemCurve, SystemFunction};
use crate::error::{Error, Result};
use crate::parallel::ParallelSystem;

/// The four stochastic orders compared here.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    /// Likelihood ratio: `X ≤ Y` iff `f_Y / f_X` is increasing.
    Lr,
    /// Hazard rate: `X ≤ Y` iff `S_Y / S_X` is increasing.
    Hr,
    /// Reversed hazard rate: `X ≤ Y` iff `F_Y / F_X` is increasing.
    Rhr,
    /// Usual stochastic order: `X ≤ Y` iff `S_X ≤ S_Y` everywhere.
    St,
}

impl Relation {
    pub const ALL: [Relation; 4] = [Relation::Lr, Relation::Hr, Relation::Rhr, Relation::St];

    pub fn as_str(self) -> &'static str {
        match self {
            Relation::Lr => "lr",
            Relation::Hr => "hr",
            Relation::Rhr => "rhr",
            Relation::St => "st",
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Relation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "lr" => Ok(Relation::Lr),
            "hr" => Ok(Relation::Hr),
            "rhr" => Ok(Relation::Rhr),
            "st" => Ok(Relation::St),
            other => Err(Error::Usage(format!("unknown relation {other:?} (expected lr, hr, rhr or st)"))),
        }
    }
}

/// Direction in which a relation was found to hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    /// Both directions hold (the compared ratio is flat).
    #[serde(rename = "X=Y")]
    Both,
    #[serde(rename = "X<=Y")]
    XLeY,
    #[serde(rename = "X>=Y")]
    XGeY,
    #[serde(rename = "neither")]
    Neither,
}

impl Direction {
    fn from_flags(le: bool, ge: bool) -> Self {
        match (le, ge) {
            (true, true) => Direction::Both,
            (true, false) => Direction::XLeY,
            (false, true) => Direction::XGeY,
            (false, false) => Direction::Neither,
        }
    }

    /// True when `self` includes `wanted`.
    pub fn satisfies(self, wanted: Direction) -> bool {
        match wanted {
            Direction::Both => self == Direction::Both,
            Direction::XLeY => matches!(self, Direction::Both | Direction::XLeY),
            Direction::XGeY => matches!(self, Direction::Both | Direction::XGeY),
            Direction::Neither => true,
        }
    }

    pub fn holds(self) -> bool {
        self != Direction::Neither
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Both => "X=Y",
            Direction::XLeY => "X<=Y",
            Direction::XGeY => "X>=Y",
            Direction::Neither => "neither",
        })
    }
}

impl From<Monotonicity> for Direction {
    /// Reads the monotonicity of a `Y / X` ratio.
    fn from(m: Monotonicity) -> Self {
        match m {
            Monotonicity::Constant => Direction::Both,
            Monotonicity::Increasing => Direction::XLeY,
            Monotonicity::Decreasing => Direction::XGeY,
            Monotonicity::NonMonotone => Direction::Neither,
        }
    }
}

/// Pointwise comparison of two functions `a` (from X) and `b` (from Y).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DominanceSummary {
    /// Largest relative excess of `a` over `b`.
    pub max_a_over_b: f64,
    pub at_a_over_b: Option<f64>,
    /// Largest relative excess of `b` over `a`.
    pub max_b_over_a: f64,
    pub at_b_over_a: Option<f64>,
}

impl DominanceSummary {
    fn new() -> Self {
        Self {
            max_a_over_b: 0.0,
            at_a_over_b: None,
            max_b_over_a: 0.0,
            at_b_over_a: None,
        }
    }

    fn record(&mut self, x: f64, a: f64, b: f64) {
        let scale = a.abs().max(b.abs());
        if scale == 0.0 {
            return;
        }
        let d = (a - b) / scale;
        if d > self.max_a_over_b {
            self.max_a_over_b = d;
            self.at_a_over_b = Some(x);
        }
        if -d > self.max_b_over_a {
            self.max_b_over_a = -d;
            self.at_b_over_a = Some(x);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum VerdictDetail {
    Ratio(MonotonicityVerdict),
    Pointwise(DominanceSummary),
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridInfo {
    pub n: usize,
    pub eps: f64,
    pub spacing: super::grid::Spacing,
}

impl From<GridSpec> for GridInfo {
    fn from(s: GridSpec) -> Self {
        Self {
            n: s.n,
            eps: s.eps,
            spacing: s.spacing,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Witnesses {
    pub rise: Option<(f64, f64)>,
    pub fall: Option<(f64, f64)>,
    pub points: Vec<f64>,
}

/// Pointwise `r̃_X` vs `r̃_Y` comparison attached to rhr reports.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointwiseCheck {
    pub direction: Direction,
    pub summary: DominanceSummary,
    pub agrees: bool,
}

/// Outcome of checking one relation between systems X and Y on a grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrderReport {
    pub relation: Relation,
    pub direction: Direction,
    pub holds: bool,
    /// `Increasing`/`Decreasing`/`Constant`/`NonMonotone` for ratio-based
    /// relations (ratio is Y over X), or `Dominance`/`Crossing` for st.
    pub verdict: String,
    /// Violation measured against the reported direction; for `neither` the
    /// smaller of the two directional violations.
    pub max_violation: f64,
    /// Violation of `X ≤ Y`.
    pub violation_le: f64,
    /// Violation of `X ≥ Y`.
    pub violation_ge: f64,
    pub tol: f64,
    pub witnesses: Witnesses,
    pub detail: VerdictDetail,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pointwise: Option<PointwiseCheck>,
    pub grid: GridInfo,
    pub seed: Option<u64>,
}

impl OrderReport {
    /// Violation against a wanted direction (`Both` takes the larger side).
    pub fn violation_for(&self, wanted: Direction) -> f64 {
        match wanted {
            Direction::XLeY => self.violation_le,
            Direction::XGeY => self.violation_ge,
            Direction::Both => self.violation_le.max(self.violation_ge),
            Direction::Neither => 0.0,
        }
    }

    pub fn holds_in(&self, wanted: Direction) -> bool {
        self.direction.satisfies(wanted)
    }

    #[allow(clippy::too_many_arguments)]
    fn finish(
        relation: Relation,
        violation_le: f64,
        violation_ge: f64,
        tol: f64,
        verdict: String,
        witnesses: Witnesses,
        detail: VerdictDetail,
        grid: &Grid,
    ) -> Self {
        let direction = Direction::from_flags(violation_le <= tol, violation_ge <= tol);
        let max_violation = match direction {
            Direction::Both => violation_le.max(violation_ge),
            Direction::XLeY => violation_le,
            Direction::XGeY => violation_ge,
            Direction::Neither => violation_le.min(violation_ge),
        };
        Self {
            relation,
            direction,
            holds: direction.holds(),
            verdict,
            max_violation,
            violation_le,
            violation_ge,
            tol,
            witnesses,
            detail,
            pointwise: None,
            grid: grid.spec().into(),
            seed: None,
        }
    }
}

fn ratio_report(
    relation: Relation,
    x: &ParallelSystem,
    y: &ParallelSystem,
    function: SystemFunction,
    grid: &Grid,
    tol: f64,
) -> Result<OrderReport> {
    let num = SystemCurve::new(y, function);
    let den = SystemCurve::new(x, function);
    let v = classify(&sample_ratio(&num, &den, grid)?, tol);
    let witnesses = Witnesses {
        rise: v.rise,
        fall: v.fall,
        points: Vec::new(),
    };
    Ok(OrderReport::finish(
        relation,
        v.max_fall,
        v.max_rise,
        tol,
        format!("{:?}", v.kind),
        witnesses,
        VerdictDetail::Ratio(v),
        grid,
    ))
}

fn pointwise(
    x: &ParallelSystem,
    y: &ParallelSystem,
    grid: &Grid,
    f: impl Fn(&ParallelSystem, f64) -> Result<(f64, f64)>,
) -> Result<(DominanceSummary, DominanceSummary)> {
    let mut first = DominanceSummary::new();
    let mut second = DominanceSummary::new();
    for &t in grid.points() {
        let (xa, xb) = f(x, t)?;
        let (ya, yb) = f(y, t)?;
        first.record(t, xa, ya);
        second.record(t, xb, yb);
    }
    Ok((first, second))
}

fn st_report(x: &ParallelSystem, y: &ParallelSystem, grid: &Grid, tol: f64) -> Result<OrderReport> {
    // X ≤_st Y  ⇔  S_X ≤ S_Y  ⇔  F_X ≥ F_Y. Both tails are compared in
    // relative terms so whichever is small stays visible.
    let (surv, cdf) = pointwise(x, y, grid, |s, t| Ok((s.survival(t)?, s.cdf(t)?)))?;
    let violation_le = surv.max_a_over_b.max(cdf.max_b_over_a);
    let violation_ge = surv.max_b_over_a.max(cdf.max_a_over_b);
    let le_at = if surv.max_a_over_b >= cdf.max_b_over_a { surv.at_a_over_b } else { cdf.at_b_over_a };
    let ge_at = if surv.max_b_over_a >= cdf.max_a_over_b { surv.at_b_over_a } else { cdf.at_a_over_b };
    let crossing = violation_le > tol && violation_ge > tol;
    let witnesses = Witnesses {
        rise: None,
        fall: None,
        points: [le_at, ge_at].into_iter().flatten().collect(),
    };
    let merged = DominanceSummary {
        max_a_over_b: violation_le,
        at_a_over_b: le_at,
        max_b_over_a: violation_ge,
        at_b_over_a: ge_at,
    };
    Ok(OrderReport::finish(
        Relation::St,
        violation_le,
        violation_ge,
        tol,
        if crossing { "Crossing" } else { "Dominance" }.to_string(),
        witnesses,
        VerdictDetail::Pointwise(merged),
        grid,
    ))
}

/// Checks `relation` between the lifetimes of `x` and `y` on `grid`.
pub fn check_order(
    x: &ParallelSystem,
    y: &ParallelSystem,
    relation: Relation,
    grid: &Grid,
    tol: f64,
) -> Result<OrderReport> {
    match relation {
        Relation::Lr => ratio_report(relation, x, y, SystemFunction::Pdf, grid, tol),
        Relation::Hr => ratio_report(relation, x, y, SystemFunction::Survival, grid, tol),
        Relation::Rhr => {
            let mut report = ratio_report(relation, x, y, SystemFunction::Cdf, grid, tol)?;
            // X ≤_rhr Y  ⇔  r̃_X ≤ r̃_Y pointwise.
            let (rates, _) = pointwise(x, y, grid, |s, t| {
                let r = s.rhr(t)?;
                Ok((r, r))
            })?;
            let direction = Direction::from_flags(rates.max_a_over_b <= tol, rates.max_b_over_a <= tol);
            report.pointwise = Some(PointwiseCheck {
                direction,
                agrees: direction == report.direction,
                summary: rates,
            });
            Ok(report)
        }
        Relation::St => st_report(x, y, grid, tol),
    }
}

/// lr verdict and the verdicts it implies, checked on one grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainReport {
    pub lr: Direction,
    pub hr: Direction,
    pub rhr: Direction,
    pub st: Direction,
    /// False when lr holds in a direction that some implied order misses.
    pub consistent: bool,
    pub violations: Vec<String>,
}

/// Checks that lr ⇒ hr, lr ⇒ rhr, lr ⇒ st, hr ⇒ st and rhr ⇒ st hold numerically.
///
/// A violation here flags a tolerance or resolution problem, since the
/// implications themselves are theorems.
pub fn check_implication_chain(x: &ParallelSystem, y: &ParallelSystem, grid: &Grid, tol: f64) -> Result<ChainReport> {
    let lr = check_order(x, y, Relation::Lr, grid, tol)?.direction;
    let hr = check_order(x, y, Relation::Hr, grid, tol)?.direction;
    let rhr = check_order(x, y, Relation::Rhr, grid, tol)?.direction;
    let st = check_order(x, y, Relation::St, grid, tol)?.direction;
    // hr is matched against the survival side of st, rhr against the cdf side.
    let (surv, cdf) = pointwise(x, y, grid, |s, t| Ok((s.survival(t)?, s.cdf(t)?)))?;
    let st_upper = Direction::from_flags(surv.max_a_over_b <= tol, surv.max_b_over_a <= tol);
    let st_lower = Direction::from_flags(cdf.max_b_over_a <= tol, cdf.max_a_over_b <= tol);
    let mut violations = Vec::new();
    let mut require = |premise: (&str, Direction), conclusion: (&str, Direction)| {
        for wanted in [Direction::XLeY, Direction::XGeY] {
            if premise.1.satisfies(wanted) && !conclusion.1.satisfies(wanted) {
                violations.push(format!(
                    "{} holds as {} but {} is {}",
                    premise.0, wanted, conclusion.0, conclusion.1
                ));
            }
        }
    };
    require(("lr", lr), ("hr", hr));
    require(("lr", lr), ("rhr", rhr));
    require(("lr", lr), ("st", st));
    require(("hr", hr), ("st (survival)", st_upper));
    require(("rhr", rhr), ("st (cdf)", st_lower));
    Ok(ChainReport {
        lr,
        hr,
        rhr,
        st,
        consistent: violations.is_empty(),
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sys(s: &[f64], l: &[f64]) -> ParallelSystem {
        ParallelSystem::from_vectors(s, l).unwrap()
    }

    #[test]
    fn identical_systems_hold_everywhere() {
        let x = sys(&[1.0, 2.0, 5.0], &[0.3, 1.0, 2.0]);
        let g = Grid::default();
        for r in Relation::ALL {
            let rep = check_order(&x, &x, r, &g, 1e-9).unwrap();
            assert_eq!(rep.direction, Direction::Both, "{r}");
            assert!(rep.max_violation <= 1e-9);
        }
        let chain = check_implication_chain(&x, &x, &g, 1e-9).unwrap();
        assert!(chain.consistent);
    }

    #[test]
    fn crossing_below_survival_resolution_is_not_a_chain_violation() {
        // The cdfs cross near 0 by far less than S can show, so hr holds while st does not.
        let x = sys(&[2.0, 4.0], &[1.0, 0.5]);
        let y = sys(&[3.0, 3.0], &[1.0, 0.5]);
        let g = Grid::default();
        assert_eq!(check_order(&x, &y, Relation::Hr, &g, 1e-9).unwrap().direction, Direction::XLeY);
        assert_eq!(check_order(&x, &y, Relation::St, &g, 1e-9).unwrap().direction, Direction::Neither);
        let chain = check_implication_chain(&x, &y, &g, 1e-9).unwrap();
        assert!(chain.consistent, "{:?}", chain.violations);
    }

    #[test]
    fn larger_shape_iid_dominates_in_every_order() {
        // Same λ, bigger σ shifts mass toward 1.
        let x = sys(&[3.0], &[1.0]);
        let y = sys(&[1.0], &[1.0]);
        let g = Grid::default();
        for r in Relation::ALL {
            let rep = check_order(&x, &y, r, &g, 1e-9).unwrap();
            assert_eq!(rep.direction, Direction::XGeY, "{r}: {rep:?}");
        }
    }

    #[test]
    fn relation_parsing() {
        assert_eq!("RHR".parse::<Relation>().unwrap(), Relation::Rhr);
        assert!("foo".parse::<Relation>().is_err());
    }

    #[test]
    fn direction_satisfaction() {
        assert!(Direction::Both.satisfies(Direction::XLeY));
        assert!(!Direction::XGeY.satisfies(Direction::XLeY));
        assert!(!Direction::Neither.holds());
    }
}
