//! Hypothesis bookkeeping and numerical checks for the five comparison
//! theorems on parallel systems of log-Lindley components.
//!
//! Throughout, `X` has shapes `σ` and scales `λ`; `Y` has shapes `θ` and
//! scales `δ`.
//!
//! | id   | varies | cone condition                           | extra                | conclusion |
//! |------|--------|------------------------------------------|----------------------|------------|
//! | T3.1 | shape  | `σ, θ, λ` all in `D₊` or all in `E₊`     |                      | `X ≥_rhr Y` |
//! | T3.2 | scale  | `σ ∈ E₊, λ, δ ∈ D₊` or the reverse       |                      | `X ≤_rhr Y` |
//! | T3.3 | shape  | as T3.1                                  | `λ_iσ_i, λ_iθ_i > ½` | `X ≥_lr Y`  |
//! | T3.4 | shape  | two-block (multiple-outlier) systems     | blockwise ordering   | `X ≥_lr Y`  |
//! | T3.5 | scale  | as T3.2                                  |                      | `X ≤_lr Y`  |

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::grid::Grid;
use super::order::{check_order, Direction, OrderReport, Relation};
use crate::error::{Error, Result};
use crate::majorization::{majorizes, order_class, OrderClass};
use crate::parallel::{OutlierSpec, ParallelSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TheoremId {
    #[serde(rename = "T3.1")]
    T31,
    #[serde(rename = "T3.2")]
    T32,
    #[serde(rename = "T3.3")]
    T33,
    #[serde(rename = "T3.4")]
    T34,
    #[serde(rename = "T3.5")]
    T35,
}

impl TheoremId {
    pub const ALL: [TheoremId; 5] = [TheoremId::T31, TheoremId::T32, TheoremId::T33, TheoremId::T34, TheoremId::T35];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::T31 => "T3.1",
            TheoremId::T32 => "T3.2",
            TheoremId::T33 => "T3.3",
            TheoremId::T34 => "T3.4",
            TheoremId::T35 => "T3.5",
        }
    }

    /// The order each theorem concludes and its direction.
    pub fn conclusion(self) -> (Relation, Direction) {
        match self {
            TheoremId::T31 => (Relation::Rhr, Direction::XGeY),
            TheoremId::T32 => (Relation::Rhr, Direction::XLeY),
            TheoremId::T33 | TheoremId::T34 => (Relation::Lr, Direction::XGeY),
            TheoremId::T35 => (Relation::Lr, Direction::XLeY),
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_uppercase();
        TheoremId::ALL
            .into_iter()
            .find(|id| id.as_str() == t || id.as_str().replace('.', "") == t)
            .ok_or_else(|| Error::Usage(format!("unknown theorem id {s:?} (expected T3.1 .. T3.5)")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HypothesisCheck {
    pub name: String,
    pub holds: bool,
}

/// Two systems tagged with a theorem and the evaluated hypothesis record.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremInstance {
    pub id: TheoremId,
    pub x: ParallelSystem,
    pub y: ParallelSystem,
    pub hypotheses: Vec<HypothesisCheck>,
    /// Observations that do not block the check (e.g. zero scales).
    pub flags: Vec<String>,
}

impl TheoremInstance {
    /// Evaluates every hypothesis of `id` for the pair `(x, y)`.
    pub fn new(id: TheoremId, x: ParallelSystem, y: ParallelSystem) -> Self {
        let mut rec = Record::default();
        if x.len() != y.len() {
            rec.check("systems have equal size", false);
            return rec.finish(id, x, y);
        }
        let (sigma, lambda) = (x.shapes(), x.scales());
        let (theta, delta) = (y.shapes(), y.scales());
        if lambda.iter().chain(&delta).any(|&l| l == 0.0) {
            rec.flags.push("a component has λ = 0, which lies outside D+ and E+".into());
        }
        match id {
            TheoremId::T31 | TheoremId::T33 => {
                rec.check("common scale vector (λ = δ)", lambda == delta);
                rec.check("σ, θ, λ share a cone (all D+ or all E+)", common_cone(&[&sigma, &theta, &lambda]));
                rec.check("σ majorizes θ", majorizes(&sigma, &theta).unwrap_or(false));
                if id == TheoremId::T33 {
                    let x_ok = sigma.iter().zip(&lambda).all(|(s, l)| s * l > 0.5);
                    let y_ok = theta.iter().zip(&lambda).all(|(t, l)| t * l > 0.5);
                    rec.check("λ_i σ_i > 1/2 for all i", x_ok);
                    rec.check("λ_i θ_i > 1/2 for all i", y_ok);
                    if x_ok != y_ok {
                        rec.flags.push(format!(
                            "λσ > 1/2 holds only for the {} system",
                            if x_ok { "X" } else { "Y" }
                        ));
                    }
                }
            }
            TheoremId::T32 | TheoremId::T35 => {
                rec.check("common shape vector (σ = θ)", sigma == theta);
                let s = order_class(&sigma);
                let (l, d) = (order_class(&lambda), order_class(&delta));
                let cones = [OrderClass::DPlus, OrderClass::EPlus].into_iter().any(|c| {
                    s.is_in(c.flipped()) && l.is_in(c) && d.is_in(c)
                });
                rec.check("σ in the cone opposite to λ and δ", cones);
                rec.check("λ majorizes δ", majorizes(&lambda, &delta).unwrap_or(false));
            }
            TheoremId::T34 => match outlier_blocks(&x, &y) {
                None => rec.check("two-block multiple-outlier structure", false),
                Some(n1) => {
                    rec.check("two-block multiple-outlier structure", true);
                    let (s, ss) = (sigma[0], sigma[n1]);
                    let (t, ts) = (theta[0], theta[n1]);
                    let (l, ls) = (lambda[0], lambda[n1]);
                    rec.check("common scales (λ, λ*)", lambda == delta);
                    rec.check("block shape vector of X majorizes that of Y", majorizes(&sigma, &theta).unwrap_or(false));
                    let down = s >= ss && t >= ts && l >= ls;
                    let up = s <= ss && t <= ts && l <= ls;
                    rec.check("{σ≥σ*, θ≥θ*, λ≥λ*} or {σ≤σ*, θ≤θ*, λ≤λ*}", down || up);
                }
            },
        }
        rec.finish(id, x, y)
    }

    /// Multiple-outlier instance for T3.4 built from two block specifications.
    pub fn multiple_outlier(x: OutlierSpec, y: OutlierSpec) -> Result<Self> {
        let mut inst = Self::new(
            TheoremId::T34,
            ParallelSystem::from_outlier(x)?,
            ParallelSystem::from_outlier(y)?,
        );
        if x.n1 != y.n1 || x.n2 != y.n2 {
            inst.hypotheses.push(HypothesisCheck {
                name: "matching block sizes".into(),
                holds: false,
            });
        }
        Ok(inst)
    }

    pub fn hypotheses_hold(&self) -> bool {
        self.hypotheses.iter().all(|h| h.holds)
    }
}

#[derive(Default)]
struct Record {
    hypotheses: Vec<HypothesisCheck>,
    flags: Vec<String>,
}

impl Record {
    fn check(&mut self, name: &str, holds: bool) {
        self.hypotheses.push(HypothesisCheck {
            name: name.to_string(),
            holds,
        });
    }

    fn finish(self, id: TheoremId, x: ParallelSystem, y: ParallelSystem) -> TheoremInstance {
        TheoremInstance {
            id,
            x,
            y,
            hypotheses: self.hypotheses,
            flags: self.flags,
        }
    }
}

fn common_cone(vectors: &[&Vec<f64>]) -> bool {
    [OrderClass::DPlus, OrderClass::EPlus]
        .into_iter()
        .any(|c| vectors.iter().all(|v| order_class(v).is_in(c)))
}

/// Size of the leading block when both systems are `n1` copies of one
/// component followed by copies of another, with the same split.
fn outlier_blocks(x: &ParallelSystem, y: &ParallelSystem) -> Option<usize> {
    let (xc, yc) = (x.components(), y.components());
    let n = xc.len();
    if n < 2 {
        return None;
    }
    let mut n1 = 1;
    while n1 < n && xc[n1] == xc[0] && yc[n1] == yc[0] {
        n1 += 1;
    }
    if n1 == n {
        // Both systems i.i.d.; any split works.
        return Some(n - 1);
    }
    let tail_ok = xc[n1..].iter().all(|c| *c == xc[n1]) && yc[n1..].iter().all(|c| *c == yc[n1]);
    tail_ok.then_some(n1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Outcome {
    Pass,
    Fail,
    HypothesesNotMet,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TheoremReport {
    pub theorem: TheoremId,
    pub outcome: Outcome,
    pub relation: Relation,
    pub expected: Direction,
    /// Violation of the concluded direction; absent when nothing was checked.
    pub max_violation: Option<f64>,
    pub hypotheses: Vec<HypothesisCheck>,
    pub flags: Vec<String>,
    pub order: Option<OrderReport>,
}

/// Checks the theorem's conclusion on `grid` when, and only when, every
/// recorded hypothesis holds.
pub fn verify_theorem(instance: &TheoremInstance, grid: &Grid, tol: f64) -> Result<TheoremReport> {
    let (relation, expected) = instance.id.conclusion();
    let mut report = TheoremReport {
        theorem: instance.id,
        outcome: Outcome::HypothesesNotMet,
        relation,
        expected,
        max_violation: None,
        hypotheses: instance.hypotheses.clone(),
        flags: instance.flags.clone(),
        order: None,
    };
    if !instance.hypotheses_hold() {
        return Ok(report);
    }
    let order = check_order(&instance.x, &instance.y, relation, grid, tol)?;
    let violation = order.violation_for(expected);
    report.outcome = if violation <= tol { Outcome::Pass } else { Outcome::Fail };
    report.max_violation = Some(violation);
    report.order = Some(order);
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::loglindley::LLParams;

    fn sys(s: &[f64], l: &[f64]) -> ParallelSystem {
        ParallelSystem::from_vectors(s, l).unwrap()
    }

    #[test]
    fn parse_ids() {
        assert_eq!("T3.3".parse::<TheoremId>().unwrap(), TheoremId::T33);
        assert_eq!("t34".parse::<TheoremId>().unwrap(), TheoremId::T34);
        assert!("T9".parse::<TheoremId>().is_err());
    }

    #[test]
    fn t31_hypotheses_recorded() {
        let inst = TheoremInstance::new(
            TheoremId::T31,
            sys(&[3.0, 2.0, 1.0], &[3.0, 2.0, 1.0]),
            sys(&[2.0, 2.0, 2.0], &[3.0, 2.0, 1.0]),
        );
        assert!(inst.hypotheses_hold(), "{:?}", inst.hypotheses);
    }

    #[test]
    fn counterexample_parameters_fail_t31_hypotheses() {
        let inst = TheoremInstance::new(
            TheoremId::T31,
            sys(&[1.0, 1.0, 5.0], &[4.0, 3.0, 0.2]),
            sys(&[1.0, 2.0, 4.0], &[4.0, 3.0, 0.2]),
        );
        assert!(!inst.hypotheses_hold());
        let rep = verify_theorem(&inst, &Grid::default(), 1e-9).unwrap();
        assert_eq!(rep.outcome, Outcome::HypothesesNotMet);
        assert!(rep.order.is_none() && rep.max_violation.is_none());
    }

    #[test]
    fn t33_one_sided_condition_is_flagged() {
        // λσ = (1.5, 1.0) and λθ = (1.3, 1.2): both sides clear 1/2.
        let inst = TheoremInstance::new(
            TheoremId::T33,
            sys(&[3.0, 2.0], &[0.5, 0.5]),
            sys(&[2.6, 2.4], &[0.5, 0.5]),
        );
        assert!(inst.hypotheses_hold());
        let inst = TheoremInstance::new(
            TheoremId::T33,
            sys(&[4.0, 0.5], &[0.5, 0.5]),
            sys(&[3.0, 1.5], &[0.5, 0.5]),
        );
        assert!(!inst.hypotheses_hold());
        assert!(inst.flags.iter().any(|f| f.contains("only for the Y")), "{:?}", inst.flags);
    }

    #[test]
    fn zero_scale_is_flagged() {
        let inst = TheoremInstance::new(TheoremId::T31, sys(&[2.0, 1.0], &[1.0, 0.0]), sys(&[1.5, 1.5], &[1.0, 0.0]));
        assert!(!inst.hypotheses_hold());
        assert!(!inst.flags.is_empty());
    }

    #[test]
    fn multiple_outlier_structure() {
        let ll = |s, l| LLParams::new(s, l).unwrap();
        let inst = TheoremInstance::multiple_outlier(
            OutlierSpec { n1: 2, n2: 2, base: ll(4.0, 1.0), outlier: ll(1.0, 0.5) },
            OutlierSpec { n1: 2, n2: 2, base: ll(3.0, 1.0), outlier: ll(2.0, 0.5) },
        )
        .unwrap();
        assert!(inst.hypotheses_hold(), "{:?}", inst.hypotheses);
        // Not two blocks.
        let inst = TheoremInstance::new(TheoremId::T34, sys(&[3.0, 2.0, 1.0], &[1.0; 3]), sys(&[2.0; 3], &[1.0; 3]));
        assert!(!inst.hypotheses_hold());
    }
}
