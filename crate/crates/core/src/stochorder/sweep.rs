//! Randomized validation: draw hypothesis-satisfying instances for a theorem
//! and check the concluded order on each.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::grid::Grid;
use super::order::{check_implication_chain, GridInfo};
use super::theorem::{verify_theorem, Outcome, TheoremId, TheoremInstance};
use crate::error::{Error, Result};
use crate::loglindley::LLParams;
use crate::majorization::{random_majorized_pair, OrderClass};
use crate::parallel::{OutlierSpec, ParallelSystem};

/// Range for randomly drawn shape parameters.
pub const SHAPE_RANGE: (f64, f64) = (0.2, 5.0);
/// Range for randomly drawn scale parameters.
pub const SCALE_RANGE: (f64, f64) = (0.05, 5.0);
/// Rejection budget per instance for side conditions (e.g. `λσ > 1/2`).
pub const INSTANCE_MAX_ATTEMPTS: usize = 1000;

fn random_class<R: Rng + ?Sized>(rng: &mut R) -> OrderClass {
    if rng.random_bool(0.5) {
        OrderClass::DPlus
    } else {
        OrderClass::EPlus
    }
}

fn random_vector<R: Rng + ?Sized>(rng: &mut R, n: usize, class: OrderClass, (lo, hi): (f64, f64)) -> Vec<f64> {
    let mut v: Vec<f64> = (0..n).map(|_| rng.random_range(lo..hi)).collect();
    match class {
        OrderClass::DPlus => v.sort_by(|a, b| b.total_cmp(a)),
        _ => v.sort_by(f64::total_cmp),
    }
    v
}

fn draw_once<R: Rng + ?Sized>(id: TheoremId, rng: &mut R, n: usize) -> Result<TheoremInstance> {
    match id {
        TheoremId::T31 | TheoremId::T33 => {
            let class = random_class(rng);
            let pair = random_majorized_pair(rng, n, class, SHAPE_RANGE)?;
            let lambda = random_vector(rng, n, class, SCALE_RANGE);
            let x = ParallelSystem::from_vectors(pair.major.values(), &lambda)?;
            let y = ParallelSystem::from_vectors(pair.minor.values(), &lambda)?;
            Ok(TheoremInstance::new(id, x, y))
        }
        TheoremId::T32 | TheoremId::T35 => {
            let class = random_class(rng);
            let pair = random_majorized_pair(rng, n, class, SCALE_RANGE)?;
            let sigma = random_vector(rng, n, class.flipped(), SHAPE_RANGE);
            let x = ParallelSystem::from_vectors(&sigma, pair.major.values())?;
            let y = ParallelSystem::from_vectors(&sigma, pair.minor.values())?;
            Ok(TheoremInstance::new(id, x, y))
        }
        TheoremId::T34 => draw_outlier(rng, n),
    }
}

/// Two-block instance: spreading `(θ, θ*)` apart while preserving the total
/// yields a block shape vector that majorizes the original.
fn draw_outlier<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Result<TheoremInstance> {
    if n < 2 {
        return Err(Error::InvalidParameter {
            name: "n",
            reason: format!("multiple-outlier systems need n >= 2, got {n}"),
        });
    }
    let (n1, n2) = (n / 2, n - n / 2);
    let (lo, hi) = SHAPE_RANGE;
    let down = rng.random_bool(0.5);
    let mut theta = [rng.random_range(lo..hi), rng.random_range(lo..hi)];
    let mut lambda = [rng.random_range(SCALE_RANGE.0..SCALE_RANGE.1), rng.random_range(SCALE_RANGE.0..SCALE_RANGE.1)];
    // Index 0 is the n1 block, index 1 the outlier block.
    let order = |v: &mut [f64; 2]| {
        if (v[0] < v[1]) == down {
            v.swap(0, 1);
        }
    };
    order(&mut theta);
    order(&mut lambda);
    let (n1f, n2f) = (n1 as f64, n2 as f64);
    let room = if down {
        (n2f * (theta[1] - lo)).min(n1f * (hi - theta[0]))
    } else {
        (n1f * (theta[0] - lo)).min(n2f * (hi - theta[1]))
    };
    let t = rng.random_range(0.0..1.0) * room;
    let sign = if down { 1.0 } else { -1.0 };
    let sigma = [theta[0] + sign * t / n1f, theta[1] - sign * t / n2f];
    let spec = |s: [f64; 2], n1, n2| -> Result<OutlierSpec> {
        Ok(OutlierSpec {
            n1,
            n2,
            base: LLParams::new(s[0], lambda[0])?,
            outlier: LLParams::new(s[1], lambda[1])?,
        })
    };
    TheoremInstance::multiple_outlier(spec(sigma, n1, n2)?, spec(theta, n1, n2)?)
}

/// Draws one instance of `id` whose recorded hypotheses all hold.
pub fn generate_instance<R: Rng + ?Sized>(id: TheoremId, rng: &mut R, n: usize) -> Result<TheoremInstance> {
    let mut rejected = String::new();
    for _ in 0..INSTANCE_MAX_ATTEMPTS {
        let inst = draw_once(id, rng, n)?;
        if inst.hypotheses_hold() && inst.x != inst.y {
            return Ok(inst);
        }
        rejected = inst
            .hypotheses
            .iter()
            .find(|h| !h.holds)
            .map(|h| h.name.clone())
            .unwrap_or_else(|| "X and Y distinct".into());
    }
    Err(Error::Generation {
        attempts: INSTANCE_MAX_ATTEMPTS,
        constraint: format!("{id}: {rejected}"),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FailedInstance {
    pub trial: usize,
    pub max_violation: f64,
    pub x: ParallelSystem,
    pub y: ParallelSystem,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepSummary {
    pub theorem: TheoremId,
    pub trials: usize,
    pub passes: usize,
    pub worst_violation: f64,
    pub seed: u64,
    pub n: usize,
    pub tol: f64,
    pub grid: GridInfo,
    /// Instances where lr held but an implied order did not.
    pub chain_violations: usize,
    /// Instances where the lr verdict held in some direction.
    pub lr_holding: usize,
    /// First failing instance, ready to be written out for replay.
    pub failing: Option<FailedInstance>,
}

impl SweepSummary {
    pub fn all_passed(&self) -> bool {
        self.passes == self.trials
    }
}

/// Runs `trials` random instances of `id` with a ChaCha8 stream seeded by
/// `seed`. Output depends only on `(id, trials, seed, n, grid, tol)`.
pub fn randomized_theorem_sweep(
    id: TheoremId,
    trials: usize,
    seed: u64,
    n: usize,
    grid: &Grid,
    tol: f64,
) -> Result<SweepSummary> {
    if trials == 0 {
        return Err(Error::InvalidParameter {
            name: "trials",
            reason: "need at least one trial".into(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut summary = SweepSummary {
        theorem: id,
        trials,
        passes: 0,
        worst_violation: 0.0,
        seed,
        n,
        tol,
        grid: grid.spec().into(),
        chain_violations: 0,
        lr_holding: 0,
        failing: None,
    };
    for trial in 0..trials {
        let inst = generate_instance(id, &mut rng, n)?;
        let report = verify_theorem(&inst, grid, tol)?;
        let violation = report.max_violation.unwrap_or(f64::INFINITY);
        summary.worst_violation = summary.worst_violation.max(violation);
        if report.outcome == Outcome::Pass {
            summary.passes += 1;
        } else if summary.failing.is_none() {
            summary.failing = Some(FailedInstance {
                trial,
                max_violation: violation,
                x: inst.x.clone(),
                y: inst.y.clone(),
            });
        }
        let chain = check_implication_chain(&inst.x, &inst.y, grid, tol)?;
        if chain.lr.holds() {
            summary.lr_holding += 1;
        }
        if !chain.consistent {
            summary.chain_violations += 1;
        }
    }
    Ok(summary)
}
