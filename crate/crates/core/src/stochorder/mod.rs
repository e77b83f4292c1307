//! Numerical checks of stochastic orders between parallel systems.
//!
//! Every "for all x" statement is replaced by a check on a [`Grid`]; reports
//! carry the grid size and margin so that a failure can be told apart from
//! under-resolution.

mod counterexample;
mod grid;
mod monotone;
mod order;
mod sweep;
mod theorem;

pub use counterexample::{run_counterexample, CounterexampleId, CounterexampleRun};
pub use grid::{Grid, GridSpec, Spacing, DEFAULT_EPS, DEFAULT_GRID_N, ENDPOINT_POINTS, MIN_GRID_N};
pub use monotone::{ratio_curve, ratio_monotonicity, Curve, Monotonicity, MonotonicityVerdict, SystemCurve, SystemFunction};
pub use order::{
    check_implication_chain, check_order, ChainReport, Direction, DominanceSummary, GridInfo, OrderReport,
    PointwiseCheck, Relation, VerdictDetail, Witnesses,
};
pub use sweep::{generate_instance, randomized_theorem_sweep, FailedInstance, SweepSummary, SCALE_RANGE, SHAPE_RANGE};
pub use theorem::{verify_theorem, HypothesisCheck, Outcome, TheoremId, TheoremInstance, TheoremReport};

/// Relative step tolerance separating floating-point noise from real trends.
pub const DEFAULT_TOL: f64 = 1e-9;
