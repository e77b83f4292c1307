use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_GRID_N: usize = 2001;
pub const DEFAULT_EPS: f64 = 1e-6;
pub const MIN_GRID_N: usize = 16;
/// Geometric points placed next to each endpoint on a refined grid.
pub const ENDPOINT_POINTS: usize = 200;
/// Width of each geometrically refined end zone.
const REFINE_ZONE: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    /// Evenly spaced on `[eps, 1 - eps]`.
    Uniform,
    /// Uniform middle section with geometric clusters toward 0 and 1.
    Refined,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub n: usize,
    pub eps: f64,
    pub spacing: Spacing,
}

impl Default for GridSpec {
    fn default() -> Self {
        Self {
            n: DEFAULT_GRID_N,
            eps: DEFAULT_EPS,
            spacing: Spacing::Refined,
        }
    }
}

/// Strictly increasing evaluation points inside `(0, 1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    points: Vec<f64>,
    spec: GridSpec,
}

impl Grid {
    pub fn new(spec: GridSpec) -> Result<Self> {
        let GridSpec { n, eps, spacing } = spec;
        if n < MIN_GRID_N {
            return Err(Error::Grid(format!("need at least {MIN_GRID_N} points, got {n}")));
        }
        if !(eps > 0.0 && eps < REFINE_ZONE) {
            return Err(Error::Grid(format!("margin must lie in (0, {REFINE_ZONE}), got {eps}")));
        }
        let points = match spacing {
            Spacing::Uniform => linspace(eps, 1.0 - eps, n),
            Spacing::Refined => refined(n, eps),
        };
        if !points.windows(2).all(|w| w[0] < w[1]) || points[0] <= 0.0 || points[n - 1] >= 1.0 {
            return Err(Error::Grid("points are not strictly increasing inside (0, 1)".into()));
        }
        Ok(Self { points, spec })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn spec(&self) -> GridSpec {
        self.spec
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

impl Default for Grid {
    fn default() -> Self {
        Grid::new(GridSpec::default()).expect("default grid spec is valid")
    }
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    let step = (b - a) / (n - 1) as f64;
    (0..n)
        .map(|i| if i == n - 1 { b } else { a + step * i as f64 })
        .collect()
}

fn refined(n: usize, eps: f64) -> Vec<f64> {
    let k = ENDPOINT_POINTS.min(n / 10).max(1);
    let middle = n - 2 * k;
    // Geometric offsets eps, ..., strictly below REFINE_ZONE.
    let ratio = (REFINE_ZONE / eps).powf(1.0 / k as f64);
    let offsets: Vec<f64> = (0..k).map(|i| eps * ratio.powi(i as i32)).collect();
    let mut points = Vec::with_capacity(n);
    points.extend(offsets.iter().copied());
    points.extend(linspace(REFINE_ZONE, 1.0 - REFINE_ZONE, middle));
    points.extend(offsets.iter().rev().map(|d| 1.0 - d));
    points
}
