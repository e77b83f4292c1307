//! Majorization, the ordered cones `D₊`/`E₊`, and pointwise Schur-condition
//! checks for separable functions `φ(x) = Σ g_i(x_i)`.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Slack allowed on each prefix-sum inequality.
pub const PREFIX_SLACK: f64 = 1e-12;
/// Relative tolerance for the equal-total condition (scaled by `n · max|v|`).
pub const SUM_REL_TOL: f64 = 1e-12;

/// Ordering class of a vector.
///
/// `DPlus` is `x₁ ≥ … ≥ x_n > 0`, `EPlus` is `0 < x₁ ≤ … ≤ x_n`, `Both` is a
/// constant positive vector, and everything else is `Neither`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrderClass {
    DPlus,
    EPlus,
    Both,
    Neither,
}

impl OrderClass {
    /// True when a vector of class `self` lies in the cone `target`.
    pub fn is_in(self, target: OrderClass) -> bool {
        match target {
            OrderClass::DPlus => matches!(self, OrderClass::DPlus | OrderClass::Both),
            OrderClass::EPlus => matches!(self, OrderClass::EPlus | OrderClass::Both),
            OrderClass::Both => self == OrderClass::Both,
            OrderClass::Neither => true,
        }
    }

    /// The opposite cone (`D₊ ↔ E₊`).
    pub fn flipped(self) -> OrderClass {
        match self {
            OrderClass::DPlus => OrderClass::EPlus,
            OrderClass::EPlus => OrderClass::DPlus,
            other => other,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            OrderClass::DPlus => "D+",
            OrderClass::EPlus => "E+",
            OrderClass::Both => "D+ and E+",
            OrderClass::Neither => "neither",
        }
    }

    /// Sorts `v` into this class's arrangement (descending for `D₊`).
    fn arrange(self, v: &mut [f64]) {
        match self {
            OrderClass::DPlus => v.sort_by(|a, b| b.total_cmp(a)),
            _ => v.sort_by(|a, b| a.total_cmp(b)),
        }
    }
}

impl fmt::Display for OrderClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub fn order_class(x: &[f64]) -> OrderClass {
    if x.is_empty() || !x.iter().all(|&v| v > 0.0 && v.is_finite()) {
        return OrderClass::Neither;
    }
    let dec = x.windows(2).all(|w| w[0] >= w[1]);
    let inc = x.windows(2).all(|w| w[0] <= w[1]);
    match (dec, inc) {
        (true, true) => OrderClass::Both,
        (true, false) => OrderClass::DPlus,
        (false, true) => OrderClass::EPlus,
        (false, false) => OrderClass::Neither,
    }
}

/// A vector together with its recomputed ordering class.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ParamVector {
    values: Vec<f64>,
    class: OrderClass,
}

impl ParamVector {
    pub fn new(values: Vec<f64>) -> Self {
        let class = order_class(&values);
        Self { values, class }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn class(&self) -> OrderClass {
        self.class
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }
}

/// `major ≽ᵐ minor`, both in a common class.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MajorizedPair {
    pub major: ParamVector,
    pub minor: ParamVector,
}

/// `x ≽ᵐ y`: with both sorted increasingly, every partial sum of `x` is at
/// most the matching partial sum of `y`, and the totals agree.
pub fn majorizes(x: &[f64], y: &[f64]) -> Result<bool> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    if x.is_empty() {
        return Err(Error::InvalidParameter {
            name: "x",
            reason: "majorization needs n >= 1".into(),
        });
    }
    let mut xs = x.to_vec();
    let mut ys = y.to_vec();
    xs.sort_by(f64::total_cmp);
    ys.sort_by(f64::total_cmp);
    let scale = xs
        .iter()
        .chain(&ys)
        .fold(0.0_f64, |m, v| m.max(v.abs()))
        .max(f64::MIN_POSITIVE);
    let n = xs.len();
    let (mut sx, mut sy) = (0.0, 0.0);
    for j in 0..n - 1 {
        sx += xs[j];
        sy += ys[j];
        if sx > sy + PREFIX_SLACK * scale {
            return Ok(false);
        }
    }
    sx += xs[n - 1];
    sy += ys[n - 1];
    Ok((sx - sy).abs() <= SUM_REL_TOL * n as f64 * scale)
}

/// Bounded retries for [`random_majorized_pair`].
pub const GENERATOR_MAX_ATTEMPTS: usize = 1000;

/// Draws a distinct pair `major ≽ᵐ minor`, both in `class`, with every entry
/// inside `(lo, hi)`.
///
/// The minor vector is uniform on the box; the major vector is obtained from
/// it by one to three transfers moving mass from a smaller entry to a larger
/// one. Both are then arranged in the class order.
pub fn random_majorized_pair<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    class: OrderClass,
    range: (f64, f64),
) -> Result<MajorizedPair> {
    let (lo, hi) = range;
    if n < 2 {
        return Err(Error::InvalidParameter {
            name: "n",
            reason: format!("need n >= 2 for a distinct majorized pair, got {n}"),
        });
    }
    if !(lo > 0.0 && hi > lo && hi.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "range",
            reason: format!("need 0 < lo < hi, got ({lo}, {hi})"),
        });
    }
    if !matches!(class, OrderClass::DPlus | OrderClass::EPlus) {
        return Err(Error::Generation {
            attempts: 0,
            constraint: format!("class {class} admits no distinct majorized pair"),
        });
    }

    let mut last_reject = "";
    for _ in 0..GENERATOR_MAX_ATTEMPTS {
        let mut minor: Vec<f64> = (0..n).map(|_| rng.random_range(lo..hi)).collect();
        let mut major = minor.clone();
        let transfers = rng.random_range(1..=3);
        for _ in 0..transfers {
            let i = rng.random_range(0..n);
            let mut j = rng.random_range(0..n - 1);
            if j >= i {
                j += 1;
            }
            // Move from the smaller entry to the larger one.
            let (from, to) = if major[i] <= major[j] { (i, j) } else { (j, i) };
            let room = (major[from] - lo).min(hi - major[to]);
            if room <= 0.0 {
                continue;
            }
            let delta = rng.random_range(0.0..1.0) * room;
            major[from] -= delta;
            major[to] += delta;
        }
        class.arrange(&mut major);
        class.arrange(&mut minor);
        if major == minor {
            last_reject = "major != minor";
            continue;
        }
        if !major.iter().chain(&minor).all(|&v| v > lo && v < hi) {
            last_reject = "entries inside (lo, hi)";
            continue;
        }
        let major = ParamVector::new(major);
        let minor = ParamVector::new(minor);
        if !major.class().is_in(class) || !minor.class().is_in(class) {
            last_reject = "class membership";
            continue;
        }
        if !majorizes(major.values(), minor.values())? {
            last_reject = "major majorizes minor";
            continue;
        }
        return Ok(MajorizedPair { major, minor });
    }
    Err(Error::Generation {
        attempts: GENERATOR_MAX_ATTEMPTS,
        constraint: last_reject.to_string(),
    })
}

/// Which side of the Schur inequality to test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Schur {
    Convex,
    Concave,
}

/// Pointwise form of the separable Schur conditions at `point`.
///
/// `deriv(i, t)` evaluates `g_i'(t)`. On `D₊` the convex condition is
/// `g_i'(x_i) ≥ g_{i+1}'(x_{i+1})`; on `E₊` it is
/// `g_{i+1}'(x_{i+1}) ≥ g_i'(x_i)`. The concave condition reverses each.
/// A constant point belongs to both cones and is checked against `class`.
pub fn check_schur_condition<F>(deriv: F, point: &[f64], class: OrderClass, kind: Schur) -> Result<bool>
where
    F: Fn(usize, f64) -> f64,
{
    let found = order_class(point);
    if !matches!(class, OrderClass::DPlus | OrderClass::EPlus) || !found.is_in(class) {
        return Err(Error::ClassMismatch {
            expected: class.name(),
            found: found.name(),
        });
    }
    let d: Vec<f64> = point.iter().enumerate().map(|(i, &t)| deriv(i, t)).collect();
    let ok = d.windows(2).all(|w| {
        let (lead, next) = (w[0], w[1]);
        // "bigger" should dominate "smaller" for the convex D₊ case.
        let (big, small) = match (class, kind) {
            (OrderClass::DPlus, Schur::Convex) | (OrderClass::EPlus, Schur::Concave) => (lead, next),
            _ => (next, lead),
        };
        big >= small - 1e-12 * big.abs().max(small.abs())
    });
    Ok(ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn published_majorizations() {
        assert!(majorizes(&[1.0, 1.0, 5.0], &[1.0, 2.0, 4.0]).unwrap());
        assert!(majorizes(&[0.1, 0.3, 4.1], &[0.2, 0.3, 4.0]).unwrap());
        assert!(!majorizes(&[1.0, 2.0, 4.0], &[1.0, 1.0, 5.0]).unwrap());
        let x = [3.0, 0.5, 2.0];
        assert!(majorizes(&x, &x).unwrap());
    }

    #[test]
    fn unequal_totals_or_lengths() {
        assert!(!majorizes(&[1.0, 5.0], &[2.0, 3.0]).unwrap());
        assert!(majorizes(&[1.0], &[1.0, 2.0]).is_err());
        assert!(majorizes(&[], &[]).is_err());
    }

    #[test]
    fn classes() {
        assert_eq!(order_class(&[4.0, 3.0, 0.2]), OrderClass::DPlus);
        assert_eq!(order_class(&[1.0, 2.0, 4.0]), OrderClass::EPlus);
        assert_eq!(order_class(&[2.0, 2.0, 2.0]), OrderClass::Both);
        assert_eq!(order_class(&[1.0, 3.0, 2.0]), OrderClass::Neither);
        assert_eq!(order_class(&[1.0, 0.0]), OrderClass::Neither);
        assert_eq!(order_class(&[0.0, 0.0]), OrderClass::Neither);
        assert_eq!(order_class(&[5.0]), OrderClass::Both);
        assert!(OrderClass::Both.is_in(OrderClass::DPlus));
        assert!(!OrderClass::EPlus.is_in(OrderClass::DPlus));
    }

    #[test]
    fn param_vector_recomputes_class() {
        assert_eq!(ParamVector::new(vec![1.0, 1.0, 5.0]).class(), OrderClass::EPlus);
    }

    #[test]
    fn generator_postconditions() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for class in [OrderClass::DPlus, OrderClass::EPlus] {
            for n in [2, 3, 5] {
                for _ in 0..200 {
                    let p = random_majorized_pair(&mut rng, n, class, (0.5, 5.0)).unwrap();
                    assert!(majorizes(p.major.values(), p.minor.values()).unwrap());
                    assert!(p.major.class().is_in(class));
                    assert!(p.minor.class().is_in(class));
                    assert_ne!(p.major.values(), p.minor.values());
                }
            }
        }
    }

    #[test]
    fn generator_rejects_bad_requests() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(random_majorized_pair(&mut rng, 1, OrderClass::DPlus, (0.5, 5.0)).is_err());
        assert!(random_majorized_pair(&mut rng, 3, OrderClass::DPlus, (5.0, 0.5)).is_err());
        assert!(matches!(
            random_majorized_pair(&mut rng, 3, OrderClass::Both, (0.5, 5.0)),
            Err(Error::Generation { .. })
        ));
    }

    #[test]
    fn constant_derivatives_satisfy_everything() {
        for class in [OrderClass::DPlus, OrderClass::EPlus] {
            for kind in [Schur::Convex, Schur::Concave] {
                assert!(check_schur_condition(|_, _| 1.0, &[2.0, 2.0, 2.0], class, kind).unwrap());
            }
        }
        assert!(check_schur_condition(|_, _| 1.0, &[3.0, 2.0, 1.0], OrderClass::DPlus, Schur::Convex).unwrap());
        assert!(check_schur_condition(|_, _| 1.0, &[1.0, 2.0, 3.0], OrderClass::EPlus, Schur::Convex).unwrap());
    }

    #[test]
    fn schur_class_mismatch() {
        let r = check_schur_condition(|_, _| 1.0, &[1.0, 3.0, 2.0], OrderClass::DPlus, Schur::Convex);
        assert!(matches!(r, Err(Error::ClassMismatch { .. })));
    }

    #[test]
    fn shape_summands_at_published_instance() {
        // g_i'(t) = (1/x)(1 - (1 + t(λ_i - ln x))^-2), λ = (3,2,1), point σ = (3,2,1).
        let lambda = [3.0, 2.0, 1.0];
        let x: f64 = 0.5;
        let u = -x.ln();
        let g = |i: usize, t: f64| (1.0 - (1.0 + t * (lambda[i] + u)).powi(-2)) / x;
        // Hand comparison of adjacent derivatives.
        let d: Vec<f64> = [3.0, 2.0, 1.0].iter().enumerate().map(|(i, &t)| g(i, t)).collect();
        assert!(d[0] >= d[1] && d[1] >= d[2]);
        assert!(check_schur_condition(g, &[3.0, 2.0, 1.0], OrderClass::DPlus, Schur::Convex).unwrap());
    }
}
