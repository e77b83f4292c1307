//! The log-Lindley distribution `LL(σ, λ)` on the unit interval.
//!
//! Density `σ²(λ - ln x) x^(σ-1) / (1 + λσ)` for `0 < x < 1`, with shape
//! `σ > 0` and scale `λ ≥ 0`. Every evaluation goes through the substitution
//! `u = -ln x`, which keeps the distribution function accurate at both ends of
//! the support.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::ln1p_minus;

/// Iteration cap for quantile bisection.
pub const QUANTILE_MAX_ITER: usize = 200;
/// Largest acceptable `|cdf(x) - q|` for a returned quantile.
pub const QUANTILE_TOL: f64 = 1e-12;
/// Hazard values above this are reported as a range error.
pub const HAZARD_MAX: f64 = 1e300;

/// Shape and scale of one log-Lindley component.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams")]
pub struct LLParams {
    sigma: f64,
    lambda: f64,
}

#[derive(Deserialize)]
struct RawParams {
    sigma: f64,
    lambda: f64,
}

impl TryFrom<RawParams> for LLParams {
    type Error = Error;

    fn try_from(raw: RawParams) -> Result<Self> {
        LLParams::new(raw.sigma, raw.lambda)
    }
}

impl LLParams {
    pub fn new(sigma: f64, lambda: f64) -> Result<Self> {
        if !sigma.is_finite() || sigma <= 0.0 {
            return Err(Error::InvalidParameter {
                name: "sigma",
                reason: format!("must be finite and > 0 (σ>0), got {sigma}"),
            });
        }
        if !lambda.is_finite() || lambda < 0.0 {
            return Err(Error::InvalidParameter {
                name: "lambda",
                reason: format!("must be finite and >= 0 (λ≥0), got {lambda}"),
            });
        }
        Ok(Self { sigma, lambda })
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Probability density at `x ∈ (0, 1)`.
    pub fn pdf(&self, x: f64) -> Result<f64> {
        Ok(self.ln_pdf(x)?.exp())
    }

    pub fn ln_pdf(&self, x: f64) -> Result<f64> {
        let u = open_unit("pdf", x)?;
        let (s, l) = (self.sigma, self.lambda);
        Ok(2.0 * s.ln() + (l + u).ln() - (s - 1.0) * u - (l * s).ln_1p())
    }

    /// Distribution function on the closed interval `[0, 1]`.
    pub fn cdf(&self, x: f64) -> Result<f64> {
        Ok(self.ln_cdf(x)?.exp())
    }

    /// `ln F(x)`; `-inf` at `x = 0`.
    ///
    /// With `w = σu / (1 + λσ)` the distribution function is
    /// `e^{-σu} (1 + w)`, so `ln F = (ln(1 + w) - w) - λσ w`. Both terms are
    /// nonpositive and neither cancels against the other.
    pub fn ln_cdf(&self, x: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::Domain {
                func: "cdf",
                value: x,
                domain: "[0, 1]",
            });
        }
        if x == 0.0 {
            return Ok(f64::NEG_INFINITY);
        }
        let u = -x.ln();
        let ls = self.lambda * self.sigma;
        let w = self.sigma * u / (1.0 + ls);
        Ok(ln1p_minus(w) - ls * w)
    }

    /// Survival function `1 - F(x)`, computed without cancellation near 1.
    pub fn survival(&self, x: f64) -> Result<f64> {
        Ok(-self.ln_cdf(x)?.exp_m1())
    }

    /// Reversed hazard rate `f(x) / F(x)`.
    pub fn rhr(&self, x: f64) -> Result<f64> {
        let u = open_unit("rhr", x)?;
        let a = self.sigma * (self.lambda + u);
        Ok(self.sigma / x * (a / (1.0 + a)))
    }

    /// Hazard rate `f(x) / (1 - F(x))`.
    pub fn hazard(&self, x: f64) -> Result<f64> {
        open_unit("hazard", x)?;
        let surv = self.survival(x)?;
        let h = self.pdf(x)? / surv;
        if !h.is_finite() || h > HAZARD_MAX {
            return Err(Error::Range { func: "hazard", x });
        }
        Ok(h)
    }

    /// Inverse of [`cdf`](Self::cdf) by bisection.
    pub fn quantile(&self, q: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&q) {
            return Err(Error::Domain {
                func: "quantile",
                value: q,
                domain: "[0, 1]",
            });
        }
        if q == 0.0 {
            return Ok(0.0);
        }
        if q == 1.0 {
            return Ok(1.0);
        }
        let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
        let mut iterations = 0;
        while iterations < QUANTILE_MAX_ITER {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            iterations += 1;
            let r = self.cdf(mid)? - q;
            if r == 0.0 {
                return Ok(mid);
            }
            if r < 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let r_lo = (self.cdf(lo)? - q).abs();
        let r_hi = (self.cdf(hi)? - q).abs();
        let (x, residual) = if r_lo <= r_hi { (lo, r_lo) } else { (hi, r_hi) };
        if residual > QUANTILE_TOL {
            return Err(Error::Convergence {
                q,
                iterations,
                residual,
            });
        }
        Ok(x)
    }

    /// Inverse-transform draws using the caller's generator.
    pub fn sample_with<R: Rng + ?Sized>(&self, n: usize, rng: &mut R) -> Result<Vec<f64>> {
        if n == 0 {
            return Err(Error::InvalidParameter {
                name: "n",
                reason: "sample size must be >= 1".into(),
            });
        }
        (0..n)
            .map(|_| {
                let u = open_uniform(rng);
                self.quantile(u)
            })
            .collect()
    }

    /// `n` draws from a ChaCha8 stream seeded with `seed`.
    pub fn sample(&self, n: usize, seed: u64) -> Result<Vec<f64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.sample_with(n, &mut rng)
    }
}

/// Uniform draw on the open interval (0, 1).
pub(crate) fn open_uniform<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    loop {
        let u: f64 = rng.random();
        if u > 0.0 {
            return u;
        }
    }
}

/// Checks `0 < x < 1` and returns `-ln x`.
pub(crate) fn open_unit(func: &'static str, x: f64) -> Result<f64> {
    if x > 0.0 && x < 1.0 {
        Ok(-x.ln())
    } else {
        Err(Error::Domain {
            func,
            value: x,
            domain: "(0, 1)",
        })
    }
}
