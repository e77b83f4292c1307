//! Lifetime of a parallel system: the largest of `n` independent log-Lindley
//! component lifetimes.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::loglindley::{open_unit, LLParams};

/// An ordered, nonempty list of independent components.
///
/// Serialized as a JSON array of `{"sigma": .., "lambda": ..}` objects. Order
/// is significant: theorem hypotheses pair shape and scale by index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<LLParams>", into = "Vec<LLParams>")]
pub struct ParallelSystem {
    components: Vec<LLParams>,
}

impl TryFrom<Vec<LLParams>> for ParallelSystem {
    type Error = Error;

    fn try_from(components: Vec<LLParams>) -> Result<Self> {
        ParallelSystem::new(components)
    }
}

impl From<ParallelSystem> for Vec<LLParams> {
    fn from(s: ParallelSystem) -> Self {
        s.components
    }
}

/// Two-block system: `n1` copies of `base` followed by `n2` copies of `outlier`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OutlierSpec {
    pub n1: usize,
    pub n2: usize,
    pub base: LLParams,
    pub outlier: LLParams,
}

impl ParallelSystem {
    pub fn new(components: Vec<LLParams>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::InvalidParameter {
                name: "components",
                reason: "a parallel system needs at least one component".into(),
            });
        }
        Ok(Self { components })
    }

    /// Builds a system from matching shape and scale vectors.
    pub fn from_vectors(sigmas: &[f64], lambdas: &[f64]) -> Result<Self> {
        if sigmas.len() != lambdas.len() {
            return Err(Error::LengthMismatch {
                left: sigmas.len(),
                right: lambdas.len(),
            });
        }
        let components = sigmas
            .iter()
            .zip(lambdas)
            .map(|(&s, &l)| LLParams::new(s, l))
            .collect::<Result<Vec<_>>>()?;
        Self::new(components)
    }

    pub fn from_outlier(spec: OutlierSpec) -> Result<Self> {
        if spec.n1 == 0 || spec.n2 == 0 {
            return Err(Error::InvalidParameter {
                name: "n1/n2",
                reason: format!("both block sizes must be >= 1, got {} and {}", spec.n1, spec.n2),
            });
        }
        let mut components = vec![spec.base; spec.n1];
        components.extend(std::iter::repeat_n(spec.outlier, spec.n2));
        Self::new(components)
    }

    pub fn components(&self) -> &[LLParams] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn shapes(&self) -> Vec<f64> {
        self.components.iter().map(LLParams::sigma).collect()
    }

    pub fn scales(&self) -> Vec<f64> {
        self.components.iter().map(LLParams::lambda).collect()
    }

    /// `ln F_{n:n}(x)`, the sum of component log-cdfs.
    pub fn ln_cdf(&self, x: f64) -> Result<f64> {
        self.components.iter().map(|c| c.ln_cdf(x)).sum()
    }

    pub fn cdf(&self, x: f64) -> Result<f64> {
        Ok(self.ln_cdf(x)?.exp())
    }

    pub fn survival(&self, x: f64) -> Result<f64> {
        Ok(-self.ln_cdf(x)?.exp_m1())
    }

    /// Reversed hazard rate of the maximum: the sum of component rates.
    pub fn rhr(&self, x: f64) -> Result<f64> {
        open_unit("system_rhr", x)?;
        self.components.iter().map(|c| c.rhr(x)).sum()
    }

    /// Density of the maximum, `F_{n:n}(x) · r_{n:n}(x)`.
    pub fn pdf(&self, x: f64) -> Result<f64> {
        Ok(self.ln_pdf(x)?.exp())
    }

    pub fn ln_pdf(&self, x: f64) -> Result<f64> {
        let r = self.rhr(x)?;
        Ok(self.ln_cdf(x)? + r.ln())
    }

    pub fn hazard(&self, x: f64) -> Result<f64> {
        open_unit("system_hazard", x)?;
        let h = self.pdf(x)? / self.survival(x)?;
        if !h.is_finite() {
            return Err(Error::Range {
                func: "system_hazard",
                x,
            });
        }
        Ok(h)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ll(s: f64, l: f64) -> LLParams {
        LLParams::new(s, l).unwrap()
    }

    fn ce31_x() -> ParallelSystem {
        ParallelSystem::from_vectors(&[1.0, 1.0, 5.0], &[4.0, 3.0, 0.2]).unwrap()
    }

    #[test]
    fn empty_system_rejected() {
        assert!(ParallelSystem::new(vec![]).is_err());
        assert!(serde_json::from_str::<ParallelSystem>("[]").is_err());
        assert!(ParallelSystem::from_vectors(&[1.0], &[1.0, 2.0]).is_err());
    }

    #[test]
    fn json_schema_round_trip() {
        let s: ParallelSystem =
            serde_json::from_str(r#"[{"sigma": 1, "lambda": 4}, {"sigma": 5, "lambda": 0.2}]"#)
                .unwrap();
        assert_eq!(s.shapes(), vec![1.0, 5.0]);
        assert_eq!(s.scales(), vec![4.0, 0.2]);
        let text = serde_json::to_string(&s).unwrap();
        assert_eq!(serde_json::from_str::<ParallelSystem>(&text).unwrap(), s);
        assert!(serde_json::from_str::<ParallelSystem>(r#"[{"sigma": -1, "lambda": 4}]"#).is_err());
    }

    #[test]
    fn single_component_reduces_to_distribution() {
        let c = ll(2.0, 1.0);
        let s = ParallelSystem::new(vec![c]).unwrap();
        for x in [0.01, 0.3, 0.5, 0.97] {
            assert!((s.cdf(x).unwrap() - c.cdf(x).unwrap()).abs() < 1e-15);
            assert!((s.rhr(x).unwrap() - c.rhr(x).unwrap()).abs() < 1e-15);
            assert!((s.pdf(x).unwrap() - c.pdf(x).unwrap()).abs() < 1e-13);
        }
    }

    #[test]
    fn iid_product() {
        let c = ll(1.5, 0.7);
        let s = ParallelSystem::new(vec![c; 3]).unwrap();
        for x in [0.1, 0.5, 0.9] {
            let f = c.cdf(x).unwrap();
            assert!((s.cdf(x).unwrap() / f.powi(3) - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn ce31_cdf_is_product_of_factors() {
        let s = ce31_x();
        let expected: f64 = s.components().iter().map(|c| c.cdf(0.5).unwrap()).product();
        assert!((s.cdf(0.5).unwrap() / expected - 1.0).abs() < 1e-14);
    }

    #[test]
    fn rhr_is_additive_and_log_derivative() {
        let s = ce31_x();
        let x = 0.3;
        let sum: f64 = s.components().iter().map(|c| c.rhr(x).unwrap()).sum();
        assert_eq!(s.rhr(x).unwrap(), sum);
        let h = 1e-6 * x;
        let fd = (s.ln_cdf(x + h).unwrap() - s.ln_cdf(x - h).unwrap()) / (2.0 * h);
        assert!((fd - s.rhr(x).unwrap()).abs() < 1e-6 * s.rhr(x).unwrap().max(1.0));
    }

    #[test]
    fn iid_pair_density_closed_form() {
        let s = ParallelSystem::new(vec![ll(1.0, 0.0); 2]).unwrap();
        for x in [0.05_f64, 0.4, 0.8] {
            let lx = x.ln();
            let expected = 2.0 * x * (1.0 - lx) * (-lx);
            assert!((s.pdf(x).unwrap() - expected).abs() < 1e-14);
        }
    }

    #[test]
    fn outlier_construction() {
        let spec = OutlierSpec {
            n1: 2,
            n2: 1,
            base: ll(4.0, 1.0),
            outlier: ll(1.0, 0.5),
        };
        let s = ParallelSystem::from_outlier(spec).unwrap();
        assert_eq!(s.components(), &[ll(4.0, 1.0), ll(4.0, 1.0), ll(1.0, 0.5)]);
        let s = ParallelSystem::from_outlier(OutlierSpec { n1: 2, n2: 2, ..spec }).unwrap();
        assert_eq!(s.shapes(), vec![4.0, 4.0, 1.0, 1.0]);
        let same = ParallelSystem::from_outlier(OutlierSpec {
            n1: 1,
            n2: 1,
            base: ll(2.0, 2.0),
            outlier: ll(2.0, 2.0),
        })
        .unwrap();
        assert_eq!(same.components(), &[ll(2.0, 2.0); 2]);
        assert!(ParallelSystem::from_outlier(OutlierSpec { n1: 0, ..spec }).is_err());
    }

    #[test]
    fn domain_errors() {
        let s = ce31_x();
        assert!(s.cdf(-0.1).is_err());
        assert!(s.rhr(0.0).is_err());
        assert!(s.pdf(1.0).is_err());
        assert_eq!(s.cdf(1.0).unwrap(), 1.0);
    }
}
