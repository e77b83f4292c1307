//! Log-Lindley lifetimes, parallel systems built from them, and numerical
//! checks of the stochastic orders between such systems.
//!
//! ```
//! use llorder::{LLParams, ParallelSystem};
//!
//! let p = LLParams::new(1.0, 0.0).unwrap();
//! assert!((p.pdf(0.5).unwrap() - std::f64::consts::LN_2).abs() < 1e-15);
//!
//! let sys = ParallelSystem::new(vec![p; 2]).unwrap();
//! assert!((sys.cdf(0.5).unwrap() - p.cdf(0.5).unwrap().powi(2)).abs() < 1e-15);
//! ```

pub mod cli;
pub mod error;
pub mod loglindley;
pub mod majorization;
pub mod numerics;
pub mod parallel;
pub mod stochorder;

pub use error::{Error, Result};
pub use loglindley::LLParams;
pub use majorization::{majorizes, order_class, MajorizedPair, OrderClass, ParamVector};
pub use parallel::{OutlierSpec, ParallelSystem};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/distribution.md")]
    mod distribution {}
    #[doc = include_str!("../../../book/src/parallel.md")]
    mod parallel {}
    #[doc = include_str!("../../../book/src/majorization.md")]
    mod majorization {}
    #[doc = include_str!("../../../book/src/orders.md")]
    mod orders {}
    #[doc = include_str!("../../../book/src/theorems.md")]
    mod theorems {}
    #[doc = include_str!("../../../book/src/counterexamples.md")]
    mod counterexamples {}
}
