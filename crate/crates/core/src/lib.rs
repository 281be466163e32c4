//! Spectral bias of the step size in gradient descent on quadratic objectives.
//!
//! The crate is `no_std` and only needs `alloc`. Everything here is a pure
//! function of its inputs: symmetric eigendecomposition, quadratic train/test
//! objectives, gradient descent with level-set stopping, the small/big
//! learning-rate analysis and its certificate, the closed-form 2-D instance,
//! kernel ridge regression in dual coordinates and spectral-filter residuals.
//!
//! File formats, the experiment driver and the CLI live in the `stepbias`
//! companion crate.
#![no_std]
// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;
#[cfg(test)]
extern crate std;

mod error;
pub mod filters;
pub mod gd;
pub mod kernel;
pub mod linalg;
mod math;
pub mod quadratic;
pub mod regime;
pub mod spectral;
pub mod toy2d;

pub use error::{Error, Result};
pub use filters::FilterSpec;
pub use gd::{GdRun, StopStatus};
pub use kernel::{Dataset, DualMode, DualState, KernelProblem};
pub use linalg::Matrix;
pub use quadratic::{ProblemPair, QuadraticObjective};
pub use regime::{Certificate, RateRegime, RegimeKind};
pub use spectral::{Spectrum, SymmetricEigen};
pub use toy2d::ToyInstance;
