//! Two-qubit X-states: parametrization, entanglement measures, a minimal set
//! covering the concurrence-purity diagram, and the unitary construction of
//! X-state counterparts for arbitrary states.
//!
//! Everything numeric is generic over [`scalar::Real`] (`f32` or `f64`). The
//! aliases at the crate root fix the scalar to `f64`, which is what the
//! tolerances in the documentation refer to.
//!
//! ```
//! use xstate_core::{measures, minimal_set};
//!
//! let rho = minimal_set::minset_state(0.54f64, 0.4).unwrap();
//! assert!((measures::concurrence_general(&rho) - 0.4).abs() < 1e-10);
//! ```

pub mod ensemble;
pub mod error;
pub mod io;
pub mod matrix;
pub mod measures;
pub mod minimal_set;
pub mod scalar;
pub mod universality;
pub mod xstate;

pub use error::{Error, Result};
pub use measures::Measure;
pub use scalar::Real;

pub type ComplexMat4 = matrix::ComplexMat4<f64>;
pub type DensityMatrix = matrix::DensityMatrix<f64>;
pub type UnitaryMat4 = matrix::UnitaryMat4<f64>;
pub type Spectrum = matrix::Spectrum<f64>;
pub type XParams = xstate::XParams<f64>;
pub type XCoeffs = xstate::XCoeffs<f64>;
pub type CharPolyCoeffs = xstate::CharPolyCoeffs<f64>;
pub type BoundaryScalars = minimal_set::BoundaryScalars<f64>;
pub type CPPoint = minimal_set::CPPoint<f64>;
pub type DisentangleSolution = universality::DisentangleSolution<f64>;
pub type PathPoint = universality::PathPoint<f64>;
pub type Counterpart = universality::Counterpart<f64>;
pub type XAngles = universality::XAngles<f64>;

pub use xstate::RankClass;
