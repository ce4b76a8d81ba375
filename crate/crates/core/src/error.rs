use thiserror::Error;

use crate::matrix::Diagnostics;

/// Errors raised by the library. Numeric payloads are reported as `f64`
/// regardless of the scalar type used for the computation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max |A - A†| = {deviation:e})")]
    NonHermitian { deviation: f64 },

    #[error("not a density matrix: {0}")]
    InvalidState(Diagnostics),

    #[error("matrix is not unitary (max |U†U - I| = {deviation:e})")]
    NotUnitary { deviation: f64 },

    #[error("unphysical X-state parameters: x = {x:e} (H = {h_cal:e}), y = {y:e} (G = {g_cal:e})")]
    Unphysical { x: f64, y: f64, h_cal: f64, g_cal: f64 },

    #[error("matrix is not of X-form (largest off-X entry {max_off:e} > tol {tol:e})")]
    NotXForm { max_off: f64, tol: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("point (p = {p}, c = {c}) lies outside the concurrence-purity diagram (c_max = {c_max})")]
    OutOfDiagram { p: f64, c: f64, c_max: f64 },

    #[error("trace distance {distance} exceeds the 1/3 validity regime")]
    OutOfRegime { distance: f64 },

    #[error("state is already separable")]
    AlreadySeparable,

    #[error("target {target} outside the reachable range [0, {max}]")]
    TargetOutOfRange { target: f64, max: f64 },

    #[error("disentangling solution does not belong to these parameters: {0}")]
    BranchMismatch(String),

    #[error("could not satisfy constraint {0} after {1} attempts")]
    ConstraintInfeasible(String, usize),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
