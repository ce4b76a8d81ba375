//! Scalar abstraction shared by every numeric routine in the crate.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};

/// Real floating-point scalar: `f32` or `f64`.
///
/// Besides the arithmetic bounds, each implementation carries the default
/// numerical tolerances used for validating states. The `f64` values are the
/// reference ones; the `f32` values are scaled to single precision.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Debug
    + Display
    + Default
    + Send
    + Sync
    + 'static
{
    /// Maximum entrywise deviation from Hermiticity accepted for a density matrix.
    fn hermitian_tol() -> Self;
    /// Maximum deviation of the trace from one.
    fn trace_tol() -> Self;
    /// Hermiticity slack accepted on input to the eigensolver.
    fn eig_input_tol() -> Self;
    /// Most negative eigenvalue still accepted as positive semidefinite.
    fn psd_tol() -> Self;
    /// Unitarity tolerance on `max|U†U - I|`.
    fn unitary_tol() -> Self;
    /// Slack used by parameter-space inequalities (`x <= H`, `x <= min(G, H)`).
    fn param_slack() -> Self;
    /// Noise floor below which a negative radicand is treated as zero.
    fn sqrt_clamp() -> Self;

    /// Converts an `f64` literal. Panics only if the literal is not representable,
    /// which cannot happen for the finite constants used in this crate.
    #[inline]
    fn lit(v: f64) -> Self {
        Self::from_f64(v).expect("finite literal")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// `sqrt(max(v, 0))` for values above `-sqrt_clamp()`; NaN below.
    #[inline]
    fn clamped_sqrt(self) -> Self {
        if self >= Self::zero() {
            self.sqrt()
        } else if self >= -Self::sqrt_clamp() {
            Self::zero()
        } else {
            Self::nan()
        }
    }
}

impl Real for f64 {
    fn hermitian_tol() -> Self {
        1e-12
    }
    fn trace_tol() -> Self {
        1e-12
    }
    fn eig_input_tol() -> Self {
        1e-10
    }
    fn psd_tol() -> Self {
        1e-10
    }
    fn unitary_tol() -> Self {
        1e-10
    }
    fn param_slack() -> Self {
        1e-12
    }
    fn sqrt_clamp() -> Self {
        1e-12
    }
}

impl Real for f32 {
    fn hermitian_tol() -> Self {
        1e-5
    }
    fn trace_tol() -> Self {
        1e-5
    }
    fn eig_input_tol() -> Self {
        1e-4
    }
    fn psd_tol() -> Self {
        1e-4
    }
    fn unitary_tol() -> Self {
        1e-4
    }
    fn param_slack() -> Self {
        1e-5
    }
    fn sqrt_clamp() -> Self {
        1e-5
    }
}

/// Sign function with `sgn(0) = 0`.
#[inline]
pub fn sgn<T: Real>(v: T) -> T {
    if v > T::zero() {
        T::one()
    } else if v < T::zero() {
        -T::one()
    } else {
        T::zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clamped_sqrt_absorbs_noise_only() {
        assert_eq!((-1e-14f64).clamped_sqrt(), 0.0);
        assert!((-1e-6f64).clamped_sqrt().is_nan());
        assert_eq!(4.0f64.clamped_sqrt(), 2.0);
        assert_eq!((-1e-7f32).clamped_sqrt(), 0.0);
    }

    #[test]
    fn sign_function() {
        assert_eq!(sgn(0.0f64), 0.0);
        assert_eq!(sgn(-3.0f64), -1.0);
        assert_eq!(sgn(2.0f32), 1.0);
    }
}
