//! Purity and entanglement measures, in general form and in the closed forms
//! available for X-states.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::matrix::{self, singular_values4, ComplexMat4, DensityMatrix};
use crate::scalar::Real;
use crate::xstate::is_x_form;

/// Which entanglement measure a computation should track.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Measure {
    Concurrence,
    Negativity,
}

impl Measure {
    pub fn general<T: Real>(self, rho: &DensityMatrix<T>) -> T {
        match self {
            Measure::Concurrence => concurrence_general(rho),
            Measure::Negativity => negativity_general(rho),
        }
    }
}

/// Off-X magnitude accepted by the X-form closed forms.
pub fn x_form_tol<T: Real>() -> T {
    T::eig_input_tol()
}

fn require_x<T: Real>(rho: &ComplexMat4<T>) -> Result<()> {
    let tol = x_form_tol::<T>();
    if is_x_form(rho, tol) {
        Ok(())
    } else {
        Err(Error::NotXForm { max_off: crate::xstate::off_x_max(rho).as_f64(), tol: tol.as_f64() })
    }
}

/// `tr ρ²`.
pub fn purity_general<T: Real>(rho: &ComplexMat4<T>) -> T {
    rho.0.iter().flat_map(|r| r.iter()).fold(T::zero(), |s, z| s + z.norm_sqr())
}

/// `tr ρ²` from the diagonal and the two coherences only.
pub fn purity_x<T: Real>(rho: &ComplexMat4<T>) -> Result<T> {
    require_x(rho)?;
    let d = rho.diag_re();
    let two = T::lit(2.0);
    Ok(d.iter().fold(T::zero(), |s, &v| s + v * v)
        + two * (rho[(0, 3)].norm_sqr() + rho[(1, 2)].norm_sqr()))
}

/// `σ_y ⊗ σ_y` (real).
fn yy<T: Real>() -> ComplexMat4<T> {
    let (o, z) = (T::one(), T::zero());
    ComplexMat4::from_real([[z, z, z, -o], [z, z, o, z], [z, o, z, z], [-o, z, z, z]])
}

/// Wootters concurrence.
///
/// With `ρ = W W†` and `W = Φ √Λ`, the square roots of the eigenvalues of
/// `ρ ρ̃` are the singular values of `Wᵀ (σ_y⊗σ_y) W`. Taking singular values
/// avoids the non-Hermitian product and stays accurate near zero.
pub fn concurrence_general<T: Real>(rho: &DensityMatrix<T>) -> T {
    let s = rho.spectrum();
    let phi = s.eigvecs.mat();
    let w = ComplexMat4::from_fn(|i, j| phi[(i, j)] * s.values[j].max(T::zero()).sqrt());
    let tau = w.transpose() * yy() * w;
    let sv = singular_values4(&tau);
    T::zero().max(sv[0] - sv[1] - sv[2] - sv[3])
}

/// `2 max(0, |ρ32| - √(ρ11 ρ44), |ρ41| - √(ρ22 ρ33))`.
pub fn concurrence_x<T: Real>(rho: &ComplexMat4<T>) -> Result<T> {
    require_x(rho)?;
    let d = rho.diag_re().map(|v| v.max(T::zero()));
    let a = rho[(2, 1)].norm() - (d[0] * d[3]).sqrt();
    let b = rho[(3, 0)].norm() - (d[1] * d[2]).sqrt();
    Ok(T::lit(2.0) * T::zero().max(a).max(b))
}

/// Binary entropy in bits, with `h(0) = h(1) = 0`.
pub fn binary_entropy<T: Real>(p: T) -> T {
    let term = |q: T| if q <= T::zero() { T::zero() } else { -q * q.log2() };
    term(p) + term(T::one() - p)
}

/// Entanglement of formation as a function of concurrence.
pub fn eof_from_concurrence<T: Real>(c: T) -> T {
    let c = c.max(T::zero()).min(T::one());
    let half = T::lit(0.5);
    binary_entropy(half + half * (T::one() - c * c).sqrt())
}

pub fn eof<T: Real>(rho: &DensityMatrix<T>) -> T {
    eof_from_concurrence(concurrence_general(rho))
}

/// `-min(0, λ_min(ρ^{T_B}))`.
pub fn negativity_general<T: Real>(rho: &ComplexMat4<T>) -> T {
    let pt = matrix::partial_transpose(rho);
    let (vals, _) = matrix::jacobi_eigh(&pt);
    -T::zero().min(vals[3])
}

/// Negativity of an X-state from the two 2x2 blocks of its partial transpose.
///
/// The transpose swaps the coherences: `|ρ41|` lands in the `{|01>, |10>}`
/// block with diagonal `ρ22, ρ33`, and `|ρ32|` in the `{|00>, |11>}` block.
pub fn negativity_x<T: Real>(rho: &ComplexMat4<T>) -> Result<T> {
    require_x(rho)?;
    let d = rho.diag_re();
    let half = T::lit(0.5);
    let low = |a: T, b: T, off: Complex<T>| {
        let m = (a - b) * half;
        (a + b) * half - (m * m + off.norm_sqr()).sqrt()
    };
    let inner = low(d[1], d[2], rho[(3, 0)]);
    let outer = low(d[0], d[3], rho[(2, 1)]);
    Ok(-T::zero().min(inner).min(outer))
}

/// Continuity bound `8t - 2t log₂ t` on the relative entropy of entanglement
/// for states at trace distance `t = ‖ρ1 - ρ2‖₁ <= 1/3`.
pub fn fannes_ree_bound<T: Real>(rho1: &ComplexMat4<T>, rho2: &ComplexMat4<T>) -> Result<T> {
    let t = matrix::trace_norm(&(*rho1 - *rho2));
    if t > T::one() / T::lit(3.0) {
        return Err(Error::OutOfRegime { distance: t.as_f64() });
    }
    if t <= T::zero() {
        return Ok(T::zero());
    }
    let two = T::lit(2.0);
    Ok(T::lit(8.0) * t - two * t * t.log2())
}
