//! Mapping arbitrary two-qubit states onto X-states with the same spectrum
//! and the same concurrence or negativity.
//!
//! The route has two legs. A fixed unitary takes the eigenbasis of `ρ` to the
//! maximally entangled X-state of that spectrum. A block-diagonal unitary
//! `V(b)` then rotates within the `{|00>, |11>}` and `{|01>, |10>}` blocks,
//! which keeps the X shape and lowers the entanglement continuously to zero
//! as its rotation angles are scaled by `τ ∈ [0, 1]`.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::matrix::{ComplexMat4, DensityMatrix, Spectrum, UnitaryMat4};
use crate::measures::Measure;
use crate::scalar::{sgn, Real};
use crate::xstate::{negativity_from_blocks, XCoeffs, XParams};

/// Rotation angle and phase of each block of `V(b)`: `b1, b2` act on the
/// outer block `{|00>, |11>}`, `b3, b4` on the inner block `{|01>, |10>}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct XAngles<T> {
    pub b1: T,
    pub b2: T,
    pub b3: T,
    pub b4: T,
}

impl<T: Real> XAngles<T> {
    pub fn zero() -> Self {
        XAngles { b1: T::zero(), b2: T::zero(), b3: T::zero(), b4: T::zero() }
    }

    /// Rotation angles scaled by `tau`; phases kept.
    pub fn scaled(&self, tau: T) -> Self {
        XAngles { b1: self.b1 * tau, b3: self.b3 * tau, ..*self }
    }
}

/// Which coherence the disentangling rotation reduces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    /// `H > G`: outer coherence `x` brought down to `G`.
    HgtG,
    /// `G > H`: inner coherence `y` brought down to `H`.
    GgtH,
    /// `H > G` with equal outer diagonal entries.
    HZero,
    /// `G > H` with equal inner diagonal entries.
    GZero,
    AlreadySeparable,
}

impl Branch {
    pub fn reduces_outer(self) -> bool {
        matches!(self, Branch::HgtG | Branch::HZero)
    }

    pub fn reduces_inner(self) -> bool {
        matches!(self, Branch::GgtH | Branch::GZero)
    }
}

/// Angles of the block rotation that makes an entangled X-state separable,
/// with the intermediate quantities of the closed-form solution.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DisentangleSolution<T> {
    pub b1: T,
    pub b2: T,
    pub b3: T,
    pub b4: T,
    pub x_plus: T,
    pub x_minus: T,
    pub z_minus: T,
    pub s_tilde: i8,
    pub branch: Branch,
}

impl<T: Real> DisentangleSolution<T> {
    pub fn angles(&self) -> XAngles<T> {
        XAngles { b1: self.b1, b2: self.b2, b3: self.b3, b4: self.b4 }
    }

    fn identity() -> Self {
        DisentangleSolution {
            b1: T::zero(),
            b2: T::zero(),
            b3: T::zero(),
            b4: T::zero(),
            x_plus: T::zero(),
            x_minus: T::zero(),
            z_minus: T::zero(),
            s_tilde: 0,
            branch: Branch::AlreadySeparable,
        }
    }
}

/// One point of the disentangling path.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PathPoint<T> {
    pub tau: T,
    pub params: XParams<T>,
    pub concurrence: T,
    pub negativity: T,
}

/// Block-diagonal unitary
///
/// ```text
/// outer (|00>, |11>):  [[cos b1, e^{i b2} sin b1], [-e^{-i b2} sin b1, cos b1]]
/// inner (|01>, |10>):  [[cos b3, e^{i b4} sin b3], [-e^{-i b4} sin b3, cos b3]]
/// ```
pub fn x_unitary<T: Real>(b: &XAngles<T>) -> UnitaryMat4<T> {
    let mut m = ComplexMat4::zeros();
    let mut block = |lo: usize, hi: usize, angle: T, phase: T| {
        let (s, c) = angle.sin_cos();
        let e = Complex::from_polar(T::one(), phase);
        m[(lo, lo)] = Complex::new(c, T::zero());
        m[(hi, hi)] = Complex::new(c, T::zero());
        m[(lo, hi)] = e * s;
        m[(hi, lo)] = -e.conj() * s;
    };
    block(0, 3, b.b1, b.b2);
    block(1, 2, b.b3, b.b4);
    UnitaryMat4::from_trusted(m)
}

/// Conjugation of one 2x2 block `[[a, s e^{iφ}], [s e^{-iφ}, d]]` by
/// `[[cos b, e^{iβ} sin b], [-e^{-iβ} sin b, cos b]]`.
fn rotate_block<T: Real>(a: T, d: T, coh: T, phase: T, b: T, beta: T) -> (T, T, Complex<T>) {
    let (s, c) = b.sin_cos();
    let (s2, c2) = (T::lit(2.0) * b).sin_cos();
    let (sd, cd) = (beta - phase).sin_cos();
    let root = coh.max(T::zero()).sqrt();
    let cross = root * s2 * cd;
    let a2 = a * c * c + d * s * s + cross;
    let d2 = a * s * s + d * c * c - cross;
    let half = T::lit(0.5);
    let inner = Complex::new(-(a - d) * half * s2 + root * c2 * cd, -root * sd);
    (a2, d2, Complex::from_polar(T::one(), beta) * inner)
}

/// `V(b) ρ V(b)†` in coordinates, from the block-wise closed forms.
pub fn conjugate_x<T: Real>(p: &XParams<T>, b: &XAngles<T>) -> Result<XParams<T>> {
    p.require_physical()?;
    let d = p.diagonal();
    let (d0, d3, outer) = rotate_block(d[0], d[3], p.x, p.mu, b.b1, b.b2);
    let (d1, d2, inner) = rotate_block(d[1], d[2], p.y, p.nu, b.b3, b.b4);
    Ok(XParams::from_entries([d0, d1, d2, d3], outer, inner, T::zero()))
}

/// Which branch applies to an X-state, without solving for the angles.
pub fn branch_of<T: Real>(p: &XParams<T>) -> Result<Branch> {
    if p.is_separable()? {
        return Ok(Branch::AlreadySeparable);
    }
    let k = p.coeffs();
    Ok(if k.h_cal > k.g_cal {
        if is_rounding_zero(k.h_low) {
            Branch::HZero
        } else {
            Branch::HgtG
        }
    } else if is_rounding_zero(k.g_low) {
        Branch::GZero
    } else {
        Branch::GgtH
    })
}

/// Diagonal differences this small come from rounding an exact zero.
fn is_rounding_zero<T: Real>(v: T) -> bool {
    v.abs() <= T::lit(8.0) * T::epsilon()
}

struct BlockSolution<T> {
    b: T,
    x_plus: T,
    x_minus: T,
    z_minus: T,
    s_tilde: i8,
}

/// `(h/2 sin 2b - √coh cos 2b)²`: the coherence after a phase-matched
/// rotation of a block with diagonal difference `h`.
fn rotated_coherence<T: Real>(h: T, coh: T, b: T) -> T {
    let (s2, c2) = (T::lit(2.0) * b).sin_cos();
    let v = h * T::lit(0.5) * s2 - coh.max(T::zero()).sqrt() * c2;
    v * v
}

/// Rotation angle in `[0, π/2]` taking a block coherence `coh` down to `target`.
fn solve_block<T: Real>(coh: T, target: T, h: T) -> BlockSolution<T> {
    let half = T::lit(0.5);
    if is_rounding_zero(h) {
        let ratio = (target / coh).max(T::zero()).min(T::one());
        return BlockSolution {
            b: half * ratio.sqrt().acos(),
            x_plus: coh,
            x_minus: -coh,
            z_minus: T::one() - ratio,
            s_tilde: 0,
        };
    }
    let quarter_h2 = h * h * T::lit(0.25);
    let x_plus = quarter_h2 + coh;
    let x_minus = quarter_h2 - coh;
    let radicand = (coh * target * (x_plus - target)).max(T::zero());
    let z_minus = ((coh * x_plus + target * x_minus - h.abs() * radicand.sqrt()) / (x_plus * x_plus))
        .max(T::zero())
        .min(T::one());
    let from_sign = |s: T| {
        let r = (T::one() - z_minus).sqrt();
        let cos_b = (half + half * s * r).max(T::zero()).sqrt();
        let sin_b = (half - half * s * r).max(T::zero()).sqrt();
        sin_b.atan2(cos_b)
    };
    let formula = sgn(h) * sgn(z_minus * x_minus + coh - target);
    // Near x = G the sign argument is a difference of nearly equal terms and
    // can round the wrong way; keep whichever sign actually lands on target.
    let candidates = [T::one(), -T::one()];
    let mut best = if formula == T::zero() { T::one() } else { formula };
    let residual = |s: T| (rotated_coherence(h, coh, from_sign(s)) - target).abs();
    for &s in &candidates {
        if residual(s) < residual(best) {
            best = s;
        }
    }
    BlockSolution {
        b: from_sign(best),
        x_plus,
        x_minus,
        z_minus,
        s_tilde: if best > T::zero() { 1 } else { -1 },
    }
}

/// Block rotation that takes an entangled X-state to the separable boundary:
/// `x → G` when `H > G`, `y → H` when `G > H`. Separable inputs (including
/// every `G = H` state) get the identity with `Branch::AlreadySeparable`.
pub fn disentangle_params<T: Real>(p: &XParams<T>) -> Result<DisentangleSolution<T>> {
    let branch = branch_of(p)?;
    let k = p.coeffs();
    let sol = match branch {
        Branch::AlreadySeparable => return Ok(DisentangleSolution::identity()),
        Branch::HgtG | Branch::HZero => {
            let s = solve_block(p.x, k.g_cal, k.h_low);
            DisentangleSolution {
                b1: s.b,
                b2: p.mu,
                b3: T::zero(),
                b4: p.nu,
                x_plus: s.x_plus,
                x_minus: s.x_minus,
                z_minus: s.z_minus,
                s_tilde: s.s_tilde,
                branch,
            }
        }
        Branch::GgtH | Branch::GZero => {
            let s = solve_block(p.y, k.h_cal, k.g_low);
            DisentangleSolution {
                b1: T::zero(),
                b2: p.mu,
                b3: s.b,
                b4: p.nu,
                x_plus: s.x_plus,
                x_minus: s.x_minus,
                z_minus: s.z_minus,
                s_tilde: s.s_tilde,
                branch,
            }
        }
    };
    Ok(sol)
}

fn check_tau<T: Real>(tau: T) -> Result<()> {
    if tau >= T::zero() && tau <= T::one() {
        Ok(())
    } else {
        Err(Error::Domain(format!("tau = {tau} outside [0, 1]")))
    }
}

/// The state `V_τ ρ V_τ†`, where `V_τ` has the solution's rotation angles
/// scaled by `τ` and its phases unchanged.
pub fn evolve<T: Real>(p: &XParams<T>, sol: &DisentangleSolution<T>, tau: T) -> Result<PathPoint<T>> {
    check_tau(tau)?;
    let params = conjugate_x(p, &sol.angles().scaled(tau))?;
    Ok(PathPoint { tau, params, concurrence: params.concurrence(), negativity: params.negativity() })
}

/// Coherences and diagonal products along the path, from the closed forms.
struct PathState<T> {
    k: XCoeffs<T>,
    x_tau: T,
    y_tau: T,
    g_tau: T,
    h_tau: T,
}

fn path_state<T: Real>(p: &XParams<T>, sol: &DisentangleSolution<T>, tau: T) -> Result<PathState<T>> {
    check_tau(tau)?;
    let k = p.require_physical()?;
    let expected = branch_of(p)?;
    let phases_match = (sol.b1 == T::zero() || sol.b2 == p.mu) && (sol.b3 == T::zero() || sol.b4 == p.nu);
    if expected != sol.branch || !phases_match {
        return Err(Error::BranchMismatch(format!(
            "solution for {:?} applied to a {:?} state",
            sol.branch, expected
        )));
    }
    let x_tau = rotated_coherence(k.h_low, p.x, sol.b1 * tau);
    let y_tau = rotated_coherence(k.g_low, p.y, sol.b3 * tau);
    Ok(PathState {
        k,
        x_tau,
        y_tau,
        g_tau: k.g_cal - p.y + y_tau,
        h_tau: k.h_cal - p.x + x_tau,
    })
}

/// Concurrence of `V_τ ρ V_τ†` from the path closed forms.
///
/// Uses the full `2 max(0, √x_τ - √G_τ, √y_τ - √H_τ)` rather than only the
/// term of the reduced coherence: the path can pass through separable
/// states before `τ = 1`, and the untouched diagonal products move too.
pub fn concurrence_along<T: Real>(p: &XParams<T>, sol: &DisentangleSolution<T>, tau: T) -> Result<T> {
    let s = path_state(p, sol, tau)?;
    let a = s.x_tau.sqrt() - s.g_tau.max(T::zero()).sqrt();
    let b = s.y_tau.sqrt() - s.h_tau.max(T::zero()).sqrt();
    Ok(T::lit(2.0) * T::zero().max(a).max(b))
}

/// Negativity of `V_τ ρ V_τ†` from the path closed forms.
pub fn negativity_along<T: Real>(p: &XParams<T>, sol: &DisentangleSolution<T>, tau: T) -> Result<T> {
    let s = path_state(p, sol, tau)?;
    Ok(negativity_from_blocks(s.k.b_cal, s.k.c_cal, s.g_tau, s.h_tau, s.x_tau, s.y_tau))
}

pub fn measure_along<T: Real>(
    p: &XParams<T>,
    sol: &DisentangleSolution<T>,
    tau: T,
    measure: Measure,
) -> Result<T> {
    match measure {
        Measure::Concurrence => concurrence_along(p, sol, tau),
        Measure::Negativity => negativity_along(p, sol, tau),
    }
}

/// Number of uniform samples used to find a bracket when `[0, 1]` is not one.
const SCAN_POINTS: usize = 64;

/// A `τ ∈ [0, 1]` at which the chosen measure along the path equals `target`.
///
/// Bisection on a sign change of `measure(τ) - target`. Monotonicity is not
/// assumed: if the endpoints do not bracket the target, a uniform scan looks
/// for a sub-interval that does.
pub fn solve_tau<T: Real>(p: &XParams<T>, sol: &DisentangleSolution<T>, target: T, measure: Measure) -> Result<T> {
    let f = |t: T| measure_along(p, sol, t, measure).map(|m| m - target);
    let start = f(T::zero())? + target;
    let slack = T::lit(1e-12);
    if !(target >= T::zero()) || target > start + slack {
        return Err(Error::TargetOutOfRange { target: target.as_f64(), max: start.as_f64() });
    }
    let exact = T::lit(1e-15);
    let f0 = f(T::zero())?;
    if f0.abs() <= exact {
        return Ok(T::zero());
    }
    let f1 = f(T::one())?;
    if f1.abs() <= exact {
        return Ok(T::one());
    }

    let (mut lo, mut hi, mut flo) = if f0 * f1 < T::zero() {
        (T::zero(), T::one(), f0)
    } else {
        let mut found = None;
        let mut prev_t = T::zero();
        let mut prev_f = f0;
        for i in 1..=SCAN_POINTS {
            let t = T::lit(i as f64 / SCAN_POINTS as f64);
            let ft = f(t)?;
            if prev_f * ft <= T::zero() {
                found = Some((prev_t, t, prev_f));
                break;
            }
            prev_t = t;
            prev_f = ft;
        }
        match found {
            Some(b) => b,
            None => {
                // No sign change seen: return the closest endpoint.
                return Ok(if f0.abs() <= f1.abs() { T::zero() } else { T::one() });
            }
        }
    };
    for _ in 0..200 {
        let mid = (lo + hi) * T::lit(0.5);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = f(mid)?;
        if fm == T::zero() {
            return Ok(mid);
        }
        if (fm < T::zero()) == (flo < T::zero()) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    let fhi = f(hi)?;
    Ok(if flo.abs() <= fhi.abs() { lo } else { hi })
}

/// Real orthogonal factor sending the sorted eigenbasis to the MEMS form.
fn mems_frame<T: Real>() -> ComplexMat4<T> {
    let (o, z) = (T::one(), T::zero());
    let r = T::FRAC_1_SQRT_2();
    ComplexMat4::from_real([[z, z, z, o], [r, z, r, z], [r, z, -r, z], [z, o, z, z]])
}

/// `O Φ†`, where `Φ` holds the eigenvectors of `ρ` (eigenvalues
/// non-ascending). Local factors and eigenvector phases are fixed to identity.
pub fn verstraete_unitary<T: Real>(rho: &DensityMatrix<T>) -> UnitaryMat4<T> {
    let s = rho.spectrum();
    UnitaryMat4::from_trusted(mems_frame() * s.eigvecs.mat().adjoint())
}

/// The maximally entangled X-state with eigenvalues `λ1 >= ... >= λ4`:
///
/// ```text
/// ½ | 2λ4   .         .        .   |
///   | .     λ1 + λ3   λ1 - λ3  .   |
///   | .     λ1 - λ3   λ1 + λ3  .   |
///   | .     .         .        2λ2 |
/// ```
pub fn mems_matrix<T: Real>(values: [T; 4]) -> ComplexMat4<T> {
    let mut l = values;
    l.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
    let half = T::lit(0.5);
    let mut m = ComplexMat4::from_diag([l[3], half * (l[0] + l[2]), half * (l[0] + l[2]), l[1]]);
    let off = Complex::new(half * (l[0] - l[2]), T::zero());
    m[(1, 2)] = off;
    m[(2, 1)] = off;
    m
}

pub fn mems_from_spectrum<T: Real>(s: &Spectrum<T>) -> DensityMatrix<T> {
    DensityMatrix::from_trusted(mems_matrix(s.values.map(|v| v.max(T::zero()))))
}

/// Result of [`x_counterpart`].
#[derive(Clone, Debug, PartialEq)]
pub struct Counterpart<T> {
    /// X-state with the spectrum and chosen measure of the input.
    pub state: DensityMatrix<T>,
    /// `W` with `W ρ W† = state`.
    pub unitary: UnitaryMat4<T>,
    pub params: XParams<T>,
    pub tau: T,
    /// Measure of the input state.
    pub target: T,
    /// Measure of the maximally entangled X-state of the same spectrum.
    pub mems_value: T,
    pub solution: DisentangleSolution<T>,
    /// Amount by which the input measure exceeded the spectrum's maximum.
    /// Nonzero only through rounding; τ is then clamped to 0.
    pub overshoot: T,
}

/// X-counterpart of an arbitrary state: same spectrum, same chosen measure.
pub fn x_counterpart<T: Real>(rho: &DensityMatrix<T>, measure: Measure) -> Result<Counterpart<T>> {
    let spectrum = rho.spectrum();
    let u = UnitaryMat4::from_trusted(mems_frame() * spectrum.eigvecs.mat().adjoint());
    let mems = mems_matrix(spectrum.values.map(|v| v.max(T::zero())));
    let top = XParams::from_density(&mems, T::zero())?;
    let target = measure.general(rho);
    let solution = disentangle_params(&top)?;
    let mems_value = measure_along(&top, &solution, T::zero(), measure)?;

    let mut overshoot = T::zero();
    let tau = if solution.branch == Branch::AlreadySeparable {
        T::zero()
    } else if target >= mems_value {
        overshoot = target - mems_value;
        T::zero()
    } else {
        solve_tau(&top, &solution, target, measure)?
    };

    let angles = solution.angles().scaled(tau);
    let params = conjugate_x(&top, &angles)?;
    let unitary = x_unitary(&angles).compose(&u);
    Ok(Counterpart {
        state: DensityMatrix::from_trusted(params.to_matrix()),
        unitary,
        params,
        tau,
        target,
        mems_value,
        solution,
        overshoot,
    })
}
