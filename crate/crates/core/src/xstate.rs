//! Seven-parameter coordinates for two-qubit X-states.
//!
//! An X-state has non-zero entries only on the main and anti-diagonals of its
//! computational-basis density matrix:
//!
//! ```text
//! | cos²θ          .                  .                  √x e^{iμ} |
//! | .              sin²θ cos²φ        √y e^{iν}          .         |
//! | .              √y e^{-iν}         sin²θ sin²φ cos²ψ  .         |
//! | √x e^{-iμ}     .                  .                  sin²θ sin²φ sin²ψ |
//! ```
//!
//! The matrix is positive semidefinite iff `x <= H` and `y <= G`, and
//! separable iff both coherences are bounded by `min(G, H)`, where `H` and
//! `G` are the products of the diagonal pairs that the coherences couple.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{ComplexMat4, DensityMatrix};
use crate::scalar::Real;

/// Index pairs outside the main and anti-diagonals.
const OFF_X: [(usize, usize); 8] = [(0, 1), (0, 2), (1, 0), (1, 3), (2, 0), (2, 3), (3, 1), (3, 2)];

/// X-state coordinates. Angles live in `[0, π/2]`, phases in `[0, 2π]`, and
/// `x`, `y` are the squared magnitudes of the outer and inner coherences.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct XParams<T> {
    pub theta: T,
    pub phi: T,
    pub psi: T,
    pub x: T,
    pub y: T,
    pub mu: T,
    pub nu: T,
}

/// Scalars derived from the diagonal angles.
///
/// `b_cal`/`c_cal` are the traces and `g_cal`/`h_cal` the determinants-before-
/// coherence of the inner (`|01>, |10>`) and outer (`|00>, |11>`) blocks;
/// `g_low`/`h_low` are the corresponding diagonal differences.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct XCoeffs<T> {
    pub b_cal: T,
    pub c_cal: T,
    pub g_cal: T,
    pub h_cal: T,
    pub g_low: T,
    pub h_low: T,
}

/// Rank of an X-state together with the parameter-space kind it belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RankClass {
    pub rank: u8,
    pub kind: u8,
}

impl RankClass {
    /// Only the (rank, kind) pairs that occur for X-states.
    pub fn new(rank: u8, kind: u8) -> Result<Self> {
        let ok = matches!((rank, kind), (1, 1..=2) | (2, 1..=3) | (3, 1..=2) | (4, 1));
        if ok {
            Ok(RankClass { rank, kind })
        } else {
            Err(Error::Domain(format!("no X-state of rank {rank} and kind {kind}")))
        }
    }
}

/// Coefficients of `λ⁴ - a1 λ³ + a2 λ² - a3 λ + a4`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CharPolyCoeffs<T> {
    pub a1: T,
    pub a2: T,
    pub a3: T,
    pub a4: T,
}

impl<T: Real> CharPolyCoeffs<T> {
    pub fn eval(&self, l: T) -> T {
        (((l - self.a1) * l + self.a2) * l - self.a3) * l + self.a4
    }

    fn deriv(&self, l: T) -> T {
        let (two, three, four) = (T::lit(2.0), T::lit(3.0), T::lit(4.0));
        ((four * l - three * self.a1) * l + two * self.a2) * l - self.a3
    }

    /// Non-negative coefficients are equivalent to positive semidefiniteness.
    pub fn all_nonnegative(&self, slack: T) -> bool {
        self.a2 >= -slack && self.a3 >= -slack && self.a4 >= -slack
    }

    /// Real roots, non-ascending, for a polynomial whose roots are all real
    /// (any Hermitian characteristic polynomial). Newton from above the
    /// largest root with synthetic-division deflation, then polished on the
    /// undeflated polynomial.
    pub fn roots(&self) -> [T; 4] {
        let bound = T::one()
            + self.a1.abs().max(self.a2.abs()).max(self.a3.abs()).max(self.a4.abs());
        // Monic coefficients, highest degree first.
        let mut poly = vec![T::one(), -self.a1, self.a2, -self.a3, self.a4];
        let mut roots = [T::zero(); 4];
        for slot in roots.iter_mut() {
            let mut l = bound;
            for _ in 0..500 {
                let (p, dp) = horner(&poly, l);
                if dp == T::zero() {
                    break;
                }
                let step = p / dp;
                l -= step;
                if step.abs() <= T::epsilon() * (T::one() + l.abs()) {
                    break;
                }
            }
            // Polish against the full quartic to remove deflation error.
            for _ in 0..3 {
                let dp = self.deriv(l);
                if dp == T::zero() {
                    break;
                }
                let step = self.eval(l) / dp;
                if !step.is_finite() || step.abs() > T::lit(1e-6) {
                    break;
                }
                l -= step;
            }
            *slot = l;
            poly = deflate(&poly, l);
        }
        roots.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
        roots
    }
}

fn horner<T: Real>(poly: &[T], l: T) -> (T, T) {
    let mut p = T::zero();
    let mut dp = T::zero();
    for &c in poly {
        dp = dp * l + p;
        p = p * l + c;
    }
    (p, dp)
}

fn deflate<T: Real>(poly: &[T], root: T) -> Vec<T> {
    let mut out = Vec::with_capacity(poly.len() - 1);
    let mut acc = T::zero();
    for &c in &poly[..poly.len() - 1] {
        acc = acc * root + c;
        out.push(acc);
    }
    out
}

impl<T: Real> XParams<T> {
    pub fn new(theta: T, phi: T, psi: T, x: T, y: T, mu: T, nu: T) -> Self {
        XParams { theta, phi, psi, x, y, mu, nu }
    }

    /// The four diagonal entries `ρ11..ρ44`.
    pub fn diagonal(&self) -> [T; 4] {
        let (st, ct) = sin_cos_sq(self.theta);
        let (sf, cf) = sin_cos_sq(self.phi);
        let (ss, cs) = sin_cos_sq(self.psi);
        [ct, st * cf, st * sf * cs, st * sf * ss]
    }

    pub fn coeffs(&self) -> XCoeffs<T> {
        let (st, ct) = sin_cos_sq(self.theta);
        let (sf, cf) = sin_cos_sq(self.phi);
        let (ss, cs) = sin_cos_sq(self.psi);
        let b_cal = st * (T::one() - sf * ss);
        let c_cal = ct + st * sf * ss;
        XCoeffs {
            b_cal,
            c_cal,
            g_cal: st * st * sf * cf * cs,
            h_cal: st * ct * sf * ss,
            g_low: st * (cf - sf * cs),
            h_low: ct - st * sf * ss,
        }
    }

    /// `x <= H` and `y <= G` up to `T::param_slack()`.
    pub fn is_physical(&self) -> bool {
        let k = self.coeffs();
        let s = T::param_slack();
        self.x >= -s && self.y >= -s && self.x <= k.h_cal + s && self.y <= k.g_cal + s
    }

    pub(crate) fn require_physical(&self) -> Result<XCoeffs<T>> {
        let k = self.coeffs();
        if self.is_physical() {
            Ok(k)
        } else {
            Err(Error::Unphysical {
                x: self.x.as_f64(),
                y: self.y.as_f64(),
                h_cal: k.h_cal.as_f64(),
                g_cal: k.g_cal.as_f64(),
            })
        }
    }

    /// The X-form matrix, without checking physicality.
    pub fn to_matrix(&self) -> ComplexMat4<T> {
        let mut m = ComplexMat4::from_diag(self.diagonal());
        let outer = Complex::from_polar(self.x.max(T::zero()).sqrt(), self.mu);
        let inner = Complex::from_polar(self.y.max(T::zero()).sqrt(), self.nu);
        m[(0, 3)] = outer;
        m[(3, 0)] = outer.conj();
        m[(1, 2)] = inner;
        m[(2, 1)] = inner.conj();
        m
    }

    pub fn to_density(&self) -> Result<DensityMatrix<T>> {
        self.require_physical()?;
        Ok(DensityMatrix::from_trusted(self.to_matrix()))
    }

    /// Inverse of [`XParams::to_matrix`] for X-form states.
    ///
    /// Conventions where the parametrization is not injective: `φ = ψ = 0`
    /// when `sin θ = 0`, `ψ = 0` when `sin φ = 0`, and a phase is zero when
    /// its coherence magnitude is below `tol`.
    pub fn from_density(rho: &ComplexMat4<T>, tol: T) -> Result<Self> {
        let max_off = off_x_max(rho);
        if !(max_off <= tol) {
            return Err(Error::NotXForm { max_off: max_off.as_f64(), tol: tol.as_f64() });
        }
        Ok(Self::from_entries(rho.diag_re(), rho[(0, 3)], rho[(1, 2)], tol))
    }

    /// Coordinates from the diagonal and the upper coherences `ρ14`, `ρ23`.
    /// Same conventions as [`XParams::from_density`].
    pub fn from_entries(diag: [T; 4], outer: Complex<T>, inner: Complex<T>, tol: T) -> Self {
        let d = diag.map(|v| v.max(T::zero()));
        let theta = (d[1] + d[2] + d[3]).sqrt().atan2(d[0].sqrt());
        let phi = (d[2] + d[3]).sqrt().atan2(d[1].sqrt());
        let psi = d[3].sqrt().atan2(d[2].sqrt());
        let phase = |z: Complex<T>| {
            if z.norm() < tol {
                T::zero()
            } else {
                let a = z.arg();
                if a < T::zero() {
                    a + T::TAU()
                } else {
                    a
                }
            }
        };
        XParams {
            theta,
            phi,
            psi,
            x: outer.norm_sqr(),
            y: inner.norm_sqr(),
            mu: phase(outer),
            nu: phase(inner),
        }
    }

    pub fn char_poly(&self) -> CharPolyCoeffs<T> {
        let k = self.coeffs();
        let (x, y) = (self.x, self.y);
        CharPolyCoeffs {
            a1: T::one(),
            a2: k.b_cal * k.c_cal + k.g_cal + k.h_cal - x - y,
            a3: k.b_cal * k.h_cal + k.c_cal * k.g_cal - x * k.b_cal - y * k.c_cal,
            a4: k.h_cal * k.g_cal - y * k.h_cal - x * k.g_cal + x * y,
        }
    }

    /// Rank and kind from the parameter-space conditions. Lower ranks are
    /// tested first.
    ///
    /// Each equality is tested through the block eigenvalue it controls:
    /// `x = H` as "smaller outer eigenvalue <= tol", `B = 0` as "larger inner
    /// eigenvalue <= tol", and so on. In exact arithmetic this is the same
    /// condition; numerically it keeps the result consistent with counting
    /// eigenvalues above `tol`, which a bare `|x - H| <= tol` does not when
    /// the block trace is small.
    pub fn classify_rank(&self, tol: T) -> Result<RankClass> {
        let k = self.require_physical()?;
        let (outer_hi, outer_lo) = block_eigs(k.c_cal, k.h_cal - self.x);
        let (inner_hi, inner_lo) = block_eigs(k.b_cal, k.g_cal - self.y);
        let x_eq_h = outer_lo <= tol;
        let y_eq_g = inner_lo <= tol;
        let x_zero = self.x <= tol;
        let y_zero = self.y <= tol;
        let b_zero = inner_hi <= tol;
        let c_zero = outer_hi <= tol;

        let (rank, kind) = if x_eq_h && y_zero && b_zero {
            (1, 1)
        } else if x_zero && y_eq_g && c_zero {
            (1, 2)
        } else if !x_eq_h && y_zero && b_zero {
            (2, 1)
        } else if x_zero && !y_eq_g && c_zero {
            (2, 2)
        } else if x_eq_h && y_eq_g {
            (2, 3)
        } else if y_eq_g && !b_zero {
            (3, 1)
        } else if x_eq_h && !c_zero {
            (3, 2)
        } else {
            (4, 1)
        };
        Ok(RankClass { rank, kind })
    }

    /// PPT separability: both coherences bounded by `min(G, H)`.
    pub fn is_separable(&self) -> Result<bool> {
        let k = self.require_physical()?;
        let bound = k.g_cal.min(k.h_cal) + T::param_slack();
        Ok(self.x <= bound && self.y <= bound)
    }

    /// Concurrence in parametric form: `2 max(0, √x - √G, √y - √H)`.
    pub fn concurrence(&self) -> T {
        let k = self.coeffs();
        let two = T::lit(2.0);
        let a = self.x.max(T::zero()).sqrt() - k.g_cal.sqrt();
        let b = self.y.max(T::zero()).sqrt() - k.h_cal.sqrt();
        two * T::zero().max(a).max(b)
    }

    /// Negativity in parametric form, from the two candidate negative
    /// eigenvalues of the partial transpose.
    pub fn negativity(&self) -> T {
        let k = self.coeffs();
        negativity_from_blocks(k.b_cal, k.c_cal, k.g_cal, k.h_cal, self.x, self.y)
    }

    pub fn cast<S: Real>(&self) -> XParams<S> {
        let c = |v: T| S::lit(v.as_f64());
        XParams {
            theta: c(self.theta),
            phi: c(self.phi),
            psi: c(self.psi),
            x: c(self.x),
            y: c(self.y),
            mu: c(self.mu),
            nu: c(self.nu),
        }
    }
}

/// `-min(0, B/2 - √((B/2)² - G + x), C/2 - √((C/2)² - H + y))`.
pub(crate) fn negativity_from_blocks<T: Real>(b: T, c: T, g: T, h: T, x: T, y: T) -> T {
    let half = T::lit(0.5);
    let inner = b * half - (b * b * T::lit(0.25) - g + x).max(T::zero()).sqrt();
    let outer = c * half - (c * c * T::lit(0.25) - h + y).max(T::zero()).sqrt();
    -T::zero().min(inner).min(outer)
}

/// Eigenvalues `(larger, smaller)` of a 2x2 Hermitian block with the given
/// trace and determinant, the smaller one computed without cancellation.
fn block_eigs<T: Real>(trace: T, det: T) -> (T, T) {
    let half = trace * T::lit(0.5);
    let hi = half + (half * half - det).max(T::zero()).sqrt();
    let lo = if hi > T::zero() { det.max(T::zero()) / hi } else { T::zero() };
    (hi, lo)
}

fn sin_cos_sq<T: Real>(a: T) -> (T, T) {
    let (s, c) = a.sin_cos();
    (s * s, c * c)
}

/// Largest magnitude among the eight entries outside the X pattern.
pub fn off_x_max<T: Real>(m: &ComplexMat4<T>) -> T {
    OFF_X.iter().fold(T::zero(), |acc, &(i, j)| acc.max(m[(i, j)].norm()))
}

/// True iff every off-X entry has magnitude at most `tol`.
pub fn is_x_form<T: Real>(m: &ComplexMat4<T>, tol: T) -> bool {
    off_x_max(m) <= tol
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};

    fn params(theta: f64, phi: f64, psi: f64, x: f64, y: f64) -> XParams<f64> {
        XParams::new(theta, phi, psi, x, y, 0.0, 0.0)
    }

    #[test]
    fn coeffs_of_pure_outer_block_state() {
        let k = params(FRAC_PI_4, FRAC_PI_2, FRAC_PI_2, 0.0, 0.0).coeffs();
        assert!(k.b_cal.abs() < 1e-15);
        assert!(k.g_cal.abs() < 1e-15);
        assert!((k.h_cal - 0.25).abs() < 1e-15);
    }

    #[test]
    fn coeffs_at_theta_zero() {
        let k = params(0.0, 0.7, 0.3, 0.0, 0.0).coeffs();
        assert_eq!((k.b_cal, k.g_cal, k.h_cal, k.g_low, k.h_low), (0.0, 0.0, 0.0, 0.0, 1.0));
        assert_eq!(k.c_cal, 1.0);
    }

    #[test]
    fn zero_coherence_gives_diagonal_matrix() {
        let p = params(0.6, 0.6, 0.6, 0.0, 0.0);
        let m = p.to_density().unwrap();
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    assert_eq!(m[(i, j)].norm(), 0.0);
                }
            }
        }
    }

    #[test]
    fn unphysical_coherence_rejected() {
        let p = params(0.6, 0.9, 0.8, 0.0, 0.0);
        let h = p.coeffs().h_cal;
        let mut bad = p;
        bad.x = h + 1e-6;
        assert!(!bad.is_physical());
        assert!(matches!(bad.to_density(), Err(Error::Unphysical { .. })));
        // Unchecked matrix has a negative eigenvalue.
        let s = crate::matrix::hermitian_eig(&bad.to_matrix()).unwrap();
        assert!(s.values[3] < 0.0);
        let mut edge = p;
        edge.x = h;
        edge.y = p.coeffs().g_cal;
        assert!(edge.is_physical());
    }

    #[test]
    fn degenerate_inversion_conventions() {
        let mut m = ComplexMat4::<f64>::zeros();
        m[(0, 0)] = Complex::new(1.0, 0.0);
        let p = XParams::from_density(&m, 1e-12).unwrap();
        assert_eq!((p.theta, p.phi, p.psi, p.mu, p.nu), (0.0, 0.0, 0.0, 0.0, 0.0));
    }

    #[test]
    fn inversion_recovers_phases() {
        let p: XParams<f64> = XParams::new(0.9, 0.7, 0.5, 0.0, 0.0, 0.0, 0.0);
        let k = p.coeffs();
        let p = XParams { x: 0.5 * k.h_cal, y: 0.3 * k.g_cal, mu: 4.0, nu: 1.2, ..p };
        let q = XParams::from_density(&p.to_matrix(), 1e-12).unwrap();
        for (a, b) in [(p.theta, q.theta), (p.phi, q.phi), (p.psi, q.psi), (p.mu, q.mu), (p.nu, q.nu)] {
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
        assert!((p.x - q.x).abs() < 1e-15 && (p.y - q.y).abs() < 1e-15);
    }

    #[test]
    fn non_x_input_rejected() {
        let s = 0.5f64.sqrt();
        let mut bell = ComplexMat4::<f64>::zeros();
        for (i, j) in [(0, 0), (0, 3), (3, 0), (3, 3)] {
            bell[(i, j)] = Complex::new(s * s, 0.0);
        }
        assert!(is_x_form(&bell, 1e-6));
        bell[(0, 1)] = Complex::new(1e-3, 0.0);
        bell[(1, 0)] = Complex::new(1e-3, 0.0);
        assert!(!is_x_form(&bell, 1e-6));
        assert!(matches!(XParams::from_density(&bell, 1e-6), Err(Error::NotXForm { .. })));
    }

    #[test]
    fn char_poly_of_maximally_mixed_state() {
        // θ, φ, ψ giving diag(1/4, 1/4, 1/4, 1/4).
        let theta = (0.75f64).sqrt().asin();
        let phi = (2.0f64 / 3.0).sqrt().asin();
        let p = params(theta, phi, FRAC_PI_4, 0.0, 0.0);
        for d in p.diagonal() {
            assert!((d - 0.25).abs() < 1e-15);
        }
        // Newton–Girard on (1/4, 1/4, 1/4, 1/4): e2 = 6/16, e3 = 4/64, e4 = 1/256.
        let a = p.char_poly();
        assert!((a.a2 - 3.0 / 8.0).abs() < 1e-15);
        assert!((a.a3 - 1.0 / 16.0).abs() < 1e-15);
        assert!((a.a4 - 1.0 / 256.0).abs() < 1e-15);
    }

    #[test]
    fn char_poly_of_pure_state_vanishes() {
        let p = params(0.4, FRAC_PI_2, FRAC_PI_2, 0.0, 0.0);
        let p = XParams { x: p.coeffs().h_cal, ..p };
        let a = p.char_poly();
        assert!(a.a2.abs() < 1e-15 && a.a3.abs() < 1e-15 && a.a4.abs() < 1e-15);
        let r = a.roots();
        assert!((r[0] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn classify_boundary_kinds() {
        let gen = params(0.8, 0.9, 0.7, 0.0, 0.0);
        let k = gen.coeffs();
        let cls = |p: XParams<f64>| p.classify_rank(1e-9).unwrap();
        assert_eq!(cls(XParams { x: k.h_cal, y: k.g_cal, ..gen }), RankClass { rank: 2, kind: 3 });
        assert_eq!(cls(XParams { x: 0.5 * k.h_cal, y: k.g_cal, ..gen }), RankClass { rank: 3, kind: 1 });
        assert_eq!(cls(XParams { x: k.h_cal, y: 0.5 * k.g_cal, ..gen }), RankClass { rank: 3, kind: 2 });
        assert_eq!(cls(XParams { x: 0.5 * k.h_cal, y: 0.5 * k.g_cal, ..gen }), RankClass { rank: 4, kind: 1 });

        let b0 = params(0.8, FRAC_PI_2, FRAC_PI_2, 0.0, 0.0);
        let h = b0.coeffs().h_cal;
        assert_eq!(cls(XParams { x: h, ..b0 }), RankClass { rank: 1, kind: 1 });
        assert_eq!(cls(XParams { x: 0.3 * h, ..b0 }), RankClass { rank: 2, kind: 1 });

        let c0 = params(FRAC_PI_2, 0.6, 0.0, 0.0, 0.0);
        let g = c0.coeffs().g_cal;
        assert_eq!(cls(XParams { y: g, ..c0 }), RankClass { rank: 1, kind: 2 });
        assert_eq!(cls(XParams { y: 0.3 * g, ..c0 }), RankClass { rank: 2, kind: 2 });

        let bad = XParams { x: 1.0, ..gen };
        assert!(bad.classify_rank(1e-9).is_err());
    }

    #[test]
    fn rank_class_pairs() {
        assert!(RankClass::new(2, 3).is_ok());
        assert!(RankClass::new(4, 2).is_err());
        assert!(RankClass::new(3, 3).is_err());
    }

    #[test]
    fn separability_cases() {
        let p = params(0.8, 0.9, 0.7, 0.0, 0.0);
        assert!(p.is_separable().unwrap());
        let k = p.coeffs();
        let m = k.g_cal.min(k.h_cal);
        assert!(XParams { x: m, y: m, ..p }.is_separable().unwrap());
        let top = XParams { x: k.h_cal, ..p };
        assert_eq!(top.is_separable().unwrap(), k.h_cal <= k.g_cal);
    }

    #[test]
    fn equal_g_and_h_is_always_separable() {
        // Any angles with G = H: the physical rectangle is the separable square.
        // sin²θ sin²φ cos²ψ = cos²θ sin²ψ ... pick ψ = π/4 and solve for θ at fixed φ.
        let phi: f64 = 1.0;
        let psi = FRAC_PI_4;
        // G = st² sf cf cs, H = st ct sf ss; with cs = ss: G = H  <=>  st cf = ct.
        let cf = phi.cos().powi(2);
        let theta = (1.0 / (1.0 + cf)).sqrt().asin();
        let p = params(theta, phi, psi, 0.0, 0.0);
        let k = p.coeffs();
        assert!((k.g_cal - k.h_cal).abs() < 1e-15);
        for (fx, fy) in [(1.0, 1.0), (1.0, 0.0), (0.3, 0.9)] {
            let q = XParams { x: fx * k.h_cal, y: fy * k.g_cal, ..p };
            assert!(q.is_separable().unwrap());
        }
    }

    #[test]
    fn single_precision_round_trip() {
        let p: XParams<f32> = XParams::new(0.9, 0.7, 0.5, 0.0, 0.0, 0.0, 0.0);
        let k = p.coeffs();
        let p = XParams { x: 0.5 * k.h_cal, y: 0.2 * k.g_cal, mu: 1.0, nu: 2.0, ..p };
        let rho = p.to_density().unwrap();
        let q = XParams::from_density(&rho, 1e-6).unwrap();
        assert!((q.theta - p.theta).abs() < 1e-5);
        assert!((q.x - p.x).abs() < 1e-6);
    }
}
