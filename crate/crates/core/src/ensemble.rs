//! Seeded random states for property tests and sweeps.
//!
//! The generator is xoshiro256++ (`rand_xoshiro::Xoshiro256PlusPlus`), its
//! 256-bit state filled from the 64-bit seed by SplitMix64. A uniform double
//! is `(next_u64 >> 11) * 2^-53`; a standard normal is the cosine half of
//! Box–Muller on two uniforms, `√(-2 ln(1 - u1)) cos(2π u2)`. These choices
//! are fixed so that a seed names the same state everywhere.

use num_complex::Complex;
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::error::{Error, Result};
use crate::matrix::{ComplexMat4, DensityMatrix, UnitaryMat4};
use crate::xstate::{RankClass, XParams};

/// Rejection budget for constrained draws.
pub const MAX_ATTEMPTS: usize = 10_000;

/// 64-bit seed. Child seeds for item `i` of a batch come from [`Seed::child`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Seed(pub u64);

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

impl Seed {
    /// Independent seed for item `index`, hashed from `(self, index)`.
    pub fn child(self, index: u64) -> Seed {
        Seed(splitmix64(self.0 ^ splitmix64(index)))
    }

    pub fn sampler(self) -> Sampler {
        Sampler::new(self)
    }
}

/// Caller-owned random stream.
#[derive(Clone, Debug)]
pub struct Sampler {
    rng: Xoshiro256PlusPlus,
}

impl Sampler {
    pub fn new(seed: Seed) -> Self {
        Sampler { rng: Xoshiro256PlusPlus::seed_from_u64(seed.0) }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform on `[0, 1)` with 53 random bits.
    pub fn uniform(&mut self) -> f64 {
        (self.rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    /// Standard normal.
    pub fn gaussian(&mut self) -> f64 {
        let u1 = 1.0 - self.uniform();
        let u2 = self.uniform();
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }

    /// Real and imaginary parts independent standard normals.
    pub fn complex_gaussian(&mut self) -> Complex<f64> {
        let re = self.gaussian();
        Complex::new(re, self.gaussian())
    }

    pub fn density(&mut self, kind: DensityKind) -> DensityMatrix<f64> {
        let k = match kind {
            DensityKind::HilbertSchmidt => 4,
            DensityKind::PureHaar => 1,
            DensityKind::Rank(k) => k.clamp(1, 4),
        };
        let mut g = [[Complex::new(0.0, 0.0); 4]; 4];
        for row in g.iter_mut() {
            for z in row.iter_mut().take(k) {
                *z = self.complex_gaussian();
            }
        }
        let mut m = ComplexMat4::from_fn(|i, j| (0..k).map(|c| g[i][c] * g[j][c].conj()).sum());
        let tr = m.trace().re;
        m = m.scale(1.0 / tr).hermitized();
        DensityMatrix::from_trusted(m)
    }

    /// Haar-random unitary: Gram–Schmidt on a complex Gaussian matrix.
    pub fn unitary(&mut self) -> UnitaryMat4<f64> {
        let mut cols: Vec<[Complex<f64>; 4]> = Vec::with_capacity(4);
        while cols.len() < 4 {
            let mut v = [Complex::new(0.0, 0.0); 4];
            for z in v.iter_mut() {
                *z = self.complex_gaussian();
            }
            for c in &cols {
                let dot: Complex<f64> = (0..4).map(|i| c[i].conj() * v[i]).sum();
                for i in 0..4 {
                    v[i] -= dot * c[i];
                }
            }
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm > 1e-8 {
                cols.push(v.map(|z| z / norm));
            }
        }
        UnitaryMat4::from_trusted(ComplexMat4::from_fn(|i, j| cols[j][i]))
    }

    /// Eigenvalues of a Hilbert–Schmidt draw, sorted non-ascending.
    pub fn spectrum(&mut self) -> [f64; 4] {
        self.density(DensityKind::HilbertSchmidt).spectrum().values.map(|v| v.max(0.0))
    }

    pub fn xparams(&mut self, constraint: XConstraint) -> Result<XParams<f64>> {
        for _ in 0..MAX_ATTEMPTS {
            if let Some(p) = self.try_xparams(constraint) {
                if satisfies(&p, constraint) {
                    return Ok(p);
                }
            }
        }
        Err(Error::ConstraintInfeasible(format!("{constraint:?}"), MAX_ATTEMPTS))
    }

    fn angle(&mut self) -> f64 {
        self.uniform_in(0.0, std::f64::consts::FRAC_PI_2)
    }

    fn phase(&mut self) -> f64 {
        self.uniform_in(0.0, std::f64::consts::TAU)
    }

    /// A fraction in `[0, 0.99]`, keeping a margin from the `x = H` edge.
    fn interior(&mut self) -> f64 {
        0.99 * self.uniform()
    }

    fn try_xparams(&mut self, constraint: XConstraint) -> Option<XParams<f64>> {
        use std::f64::consts::FRAC_PI_2 as RIGHT;
        let (theta, phi, psi) = (self.angle(), self.angle(), self.angle());
        let (mu, nu) = (self.phase(), self.phase());
        let base = XParams::new(theta, phi, psi, 0.0, 0.0, mu, nu);
        let k = base.coeffs();
        let p = match constraint {
            XConstraint::Any | XConstraint::Entangled => {
                XParams { x: k.h_cal * self.uniform(), y: k.g_cal * self.uniform(), ..base }
            }
            XConstraint::Separable => {
                let m = k.h_cal.min(k.g_cal);
                XParams { x: m * self.uniform(), y: m * self.uniform(), ..base }
            }
            XConstraint::EntangledHZero => {
                // cos²θ = sin²θ sin²φ sin²ψ makes the outer diagonal balanced.
                let theta = (1.0 / (phi.sin() * psi.sin())).atan();
                let base = XParams { theta, ..base };
                let k = base.coeffs();
                if k.h_cal <= k.g_cal * 1.001 {
                    return None;
                }
                let x = k.g_cal + (k.h_cal - k.g_cal) * (0.001 + 0.999 * self.uniform());
                XParams { x, y: k.g_cal * self.uniform(), ..base }
            }
            XConstraint::EntangledGZero => {
                // cos²φ = sin²φ cos²ψ makes the inner diagonal balanced.
                let phi = (1.0 / psi.cos()).atan();
                let base = XParams { phi, ..base };
                let k = base.coeffs();
                if k.g_cal <= k.h_cal * 1.001 {
                    return None;
                }
                let y = k.h_cal + (k.g_cal - k.h_cal) * (0.001 + 0.999 * self.uniform());
                XParams { x: k.h_cal * self.uniform(), y, ..base }
            }
            XConstraint::RankKind(class) => {
                let margin = 1e-4;
                match (class.rank, class.kind) {
                    (1, 1) | (2, 1) => {
                        let base = XParams { phi: RIGHT, psi: RIGHT, ..base };
                        let h = base.coeffs().h_cal;
                        if h < margin {
                            return None;
                        }
                        let x = if class.rank == 1 { h } else { h * self.interior() };
                        XParams { x, y: 0.0, ..base }
                    }
                    (1, 2) | (2, 2) => {
                        let base = XParams { theta: RIGHT, psi: 0.0, ..base };
                        let g = base.coeffs().g_cal;
                        if g < margin {
                            return None;
                        }
                        let y = if class.rank == 1 { g } else { g * self.interior() };
                        XParams { x: 0.0, y, ..base }
                    }
                    (r, kind) => {
                        let ok = [k.h_cal, k.g_cal, k.b_cal, k.c_cal].iter().all(|&v| v > margin);
                        if !ok {
                            return None;
                        }
                        let (x, y) = match (r, kind) {
                            (2, 3) => (k.h_cal, k.g_cal),
                            (3, 1) => (k.h_cal * self.interior(), k.g_cal),
                            (3, 2) => (k.h_cal, k.g_cal * self.interior()),
                            _ => (k.h_cal * self.interior(), k.g_cal * self.interior()),
                        };
                        XParams { x, y, ..base }
                    }
                }
            }
        };
        Some(p)
    }
}

fn satisfies(p: &XParams<f64>, constraint: XConstraint) -> bool {
    if !p.is_physical() {
        return false;
    }
    let entangled = !p.is_separable().unwrap_or(true);
    match constraint {
        XConstraint::Any => true,
        XConstraint::Separable => !entangled,
        XConstraint::Entangled | XConstraint::EntangledHZero | XConstraint::EntangledGZero => {
            entangled && p.concurrence() > 0.0
        }
        XConstraint::RankKind(class) => p.classify_rank(1e-9).map(|c| c == class).unwrap_or(false),
    }
}

/// How a random density matrix is drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DensityKind {
    /// `G G† / tr(G G†)` with `G` a 4x4 complex Gaussian matrix.
    HilbertSchmidt,
    /// Projector on a normalized complex Gaussian vector.
    PureHaar,
    /// As `HilbertSchmidt` with a 4xk factor.
    Rank(usize),
}

/// Constraint on a random X-state draw.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum XConstraint {
    Any,
    Entangled,
    Separable,
    RankKind(RankClass),
    /// Entangled with `H > G` and outer diagonal difference `h` at rounding level.
    EntangledHZero,
    /// Entangled with `G > H` and inner diagonal difference `g` at rounding level.
    EntangledGZero,
}

pub fn random_density(seed: Seed, kind: DensityKind) -> DensityMatrix<f64> {
    seed.sampler().density(kind)
}

pub fn random_xparams(seed: Seed, constraint: XConstraint) -> Result<XParams<f64>> {
    seed.sampler().xparams(constraint)
}

pub fn random_unitary(seed: Seed) -> UnitaryMat4<f64> {
    seed.sampler().unitary()
}
