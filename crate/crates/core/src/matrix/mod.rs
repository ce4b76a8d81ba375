//! Fixed-size complex linear algebra for two-qubit operators: validated
//! density matrices and unitaries, Hermitian eigendecomposition, partial
//! transpose and trace norm.

mod cmat;
mod eigen;

use std::fmt;
use std::ops::Deref;

use num_complex::Complex;
use serde::{Deserialize, Serialize};

pub use cmat::{kron2, CMat, ComplexMat4};
pub use eigen::{jacobi_eigh, singular_values4};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// A check that a candidate density matrix failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Failure {
    NonHermitian,
    Trace,
    NotPositive,
}

/// Outcome of [`is_density_matrix`], with the measured deviations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    pub hermitian_deviation: f64,
    pub trace_deviation: f64,
    pub min_eigenvalue: f64,
    pub failures: Vec<Failure>,
}

impl Diagnostics {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for Diagnostics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.failures.is_empty() {
            return write!(f, "valid");
        }
        let names: Vec<&str> = self
            .failures
            .iter()
            .map(|fl| match fl {
                Failure::NonHermitian => "hermiticity",
                Failure::Trace => "trace",
                Failure::NotPositive => "positivity",
            })
            .collect();
        write!(
            f,
            "failed {} (|A-A†| = {:e}, |tr-1| = {:e}, min eig = {:e})",
            names.join(", "),
            self.hermitian_deviation,
            self.trace_deviation,
            self.min_eigenvalue
        )
    }
}

fn diagnose<T: Real>(a: &ComplexMat4<T>, herm_tol: T, trace_tol: T, psd_tol: T) -> Diagnostics {
    let herm = a.hermiticity_deviation();
    let tr = a.trace();
    let trace_dev = ((tr.re - T::one()).powi(2) + tr.im.powi(2)).sqrt();
    let (vals, _) = jacobi_eigh(a);
    let min_eig = vals[3];
    let mut failures = Vec::new();
    if !(herm <= herm_tol) {
        failures.push(Failure::NonHermitian);
    }
    if !(trace_dev <= trace_tol) {
        failures.push(Failure::Trace);
    }
    if !(min_eig >= -psd_tol) {
        failures.push(Failure::NotPositive);
    }
    Diagnostics {
        hermitian_deviation: herm.as_f64(),
        trace_deviation: trace_dev.as_f64(),
        min_eigenvalue: min_eig.as_f64(),
        failures,
    }
}

/// Checks Hermiticity, unit trace and positive semidefiniteness, all at
/// tolerance `tol`.
pub fn is_density_matrix<T: Real>(a: &ComplexMat4<T>, tol: T) -> Diagnostics {
    diagnose(a, tol, tol, tol)
}

/// A validated two-qubit density matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityMatrix<T> {
    mat: ComplexMat4<T>,
}

impl<T: Real> DensityMatrix<T> {
    /// Validates `mat` with the default tolerances of `T`.
    pub fn new(mat: ComplexMat4<T>) -> Result<Self> {
        let diag = diagnose(&mat, T::hermitian_tol(), T::trace_tol(), T::psd_tol());
        if diag.is_valid() {
            Ok(DensityMatrix { mat })
        } else {
            Err(Error::InvalidState(diag))
        }
    }

    /// Validates `mat` with a single tolerance for all three checks and keeps
    /// its Hermitian part. For reading hand-written or rounded input.
    pub fn with_tol(mat: ComplexMat4<T>, tol: T) -> Result<Self> {
        let diag = diagnose(&mat, tol, tol, tol);
        if diag.is_valid() {
            Ok(DensityMatrix { mat: mat.hermitized() })
        } else {
            Err(Error::InvalidState(diag))
        }
    }

    /// Wraps a matrix known to be a state by construction (closed-form
    /// parametrizations). Not validated.
    pub(crate) fn from_trusted(mat: ComplexMat4<T>) -> Self {
        DensityMatrix { mat }
    }

    /// `|ψ><ψ| / <ψ|ψ>`.
    pub fn pure(psi: [Complex<T>; 4]) -> Result<Self> {
        let norm2 = psi.iter().fold(T::zero(), |s, z| s + z.norm_sqr());
        if !(norm2 > T::zero()) {
            return Err(Error::Domain("zero state vector".into()));
        }
        Self::new(ComplexMat4::outer(&psi).scale(T::one() / norm2).hermitized())
    }

    pub fn maximally_mixed() -> Self {
        DensityMatrix { mat: ComplexMat4::from_diag([T::lit(0.25); 4]) }
    }

    pub fn diagonal(p: [T; 4]) -> Result<Self> {
        Self::new(ComplexMat4::from_diag(p))
    }

    pub fn mat(&self) -> &ComplexMat4<T> {
        &self.mat
    }

    pub fn into_inner(self) -> ComplexMat4<T> {
        self.mat
    }

    pub fn spectrum(&self) -> Spectrum<T> {
        // A validated state is Hermitian, so this cannot fail.
        hermitian_eig(&self.mat).expect("density matrix is Hermitian")
    }

    pub fn partial_transpose(&self) -> ComplexMat4<T> {
        partial_transpose(&self.mat)
    }
}

impl<T> Deref for DensityMatrix<T> {
    type Target = ComplexMat4<T>;
    fn deref(&self) -> &ComplexMat4<T> {
        &self.mat
    }
}

/// A validated 4x4 unitary.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitaryMat4<T> {
    mat: ComplexMat4<T>,
}

impl<T: Real> UnitaryMat4<T> {
    pub fn new(mat: ComplexMat4<T>) -> Result<Self> {
        let dev = unitarity_deviation(&mat);
        if dev <= T::unitary_tol() {
            Ok(UnitaryMat4 { mat })
        } else {
            Err(Error::NotUnitary { deviation: dev.as_f64() })
        }
    }

    pub(crate) fn from_trusted(mat: ComplexMat4<T>) -> Self {
        debug_assert!(unitarity_deviation(&mat) <= T::unitary_tol());
        UnitaryMat4 { mat }
    }

    pub fn identity() -> Self {
        UnitaryMat4 { mat: ComplexMat4::identity() }
    }

    pub fn mat(&self) -> &ComplexMat4<T> {
        &self.mat
    }

    pub fn adjoint(&self) -> Self {
        UnitaryMat4 { mat: self.mat.adjoint() }
    }

    /// `self · other`.
    pub fn compose(&self, other: &Self) -> Self {
        UnitaryMat4 { mat: self.mat * other.mat }
    }
}

impl<T> Deref for UnitaryMat4<T> {
    type Target = ComplexMat4<T>;
    fn deref(&self) -> &ComplexMat4<T> {
        &self.mat
    }
}

/// `max |U†U - I|`.
pub fn unitarity_deviation<T: Real>(u: &ComplexMat4<T>) -> T {
    (u.adjoint() * *u).max_abs_diff(&ComplexMat4::identity())
}

/// Eigenvalues sorted non-ascending with the matching eigenvector columns.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Spectrum<T> {
    pub values: [T; 4],
    pub eigvecs: UnitaryMat4<T>,
}

impl<T: Real> Spectrum<T> {
    /// `Φ · diag(values) · Φ†`.
    pub fn reconstruct(&self) -> ComplexMat4<T> {
        *self.eigvecs.mat() * ComplexMat4::from_diag(self.values) * self.eigvecs.mat().adjoint()
    }

    /// Largest absolute eigenvalue difference.
    pub fn distance(&self, other: &Spectrum<T>) -> T {
        self.values
            .iter()
            .zip(other.values.iter())
            .fold(T::zero(), |m, (a, b)| m.max((*a - *b).abs()))
    }

    /// Number of eigenvalues strictly above `threshold`.
    pub fn rank(&self, threshold: T) -> usize {
        self.values.iter().filter(|&&v| v > threshold).count()
    }
}

/// Eigendecomposition of a Hermitian 4x4 matrix.
pub fn hermitian_eig<T: Real>(a: &ComplexMat4<T>) -> Result<Spectrum<T>> {
    let dev = a.hermiticity_deviation();
    if !(dev <= T::eig_input_tol()) {
        return Err(Error::NonHermitian { deviation: dev.as_f64() });
    }
    let (values, vecs) = jacobi_eigh(a);
    Ok(Spectrum { values, eigvecs: UnitaryMat4 { mat: vecs } })
}

/// Partial transpose on the second qubit: `(2i+j, 2k+l) -> (2i+l, 2k+j)`.
pub fn partial_transpose<T: Real>(a: &ComplexMat4<T>) -> ComplexMat4<T> {
    let mut out = ComplexMat4::zeros();
    for i in 0..2 {
        for j in 0..2 {
            for k in 0..2 {
                for l in 0..2 {
                    out.0[2 * i + l][2 * k + j] = a.0[2 * i + j][2 * k + l];
                }
            }
        }
    }
    out
}

/// Sum of singular values.
pub fn trace_norm<T: Real>(a: &ComplexMat4<T>) -> T {
    if a.hermiticity_deviation() == T::zero() {
        let (vals, _) = jacobi_eigh(a);
        return vals.iter().fold(T::zero(), |s, v| s + v.abs());
    }
    singular_values4(a).iter().fold(T::zero(), |s, &v| s + v)
}

/// `U ρ U†`, re-validated.
pub fn conjugate<T: Real>(rho: &DensityMatrix<T>, u: &UnitaryMat4<T>) -> Result<DensityMatrix<T>> {
    DensityMatrix::new(rho.mat.conjugated_by(&u.mat).hermitized())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex<f64> {
        Complex::new(re, 0.0)
    }

    fn bell() -> DensityMatrix<f64> {
        let s = 0.5f64.sqrt();
        DensityMatrix::pure([c(s), c(0.0), c(0.0), c(s)]).unwrap()
    }

    #[test]
    fn maximally_mixed_spectrum() {
        let s = DensityMatrix::<f64>::maximally_mixed().spectrum();
        assert_eq!(s.values, [0.25; 4]);
    }

    #[test]
    fn diagonal_spectrum_is_permutation() {
        let rho = DensityMatrix::diagonal([0.4, 0.3, 0.2, 0.1]).unwrap();
        let s = rho.spectrum();
        assert_eq!(s.values, [0.4, 0.3, 0.2, 0.1]);
        for col in 0..4 {
            let ones = (0..4).filter(|&r| s.eigvecs[(r, col)] == c(1.0)).count();
            let zeros = (0..4).filter(|&r| s.eigvecs[(r, col)] == c(0.0)).count();
            assert_eq!((ones, zeros), (1, 3));
        }
    }

    #[test]
    fn non_hermitian_input_rejected() {
        let mut a = ComplexMat4::<f64>::identity();
        a[(0, 1)] = c(1e-3);
        assert!(matches!(hermitian_eig(&a), Err(Error::NonHermitian { .. })));
    }

    #[test]
    fn product_diagonal_state_is_pt_invariant() {
        let rho = DensityMatrix::diagonal([0.42, 0.18, 0.28, 0.12]).unwrap();
        assert_eq!(rho.partial_transpose(), *rho.mat());
    }

    #[test]
    fn bell_partial_transpose_spectrum() {
        let pt = bell().partial_transpose();
        let s = hermitian_eig(&pt).unwrap();
        let expect = [0.5, 0.5, 0.5, -0.5];
        for (a, b) in s.values.iter().zip(expect.iter()) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn x_form_partial_transpose_swaps_coherences() {
        let mut a = ComplexMat4::<f64>::from_diag([0.4, 0.1, 0.2, 0.3]);
        a[(0, 3)] = Complex::new(0.1, 0.05);
        a[(3, 0)] = a[(0, 3)].conj();
        a[(1, 2)] = Complex::new(0.02, -0.03);
        a[(2, 1)] = a[(1, 2)].conj();
        let pt = partial_transpose(&a);
        // Index-swap oracle: rows/cols (0,3) <-> (1,2) exchange their coherences.
        assert_eq!(pt[(0, 3)], a[(1, 2)]);
        assert_eq!(pt[(1, 2)], a[(0, 3)]);
        assert_eq!(pt[(0, 1)], c(0.0));
        assert_eq!(pt.diag_re(), a.diag_re());
    }

    #[test]
    fn trace_norm_examples() {
        assert!((trace_norm(&ComplexMat4::<f64>::identity()) - 4.0).abs() < 1e-14);
        assert!((trace_norm(bell().mat()) - 1.0).abs() < 1e-14);
        let d = ComplexMat4::<f64>::from_diag([0.5, -0.5, 0.0, 0.0]);
        assert!((trace_norm(&d) - 1.0).abs() < 1e-14);
        // Non-Hermitian: a nilpotent Jordan block has singular values (1, 0, 0, 0).
        let mut j = ComplexMat4::<f64>::zeros();
        j[(0, 1)] = c(1.0);
        assert!((trace_norm(&j) - 1.0).abs() < 1e-14);
    }

    #[test]
    fn density_checks() {
        let mixed = ComplexMat4::<f64>::from_diag([0.25; 4]);
        assert!(is_density_matrix(&mixed, 1e-9).is_valid());
        let bad = ComplexMat4::<f64>::from_diag([1.5, -0.5, 0.0, 0.0]);
        let d = is_density_matrix(&bad, 1e-9);
        assert_eq!(d.failures, vec![Failure::NotPositive]);
        let mut skew = mixed;
        skew[(0, 1)] = c(0.1);
        let d = is_density_matrix(&skew, 1e-9);
        assert!(d.failures.contains(&Failure::NonHermitian));
        let d = is_density_matrix(&mixed.scale(2.0), 1e-9);
        assert_eq!(d.failures, vec![Failure::Trace]);
        assert!(matches!(DensityMatrix::new(bad), Err(Error::InvalidState(_))));
    }

    #[test]
    fn conjugate_identity_and_round_trip() {
        let rho = bell();
        let id = UnitaryMat4::identity();
        assert_eq!(conjugate(&rho, &id).unwrap(), rho);
        let h = 0.5f64.sqrt();
        let u = UnitaryMat4::new(ComplexMat4::from_fn(|i, j| match (i, j) {
            (0, 0) | (0, 1) | (1, 0) => c(h),
            (1, 1) => c(-h),
            (2, 3) => Complex::new(0.0, 1.0),
            (3, 2) => Complex::new(0.0, 1.0),
            _ => c(0.0),
        }))
        .unwrap();
        let there = conjugate(&rho, &u).unwrap();
        let back = conjugate(&there, &u.adjoint()).unwrap();
        assert!(back.max_abs_diff(&rho) < 1e-12);
    }
}
