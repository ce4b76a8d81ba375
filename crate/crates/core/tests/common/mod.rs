//! Reference matrices and independent oracles shared by the integration tests.
#![allow(dead_code)]

use num_complex::Complex;
use xstate_core::matrix::{hermitian_eig, jacobi_eigh, partial_transpose, trace_norm};
use xstate_core::ComplexMat4;

pub fn c(re: f64) -> Complex<f64> {
    Complex::new(re, 0.0)
}

/// The rank-3 non-X state with purity 0.54 and concurrence 0.4.
pub fn fortieths() -> ComplexMat4 {
    let s3 = 3f64.sqrt();
    let rows = [
        [13.0, 3.0 * s3, 2.0 * s3, -10.0],
        [3.0 * s3, 7.0, 6.0, -2.0 * s3],
        [2.0 * s3, 6.0, 7.0, -3.0 * s3],
        [-10.0, -2.0 * s3, -3.0 * s3, 13.0],
    ];
    ComplexMat4::from_fn(|i, j| c(rows[i][j] / 40.0))
}

/// Rank-3 X-state with coherence in the outer block, same (p, c) as above.
pub fn thirtieths_outer() -> ComplexMat4 {
    let s19 = 19f64.sqrt();
    let mut m = ComplexMat4::from_diag([
        (10.0 + 2.0 * s19) / 30.0,
        (10.0 - s19) / 30.0,
        0.0,
        (10.0 - s19) / 30.0,
    ]);
    m[(0, 3)] = c(6.0 / 30.0);
    m[(3, 0)] = c(6.0 / 30.0);
    m
}

/// Rank-3 X-state with coherence in the inner block, same (p, c) as above.
pub fn thirtieths_inner() -> ComplexMat4 {
    let s19 = 19f64.sqrt();
    let mut m = ComplexMat4::from_diag([
        (10.0 - 2.0 * s19) / 30.0,
        (10.0 + s19) / 30.0,
        (10.0 + s19) / 30.0,
        0.0,
    ]);
    m[(1, 2)] = c(6.0 / 30.0);
    m[(2, 1)] = c(6.0 / 30.0);
    m
}

/// Smallest eigenvalue of the partial transpose.
pub fn ppt_min(m: &ComplexMat4) -> f64 {
    jacobi_eigh(&partial_transpose(m)).0[3]
}

/// Negativity as `(‖ρ^T_B‖₁ - 1) / 2`.
pub fn negativity_trace_norm(m: &ComplexMat4) -> f64 {
    0.5 * (trace_norm(&partial_transpose(m)) - 1.0)
}

pub fn numerical_rank(m: &ComplexMat4) -> usize {
    hermitian_eig(m).unwrap().rank(1e-9)
}

pub fn spectrum(m: &ComplexMat4) -> [f64; 4] {
    jacobi_eigh(m).0
}

pub fn spectral_distance(a: &ComplexMat4, b: &ComplexMat4) -> f64 {
    spectrum(a)
        .iter()
        .zip(spectrum(b).iter())
        .fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}
