use std::ops::{Add, Index, IndexMut, Mul, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use crate::scalar::Real;

/// Dense `N x N` complex matrix stored row-major.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CMat<T, const N: usize>(pub [[Complex<T>; N]; N]);

/// The 4x4 complex matrix carrying every two-qubit operator.
pub type ComplexMat4<T> = CMat<T, 4>;

impl<T: Real, const N: usize> CMat<T, N> {
    pub fn zeros() -> Self {
        CMat([[Complex::zero(); N]; N])
    }

    pub fn identity() -> Self {
        Self::from_fn(|i, j| if i == j { Complex::one() } else { Complex::zero() })
    }

    pub fn from_fn(mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut m = Self::zeros();
        for i in 0..N {
            for j in 0..N {
                m.0[i][j] = f(i, j);
            }
        }
        m
    }

    /// Diagonal matrix with real entries.
    pub fn from_diag(d: [T; N]) -> Self {
        Self::from_fn(|i, j| if i == j { Complex::new(d[i], T::zero()) } else { Complex::zero() })
    }

    /// Real matrix promoted to complex.
    pub fn from_real(r: [[T; N]; N]) -> Self {
        Self::from_fn(|i, j| Complex::new(r[i][j], T::zero()))
    }

    /// Projector `|v><v|` (not normalized).
    pub fn outer(v: &[Complex<T>; N]) -> Self {
        Self::from_fn(|i, j| v[i] * v[j].conj())
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(|i, j| self.0[j][i].conj())
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.0[j][i])
    }

    pub fn conj(&self) -> Self {
        Self::from_fn(|i, j| self.0[i][j].conj())
    }

    pub fn scale(&self, s: T) -> Self {
        Self::from_fn(|i, j| self.0[i][j] * s)
    }

    pub fn trace(&self) -> Complex<T> {
        (0..N).fold(Complex::zero(), |acc, i| acc + self.0[i][i])
    }

    pub fn diag_re(&self) -> [T; N] {
        let mut d = [T::zero(); N];
        for (i, di) in d.iter_mut().enumerate() {
            *di = self.0[i][i].re;
        }
        d
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> T {
        self.0
            .iter()
            .flat_map(|r| r.iter())
            .fold(T::zero(), |m, z| m.max(z.norm()))
    }

    pub fn max_abs_diff(&self, other: &Self) -> T {
        (*self - *other).max_abs()
    }

    pub fn frobenius(&self) -> T {
        self.0
            .iter()
            .flat_map(|r| r.iter())
            .fold(T::zero(), |s, z| s + z.norm_sqr())
            .sqrt()
    }

    /// `max |A - A†|`.
    pub fn hermiticity_deviation(&self) -> T {
        let mut dev = T::zero();
        for i in 0..N {
            for j in i..N {
                dev = dev.max((self.0[i][j] - self.0[j][i].conj()).norm());
            }
        }
        dev
    }

    /// `(A + A†) / 2`.
    pub fn hermitized(&self) -> Self {
        let half = T::lit(0.5);
        Self::from_fn(|i, j| (self.0[i][j] + self.0[j][i].conj()) * half)
    }

    /// `U A U†`.
    pub fn conjugated_by(&self, u: &Self) -> Self {
        *u * *self * u.adjoint()
    }

    /// Casts every entry to another scalar type.
    pub fn cast<S: Real>(&self) -> CMat<S, N> {
        CMat::from_fn(|i, j| {
            let z = self.0[i][j];
            Complex::new(S::lit(z.re.as_f64()), S::lit(z.im.as_f64()))
        })
    }
}

impl<T: Real, const N: usize> Index<(usize, usize)> for CMat<T, N> {
    type Output = Complex<T>;
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        &self.0[i][j]
    }
}

impl<T: Real, const N: usize> IndexMut<(usize, usize)> for CMat<T, N> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        &mut self.0[i][j]
    }
}

impl<T: Real, const N: usize> Mul for CMat<T, N> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let mut out = Self::zeros();
        for i in 0..N {
            for k in 0..N {
                let a = self.0[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..N {
                    out.0[i][j] = out.0[i][j] + a * rhs.0[k][j];
                }
            }
        }
        out
    }
}

impl<T: Real, const N: usize> Add for CMat<T, N> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| self.0[i][j] + rhs.0[i][j])
    }
}

impl<T: Real, const N: usize> Sub for CMat<T, N> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::from_fn(|i, j| self.0[i][j] - rhs.0[i][j])
    }
}

/// Kronecker product of two 2x2 matrices.
pub fn kron2<T: Real>(a: &CMat<T, 2>, b: &CMat<T, 2>) -> ComplexMat4<T> {
    CMat::from_fn(|r, c| a.0[r / 2][c / 2] * b.0[r % 2][c % 2])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kron_of_identities_is_identity() {
        let i2 = CMat::<f64, 2>::identity();
        assert_eq!(kron2(&i2, &i2), ComplexMat4::identity());
    }

    #[test]
    fn hermitized_matrix_has_zero_deviation() {
        let a = CMat::<f64, 4>::from_fn(|i, j| Complex::new(i as f64, j as f64 * 0.5));
        assert!(a.hermiticity_deviation() > 0.1);
        assert_eq!(a.hermitized().hermiticity_deviation(), 0.0);
    }
}
