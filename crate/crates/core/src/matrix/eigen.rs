//! Cyclic complex Jacobi eigensolver for small Hermitian matrices.

use num_complex::Complex;
use num_traits::Zero;

use super::cmat::CMat;
use crate::scalar::Real;

const MAX_SWEEPS: usize = 64;

/// Eigen-decomposition of a Hermitian matrix.
///
/// Returns eigenvalues sorted non-ascending (stable on ties) and the unitary
/// whose columns are the matching eigenvectors. Each eigenvector is rotated so
/// that its first non-negligible component is real and positive. The input is
/// symmetrized before the sweeps; callers are responsible for checking that it
/// was Hermitian to begin with.
pub fn jacobi_eigh<T: Real, const N: usize>(a: &CMat<T, N>) -> ([T; N], CMat<T, N>) {
    let mut m = a.hermitized();
    let mut v = CMat::<T, N>::identity();
    let scale = m.frobenius();
    if scale == T::zero() {
        return ([T::zero(); N], v);
    }
    let eps = T::epsilon();
    let stop = (eps * scale) * (eps * scale);

    for _ in 0..MAX_SWEEPS {
        let mut off = T::zero();
        for p in 0..N {
            for q in (p + 1)..N {
                off += m.0[p][q].norm_sqr();
            }
        }
        if off <= stop {
            break;
        }
        for p in 0..N {
            for q in (p + 1)..N {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..N).collect();
    order.sort_by(|&i, &j| {
        m.0[j][j]
            .re
            .partial_cmp(&m.0[i][i].re)
            .unwrap_or(std::cmp::Ordering::Equal)
    });

    let mut values = [T::zero(); N];
    let mut vecs = CMat::<T, N>::zeros();
    let floor = eps.sqrt();
    for (k, &src) in order.iter().enumerate() {
        values[k] = m.0[src][src].re;
        let lead = (0..N)
            .map(|r| v.0[r][src])
            .find(|z| z.norm() > floor)
            .unwrap_or(Complex::new(T::one(), T::zero()));
        let phase = lead.conj() / lead.norm();
        for r in 0..N {
            vecs.0[r][k] = v.0[r][src] * phase;
        }
    }
    (values, vecs)
}

/// One Jacobi rotation annihilating `m[p][q]`.
fn rotate<T: Real, const N: usize>(m: &mut CMat<T, N>, v: &mut CMat<T, N>, p: usize, q: usize) {
    let apq = m.0[p][q];
    let mag = apq.norm();
    if mag.is_zero() {
        return;
    }
    let phase = apq / mag;
    let app = m.0[p][p].re;
    let aqq = m.0[q][q].re;
    let two = T::lit(2.0);
    let theta = (aqq - app) / (two * mag);
    let t = if theta.is_zero() {
        T::one()
    } else {
        theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt())
    };
    let c = T::one() / (t * t + T::one()).sqrt();
    let s = t * c;

    // Q = diag(1, e^{-i phi}) . [[c, s], [-s, c]] restricted to (p, q).
    let qpp = Complex::new(c, T::zero());
    let qpq = Complex::new(s, T::zero());
    let qqp = -phase.conj() * s;
    let qqq = phase.conj() * c;

    for k in 0..N {
        let akp = m.0[k][p];
        let akq = m.0[k][q];
        m.0[k][p] = akp * qpp + akq * qqp;
        m.0[k][q] = akp * qpq + akq * qqq;
    }
    for k in 0..N {
        let apk = m.0[p][k];
        let aqk = m.0[q][k];
        m.0[p][k] = qpp.conj() * apk + qqp.conj() * aqk;
        m.0[q][k] = qpq.conj() * apk + qqq.conj() * aqk;
    }
    m.0[p][q] = Complex::zero();
    m.0[q][p] = Complex::zero();
    m.0[p][p].im = T::zero();
    m.0[q][q].im = T::zero();

    for k in 0..N {
        let vkp = v.0[k][p];
        let vkq = v.0[k][q];
        v.0[k][p] = vkp * qpp + vkq * qqp;
        v.0[k][q] = vkp * qpq + vkq * qqq;
    }
}

/// Singular values of `a`, non-ascending, from the Hermitian dilation
/// `[[0, A], [A†, 0]]` whose eigenvalues are `±σ_i`. Accurate in absolute
/// terms even for tiny singular values.
pub fn singular_values4<T: Real>(a: &CMat<T, 4>) -> [T; 4] {
    let dil = CMat::<T, 8>::from_fn(|i, j| match (i < 4, j < 4) {
        (true, false) => a.0[i][j - 4],
        (false, true) => a.0[j][i - 4].conj(),
        _ => Complex::zero(),
    });
    let (vals, _) = jacobi_eigh(&dil);
    [vals[0].max(T::zero()), vals[1].max(T::zero()), vals[2].max(T::zero()), vals[3].max(T::zero())]
}
