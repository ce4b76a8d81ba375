mod common;

use std::f64::consts::{FRAC_PI_2, TAU};

use num_complex::Complex;
use proptest::prelude::*;

use common::*;
use xstate_core::matrix::{self, hermitian_eig, kron2, partial_transpose, CMat};
use xstate_core::measures::{self, binary_entropy, concurrence_general, eof_from_concurrence, negativity_general};
use xstate_core::minimal_set::{cp_boundary, minset_state};
use xstate_core::universality::{conjugate_x, disentangle_params, evolve, x_unitary};
use xstate_core::xstate::{is_x_form, XParams as GenericParams};
use xstate_core::{DensityMatrix, XAngles, XParams};

fn xparams() -> impl Strategy<Value = XParams> {
    (0.0..FRAC_PI_2, 0.0..FRAC_PI_2, 0.0..FRAC_PI_2, 0.0..=1.0f64, 0.0..=1.0f64, 0.0..TAU, 0.0..TAU).prop_map(
        |(theta, phi, psi, fx, fy, mu, nu)| {
            let base = XParams::new(theta, phi, psi, 0.0, 0.0, mu, nu);
            let k = base.coeffs();
            XParams { x: fx * k.h_cal, y: fy * k.g_cal, ..base }
        },
    )
}

fn angles() -> impl Strategy<Value = XAngles> {
    (0.0..TAU, 0.0..TAU, 0.0..TAU, 0.0..TAU).prop_map(|(b1, b2, b3, b4)| XAngles { b1, b2, b3, b4 })
}

/// Haar-ish SU(2) from Euler angles.
fn local_unitary(a: f64, b: f64, c: f64) -> CMat<f64, 2> {
    let e = |t: f64| Complex::from_polar(1.0, t);
    CMat([[e(b) * a.cos(), e(c) * a.sin()], [-e(-c) * a.sin(), e(-b) * a.cos()]])
}

fn elementary_symmetric(l: [f64; 4]) -> [f64; 4] {
    let mut e = [0.0; 5];
    e[0] = 1.0;
    for &v in &l {
        for k in (1..=4).rev() {
            e[k] += e[k - 1] * v;
        }
    }
    [e[1], e[2], e[3], e[4]]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn coordinates_round_trip(p in xparams()) {
        let m = p.to_matrix();
        let q = XParams::from_density(&m, 1e-14).unwrap();
        prop_assert!(q.to_matrix().max_abs_diff(&m) < 1e-12);
    }

    #[test]
    fn physical_states_are_density_matrices(p in xparams()) {
        let d = matrix::is_density_matrix(&p.to_matrix(), 1e-12);
        prop_assert!(d.is_valid(), "{d}");
    }

    #[test]
    fn char_poly_matches_spectrum(p in xparams()) {
        let eig = spectrum(&p.to_matrix());
        let a = p.char_poly();
        let e = elementary_symmetric(eig);
        prop_assert!((a.a1 - e[0]).abs() < 1e-12);
        prop_assert!((a.a2 - e[1]).abs() < 1e-12);
        prop_assert!((a.a3 - e[2]).abs() < 1e-12);
        prop_assert!((a.a4 - e[3]).abs() < 1e-12);
        prop_assert!(a.all_nonnegative(1e-14));
        let gap = eig.windows(2).map(|w| w[0] - w[1]).fold(f64::INFINITY, f64::min);
        if gap > 1e-3 {
            let r = a.roots();
            for (x, y) in r.iter().zip(eig.iter()) {
                prop_assert!((x - y).abs() < 1e-9, "{r:?} vs {eig:?}");
            }
        }
    }

    #[test]
    fn pushing_past_the_bound_breaks_positivity(p in xparams(), over in 1e-6..1e-2f64) {
        let k = p.coeffs();
        prop_assume!(k.h_cal > 1e-4);
        let bad = XParams { x: k.h_cal + over, ..p };
        prop_assert!(!bad.is_physical());
        prop_assert!(!bad.char_poly().all_nonnegative(0.0));
    }

    #[test]
    fn separability_agrees_with_ppt(p in xparams()) {
        let sep = p.is_separable().unwrap();
        let pt_min = ppt_min(&p.to_matrix());
        prop_assert!(sep == (pt_min >= -1e-10), "sep {} pt_min {:e}", sep, pt_min);
    }

    #[test]
    fn block_conjugation_keeps_x_form(p in xparams(), b in angles()) {
        let u = x_unitary(&b);
        let m = p.to_matrix().conjugated_by(u.mat());
        prop_assert!(is_x_form(&m, 1e-12));
        let q = conjugate_x(&p, &b).unwrap();
        prop_assert!(q.to_matrix().max_abs_diff(&m) < 1e-12);
        prop_assert!((q.x - m[(0, 3)].norm_sqr()).abs() < 1e-10);
        prop_assert!((q.y - m[(1, 2)].norm_sqr()).abs() < 1e-10);
    }

    #[test]
    fn block_conjugation_conserves(p in xparams(), b in angles()) {
        let q = conjugate_x(&p, &b).unwrap();
        let (k0, k1) = (p.coeffs(), q.coeffs());
        prop_assert!((k0.b_cal - k1.b_cal).abs() < 1e-12);
        prop_assert!((k0.c_cal - k1.c_cal).abs() < 1e-12);
        prop_assert!(((k0.g_cal - p.y) - (k1.g_cal - q.y)).abs() < 1e-12);
        prop_assert!(((k0.h_cal - p.x) - (k1.h_cal - q.x)).abs() < 1e-12);
    }

    #[test]
    fn phase_matched_coherence_formula(p in xparams(), b1 in 0.0..FRAC_PI_2) {
        let k = p.coeffs();
        let b = XAngles { b1, b2: p.mu, b3: 0.0, b4: p.nu };
        let q = conjugate_x(&p, &b).unwrap();
        let closed = (k.h_low / 2.0 * (2.0 * b1).sin() - p.x.sqrt() * (2.0 * b1).cos()).powi(2);
        prop_assert!((q.x - closed).abs() < 1e-12);
    }

    #[test]
    fn disentangled_endpoint_is_separable(p in xparams()) {
        let sol = disentangle_params(&p).unwrap();
        let end = evolve(&p, &sol, 1.0).unwrap();
        prop_assert!(end.params.is_separable().unwrap());
        prop_assert!(ppt_min(&end.params.to_matrix()) >= -1e-10);
    }

    #[test]
    fn path_is_isospectral_and_continuous(p in xparams(), t in 0.0..0.999f64) {
        let sol = disentangle_params(&p).unwrap();
        let a = evolve(&p, &sol, t).unwrap();
        let b = evolve(&p, &sol, t + 1e-3).unwrap();
        let (ma, mb) = (a.params.to_matrix(), b.params.to_matrix());
        prop_assert!(spectral_distance(&ma, &p.to_matrix()) < 1e-9);
        // Lipschitz in τ: rotation angles are at most π/2.
        prop_assert!(matrix::trace_norm(&(ma - mb)) < 1e-2);
        prop_assert!((a.concurrence - b.concurrence).abs() < 1e-2);
    }

    #[test]
    fn concurrence_is_local_unitary_invariant(seed in any::<u64>(), e in prop::array::uniform6(0.0..TAU)) {
        let rho = xstate_core::ensemble::random_density(xstate_core::ensemble::Seed(seed), xstate_core::ensemble::DensityKind::HilbertSchmidt);
        let u = kron2(&local_unitary(e[0], e[1], e[2]), &local_unitary(e[3], e[4], e[5]));
        let moved = DensityMatrix::new(rho.mat().conjugated_by(&u).hermitized()).unwrap();
        prop_assert!((concurrence_general(&rho) - concurrence_general(&moved)).abs() < 1e-10);
        prop_assert!((negativity_general(&rho) - negativity_general(&moved)).abs() < 1e-10);
    }

    #[test]
    fn negativity_matches_trace_norm(seed in any::<u64>()) {
        let rho = xstate_core::ensemble::random_density(xstate_core::ensemble::Seed(seed), xstate_core::ensemble::DensityKind::Rank(2));
        prop_assert!((negativity_general(&rho) - negativity_trace_norm(&rho)).abs() < 1e-12);
        prop_assert!(partial_transpose(&partial_transpose(&rho)) == *rho.mat());
    }

    #[test]
    fn formation_entropy_monotone(c1 in 0.0..=1.0f64, c2 in 0.0..=1.0f64) {
        let (lo, hi) = if c1 <= c2 { (c1, c2) } else { (c2, c1) };
        let (a, b) = (eof_from_concurrence(lo), eof_from_concurrence(hi));
        prop_assert!(a <= b + 1e-15);
        prop_assert!((0.0..=1.0 + 1e-15).contains(&b));
        prop_assert!(binary_entropy(c1) >= 0.0);
    }

    #[test]
    fn continuity_bound_monotone(t1 in 0.0..(1.0 / 3.0), t2 in 0.0..(1.0 / 3.0)) {
        let bound = |t: f64| {
            let a = DensityMatrix::diagonal([0.5, 0.5, 0.0, 0.0]).unwrap();
            let b = DensityMatrix::diagonal([0.5 - t / 2.0, 0.5, t / 2.0, 0.0]).unwrap();
            measures::fannes_ree_bound(a.mat(), b.mat()).unwrap()
        };
        let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
        prop_assert!(bound(lo) <= bound(hi) + 1e-12);
        prop_assert!(bound(lo) >= 0.0);
    }

    #[test]
    fn minimal_set_hits_prescribed_pair(p in (1.0 / 3.0)..1.0f64, f in 0.0..=1.0f64) {
        let c = f * cp_boundary(p).unwrap();
        let rho = minset_state(p, c).unwrap();
        prop_assert!((measures::purity_general(&rho) - p).abs() < 1e-10);
        prop_assert!((concurrence_general(&rho) - c).abs() < 1e-10);
    }

    #[test]
    fn single_precision_tracks_double(p in xparams()) {
        let q: GenericParams<f32> = p.cast();
        prop_assert!((q.concurrence() as f64 - p.concurrence()).abs() < 1e-4);
        prop_assert!((q.negativity() as f64 - p.negativity()).abs() < 1e-4);
        let eig = hermitian_eig(&q.to_matrix()).unwrap();
        let want = spectrum(&p.to_matrix());
        for (a, b) in eig.values.iter().zip(want.iter()) {
            prop_assert!((*a as f64 - b).abs() < 1e-4);
        }
    }
}
