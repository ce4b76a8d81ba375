//! A minimal family of X-states reaching every admissible (purity,
//! concurrence) pair, its boundary functions, and diagram tables.
//!
//! The family has three pieces: pure states `ρ1(c)` at `p = 1`, rank-2 states
//! `ρ2(u, c)` for `p ∈ [5/9, 1)`, and rank-3 states `ρ3(w, c)` for
//! `p ∈ [1/3, 5/9)`. Below purity 1/3 every state is separable.

use std::fmt::Write as _;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::matrix::{ComplexMat4, DensityMatrix};
use crate::scalar::Real;
use crate::xstate::{RankClass, XParams};

/// Distance from 5/9 within which a purity is treated as exactly 5/9.
const JUNCTION_SNAP: f64 = 1e-12;
/// Slack on `c <= c_max(p)` and on domain edges.
const EDGE_SLACK: f64 = 1e-12;
/// Noise floor for the radicand of `w` at `c = v(p)`.
const W_CLAMP: f64 = 1e-14;

/// Boundary functions at one `(p, c)`. `None` marks a scalar outside its domain.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundaryScalars<T> {
    pub u: Option<T>,
    pub v: Option<T>,
    pub w: Option<T>,
    pub z: Option<T>,
    pub q: Option<T>,
    pub r: Option<T>,
}

/// A point of the concurrence-purity plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CPPoint<T> {
    pub p: T,
    pub c: T,
}

impl<T: Real> CPPoint<T> {
    pub fn new(p: T, c: T) -> Result<Self> {
        let max = cp_boundary(p)?;
        if c < T::zero() || c > max + T::lit(EDGE_SLACK) {
            return Err(out_of_diagram(p, c, max));
        }
        Ok(CPPoint { p, c })
    }
}

fn out_of_diagram<T: Real>(p: T, c: T, c_max: T) -> Error {
    Error::OutOfDiagram { p: p.as_f64(), c: c.as_f64(), c_max: c_max.as_f64() }
}

fn domain(msg: String) -> Error {
    Error::Domain(msg)
}

fn five_ninths<T: Real>() -> T {
    T::lit(5.0) / T::lit(9.0)
}

fn third<T: Real>() -> T {
    T::one() / T::lit(3.0)
}

/// `(1 + √(2p - 1)) / 2`, the larger eigenvalue of a rank-2 state of purity `p`.
pub fn u<T: Real>(p: T) -> Result<T> {
    let half = T::lit(0.5);
    if !(p >= half - T::lit(EDGE_SLACK) && p <= T::one() + T::lit(EDGE_SLACK)) {
        return Err(domain(format!("u needs p in [1/2, 1], got {p}")));
    }
    Ok(half * (T::one() + (T::lit(2.0) * p - T::one()).max(T::zero()).sqrt()))
}

/// `√(2p - 2/3)`.
pub fn v<T: Real>(p: T) -> Result<T> {
    if !(p >= third::<T>() - T::lit(EDGE_SLACK) && p <= T::one() + T::lit(EDGE_SLACK)) {
        return Err(domain(format!("v needs p in [1/3, 1], got {p}")));
    }
    Ok((T::lit(2.0) * p - T::lit(2.0) * third::<T>()).max(T::zero()).sqrt())
}

/// `1/3 - ½ √(v²/3 - c²/3)`, defined for `c <= v(p)`.
pub fn w<T: Real>(p: T, c: T) -> Result<T> {
    let vp = v(p)?;
    let arg = (vp * vp - c * c) / T::lit(3.0);
    if c < T::zero() || arg < -T::lit(W_CLAMP) {
        return Err(domain(format!("w needs 0 <= c <= v(p) = {vp}, got c = {c}")));
    }
    Ok(third::<T>() - T::lit(0.5) * arg.max(T::zero()).sqrt())
}

/// The diagonal weight of the rank-3 kind-2 family: `4/3 - 2w` when
/// `2p <= 1 + c²`, else `2w`.
pub fn z<T: Real>(p: T, c: T) -> Result<T> {
    let wv = w(p, c)?;
    let two = T::lit(2.0);
    if two * p <= T::one() + c * c {
        Ok(T::lit(4.0) * third::<T>() - two * wv)
    } else {
        Ok(two * wv)
    }
}

/// `√(2p - 1)`.
pub fn q<T: Real>(p: T) -> Result<T> {
    let half = T::lit(0.5);
    if !(p >= half - T::lit(EDGE_SLACK) && p <= T::one() + T::lit(EDGE_SLACK)) {
        return Err(domain(format!("q needs p in [1/2, 1], got {p}")));
    }
    Ok((T::lit(2.0) * p - T::one()).max(T::zero()).sqrt())
}

/// `√2 √(1 - 2p + √(2p - 1))`, the largest concurrence the rank-3 kind-1
/// family reaches above purity 5/9.
pub fn r<T: Real>(p: T) -> Result<T> {
    let qp = q(p)?;
    let two = T::lit(2.0);
    Ok(two.sqrt() * (T::one() - two * p + qp).max(T::zero()).sqrt())
}

pub fn boundary_scalars<T: Real>(p: T, c: T) -> BoundaryScalars<T> {
    BoundaryScalars {
        u: u(p).ok(),
        v: v(p).ok(),
        w: w(p, c).ok(),
        z: z(p, c).ok(),
        q: q(p).ok(),
        r: r(p).ok(),
    }
}

/// Largest concurrence of any two-qubit state with purity `p`.
pub fn cp_boundary<T: Real>(p: T) -> Result<T> {
    let lo = T::lit(0.25);
    if !(p >= lo - T::lit(EDGE_SLACK) && p <= T::one() + T::lit(EDGE_SLACK)) {
        return Err(domain(format!("purity {p} outside [1/4, 1]")));
    }
    if p <= third() {
        Ok(T::zero())
    } else if p < five_ninths() {
        v(p)
    } else {
        u(p)
    }
}

/// Which piece of the family covers purity `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Piece {
    Pure,
    RankTwo,
    RankThree,
}

pub fn piece<T: Real>(p: T) -> Result<Piece> {
    let snap = T::lit(JUNCTION_SNAP);
    if !(p >= third::<T>() - snap && p <= T::one() + snap) {
        return Err(domain(format!("purity {p} outside [1/3, 1]")));
    }
    Ok(if p >= T::one() - snap {
        Piece::Pure
    } else if p >= five_ninths::<T>() - snap {
        Piece::RankTwo
    } else {
        Piece::RankThree
    })
}

fn clamp_c<T: Real>(p: T, c: T) -> Result<T> {
    let max = cp_boundary(p)?;
    if !(c >= T::zero()) || c > max + T::lit(EDGE_SLACK) {
        return Err(out_of_diagram(p, c, max));
    }
    Ok(c.min(max))
}

/// Parameters of the family member at `(p, c)`.
pub fn minset_params<T: Real>(p: T, c: T) -> Result<XParams<T>> {
    let piece = piece(p)?;
    let c = clamp_c(p, c)?;
    match piece {
        Piece::Pure => theorem_params_unchecked(p, c, Variant::R1K1),
        Piece::RankTwo => theorem_params_unchecked(p, c, Variant::R2K3),
        Piece::RankThree => theorem_params_unchecked(p, c, Variant::R3K1),
    }
}

/// The family member at `(p, c)` as an explicit matrix.
pub fn minset_state<T: Real>(p: T, c: T) -> Result<DensityMatrix<T>> {
    let piece = piece(p)?;
    let c = clamp_c(p, c)?;
    let half = T::lit(0.5);
    let two = T::lit(2.0);
    let re = |v: T| Complex::new(v, T::zero());
    let mut m = ComplexMat4::zeros();
    match piece {
        Piece::Pure => {
            let s = (T::one() - c * c).max(T::zero()).sqrt();
            m[(0, 0)] = re(half * (T::one() + s));
            m[(3, 3)] = re(half * (T::one() - s));
            m[(0, 3)] = re(half * c);
            m[(3, 0)] = re(half * c);
        }
        Piece::RankTwo => {
            let uu = u(p.min(T::one()))?;
            let s = (uu * uu - c * c).max(T::zero()).sqrt();
            m[(0, 0)] = re(half * (two - two * uu));
            m[(1, 1)] = re(half * (uu + s));
            m[(2, 2)] = re(half * (uu - s));
            m[(1, 2)] = re(half * c);
            m[(2, 1)] = re(half * c);
        }
        Piece::RankThree => {
            let ww = w(p.max(third()), c)?;
            m[(0, 0)] = re(half * (two - T::lit(4.0) * ww));
            m[(1, 1)] = re(ww);
            m[(3, 3)] = re(ww);
            m[(0, 3)] = re(half * c);
            m[(3, 0)] = re(half * c);
        }
    }
    Ok(DensityMatrix::from_trusted(m))
}

/// Closed-form constructions realizing a prescribed `(p, c)` at a fixed
/// rank and kind.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    R1K1,
    R1K2,
    R2K3,
    R3K1,
    R3K2,
}

impl Variant {
    pub const ALL: [Variant; 5] = [Variant::R1K1, Variant::R1K2, Variant::R2K3, Variant::R3K1, Variant::R3K2];

    pub fn class(self) -> RankClass {
        let (rank, kind) = match self {
            Variant::R1K1 => (1, 1),
            Variant::R1K2 => (1, 2),
            Variant::R2K3 => (2, 3),
            Variant::R3K1 => (3, 1),
            Variant::R3K2 => (3, 2),
        };
        RankClass { rank, kind }
    }
}

fn theorem_params_unchecked<T: Real>(p: T, c: T, variant: Variant) -> Result<XParams<T>> {
    let half = T::lit(0.5);
    let quarter_c2 = c * c * T::lit(0.25);
    let zero = T::zero();
    let right = T::FRAC_PI_2();
    // Angles via atan2 rather than asin: asin loses half the digits near 1.
    let half_angle = |sin2: T, scale: T| half * sin2.atan2((scale * scale - sin2 * sin2).max(zero).sqrt());
    let from_sin_sq = |s2: T| s2.max(zero).sqrt().atan2((T::one() - s2).max(zero).sqrt());
    let params = match variant {
        Variant::R1K1 => XParams::new(half_angle(c, T::one()), right, right, quarter_c2, zero, zero, zero),
        Variant::R1K2 => XParams::new(right, half_angle(c, T::one()), zero, zero, quarter_c2, zero, zero),
        Variant::R2K3 => {
            let uu = u(p)?;
            XParams::new(from_sin_sq(uu), half_angle(c.min(uu), uu), zero, zero, quarter_c2, zero, zero)
        }
        Variant::R3K1 => {
            let ww = w(p, c)?;
            XParams::new(from_sin_sq(T::lit(2.0) * ww), T::FRAC_PI_4(), right, quarter_c2, zero, zero, zero)
        }
        Variant::R3K2 => {
            let zz = z(p, c)?;
            XParams::new(from_sin_sq(zz), T::FRAC_PI_4(), zero, zero, quarter_c2, zero, zero)
        }
    };
    Ok(params)
}

/// Parameters of the `variant` construction at `(p, c)`.
///
/// The result is checked: it must be physical, have the variant's rank and
/// kind, and reproduce `p` and `c` to 1e-9. Otherwise the variant cannot
/// realize the point and a domain error is returned.
pub fn theorem_params<T: Real>(p: T, c: T, variant: Variant) -> Result<XParams<T>> {
    let fail = |why: &str| domain(format!("{variant:?} cannot realize (p, c) = ({p}, {c}): {why}"));
    if !(c >= T::zero() && c <= T::one()) {
        return Err(fail("concurrence outside [0, 1]"));
    }
    let params = theorem_params_unchecked(p, c, variant).map_err(|e| fail(&e.to_string()))?;
    if !params.is_physical() {
        return Err(fail("unphysical"));
    }
    let check = T::lit(1e-9);
    let rho = params.to_matrix();
    if (crate::measures::purity_general(&rho) - p).abs() > check {
        return Err(fail("purity mismatch"));
    }
    if (params.concurrence() - c).abs() > check {
        return Err(fail("concurrence mismatch"));
    }
    if params.classify_rank(check)? != variant.class() {
        return Err(fail("rank or kind mismatch"));
    }
    Ok(params)
}

/// Largest concurrence reachable by rank-2 states of kinds 1 and 2: `√(2p - 1)`.
pub fn rank2_kind12_cmax<T: Real>(p: T) -> Result<T> {
    q(p)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiagramKind {
    Cp,
    NegativityPurity,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiagramRow {
    pub p: f64,
    pub c: f64,
    pub negativity: f64,
    pub rank: u8,
    pub kind: u8,
    pub u: Option<f64>,
    pub v: Option<f64>,
    pub q: Option<f64>,
    pub r: Option<f64>,
}

/// Family members on a `grid_n x grid_n` grid: `p` uniform on `[1/3, 1]`
/// and, for each `p`, `c` uniform on `[0, c_max(p)]`. Rows are ordered with
/// `p` outer and `c` inner.
pub fn diagram_data(grid_n: usize) -> Result<Vec<DiagramRow>> {
    if grid_n < 2 {
        return Err(domain(format!("grid needs at least 2 points per axis, got {grid_n}")));
    }
    let last = (grid_n - 1) as f64;
    let mut rows = Vec::with_capacity(grid_n * grid_n);
    for i in 0..grid_n {
        let p = 1.0 / 3.0 + (2.0 / 3.0) * (i as f64 / last);
        let c_max = cp_boundary(p)?;
        for j in 0..grid_n {
            let c = c_max * (j as f64 / last);
            let params = minset_params(p, c)?;
            let class = params.classify_rank(1e-9)?;
            rows.push(DiagramRow {
                p,
                c,
                negativity: params.negativity(),
                rank: class.rank,
                kind: class.kind,
                u: u(p).ok(),
                v: v(p).ok(),
                q: q(p).ok(),
                r: r(p).ok(),
            });
        }
    }
    Ok(rows)
}

/// CSV rendering of [`diagram_data`] rows. The `Cp` kind appends the
/// boundary columns; undefined boundary values are left empty.
pub fn diagram_csv(rows: &[DiagramRow], kind: DiagramKind) -> String {
    let mut out = String::new();
    out.push_str("p,c,negativity,rank,kind");
    if kind == DiagramKind::Cp {
        out.push_str(",u,v,q,r");
    }
    out.push('\n');
    for row in rows {
        let _ = write!(out, "{},{},{},{},{}", fmt_sig(row.p), fmt_sig(row.c), fmt_sig(row.negativity), row.rank, row.kind);
        if kind == DiagramKind::Cp {
            for col in [row.u, row.v, row.q, row.r] {
                out.push(',');
                if let Some(val) = col {
                    out.push_str(&fmt_sig(val));
                }
            }
        }
        out.push('\n');
    }
    out
}

/// Decimal rendering with 12 significant digits and trailing zeros removed,
/// switching to exponent notation outside `[1e-5, 1e12)`.
pub fn fmt_sig(v: f64) -> String {
    const DIGITS: i32 = 12;
    if v == 0.0 || !v.is_finite() {
        return if v == 0.0 { "0".into() } else { v.to_string() };
    }
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, v);
    let (mant, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..DIGITS).contains(&exp) {
        let decimals = (DIGITS - 1 - exp).max(0) as usize;
        trim_zeros(format!("{:.*}", decimals, v))
    } else {
        format!("{}e{}", trim_zeros(mant.to_string()), exp)
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}
