//! Small fixed-size complex linear algebra shared by the modules.

use nalgebra::{Matrix2, Vector2};
use num_complex::Complex64;

pub type C64 = Complex64;
pub type Mat2 = Matrix2<C64>;
pub type Spinor = Vector2<C64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

pub fn identity() -> Mat2 {
    Mat2::identity()
}

pub fn sigma_x() -> Mat2 {
    Mat2::new(ZERO, ONE, ONE, ZERO)
}

pub fn sigma_y() -> Mat2 {
    Mat2::new(ZERO, -I, I, ZERO)
}

pub fn sigma_z() -> Mat2 {
    Mat2::new(ONE, ZERO, ZERO, -ONE)
}

/// Largest entry-wise modulus.
pub fn max_abs(m: &Mat2) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Operator 2-norm (largest singular value) of a 2×2 matrix.
pub fn spectral_norm(m: &Mat2) -> f64 {
    let g = m.adjoint() * m;
    let tr = (g[(0, 0)] + g[(1, 1)]).re;
    let det = (g[(0, 0)] * g[(1, 1)] - g[(0, 1)] * g[(1, 0)]).re;
    let disc = (tr * tr - 4.0 * det).max(0.0);
    (0.5 * (tr + disc.sqrt())).max(0.0).sqrt()
}

pub fn is_hermitian(m: &Mat2, tol: f64) -> bool {
    max_abs(&(m - m.adjoint())) <= tol
}

pub fn is_unitary(m: &Mat2, tol: f64) -> bool {
    max_abs(&(m.adjoint() * m - identity())) <= tol
}

/// `exp(-i t H)` for Hermitian `H`, via the Pauli decomposition
/// `H = h0·I + h·σ`.
pub fn exp_i_hermitian(h: &Mat2, t: f64) -> Mat2 {
    let h0 = 0.5 * (h[(0, 0)].re + h[(1, 1)].re);
    let hz = 0.5 * (h[(0, 0)].re - h[(1, 1)].re);
    let hx = 0.5 * (h[(0, 1)].re + h[(1, 0)].re);
    let hy = 0.5 * (h[(1, 0)].im - h[(0, 1)].im);
    let norm = (hx * hx + hy * hy + hz * hz).sqrt();
    let phase = C64::from_polar(1.0, -h0 * t);
    if norm == 0.0 {
        return identity() * phase;
    }
    let (s, c) = (norm * t).sin_cos();
    let n_sigma = (sigma_x() * C64::from(hx) + sigma_y() * C64::from(hy) + sigma_z() * C64::from(hz)) / C64::from(norm);
    (identity() * C64::from(c) - n_sigma * (I * s)) * phase
}
