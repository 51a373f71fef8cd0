//! Independent reference routes used by the integration and acceptance tests.
//!
//! Everything here works with explicit dense matrices built from the
//! operator definitions (Kronecker structure of shifts and coins), never
//! with the library's stencils.

#![allow(dead_code)]

use nalgebra::{DMatrix, DVector, Matrix2};
use num_complex::Complex64 as C64;
use qwalk::walk::coin_matrix;
use qwalk::{Boundary, CoinParams, LatticeSpec, Mat2, Spinor, SpinorState};

/// Basis index of (storage site, spin).
fn idx(site: usize, spin: usize) -> usize {
    2 * site + spin
}

/// `T_d ⊗ |s⟩⟨s|` with `T_d = Σ_x |x + d⟩⟨x|`, acting only on spin `s`,
/// plus identity on the other spin.
fn conditional_translation(lattice: LatticeSpec, moving_spin: usize, d: i64) -> DMatrix<C64> {
    let n = lattice.sites();
    let mut m = DMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        // the other spin stays
        m[(idx(i, 1 - moving_spin), idx(i, 1 - moving_spin))] = C64::from(1.0);
        let j = i as i64 + d;
        let target = match lattice.boundary() {
            Boundary::Periodic => Some(j.rem_euclid(n as i64) as usize),
            Boundary::Truncated => (0..n as i64).contains(&j).then_some(j as usize),
        };
        if let Some(t) = target {
            m[(idx(t, moving_spin), idx(i, moving_spin))] = C64::from(1.0);
        }
    }
    m
}

/// `S₋ = T₋⊗|↑⟩⟨↑| + I⊗|↓⟩⟨↓|`.
pub fn half_shift_minus(lattice: LatticeSpec) -> DMatrix<C64> {
    conditional_translation(lattice, 0, -1)
}

/// `S₊ = I⊗|↑⟩⟨↑| + T₊⊗|↓⟩⟨↓|`.
pub fn half_shift_plus(lattice: LatticeSpec) -> DMatrix<C64> {
    conditional_translation(lattice, 1, 1)
}

/// `I ⊗ C`.
pub fn coin_on_lattice(lattice: LatticeSpec, c: &Mat2) -> DMatrix<C64> {
    let n = lattice.sites();
    let mut m = DMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for s in 0..2 {
            for t in 0..2 {
                m[(idx(i, s), idx(i, t))] = c[(s, t)];
            }
        }
    }
    m
}

pub fn dense_conventional(lattice: LatticeSpec, p: &CoinParams) -> DMatrix<C64> {
    let full_shift = half_shift_plus(lattice) * half_shift_minus(lattice);
    full_shift * coin_on_lattice(lattice, &coin_matrix(p))
}

pub fn dense_split(lattice: LatticeSpec, c1: &CoinParams, c2: &CoinParams) -> DMatrix<C64> {
    half_shift_plus(lattice)
        * coin_on_lattice(lattice, &coin_matrix(c2))
        * half_shift_minus(lattice)
        * coin_on_lattice(lattice, &coin_matrix(c1))
}

pub fn dense_dca(lattice: LatticeSpec, alpha: f64, beta: f64) -> DMatrix<C64> {
    let shift = half_shift_plus(lattice) * half_shift_minus(lattice);
    let sx = Matrix2::new(C64::from(0.0), C64::from(1.0), C64::from(1.0), C64::from(0.0));
    shift * C64::from(alpha) + coin_on_lattice(lattice, &sx) * C64::new(0.0, -beta)
}

pub fn to_vector(state: &SpinorState) -> DVector<C64> {
    let mut v = DVector::zeros(2 * state.lattice().sites());
    for (i, s) in state.amplitudes().iter().enumerate() {
        v[idx(i, 0)] = s[0];
        v[idx(i, 1)] = s[1];
    }
    v
}

pub fn from_vector(lattice: LatticeSpec, v: &DVector<C64>) -> SpinorState {
    let amps = (0..lattice.sites()).map(|i| Spinor::new(v[idx(i, 0)], v[idx(i, 1)])).collect();
    SpinorState::from_amplitudes(lattice, amps).unwrap()
}

pub fn max_abs_diff(a: &DMatrix<C64>, b: &DMatrix<C64>) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// `Tr_x(Uᵗ ρ U†ᵗ)` with the full density matrix carried through every step.
pub fn dense_reduced_density(u: &DMatrix<C64>, initial: &SpinorState, steps: usize) -> Mat2 {
    let psi = to_vector(initial);
    let mut rho = &psi * psi.adjoint();
    let ud = u.adjoint();
    for _ in 0..steps {
        rho = u * &rho * &ud;
    }
    let mut out = Mat2::zeros();
    for i in 0..initial.lattice().sites() {
        for s in 0..2 {
            for t in 0..2 {
                out[(s, t)] += rho[(idx(i, s), idx(i, t))];
            }
        }
    }
    out
}

/// Base-2 entropy from a Hermitian eigensolver.
pub fn entropy_by_eigensolver(rho: &Mat2) -> f64 {
    let eig = rho.symmetric_eigen();
    eig.eigenvalues.iter().filter(|&&l| l > 1e-300).map(|&l| -l * l.log2()).sum()
}

/// Eigenvalues of a 2×2 complex matrix from a Schur decomposition.
pub fn schur_eigenvalues(m: &Mat2) -> [C64; 2] {
    let ev = m.schur().eigenvalues().expect("complex Schur form is triangular");
    [ev[0], ev[1]]
}

/// `(iħ/τ) log U` for a unitary `U` via its Schur form (diagonal for normal
/// matrices), principal branch of the complex logarithm.
pub fn principal_log_hamiltonian(u: &Mat2, hbar_over_tau: f64) -> Mat2 {
    let (q, t) = u.schur().unpack();
    let mut d = Mat2::zeros();
    d[(0, 0)] = t[(0, 0)].ln();
    d[(1, 1)] = t[(1, 1)].ln();
    q * d * q.adjoint() * C64::new(0.0, hbar_over_tau)
}

/// Matrix exponential by scaling and squaring with a Taylor series.
pub fn expm(m: &Mat2) -> Mat2 {
    let norm = m.iter().map(|z| z.norm()).fold(0.0, f64::max) * 2.0;
    let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as u32 } else { 0 };
    let a = m / C64::from(2f64.powi(squarings as i32));
    let mut term = Mat2::identity();
    let mut sum = Mat2::identity();
    for n in 1..30 {
        term = term * a / C64::from(n as f64);
        sum += term;
    }
    for _ in 0..squarings {
        sum = sum * sum;
    }
    sum
}

/// 2×2 block `Σ_x' U[(x0, s), (x', s')] e^{iκ(x' - x0)}` of a translation
/// invariant operator, read off the row of a central site.
pub fn plane_wave_symbol(u: &DMatrix<C64>, lattice: LatticeSpec, kappa: f64) -> Mat2 {
    let centre = lattice.half_width();
    let mut out = Mat2::zeros();
    for j in 0..lattice.sites() {
        let phase = C64::from_polar(1.0, kappa * (j as f64 - centre as f64));
        for s in 0..2 {
            for t in 0..2 {
                out[(s, t)] += u[(idx(centre, s), idx(j, t))] * phase;
            }
        }
    }
    out
}

/// `⟨k, s| U |k, s'⟩` with normalized plane waves on the whole periodic lattice.
pub fn plane_wave_sandwich(u: &DMatrix<C64>, lattice: LatticeSpec, kappa: f64) -> Mat2 {
    let n = lattice.sites();
    let mut out = Mat2::zeros();
    for i in 0..n {
        for j in 0..n {
            let phase = C64::from_polar(1.0 / n as f64, kappa * (lattice.site(j) - lattice.site(i)) as f64);
            for s in 0..2 {
                for t in 0..2 {
                    out[(s, t)] += u[(idx(i, s), idx(j, t))] * phase;
                }
            }
        }
    }
    out
}

pub fn mat2_max_abs(m: &Mat2) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Operator 2-norm via the Hermitian eigensolver on `M†M`.
pub fn mat2_spectral_norm(m: &Mat2) -> f64 {
    let g = m.adjoint() * m;
    g.symmetric_eigen().eigenvalues.iter().cloned().fold(0.0, f64::max).sqrt()
}
