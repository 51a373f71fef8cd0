//! Coin/position entanglement of a pure walker state.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lattice::{make_initial_state, InitialCondition, LatticeSpec, SpinorState};
use crate::linalg::Mat2;
use crate::walk::{evolve, evolve_with, SplitStepParams, Walk};

/// Eigenvalues in `[-CLIP_TOL, 0)` are treated as zero; anything more
/// negative is reported as an error.
pub const CLIP_TOL: f64 = 1e-12;

/// `ρ_c = Tr_x |ψ⟩⟨ψ|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedCoinDensity(Mat2);

impl ReducedCoinDensity {
    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }

    pub fn trace(&self) -> f64 {
        self.0[(0, 0)].re + self.0[(1, 1)].re
    }

    pub fn purity(&self) -> f64 {
        (self.0 * self.0).trace().re
    }

    /// Eigenvalues `(λ₊, λ₋)`, `λ₊ ≥ λ₋ ≥ 0`, from trace and determinant.
    /// The smaller one is formed as `det/λ₊` to stay accurate near purity.
    pub fn eigenvalues(&self) -> Result<(f64, f64)> {
        let m = &self.0;
        let tr = self.trace();
        let det = m[(0, 0)].re * m[(1, 1)].re - m[(0, 1)].norm_sqr();
        let disc = (tr * tr - 4.0 * det).max(0.0);
        let hi = 0.5 * (tr + disc.sqrt());
        let lo = if hi > 0.0 { det / hi } else { 0.0 };
        if lo < -CLIP_TOL {
            return Err(Error::NegativeEigenvalue(lo));
        }
        Ok((hi, lo.max(0.0)))
    }

    /// Base-2 von Neumann entropy with `0·log 0 = 0`.
    pub fn entropy(&self) -> Result<f64> {
        let (hi, lo) = self.eigenvalues()?;
        let s: f64 = [hi, lo].iter().filter(|&&l| l > 0.0).map(|&l| -l * l.log2()).sum();
        // λ₊ may exceed 1 by rounding, giving -0.0-ish values
        Ok(s.max(0.0))
    }
}

/// `ρ_c[s, s'] = Σ_x ψ_s(x) ψ_{s'}(x)*`, straight from the amplitudes.
pub fn reduced_coin_density(state: &SpinorState) -> ReducedCoinDensity {
    let m = state.amplitudes().iter().fold(Mat2::zeros(), |acc, s| acc + s * s.adjoint());
    ReducedCoinDensity(m)
}

pub fn entanglement_entropy(state: &SpinorState) -> Result<f64> {
    reduced_coin_density(state).entropy()
}

/// Entropy after every step `0..=n_steps`, starting from `state`.
pub fn entropy_series_from(state: &SpinorState, walk: &Walk, n_steps: usize) -> Result<Vec<f64>> {
    let mut out = Vec::with_capacity(n_steps + 1);
    let mut failure = None;
    evolve_with(state, walk, n_steps, |_, s| match entanglement_entropy(s) {
        Ok(v) => out.push(v),
        Err(e) => {
            failure.get_or_insert(e);
        }
    })?;
    match failure {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// Smallest truncated lattice that holds `n_steps` from `init`.
pub fn lattice_for(init: &InitialCondition, n_steps: usize) -> Result<LatticeSpec> {
    LatticeSpec::truncated((n_steps + init.x0.unsigned_abs() as usize).max(1))
}

/// Entropy time series of length `n_steps + 1` from a localized initial state.
pub fn entropy_time_series(init: &InitialCondition, walk: &Walk, n_steps: usize) -> Result<Vec<f64>> {
    let state = make_initial_state(init, lattice_for(init, n_steps)?)?;
    entropy_series_from(&state, walk, n_steps)
}

/// Entropy after exactly `n_steps`.
pub fn final_entropy(init: &InitialCondition, walk: &Walk, n_steps: usize) -> Result<f64> {
    let state = make_initial_state(init, lattice_for(init, n_steps)?)?;
    entanglement_entropy(&evolve(&state, walk, n_steps)?)
}

/// Evenly spaced values `min..=max`.
pub fn linspace(min: f64, max: f64, points: usize) -> Vec<f64> {
    match points {
        0 => vec![],
        1 => vec![min],
        n => (0..n)
            .map(|i| {
                let t = i as f64 / (n - 1) as f64;
                // exact at both ends
                min * (1.0 - t) + max * t
            })
            .collect(),
    }
}

/// Evenly spaced values on `[min, max)`, for periodic axes.
pub fn periodic_grid(min: f64, max: f64, points: usize) -> Vec<f64> {
    (0..points).map(|i| min + (max - min) * i as f64 / points as f64).collect()
}

/// The two kinds of two-parameter entropy scans.
#[derive(Debug, Clone, PartialEq)]
pub enum SweepGrid {
    /// Initial coin state over `(Ω_p, Ω_a)` at a fixed walk, start at `x = 0`.
    InitialState { walk: Walk, omega_p: Vec<f64>, omega_a: Vec<f64> },
    /// Split-step angles `(θ₁, θ₂)` at a fixed initial state.
    CoinAngles { init: InitialCondition, theta1: Vec<f64>, theta2: Vec<f64> },
}

impl SweepGrid {
    pub fn axes(&self) -> (&[f64], &[f64]) {
        match self {
            SweepGrid::InitialState { omega_p, omega_a, .. } => (omega_p, omega_a),
            SweepGrid::CoinAngles { theta1, theta2, .. } => (theta1, theta2),
        }
    }

    /// Entropy of the cell `(i, j)` after `n_steps`, computed on its own.
    pub fn cell(&self, i: usize, j: usize, n_steps: usize) -> Result<f64> {
        match self {
            SweepGrid::InitialState { walk, omega_p, omega_a } => {
                let init = InitialCondition::new(omega_p[i], omega_a[j], 0)?;
                final_entropy(&init, walk, n_steps)
            }
            SweepGrid::CoinAngles { init, theta1, theta2 } => {
                let walk = Walk::SplitStep(SplitStepParams::from_thetas(theta1[i], theta2[j]));
                final_entropy(init, &walk, n_steps)
            }
        }
    }
}

/// Row-major grid of entropies: `values[i * axis2.len() + j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub axis1: Vec<f64>,
    pub axis2: Vec<f64>,
    pub values: Vec<f64>,
}

impl SweepResult {
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.axis2.len() + j]
    }

    /// `(axis1, axis2, value)` in row-major order.
    pub fn rows(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        let n2 = self.axis2.len();
        self.values.iter().enumerate().map(move |(idx, &v)| (self.axis1[idx / n2], self.axis2[idx % n2], v))
    }

    pub fn range(&self) -> f64 {
        let max = self.values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let min = self.values.iter().cloned().fold(f64::INFINITY, f64::min);
        max - min
    }
}

/// Evaluates every cell independently on the current rayon pool.
pub fn entropy_sweep(grid: &SweepGrid, n_steps: usize) -> Result<SweepResult> {
    let (a1, a2) = grid.axes();
    if a1.is_empty() || a2.is_empty() {
        return Err(Error::InvalidParameter("sweep axes must be non-empty".into()));
    }
    let n2 = a2.len();
    let values = (0..a1.len() * n2)
        .into_par_iter()
        .map(|idx| grid.cell(idx / n2, idx % n2, n_steps))
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult { axis1: a1.to_vec(), axis2: a2.to_vec(), values })
}

/// Mean of `series[from..=to]`.
pub fn window_mean(series: &[f64], from: usize, to: usize) -> f64 {
    let w = &series[from..=to];
    w.iter().sum::<f64>() / w.len() as f64
}

impl From<Mat2> for ReducedCoinDensity {
    fn from(m: Mat2) -> Self {
        ReducedCoinDensity(m)
    }
}
