//! Finite one-dimensional lattice and the walker's spinor wavefunction on it.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::linalg::{Mat2, Spinor, C64, ZERO};

/// Physical constants carried through every dimensional formula.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitsConfig {
    /// Lattice spacing.
    pub a: f64,
    /// Duration of one full walk step.
    pub tau: f64,
    pub hbar: f64,
    pub c: f64,
}

impl Default for UnitsConfig {
    fn default() -> Self {
        Self { a: 1.0, tau: 1.0, hbar: 1.0, c: 1.0 }
    }
}

impl UnitsConfig {
    pub fn new(a: f64, tau: f64, hbar: f64, c: f64) -> Result<Self> {
        for (name, v) in [("a", a), ("tau", tau), ("hbar", hbar), ("c", c)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "unit {name} must be finite and strictly positive, got {v}"
                )));
            }
        }
        Ok(Self { a, tau, hbar, c })
    }

    /// Dimensionless phase `k·a/ħ` picked up by one lattice translation.
    #[inline]
    pub fn phase(&self, k: f64) -> f64 {
        k * self.a / self.hbar
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Boundary {
    /// Amplitude never reaches the edge; steppers refuse to push it past.
    Truncated,
    /// Sites are identified modulo the site count.
    Periodic,
}

/// Sites `x ∈ {-n_max, …, n_max}` in units of the lattice spacing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LatticeSpec {
    half_width: usize,
    boundary: Boundary,
}

impl LatticeSpec {
    pub fn new(half_width: usize, boundary: Boundary) -> Result<Self> {
        if half_width == 0 {
            return Err(Error::InvalidParameter("lattice half-width must be positive".into()));
        }
        Ok(Self { half_width, boundary })
    }

    pub fn truncated(half_width: usize) -> Result<Self> {
        Self::new(half_width, Boundary::Truncated)
    }

    pub fn periodic(half_width: usize) -> Result<Self> {
        Self::new(half_width, Boundary::Periodic)
    }

    pub fn half_width(&self) -> usize {
        self.half_width
    }

    pub fn boundary(&self) -> Boundary {
        self.boundary
    }

    pub fn sites(&self) -> usize {
        2 * self.half_width + 1
    }

    /// Integer site label of storage index `i`.
    #[inline]
    pub fn site(&self, i: usize) -> i64 {
        i as i64 - self.half_width as i64
    }

    pub fn index_of(&self, x: i64) -> Option<usize> {
        let i = x + self.half_width as i64;
        (0..self.sites() as i64).contains(&i).then_some(i as usize)
    }

    /// Physical positions `x·a` of all sites.
    pub fn positions(&self, units: &UnitsConfig) -> Vec<f64> {
        (0..self.sites()).map(|i| self.site(i) as f64 * units.a).collect()
    }

    /// Momentum `2πħj/(N·a)` of the `j`-th plane wave that is an exact
    /// eigenstate of translations on the periodic lattice.
    pub fn quantized_momentum(&self, j: i64, units: &UnitsConfig) -> f64 {
        TAU * units.hbar * j as f64 / (self.sites() as f64 * units.a)
    }
}

/// Localized pure initial state with coin part on the Bloch sphere.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InitialCondition {
    /// Polar angle, `[0, π]`.
    pub omega_p: f64,
    /// Azimuthal angle, `[0, 2π)`.
    pub omega_a: f64,
    /// Starting site.
    pub x0: i64,
}

impl InitialCondition {
    pub fn new(omega_p: f64, omega_a: f64, x0: i64) -> Result<Self> {
        if !(0.0..=PI).contains(&omega_p) {
            return Err(Error::InvalidParameter(format!("polar angle {omega_p} outside [0, π]")));
        }
        if !omega_a.is_finite() {
            return Err(Error::InvalidParameter("azimuthal angle must be finite".into()));
        }
        Ok(Self { omega_p, omega_a: omega_a.rem_euclid(TAU), x0 })
    }

    /// `(cos(Ω_p/2), e^{iΩ_a} sin(Ω_p/2))`.
    pub fn coin_spinor(&self) -> Spinor {
        let (s, c) = (0.5 * self.omega_p).sin_cos();
        Spinor::new(C64::from(c), C64::from_polar(s, self.omega_a))
    }
}

/// Walker wavefunction, site-major: `amplitudes[i] = (ψ↑(x_i), ψ↓(x_i))`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinorState {
    amplitudes: Vec<Spinor>,
    lattice: LatticeSpec,
}

impl SpinorState {
    pub fn zeros(lattice: LatticeSpec) -> Self {
        Self { amplitudes: vec![Spinor::zeros(); lattice.sites()], lattice }
    }

    pub fn from_amplitudes(lattice: LatticeSpec, amplitudes: Vec<Spinor>) -> Result<Self> {
        if amplitudes.len() != lattice.sites() {
            return Err(Error::InvalidParameter(format!(
                "expected {} site amplitudes, got {}",
                lattice.sites(),
                amplitudes.len()
            )));
        }
        Ok(Self { amplitudes, lattice })
    }

    /// `χ ⊗ e^{ikx/ħ}/√N` on a periodic lattice. `k` must be one of the
    /// quantized momenta for the state to be a translation eigenstate.
    pub fn plane_wave(lattice: LatticeSpec, coin: Spinor, k: f64, units: &UnitsConfig) -> Result<Self> {
        if lattice.boundary() != Boundary::Periodic {
            return Err(Error::InvalidParameter("plane waves need a periodic lattice".into()));
        }
        let norm = (lattice.sites() as f64).sqrt().recip();
        let amplitudes = (0..lattice.sites())
            .map(|i| coin * C64::from_polar(norm, units.phase(k) * lattice.site(i) as f64))
            .collect();
        Ok(Self { amplitudes, lattice })
    }

    pub fn lattice(&self) -> &LatticeSpec {
        &self.lattice
    }

    pub fn amplitudes(&self) -> &[Spinor] {
        &self.amplitudes
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut [Spinor] {
        &mut self.amplitudes
    }

    /// Amplitude at site `x`, if it lies on the lattice.
    pub fn at(&self, x: i64) -> Option<&Spinor> {
        self.lattice.index_of(x).map(|i| &self.amplitudes[i])
    }

    pub fn norm(&self) -> f64 {
        state_norm(self)
    }

    pub fn position_distribution(&self) -> Vec<f64> {
        position_distribution(self)
    }

    /// Per-site `(|ψ↑|², |ψ↓|²)`.
    pub fn spin_resolved_distribution(&self) -> Vec<(f64, f64)> {
        self.amplitudes.iter().map(|s| (s[0].norm_sqr(), s[1].norm_sqr())).collect()
    }

    /// Inclusive range of storage indices holding nonzero amplitude.
    pub fn support(&self) -> Option<(usize, usize)> {
        let nonzero = |s: &Spinor| s[0] != ZERO || s[1] != ZERO;
        let lo = self.amplitudes.iter().position(nonzero)?;
        let hi = self.amplitudes.iter().rposition(nonzero)?;
        Some((lo, hi))
    }

    /// `⟨ψ|I⊗A|ψ⟩` for an operator acting on the coin only.
    pub fn coin_expectation(&self, observable: &Mat2) -> f64 {
        self.amplitudes.iter().map(|s| s.dotc(&(observable * s)).re).sum()
    }
}

/// Pure state `χ(Ω_p, Ω_a) ⊗ |x0⟩`.
pub fn make_initial_state(init: &InitialCondition, lattice: LatticeSpec) -> Result<SpinorState> {
    let idx = lattice.index_of(init.x0).ok_or(Error::OutOfLattice { x: init.x0, half_width: lattice.half_width() })?;
    let mut state = SpinorState::zeros(lattice);
    state.amplitudes[idx] = init.coin_spinor();
    Ok(state)
}

/// `p(x) = |ψ↑(x)|² + |ψ↓(x)|²`.
pub fn position_distribution(state: &SpinorState) -> Vec<f64> {
    state.amplitudes.iter().map(|s| s.norm_squared()).collect()
}

pub fn state_norm(state: &SpinorState) -> f64 {
    state.amplitudes.iter().map(|s| s.norm_squared()).sum::<f64>().sqrt()
}
