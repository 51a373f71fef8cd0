//! Zitterbewegung of coin observables in a two-band superposition.
//!
//! A state `c₁|φ⁺_k⟩ + c₂|φ⁻_k⟩` evolves as `c₁e^{iωt}|φ⁺⟩ + c₂e^{-iωt}|φ⁻⟩`,
//! so any coin observable that mixes the two bands oscillates at `2ω_k/2π`
//! around the band-diagonal mean.

use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::lattice::UnitsConfig;
use crate::linalg::{self, Mat2, Spinor, C64};
use crate::spectral::{self, EigenSystem};

/// Hermitian operator on the coin space, tensored with `|k⟩⟨k|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoinObservable(Mat2);

impl CoinObservable {
    pub fn new(matrix: Mat2) -> Result<Self> {
        if !linalg::is_hermitian(&matrix, 1e-12) {
            return Err(Error::InvalidParameter("coin observable must be Hermitian".into()));
        }
        Ok(Self(matrix))
    }

    pub fn identity() -> Self {
        Self(linalg::identity())
    }

    pub fn sigma_x() -> Self {
        Self(linalg::sigma_x())
    }

    pub fn sigma_y() -> Self {
        Self(linalg::sigma_y())
    }

    pub fn sigma_z() -> Self {
        Self(linalg::sigma_z())
    }

    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }
}

/// `c₁|φ⁺_k⟩ + c₂|φ⁻_k⟩` for the split-step walk with angles `(θ₁, θ₂)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergySuperposition {
    pub c1: C64,
    pub c2: C64,
    pub k: f64,
    pub theta1: f64,
    pub theta2: f64,
}

impl EnergySuperposition {
    pub fn new(c1: C64, c2: C64, k: f64, theta1: f64, theta2: f64) -> Result<Self> {
        let n = c1.norm_sqr() + c2.norm_sqr();
        if (n - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!("|c1|² + |c2|² = {n}, expected 1")));
        }
        Ok(Self { c1, c2, k, theta1, theta2 })
    }

    /// `c₁ = c₂ = 1/√2`.
    pub fn equal_weight(k: f64, theta1: f64, theta2: f64) -> Self {
        let c = C64::from(std::f64::consts::FRAC_1_SQRT_2);
        Self { c1: c, c2: c, k, theta1, theta2 }
    }

    pub fn eigensystem(&self, units: &UnitsConfig) -> EigenSystem {
        spectral::eigensystem(self.theta1, self.theta2, self.k, units)
    }

    /// Coin part of the superposition at `t = 0`.
    pub fn spinor(&self, units: &UnitsConfig) -> Spinor {
        let es = self.eigensystem(units);
        es.vec_plus * self.c1 + es.vec_minus * self.c2
    }
}

/// `Z = arccos(b)/(τπ)`, the oscillation frequency in cycles per unit time.
pub fn zb_frequency(theta1: f64, theta2: f64, k: f64, units: &UnitsConfig) -> f64 {
    spectral::bracket(theta1, theta2, k, units).acos() / (units.tau * std::f64::consts::PI)
}

/// `⟨φ⁺_k|A|φ⁻_k⟩`.
///
/// Where both closed-form eigenvectors are usable this evaluates
///
/// ```text
/// N⁺N⁻ [ |h|² (A↑↑ - A↓↓) + h*(χ + √(1-b²)) A↑↓ + h(χ - √(1-b²)) A↓↑ ]
/// ```
///
/// with `h = c₁s₂ + s₁c₂e^{iκ}` and `χ = c₁c₂ sin κ`; otherwise the
/// eigenvector sandwich is used directly.
pub fn zb_matrix_element(
    theta1: f64,
    theta2: f64,
    k: f64,
    observable: &CoinObservable,
    units: &UnitsConfig,
) -> Result<C64> {
    let es = spectral::eigensystem(theta1, theta2, k, units);
    if es.degenerate {
        return Err(Error::Degenerate { bracket: es.bracket });
    }
    let a = observable.matrix();
    if !es.closed_form_vectors {
        return Ok(es.vec_plus.dotc(&(a * es.vec_minus)));
    }
    let (s1, c1) = theta1.sin_cos();
    let (s2, c2) = theta2.sin_cos();
    let phase = units.phase(k);
    let hop = C64::from(c1 * s2) + C64::from_polar(s1 * c2, phase);
    let chi = c1 * c2 * phase.sin();
    // sin(πτZ) = √(1 - b²)
    let gap = (std::f64::consts::PI * units.tau * zb_frequency(theta1, theta2, k, units)).sin();
    let diag = hop.norm_sqr();
    let bracket = (a[(0, 0)] - a[(1, 1)]) * diag + hop.conj() * (chi + gap) * a[(0, 1)] + hop * (chi - gap) * a[(1, 0)];
    Ok(bracket * (es.norm_plus * es.norm_minus))
}

/// `2|c₁* c₂ ⟨φ⁺|A|φ⁻⟩|`.
pub fn zb_amplitude(s: &EnergySuperposition, observable: &CoinObservable, units: &UnitsConfig) -> Result<f64> {
    let m = zb_matrix_element(s.theta1, s.theta2, s.k, observable, units)?;
    Ok(2.0 * (s.c1.conj() * s.c2 * m).norm())
}

/// `⟨A⟩_t` at `t = 0, τ, …, n_steps·τ`:
///
/// ```text
/// |c₁|²⟨φ⁺|A|φ⁺⟩ + |c₂|²⟨φ⁻|A|φ⁻⟩ + 2 Re(c₁*c₂ ⟨φ⁺|A|φ⁻⟩ e^{-2iω_k t})
/// ```
pub fn expectation_series(
    s: &EnergySuperposition,
    observable: &CoinObservable,
    n_steps: usize,
    units: &UnitsConfig,
) -> Result<Vec<f64>> {
    if n_steps == 0 {
        return Err(Error::InvalidParameter("expectation series needs at least one step".into()));
    }
    let es = s.eigensystem(units);
    let a = observable.matrix();
    let mean = s.c1.norm_sqr() * es.vec_plus.dotc(&(a * es.vec_plus)).re
        + s.c2.norm_sqr() * es.vec_minus.dotc(&(a * es.vec_minus)).re;
    let cross = s.c1.conj() * s.c2 * es.vec_plus.dotc(&(a * es.vec_minus));
    let step_angle = es.bracket.acos();
    Ok((0..=n_steps).map(|n| mean + 2.0 * (cross * C64::from_polar(1.0, -2.0 * step_angle * n as f64)).re).collect())
}

/// Time-independent part of [`expectation_series`].
pub fn expectation_mean(s: &EnergySuperposition, observable: &CoinObservable, units: &UnitsConfig) -> f64 {
    let es = s.eigensystem(units);
    let a = observable.matrix();
    s.c1.norm_sqr() * es.vec_plus.dotc(&(a * es.vec_plus)).re
        + s.c2.norm_sqr() * es.vec_minus.dotc(&(a * es.vec_minus)).re
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrequencyEstimate {
    /// Cycles per unit time; 0 when no oscillation was found.
    pub frequency: f64,
    pub oscillating: bool,
}

/// Dominant nonzero frequency of a series sampled every `τ`.
///
/// The mean is removed, a Hann window applied, and the peak of the
/// magnitude spectrum refined by a parabola through the log magnitudes of
/// the peak bin and its neighbours. Sampling at integer steps limits the
/// result to `[0, 1/(2τ)]`.
pub fn extract_frequency(series: &[f64], units: &UnitsConfig) -> Result<FrequencyEstimate> {
    let n = series.len();
    if n < 4 {
        return Err(Error::InvalidParameter(format!("series of length {n} is too short")));
    }
    let flat = FrequencyEstimate { frequency: 0.0, oscillating: false };
    let mean = series.iter().sum::<f64>() / n as f64;
    let scale = series.iter().fold(1.0f64, |m, v| m.max(v.abs()));
    if series.iter().all(|v| (v - mean).abs() <= 1e-12 * scale) {
        return Ok(flat);
    }

    let mut buf: Vec<C64> = series
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let w = 0.5 - 0.5 * (std::f64::consts::TAU * i as f64 / (n - 1) as f64).cos();
            C64::from((v - mean) * w)
        })
        .collect();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let mags: Vec<f64> = buf[..=n / 2].iter().map(|z| z.norm()).collect();
    let (peak, &top) = mags.iter().enumerate().skip(1).max_by(|a, b| a.1.total_cmp(b.1)).expect("at least two bins");
    if top <= 1e-12 * scale * n as f64 {
        return Ok(flat);
    }
    let offset = if peak + 1 < mags.len() && mags[peak - 1] > 0.0 && mags[peak + 1] > 0.0 {
        let (l, c, r) = (mags[peak - 1].ln(), top.ln(), mags[peak + 1].ln());
        let denom = l - 2.0 * c + r;
        if denom < 0.0 {
            (0.5 * (l - r) / denom).clamp(-0.5, 0.5)
        } else {
            0.0
        }
    } else {
        0.0
    };
    Ok(FrequencyEstimate { frequency: (peak as f64 + offset) / (n as f64 * units.tau), oscillating: true })
}
