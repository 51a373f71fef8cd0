//! Momentum-space picture of the split-step walk with `x`-rotation coins.
//!
//! For a plane wave `|k⟩` the step operator reduces to the 2×2 unitary
//!
//! ```text
//! U(k) = [ -s₁s₂ + c₁c₂ e^{iκ}        -i(c₁s₂ + s₁c₂ e^{iκ})  ]
//!        [ -i(c₁s₂ + s₁c₂ e^{-iκ})     -s₁s₂ + c₁c₂ e^{-iκ}   ]
//! ```
//!
//! with `κ = ka/ħ`, `cⱼ = cos θⱼ`, `sⱼ = sin θⱼ`. Its eigenvalues are
//! `Λ± = b ± i√(1-b²) = e^{±iωτ}` where `b = c₁c₂cos κ - s₁s₂`; the
//! effective Hamiltonian `H = (iħ/τ) ln U` is taken on the principal branch,
//! `ωτ ∈ [0, π]`, with eigenvalue `-ħω` on `|φ⁺⟩` and `+ħω` on `|φ⁻⟩`.

use std::f64::consts::{PI, TAU};

use crate::lattice::UnitsConfig;
use crate::linalg::{self, Mat2, Spinor, C64, I, ONE, ZERO};

/// `|1 - b²|` below this marks a degenerate point (`Λ₊ = Λ₋ = ±1`).
pub const DEGENERACY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy)]
struct Trig {
    c1: f64,
    s1: f64,
    c2: f64,
    s2: f64,
    phase: f64,
}

impl Trig {
    fn new(theta1: f64, theta2: f64, k: f64, units: &UnitsConfig) -> Self {
        let (s1, c1) = theta1.sin_cos();
        let (s2, c2) = theta2.sin_cos();
        Self { c1, s1, c2, s2, phase: units.phase(k) }
    }

    /// `b = c₁c₂cos κ - s₁s₂`, clamped to `[-1, 1]`.
    fn bracket(&self) -> f64 {
        (self.c1 * self.c2 * self.phase.cos() - self.s1 * self.s2).clamp(-1.0, 1.0)
    }

    /// `c₁s₂ + s₁c₂e^{iκ}`: upper component of the closed-form eigenvectors.
    fn hop(&self) -> C64 {
        C64::from(self.c1 * self.s2) + C64::from_polar(self.s1 * self.c2, self.phase)
    }

    /// `c₁c₂ sin κ`.
    fn chirality(&self) -> f64 {
        self.c1 * self.c2 * self.phase.sin()
    }
}

/// `√(1 - b²)` evaluated as `√((1-b)(1+b))`.
fn gap(b: f64) -> f64 {
    ((1.0 - b) * (1.0 + b)).max(0.0).sqrt()
}

/// `cos θ₁ cos θ₂ cos(ka/ħ) - sin θ₁ sin θ₂`.
pub fn bracket(theta1: f64, theta2: f64, k: f64, units: &UnitsConfig) -> f64 {
    Trig::new(theta1, theta2, k, units).bracket()
}

/// Quasi-energy frequency `ω_k = arccos(b)/τ ∈ [0, π/τ]`.
pub fn omega(theta1: f64, theta2: f64, k: f64, units: &UnitsConfig) -> f64 {
    bracket(theta1, theta2, k, units).acos() / units.tau
}

pub fn is_degenerate(b: f64) -> bool {
    (1.0 - b * b).abs() < DEGENERACY_TOL
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentumUnitary {
    pub k: f64,
    pub theta1: f64,
    pub theta2: f64,
    pub matrix: Mat2,
}

pub fn momentum_unitary(theta1: f64, theta2: f64, k: f64, units: &UnitsConfig) -> MomentumUnitary {
    let t = Trig::new(theta1, theta2, k, units);
    let e = C64::from_polar(1.0, t.phase);
    let diag = |e: C64| C64::from(-t.s1 * t.s2) + e * (t.c1 * t.c2);
    let off = |e: C64| -I * (C64::from(t.c1 * t.s2) + e * (t.s1 * t.c2));
    let matrix = Mat2::new(diag(e), off(e), off(e.conj()), diag(e.conj()));
    MomentumUnitary { k, theta1, theta2, matrix }
}

/// Eigen-decomposition of [`MomentumUnitary`].
///
/// Eigenvectors carry the phase convention "first nonzero component real and
/// positive". At a degenerate point the convention basis `(|↑⟩, |↓⟩)` is
/// returned and `degenerate` is set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenSystem {
    pub bracket: f64,
    pub lambda_plus: C64,
    pub lambda_minus: C64,
    pub vec_plus: Spinor,
    pub vec_minus: Spinor,
    /// `N⁺_k` of the closed-form eigenvector `(c₁s₂ + s₁c₂e^{iκ}, c₁c₂ sin κ - √(1-b²))`;
    /// infinite where that vector vanishes.
    pub norm_plus: f64,
    /// `N⁻_k`, same with `+√(1-b²)`.
    pub norm_minus: f64,
    pub degenerate: bool,
    /// Both eigenvectors are (phase-rotated) normalized closed-form vectors.
    /// False where a closed form loses rank and the second-row form was used.
    pub closed_form_vectors: bool,
}

/// Closed-form `N±_k = 1/|v±|` with
/// `|v±|² = 1 + c₁²s₂² + s₁²cos 2θ₂ + sin 2θ₁ sin 2θ₂ cos κ - c₁²c₂² cos 2κ ∓ 2c₁c₂ sin κ √(1-b²)`.
pub fn closed_form_norm(theta1: f64, theta2: f64, k: f64, units: &UnitsConfig, plus: bool) -> f64 {
    let t = Trig::new(theta1, theta2, k, units);
    let sign = if plus { 1.0 } else { -1.0 };
    let sq = 1.0
        + t.c1 * t.c1 * t.s2 * t.s2
        + t.s1 * t.s1 * (2.0 * theta2).cos()
        + (2.0 * theta1).sin() * (2.0 * theta2).sin() * t.phase.cos()
        - t.c1 * t.c1 * t.c2 * t.c2 * (2.0 * t.phase).cos()
        - sign * 2.0 * t.chirality() * gap(t.bracket());
    if sq > 0.0 {
        sq.sqrt().recip()
    } else {
        f64::INFINITY
    }
}

fn phase_fixed(v: Spinor) -> Spinor {
    let n = v.norm();
    let v = v / C64::from(n);
    let lead = if v[0].norm() > 1e-14 { v[0] } else { v[1] };
    v * (lead.conj() / lead.norm())
}

pub fn eigensystem(theta1: f64, theta2: f64, k: f64, units: &UnitsConfig) -> EigenSystem {
    let t = Trig::new(theta1, theta2, k, units);
    let b = t.bracket();
    let r = gap(b);
    let lambda_plus = C64::new(b, r);
    let lambda_minus = C64::new(b, -r);
    let norm_plus = closed_form_norm(theta1, theta2, k, units, true);
    let norm_minus = closed_form_norm(theta1, theta2, k, units, false);

    if is_degenerate(b) {
        return EigenSystem {
            bracket: b,
            lambda_plus,
            lambda_minus,
            vec_plus: Spinor::new(ONE, ZERO),
            vec_minus: Spinor::new(ZERO, ONE),
            norm_plus,
            norm_minus,
            degenerate: true,
            closed_form_vectors: false,
        };
    }

    let hop = t.hop();
    let chi = t.chirality();
    // First-row form (hop, χ ∓ r) vanishes when hop = 0; the second-row form
    // (χ ± r, -hop*) is then used. Their squared norms sum to 4(1 - b²).
    let pick = |sign: f64| -> (Spinor, bool) {
        let first = Spinor::new(hop, C64::from(chi - sign * r));
        if first.norm_squared() >= 1e-3 * r * r {
            (first, true)
        } else {
            (Spinor::new(C64::from(chi + sign * r), -hop.conj()), false)
        }
    };
    let (vp, fp) = pick(1.0);
    let (vm, fm) = pick(-1.0);
    EigenSystem {
        bracket: b,
        lambda_plus,
        lambda_minus,
        vec_plus: phase_fixed(vp),
        vec_minus: phase_fixed(vm),
        norm_plus,
        norm_minus,
        degenerate: false,
        closed_form_vectors: fp && fm,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveHamiltonian {
    pub k: f64,
    pub matrix: Mat2,
    /// Principal-branch `ω_k`, `ω_k τ ∈ [0, π]`.
    pub omega_k: f64,
    pub degenerate: bool,
}

/// `H(k) = (iħ/τ) ln U(k)` on the principal branch:
///
/// ```text
/// H = -(ħ/τ) arccos(b)/√(1-b²) · [[c₁c₂ sin κ, -(c₁s₂ + s₁c₂e^{iκ})],
///                                  [-(c₁s₂ + s₁c₂e^{-iκ}), -c₁c₂ sin κ]]
/// ```
///
/// At a degenerate point the limit `-ħω_k σz` built from the convention
/// basis is returned instead.
pub fn effective_hamiltonian(theta1: f64, theta2: f64, k: f64, units: &UnitsConfig) -> EffectiveHamiltonian {
    let t = Trig::new(theta1, theta2, k, units);
    let b = t.bracket();
    let angle = b.acos();
    let omega_k = angle / units.tau;
    let scale = units.hbar / units.tau;
    if is_degenerate(b) {
        return EffectiveHamiltonian {
            k,
            matrix: linalg::sigma_z() * C64::from(-scale * angle),
            omega_k,
            degenerate: true,
        };
    }
    let hop = t.hop();
    let chi = C64::from(t.chirality());
    let pre = C64::from(-scale * angle / gap(b));
    let matrix = Mat2::new(chi, -hop, -hop.conj(), -chi) * pre;
    EffectiveHamiltonian { k, matrix, omega_k, degenerate: false }
}

/// `exp(-iHτ/ħ)`.
pub fn propagator(h: &EffectiveHamiltonian, units: &UnitsConfig) -> Mat2 {
    linalg::exp_i_hermitian(&h.matrix, units.tau / units.hbar)
}

/// Small-mass, small-momentum form `-(a/τ)k σz + (ħ/τ)θ₂ σx`.
pub fn dirac_hamiltonian(theta2: f64, k: f64, units: &UnitsConfig) -> Mat2 {
    linalg::sigma_z() * C64::from(-units.a / units.tau * k)
        + linalg::sigma_x() * C64::from(units.hbar / units.tau * theta2)
}

/// Relative spectral-norm distance between `H(k)` at `θ₁ = 0` and its Dirac
/// form. Falls back to the absolute norm when the Dirac form vanishes.
pub fn dirac_limit_residual(theta2: f64, k: f64, units: &UnitsConfig) -> f64 {
    let exact = effective_hamiltonian(0.0, theta2, k, units).matrix;
    let dirac = dirac_hamiltonian(theta2, k, units);
    let diff = linalg::spectral_norm(&(exact - dirac));
    let scale = linalg::spectral_norm(&dirac);
    if scale == 0.0 {
        diff
    } else {
        diff / scale
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MassIdentification {
    /// `|θ₁ + θ₂|` folded into `[0, π]`; equals `τω_{k=0}`.
    pub angle: f64,
    /// `ħ·angle·τ/a²`.
    pub mass: f64,
}

pub fn mass_from_angles(theta1: f64, theta2: f64, units: &UnitsConfig) -> MassIdentification {
    let reduced = (theta1 + theta2).rem_euclid(TAU);
    let angle = if reduced > PI { TAU - reduced } else { reduced };
    MassIdentification { angle, mass: units.hbar * angle * units.tau / (units.a * units.a) }
}
