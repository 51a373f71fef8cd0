//! Coin and shift operators and the three step rules.
//!
//! All steppers are stencils over the site-major amplitude array. `T₋` moves
//! amplitude one site to the left, so after a shift the new `ψ↑(x)` is read
//! from the old `ψ↑(x + a)`; `T₊` reads `ψ↓(x - a)`.

use std::f64::consts::TAU;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::lattice::{Boundary, LatticeSpec, SpinorState};
use crate::linalg::{Mat2, Spinor, C64, I};

/// Angles of the general coin `e^{iξ} e^{-iθσx} e^{-iφσy} e^{-iδσz}`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CoinParams {
    pub xi: f64,
    pub theta: f64,
    pub phi: f64,
    pub delta: f64,
}

impl CoinParams {
    /// Angles are reduced into `[0, 2π)`.
    pub fn new(xi: f64, theta: f64, phi: f64, delta: f64) -> Self {
        let r = |v: f64| v.rem_euclid(TAU);
        Self { xi: r(xi), theta: r(theta), phi: r(phi), delta: r(delta) }
    }

    /// `C(θ) = [[cos θ, -i sin θ], [-i sin θ, cos θ]]`.
    pub fn rotation(theta: f64) -> Self {
        Self::new(0.0, theta, 0.0, 0.0)
    }

    /// Upper-left entry without the global phase.
    pub fn f(&self) -> C64 {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        C64::from_polar(1.0, -self.delta) * C64::new(ct * cp, -st * sp)
    }

    /// Upper-right entry without the global phase.
    pub fn g(&self) -> C64 {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        -C64::from_polar(1.0, self.delta) * C64::new(ct * sp, st * cp)
    }
}

/// `e^{iξ} [[F, G], [-G*, F*]]`.
pub fn coin_matrix(p: &CoinParams) -> Mat2 {
    let (f, g) = (p.f(), p.g());
    Mat2::new(f, g, -g.conj(), f.conj()) * C64::from_polar(1.0, p.xi)
}

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SplitStepParams {
    /// Applied before the `S₋` half-shift.
    pub coin1: CoinParams,
    /// Applied before the `S₊` half-shift.
    pub coin2: CoinParams,
}

/// Spatial-identity and shift weights of one 2×2 block of the split-step
/// operator, `block = identity·I + shift·T`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockWeights {
    pub identity: C64,
    pub shift: C64,
}

/// The four blocks `[[↑↑, ↑↓], [↓↑, ↓↓]]` of `U_SQW`, global phases excluded.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitStepBlocks {
    pub up_up: BlockWeights,
    pub up_down: BlockWeights,
    pub down_up: BlockWeights,
    pub down_down: BlockWeights,
}

impl SplitStepParams {
    pub fn new(coin1: CoinParams, coin2: CoinParams) -> Self {
        Self { coin1, coin2 }
    }

    /// Both coins reduced to `x`-rotations, `φ = δ = ξ = 0`.
    pub fn from_thetas(theta1: f64, theta2: f64) -> Self {
        Self::new(CoinParams::rotation(theta1), CoinParams::rotation(theta2))
    }

    pub fn blocks(&self) -> SplitStepBlocks {
        let (f1, g1) = (self.coin1.f(), self.coin1.g());
        let (f2, g2) = (self.coin2.f(), self.coin2.g());
        SplitStepBlocks {
            up_up: BlockWeights { identity: -g2 * g1.conj(), shift: f2 * f1 },
            up_down: BlockWeights { identity: g2 * f1.conj(), shift: f2 * g1 },
            down_up: BlockWeights { identity: -g2.conj() * f1, shift: -f2.conj() * g1.conj() },
            down_down: BlockWeights { identity: -g2.conj() * g1, shift: f2.conj() * f1.conj() },
        }
    }

    /// Whether `G₂G₁* = 0` and `F₂G₁ = 0`, the conditions under which the
    /// split-step operator takes the Dirac cellular automaton form.
    pub fn satisfies_dca_conditions(&self, tol: f64) -> bool {
        let (g1, f2, g2) = (self.coin1.g(), self.coin2.f(), self.coin2.g());
        (g2 * g1.conj()).norm() <= tol && (f2 * g1).norm() <= tol
    }
}

/// Hopping strength `α` and mass term `β` of the Dirac cellular automaton.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DcaParams {
    alpha: f64,
    beta: f64,
}

impl DcaParams {
    pub const UNITARITY_TOL: f64 = 1e-9;

    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !(alpha.is_finite() && beta.is_finite()) || (alpha * alpha + beta * beta - 1.0).abs() > Self::UNITARITY_TOL {
            return Err(Error::InvalidParameter(format!("DCA needs α² + β² = 1, got α = {alpha}, β = {beta}")));
        }
        Ok(Self { alpha, beta })
    }

    /// `α = cos θ`, `β = sin θ`.
    pub fn from_angle(theta: f64) -> Self {
        Self { alpha: theta.cos(), beta: theta.sin() }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }
}

/// One of the three step rules.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Walk {
    Conventional(CoinParams),
    SplitStep(SplitStepParams),
    Dca(DcaParams),
}

impl From<CoinParams> for Walk {
    fn from(p: CoinParams) -> Self {
        Walk::Conventional(p)
    }
}

impl From<SplitStepParams> for Walk {
    fn from(p: SplitStepParams) -> Self {
        Walk::SplitStep(p)
    }
}

impl From<DcaParams> for Walk {
    fn from(p: DcaParams) -> Self {
        Walk::Dca(p)
    }
}

/// Precomputed stencil coefficients.
enum Kernel {
    Conventional(Mat2),
    SplitStep(Mat2, Mat2),
    Dca { alpha: C64, mass: C64 },
}

impl Walk {
    fn kernel(&self) -> Kernel {
        match self {
            Walk::Conventional(p) => Kernel::Conventional(coin_matrix(p)),
            Walk::SplitStep(p) => Kernel::SplitStep(coin_matrix(&p.coin1), coin_matrix(&p.coin2)),
            Walk::Dca(p) => Kernel::Dca { alpha: C64::from(p.alpha), mass: -I * p.beta },
        }
    }

    /// One step with the truncated-lattice edge check.
    pub fn step(&self, state: &SpinorState) -> Result<SpinorState> {
        check_edge(state, 1)?;
        let mut out = SpinorState::zeros(*state.lattice());
        let mut scratch = Vec::new();
        apply_kernel(&self.kernel(), state, &mut out, &mut scratch);
        Ok(out)
    }
}

/// Reads the neighbour at storage offset `i + d`; outside a truncated
/// lattice the amplitude is zero.
#[inline]
fn neighbour(src: &[Spinor], i: usize, d: isize, boundary: Boundary) -> Spinor {
    let n = src.len() as isize;
    let j = i as isize + d;
    match boundary {
        Boundary::Periodic => src[j.rem_euclid(n) as usize],
        Boundary::Truncated if (0..n).contains(&j) => src[j as usize],
        Boundary::Truncated => Spinor::zeros(),
    }
}

fn apply_kernel(kernel: &Kernel, src: &SpinorState, dst: &mut SpinorState, scratch: &mut Vec<Spinor>) {
    let boundary = src.lattice().boundary();
    let input = src.amplitudes();
    let out = dst.amplitudes_mut();
    match kernel {
        Kernel::Conventional(c) => {
            for (i, o) in out.iter_mut().enumerate() {
                let r = neighbour(input, i, 1, boundary);
                let l = neighbour(input, i, -1, boundary);
                *o = Spinor::new(c[(0, 0)] * r[0] + c[(0, 1)] * r[1], c[(1, 0)] * l[0] + c[(1, 1)] * l[1]);
            }
        }
        Kernel::SplitStep(c1, c2) => {
            // S₋(I⊗C₁), then coin 2; the S₊ half-shift is applied in the second pass.
            scratch.clear();
            scratch.extend((0..input.len()).map(|i| {
                let r = neighbour(input, i, 1, boundary);
                let h = input[i];
                let half = Spinor::new(c1[(0, 0)] * r[0] + c1[(0, 1)] * r[1], c1[(1, 0)] * h[0] + c1[(1, 1)] * h[1]);
                c2 * half
            }));
            for (i, o) in out.iter_mut().enumerate() {
                let l = neighbour(scratch, i, -1, boundary);
                *o = Spinor::new(scratch[i][0], l[1]);
            }
        }
        Kernel::Dca { alpha, mass } => {
            for (i, o) in out.iter_mut().enumerate() {
                let r = neighbour(input, i, 1, boundary);
                let l = neighbour(input, i, -1, boundary);
                let h = input[i];
                *o = Spinor::new(alpha * r[0] + mass * h[1], alpha * l[1] + mass * h[0]);
            }
        }
    }
}

fn check_edge(state: &SpinorState, step: usize) -> Result<()> {
    let lattice = state.lattice();
    if lattice.boundary() == Boundary::Periodic {
        return Ok(());
    }
    match state.support() {
        Some((lo, hi)) if lo == 0 || hi + 1 == lattice.sites() => {
            Err(Error::Boundary { step, half_width: lattice.half_width() })
        }
        _ => Ok(()),
    }
}

/// `S(I⊗C)`: conventional coined step.
pub fn step_conventional(state: &SpinorState, p: &CoinParams) -> Result<SpinorState> {
    Walk::Conventional(*p).step(state)
}

/// `S₊(I⊗C₂)S₋(I⊗C₁)`: one split-step.
pub fn step_split(state: &SpinorState, p: &SplitStepParams) -> Result<SpinorState> {
    Walk::SplitStep(*p).step(state)
}

/// `α(T₋⊗|↑⟩⟨↑| + T₊⊗|↓⟩⟨↓|) - iβ(I⊗σx)`.
pub fn step_dca(state: &SpinorState, p: &DcaParams) -> Result<SpinorState> {
    Walk::Dca(*p).step(state)
}

/// Applies `walk` `n_steps` times.
pub fn evolve(state: &SpinorState, walk: &Walk, n_steps: usize) -> Result<SpinorState> {
    evolve_with(state, walk, n_steps, |_, _| {})
}

/// Applies `walk` `n_steps` times, handing every intermediate state (step 0
/// through `n_steps`) to `observe`.
///
/// On a truncated lattice the whole run is checked against the current
/// support before the first step, so a walk that would hit the edge fails
/// without doing any work.
pub fn evolve_with<F>(state: &SpinorState, walk: &Walk, n_steps: usize, mut observe: F) -> Result<SpinorState>
where
    F: FnMut(usize, &SpinorState),
{
    let lattice = *state.lattice();
    if lattice.boundary() == Boundary::Truncated {
        if let Some((lo, hi)) = state.support() {
            let room = lo.min(lattice.sites() - 1 - hi);
            if n_steps > room {
                return Err(Error::Boundary { step: room + 1, half_width: lattice.half_width() });
            }
        }
    }
    let kernel = walk.kernel();
    let mut current = state.clone();
    let mut next = SpinorState::zeros(lattice);
    let mut scratch = Vec::with_capacity(lattice.sites());
    observe(0, &current);
    for step in 1..=n_steps {
        check_edge(&current, step)?;
        apply_kernel(&kernel, &current, &mut next, &mut scratch);
        std::mem::swap(&mut current, &mut next);
        observe(step, &current);
    }
    Ok(current)
}

/// Explicit `(2N)×(2N)` matrix of one step, with basis index `2·i + s` for
/// storage site `i` and spin `s` (0 = ↑). Built column by column from the
/// stencil; on a truncated lattice amplitude leaving the edge is dropped.
pub fn operator_matrix(walk: &Walk, lattice: LatticeSpec) -> DMatrix<C64> {
    let dim = 2 * lattice.sites();
    let kernel = walk.kernel();
    let mut m = DMatrix::zeros(dim, dim);
    let mut basis = SpinorState::zeros(lattice);
    let mut image = SpinorState::zeros(lattice);
    let mut scratch = Vec::new();
    for col in 0..dim {
        basis.amplitudes_mut()[col / 2][col % 2] = C64::from(1.0);
        apply_kernel(&kernel, &basis, &mut image, &mut scratch);
        for (i, s) in image.amplitudes().iter().enumerate() {
            m[(2 * i, col)] = s[0];
            m[(2 * i + 1, col)] = s[1];
        }
        basis.amplitudes_mut()[col / 2][col % 2] = C64::from(0.0);
    }
    m
}

/// Largest entry-wise modulus of `U_SQW(p) - U_DA(cos θ₂, sin θ₂)` on `lattice`,
/// where `θ₂` is the rotation angle of the second coin.
pub fn dca_equivalence_residual(p: &SplitStepParams, lattice: LatticeSpec) -> f64 {
    let split = operator_matrix(&Walk::SplitStep(*p), lattice);
    let dca = operator_matrix(&Walk::Dca(DcaParams::from_angle(p.coin2.theta)), lattice);
    (split - dca).iter().map(|z| z.norm()).fold(0.0, f64::max)
}
