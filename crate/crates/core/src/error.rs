use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter is outside its admissible domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("site index {x} lies outside the lattice of half-width {half_width}")]
    OutOfLattice { x: i64, half_width: usize },

    /// The walker reached the last site of a truncated lattice and the next
    /// step would move amplitude past it.
    #[error("walker touches the edge of the truncated lattice (half-width {half_width}) before step {step}")]
    Boundary { step: usize, half_width: usize },

    #[error("degenerate momentum point: eigenvalues coincide (bracket = {bracket})")]
    Degenerate { bracket: f64 },

    #[error("reduced density matrix has eigenvalue {0:e} below the clipping tolerance")]
    NegativeEigenvalue(f64),
}

impl Error {
    /// True for errors caused by the numerical domain (lattice edges,
    /// degeneracies, loss of positivity) rather than by bad input.
    pub fn is_numerical(&self) -> bool {
        !matches!(self, Error::InvalidParameter(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
