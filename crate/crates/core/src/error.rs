use thiserror::Error;

/// Errors raised by symbol evaluation, spectra, and operator routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A moment integral `∫ φ(r) r^m e^{-r²} dr` is not finite (or not
    /// provably finite) for the symbol at hand.
    #[error("divergent moment: {0}")]
    DivergentMoment(String),

    /// Quadrature at `Q` and `2Q` nodes disagreed by more than the tolerance.
    #[error("quadrature did not converge: |I({nodes}) - I({doubled})| = {difference:e} > {tolerance:e}")]
    NonConvergent {
        nodes: usize,
        doubled: usize,
        difference: f64,
        tolerance: f64,
    },

    /// The input lies outside the natural domain of the operator.
    #[error("domain violation: {0}")]
    DomainViolation(String),

    /// A black-box symbol exceeded its declared growth envelope.
    #[error("envelope violated at r = {r}: |phi(r)| = {modulus:e} > C e^(delta r^2) = {bound:e}")]
    EnvelopeViolation { r: f64, modulus: f64, bound: f64 },

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

pub type Result<T> = std::result::Result<T, Error>;
