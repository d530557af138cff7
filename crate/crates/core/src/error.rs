use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// The coupling is strong enough that the effective angular momentum
    /// becomes complex (fall to the center).
    #[error("degenerate coupling: alphaZ = {alpha_z} is not below (2l+1)/2 for l = {l}")]
    DegenerateCoupling { l: u32, alpha_z: f64 },

    #[error("{what} out of range: {value}")]
    OutOfRange { what: &'static str, value: f64 },

    #[error("invalid quantum numbers (n = {n}, l = {l}): need n >= 1 and l <= n - 1")]
    InvalidQuantumNumbers { n: u32, l: u32 },

    #[error("grid point {0} is out of order or outside the domain")]
    GridOutOfDomain(f64),

    #[error("phase point is unbound: E = {energy} >= 1")]
    Unbound { energy: f64 },

    #[error("angular momentum L = {l} is below alphaZ = {alpha_z}")]
    SubBarrier { l: f64, alpha_z: f64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("quadrature did not converge within {subdivisions} subdivisions (value {value}, error estimate {error})")]
    MaxSubdivisions {
        subdivisions: usize,
        value: f64,
        error: f64,
    },

    #[error("unsupported state for this operation: {0}")]
    UnsupportedState(&'static str),

    #[error("empty sample batch")]
    EmptyBatch,

    #[error("collision: r = {radius:e} fell below the threshold at t = {time}")]
    Collision { time: f64, radius: f64 },

    #[error("integrator could not meet tolerance at t = {time} (step {step:e})")]
    ToleranceFailure { time: f64, step: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
