//! Verification machinery: adaptive quadrature, phase-space quadrature
//! oracles, exact sampling, orbit integration and the Wigner comparison.

pub mod orbit;
pub mod phase_quadrature;
pub mod quadrature;
pub mod sampling;
pub mod wigner;

pub use orbit::{orbit_integrate, radial_period, Trajectory};
pub use phase_quadrature::{
    marginal_quadrature, normalization_quadrature, phase_average, phase_averages, quadrature_expectations, QuadratureExpectations,
};
pub use quadrature::{integrate, tanh_sinh, tanh_sinh_vec, Integral, QuadratureSpec, SemiInfiniteMap};
pub use sampling::{mc_expectation, sample_yrast, sample_yrast_parallel, McEstimate, SampleBatch};
pub use wigner::{classical_marginal, figure_data, wigner_marginal, FigureRow};
