//! Classical phase-space densities for the spinless relativistic hydrogen
//! atom.
//!
//! Quantum side: [`spectrum`]. Classical side: [`phasespace`],
//! [`expectations`] and [`harmonics`]. Quadrature, sampling, orbit
//! integration and Wigner comparison live in [`numerics`].

pub mod cli;
pub mod error;
pub mod expectations;
pub mod harmonics;
pub mod numerics;
pub mod phasespace;
pub mod spectrum;

pub use error::{Error, Result};
pub use phasespace::{ChartPoint, PhasePoint, StateDensity};
pub use spectrum::{Coupling, QuantumNumbers};
