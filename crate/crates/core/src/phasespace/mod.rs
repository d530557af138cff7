//! Classical side: conserved-quantity coordinates, the invariant momentum
//! measure, and the proposed stationary densities with their marginals.

mod coords;
mod density;
mod negativity;

pub use coords::{
    chart_to_phase, circular_orbit, measure_factor, orbit_energy, orbit_scale, orbital_elements, phase_to_chart,
    phi_factor, ChartPoint, OrbitalElements, PhasePoint, Vec3,
};
pub use density::{
    density_eval, momentum_marginal, scale_marginal, ChartDensity, ChartTerm, DensityKind, StateDensity,
};
pub use negativity::{gap_sign_changes, negativity_scan, NegativityScan};

pub(crate) use coords::{dot, norm};
pub(crate) use density::beta;
#[cfg(test)]
pub(crate) use density::gamma;
