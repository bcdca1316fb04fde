//! Equations of motion: full and reduced spinning disk, magnetic geodesics,
//! and the Lagrange top.

mod lagrange;
mod model;
mod params;
mod potential;
mod rhs;
mod state;

pub use lagrange::quadratic_el_acceleration;
pub use model::{disk_energy_split, energy, Model, ModelKind};
pub use params::{top_to_sphere, DiametralForm, DiskParams, SphereEquivalent, TopParams};
pub use potential::Potential;
pub use rhs::{
    axial_spin, full_disk_rhs, magnetic_geodesic_rhs, parallel_transport_rate, reduced_disk_rhs,
    top_rhs, ReducedDiskParams,
};
pub use state::{FullState, ReducedState};
