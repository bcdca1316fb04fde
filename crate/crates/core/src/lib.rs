//! Spinning disks on curved surfaces: geometry, equations of motion,
//! fixed-step integration and independent verification oracles.
//!
//! Everything is generic over the scalar type ([`Real`], implemented for
//! `f32` and `f64`); the aliases below fix `f64`.

pub mod dynamics;
pub mod error;
pub mod expr;
pub mod integrate;
pub mod linalg;
pub mod quadrature;
pub mod scalar;
pub mod surfaces;
pub mod verify;

pub use dynamics::{
    axial_spin, energy, full_disk_rhs, magnetic_geodesic_rhs, parallel_transport_rate,
    reduced_disk_rhs, top_rhs, top_to_sphere, DiametralForm, ModelKind, ReducedDiskParams,
};
pub use error::{Error, Result};
pub use expr::Expr;
pub use integrate::{geodesic_curvature_monitor, integrate, OdeSystem, Scheme, Status};
pub use scalar::Real;
pub use surfaces::{
    gauss_bonnet_patch_K, geometry_jet, rotate90, DerivativeMode, Domain, Mutation, POLE_GUARD,
};

pub type Chart = surfaces::SurfaceChart<f64>;
pub type Jet = surfaces::GeometryJet<f64>;
pub type Model = dynamics::Model<f64>;
pub type Disk = dynamics::DiskParams<f64>;
pub type Top = dynamics::TopParams<f64>;
pub type Potential = dynamics::Potential<f64>;
pub type FullState = dynamics::FullState<f64>;
pub type ReducedState = dynamics::ReducedState<f64>;
pub type Settings = integrate::IntegratorSettings<f64>;
pub type Trajectory = integrate::Trajectory<f64>;
