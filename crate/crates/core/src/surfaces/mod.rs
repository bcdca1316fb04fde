//! Parametric surface charts and the pointwise geometry they carry.

mod chart;
mod jet;
mod patch;

pub use chart::{
    ChartKind, CustomChart, DerivativeMode, Domain, EmbeddingJet, MetricJet, Mutation,
    SurfaceChart, POLE_GUARD,
};
pub(crate) use jet::geometry_jet_unchecked;
pub use jet::{geometry_jet, rotate90, GeometryJet};
pub use patch::{gauss_bonnet_balance, gauss_bonnet_patch_K, PatchBalance};
