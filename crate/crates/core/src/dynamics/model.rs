use crate::error::{Error, Result};
use crate::integrate::{geodesic_curvature_monitor, MonitorSample, OdeSystem};
use crate::linalg::{dot2, Vec2};
use crate::scalar::Real;
use crate::surfaces::{geometry_jet, SurfaceChart};

use super::lagrange::{disk_mass_matrix, quadratic};
use super::params::{top_to_sphere, DiametralForm, DiskParams, TopParams};
use super::potential::Potential;
use super::rhs::{
    check_top_domain, full_disk_rhs, magnetic_geodesic_rhs, reduced_disk_rhs, top_rhs,
    ReducedDiskParams,
};
use super::state::{FullState, ReducedState};

/// Which equations of motion a [`Model`] integrates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModelKind<T> {
    FullDisk {
        disk: DiskParams<T>,
        form: DiametralForm,
    },
    ReducedDisk(ReducedDiskParams<T>),
    Magnetic {
        mass: T,
        charge: T,
    },
    Geodesic {
        mass: T,
    },
    /// Euler-angle top. Gravity is built in; the model's chart is the
    /// equivalent sphere and serves only the monitors.
    Top(TopParams<T>),
}

impl<T> ModelKind<T> {
    pub fn name(&self) -> &'static str {
        match self {
            ModelKind::FullDisk { .. } => "full_disk",
            ModelKind::ReducedDisk(_) => "reduced_disk",
            ModelKind::Magnetic { .. } => "magnetic",
            ModelKind::Geodesic { .. } => "geodesic",
            ModelKind::Top(_) => "top",
        }
    }

    /// Whether states carry `(θ, θ̇)`.
    pub fn has_spin_angle(&self) -> bool {
        matches!(self, ModelKind::FullDisk { .. } | ModelKind::Top(_))
    }

    pub fn state_dim(&self) -> usize {
        if self.has_spin_angle() {
            6
        } else {
            4
        }
    }
}

/// A surface, a set of equations and a potential: everything needed to
/// integrate a scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct Model<T> {
    chart: SurfaceChart<T>,
    kind: ModelKind<T>,
    potential: Potential<T>,
}

impl<T: Real> Model<T> {
    /// Checks structural requirements up front so integration only fails on
    /// the state.
    pub fn new(
        chart: SurfaceChart<T>,
        kind: ModelKind<T>,
        potential: Potential<T>,
    ) -> Result<Self> {
        let needs_orthogonal =
            matches!(kind, ModelKind::FullDisk { .. } | ModelKind::ReducedDisk(_));
        if needs_orthogonal && !chart.is_orthogonal() {
            return Err(Error::NonOrthogonalChart);
        }
        let needs_embedding = match kind {
            ModelKind::FullDisk { .. } => true,
            ModelKind::ReducedDisk(p) => p.inertia_diametral > T::zero(),
            _ => false,
        };
        if needs_embedding && !chart.has_embedding() {
            return Err(Error::MissingEmbedding);
        }
        match kind {
            ModelKind::Magnetic { mass, .. } | ModelKind::Geodesic { mass } => {
                crate::error::require_positive("m", mass.to_f64_lossy())?;
            }
            ModelKind::Top(_) if !potential.is_none() => {
                return Err(Error::InvalidParameter {
                    name: "potential",
                    reason: "the top carries its own gravity".into(),
                });
            }
            _ => {}
        }
        Ok(Self {
            chart,
            kind,
            potential,
        })
    }

    /// Top model on its equivalent sphere.
    pub fn top(params: TopParams<T>) -> Result<Self> {
        let chart = SurfaceChart::sphere(top_to_sphere(&params).radius)?;
        Self::new(chart, ModelKind::Top(params), Potential::None)
    }

    pub fn chart(&self) -> &SurfaceChart<T> {
        &self.chart
    }

    pub fn kind(&self) -> &ModelKind<T> {
        &self.kind
    }

    pub fn potential(&self) -> &Potential<T> {
        &self.potential
    }

    /// Time derivative of a flattened state.
    pub fn rhs(&self, y: &[T]) -> Result<Vec<T>> {
        match &self.kind {
            ModelKind::FullDisk { disk, form } => {
                let s = FullState::from_slice(y);
                Ok(full_disk_rhs(&self.chart, disk, &self.potential, *form, &s)?.to_vec())
            }
            ModelKind::Top(top) => Ok(top_rhs(top, &FullState::from_slice(y))?.to_vec()),
            ModelKind::ReducedDisk(p) => {
                let s = ReducedState::from_slice(y);
                Ok(reduced_disk_rhs(&self.chart, p, &self.potential, &s)?.to_vec())
            }
            ModelKind::Magnetic { mass, charge } => {
                let s = ReducedState::from_slice(y);
                Ok(
                    magnetic_geodesic_rhs(&self.chart, *mass, *charge, &self.potential, &s)?
                        .to_vec(),
                )
            }
            ModelKind::Geodesic { mass } => {
                let s = ReducedState::from_slice(y);
                Ok(
                    magnetic_geodesic_rhs(&self.chart, *mass, T::zero(), &self.potential, &s)?
                        .to_vec(),
                )
            }
        }
    }

    /// Axial spin `ω_a` for the models that carry a spin angle.
    pub fn omega_a(&self, y: &[T]) -> Result<Option<T>> {
        match &self.kind {
            ModelKind::FullDisk { .. } => {
                let s = FullState::from_slice(y);
                let jet = geometry_jet(&self.chart, s.x)?;
                Ok(Some(s.theta_dot + dot2(&jet.connection_form()?, &s.v)))
            }
            ModelKind::Top(_) => {
                let s = FullState::from_slice(y);
                Ok(Some(s.theta_dot + s.v[1] * s.x[0].cos()))
            }
            _ => Ok(None),
        }
    }

    /// Speed `|ẋ|_g` on the model's chart.
    pub fn speed(&self, y: &[T]) -> Result<T> {
        let jet = geometry_jet(&self.chart, [y[0], y[1]])?;
        Ok(jet.norm(&[y[2], y[3]]))
    }
}

/// Total energy: kinetic energy of the model's Lagrangian plus the potential.
///
/// For the reduced disk the constant spin energy `½L²/I_a` is left out.
pub fn energy<T: Real>(model: &Model<T>, y: &[T]) -> Result<T> {
    let chart = &model.chart;
    let x: Vec2<T> = [y[0], y[1]];
    let v: Vec2<T> = [y[2], y[3]];
    let half = T::lit(0.5);
    match &model.kind {
        ModelKind::Top(top) => {
            check_top_domain(x)?;
            let (sn, cs) = x[0].sin_cos();
            let spin = y[5] + v[1] * cs;
            Ok(
                half * top.inertia_transverse * (v[0] * v[0] + v[1] * v[1] * sn * sn)
                    + half * top.inertia_axial * spin * spin
                    + top.mass * top.gravity * top.arm * cs,
            )
        }
        ModelKind::FullDisk { disk, form } => {
            let jet = geometry_jet(chart, x)?;
            let (m, _) = disk_mass_matrix(chart, &jet, disk.mass, disk.inertia_diametral, *form)?;
            let omega = y[5] + dot2(&jet.connection_form()?, &v);
            Ok(half * disk.inertia_axial * omega * omega
                + quadratic(&m, &v)
                + model.potential.value(jet.x))
        }
        ModelKind::ReducedDisk(p) => {
            let jet = geometry_jet(chart, x)?;
            let (m, _) = disk_mass_matrix(chart, &jet, p.mass, p.inertia_diametral, p.form)?;
            Ok(quadratic(&m, &v) + model.potential.value(jet.x))
        }
        ModelKind::Magnetic { mass, .. } | ModelKind::Geodesic { mass } => {
            let jet = geometry_jet(chart, x)?;
            Ok(half * *mass * jet.inner(&v, &v) + model.potential.value(jet.x))
        }
    }
}

/// Translational and diametral kinetic energies `(½m|ẋ|², ½I_d·ω_d²)` of a
/// full-disk state.
pub fn disk_energy_split<T: Real>(
    chart: &SurfaceChart<T>,
    disk: &DiskParams<T>,
    form: DiametralForm,
    s: &FullState<T>,
) -> Result<(T, T)> {
    let jet = geometry_jet(chart, s.x)?;
    let half = T::lit(0.5);
    let translational = half * disk.mass * jet.inner(&s.v, &s.v);
    let d = super::lagrange::diametral_quadratic(&jet, form)?;
    let diametral = half * disk.inertia_diametral * crate::linalg::bilinear(&d, &s.v, &s.v);
    Ok((translational, diametral))
}

impl<T: Real> OdeSystem<T> for Model<T> {
    fn dim(&self) -> usize {
        self.kind.state_dim()
    }

    fn derivative(&self, y: &[T]) -> Result<Vec<T>> {
        self.rhs(y)
    }

    fn check_state(&self, y: &[T]) -> Result<()> {
        let x = [y[0], y[1]];
        match self.kind {
            ModelKind::Top(_) => check_top_domain(x),
            _ => self.chart.domain().check(x).map(|_| ()),
        }
    }

    fn monitor(&self, y: &[T]) -> Result<MonitorSample<T>> {
        let jet = geometry_jet(&self.chart, [y[0], y[1]])?;
        let v = [y[2], y[3]];
        let dy = self.rhs(y)?;
        let state = ReducedState { x: jet.x, v };
        Ok(MonitorSample {
            energy: energy(self, y)?,
            speed: jet.norm(&v),
            omega_a: self.omega_a(y)?,
            geodesic_curvature: geodesic_curvature_monitor(&self.chart, &state, &[dy[2], dy[3]])
                .ok(),
            gaussian_curvature: jet.gaussian_curvature,
        })
    }
}
