use crate::error::{require_finite, require_positive, Error, Result};
use crate::scalar::Real;

/// Mass and inertia of a thin disk.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskParams<T> {
    pub mass: T,
    /// Moment of inertia about the symmetry axis.
    pub inertia_axial: T,
    /// Moment of inertia about a diameter.
    pub inertia_diametral: T,
    pub radius: T,
}

impl<T: Real> DiskParams<T> {
    /// Uniform disk: `I_d = m R²/4`, `I_a = 2 I_d`.
    pub fn uniform(mass: T, radius: T) -> Result<Self> {
        require_positive("m", mass.to_f64_lossy())?;
        require_positive("R_disk", radius.to_f64_lossy())?;
        let inertia_diametral = mass * radius * radius / T::lit(4.0);
        Ok(Self {
            mass,
            inertia_axial: T::lit(2.0) * inertia_diametral,
            inertia_diametral,
            radius,
        })
    }

    /// Arbitrary positive parameters; the uniform-disk relations are not enforced.
    pub fn new(mass: T, inertia_axial: T, inertia_diametral: T, radius: T) -> Result<Self> {
        require_positive("m", mass.to_f64_lossy())?;
        require_positive("I_a", inertia_axial.to_f64_lossy())?;
        require_positive("I_d", inertia_diametral.to_f64_lossy())?;
        require_positive("R_disk", radius.to_f64_lossy())?;
        Ok(Self {
            mass,
            inertia_axial,
            inertia_diametral,
            radius,
        })
    }
}

/// Lagrange top: axisymmetric body with a fixed pivot under gravity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TopParams<T> {
    pub mass: T,
    /// Pivot to center of mass distance.
    pub arm: T,
    /// Transverse moment of inertia about the pivot.
    pub inertia_transverse: T,
    /// Moment of inertia about the axle.
    pub inertia_axial: T,
    pub gravity: T,
}

impl<T: Real> TopParams<T> {
    pub fn new(
        mass: T,
        arm: T,
        inertia_transverse: T,
        inertia_axial: T,
        gravity: T,
    ) -> Result<Self> {
        require_positive("M", mass.to_f64_lossy())?;
        require_positive("ell", arm.to_f64_lossy())?;
        require_positive("I1", inertia_transverse.to_f64_lossy())?;
        require_positive("I3", inertia_axial.to_f64_lossy())?;
        require_finite("g", gravity.to_f64_lossy())?;
        if gravity < T::zero() {
            return Err(Error::InvalidParameter {
                name: "g",
                reason: "must be non-negative".into(),
            });
        }
        Ok(Self {
            mass,
            arm,
            inertia_transverse,
            inertia_axial,
            gravity,
        })
    }
}

/// Point particle on a sphere equivalent to a Lagrange top.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereEquivalent<T> {
    pub radius: T,
    pub mass: T,
    inertia_axial: T,
}

impl<T: Real> SphereEquivalent<T> {
    /// Charge `L = I3 ω_a` for axial spin `ω_a`.
    pub fn charge(&self, omega_a: T) -> T {
        self.inertia_axial * omega_a
    }
}

/// Sphere radius and particle mass matching the top's transverse kinetic
/// energy (`m R² = I1`) and its potential (`m g R = M g ℓ`).
pub fn top_to_sphere<T: Real>(top: &TopParams<T>) -> SphereEquivalent<T> {
    let ml = top.mass * top.arm;
    SphereEquivalent {
        radius: top.inertia_transverse / ml,
        mass: ml * ml / top.inertia_transverse,
        inertia_axial: top.inertia_axial,
    }
}

/// Which quadratic form measures the diametral angular speed `ω_d²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DiametralForm {
    /// `⟨Sẋ, Sẋ⟩`, the squared angular speed of the surface normal.
    #[default]
    ThirdForm,
    /// `h(ẋ, ẋ)`, kept for comparison; sign-indefinite on saddles.
    SecondForm,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_disk_relations() {
        let d = DiskParams::uniform(1.0f64, 0.2).unwrap();
        assert!((d.inertia_diametral - 0.01).abs() < 1e-15);
        assert!((d.inertia_axial - 0.02).abs() < 1e-15);
    }

    #[test]
    fn rejects_bad_params() {
        assert!(matches!(
            DiskParams::uniform(-1.0, 0.1),
            Err(Error::InvalidParameter { name: "m", .. })
        ));
        assert!(TopParams::new(1.0, 0.5, 2.0, 1.0, -9.8).is_err());
        assert!(TopParams::new(1.0, 0.0, 2.0, 1.0, 9.8).is_err());
    }

    #[test]
    fn top_mapping_example() {
        let top = TopParams::new(1.0, 0.5, 2.0, 1.0, 9.8).unwrap();
        let s = top_to_sphere(&top);
        assert_eq!(s.radius, 4.0);
        assert_eq!(s.mass, 0.125);
        assert_eq!(s.charge(30.0), 30.0);
    }

    proptest::proptest! {
        #[test]
        fn top_mapping_identities(
            m in 0.1f64..10.0, l in 0.05f64..3.0, i1 in 0.1f64..10.0, g in 0.0f64..20.0
        ) {
            let top = TopParams::new(m, l, i1, 1.0, g).unwrap();
            let s = top_to_sphere(&top);
            let rel = |a: f64, b: f64| (a - b).abs() <= 4.0 * f64::EPSILON * a.abs().max(b.abs());
            proptest::prop_assert!(rel(s.mass * s.radius * s.radius, i1));
            proptest::prop_assert!(rel(s.mass * g * s.radius, m * g * l));
        }
    }
}
