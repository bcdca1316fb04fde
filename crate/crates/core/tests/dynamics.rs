use std::f64::consts::{FRAC_PI_2, PI};

use gyrosurf::dynamics::{disk_energy_split, DiskParams, FullState, ReducedState, TopParams};
use gyrosurf::verify::{compare_trajectories, DeviationMetric};
use gyrosurf::{
    energy, full_disk_rhs, geometry_jet, integrate, reduced_disk_rhs, top_rhs, top_to_sphere,
    Chart, DiametralForm, Model, ModelKind, Potential, ReducedDiskParams, Settings,
};

fn sphere() -> Chart {
    Chart::sphere(1.0).unwrap()
}

fn full_disk(chart: Chart, disk: DiskParams<f64>) -> Model {
    Model::new(
        chart,
        ModelKind::FullDisk {
            disk,
            form: DiametralForm::ThirdForm,
        },
        Potential::None,
    )
    .unwrap()
}

#[test]
fn plane_full_disk_moves_straight() {
    let disk = DiskParams::new(1.0, 0.5, 0.25, 1.0).unwrap();
    let s = FullState {
        x: [0.3, -1.0],
        v: [0.7, 0.2],
        theta: 0.1,
        theta_dot: 4.0,
    };
    let d = full_disk_rhs(
        &Chart::plane(),
        &disk,
        &Potential::None,
        DiametralForm::ThirdForm,
        &s,
    )
    .unwrap();
    assert_eq!(d.v, [0.0, 0.0]);
    assert_eq!(d.theta_dot, 0.0);
    assert_eq!(d.x, s.v);
}

#[test]
fn reduced_energy_on_plane() {
    let m = Model::new(
        Chart::plane(),
        ModelKind::ReducedDisk(ReducedDiskParams::new(2.0, 0.0, 0.7).unwrap()),
        Potential::None,
    )
    .unwrap();
    assert_eq!(energy(&m, &[0.0, 0.0, 3.0, 4.0]).unwrap(), 25.0);
}

#[test]
fn geodesic_limit_of_reduced_disk() {
    let torus = Chart::torus(2.0, 0.5).unwrap();
    let s = ReducedState {
        x: [0.4, 1.3],
        v: [0.6, -0.9],
    };
    let zero = ReducedDiskParams::new(1.5, 0.0, 0.0).unwrap();
    let a = reduced_disk_rhs(&torus, &zero, &Potential::None, &s).unwrap();
    let b = gyrosurf::magnetic_geodesic_rhs(&torus, 1.5, 0.0, &Potential::None, &s).unwrap();
    for k in 0..2 {
        assert!((a.v[k] - b.v[k]).abs() < 1e-12);
    }
}

#[test]
fn torque_free_top_keeps_its_axis() {
    let top = TopParams::new(1.0, 0.5, 2.0, 1.0, 0.0).unwrap();
    let s = FullState {
        x: [1.0, 0.4],
        v: [0.0, 0.0],
        theta: 0.0,
        theta_dot: 17.0,
    };
    let d = top_rhs(&top, &s).unwrap();
    assert_eq!(d.v, [0.0, 0.0]);
}

#[test]
fn top_mapping_values() {
    let top = TopParams::new(1.0, 0.5, 2.0, 1.0, 9.8).unwrap();
    let eq = top_to_sphere(&top);
    assert_eq!((eq.radius, eq.mass), (4.0, 0.125));
    assert_eq!(eq.charge(30.0), 30.0);
    for (mass, arm, i1) in [(0.3f64, 0.7, 1.1), (2.0, 0.1, 5.0), (1.7, 1.3, 0.9)] {
        let top = TopParams::new(mass, arm, i1, 1.0, 9.8).unwrap();
        let eq = top_to_sphere(&top);
        assert!((eq.mass * eq.radius * eq.radius - i1).abs() <= 4.0 * f64::EPSILON * i1);
        assert!((eq.mass * eq.radius - mass * arm).abs() <= 4.0 * f64::EPSILON * mass * arm);
    }
}

/// Full disk with `I_a = 0.02` and spin chosen so `L = 0.5`, against the
/// reduced model with `I_d = 0`, over `t ∈ [0, 10]`.
fn reduction_gap(inertia_diametral: f64) -> f64 {
    let disk = DiskParams::new(1.0, 0.02, inertia_diametral, 0.2).unwrap();
    let charge = 0.5;
    let (x, v): ([f64; 2], [f64; 2]) = ([1.2, 0.3], [0.2, 0.5]);
    let theta_dot = charge / disk.inertia_axial - x[0].cos() * v[1];
    let settings = Settings::new(1e-3, 10_000).unwrap().with_sample_every(10);
    let full = integrate(
        &full_disk(sphere(), disk),
        &[x[0], x[1], v[0], v[1], 0.0, theta_dot],
        &settings,
    )
    .unwrap();
    let reduced = Model::new(
        sphere(),
        ModelKind::ReducedDisk(ReducedDiskParams::new(1.0, 0.0, charge).unwrap()),
        Potential::None,
    )
    .unwrap();
    let small = integrate(&reduced, &[x[0], x[1], v[0], v[1]], &settings).unwrap();
    assert!(!full.is_truncated() && !small.is_truncated());
    compare_trajectories(&full, &small, DeviationMetric::CoordinateSup, f64::INFINITY)
        .unwrap()
        .max_abs
}

#[test]
fn reduction_gap_is_at_most_linear_in_diametral_inertia() {
    let sweep = [1e-2, 1e-3, 1e-4];
    let gaps: Vec<f64> = sweep.iter().map(|&i| reduction_gap(i)).collect();
    let slopes: Vec<f64> = gaps.iter().zip(&sweep).map(|(g, i)| g / i).collect();
    let c = slopes.iter().cloned().fold(0.0, f64::max);
    assert!(gaps[0] > 0.0);
    for (g, i) in gaps.iter().zip(&sweep) {
        assert!(*g <= c * i, "gap {g} at I_d = {i}, C = {c}");
    }
    // the slope does not grow as I_d shrinks
    assert!(slopes[2] <= 1.5 * slopes[0], "{slopes:?}");
}

#[test]
fn full_disk_matches_reduced_disk_with_same_charge() {
    let disk = DiskParams::new(1.0, 0.02, 0.01, 0.2).unwrap();
    let s = FullState {
        x: [1.1, 0.2],
        v: [0.3, -0.4],
        theta: 0.0,
        theta_dot: 20.0,
    };
    let jet = geometry_jet(&sphere(), s.x).unwrap();
    let charge = disk.inertia_axial * gyrosurf::axial_spin(&jet, &s).unwrap();
    let a = full_disk_rhs(
        &sphere(),
        &disk,
        &Potential::None,
        DiametralForm::ThirdForm,
        &s,
    )
    .unwrap();
    let p = ReducedDiskParams::new(1.0, 0.01, charge).unwrap();
    let b = reduced_disk_rhs(&sphere(), &p, &Potential::None, &s.reduced()).unwrap();
    for k in 0..2 {
        assert!((a.v[k] - b.v[k]).abs() < 1e-12, "{:?} vs {:?}", a.v, b.v);
    }
}

#[test]
fn small_disk_energy_bound() {
    let torus = Chart::torus(2.0, 0.7).unwrap();
    let disk = DiskParams::uniform(1.0, 0.3).unwrap();
    let model = full_disk(torus.clone(), disk);
    let y0 = [0.3, 0.0, 0.4, 0.6, 0.0, 15.0];
    let t = integrate(
        &model,
        &y0,
        &Settings::new(1e-3, 5_000).unwrap().with_sample_every(50),
    )
    .unwrap();
    assert!(!t.is_truncated());
    for y in &t.states {
        let s = FullState::from_slice(y);
        let (trans, diam) = disk_energy_split(&torus, &disk, DiametralForm::ThirdForm, &s).unwrap();
        let norm = geometry_jet(&torus, s.x)
            .unwrap()
            .shape_operator_norm()
            .unwrap();
        let bound = disk.radius * disk.radius / 4.0 * norm * norm;
        assert!(
            diam / trans <= bound * (1.0 + 1e-12),
            "{} > {bound}",
            diam / trans
        );
    }
}

/// Runs the magnetic model from a meridian start with charge `l`.
fn meridian_run(l: f64) -> gyrosurf::Trajectory {
    let m = Model::new(
        sphere(),
        ModelKind::Magnetic {
            mass: 1.0,
            charge: l,
        },
        Potential::None,
    )
    .unwrap();
    integrate(
        &m,
        &[1.0, 0.0, 0.5, 0.0],
        &Settings::new(1e-3, 3_000).unwrap(),
    )
    .unwrap()
}

#[test]
fn reversing_charge_mirrors_the_orbit() {
    let (left, right) = (meridian_run(0.7), meridian_run(-0.7));
    assert!(!left.is_truncated());
    let mut turned = false;
    for i in 0..left.len() {
        let (a, b) = (left.position(i), right.position(i));
        assert!((a[0] - b[0]).abs() < 1e-12);
        assert!((a[1] + b[1]).abs() < 1e-12);
        turned |= a[1].abs() > 0.1;
    }
    assert!(turned, "orbit never left the meridian");
}

#[test]
fn positive_charge_turns_left_on_positive_curvature() {
    let t = meridian_run(0.7);
    let k = t.monitors[10].geodesic_curvature.unwrap();
    assert!(k > 0.0);
    assert!((k - 0.7 / 0.5).abs() < 1e-6);
}

#[test]
fn small_disk_translational_speed_is_constant() {
    let m = Model::new(
        sphere(),
        ModelKind::ReducedDisk(ReducedDiskParams::new(1.0, 0.0, 0.5).unwrap()),
        Potential::None,
    )
    .unwrap();
    let t = integrate(
        &m,
        &[FRAC_PI_2, 0.0, 0.0, 1.0],
        &Settings::new(1e-3, 10_000).unwrap(),
    )
    .unwrap();
    let v0 = t.monitors[0].speed;
    for s in &t.monitors {
        assert!((s.speed - v0).abs() < 1e-9 * v0);
    }
}

#[test]
fn top_agrees_with_mapped_particle_at_high_spin() {
    let r =
        gyrosurf::verify::suites::top_vs_magnetic(gyrosurf::Mutation::None, 60.0, 1e-6).unwrap();
    assert!(r.pass, "{r:?}");
}

#[test]
fn pole_approach_is_a_domain_error() {
    let top = TopParams::new(1.0, 0.5, 2.0, 1.0, 9.8).unwrap();
    let s = FullState {
        x: [1e-4, 0.0],
        v: [0.0, 0.0],
        theta: 0.0,
        theta_dot: 1.0,
    };
    assert!(matches!(
        top_rhs(&top, &s),
        Err(gyrosurf::Error::Domain { .. })
    ));
    let s = FullState {
        x: [PI - 1e-4, 0.0],
        ..s
    };
    assert!(matches!(
        top_rhs(&top, &s),
        Err(gyrosurf::Error::Domain { .. })
    ));
}

#[test]
fn invalid_parameters_name_their_key() {
    match DiskParams::new(-1.0, 0.1, 0.1, 0.1) {
        Err(gyrosurf::Error::InvalidParameter { name, .. }) => assert_eq!(name, "m"),
        other => panic!("{other:?}"),
    }
    match TopParams::new(1.0, 0.5, 2.0, 1.0, -9.8) {
        Err(gyrosurf::Error::InvalidParameter { name, .. }) => assert_eq!(name, "g"),
        other => panic!("{other:?}"),
    }
}
