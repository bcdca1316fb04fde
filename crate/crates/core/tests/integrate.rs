use std::f64::consts::FRAC_PI_2;

use gyrosurf::{integrate, Chart, Error, Model, ModelKind, Potential, Scheme, Settings, Status};

fn magnetic(chart: Chart, charge: f64) -> Model {
    Model::new(
        chart,
        ModelKind::Magnetic { mass: 1.0, charge },
        Potential::None,
    )
    .unwrap()
}

#[test]
fn uncharged_particle_on_plane_moves_straight() {
    let m = magnetic(Chart::plane(), 0.0);
    let t = integrate(
        &m,
        &[0.0, 0.0, 1.0, 0.0],
        &Settings::new(0.01, 500).unwrap(),
    )
    .unwrap();
    for (time, y) in t.times.iter().zip(&t.states) {
        assert!((y[0] - time).abs() < 1e-12);
        assert_eq!(y[1], 0.0);
        assert_eq!((y[2], y[3]), (1.0, 0.0));
    }
}

#[test]
fn runs_are_bit_identical() {
    let m = magnetic(Chart::torus(2.0, 1.0).unwrap(), 0.8);
    let s = Settings::new(1e-3, 2_000).unwrap().with_sample_every(7);
    let a = integrate(&m, &[0.3, 1.0, 0.5, -0.2], &s).unwrap();
    let b = integrate(&m, &[0.3, 1.0, 0.5, -0.2], &s).unwrap();
    assert_eq!(a, b);
}

#[test]
fn monitors_do_not_change_states() {
    let m = magnetic(Chart::sphere(1.0).unwrap(), 0.5);
    for scheme in [Scheme::Rk4, Scheme::Midpoint] {
        let s = Settings::new(1e-3, 1_000).unwrap().with_scheme(scheme);
        let on = integrate(&m, &[1.0, 0.0, 0.2, 0.7], &s.with_monitors(true)).unwrap();
        let off = integrate(&m, &[1.0, 0.0, 0.2, 0.7], &s.with_monitors(false)).unwrap();
        assert_eq!(on.states, off.states);
        assert_eq!(on.times, off.times);
        assert_eq!(on.monitors.len(), on.len());
        assert!(off.monitors.is_empty());
    }
}

#[test]
fn sample_grid_spacing() {
    let m = magnetic(Chart::plane(), 0.0);
    let t = integrate(
        &m,
        &[0.0, 0.0, 1.0, 1.0],
        &Settings::new(0.01, 100).unwrap().with_sample_every(25),
    )
    .unwrap();
    assert_eq!(t.len(), 5);
    for w in t.times.windows(2) {
        assert!((w[1] - w[0] - 0.25).abs() < 1e-12);
    }
}

#[test]
fn pole_crossing_truncates() {
    let m = magnetic(Chart::sphere(1.0).unwrap(), 0.0);
    // due north along a meridian
    let t = integrate(
        &m,
        &[0.5, 0.0, -1.0, 0.0],
        &Settings::new(1e-3, 2_000).unwrap(),
    )
    .unwrap();
    assert!(t.is_truncated());
    match &t.status {
        Status::Truncated { error, .. } => assert!(matches!(error, Error::Domain { .. })),
        Status::Complete => unreachable!(),
    }
    let last = t.last_state().unwrap();
    assert!(last[0] > 0.0 && last[0] < 0.5);
}

#[test]
fn curvature_monitor_on_great_circle() {
    let m = magnetic(Chart::sphere(2.0).unwrap(), 0.0);
    let t = integrate(
        &m,
        &[FRAC_PI_2, 0.0, 0.0, 0.5],
        &Settings::new(1e-2, 100).unwrap(),
    )
    .unwrap();
    for s in &t.monitors {
        assert!(s.geodesic_curvature.unwrap().abs() < 1e-12);
        assert!((s.gaussian_curvature - 0.25).abs() < 1e-12);
    }
}

#[test]
fn curvature_is_undefined_at_rest() {
    let m = magnetic(Chart::sphere(1.0).unwrap(), 0.5);
    let t = integrate(&m, &[1.0, 0.0, 0.0, 0.0], &Settings::new(1e-2, 5).unwrap()).unwrap();
    assert!(t.monitors.iter().all(|s| s.geodesic_curvature.is_none()));
}

#[test]
fn bad_settings_are_rejected() {
    assert!(Settings::new(0.0, 10).is_err());
    assert!(Settings::new(-1e-3, 10).is_err());
    assert!(Settings::new(1e-3, 0).is_err());
    assert!(Settings::new(1e-3, 10)
        .unwrap()
        .with_sample_every(0)
        .validate()
        .is_err());
}
