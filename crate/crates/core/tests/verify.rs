use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI};

use gyrosurf::verify::suites::{oracle_models, sphere_full_disk};
use gyrosurf::verify::{
    compare_trajectories, el_residual_oracle, el_residuals, hjh_identity, holonomy_loop,
    lemma2_residual, ClosedLoop, DeviationMetric, Suite,
};
use gyrosurf::{
    integrate, Chart, Model, ModelKind, Mutation, Potential, ReducedDiskParams, Settings,
};

#[test]
fn oracle_accepts_full_disk_run() {
    let (model, y0) = sphere_full_disk(Mutation::None, 1.0).unwrap();
    let t = integrate(&model, &y0, &Settings::new(1e-4, 500).unwrap()).unwrap();
    let r = el_residual_oracle(&model, &t, 1e-6).unwrap();
    assert!(r.pass, "{r:?}");
    assert!(r.max_abs >= r.rms && r.rms >= 0.0);
}

#[test]
fn oracle_flags_a_perturbed_sample() {
    let (model, y0) = sphere_full_disk(Mutation::None, 1.0).unwrap();
    let mut t = integrate(&model, &y0, &Settings::new(1e-4, 100).unwrap()).unwrap();
    let k = 50;
    t.states[k][0] += 1e-3;
    let r = el_residuals(&model, &t).unwrap();
    let at = r.iter().find(|(i, _)| *i == k).unwrap().1;
    assert!(at > 1e-2, "{at}");
    let report = el_residual_oracle(&model, &t, 1e-6).unwrap();
    assert!(!report.pass);
    assert!((report.location as i64 - k as i64).abs() <= 1);
}

#[test]
fn oracle_residual_shrinks_quadratically_for_every_model() {
    for (name, model, y0) in oracle_models(Mutation::None).unwrap() {
        let res: Vec<f64> = [0.01, 0.005]
            .iter()
            .map(|&dt| {
                let n = (0.4f64 / dt).round() as usize;
                let t = integrate(&model, &y0, &Settings::new(dt, n).unwrap()).unwrap();
                el_residual_oracle(&model, &t, f64::INFINITY)
                    .unwrap()
                    .max_abs
            })
            .collect();
        let order = (res[0] / res[1]).log2();
        assert!(order > 1.9, "{name}: {order}");
    }
}

#[test]
fn reduced_disk_gap_scales_with_diametral_inertia() {
    let sphere = Chart::sphere(1.0).unwrap();
    let run = |id: f64| {
        let m = Model::new(
            sphere.clone(),
            ModelKind::ReducedDisk(ReducedDiskParams::new(1.0, id, 0.5).unwrap()),
            Potential::None,
        )
        .unwrap();
        integrate(
            &m,
            &[1.2, 0.0, 0.2, 0.5],
            &Settings::new(1e-3, 5_000).unwrap().with_sample_every(10),
        )
        .unwrap()
    };
    let base = run(0.0);
    let gaps: Vec<f64> = [1e-2, 1e-3, 1e-4]
        .iter()
        .map(|&id| {
            compare_trajectories(
                &run(id),
                &base,
                DeviationMetric::ChartDistance(&sphere),
                f64::INFINITY,
            )
            .unwrap()
            .max_abs
        })
        .collect();
    let c = gaps[0] / 1e-2;
    assert!(gaps[0] > 0.0);
    assert!(
        gaps[1] <= 1.5 * c * 1e-3 && gaps[2] <= 1.5 * c * 1e-4,
        "{gaps:?}"
    );
}

#[test]
fn holonomy_examples() {
    let sphere = Chart::sphere(1.0).unwrap();
    let lat = holonomy_loop(&sphere, &ClosedLoop::Parallel { x1: FRAC_PI_3 }, 32).unwrap();
    assert!((lat.holonomy - PI).abs() < 1e-6);
    assert!((lat.area_integral - 2.0 * PI * (1.0 - FRAC_PI_3.cos())).abs() < 1e-10);

    let rect = ClosedLoop::Rectangle {
        corner: [FRAC_PI_2, 0.0],
        eps: 0.01,
        delta: 0.01,
    };
    let r = holonomy_loop(&sphere, &rect, 8).unwrap();
    assert!((r.holonomy / r.enclosed_area - 1.0).abs() < 1e-3);

    let plane = Chart::plane();
    let tri = ClosedLoop::Polygon(vec![[0.0, 0.0], [2.0, 0.0], [0.5, 1.5], [0.0, 0.0]]);
    let p = holonomy_loop(&plane, &tri, 4).unwrap();
    assert_eq!((p.transport, p.area_integral), (0.0, 0.0));
}

#[test]
fn rectangle_holonomy_converges() {
    let torus = Chart::torus(2.0, 1.0).unwrap();
    let k = gyrosurf::geometry_jet(&torus, [0.5, 0.2])
        .unwrap()
        .gaussian_curvature;
    let err = |e: f64| {
        let r = holonomy_loop(
            &torus,
            &ClosedLoop::Rectangle {
                corner: [0.5, 0.2],
                eps: e,
                delta: e,
            },
            8,
        )
        .unwrap();
        (r.holonomy / r.enclosed_area - k).abs()
    };
    let (a, b) = (err(0.04), err(0.02));
    assert!((a / b).log2() >= 1.0, "{a} {b}");
}

#[test]
fn lemma2_on_torus_and_saddle_rejection() {
    let torus = Chart::torus(3.0, 1.0).unwrap();
    for x in [[0.1, 0.2], [1.5, 4.0], [3.0, 6.0]] {
        assert!(lemma2_residual(&torus, x).unwrap().abs() < 1e-6);
    }
    let bad = torus.with_mutation(Mutation::AbsCurvature);
    assert!(lemma2_residual(&bad, [3.0, 0.0]).unwrap().abs() > 1e-2);
}

#[test]
fn hjh_bound_on_diagonal_and_general_matrices() {
    assert_eq!(hjh_identity(&[[3.0, 0.0], [0.0, -0.25]]).unwrap(), 0.0);
    let h = [[1.5, -2.25], [-2.25, 7.0]];
    let norm: f64 = 7.0;
    assert!(hjh_identity(&h).unwrap() <= 8.0 * f64::EPSILON * norm * norm);
}

#[test]
fn suites_report_known_checks() {
    let geo = Suite::Geometry.run(Mutation::None);
    let lemma = geo.iter().find(|c| c.name == "lemma2_identity").unwrap();
    assert!(lemma.pass);
    assert!(lemma.to_string().starts_with("lemma2_identity,pass,"));
    let flipped = Suite::Geometry.run(Mutation::FlipK2Sign);
    assert!(
        !flipped
            .iter()
            .find(|c| c.name == "lemma2_identity")
            .unwrap()
            .pass
    );
}
