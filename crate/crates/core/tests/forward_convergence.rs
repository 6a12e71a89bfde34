//! Far fields of the point-source problem converge to the closed form.

use elastoscat_core::forward::{
    analytic_boundary_data, convergence_study, far_field, field, incident_data, solve, BoundaryData, FarFieldPattern,
    Representation, ScatteringProblem,
};
use elastoscat_core::geometry::{apple, kite, peanut, BoundaryCurve, CollocationGrid};
use elastoscat_core::kernels::fundamental_tensor;
use elastoscat_core::media::{ElasticMedium, IncidentWave, WaveKind};
use elastoscat_core::Complex64;

fn problem(curve: BoundaryCurve) -> ScatteringProblem {
    let interior = ElasticMedium::new(2.0, 2.0, 1.0, 8.0).unwrap();
    let exterior = ElasticMedium::new(1.0, 1.0, 1.0, 8.0).unwrap();
    ScatteringProblem::new(interior, exterior, curve, CollocationGrid::new(8).unwrap()).unwrap()
}

fn run(curve: BoundaryCurve, rep: Representation, zi: [f64; 2], ze: [f64; 2]) -> Vec<f64> {
    let rows = convergence_study(&problem(curve), rep, zi, ze, &[8, 16, 32, 64]).unwrap();
    let errs: Vec<f64> = rows.iter().map(|r| r.error).collect();
    eprintln!("{rep:?}: {errs:?}");
    errs
}

#[test]
fn peanut_combined() {
    let e = run(peanut(), Representation::Combined, [0.0, 0.2], [0.4, 0.6]);
    assert!(e[3] <= 1e-6);
    assert!(e.windows(2).all(|w| w[0] >= 10.0 * w[1]), "{e:?}");
}

#[test]
fn apple_double() {
    let e = run(apple(), Representation::DoubleLayer, [0.0, 0.2], [0.4, 0.6]);
    assert!(e[3] <= 1e-5);
    assert!(e.windows(2).all(|w| w[0] >= 10.0 * w[1]), "{e:?}");
}

#[test]
fn kite_single() {
    let e = run(kite(), Representation::SingleLayer, [0.5, 0.5], [-1.0, 0.5]);
    assert!(e[3] <= 1e-5);
    // n = 8 does not resolve the shear wavelength on the kite
    assert!(e[0] > e[1] && e[1..].windows(2).all(|w| w[0] >= 10.0 * w[1]), "{e:?}");
}

fn peanut64() -> ScatteringProblem {
    problem(peanut()).with_grid(CollocationGrid::new(64).unwrap())
}

fn relative_gap(a: &FarFieldPattern, b: &FarFieldPattern) -> f64 {
    a.sup_distance(b) / b.sup_norm()
}

const REPS: [Representation; 4] =
    [Representation::Combined, Representation::SingleLayer, Representation::DoubleLayer, Representation::DirectMethod];

#[test]
fn representations_agree_on_plane_waves() {
    let p = peanut64();
    for wave in [IncidentWave::from_angle(WaveKind::P, 0.3), IncidentWave::from_angle(WaveKind::S, 2.0)] {
        let data = incident_data(&p, &wave).unwrap();
        let ff: Vec<FarFieldPattern> =
            REPS.iter().map(|&r| far_field(&p, &solve(&p, &data, r).unwrap()).unwrap()).collect();
        for i in 0..ff.len() {
            for j in 0..i {
                let g = relative_gap(&ff[i], &ff[j]);
                assert!(g < 1e-6, "{:?} vs {:?}: {g:e}", REPS[i], REPS[j]);
            }
        }
    }
}

#[test]
fn far_field_polarization() {
    let p = peanut64();
    let data = incident_data(&p, &IncidentWave::from_angle(WaveKind::P, 1.0)).unwrap();
    let ff = far_field(&p, &solve(&p, &data, Representation::Combined).unwrap()).unwrap();
    let scale = ff.sup_norm();
    for (k, &t) in ff.angles.iter().enumerate() {
        let (c, s) = (t.cos(), t.sin());
        let (up, us) = (ff.up[k], ff.us[k]);
        assert!((up[0] * s - up[1] * c).norm() < 1e-10 * scale);
        assert!((us[0] * c + us[1] * s).norm() < 1e-10 * scale);
    }
}

#[test]
fn interior_field_matches_the_point_source() {
    let p = peanut64();
    let (zi, ze) = ([0.0, 0.2], [0.4, 0.6]);
    let data = analytic_boundary_data(&p, zi, ze).unwrap();
    for rep in [Representation::Combined, Representation::SingleLayer] {
        let sol = solve(&p, &data, rep).unwrap();
        for x in [[0.1, 0.0], [-0.3, 0.05]] {
            let u = field(&p, &sol, x).unwrap();
            let phi = fundamental_tensor(&p.interior, x, ze).unwrap().column(0);
            let gap = (u[0] - phi[0]).norm().hypot((u[1] - phi[1]).norm()) / phi[0].norm().hypot(phi[1].norm());
            assert!(gap < 1e-6, "{rep:?} at {x:?}: {gap:e}");
        }
    }
}

#[test]
fn solutions_are_linear_in_the_data() {
    let p = problem(peanut()).with_grid(CollocationGrid::new(16).unwrap());
    let data = incident_data(&p, &IncidentWave::from_angle(WaveKind::P, 0.0)).unwrap();
    let a = Complex64::new(0.5, -2.0);
    for rep in REPS {
        let one = solve(&p, &data, rep).unwrap();
        let scaled = solve(&p, &data.scaled(a), rep).unwrap();
        for (x, y) in one.phi.iter().chain(&one.psi).zip(scaled.phi.iter().chain(&scaled.psi)) {
            assert!((x[0] * a - y[0]).norm() < 1e-12 * (1.0 + y[0].norm()));
        }
        let zero =
            BoundaryData { trace: vec![[Complex64::from(0.0); 2]; 32], traction: vec![[Complex64::from(0.0); 2]; 32] };
        let z = solve(&p, &zero, rep).unwrap();
        assert!(z.phi.iter().chain(&z.psi).all(|v| v[0].norm() == 0.0 && v[1].norm() == 0.0));
    }
}
