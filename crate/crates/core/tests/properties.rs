use std::f64::consts::PI;
use std::sync::OnceLock;

use approx::assert_relative_eq;
use proptest::prelude::*;

use elastoscat_core::forward::{FarFieldPattern, MediumOperators, ScatteringProblem};
use elastoscat_core::geometry::{radial_update, BoundaryCurve, CollocationGrid, RadialTrigCurve};
use elastoscat_core::inverse::{add_noise, sobolev_penalty, update_lambda};
use elastoscat_core::kernels::{fundamental_tensor, jmat, FarFieldDirectionData};
use elastoscat_core::linalg::{CVec2, Mat2};
use elastoscat_core::media::{ElasticMedium, WaveKind};
use elastoscat_core::quadrature::{apply, DiscreteOperator};
use elastoscat_core::Complex64;

fn coeffs(m: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(-0.2..0.2f64, 2 * m + 1)
}

fn radial() -> impl Strategy<Value = RadialTrigCurve> {
    (1usize..6).prop_flat_map(coeffs).prop_map(|mut c| {
        c[0] += 1.0;
        RadialTrigCurve::from_coefficients(&c).unwrap()
    })
}

fn cvec(len: usize) -> impl Strategy<Value = Vec<CVec2>> {
    prop::collection::vec(prop::array::uniform4(-1.0..1.0f64), len)
        .prop_map(|v| v.into_iter().map(|a| [Complex64::new(a[0], a[1]), Complex64::new(a[2], a[3])]).collect())
}

/// Single-layer operator of a peanut at `n = 8`, assembled once.
fn operator() -> &'static DiscreteOperator {
    static OP: OnceLock<DiscreteOperator> = OnceLock::new();
    OP.get_or_init(|| {
        let m = ElasticMedium::new(1.0, 1.0, 1.0, 8.0).unwrap();
        let p = ScatteringProblem::new(m, m, BoundaryCurve::Peanut, CollocationGrid::new(8).unwrap()).unwrap();
        MediumOperators::assemble(&m, &p).unwrap().k
    })
}

fn dot(a: &[CVec2], b: &[CVec2]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x[0] * y[0] + x[1] * y[1]).sum()
}

proptest! {
    #[test]
    fn fourier_round_trip(r in radial(), extra in 0usize..4) {
        let m = r.degree();
        let grid = CollocationGrid::new(m + 1 + extra).unwrap();
        let samples: Vec<f64> = grid.nodes().iter().map(|&t| r.radius(t)).collect();
        let back = RadialTrigCurve::interpolate(&grid, &samples, m).unwrap();
        for (a, b) in back.coefficients().iter().zip(r.coefficients()) {
            prop_assert!((a - b).abs() < 1e-13);
        }
    }

    #[test]
    fn derivative_matches_central_differences(r in radial(), t in 0.0..2.0 * PI) {
        let c = BoundaryCurve::Radial(r);
        let h = 1e-4;
        let (p, m) = (c.eval(t + h), c.eval(t - h));
        let d = c.deriv1(t);
        for i in 0..2 {
            prop_assert!(((p[i] - m[i]) / (2.0 * h) - d[i]).abs() < 1e-6);
        }
    }

    #[test]
    fn frames_are_orthonormal(r in radial(), t in 0.0..2.0 * PI) {
        let f = BoundaryCurve::Radial(r).frame(t).unwrap();
        prop_assert!((f.normal[0] * f.tangent[0] + f.normal[1] * f.tangent[1]).abs() < 1e-14);
        prop_assert!((f.normal[0].hypot(f.normal[1]) - 1.0).abs() < 1e-14);
        // outward: the normal points away from the origin of a starlike curve
        prop_assert!(f.normal[0] * f.z[0] + f.normal[1] * f.z[1] > 0.0);
    }

    #[test]
    fn constants_add(r0 in 0.1..2.0f64, q in -0.09..1.0f64, m in 0usize..5) {
        let out = radial_update(&RadialTrigCurve::constant(r0, m), &RadialTrigCurve::constant(q, m)).unwrap();
        assert_relative_eq!(out.radius(0.3), r0 + q, epsilon = 1e-14);
    }

    #[test]
    fn operators_are_linear(x in cvec(16), y in cvec(16), a in -2.0..2.0f64, b in -2.0..2.0f64) {
        let op = operator();
        let (ca, cb) = (Complex64::new(a, 0.5), Complex64::new(-0.3, b));
        let mix: Vec<CVec2> = x.iter().zip(&y).map(|(u, v)| [u[0] * ca + v[0] * cb, u[1] * ca + v[1] * cb]).collect();
        let lhs = apply(op, &mix).unwrap();
        let (ax, ay) = (apply(op, &x).unwrap(), apply(op, &y).unwrap());
        for ((l, u), v) in lhs.iter().zip(&ax).zip(&ay) {
            for c in 0..2 {
                prop_assert!((l[c] - (u[c] * ca + v[c] * cb)).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn transpose_is_the_adjoint(x in cvec(16), y in cvec(16)) {
        let op = operator();
        let mut t = op.clone();
        t.matrix = op.matrix.transpose();
        let lhs = dot(&apply(op, &x).unwrap(), &y);
        let rhs = dot(&x, &apply(&t, &y).unwrap());
        prop_assert!((lhs - rhs).norm() < 1e-10 * (1.0 + lhs.norm()));
    }

    #[test]
    fn projector_algebra(theta in 0.0..2.0 * PI) {
        let d = FarFieldDirectionData::from_angle(theta);
        let p = Mat2::from_real(d.projector(WaveKind::P));
        let s = Mat2::from_real(d.projector(WaveKind::S));
        prop_assert!((p + s - Mat2::IDENTITY).norm() < 1e-15);
        prop_assert!((p * s).norm() < 1e-15);
        prop_assert!((p * p - p).norm() < 1e-15);
    }

    #[test]
    fn dyad_is_an_idempotent_of_unit_trace(x in -3.0..3.0f64, y in -3.0..3.0f64) {
        prop_assume!(x.hypot(y) > 1e-3);
        let j = Mat2::from_real(jmat([x, y]));
        prop_assert!((j * j - j).norm() < 1e-14);
        prop_assert!((j.0[0][0] + j.0[1][1] - 1.0).norm() < 1e-14);
        prop_assert!((j.transpose() - j).norm() == 0.0);
    }

    #[test]
    fn fundamental_tensor_is_symmetric(a in prop::array::uniform4(-2.0..2.0f64)) {
        let (x, y) = ([a[0], a[1]], [a[2], a[3]]);
        prop_assume!((x[0] - y[0]).hypot(x[1] - y[1]) > 1e-3);
        let m = ElasticMedium::new(2.0, 3.0, 1.0, 8.0).unwrap();
        let t = fundamental_tensor(&m, x, y).unwrap();
        prop_assert!((t - t.transpose()).norm() <= 1e-14 * t.norm());
        prop_assert!((t - fundamental_tensor(&m, y, x).unwrap()).norm() <= 1e-14 * t.norm());
    }

    #[test]
    fn penalty_is_the_sobolev_norm(c in coeffs(3), p in 0.0..2.0f64) {
        // p = 0: xᵀ I_0 x = ∫ q²
        let q = RadialTrigCurve::from_coefficients(&c).unwrap();
        let w0 = sobolev_penalty(3, 0.0);
        let quad: f64 = (0..64).map(|j| q.radius(2.0 * PI * j as f64 / 64.0).powi(2)).sum::<f64>() * 2.0 * PI / 64.0;
        let form: f64 = c.iter().zip(&w0).map(|(x, w)| w * x * x).sum();
        prop_assert!((quad - form).abs() < 1e-12);
        let wp = sobolev_penalty(3, p);
        prop_assert!(wp.iter().zip(&w0).all(|(a, b)| a >= b));
    }

    #[test]
    fn lambda_decays_geometrically(l0 in 0.01..10.0f64, d in 0.05..0.95f64, k in 1usize..60) {
        let (a, b) = (update_lambda(l0, d, k), update_lambda(l0, d, k + 1));
        prop_assert!(b < a && (b / a - d).abs() < 1e-12);
    }

    #[test]
    fn noise_has_exact_relative_level(delta in 0.0..0.5f64, seed in any::<u64>(), v in cvec(8)) {
        let angles: Vec<f64> = (0..4).map(|k| k as f64).collect();
        let data = FarFieldPattern { up: v[..4].to_vec(), us: v[4..].to_vec(), angles };
        let noisy = add_noise(&data, delta, seed);
        let (u, w) = (data.stacked(), noisy.stacked());
        let num: f64 = u.iter().zip(&w).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt();
        let den: f64 = u.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        prop_assert!((num / den - delta).abs() < 1e-13);
        prop_assert_eq!(add_noise(&data, delta, seed), noisy);
    }
}
