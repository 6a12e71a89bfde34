//! The two run modes.

use elastoscat_core::forward::{
    analytic_boundary_data, analytic_far_field, far_field, far_field_at, FarFieldPattern, ForwardSystem,
    ScatteringProblem,
};
use elastoscat_core::geometry::{radial_l2_error, BoundaryCurve, CollocationGrid, RadialTrigCurve};
use elastoscat_core::inverse::{reconstruct, synthetic_far_field, Reconstruction};
use elastoscat_core::linalg::CVec2;
use elastoscat_core::media::WaveKind;
use serde::Serialize;

use crate::config::{Format, LoadedConfig, Mode};
use crate::output::{num, Sink};
use crate::CliError;

/// Samples of the curve tables and of the `L²` shape error.
pub const CURVE_SAMPLES: usize = 256;

#[derive(Debug, Clone, Serialize)]
pub struct ConvergenceEntry {
    pub n: usize,
    pub sup_error: f64,
    /// Error at the previous `n` divided by this one.
    pub reduction: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RepresentationReport {
    pub representation: &'static str,
    pub rows: Vec<ConvergenceEntry>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ForwardReport {
    pub mode: &'static str,
    pub shape: &'static str,
    pub z_i: [f64; 2],
    pub z_e: [f64; 2],
    pub runs: Vec<RepresentationReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReconstructReport {
    pub mode: &'static str,
    pub shape: &'static str,
    pub m: usize,
    pub n: usize,
    pub illuminations: usize,
    pub noise_delta: f64,
    pub seed: u64,
    pub iterations: usize,
    pub initial_error: f64,
    pub final_error: f64,
    pub initial_residual: f64,
    pub final_residual: f64,
    pub residual_ratio: f64,
    pub coefficients: Vec<f64>,
}

fn sink(cfg: &LoadedConfig) -> Result<Sink, CliError> {
    let o = &cfg.config.output;
    Sink::new(&o.dir, &cfg.hash, o.formats.contains(&Format::Csv), o.formats.contains(&Format::Json))
}

fn check_mode(cfg: &LoadedConfig, want: Mode) -> Result<(), CliError> {
    if cfg.config.mode != want {
        return Err(cfg.field_error("mode", format!("this command needs mode = {:?}", mode_name(want))));
    }
    Ok(())
}

fn mode_name(m: Mode) -> &'static str {
    match m {
        Mode::VerifyForward => "verify-forward",
        Mode::Reconstruct => "reconstruct",
    }
}

fn push_components(row: &mut Vec<String>, v: CVec2) {
    for c in v {
        row.push(num(c.re));
        row.push(num(c.im));
    }
}

fn far_field_rows(rows: &mut Vec<Vec<String>>, n: usize, got: &FarFieldPattern, exact: &FarFieldPattern) {
    for kind in WaveKind::BOTH {
        let tag = match kind {
            WaveKind::P => "p",
            WaveKind::S => "s",
        };
        for (k, &theta) in got.angles.iter().enumerate() {
            let (g, e) = (got.component(kind)[k], exact.component(kind)[k]);
            let mut row = vec![n.to_string(), num(theta), tag.to_owned()];
            push_components(&mut row, g);
            push_components(&mut row, e);
            row.push(num((g[0] - e[0]).norm().hypot((g[1] - e[1]).norm())));
            rows.push(row);
        }
    }
}

const FAR_FIELD_HEADER: [&str; 12] = [
    "n",
    "theta",
    "component",
    "u1_re",
    "u1_im",
    "u2_re",
    "u2_im",
    "exact1_re",
    "exact1_im",
    "exact2_re",
    "exact2_im",
    "abs_error",
];

/// Point-source convergence tables for every configured representation.
pub fn verify_forward(cfg: &LoadedConfig) -> Result<ForwardReport, CliError> {
    check_mode(cfg, Mode::VerifyForward)?;
    let c = &cfg.config;
    let (interior, exterior) = cfg.media()?;
    let curve = cfg.curve()?;
    let (z_i, z_e) = (c.geometry.z_i.expect("validated"), c.geometry.z_e.expect("validated"));
    let shape = c.geometry.shape.name();
    let out = sink(cfg)?;
    let mut runs = Vec::new();
    for rep in &c.numerics.representations {
        let mut table = Vec::new();
        let mut ff_rows = Vec::new();
        let mut prev: Option<f64> = None;
        for &n in &c.numerics.n_list {
            let problem = ScatteringProblem::new(interior, exterior, curve.clone(), CollocationGrid::new(n)?)?;
            let system = ForwardSystem::assemble(&problem, rep.representation())?;
            let sol = system.solve(&analytic_boundary_data(&problem, z_i, z_e)?)?;
            let ff = far_field(&problem, &sol)?;
            let sup_error = ff.sup_distance(&analytic_far_field(&exterior, z_i, &ff.angles));
            let listed = if c.numerics.directions.is_empty() {
                ff
            } else {
                far_field_at(&problem, &sol, &c.numerics.directions)?
            };
            far_field_rows(&mut ff_rows, n, &listed, &analytic_far_field(&exterior, z_i, &listed.angles));
            table.push(ConvergenceEntry { n, sup_error, reduction: prev.map(|p| p / sup_error) });
            prev = Some(sup_error);
        }
        let rows: Vec<Vec<String>> = table
            .iter()
            .map(|e| vec![e.n.to_string(), num(e.sup_error), e.reduction.map(num).unwrap_or_default()])
            .collect();
        out.table(&format!("convergence_{shape}_{}.csv", rep.name()), &["n", "sup_error", "reduction"], &rows)?;
        out.table(&format!("farfield_{shape}_{}.csv", rep.name()), &FAR_FIELD_HEADER, &ff_rows)?;
        runs.push(RepresentationReport { representation: rep.name(), rows: table });
    }
    let report = ForwardReport { mode: "verify-forward", shape, z_i, z_e, runs };
    out.summary(&report)?;
    Ok(report)
}

/// Synthetic data for the configured shape, then the iterative reconstruction.
pub fn reconstruct_run(cfg: &LoadedConfig) -> Result<(ReconstructReport, Reconstruction), CliError> {
    check_mode(cfg, Mode::Reconstruct)?;
    let (interior, exterior) = cfg.media()?;
    let truth = cfg.curve()?;
    let rc = cfg.reconstruction()?;
    let out = sink(cfg)?;
    let data = synthetic_far_field(&interior, &exterior, &truth, rc.n, &rc.illuminations)?;
    let rec = reconstruct(&rc, &interior, &exterior, &data)?;

    let initial = BoundaryCurve::Radial(RadialTrigCurve::constant(rc.r0, rc.m));
    let mut trajectory = Vec::new();
    for r in &rec.records {
        let q = RadialTrigCurve::from_coefficients(&r.coefficients)?;
        let mut row = vec![
            r.iter.to_string(),
            num(r.lambda),
            num(r.residual_norm),
            num(r.step_norm),
            r.halvings.to_string(),
            num(radial_l2_error(&BoundaryCurve::Radial(q), &truth, CURVE_SAMPLES)),
        ];
        row.extend(r.coefficients.iter().map(|&x| num(x)));
        trajectory.push(row);
    }
    let mut header = vec![
        "iter".to_owned(),
        "lambda".into(),
        "residual".into(),
        "step_norm".into(),
        "halvings".into(),
        "l2_error".into(),
        "a0".into(),
    ];
    header.extend((1..=rc.m).map(|j| format!("a{j}")));
    header.extend((1..=rc.m).map(|j| format!("b{j}")));
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    out.table("trajectory.csv", &header, &trajectory)?;

    let result = rec.curve();
    let curves: Vec<Vec<String>> = (0..CURVE_SAMPLES)
        .map(|j| {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / CURVE_SAMPLES as f64;
            let (s, c) = theta.sin_cos();
            let mut row = vec![num(theta)];
            for curve in [&truth, &initial, &result] {
                let r = curve.radius_along_ray(theta);
                row.extend([num(r), num(r * c), num(r * s)]);
            }
            row
        })
        .collect();
    let curve_header = [
        "theta",
        "exact_r",
        "exact_x",
        "exact_y",
        "initial_r",
        "initial_x",
        "initial_y",
        "result_r",
        "result_x",
        "result_y",
    ];
    out.table("curves.csv", &curve_header, &curves)?;

    let report = ReconstructReport {
        mode: "reconstruct",
        shape: cfg.config.geometry.shape.name(),
        m: rc.m,
        n: rc.n,
        illuminations: rc.illuminations.len(),
        noise_delta: rc.noise_delta,
        seed: rc.rng_seed,
        iterations: rec.records.len(),
        initial_error: radial_l2_error(&initial, &truth, CURVE_SAMPLES),
        final_error: radial_l2_error(&result, &truth, CURVE_SAMPLES),
        initial_residual: rec.state.residual_history[0],
        final_residual: rec.final_residual,
        residual_ratio: rec.residual_ratio(),
        coefficients: rec.state.r.coefficients(),
    };
    out.summary(&report)?;
    Ok((report, rec))
}
