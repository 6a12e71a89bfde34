//! Two-step shape reconstruction from far-field data.
//!
//! Each iteration solves the well-posed boundary subsystem for the
//! total-field traces `(ξ_l, ζ_l)` on the current boundary, one per
//! illumination, and then, with those traces frozen, a Tikhonov-regularised
//! linearisation of the far-field equation `D∞ξ − S∞ζ = U∞` for a radial
//! update `q`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::forward::{
    far_field_at, farfield_angles, farfield_matrix, incident_data, DensitySolution, FarFieldPattern, ForwardSystem,
    Representation, ScatteringProblem,
};
use crate::geometry::{perturbation_from_values, radial_update, BoundaryCurve, CollocationGrid, RadialTrigCurve};
use crate::kernels::{frechet_G, frechet_g, FarFieldCoeffs, FarFieldDirectionData};
use crate::linalg::{cnorm2, conjugate_gradient, CMatrix, RMatrix};
use crate::media::{ElasticMedium, IncidentWave, WaveKind};
use crate::par;
use crate::quadrature::interleave;

type C64 = Complex64;

/// Parameters of a reconstruction run.
#[derive(Debug, Clone, PartialEq)]
pub struct ReconstructionConfig {
    /// Degree of the trigonometric radial update.
    pub m: usize,
    /// Collocation half-count of the inverse solver.
    pub n: usize,
    pub lambda0: f64,
    /// Regularisation decay per iteration.
    pub decay: f64,
    /// Sobolev order of the penalty.
    pub p: f64,
    pub max_iter: usize,
    /// Radius of the initial circle.
    pub r0: f64,
    pub illuminations: Vec<IncidentWave>,
    pub noise_delta: f64,
    pub rng_seed: u64,
    /// Stop once `‖q‖_{H¹} < 1e-8` or the residual grew three times in a row.
    pub early_stop: bool,
}

impl Default for ReconstructionConfig {
    fn default() -> Self {
        ReconstructionConfig {
            m: 3,
            n: 32,
            lambda0: 0.8,
            decay: 2.0 / 3.0,
            p: 1.0,
            max_iter: 40,
            r0: 0.5,
            illuminations: p_wave_illuminations(2),
            noise_delta: 0.0,
            rng_seed: 0,
            early_stop: false,
        }
    }
}

impl ReconstructionConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |name: &'static str, reason: &str| Err(Error::InvalidParameter { name, reason: reason.into() });
        if !(self.lambda0 > 0.0) {
            return bad("lambda0", "must be positive");
        }
        if !(self.decay > 0.0 && self.decay < 1.0) {
            return bad("decay", "must lie in (0, 1)");
        }
        if self.n < 2 || self.m >= self.n {
            return bad("m", "need m < n and n >= 2");
        }
        if !(self.r0 > 0.0) {
            return bad("r0", "must be positive");
        }
        if !(self.p >= 0.0) {
            return bad("p", "must be non-negative");
        }
        if self.illuminations.is_empty() {
            return bad("illuminations", "need at least one incident wave");
        }
        if !(self.noise_delta >= 0.0) {
            return bad("noise_delta", "must be non-negative");
        }
        Ok(())
    }

    pub fn grid(&self) -> Result<CollocationGrid> {
        CollocationGrid::new(self.n)
    }
}

/// `L` longitudinal plane waves with directions `(cos 2πl/L, sin 2πl/L)`, `l = 1..L`.
pub fn p_wave_illuminations(count: usize) -> Vec<IncidentWave> {
    (1..=count).map(|l| IncidentWave::from_angle(WaveKind::P, 2.0 * PI * l as f64 / count as f64)).collect()
}

/// `λ_0 · decay^{k−1}`.
pub fn update_lambda(lambda0: f64, decay: f64, k: usize) -> f64 {
    lambda0 * decay.powi(k.max(1) as i32 - 1)
}

/// Diagonal of the `H^p` Gram matrix in the coefficient order
/// `(a_0..a_m, b_1..b_m)`: `2π`, then `π(1 + k²)^p` for each cosine and sine.
pub fn sobolev_penalty(m: usize, p: f64) -> Vec<f64> {
    let mut d = vec![2.0 * PI];
    let w = |k: usize| PI * (1.0 + (k * k) as f64).powf(p);
    d.extend((1..=m).map(w));
    d.extend((1..=m).map(w));
    d
}

/// `‖q‖_{H^p}` of a radial function.
pub fn sobolev_norm(q: &RadialTrigCurve, p: f64) -> f64 {
    let w = sobolev_penalty(q.degree(), p);
    q.coefficients().iter().zip(&w).map(|(x, w)| w * x * x).sum::<f64>().sqrt()
}

/// `U + δ ‖U‖/‖V‖ V` with `V` complex standard normal, drawn from a ChaCha
/// stream seeded by `seed`.
pub fn add_noise(data: &FarFieldPattern, delta: f64, seed: u64) -> FarFieldPattern {
    if delta == 0.0 {
        return data.clone();
    }
    let u = data.stacked();
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let v: Vec<C64> = (0..u.len())
        .map(|_| {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            C64::new(re, im)
        })
        .collect();
    let s = delta * cnorm2(&u) / cnorm2(&v);
    let noisy: Vec<C64> = u.iter().zip(&v).map(|(a, b)| a + b * s).collect();
    FarFieldPattern::from_stacked(&noisy, data.angles.clone()).expect("same layout")
}

/// Far-field data of plane waves scattered by `curve`, computed with the
/// single-layer representation on `2n` collocation half-count and sampled
/// at the `2n` angles of the inverse grid.
pub fn synthetic_far_field(
    interior: &ElasticMedium,
    exterior: &ElasticMedium,
    curve: &BoundaryCurve,
    n: usize,
    illuminations: &[IncidentWave],
) -> Result<Vec<FarFieldPattern>> {
    let angles = farfield_angles(&CollocationGrid::new(n)?);
    let problem = ScatteringProblem::new(*interior, *exterior, curve.clone(), CollocationGrid::new(2 * n)?)?;
    let system = ForwardSystem::assemble(&problem, Representation::SingleLayer)?;
    illuminations
        .iter()
        .map(|w| {
            let sol = system.solve(&incident_data(&problem, w)?)?;
            far_field_at(&problem, &sol, &angles)
        })
        .collect()
}

/// Noisy copies of per-illumination data; illumination `l` uses seed `seed + l`.
pub fn noisy_data(data: &[FarFieldPattern], delta: f64, seed: u64) -> Vec<FarFieldPattern> {
    data.iter().enumerate().map(|(l, d)| add_noise(d, delta, seed.wrapping_add(l as u64))).collect()
}

/// Current iterate of the reconstruction.
#[derive(Debug, Clone, PartialEq)]
pub struct ReconstructionState {
    pub r: RadialTrigCurve,
    /// Total-field traces `(ξ_l, ζ_l)` on the boundary of `r`.
    pub densities: Vec<DensitySolution>,
    pub lambda: f64,
    pub iter: usize,
    pub residual_history: Vec<f64>,
}

/// Stacked linearised far-field equation `A T x ≈ b` of all illuminations.
///
/// `a` maps node samples `(q(t_j), q'(t_j))`, interleaved, to far-field
/// perturbations; rows follow [`FarFieldPattern::stacked`] per illumination.
/// `t` maps trigonometric coefficients to node samples.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearizedSystem {
    pub a: CMatrix,
    pub t: CMatrix,
    pub b: Vec<C64>,
}

impl LinearizedSystem {
    /// `A · T`.
    pub fn composite(&self) -> CMatrix {
        self.a.matmul(&self.t)
    }
}

/// `T`: row `2j` holds the basis values at `t_j`, row `2j + 1` their
/// derivatives.
pub fn trig_sampling_matrix(grid: &CollocationGrid, m: usize) -> CMatrix {
    let cols = 2 * m + 1;
    let mut t = CMatrix::zeros(2 * grid.len(), cols);
    for j in 0..grid.len() {
        for c in 0..cols {
            let (v, d) = RadialTrigCurve::basis(m, c, grid.node(j));
            t[(2 * j, c)] = C64::from(v);
            t[(2 * j + 1, c)] = C64::from(d);
        }
    }
    t
}

fn radial_problem(
    interior: &ElasticMedium,
    exterior: &ElasticMedium,
    r: &RadialTrigCurve,
    grid: CollocationGrid,
) -> Result<ScatteringProblem> {
    ScatteringProblem::new(*interior, *exterior, BoundaryCurve::Radial(r.clone()), grid)
}

/// Step one: traces `(ξ, ζ)` for every illumination on the boundary of `r`.
pub fn solve_density_subsystem(
    problem: &ScatteringProblem,
    illuminations: &[IncidentWave],
) -> Result<Vec<DensitySolution>> {
    let system = ForwardSystem::assemble(problem, Representation::DirectMethod)?;
    par::map_indices(illuminations.len(), |l| system.solve(&incident_data(problem, &illuminations[l])?))
        .into_iter()
        .collect()
}

/// `D∞ξ − S∞ζ` on the far-field angles, stacked as `[p; s]`.
pub fn farfield_residual(
    problem: &ScatteringProblem,
    densities: &DensitySolution,
    measured: &FarFieldPattern,
) -> Result<Vec<C64>> {
    let model = far_field_at(problem, densities, &measured.angles)?;
    Ok(measured.stacked().iter().zip(model.stacked()).map(|(u, v)| u - v).collect())
}

/// Rows of the linearised far-field equation for one illumination: the
/// Fréchet derivative of `ξ, ζ ↦ D∞ξ − S∞ζ` with respect to the boundary
/// acting on node samples, and the residual `U∞ − D∞ξ + S∞ζ`.
pub fn assemble_farfield_rows(
    problem: &ScatteringProblem,
    densities: &DensitySolution,
    measured: &FarFieldPattern,
) -> Result<(CMatrix, Vec<C64>)> {
    let frames = problem.frames()?;
    let nodes = problem.grid.nodes();
    let angles = &measured.angles;
    let coeffs = FarFieldCoeffs::new(&problem.exterior);
    let w = problem.grid.weight();
    let rows_per_kind = 2 * angles.len();
    let mut a = CMatrix::zeros(2 * rows_per_kind, 2 * frames.len());
    for (ki, kind) in WaveKind::BOTH.into_iter().enumerate() {
        for (k, &theta) in angles.iter().enumerate() {
            let dir = FarFieldDirectionData::from_angle(theta);
            let proj = crate::linalg::Mat2::from_real(dir.projector(kind));
            for (j, y) in frames.iter().enumerate() {
                let phase = C64::from_polar(w, -coeffs.k(kind) * (dir.xhat[0] * y.z[0] + dir.xhat[1] * y.z[1]));
                let xi = &densities.phi[j];
                let zeta = &densities.psi[j];
                for (slot, (qv, dqv)) in [(1.0, 0.0), (0.0, 1.0)].into_iter().enumerate() {
                    let s = perturbation_from_values(qv, dqv, nodes[j]);
                    let g_mat = frechet_G(&coeffs, dir.xhat, y.z, y.dz, s.q, s.dq, kind);
                    let g = frechet_g(&coeffs, dir.xhat, y.z, y.dz, s.q, s.dq, kind);
                    let d = proj.apply(&g_mat.apply(xi));
                    let sz = proj.apply(zeta);
                    for c in 0..2 {
                        let v = (coeffs.gamma(kind) * d[c] - coeffs.beta(kind) * g * sz[c]) * phase;
                        a[(ki * rows_per_kind + 2 * k + c, 2 * j + slot)] = v;
                    }
                }
            }
        }
    }
    let b = farfield_residual(problem, densities, measured)?;
    Ok((a, b))
}

/// Solves `(Re(B)ᵀRe(B) + Im(B)ᵀIm(B) + λ diag(penalty)) x = Re(B)ᵀRe(b) + Im(B)ᵀIm(b)`
/// with `B = A T` by conjugate gradients.
pub fn tikhonov_step(sys: &LinearizedSystem, penalty: &[f64], lambda: f64) -> Result<Vec<f64>> {
    tikhonov_from_composite(&sys.composite(), &sys.b, penalty, lambda)
}

fn tikhonov_from_composite(bmat: &CMatrix, b: &[C64], penalty: &[f64], lambda: f64) -> Result<Vec<f64>> {
    if !(lambda > 0.0) {
        return Err(Error::InvalidParameter { name: "lambda", reason: format!("must be positive, got {lambda}") });
    }
    let cols = bmat.cols();
    if penalty.len() != cols || b.len() != bmat.rows() {
        return Err(Error::GridMismatch { expected: cols, found: penalty.len() });
    }
    let mut normal = RMatrix::zeros(cols);
    let mut rhs = vec![0.0; cols];
    for i in 0..bmat.rows() {
        let row = bmat.row(i);
        for p in 0..cols {
            rhs[p] += row[p].re * b[i].re + row[p].im * b[i].im;
            for q in 0..cols {
                normal.data[p * cols + q] += row[p].re * row[q].re + row[p].im * row[q].im;
            }
        }
    }
    for p in 0..cols {
        normal.data[p * cols + p] += lambda * penalty[p];
    }
    Ok(conjugate_gradient(&normal, &rhs, 1e-10, 10 * cols)?.x)
}

/// Record of one iteration.
#[derive(Debug, Clone, PartialEq)]
pub struct IterationRecord {
    pub iter: usize,
    pub lambda: f64,
    /// `‖b‖₂` of the stacked residual on the boundary before the update.
    pub residual_norm: f64,
    /// Radial coefficients after the update.
    pub coefficients: Vec<f64>,
    pub step_norm: f64,
    pub halvings: usize,
}

/// Trajectory and final state of a reconstruction.
#[derive(Debug, Clone, PartialEq)]
pub struct Reconstruction {
    pub records: Vec<IterationRecord>,
    pub state: ReconstructionState,
    /// Residual norm on the final boundary.
    pub final_residual: f64,
}

impl Reconstruction {
    pub fn curve(&self) -> BoundaryCurve {
        BoundaryCurve::Radial(self.state.r.clone())
    }

    /// Final residual relative to the residual of the initial guess.
    pub fn residual_ratio(&self) -> f64 {
        self.final_residual / self.state.residual_history[0]
    }
}

const MAX_HALVINGS: usize = 10;

fn stacked_residual(
    problem: &ScatteringProblem,
    illuminations: &[IncidentWave],
    data: &[FarFieldPattern],
) -> Result<(Vec<DensitySolution>, f64)> {
    let densities = solve_density_subsystem(problem, illuminations)?;
    let mut sq = 0.0;
    for (d, u) in densities.iter().zip(data) {
        sq += cnorm2(&farfield_residual(problem, d, u)?).powi(2);
    }
    Ok((densities, sq.sqrt()))
}

/// Runs the iteration from the circle of radius `r0`. `data[l]` belongs to
/// `config.illuminations[l]` and must be sampled on the inverse grid angles;
/// noise is added here when `config.noise_delta > 0`.
pub fn reconstruct(
    config: &ReconstructionConfig,
    interior: &ElasticMedium,
    exterior: &ElasticMedium,
    data: &[FarFieldPattern],
) -> Result<Reconstruction> {
    config.validate()?;
    let grid = config.grid()?;
    if data.len() != config.illuminations.len() {
        return Err(Error::GridMismatch { expected: config.illuminations.len(), found: data.len() });
    }
    for d in data {
        if d.angles.len() != grid.len() || d.up.len() != grid.len() || d.us.len() != grid.len() {
            return Err(Error::GridMismatch { expected: grid.len(), found: d.angles.len() });
        }
    }
    let data = noisy_data(data, config.noise_delta, config.rng_seed);
    let t = trig_sampling_matrix(&grid, config.m);
    let penalty = sobolev_penalty(config.m, config.p);
    let mut state = ReconstructionState {
        r: RadialTrigCurve::constant(config.r0, config.m),
        densities: Vec::new(),
        lambda: config.lambda0,
        iter: 0,
        residual_history: Vec::new(),
    };
    let mut records = Vec::new();
    let mut increases = 0;
    for k in 1..=config.max_iter {
        let problem = radial_problem(interior, exterior, &state.r, grid)?;
        let densities = solve_density_subsystem(&problem, &config.illuminations)?;
        let blocks: Vec<Result<(CMatrix, Vec<C64>)>> = par::map_indices(data.len(), |l| {
            let (a, b) = assemble_farfield_rows(&problem, &densities[l], &data[l])?;
            Ok((a.matmul(&t), b))
        });
        let mut rows = Vec::new();
        let mut b = Vec::new();
        for blk in blocks {
            let (bt, bl) = blk?;
            rows.push(bt);
            b.extend(bl);
        }
        let composite = stack_rows(&rows);
        let residual = cnorm2(&b);
        let lambda = update_lambda(config.lambda0, config.decay, k);
        let x = tikhonov_from_composite(&composite, &b, &penalty, lambda)?;
        let mut q = RadialTrigCurve::from_coefficients(&x)?;
        let mut halvings = 0;
        let next = loop {
            match radial_update(&state.r, &q) {
                Ok(r) => break r,
                Err(_) if halvings < MAX_HALVINGS => {
                    q = q.scaled(0.5);
                    halvings += 1;
                }
                Err(_) => return Err(Error::RadiusCollapse { iteration: k, halvings }),
            }
        };
        let step_norm = sobolev_norm(&q, 1.0);
        if let Some(&prev) = state.residual_history.last() {
            increases = if residual > prev { increases + 1 } else { 0 };
        }
        state.residual_history.push(residual);
        state.r = next;
        state.densities = densities;
        state.lambda = lambda;
        state.iter = k;
        records.push(IterationRecord {
            iter: k,
            lambda,
            residual_norm: residual,
            coefficients: state.r.coefficients(),
            step_norm,
            halvings,
        });
        if config.early_stop && (step_norm < 1e-8 || increases >= 3) {
            break;
        }
    }
    let problem = radial_problem(interior, exterior, &state.r, grid)?;
    let (densities, final_residual) = stacked_residual(&problem, &config.illuminations, &data)?;
    state.densities = densities;
    Ok(Reconstruction { records, state, final_residual })
}

fn stack_rows(blocks: &[CMatrix]) -> CMatrix {
    let rows: usize = blocks.iter().map(|b| b.rows()).sum();
    let cols = blocks.first().map_or(0, |b| b.cols());
    let mut out = CMatrix::zeros(rows, cols);
    let mut r0 = 0;
    for b in blocks {
        out.set_block(r0, 0, b);
        r0 += b.rows();
    }
    out
}

/// The stacked system of [`reconstruct`]'s step two on the boundary of `r`,
/// for diagnostics and consistency checks.
pub fn linearized_system(
    config: &ReconstructionConfig,
    interior: &ElasticMedium,
    exterior: &ElasticMedium,
    r: &RadialTrigCurve,
    data: &[FarFieldPattern],
) -> Result<(LinearizedSystem, Vec<DensitySolution>)> {
    let grid = config.grid()?;
    let problem = radial_problem(interior, exterior, r, grid)?;
    let densities = solve_density_subsystem(&problem, &config.illuminations)?;
    let mut rows = Vec::new();
    let mut b = Vec::new();
    for (d, u) in densities.iter().zip(data) {
        let (a, bl) = assemble_farfield_rows(&problem, d, u)?;
        rows.push(a);
        b.extend(bl);
    }
    Ok((LinearizedSystem { a: stack_rows(&rows), t: trig_sampling_matrix(&grid, config.m), b }, densities))
}

/// `D∞ξ − S∞ζ` on the boundary of `r` for frozen traces, stacked over
/// illuminations.
pub fn frozen_far_field(
    interior: &ElasticMedium,
    exterior: &ElasticMedium,
    r: &RadialTrigCurve,
    grid: CollocationGrid,
    densities: &[DensitySolution],
    angles: &[f64],
) -> Result<Vec<C64>> {
    let problem = radial_problem(interior, exterior, r, grid)?;
    let frames = problem.frames()?;
    let mut out = Vec::new();
    for d in densities {
        let xi = interleave(&d.phi);
        let zeta = interleave(&d.psi);
        for kind in WaveKind::BOTH {
            let dv = farfield_matrix(exterior, &frames, angles, kind, true).matvec(&xi);
            let sv = farfield_matrix(exterior, &frames, angles, kind, false).matvec(&zeta);
            out.extend(dv.iter().zip(&sv).map(|(a, b)| a - b));
        }
    }
    Ok(out)
}
