//! The direct transmission problem: Nyström systems for the layer-potential
//! representations, far-field evaluation and a point-source test problem
//! with a closed-form far field.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::error::{Error, Result};
use crate::geometry::{BoundaryCurve, CollocationGrid, Frame};
use crate::kernels::{
    self, CombinedHyperKernel, DoubleLayerKernel, FarFieldCoeffs, FarFieldDirectionData, HyperKernel, KernelEvaluator,
    MaueKernel, Part, SingleLayerKernel, SingleTractionKernel,
};
use crate::linalg::{CMatrix, CVec2, LuFactors, Mat2};
use crate::media::{incident_field, incident_traction, ElasticMedium, IncidentWave, WaveKind};
use crate::quadrature::{deinterleave, interleave, split_and_assemble, BoundaryKernel, DiscreteOperator};

type C64 = Complex64;

const ONE: C64 = C64::new(1.0, 0.0);

/// Inclusion with interior and exterior media, its boundary and the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct ScatteringProblem {
    pub interior: ElasticMedium,
    pub exterior: ElasticMedium,
    pub curve: BoundaryCurve,
    pub grid: CollocationGrid,
}

impl ScatteringProblem {
    /// Checks that both media share the frequency and that the curve is
    /// regular at every node.
    pub fn new(
        interior: ElasticMedium,
        exterior: ElasticMedium,
        curve: BoundaryCurve,
        grid: CollocationGrid,
    ) -> Result<Self> {
        if (interior.omega() - exterior.omega()).abs() > 1e-14 * exterior.omega() {
            return Err(Error::InvalidMedium("interior and exterior media must share omega"));
        }
        grid.frames(&curve)?;
        Ok(ScatteringProblem { interior, exterior, curve, grid })
    }

    pub fn frames(&self) -> Result<Vec<Frame>> {
        self.grid.frames(&self.curve)
    }

    /// The same problem on another grid.
    pub fn with_grid(&self, grid: CollocationGrid) -> Self {
        ScatteringProblem { grid, ..self.clone() }
    }
}

/// Which layer-potential ansatz a density pair belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Representation {
    /// `u_j = τ_j D_j φ + S_j ψ`.
    Combined,
    /// `u_j = S_j ψ_j`.
    SingleLayer,
    /// `u_j = D_j ψ_j`.
    DoubleLayer,
    /// Boundary values `(u^t, T^e u^t)` of the total field.
    DirectMethod,
}

/// Boundary data of the transmission conditions: `u^i − u^e = trace` and
/// `T^i u^i − T^e u^e = traction` on the boundary.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryData {
    pub trace: Vec<CVec2>,
    pub traction: Vec<CVec2>,
}

impl BoundaryData {
    pub fn scaled(&self, s: C64) -> BoundaryData {
        let f = |v: &Vec<CVec2>| v.iter().map(|a| [a[0] * s, a[1] * s]).collect();
        BoundaryData { trace: f(&self.trace), traction: f(&self.traction) }
    }
}

/// Densities on the grid.
///
/// | representation | `phi` | `psi` |
/// |---|---|---|
/// | `Combined` | `φ` | `ψ` |
/// | `SingleLayer`, `DoubleLayer` | `ψ_i` | `ψ_e` |
/// | `DirectMethod` | `ξ = u^t` | `ζ = T^e u^t` |
#[derive(Debug, Clone, PartialEq)]
pub struct DensitySolution {
    pub phi: Vec<CVec2>,
    pub psi: Vec<CVec2>,
    pub representation: Representation,
}

/// Far-field patterns at the angles `angles`.
#[derive(Debug, Clone, PartialEq)]
pub struct FarFieldPattern {
    pub up: Vec<CVec2>,
    pub us: Vec<CVec2>,
    pub angles: Vec<f64>,
}

impl FarFieldPattern {
    pub fn component(&self, kind: WaveKind) -> &[CVec2] {
        match kind {
            WaveKind::P => &self.up,
            WaveKind::S => &self.us,
        }
    }

    /// `[u_p; u_s]` flattened in the interleaved layout.
    pub fn stacked(&self) -> Vec<C64> {
        let mut v = interleave(&self.up);
        v.extend(interleave(&self.us));
        v
    }

    pub fn from_stacked(flat: &[C64], angles: Vec<f64>) -> Result<Self> {
        let m = 2 * angles.len();
        if flat.len() != 2 * m {
            return Err(Error::GridMismatch { expected: 2 * m, found: flat.len() });
        }
        Ok(FarFieldPattern { up: deinterleave(&flat[..m]), us: deinterleave(&flat[m..]), angles })
    }

    /// Largest pointwise difference over both components.
    pub fn sup_distance(&self, other: &FarFieldPattern) -> f64 {
        sup_diff(&self.up, &other.up).max(sup_diff(&self.us, &other.us))
    }

    /// Largest pointwise modulus over both components.
    pub fn sup_norm(&self) -> f64 {
        let z = [C64::new(0.0, 0.0); 2];
        let zeros = alloc::vec![z; self.up.len()];
        sup_diff(&self.up, &zeros).max(sup_diff(&self.us, &zeros))
    }
}

fn sup_diff(a: &[CVec2], b: &[CVec2]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x[0] - y[0]).norm().hypot((x[1] - y[1]).norm())).fold(0.0, f64::max)
}

/// `2n` equidistant far-field angles, matching the boundary nodes.
pub fn farfield_angles(grid: &CollocationGrid) -> Vec<f64> {
    grid.nodes()
}

fn assemble<K: BoundaryKernel>(kernel: &K, problem: &ScatteringProblem) -> Result<DiscreteOperator> {
    split_and_assemble(kernel, &problem.curve, &problem.grid, kernel.singularity())
}

/// The boundary operators `S`, `K`, `L` of one medium.
#[derive(Debug, Clone)]
pub struct MediumOperators {
    pub s: DiscreteOperator,
    pub k: DiscreteOperator,
    pub l: DiscreteOperator,
}

impl MediumOperators {
    pub fn assemble(medium: &ElasticMedium, problem: &ScatteringProblem) -> Result<Self> {
        Ok(MediumOperators {
            s: assemble(&SingleLayerKernel::new(medium), problem)?,
            k: assemble(&DoubleLayerKernel::new(medium), problem)?,
            l: assemble(&SingleTractionKernel::new(medium), problem)?,
        })
    }
}

/// The discrete hypersingular operator `N` of one medium.
///
/// `N − N⁽⁰⁾` is weakly singular and assembled directly. The static part is
/// `N⁽⁰⁾ξ = (c / π|z'(t)|) d/dt ∫ V(t, τ) ξ'(τ) dτ` with the kernel of
/// [`MaueKernel`], discretised with trigonometric differentiation.
pub fn hypersingular(medium: &ElasticMedium, problem: &ScatteringProblem) -> Result<DiscreteOperator> {
    let dynamic = assemble(&HyperKernel::new(medium), problem)?;
    let v = assemble(&MaueKernel, problem)?;
    let d = DiscreteOperator::differentiation(problem.grid);
    let mut stat = d.compose(&v.compose(&d, "V d/dt")?, "N0")?;
    let c = medium.c() / PI;
    let scale: Vec<f64> = problem.frames()?.iter().map(|f| c / f.speed).collect();
    stat.scale_rows(&scale);
    DiscreteOperator::combination(&[(ONE, &dynamic), (ONE, &stat)], "N")
}

/// `[[a, b], [c, d]]` as one dense matrix.
fn block_system(blocks: [[&CMatrix; 2]; 2]) -> CMatrix {
    let m = blocks[0][0].rows();
    let mut out = CMatrix::zeros(2 * m, 2 * m);
    for (bi, row) in blocks.iter().enumerate() {
        for (bj, b) in row.iter().enumerate() {
            out.set_block(bi * m, bj * m, b);
        }
    }
    out
}

fn combine(terms: &[(f64, &DiscreteOperator)], identity: f64, grid: CollocationGrid, label: &str) -> Result<CMatrix> {
    let id = DiscreteOperator::identity(grid);
    let mut all: Vec<(C64, &DiscreteOperator)> = terms.iter().map(|(s, op)| (C64::from(*s), *op)).collect();
    all.push((C64::from(identity), &id));
    Ok(DiscreteOperator::combination(&all, label)?.matrix)
}

fn check_data(problem: &ScatteringProblem, data: &BoundaryData) -> Result<()> {
    let n = problem.grid.len();
    for len in [data.trace.len(), data.traction.len()] {
        if len != n {
            return Err(Error::GridMismatch { expected: n, found: len });
        }
    }
    Ok(())
}

/// A factorised Nyström system for one representation; solves for any
/// boundary data on the same boundary.
///
/// Block systems, unknowns and right-hand sides:
///
/// * `Combined`: `[[I + L_i − L_e, τ_i N_i − τ_e N_e], [S_i − S_e, −(τ_i + τ_e)/2 I + τ_i K_i − τ_e K_e]]`,
///   `(ψ, φ)`, `(traction, trace)`;
/// * `SingleLayer`: `[[S_i, −S_e], [½I + L_i, ½I − L_e]]`, `(ψ_i, ψ_e)`, `(trace, traction)`;
/// * `DoubleLayer`: `[[−½I + K_i, −½I − K_e], [N_i, −N_e]]`, `(ψ_i, ψ_e)`, `(trace, traction)`;
/// * `DirectMethod`: `[[I + K_i − K_e, S_e − S_i], [τ_i N_i − τ_e N_e, (τ_i + τ_e)/2 I + τ_e L_e − τ_i L_i]]`,
///   `(ξ, ζ)`, `(trace, τ_e traction)` where the data are `(u^inc, T^e u^inc)`.
#[derive(Debug, Clone)]
pub struct ForwardSystem {
    lu: LuFactors,
    representation: Representation,
    nodes: usize,
    tau_e: f64,
}

impl ForwardSystem {
    pub fn assemble(problem: &ScatteringProblem, representation: Representation) -> Result<Self> {
        let (ti, te) = (problem.interior.tau(), problem.exterior.tau());
        let g = problem.grid;
        let system = match representation {
            Representation::Combined => {
                let oi = MediumOperators::assemble(&problem.interior, problem)?;
                let oe = MediumOperators::assemble(&problem.exterior, problem)?;
                let hyper = assemble(&CombinedHyperKernel::new(&problem.interior, &problem.exterior), problem)?;
                let a11 = combine(&[(1.0, &oi.l), (-1.0, &oe.l)], 1.0, g, "I + L_i - L_e")?;
                let a21 = combine(&[(1.0, &oi.s), (-1.0, &oe.s)], 0.0, g, "S_i - S_e")?;
                let a22 = combine(&[(ti, &oi.k), (-te, &oe.k)], -0.5 * (ti + te), g, "K combination")?;
                block_system([[&a11, &hyper.matrix], [&a21, &a22]])
            }
            Representation::SingleLayer => {
                let si = assemble(&SingleLayerKernel::new(&problem.interior), problem)?;
                let se = assemble(&SingleLayerKernel::new(&problem.exterior), problem)?;
                let li = assemble(&SingleTractionKernel::new(&problem.interior), problem)?;
                let le = assemble(&SingleTractionKernel::new(&problem.exterior), problem)?;
                let a12 = combine(&[(-1.0, &se)], 0.0, g, "-S_e")?;
                let a21 = combine(&[(1.0, &li)], 0.5, g, "I/2 + L_i")?;
                let a22 = combine(&[(-1.0, &le)], 0.5, g, "I/2 - L_e")?;
                block_system([[&si.matrix, &a12], [&a21, &a22]])
            }
            Representation::DoubleLayer => {
                let ki = assemble(&DoubleLayerKernel::new(&problem.interior), problem)?;
                let ke = assemble(&DoubleLayerKernel::new(&problem.exterior), problem)?;
                let ni = hypersingular(&problem.interior, problem)?;
                let ne = hypersingular(&problem.exterior, problem)?;
                let a11 = combine(&[(1.0, &ki)], -0.5, g, "-I/2 + K_i")?;
                let a12 = combine(&[(-1.0, &ke)], -0.5, g, "-I/2 - K_e")?;
                let a22 = combine(&[(-1.0, &ne)], 0.0, g, "-N_e")?;
                block_system([[&a11, &a12], [&ni.matrix, &a22]])
            }
            Representation::DirectMethod => {
                let oi = MediumOperators::assemble(&problem.interior, problem)?;
                let oe = MediumOperators::assemble(&problem.exterior, problem)?;
                let hyper = assemble(&CombinedHyperKernel::new(&problem.interior, &problem.exterior), problem)?;
                let a11 = combine(&[(1.0, &oi.k), (-1.0, &oe.k)], 1.0, g, "I + K_i - K_e")?;
                let a12 = combine(&[(1.0, &oe.s), (-1.0, &oi.s)], 0.0, g, "S_e - S_i")?;
                let a22 = combine(&[(te, &oe.l), (-ti, &oi.l)], 0.5 * (ti + te), g, "L combination")?;
                block_system([[&a11, &a12], [&hyper.matrix, &a22]])
            }
        };
        let lu = system.lu().map_err(|e| match e {
            Error::SingularSystem { pivot, .. } => {
                Error::SingularSystem { context: format!("{representation:?} system"), pivot }
            }
            other => other,
        })?;
        Ok(ForwardSystem { lu, representation, nodes: g.len(), tau_e: te })
    }

    pub fn representation(&self) -> Representation {
        self.representation
    }

    pub fn solve(&self, data: &BoundaryData) -> Result<DensitySolution> {
        for len in [data.trace.len(), data.traction.len()] {
            if len != self.nodes {
                return Err(Error::GridMismatch { expected: self.nodes, found: len });
            }
        }
        let (top, bottom, s) = match self.representation {
            Representation::Combined => (&data.traction, &data.trace, 1.0),
            Representation::DirectMethod => (&data.trace, &data.traction, self.tau_e),
            _ => (&data.trace, &data.traction, 1.0),
        };
        let mut rhs = interleave(top);
        rhs.extend(bottom.iter().flat_map(|v| [v[0] * s, v[1] * s]));
        let x = self.lu.solve(&rhs);
        let (first, second) = (deinterleave(&x[..2 * self.nodes]), deinterleave(&x[2 * self.nodes..]));
        let (phi, psi) = match self.representation {
            Representation::Combined => (second, first),
            _ => (first, second),
        };
        Ok(DensitySolution { phi, psi, representation: self.representation })
    }
}

pub fn solve(
    problem: &ScatteringProblem,
    data: &BoundaryData,
    representation: Representation,
) -> Result<DensitySolution> {
    check_data(problem, data)?;
    ForwardSystem::assemble(problem, representation)?.solve(data)
}

pub fn solve_direct_combined(problem: &ScatteringProblem, data: &BoundaryData) -> Result<DensitySolution> {
    solve(problem, data, Representation::Combined)
}

pub fn solve_direct_single(problem: &ScatteringProblem, data: &BoundaryData) -> Result<DensitySolution> {
    solve(problem, data, Representation::SingleLayer)
}

pub fn solve_direct_double(problem: &ScatteringProblem, data: &BoundaryData) -> Result<DensitySolution> {
    solve(problem, data, Representation::DoubleLayer)
}

/// Total-field traces `(ξ, ζ)` from plane-wave data `(u^inc, T^e u^inc)`.
pub fn solve_direct_method(problem: &ScatteringProblem, data: &BoundaryData) -> Result<DensitySolution> {
    solve(problem, data, Representation::DirectMethod)
}

/// Far-field operator matrices `S∞_α` or `D∞_α` on the trapezoid rule:
/// rows `2k + a` for angle `k`, columns `2j + b` for node `j`.
pub fn farfield_matrix(
    exterior: &ElasticMedium,
    frames: &[Frame],
    angles: &[f64],
    kind: WaveKind,
    double: bool,
) -> CMatrix {
    let coeffs = FarFieldCoeffs::new(exterior);
    let w = 2.0 * PI / frames.len() as f64;
    let mut m = CMatrix::zeros(2 * angles.len(), 2 * frames.len());
    for (k, &theta) in angles.iter().enumerate() {
        let xhat = [theta.cos(), theta.sin()];
        for (j, y) in frames.iter().enumerate() {
            let b = if double {
                kernels::farfield_double_kernel(&coeffs, xhat, y.z, y.normal, kind)
            } else {
                kernels::farfield_single_kernel(&coeffs, xhat, y.z, kind)
            }
            .scale_re(w * y.speed);
            for a in 0..2 {
                for c in 0..2 {
                    m[(2 * k + a, 2 * j + c)] = b.0[a][c];
                }
            }
        }
    }
    m
}

/// Far field of a density solution at the `2n` grid angles.
pub fn far_field(problem: &ScatteringProblem, solution: &DensitySolution) -> Result<FarFieldPattern> {
    far_field_at(problem, solution, &farfield_angles(&problem.grid))
}

/// Far field of a density solution at arbitrary angles.
pub fn far_field_at(
    problem: &ScatteringProblem,
    solution: &DensitySolution,
    angles: &[f64],
) -> Result<FarFieldPattern> {
    let n = problem.grid.len();
    if solution.phi.len() != n || solution.psi.len() != n {
        return Err(Error::GridMismatch { expected: n, found: solution.phi.len() });
    }
    let frames = problem.frames()?;
    let angles = angles.to_vec();
    let ext = &problem.exterior;
    let phi = interleave(&solution.phi);
    let psi = interleave(&solution.psi);
    let eval = |kind: WaveKind| -> Vec<CVec2> {
        let single = || farfield_matrix(ext, &frames, &angles, kind, false);
        let double = || farfield_matrix(ext, &frames, &angles, kind, true);
        let v = match solution.representation {
            Representation::Combined => {
                let mut a = double().matvec(&phi);
                let b = single().matvec(&psi);
                for (x, y) in a.iter_mut().zip(b) {
                    *x = *x * ext.tau() + y;
                }
                a
            }
            Representation::SingleLayer => single().matvec(&psi),
            Representation::DoubleLayer => double().matvec(&psi),
            Representation::DirectMethod => {
                let mut a = double().matvec(&phi);
                let b = single().matvec(&psi);
                for (x, y) in a.iter_mut().zip(b) {
                    *x -= y;
                }
                a
            }
        };
        deinterleave(&v)
    };
    Ok(FarFieldPattern { up: eval(WaveKind::P), us: eval(WaveKind::S), angles })
}

/// Plane-wave data `(u^inc, T^e u^inc)` on the grid.
pub fn incident_data(problem: &ScatteringProblem, wave: &IncidentWave) -> Result<BoundaryData> {
    let frames = problem.frames()?;
    let ext = &problem.exterior;
    Ok(BoundaryData {
        trace: frames.iter().map(|f| incident_field(wave, ext, f.z)).collect(),
        traction: frames.iter().map(|f| incident_traction(wave, ext, f.z, f.normal)).collect(),
    })
}

/// Point-source data `f = [Φ_i(x, z_e)]₁ − [Φ_e(x, z_i)]₁` and
/// `g = [T^i_x Φ_i(x, z_e)]₁ − [T^e_x Φ_e(x, z_i)]₁`, for which the exact
/// exterior field is `[Φ_e(x, z_i)]₁`.
pub fn analytic_boundary_data(problem: &ScatteringProblem, z_i: [f64; 2], z_e: [f64; 2]) -> Result<BoundaryData> {
    if problem.curve.winding_number(z_i).unwrap_or(0) == 0 {
        return Err(Error::SourcePlacement(format!("interior source {z_i:?} is not inside the boundary")));
    }
    if problem.curve.winding_number(z_e) != Some(0) {
        return Err(Error::SourcePlacement(format!("exterior source {z_e:?} is not outside the boundary")));
    }
    let ei = KernelEvaluator::new(&problem.interior);
    let ee = KernelEvaluator::new(&problem.exterior);
    let frames = problem.frames()?;
    let mut trace = Vec::with_capacity(frames.len());
    let mut traction = Vec::with_capacity(frames.len());
    for f in &frames {
        let u = ei.tensor(f.z, z_e, Part::Full)? - ee.tensor(f.z, z_i, Part::Full)?;
        let t =
            ei.single_traction(f.z, f.normal, z_e, Part::Full)? - ee.single_traction(f.z, f.normal, z_i, Part::Full)?;
        trace.push(u.column(0));
        traction.push(t.column(0));
    }
    Ok(BoundaryData { trace, traction })
}

/// `φ∞_α(x̂, z_i) = β_α e^{−i k_α x̂·z_i} [J_α(x̂)]₁`.
pub fn analytic_far_field(exterior: &ElasticMedium, z_i: [f64; 2], angles: &[f64]) -> FarFieldPattern {
    let coeffs = FarFieldCoeffs::new(exterior);
    let eval = |kind: WaveKind| -> Vec<CVec2> {
        angles
            .iter()
            .map(|&theta| {
                let dir = FarFieldDirectionData::from_angle(theta);
                let j = dir.projector(kind);
                let phase = C64::from_polar(1.0, -coeffs.k(kind) * (dir.xhat[0] * z_i[0] + dir.xhat[1] * z_i[1]));
                let s = coeffs.beta(kind) * phase;
                [s * j[0][0], s * j[1][0]]
            })
            .collect()
    };
    FarFieldPattern { up: eval(WaveKind::P), us: eval(WaveKind::S), angles: angles.to_vec() }
}

/// One row of a convergence table.
#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceRow {
    pub n: usize,
    /// Sup-node error against the exact far field.
    pub error: f64,
    pub far_field: FarFieldPattern,
}

/// Solves the point-source problem for every `n` in `n_list` and compares
/// the far field with the closed form.
pub fn convergence_study(
    problem: &ScatteringProblem,
    representation: Representation,
    z_i: [f64; 2],
    z_e: [f64; 2],
    n_list: &[usize],
) -> Result<Vec<ConvergenceRow>> {
    if n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidParameter { name: "n_list", reason: "must be strictly ascending".into() });
    }
    n_list
        .iter()
        .map(|&n| {
            let p = problem.with_grid(CollocationGrid::new(n)?);
            let data = analytic_boundary_data(&p, z_i, z_e)?;
            let sol = solve(&p, &data, representation)?;
            let ff = far_field(&p, &sol)?;
            let exact = analytic_far_field(&p.exterior, z_i, &ff.angles);
            Ok(ConvergenceRow { n, error: ff.sup_distance(&exact), far_field: ff })
        })
        .collect()
}

/// Layer potentials evaluated off the boundary with the trapezoid rule.
#[derive(Debug, Clone)]
pub struct PotentialEvaluator {
    ev: KernelEvaluator,
    frames: Vec<Frame>,
    weight: f64,
}

impl PotentialEvaluator {
    pub fn new(medium: &ElasticMedium, curve: &BoundaryCurve, grid: &CollocationGrid) -> Result<Self> {
        Ok(PotentialEvaluator { ev: KernelEvaluator::new(medium), frames: grid.frames(curve)?, weight: grid.weight() })
    }

    fn sum(&self, density: &[CVec2], f: impl Fn(&Frame) -> Result<Mat2>) -> Result<CVec2> {
        if density.len() != self.frames.len() {
            return Err(Error::GridMismatch { expected: self.frames.len(), found: density.len() });
        }
        let mut acc = [C64::new(0.0, 0.0); 2];
        for (y, d) in self.frames.iter().zip(density) {
            let v = f(y)?.scale_re(self.weight * y.speed).apply(d);
            acc[0] += v[0];
            acc[1] += v[1];
        }
        Ok(acc)
    }

    /// `(S φ)(x)`.
    pub fn single_layer(&self, density: &[CVec2], x: [f64; 2]) -> Result<CVec2> {
        self.sum(density, |y| self.ev.tensor(x, y.z, Part::Full))
    }

    /// `(D φ)(x)`.
    pub fn double_layer(&self, density: &[CVec2], x: [f64; 2]) -> Result<CVec2> {
        self.sum(density, |y| self.ev.double_layer(x, y.z, y.normal, Part::Full))
    }

    /// `T_x (S φ)(x)` for the normal `nx`.
    pub fn single_layer_traction(&self, density: &[CVec2], x: [f64; 2], nx: [f64; 2]) -> Result<CVec2> {
        self.sum(density, |y| self.ev.single_traction(x, nx, y.z, Part::Full))
    }
}

/// Field of a density solution at `x` off the boundary: the interior field
/// inside, the scattered field outside. Not available for `DirectMethod`.
pub fn field(problem: &ScatteringProblem, solution: &DensitySolution, x: [f64; 2]) -> Result<CVec2> {
    let inside = match problem.curve.winding_number(x) {
        Some(0) => false,
        Some(_) => true,
        None => return Err(Error::SourcePlacement(format!("{x:?} is too close to the boundary"))),
    };
    let medium = if inside { &problem.interior } else { &problem.exterior };
    let pot = PotentialEvaluator::new(medium, &problem.curve, &problem.grid)?;
    let own = if inside { &solution.phi } else { &solution.psi };
    match solution.representation {
        Representation::Combined => {
            let d = pot.double_layer(&solution.phi, x)?;
            let s = pot.single_layer(&solution.psi, x)?;
            let tau = medium.tau();
            Ok([d[0] * tau + s[0], d[1] * tau + s[1]])
        }
        Representation::SingleLayer => pot.single_layer(own, x),
        Representation::DoubleLayer => pot.double_layer(own, x),
        Representation::DirectMethod => Err(Error::Representation("field evaluation needs a layer-potential ansatz")),
    }
}
