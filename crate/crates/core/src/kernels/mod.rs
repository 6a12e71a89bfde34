//! Point-wise kernels: the fundamental tensor and its static part, the
//! traction-applied kernels of the boundary operators, far-field kernels and
//! the Fréchet-derivative kernels of the far-field operators.

mod boundary;
pub mod radial;
mod tensor;

use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

pub use boundary::{
    CombinedHyperKernel, DoubleLayerKernel, HyperKernel, MaueKernel, SingleLayerKernel, SingleTractionKernel,
};
pub use radial::{Jets, Part, RadialFunctions};

use crate::error::{Error, Result};
use crate::linalg::{CVec2, Mat2};
use crate::media::{ElasticMedium, WaveKind};

type C64 = Complex64;

/// `J(x) = x xᵀ / |x|²`.
pub fn jmat(x: [f64; 2]) -> [[f64; 2]; 2] {
    let r2 = x[0] * x[0] + x[1] * x[1];
    [[x[0] * x[0] / r2, x[0] * x[1] / r2], [x[0] * x[1] / r2, x[1] * x[1] / r2]]
}

/// `Φ₁(t)`, `Φ₂(t)` and `J(x − y)` at one point pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreensTensorEval {
    pub phi1: C64,
    pub phi2: C64,
    pub jmat: [[f64; 2]; 2],
}

impl GreensTensorEval {
    pub fn tensor(&self) -> Mat2 {
        Mat2::scalar(self.phi1) + Mat2::from_real(self.jmat).scale(self.phi2)
    }
}

/// Kernel evaluator bound to one medium.
#[derive(Debug, Clone)]
pub struct KernelEvaluator {
    medium: ElasticMedium,
    radial: RadialFunctions,
}

fn separation(x: [f64; 2], y: [f64; 2]) -> Result<([f64; 2], f64)> {
    let d = [x[0] - y[0], x[1] - y[1]];
    let t = d[0].hypot(d[1]);
    if t == 0.0 {
        return Err(Error::SingularPoint);
    }
    Ok((d, t))
}

impl KernelEvaluator {
    pub fn new(medium: &ElasticMedium) -> Self {
        KernelEvaluator { medium: *medium, radial: RadialFunctions::new(medium) }
    }

    pub fn medium(&self) -> &ElasticMedium {
        &self.medium
    }

    pub fn radial(&self) -> &RadialFunctions {
        &self.radial
    }

    pub fn greens(&self, x: [f64; 2], y: [f64; 2]) -> Result<GreensTensorEval> {
        let (d, t) = separation(x, y)?;
        let (phi1, phi2) = self.radial.phi12(t)?;
        Ok(GreensTensorEval { phi1, phi2, jmat: jmat(d) })
    }

    pub fn tensor(&self, x: [f64; 2], y: [f64; 2], part: Part) -> Result<Mat2> {
        let (d, t) = separation(x, y)?;
        Ok(tensor::phi(&self.radial.jets(t, part)?, d))
    }

    /// `[T_y Φ(x, y)]ᵀ`.
    pub fn double_layer(&self, x: [f64; 2], y: [f64; 2], ny: [f64; 2], part: Part) -> Result<Mat2> {
        let (d, t) = separation(x, y)?;
        let g = tensor::grad(&self.radial.jets(t, part)?, d);
        Ok(tensor::traction_y(&self.medium, &g, ny).transpose())
    }

    /// `T_x Φ(x, y)`.
    pub fn single_traction(&self, x: [f64; 2], nx: [f64; 2], y: [f64; 2], part: Part) -> Result<Mat2> {
        let (d, t) = separation(x, y)?;
        let g = tensor::grad(&self.radial.jets(t, part)?, d);
        Ok(tensor::traction_x(&self.medium, &g, nx))
    }

    /// `T_x [T_y Φ(x, y)]ᵀ`.
    pub fn hyper(&self, x: [f64; 2], nx: [f64; 2], y: [f64; 2], ny: [f64; 2], part: Part) -> Result<Mat2> {
        let (d, t) = separation(x, y)?;
        let h = tensor::hess(&self.radial.jets(t, part)?, d);
        Ok(tensor::traction_xy(&self.medium, &h, nx, ny))
    }

    /// Coefficient of `ln |x − y|` in the kernel selected by `which`.
    /// Defined also at `x = y`.
    pub fn log_coefficient(
        &self,
        which: KernelKind,
        x: [f64; 2],
        nx: [f64; 2],
        y: [f64; 2],
        ny: [f64; 2],
        part: Part,
    ) -> Mat2 {
        let d = [x[0] - y[0], x[1] - y[1]];
        let t = d[0].hypot(d[1]);
        let j = self.radial.log_jets(t, part);
        match which {
            KernelKind::Tensor => tensor::phi(&j, d),
            KernelKind::DoubleLayer => tensor::traction_y(&self.medium, &tensor::grad(&j, d), ny).transpose(),
            KernelKind::SingleTraction => tensor::traction_x(&self.medium, &tensor::grad(&j, d), nx),
            KernelKind::Hyper => tensor::traction_xy(&self.medium, &tensor::hess(&j, d), nx, ny),
        }
    }

    /// The static kernel of the given kind at unit separation `e` with both
    /// normals equal to `n`; this is the homogeneous degree −1 leading term
    /// of the double-layer and single-traction kernels.
    pub fn static_unit(&self, which: KernelKind, e: [f64; 2], n: [f64; 2]) -> Mat2 {
        let j = self.radial.jets(1.0, Part::Static).expect("unit separation");
        match which {
            KernelKind::DoubleLayer => tensor::traction_y(&self.medium, &tensor::grad(&j, e), n).transpose(),
            KernelKind::SingleTraction => tensor::traction_x(&self.medium, &tensor::grad(&j, e), n),
            _ => Mat2::ZERO,
        }
    }
}

/// Selects one of the kernels of [`KernelEvaluator`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelKind {
    Tensor,
    DoubleLayer,
    SingleTraction,
    Hyper,
}

/// `(Φ₁(t), Φ₂(t))`.
pub fn phi12(medium: &ElasticMedium, t: f64) -> Result<(C64, C64)> {
    RadialFunctions::new(medium).phi12(t)
}

pub fn fundamental_tensor(medium: &ElasticMedium, x: [f64; 2], y: [f64; 2]) -> Result<Mat2> {
    KernelEvaluator::new(medium).tensor(x, y, Part::Full)
}

/// The Kelvin tensor `c_l ln|x−y| I + c_J J(x−y)`, normalised so that the
/// difference to the dynamic tensor is bounded at `x = y`.
pub fn static_fundamental(medium: &ElasticMedium, x: [f64; 2], y: [f64; 2]) -> Result<Mat2> {
    KernelEvaluator::new(medium).tensor(x, y, Part::Static)
}

/// `[T_y Φ(x, y)]ᵀ`.
pub fn double_layer_kernel(medium: &ElasticMedium, x: [f64; 2], y: [f64; 2], ny: [f64; 2]) -> Result<Mat2> {
    KernelEvaluator::new(medium).double_layer(x, y, ny, Part::Full)
}

/// `T_x Φ(x, y)`.
pub fn single_traction_kernel(medium: &ElasticMedium, x: [f64; 2], nx: [f64; 2], y: [f64; 2]) -> Result<Mat2> {
    KernelEvaluator::new(medium).single_traction(x, nx, y, Part::Full)
}

/// `τ_i T_x[T_y(Φ_i − Φ_i⁽⁰⁾)]ᵀ − τ_e T_x[T_y(Φ_e − Φ_e⁽⁰⁾)]ᵀ`.
pub fn combined_hyper_kernel(
    interior: &ElasticMedium,
    exterior: &ElasticMedium,
    x: [f64; 2],
    nx: [f64; 2],
    y: [f64; 2],
    ny: [f64; 2],
) -> Result<Mat2> {
    let ki = KernelEvaluator::new(interior).hyper(x, nx, y, ny, Part::Dynamic)?;
    let ke = KernelEvaluator::new(exterior).hyper(x, nx, y, ny, Part::Dynamic)?;
    Ok(ki.scale_re(interior.tau()) - ke.scale_re(exterior.tau()))
}

/// Far-field constants of the exterior medium.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FarFieldCoeffs {
    pub beta_p: C64,
    pub beta_s: C64,
    pub gamma_p: C64,
    pub gamma_s: C64,
    pub kp: f64,
    pub ks: f64,
    pub lambda: f64,
    pub mu: f64,
}

impl FarFieldCoeffs {
    pub fn new(exterior: &ElasticMedium) -> Self {
        let (kp, ks) = exterior.wavenumbers();
        let (lambda, mu) = (exterior.lambda(), exterior.mu());
        let e_plus = C64::from_polar(1.0, PI / 4.0);
        let e_minus = e_plus.conj();
        FarFieldCoeffs {
            beta_p: e_plus / ((lambda + 2.0 * mu) * (8.0 * PI * kp).sqrt()),
            beta_s: e_plus / (mu * (8.0 * PI * ks).sqrt()),
            gamma_p: e_minus * ((kp / (8.0 * PI)).sqrt() / (lambda + 2.0 * mu)),
            gamma_s: e_minus * ((ks / (8.0 * PI)).sqrt() / mu),
            kp,
            ks,
            lambda,
            mu,
        }
    }

    pub fn beta(&self, kind: WaveKind) -> C64 {
        match kind {
            WaveKind::P => self.beta_p,
            WaveKind::S => self.beta_s,
        }
    }

    pub fn gamma(&self, kind: WaveKind) -> C64 {
        match kind {
            WaveKind::P => self.gamma_p,
            WaveKind::S => self.gamma_s,
        }
    }

    pub fn k(&self, kind: WaveKind) -> f64 {
        match kind {
            WaveKind::P => self.kp,
            WaveKind::S => self.ks,
        }
    }

    /// `F(x̂, y) = λ x̂ nᵀ + μ n x̂ᵀ + μ (n·x̂) I` for an arbitrary vector `n`.
    pub fn f_matrix(&self, xhat: [f64; 2], n: [f64; 2]) -> [[f64; 2]; 2] {
        let nx = n[0] * xhat[0] + n[1] * xhat[1];
        core::array::from_fn(|a| {
            core::array::from_fn(|b| {
                self.lambda * xhat[a] * n[b] + self.mu * n[a] * xhat[b] + if a == b { self.mu * nx } else { 0.0 }
            })
        })
    }

    fn phase(&self, kind: WaveKind, xhat: [f64; 2], y: [f64; 2]) -> C64 {
        C64::from_polar(1.0, -self.k(kind) * (xhat[0] * y[0] + xhat[1] * y[1]))
    }
}

/// Projectors `J_p(x̂) = J(x̂)` and `J_s(x̂) = I − J(x̂)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FarFieldDirectionData {
    pub xhat: [f64; 2],
    pub jp: [[f64; 2]; 2],
    pub js: [[f64; 2]; 2],
}

impl FarFieldDirectionData {
    pub fn new(xhat: [f64; 2]) -> Self {
        let jp = jmat(xhat);
        let js = [[1.0 - jp[0][0], -jp[0][1]], [-jp[1][0], 1.0 - jp[1][1]]];
        FarFieldDirectionData { xhat, jp, js }
    }

    pub fn from_angle(theta: f64) -> Self {
        FarFieldDirectionData::new([theta.cos(), theta.sin()])
    }

    pub fn projector(&self, kind: WaveKind) -> [[f64; 2]; 2] {
        match kind {
            WaveKind::P => self.jp,
            WaveKind::S => self.js,
        }
    }
}

fn real_mul(a: [[f64; 2]; 2], b: [[f64; 2]; 2]) -> [[f64; 2]; 2] {
    core::array::from_fn(|i| core::array::from_fn(|j| a[i][0] * b[0][j] + a[i][1] * b[1][j]))
}

/// `β_α J_α(x̂) e^{−i k_α x̂·y}`.
pub fn farfield_single_kernel(coeffs: &FarFieldCoeffs, xhat: [f64; 2], y: [f64; 2], kind: WaveKind) -> Mat2 {
    let dir = FarFieldDirectionData::new(xhat);
    Mat2::from_real(dir.projector(kind)).scale(coeffs.beta(kind) * coeffs.phase(kind, xhat, y))
}

/// `γ_α J_α(x̂) F(x̂, y) e^{−i k_α x̂·y}`.
pub fn farfield_double_kernel(
    coeffs: &FarFieldCoeffs,
    xhat: [f64; 2],
    y: [f64; 2],
    ny: [f64; 2],
    kind: WaveKind,
) -> Mat2 {
    let dir = FarFieldDirectionData::new(xhat);
    let jf = real_mul(dir.projector(kind), coeffs.f_matrix(xhat, ny));
    Mat2::from_real(jf).scale(coeffs.gamma(kind) * coeffs.phase(kind, xhat, y))
}

/// `G_α = λ x̂ vᵀ + μ v x̂ᵀ + μ (v·x̂) I − i k_α (x̂·q) |z'| F(x̂, z)` with
/// `v = Q q'`.
#[allow(non_snake_case)]
pub fn frechet_G(
    coeffs: &FarFieldCoeffs,
    xhat: [f64; 2],
    z: [f64; 2],
    dz: [f64; 2],
    q: [f64; 2],
    dq: [f64; 2],
    kind: WaveKind,
) -> Mat2 {
    let _ = z;
    let speed = dz[0].hypot(dz[1]);
    let n = crate::rotate_q([dz[0] / speed, dz[1] / speed]);
    let v = crate::rotate_q(dq);
    let gv = Mat2::from_real(coeffs.f_matrix(xhat, v));
    let f = Mat2::from_real(coeffs.f_matrix(xhat, n));
    let xq = xhat[0] * q[0] + xhat[1] * q[1];
    gv - f.scale(C64::new(0.0, coeffs.k(kind) * xq * speed))
}

/// `g_α = −i k_α (x̂·q) |z'| + z'·q' / |z'|`.
pub fn frechet_g(
    coeffs: &FarFieldCoeffs,
    xhat: [f64; 2],
    z: [f64; 2],
    dz: [f64; 2],
    q: [f64; 2],
    dq: [f64; 2],
    kind: WaveKind,
) -> C64 {
    let _ = z;
    let speed = dz[0].hypot(dz[1]);
    let xq = xhat[0] * q[0] + xhat[1] * q[1];
    C64::new((dz[0] * dq[0] + dz[1] * dq[1]) / speed, -coeffs.k(kind) * xq * speed)
}

/// `J_α(x̂) · v` for a complex vector.
pub fn project(dir: &FarFieldDirectionData, kind: WaveKind, v: &CVec2) -> CVec2 {
    Mat2::from_real(dir.projector(kind)).apply(v)
}
