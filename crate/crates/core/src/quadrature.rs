//! Nyström discretisation on the equidistant grid: trapezoid rule for smooth
//! kernels, trigonometric-interpolation weights for the logarithmic and
//! Cauchy parts, and the interleaved 2×2-block operator matrices.
//!
//! A kernel with respect to `dτ` is split as
//!
//! ```text
//! K(t, τ) = c(t) cot((τ − t)/2) + K₁(t, τ) ln(4 sin²((t − τ)/2)) + K₂(t, τ)
//! ```
//!
//! with `K₂` smooth. `c` and `K₁` come from the kernel itself; the diagonal
//! of `K₂` is obtained by Richardson extrapolation of symmetric off-diagonal
//! averages.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::error::{Error, Result};
use crate::geometry::{BoundaryCurve, CollocationGrid, Frame};
use crate::linalg::{CMatrix, CVec2, Mat2};
use crate::par;

type C64 = Complex64;

/// Strongest singularity a kernel carries on the diagonal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Singularity {
    Smooth,
    Log,
    /// Logarithmic plus a Cauchy principal-value part.
    LogCauchy,
}

/// A kernel on the parametrised boundary, taken with respect to `dτ`, so any
/// arc-length factor `|z'(τ)|` is already included.
pub trait BoundaryKernel: Sync {
    fn label(&self) -> String;

    fn singularity(&self) -> Singularity;

    /// Kernel value for `x ≠ y`.
    fn kernel(&self, x: &Frame, y: &Frame) -> Result<Mat2>;

    /// Coefficient of `ln(4 sin²((t − τ)/2))`; must also be defined for `x = y`.
    fn log_part(&self, _x: &Frame, _y: &Frame) -> Mat2 {
        Mat2::ZERO
    }

    /// Coefficient `c(t)` of `cot((τ − t)/2)`.
    fn cauchy_part(&self, _x: &Frame) -> Mat2 {
        Mat2::ZERO
    }
}

/// Weights `R_j(t_k)` for `∫ ln(4 sin²((t_k − τ)/2)) f(τ) dτ ≈ Σ_j R_j(t_k) f(t_j)`.
///
/// They depend only on `(k − j) mod 2n`, which is how they are stored.
#[derive(Debug, Clone, PartialEq)]
pub struct LogWeights {
    n: usize,
    by_offset: Vec<f64>,
}

impl LogWeights {
    pub fn get(&self, k: usize, j: usize) -> f64 {
        let m = 2 * self.n;
        self.by_offset[(k + m - j) % m]
    }

    pub fn n(&self) -> usize {
        self.n
    }
}

pub fn log_weights(n: usize) -> LogWeights {
    let nf = n as f64;
    let by_offset = (0..2 * n)
        .map(|d| {
            let s = d as f64 * PI / nf;
            let sum: f64 = (1..n).map(|m| (m as f64 * s).cos() / m as f64).sum();
            -2.0 * PI / nf * sum - PI / (nf * nf) * (nf * s).cos()
        })
        .collect();
    LogWeights { n, by_offset }
}

/// Weights `T_kj` with `(1/2π) PV∫ cot((τ − t_k)/2) f(τ) dτ ≈ Σ_j T_kj f(t_j)`.
pub fn cauchy_weight(n: usize, k: usize, j: usize) -> f64 {
    let d = k as i64 - j as i64;
    if d.rem_euclid(2) == 0 {
        return 0.0;
    }
    let s = (j as f64 - k as f64) * PI / n as f64;
    1.0 / n as f64 / (0.5 * s).tan()
}

/// Entry `(k, j)` of the trigonometric differentiation matrix on `2n` nodes.
pub fn diff_weight(n: usize, k: usize, j: usize) -> f64 {
    if k == j {
        return 0.0;
    }
    let d = k as i64 - j as i64;
    let sign = if d.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    0.5 * sign / (0.5 * d as f64 * PI / n as f64).tan()
}

/// Dense `4n × 4n` operator on interleaved 2-vector densities:
/// row `2k + a`, column `2j + b` couples component `b` at node `j` to
/// component `a` at node `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteOperator {
    pub matrix: CMatrix,
    pub grid: CollocationGrid,
    pub label: String,
}

impl DiscreteOperator {
    pub fn zeros(grid: CollocationGrid, label: &str) -> Self {
        let m = 2 * grid.len();
        DiscreteOperator { matrix: CMatrix::zeros(m, m), grid, label: label.into() }
    }

    pub fn identity(grid: CollocationGrid) -> Self {
        DiscreteOperator { matrix: CMatrix::identity(2 * grid.len()), grid, label: "I".into() }
    }

    /// Trigonometric differentiation `d/dt`, acting on each component.
    pub fn differentiation(grid: CollocationGrid) -> Self {
        let nn = grid.len();
        let mut op = DiscreteOperator::zeros(grid, "d/dt");
        for k in 0..nn {
            for j in 0..nn {
                let w = C64::from(diff_weight(grid.n(), k, j));
                op.matrix[(2 * k, 2 * j)] = w;
                op.matrix[(2 * k + 1, 2 * j + 1)] = w;
            }
        }
        op
    }

    pub fn block(&self, k: usize, j: usize) -> Mat2 {
        let m = &self.matrix;
        Mat2([[m[(2 * k, 2 * j)], m[(2 * k, 2 * j + 1)]], [m[(2 * k + 1, 2 * j)], m[(2 * k + 1, 2 * j + 1)]]])
    }

    /// `Σ s_i · op_i`, all on the same grid.
    pub fn combination(terms: &[(C64, &DiscreteOperator)], label: &str) -> Result<Self> {
        let grid = terms.first().map(|t| t.1.grid).ok_or(Error::Representation("empty operator combination"))?;
        let mut out = DiscreteOperator::zeros(grid, label);
        for (s, op) in terms {
            if op.grid != grid {
                return Err(Error::GridMismatch { expected: grid.len(), found: op.grid.len() });
            }
            out.matrix.add_scaled(*s, &op.matrix);
        }
        Ok(out)
    }

    pub fn compose(&self, other: &DiscreteOperator, label: &str) -> Result<Self> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch { expected: self.grid.len(), found: other.grid.len() });
        }
        Ok(DiscreteOperator { matrix: self.matrix.matmul(&other.matrix), grid: self.grid, label: label.into() })
    }

    /// Multiplies block row `k` by the scalar `s[k]`.
    pub fn scale_rows(&mut self, s: &[f64]) {
        for (k, &sk) in s.iter().enumerate() {
            for a in 0..2 {
                for v in self.matrix.row_mut(2 * k + a) {
                    *v *= sk;
                }
            }
        }
    }
}

/// Flattens a 2-vector field into the interleaved layout.
pub fn interleave(field: &[CVec2]) -> Vec<C64> {
    field.iter().flat_map(|v| [v[0], v[1]]).collect()
}

/// Inverse of [`interleave`].
pub fn deinterleave(flat: &[C64]) -> Vec<CVec2> {
    flat.chunks_exact(2).map(|c| [c[0], c[1]]).collect()
}

/// Matrix-vector product in the interleaved layout.
pub fn apply(op: &DiscreteOperator, density: &[CVec2]) -> Result<Vec<CVec2>> {
    if density.len() != op.grid.len() {
        return Err(Error::GridMismatch { expected: op.grid.len(), found: density.len() });
    }
    Ok(deinterleave(&op.matrix.matvec(&interleave(density))))
}

/// `ln(4 sin²(s/2))`.
fn log_kernel(s: f64) -> f64 {
    let v = 2.0 * (0.5 * s).sin();
    (v * v).ln()
}

fn smooth_remainder<K: BoundaryKernel + ?Sized>(
    kernel: &K,
    class: Singularity,
    x: &Frame,
    t: f64,
    y: &Frame,
    tau: f64,
    cauchy: &Mat2,
) -> Result<Mat2> {
    let mut k2 = kernel.kernel(x, y)?;
    if class != Singularity::Smooth {
        k2 = k2 - kernel.log_part(x, y).scale_re(log_kernel(t - tau));
    }
    if class == Singularity::LogCauchy {
        k2 = k2 - cauchy.scale_re(1.0 / (0.5 * (tau - t)).tan());
    }
    Ok(k2)
}

const RICHARDSON_H0: f64 = 0.02;
const RICHARDSON_LEVELS: usize = 5;

/// Limit of the smooth remainder at `τ = t` by Neville extrapolation in `h²`
/// of symmetric averages.
fn diagonal_limit<K: BoundaryKernel + ?Sized>(
    kernel: &K,
    class: Singularity,
    curve: &BoundaryCurve,
    x: &Frame,
    t: f64,
    cauchy: &Mat2,
) -> Result<Mat2> {
    if class == Singularity::Smooth {
        if let Ok(v) = kernel.kernel(x, x) {
            return Ok(v);
        }
    }
    let mut hs = [0.0; RICHARDSON_LEVELS];
    let mut vals = [Mat2::ZERO; RICHARDSON_LEVELS];
    for i in 0..RICHARDSON_LEVELS {
        let h = RICHARDSON_H0 / (1u32 << i) as f64;
        let yp = curve.frame(t + h)?;
        let ym = curve.frame(t - h)?;
        let kp = smooth_remainder(kernel, class, x, t, &yp, t + h, cauchy)?;
        let km = smooth_remainder(kernel, class, x, t, &ym, t - h, cauchy)?;
        hs[i] = h * h;
        vals[i] = (kp + km).scale_re(0.5);
    }
    // Neville's scheme evaluated at h² = 0.
    for level in 1..RICHARDSON_LEVELS {
        for i in 0..RICHARDSON_LEVELS - level {
            let (a, b) = (hs[i], hs[i + level]);
            vals[i] = (vals[i + 1].scale_re(a) - vals[i].scale_re(b)).scale_re(1.0 / (a - b));
        }
    }
    Ok(vals[0])
}

/// Checks the declared class against the kernel: its advertised singular
/// parts and the behaviour of the remainder approaching the diagonal.
fn check_singularity<K: BoundaryKernel + ?Sized>(
    kernel: &K,
    declared: Singularity,
    curve: &BoundaryCurve,
    t: f64,
) -> Result<()> {
    let x = curve.frame(t)?;
    let cauchy = kernel.cauchy_part(&x);
    let probe = curve.frame(t + 0.3)?;
    let log = kernel.log_part(&x, &probe);
    let mismatch = |reason: String| Error::SingularityMismatch { label: kernel.label(), reason };
    match declared {
        Singularity::Smooth if log.norm() > 0.0 || cauchy.norm() > 0.0 => {
            return Err(mismatch("declared smooth but the kernel has singular parts".into()));
        }
        Singularity::Log if cauchy.norm() > 0.0 => {
            return Err(mismatch("declared logarithmic but the kernel has a Cauchy part".into()));
        }
        _ => {}
    }
    // The remainder must approach its diagonal value at least linearly.
    let mut r = [Mat2::ZERO; 3];
    for (i, h) in [1e-3, 1e-4, 1e-5].into_iter().enumerate() {
        let y = curve.frame(t + h)?;
        r[i] = smooth_remainder(kernel, declared, &x, t, &y, t + h, &cauchy)?;
    }
    let scale = r[0].norm().max(kernel.kernel(&x, &probe)?.norm()).max(1e-300);
    let d1 = (r[0] - r[1]).norm();
    let d2 = (r[1] - r[2]).norm();
    if d1 > 1e-7 * scale && d2 > 0.5 * d1 {
        return Err(mismatch(format!(
            "remainder does not settle near the diagonal (steps {d1:.3e}, {d2:.3e}) for class {declared:?}"
        )));
    }
    Ok(())
}

/// Assembles the Nyström matrix of `kernel` on `grid`.
pub fn split_and_assemble<K: BoundaryKernel + ?Sized>(
    kernel: &K,
    curve: &BoundaryCurve,
    grid: &CollocationGrid,
    singularity: Singularity,
) -> Result<DiscreteOperator> {
    check_singularity(kernel, singularity, curve, 0.4)?;
    let nn = grid.len();
    let n = grid.n();
    let frames = grid.frames(curve)?;
    let logw = log_weights(n);
    let trap = grid.weight();
    let rows: Vec<Result<Vec<Mat2>>> = par::map_indices(nn, |k| {
        let x = &frames[k];
        let t = grid.node(k);
        let cauchy = if singularity == Singularity::LogCauchy { kernel.cauchy_part(x) } else { Mat2::ZERO };
        let mut row = vec![Mat2::ZERO; nn];
        for (j, y) in frames.iter().enumerate() {
            let tau = grid.node(j);
            let mut block = if j == k {
                diagonal_limit(kernel, singularity, curve, x, t, &cauchy)?.scale_re(trap)
            } else {
                smooth_remainder(kernel, singularity, x, t, y, tau, &cauchy)?.scale_re(trap)
            };
            if singularity != Singularity::Smooth {
                block += kernel.log_part(x, y).scale_re(logw.get(k, j));
            }
            if singularity == Singularity::LogCauchy {
                let w = cauchy_weight(n, k, j);
                if w != 0.0 {
                    block += cauchy.scale_re(2.0 * PI * w);
                }
            }
            row[j] = block;
        }
        Ok(row)
    });
    let mut op = DiscreteOperator::zeros(*grid, &kernel.label());
    for (k, row) in rows.into_iter().enumerate() {
        for (j, b) in row?.into_iter().enumerate() {
            for a in 0..2 {
                for c in 0..2 {
                    op.matrix[(2 * k + a, 2 * j + c)] = b.0[a][c];
                }
            }
        }
    }
    Ok(op)
}
