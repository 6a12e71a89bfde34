//! Cartesian derivatives of `A I + D X Xᵀ` and the traction-applied kernels
//! built from them.

use num_complex::Complex64;

use super::radial::Jets;
use crate::linalg::Mat2;
use crate::media::ElasticMedium;

type C64 = Complex64;

fn kd(a: usize, b: usize) -> f64 {
    if a == b {
        1.0
    } else {
        0.0
    }
}

pub(crate) fn phi(j: &Jets, x: [f64; 2]) -> Mat2 {
    let mut m = Mat2::ZERO;
    for a in 0..2 {
        for b in 0..2 {
            m.0[a][b] = j[0] * kd(a, b) + j[3] * (x[a] * x[b]);
        }
    }
    m
}

/// `grad[c] = ∂Φ/∂x_c`.
pub(crate) fn grad(j: &Jets, x: [f64; 2]) -> [Mat2; 2] {
    let [_, da, _, d, dd, _] = *j;
    core::array::from_fn(|c| {
        let mut m = Mat2::ZERO;
        for a in 0..2 {
            for b in 0..2 {
                m.0[a][b] =
                    da * (x[c] * kd(a, b)) + dd * (x[c] * x[a] * x[b]) + d * (kd(a, c) * x[b] + kd(b, c) * x[a]);
            }
        }
        m
    })
}

/// `hess[d][c] = ∂²Φ/∂x_d∂x_c`.
pub(crate) fn hess(j: &Jets, x: [f64; 2]) -> [[Mat2; 2]; 2] {
    let [_, da, dda, d, dd, ddd] = *j;
    core::array::from_fn(|dx| {
        core::array::from_fn(|c| {
            let mut m = Mat2::ZERO;
            for a in 0..2 {
                for b in 0..2 {
                    let xa = x[a];
                    let xb = x[b];
                    let v = dda * (x[c] * x[dx] * kd(a, b))
                        + da * (kd(c, dx) * kd(a, b))
                        + ddd * (x[dx] * x[c] * xa * xb)
                        + dd * (kd(c, dx) * xa * xb + x[c] * kd(a, dx) * xb + x[c] * xa * kd(b, dx))
                        + dd * (x[dx] * (kd(a, c) * xb + kd(b, c) * xa))
                        + d * (kd(a, c) * kd(b, dx) + kd(b, c) * kd(a, dx));
                    m.0[a][b] = v;
                }
            }
            m
        })
    })
}

/// Traction in `x` of every column: `T_x Φ`.
pub(crate) fn traction_x(medium: &ElasticMedium, g: &[Mat2; 2], nx: [f64; 2]) -> Mat2 {
    let mut out = Mat2::ZERO;
    for beta in 0..2 {
        let gu: [[C64; 2]; 2] = core::array::from_fn(|c| core::array::from_fn(|a| g[c].0[a][beta]));
        let t = medium.traction_from_gradient(&gu, nx);
        out.0[0][beta] = t[0];
        out.0[1][beta] = t[1];
    }
    out
}

/// Traction in `y` of every column, `T_y Φ`, from the `x`-gradient.
pub(crate) fn traction_y(medium: &ElasticMedium, g: &[Mat2; 2], ny: [f64; 2]) -> Mat2 {
    let neg = [-g[0], -g[1]];
    traction_x(medium, &neg, ny)
}

/// `T_x [T_y Φ]ᵀ` from the `x`-Hessian.
pub(crate) fn traction_xy(medium: &ElasticMedium, h: &[[Mat2; 2]; 2], nx: [f64; 2], ny: [f64; 2]) -> Mat2 {
    // x-gradient of [T_y Φ]ᵀ: ∂_d [T_y Φ]ᵀ = [T_y ∂_d Φ]ᵀ
    let g: [Mat2; 2] = core::array::from_fn(|d| traction_y(medium, &h[d], ny).transpose());
    traction_x(medium, &g, nx)
}
