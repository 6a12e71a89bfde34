//! Closed boundary curves: the benchmark shapes, radial trigonometric curves
//! and the equidistant collocation grid.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::error::{Error, Result};
use crate::rotate_q;

/// Local geometry of a curve at one parameter value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frame {
    pub z: [f64; 2],
    pub dz: [f64; 2],
    pub ddz: [f64; 2],
    /// `|z'(t)|`
    pub speed: f64,
    pub normal: [f64; 2],
    pub tangent: [f64; 2],
}

/// A `2π`-periodic, `C²` parametrisation.
#[derive(Debug, Clone, PartialEq)]
pub enum BoundaryCurve {
    Circle { center: [f64; 2], radius: f64 },
    Peanut,
    Apple,
    Kite,
    Radial(RadialTrigCurve),
}

pub fn peanut() -> BoundaryCurve {
    BoundaryCurve::Peanut
}

pub fn apple() -> BoundaryCurve {
    BoundaryCurve::Apple
}

pub fn kite() -> BoundaryCurve {
    BoundaryCurve::Kite
}

pub fn circle(radius: f64) -> BoundaryCurve {
    BoundaryCurve::Circle { center: [0.0, 0.0], radius }
}

/// `(r, r', r'')` of a starlike curve given in polar form.
type Radial3 = (f64, f64, f64);

fn peanut_radial(t: f64) -> Radial3 {
    // 0.5 cos² + 0.15 sin² = a + b cos 2t
    let (a, b) = (0.325, 0.175);
    let (s2, c2) = (2.0 * t).sin_cos();
    let r = (a + b * c2).sqrt();
    let r1 = -b * s2 / r;
    let r2 = (-2.0 * b * c2 - r1 * r1) / r;
    (r, r1, r2)
}

fn apple_radial(t: f64) -> Radial3 {
    let (s, c) = t.sin_cos();
    let (s2, c2) = (2.0 * t).sin_cos();
    let num = 0.45 + 0.3 * c - 0.1 * s2;
    let num1 = -0.3 * s - 0.2 * c2;
    let num2 = -0.3 * c + 0.4 * s2;
    let den = 1.0 + 0.7 * c;
    let den1 = -0.7 * s;
    let den2 = -0.7 * c;
    let r = num / den;
    let r1 = (num1 - r * den1) / den;
    let r2 = (num2 - 2.0 * r1 * den1 - r * den2) / den;
    (r, r1, r2)
}

fn polar_to_curve((r, r1, r2): Radial3, t: f64) -> [[f64; 2]; 3] {
    let (s, c) = t.sin_cos();
    [[r * c, r * s], [r1 * c - r * s, r1 * s + r * c], [(r2 - r) * c - 2.0 * r1 * s, (r2 - r) * s + 2.0 * r1 * c]]
}

impl BoundaryCurve {
    /// `[z, z', z'']` at `t`.
    pub fn jet(&self, t: f64) -> [[f64; 2]; 3] {
        match self {
            BoundaryCurve::Circle { center, radius } => {
                let (s, c) = t.sin_cos();
                [
                    [center[0] + radius * c, center[1] + radius * s],
                    [-radius * s, radius * c],
                    [-radius * c, -radius * s],
                ]
            }
            BoundaryCurve::Peanut => polar_to_curve(peanut_radial(t), t),
            BoundaryCurve::Apple => polar_to_curve(apple_radial(t), t),
            BoundaryCurve::Kite => {
                let (s, c) = t.sin_cos();
                let (s2, c2) = (2.0 * t).sin_cos();
                [[c + 0.7 * c2, 1.2 * s], [-s - 1.4 * s2, 1.2 * c], [-c - 2.8 * c2, -1.2 * s]]
            }
            BoundaryCurve::Radial(r) => polar_to_curve((r.radius(t), r.deriv(t), r.deriv2(t)), t),
        }
    }

    pub fn eval(&self, t: f64) -> [f64; 2] {
        self.jet(t)[0]
    }

    pub fn deriv1(&self, t: f64) -> [f64; 2] {
        self.jet(t)[1]
    }

    pub fn deriv2(&self, t: f64) -> [f64; 2] {
        self.jet(t)[2]
    }

    /// Radial function in polar form, if the parametrisation is `r(t)(cos t, sin t)`.
    pub fn polar_radius(&self, t: f64) -> Option<f64> {
        match self {
            BoundaryCurve::Circle { center, radius } if *center == [0.0, 0.0] => Some(*radius),
            BoundaryCurve::Peanut => Some(peanut_radial(t).0),
            BoundaryCurve::Apple => Some(apple_radial(t).0),
            BoundaryCurve::Radial(r) => Some(r.radius(t)),
            _ => None,
        }
    }

    /// Distance from the origin to the curve along the ray at polar angle
    /// `theta`. For curves not given in polar form the ray is intersected
    /// numerically, which assumes the curve is starlike about the origin.
    pub fn radius_along_ray(&self, theta: f64) -> f64 {
        if let Some(r) = self.polar_radius(theta) {
            return r;
        }
        // Unwrapped polar angle of z(t) is increasing on a starlike curve;
        // bracket on a coarse table, then bisect.
        const SAMPLES: usize = 512;
        let polar = |t: f64| {
            let z = self.eval(t);
            z[1].atan2(z[0])
        };
        let wrap = |a: f64| {
            let a = positive_angle(a);
            if a > PI {
                a - 2.0 * PI
            } else {
                a
            }
        };
        let base = polar(0.0);
        let goal = base + positive_angle(theta - base);
        let mut prev = (0.0, base);
        let mut bracket = (0.0, 2.0 * PI, base);
        for i in 1..=SAMPLES {
            let t = 2.0 * PI * i as f64 / SAMPLES as f64;
            let a = prev.1 + wrap(polar(t) - prev.1);
            if a >= goal {
                bracket = (prev.0, t, prev.1);
                break;
            }
            prev = (t, a);
        }
        let (mut ta, mut tb, anchor) = bracket;
        for _ in 0..60 {
            let tm = 0.5 * (ta + tb);
            if anchor + wrap(polar(tm) - anchor) < goal {
                ta = tm;
            } else {
                tb = tm;
            }
        }
        let z = self.eval(0.5 * (ta + tb));
        z[0].hypot(z[1])
    }

    /// Frame at `t`; fails if `|z'(t)|` vanishes.
    pub fn frame(&self, t: f64) -> Result<Frame> {
        let [z, dz, ddz] = self.jet(t);
        let speed = dz[0].hypot(dz[1]);
        if !(speed > 1e-14) {
            return Err(Error::DegenerateCurve { t });
        }
        let tangent = [dz[0] / speed, dz[1] / speed];
        Ok(Frame { z, dz, ddz, speed, normal: rotate_q(tangent), tangent })
    }

    /// Winding number of the curve around `p`, or `None` if `p` is within
    /// numerical distance of the curve.
    pub fn winding_number(&self, p: [f64; 2]) -> Option<i32> {
        const SAMPLES: usize = 2048;
        let mut total = 0.0;
        let mut prev = {
            let z = self.eval(0.0);
            (z[1] - p[1]).atan2(z[0] - p[0])
        };
        let mut min_dist = f64::INFINITY;
        for i in 1..=SAMPLES {
            let z = self.eval(2.0 * PI * i as f64 / SAMPLES as f64);
            min_dist = min_dist.min((z[0] - p[0]).hypot(z[1] - p[1]));
            let a = (z[1] - p[1]).atan2(z[0] - p[0]);
            let mut d = a - prev;
            if d > PI {
                d -= 2.0 * PI;
            } else if d < -PI {
                d += 2.0 * PI;
            }
            total += d;
            prev = a;
        }
        if min_dist < 1e-3 {
            return None;
        }
        Some((total / (2.0 * PI)).round() as i32)
    }
}

/// `a` reduced to `[0, 2π)`.
fn positive_angle(a: f64) -> f64 {
    let r = a - 2.0 * PI * (a / (2.0 * PI)).floor();
    if r >= 2.0 * PI {
        0.0
    } else {
        r
    }
}

/// Frame of `curve` at `t`.
pub fn frame(curve: &BoundaryCurve, t: f64) -> Result<Frame> {
    curve.frame(t)
}

/// `r(t) = Σ a_k cos kt + Σ b_k sin kt`.
#[derive(Debug, Clone, PartialEq)]
pub struct RadialTrigCurve {
    a: Vec<f64>,
    b: Vec<f64>,
}

impl RadialTrigCurve {
    /// `a` holds `a_0..a_m`, `b` holds `b_1..b_m`.
    pub fn new(a: Vec<f64>, b: Vec<f64>) -> Result<Self> {
        if a.is_empty() || b.len() + 1 != a.len() {
            return Err(Error::InvalidParameter {
                name: "coefficients",
                reason: format!("need m+1 cosine and m sine coefficients, got {} and {}", a.len(), b.len()),
            });
        }
        Ok(RadialTrigCurve { a, b })
    }

    pub fn constant(r0: f64, m: usize) -> Self {
        let mut a = vec![0.0; m + 1];
        a[0] = r0;
        RadialTrigCurve { a, b: vec![0.0; m] }
    }

    pub fn zeros(m: usize) -> Self {
        RadialTrigCurve::constant(0.0, m)
    }

    /// Coefficients in the order `(a_0..a_m, b_1..b_m)`.
    pub fn from_coefficients(x: &[f64]) -> Result<Self> {
        if x.len() % 2 == 0 {
            return Err(Error::InvalidParameter {
                name: "coefficients",
                reason: format!("coefficient vector must have odd length 2m+1, got {}", x.len()),
            });
        }
        let m = x.len() / 2;
        Ok(RadialTrigCurve { a: x[..=m].to_vec(), b: x[m + 1..].to_vec() })
    }

    pub fn coefficients(&self) -> Vec<f64> {
        let mut x = self.a.clone();
        x.extend_from_slice(&self.b);
        x
    }

    pub fn degree(&self) -> usize {
        self.b.len()
    }

    pub fn cos_coeffs(&self) -> &[f64] {
        &self.a
    }

    pub fn sin_coeffs(&self) -> &[f64] {
        &self.b
    }

    /// Value of the `j`-th basis function (same order as
    /// [`coefficients`](Self::coefficients)) and its derivative at `t`.
    pub fn basis(m: usize, j: usize, t: f64) -> (f64, f64) {
        if j <= m {
            let k = j as f64;
            let (s, c) = (k * t).sin_cos();
            (c, -k * s)
        } else {
            let k = (j - m) as f64;
            let (s, c) = (k * t).sin_cos();
            (s, k * c)
        }
    }

    fn series(&self, t: f64, order: u32) -> f64 {
        let mut sum = 0.0;
        for (k, &ak) in self.a.iter().enumerate() {
            let kf = k as f64;
            let (s, c) = (kf * t).sin_cos();
            let bk = if k == 0 { 0.0 } else { self.b[k - 1] };
            sum += match order {
                0 => ak * c + bk * s,
                1 => kf * (-ak * s + bk * c),
                _ => -kf * kf * (ak * c + bk * s),
            };
        }
        sum
    }

    pub fn radius(&self, t: f64) -> f64 {
        self.series(t, 0)
    }

    pub fn deriv(&self, t: f64) -> f64 {
        self.series(t, 1)
    }

    pub fn deriv2(&self, t: f64) -> f64 {
        self.series(t, 2)
    }

    /// Smallest radius over `samples` equidistant angles.
    pub fn min_radius(&self, samples: usize) -> (f64, f64) {
        (0..samples)
            .map(|j| {
                let t = 2.0 * PI * j as f64 / samples as f64;
                (t, self.radius(t))
            })
            .fold((0.0, f64::INFINITY), |acc, x| if x.1 < acc.1 { x } else { acc })
    }

    /// Checks positivity on `samples` equidistant angles.
    pub fn check_positive(&self, samples: usize) -> Result<()> {
        let (t, radius) = self.min_radius(samples);
        if radius > 0.0 {
            Ok(())
        } else {
            Err(Error::NonPositiveRadius { t, radius })
        }
    }

    /// Coefficient-wise sum, zero-padding the lower-degree operand.
    pub fn add(&self, other: &RadialTrigCurve) -> RadialTrigCurve {
        let m = self.degree().max(other.degree());
        let mut out = RadialTrigCurve::zeros(m);
        for (k, v) in self.a.iter().enumerate() {
            out.a[k] += v;
        }
        for (k, v) in other.a.iter().enumerate() {
            out.a[k] += v;
        }
        for (k, v) in self.b.iter().enumerate() {
            out.b[k] += v;
        }
        for (k, v) in other.b.iter().enumerate() {
            out.b[k] += v;
        }
        out
    }

    pub fn scaled(&self, s: f64) -> RadialTrigCurve {
        RadialTrigCurve { a: self.a.iter().map(|v| v * s).collect(), b: self.b.iter().map(|v| v * s).collect() }
    }

    /// Discrete Fourier coefficients of degree `m` from samples on a
    /// collocation grid; exact for trigonometric polynomials when `m < n`.
    pub fn interpolate(grid: &CollocationGrid, samples: &[f64], m: usize) -> Result<Self> {
        if samples.len() != grid.len() {
            return Err(Error::GridMismatch { expected: grid.len(), found: samples.len() });
        }
        if m >= grid.n() {
            return Err(Error::InvalidParameter {
                name: "m",
                reason: format!("degree {m} must be below the grid half-count {}", grid.n()),
            });
        }
        let n = grid.n() as f64;
        let mut a = vec![0.0; m + 1];
        let mut b = vec![0.0; m];
        for (j, &f) in samples.iter().enumerate() {
            let t = grid.node(j);
            a[0] += f / (2.0 * n);
            for k in 1..=m {
                let (s, c) = (k as f64 * t).sin_cos();
                a[k] += f * c / n;
                b[k - 1] += f * s / n;
            }
        }
        Ok(RadialTrigCurve { a, b })
    }
}

/// `r + q`, checked for positivity on a fine angular table.
pub fn radial_update(r: &RadialTrigCurve, q: &RadialTrigCurve) -> Result<RadialTrigCurve> {
    let out = r.add(q);
    out.check_positive(POSITIVITY_SAMPLES.max(8 * (out.degree() + 1)))?;
    Ok(out)
}

/// Angular resolution of the positivity check in [`radial_update`].
pub const POSITIVITY_SAMPLES: usize = 256;

/// Perturbation vector field `q(t)(cos t, sin t)` sampled at one angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PerturbationSample {
    pub q: [f64; 2],
    pub dq: [f64; 2],
    /// `Q q'(t)`
    pub v: [f64; 2],
}

pub fn perturbation_field(q: &RadialTrigCurve, t: f64) -> PerturbationSample {
    perturbation_from_values(q.radius(t), q.deriv(t), t)
}

/// Same as [`perturbation_field`] from the scalar values `q(t)`, `q'(t)`.
pub fn perturbation_from_values(q: f64, dq: f64, t: f64) -> PerturbationSample {
    let (s, c) = t.sin_cos();
    let qv = [q * c, q * s];
    let dqv = [dq * c - q * s, dq * s + q * c];
    PerturbationSample { q: qv, dq: dqv, v: rotate_q(dqv) }
}

/// `2n` equidistant nodes `t_j = jπ/n` on `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CollocationGrid {
    n: usize,
}

impl CollocationGrid {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidParameter {
                name: "n",
                reason: format!("grid half-count must be at least 2, got {n}"),
            });
        }
        Ok(CollocationGrid { n })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Node count `2n`.
    pub fn len(&self) -> usize {
        2 * self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn node(&self, j: usize) -> f64 {
        j as f64 * PI / self.n as f64
    }

    pub fn nodes(&self) -> Vec<f64> {
        (0..self.len()).map(|j| self.node(j)).collect()
    }

    /// Trapezoid weight `π/n`.
    pub fn weight(&self) -> f64 {
        PI / self.n as f64
    }

    pub fn frames(&self, curve: &BoundaryCurve) -> Result<Vec<Frame>> {
        (0..self.len()).map(|j| curve.frame(self.node(j))).collect()
    }
}

/// `L²(0, 2π)` distance between the radial functions of two curves, by the
/// trapezoid rule on `samples` angles.
pub fn radial_l2_error(a: &BoundaryCurve, b: &BoundaryCurve, samples: usize) -> f64 {
    let h = 2.0 * PI / samples as f64;
    let s: f64 = (0..samples)
        .map(|j| {
            let t = j as f64 * h;
            let d = a.radius_along_ray(t) - b.radius_along_ray(t);
            d * d
        })
        .sum();
    (s * h).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn shape_values() {
        let z = peanut().eval(0.0);
        assert_relative_eq!(z[0], 0.5f64.sqrt(), max_relative = 1e-15);
        assert_eq!(z[1], 0.0);
        assert_relative_eq!(apple().polar_radius(0.0).unwrap(), 0.75 / 1.7, max_relative = 1e-15);
        assert_eq!(kite().eval(0.0), [1.7, 0.0]);
        let z = peanut().eval(PI / 2.0);
        assert!(z[0].abs() < 1e-15);
        assert_relative_eq!(z[1], 0.15f64.sqrt(), max_relative = 1e-14);
    }

    #[test]
    fn frames() {
        let f = circle(1.0).frame(0.0).unwrap();
        assert_eq!(f.normal, [1.0, 0.0]);
        assert_eq!(f.tangent, [0.0, 1.0]);
        assert_eq!(f.speed, 1.0);
        let f = kite().frame(0.0).unwrap();
        assert_relative_eq!(f.speed, 1.2);
        assert_eq!(f.dz, [0.0, 1.2]);
        assert_eq!(f.tangent, [0.0, 1.0]);
        assert_eq!(f.normal, [1.0, 0.0]);
    }

    #[test]
    fn degenerate_curve_is_reported() {
        let c = BoundaryCurve::Radial(RadialTrigCurve::constant(0.0, 1));
        assert!(matches!(c.frame(0.3), Err(Error::DegenerateCurve { .. })));
    }

    #[test]
    fn radial_update_examples() {
        let r = RadialTrigCurve::constant(0.5, 2);
        assert_eq!(radial_update(&r, &RadialTrigCurve::zeros(2)).unwrap(), r);
        let s = radial_update(&r, &RadialTrigCurve::constant(0.1, 2)).unwrap();
        assert_relative_eq!(s.radius(1.0), 0.6, max_relative = 1e-15);
        assert!(matches!(radial_update(&r, &RadialTrigCurve::constant(-0.6, 2)), Err(Error::NonPositiveRadius { .. })));
    }

    #[test]
    fn perturbation_examples() {
        let p = perturbation_field(&RadialTrigCurve::constant(1.0, 0), 0.0);
        assert_eq!(p.q, [1.0, 0.0]);
        assert_eq!(p.dq, [0.0, 1.0]);
        assert_eq!(p.v, [1.0, 0.0]);
        let p = perturbation_field(&RadialTrigCurve::zeros(3), 0.7);
        assert_eq!((p.q, p.dq), ([0.0, 0.0], [0.0, 0.0]));
        let cos = RadialTrigCurve::new(vec![0.0, 1.0], vec![0.0]).unwrap();
        let p = perturbation_field(&cos, 0.0);
        assert_eq!(p.q, [1.0, 0.0]);
        assert!(p.dq[0].abs() < 1e-15);
        assert_relative_eq!(p.dq[1], 1.0);
    }

    #[test]
    fn kite_ray_intersection_hits_the_curve() {
        let k = kite();
        for &theta in &[0.0, 0.4, 1.7, PI, 4.0, 6.0] {
            let r = k.radius_along_ray(theta);
            let p = [r * theta.cos(), r * theta.sin()];
            // p lies on the curve: distance to a fine sampling is tiny.
            let d = (0..20000)
                .map(|j| {
                    let z = k.eval(2.0 * PI * j as f64 / 20000.0);
                    (z[0] - p[0]).hypot(z[1] - p[1])
                })
                .fold(f64::INFINITY, f64::min);
            assert!(d < 1e-3, "theta {theta}: distance {d}");
        }
        assert_relative_eq!(k.radius_along_ray(0.0), 1.7, max_relative = 1e-10);
    }

    #[test]
    fn winding_numbers() {
        assert_eq!(peanut().winding_number([0.0, 0.2]), Some(1));
        assert_eq!(peanut().winding_number([0.4, 0.6]), Some(0));
        assert_eq!(kite().winding_number([0.5, 0.5]), Some(1));
        assert_eq!(kite().winding_number([-1.0, 0.5]), Some(0));
    }
}
