//! Radial functions of the fundamental tensor and their derivatives.
//!
//! The tensor is written `Φ = A(t) I + D(t) X Xᵀ` with `X = x − y`, `t = |X|`,
//! `A = Φ₁` and `D = Φ₂ / t²`. With `δf = f'(t) / t` every Cartesian
//! derivative of `Φ` up to second order is a polynomial in `X` whose
//! coefficients are the six jets `A, δA, δδA, D, δD, δδD`.
//!
//! Two evaluation routes are kept in sync:
//!
//! * a log-Laurent series `Σ (a_k + b_k ln t) t^k`, exact in its
//!   coefficients, used for small `k_s t` where the Hankel closed forms
//!   cancel catastrophically;
//! * closed forms `Σ c t^j Z_ν(k t)` built by symbolic differentiation and
//!   evaluated with Hankel functions.
//!
//! The coefficient of `ln t` in any of these functions is the same
//! expression with `H_ν` replaced by `(2i/π) J_ν`; in the series route it is
//! simply the `b` part.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::error::{Error, Result};
use crate::media::ElasticMedium;
use crate::specfun::{self, EULER_GAMMA};

type C64 = Complex64;

const I: C64 = C64::new(0.0, 1.0);
const ZERO: C64 = C64::new(0.0, 0.0);

/// Number of `m` terms kept in the Bessel series.
const SERIES_TERMS: usize = 26;
/// The series route is used for `k_s t` below this value.
const SERIES_SWITCH: f64 = 4.0;

/// `[A, δA, δδA, D, δD, δδD]`.
pub type Jets = [C64; 6];

/// Which part of the tensor to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Part {
    /// The dynamic tensor `Φ`.
    Full,
    /// `Φ − Φ⁽⁰⁾`, bounded at `t = 0`.
    Dynamic,
    /// The static (Kelvin) tensor `Φ⁽⁰⁾`.
    Static,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Basis {
    /// `Z_0(k_w t)`, `w = 0` for p, `1` for s.
    Z0(usize),
    Z1(usize),
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Term {
    coef: C64,
    pow: i32,
    basis: Basis,
}

/// `Σ coef · t^pow · Z(k t)`.
#[derive(Debug, Clone, PartialEq, Default)]
struct Closed(Vec<Term>);

impl Closed {
    fn push(&mut self, coef: C64, pow: i32, basis: Basis) {
        if let Some(t) = self.0.iter_mut().find(|t| t.pow == pow && t.basis == basis) {
            t.coef += coef;
        } else {
            self.0.push(Term { coef, pow, basis });
        }
    }

    fn scaled_pow(&self, s: C64, dp: i32) -> Closed {
        Closed(self.0.iter().map(|t| Term { coef: t.coef * s, pow: t.pow + dp, basis: t.basis }).collect())
    }

    /// `(1/t) d/dt`.
    fn delta(&self, k: [f64; 2]) -> Closed {
        let mut out = Closed::default();
        for t in &self.0 {
            let j = t.pow as f64;
            match t.basis {
                Basis::Z0(w) => {
                    if t.pow != 0 {
                        out.push(t.coef * j, t.pow - 2, Basis::Z0(w));
                    }
                    out.push(-t.coef * k[w], t.pow - 1, Basis::Z1(w));
                }
                Basis::Z1(w) => {
                    if t.pow != 1 {
                        out.push(t.coef * (j - 1.0), t.pow - 2, Basis::Z1(w));
                    }
                    out.push(t.coef * k[w], t.pow - 1, Basis::Z0(w));
                }
            }
        }
        out.0.retain(|t| t.coef != ZERO);
        out
    }

    /// `z[w] = [Z_0(k_w t), Z_1(k_w t)]`.
    fn eval(&self, t: f64, z: &[[C64; 2]; 2]) -> C64 {
        self.0
            .iter()
            .map(|term| {
                let b = match term.basis {
                    Basis::Z0(w) => z[w][0],
                    Basis::Z1(w) => z[w][1],
                };
                term.coef * b * t.powi(term.pow)
            })
            .sum()
    }
}

/// `Σ_{k ≥ lo} (a_k + b_k ln t) t^k`.
#[derive(Debug, Clone, PartialEq)]
struct Series {
    lo: i32,
    a: Vec<C64>,
    b: Vec<C64>,
}

impl Series {
    fn zeros(lo: i32, hi: i32) -> Self {
        let n = (hi - lo + 1) as usize;
        Series { lo, a: vec![ZERO; n], b: vec![ZERO; n] }
    }

    fn hi(&self) -> i32 {
        self.lo + self.a.len() as i32 - 1
    }

    fn idx(&self, k: i32) -> Option<usize> {
        if k < self.lo || k > self.hi() {
            None
        } else {
            Some((k - self.lo) as usize)
        }
    }

    fn a_at(&self, k: i32) -> C64 {
        self.idx(k).map_or(ZERO, |i| self.a[i])
    }

    fn b_at(&self, k: i32) -> C64 {
        self.idx(k).map_or(ZERO, |i| self.b[i])
    }

    fn set(&mut self, k: i32, a: C64, b: C64) {
        let i = self.idx(k).expect("series index in range");
        self.a[i] = a;
        self.b[i] = b;
    }

    /// `s · t^dp · self`.
    fn scaled_shift(&self, s: C64, dp: i32) -> Series {
        Series {
            lo: self.lo + dp,
            a: self.a.iter().map(|v| v * s).collect(),
            b: self.b.iter().map(|v| v * s).collect(),
        }
    }

    fn add(&self, other: &Series) -> Series {
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        let mut out = Series::zeros(lo, hi);
        for k in lo..=hi {
            out.set(k, self.a_at(k) + other.a_at(k), self.b_at(k) + other.b_at(k));
        }
        out
    }

    /// Drops powers above `hi`, which would be partial and inconsistent
    /// after shifts.
    fn truncated(mut self, hi: i32) -> Series {
        if self.hi() > hi {
            let n = (hi - self.lo + 1).max(0) as usize;
            self.a.truncate(n);
            self.b.truncate(n);
        }
        self
    }

    /// Zeroes all coefficients below power `k` (`a`) and `kb` (`b`).
    fn prune(&mut self, ka: i32, kb: i32) {
        for k in self.lo..=self.hi() {
            let i = (k - self.lo) as usize;
            if k < ka {
                self.a[i] = ZERO;
            }
            if k < kb {
                self.b[i] = ZERO;
            }
        }
    }

    /// `(1/t) d/dt`.
    fn delta(&self) -> Series {
        let mut out = Series::zeros(self.lo - 2, self.hi() - 2);
        for k in self.lo..=self.hi() {
            let (a, b) = (self.a_at(k), self.b_at(k));
            let kf = k as f64;
            let i = (k - self.lo) as usize;
            // d/dt (a t^k + b t^k ln t) = (k a + b) t^{k-1} + k b t^{k-1} ln t
            out.a[i] += a * kf + b;
            out.b[i] += b * kf;
        }
        out
    }

    fn eval(&self, t: f64) -> C64 {
        let lt = t.ln();
        let mut p = t.powi(self.lo);
        let mut s = ZERO;
        for (a, b) in self.a.iter().zip(&self.b) {
            s += (a + b * lt) * p;
            p *= t;
        }
        s
    }

    /// The `ln t` coefficient `Σ b_k t^k`; at `t = 0` only `b_0` survives.
    fn eval_log(&self, t: f64) -> C64 {
        if t == 0.0 {
            return self.b_at(0);
        }
        let mut p = t.powi(self.lo);
        let mut s = ZERO;
        for b in &self.b {
            s += b * p;
            p *= t;
        }
        s
    }
}

/// `H_0^{(1)}(k t)` as a log-Laurent series in `t`.
fn h0_series(k: f64) -> Series {
    let hi = 2 * SERIES_TERMS as i32;
    let mut s = Series::zeros(0, hi);
    let lk = (0.5 * k).ln();
    let half = 0.5 * k;
    let mut d = 1.0; // (-1)^m (k/2)^{2m} / (m!)^2
    let mut harmonic = 0.0;
    for m in 0..=SERIES_TERMS {
        if m > 0 {
            let mf = m as f64;
            d *= -half * half / (mf * mf);
            harmonic += 1.0 / mf;
        }
        let a = C64::new(d, 2.0 / PI * ((lk + EULER_GAMMA) * d - harmonic * d));
        let b = C64::new(0.0, 2.0 / PI * d);
        s.set(2 * m as i32, a, b);
    }
    s
}

/// `k H_1^{(1)}(k t)` as a log-Laurent series in `t`.
fn kh1_series(k: f64) -> Series {
    let hi = 2 * SERIES_TERMS as i32 + 1;
    let mut s = Series::zeros(-1, hi);
    s.set(-1, C64::new(0.0, -2.0 / PI), ZERO);
    let lk = (0.5 * k).ln();
    let half = 0.5 * k;
    let mut c = half; // (-1)^m (k/2)^{2m+1} / (m! (m+1)!)
    let mut harmonic = 0.0;
    for m in 0..=SERIES_TERMS {
        let mf = m as f64;
        if m > 0 {
            c *= -half * half / (mf * (mf + 1.0));
            harmonic += 1.0 / mf;
        }
        // ψ(m+1) + ψ(m+2) = -2γ + 2H_m + 1/(m+1)
        let psi = -2.0 * EULER_GAMMA + 2.0 * harmonic + 1.0 / (mf + 1.0);
        let a = C64::new(k * c, k * (2.0 / PI * lk * c - psi * c / PI));
        let b = C64::new(0.0, k * 2.0 / PI * c);
        s.set(2 * m as i32 + 1, a, b);
    }
    s
}

/// Precomputed radial machinery for one medium.
#[derive(Debug, Clone)]
pub struct RadialFunctions {
    k: [f64; 2],
    c_log: f64,
    c_dyad: f64,
    closed: [Closed; 6],
    full: [Series; 6],
    dynamic: [Series; 6],
}

fn jets_of(base_a: Series, base_d: Series) -> [Series; 6] {
    let da = base_a.delta();
    let dda = da.delta();
    let dd = base_d.delta();
    let ddd = dd.delta();
    [base_a, da, dda, base_d, dd, ddd]
}

impl RadialFunctions {
    pub fn new(medium: &ElasticMedium) -> Self {
        let (kp, ks) = medium.wavenumbers();
        let k = [kp, ks];
        let (lam, mu) = (medium.lambda(), medium.mu());
        let ro2 = medium.rho_omega2();
        let c_log = -(lam + 3.0 * mu) / (4.0 * PI * mu * (lam + 2.0 * mu));
        let c_dyad = (lam + mu) / (4.0 * PI * mu * (lam + 2.0 * mu));
        let fa = I / (4.0 * mu);
        let fb = I / (4.0 * ro2);

        // Closed forms.
        let mut a = Closed::default();
        a.push(fa, 0, Basis::Z0(1));
        a.push(-fb * ks, -1, Basis::Z1(1));
        a.push(fb * kp, -1, Basis::Z1(0));
        let mut phi2 = Closed::default();
        phi2.push(fb * 2.0 * ks, -1, Basis::Z1(1));
        phi2.push(-fb * ks * ks, 0, Basis::Z0(1));
        phi2.push(-fb * 2.0 * kp, -1, Basis::Z1(0));
        phi2.push(fb * kp * kp, 0, Basis::Z0(0));
        let d = phi2.scaled_pow(C64::new(1.0, 0.0), -2);
        let da = a.delta(k);
        let dda = da.delta(k);
        let dd = d.delta(k);
        let ddd = dd.delta(k);
        let closed = [a, da, dda, d, dd, ddd];

        // Series.
        let hi = 2 * SERIES_TERMS as i32 - 2;
        let h0 = [h0_series(kp), h0_series(ks)];
        let kh1 = [kh1_series(kp), kh1_series(ks)];
        let sa = h0[1]
            .scaled_shift(fa, 0)
            .add(&kh1[1].scaled_shift(-fb, -1))
            .add(&kh1[0].scaled_shift(fb, -1))
            .truncated(hi);
        let sphi2 = kh1[1]
            .scaled_shift(fb * 2.0, -1)
            .add(&h0[1].scaled_shift(-fb * ks * ks, 0))
            .add(&kh1[0].scaled_shift(-fb * 2.0, -1))
            .add(&h0[0].scaled_shift(fb * kp * kp, 0))
            .truncated(hi);
        let mut sa_full = sa;
        sa_full.prune(0, 0);
        let mut sd_full = sphi2.scaled_shift(C64::new(1.0, 0.0), -2);
        sd_full.prune(-2, 0);
        let mut sa_dyn = sa_full.clone();
        debug_assert!((sa_dyn.b_at(0) - c_log).norm() < 1e-12 * c_log.abs());
        sa_dyn.set(0, sa_dyn.a_at(0), ZERO);
        let mut sd_dyn = sd_full.clone();
        debug_assert!((sd_dyn.a_at(-2) - c_dyad).norm() < 1e-10 * c_dyad.abs());
        sd_dyn.prune(0, 0);

        RadialFunctions { k, c_log, c_dyad, closed, full: jets_of(sa_full, sd_full), dynamic: jets_of(sa_dyn, sd_dyn) }
    }

    /// Coefficient of `ln |x−y|` in the static tensor's `I` part.
    pub fn static_log_coefficient(&self) -> f64 {
        self.c_log
    }

    /// Coefficient of the static tensor's `J(x−y)` part.
    pub fn static_dyad_coefficient(&self) -> f64 {
        self.c_dyad
    }

    fn use_series(&self, t: f64) -> bool {
        self.k[1] * t < SERIES_SWITCH
    }

    fn static_jets(&self, t: f64) -> Jets {
        let (cl, cj) = (C64::from(self.c_log), C64::from(self.c_dyad));
        let t2 = 1.0 / (t * t);
        [cl * t.ln(), cl * t2, cl * (-2.0 * t2 * t2), cj * t2, cj * (-2.0 * t2 * t2), cj * (8.0 * t2 * t2 * t2)]
    }

    fn closed_jets(&self, t: f64, log_part: bool) -> Jets {
        let mut z = [[ZERO; 2]; 2];
        for w in 0..2 {
            let x = self.k[w] * t;
            if log_part {
                let (j0, j1) = specfun::bessel_j_pair(x);
                z[w] = [C64::new(0.0, 2.0 / PI * j0), C64::new(0.0, 2.0 / PI * j1)];
            } else {
                let h = specfun::hankel_pair(x).expect("positive argument");
                z[w] = [h.h0, h.h1];
            }
        }
        core::array::from_fn(|i| self.closed[i].eval(t, &z))
    }

    /// The six jets at `t > 0`.
    pub fn jets(&self, t: f64, part: Part) -> Result<Jets> {
        if !(t > 0.0) {
            return Err(Error::SingularPoint);
        }
        Ok(match part {
            Part::Static => self.static_jets(t),
            Part::Full if self.use_series(t) => core::array::from_fn(|i| self.full[i].eval(t)),
            Part::Dynamic if self.use_series(t) => core::array::from_fn(|i| self.dynamic[i].eval(t)),
            Part::Full => self.closed_jets(t, false),
            Part::Dynamic => {
                let f = self.closed_jets(t, false);
                let s = self.static_jets(t);
                core::array::from_fn(|i| f[i] - s[i])
            }
        })
    }

    /// Coefficients of `ln t` in the six jets, for any `t ≥ 0`.
    pub fn log_jets(&self, t: f64, part: Part) -> Jets {
        let static_log = [C64::from(self.c_log), ZERO, ZERO, ZERO, ZERO, ZERO];
        match part {
            Part::Static => static_log,
            Part::Full if self.use_series(t) => core::array::from_fn(|i| self.full[i].eval_log(t)),
            Part::Dynamic if self.use_series(t) => core::array::from_fn(|i| self.dynamic[i].eval_log(t)),
            Part::Full => self.closed_jets(t, true),
            Part::Dynamic => {
                let f = self.closed_jets(t, true);
                core::array::from_fn(|i| f[i] - static_log[i])
            }
        }
    }

    /// `(Φ₁(t), Φ₂(t))` by the printed Hankel combinations.
    pub fn phi12_closed(&self, t: f64) -> Result<(C64, C64)> {
        if !(t > 0.0) {
            return Err(Error::SingularPoint);
        }
        let j = self.closed_jets(t, false);
        Ok((j[0], j[3] * t * t))
    }

    /// `(Φ₁(t), Φ₂(t))` by whichever route is accurate at `t`.
    pub fn phi12(&self, t: f64) -> Result<(C64, C64)> {
        let j = self.jets(t, Part::Full)?;
        Ok((j[0], j[3] * t * t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn media() -> [ElasticMedium; 3] {
        [
            ElasticMedium::new(1.0, 1.0, 1.0, 8.0).unwrap(),
            ElasticMedium::new(2.0, 2.0, 1.0, 8.0).unwrap(),
            ElasticMedium::new(2.0, 3.0, 1.0, 8.0).unwrap(),
        ]
    }

    #[test]
    fn series_and_closed_forms_agree_near_the_switch() {
        for m in media() {
            let rf = RadialFunctions::new(&m);
            // Straddle the switch where both routes are accurate.
            for &kt in &[2.5, 3.5, 4.5] {
                let t = kt / rf.k[1];
                let s: Jets = core::array::from_fn(|i| rf.full[i].eval(t));
                let c = rf.closed_jets(t, false);
                for i in 0..6 {
                    let err = (s[i] - c[i]).norm() / c[i].norm().max(1e-300);
                    assert!(err < 1e-9, "jet {i} at kt={kt}: {} vs {}", s[i], c[i]);
                }
                let sl: Jets = core::array::from_fn(|i| rf.full[i].eval_log(t));
                let cl = rf.closed_jets(t, true);
                for i in 0..6 {
                    let err = (sl[i] - cl[i]).norm() / cl[i].norm().max(1e-300);
                    assert!(err < 1e-9, "log jet {i} at kt={kt}");
                }
            }
        }
    }

    #[test]
    fn delta_matches_finite_differences() {
        let rf = RadialFunctions::new(&media()[0]);
        for &t in &[0.05, 0.3, 0.9] {
            let h = 1e-5 * t;
            for part in [Part::Full, Part::Dynamic] {
                let jp = rf.jets(t + h, part).unwrap();
                let jm = rf.jets(t - h, part).unwrap();
                let j0 = rf.jets(t, part).unwrap();
                for (f, df) in [(0, 1), (1, 2), (3, 4), (4, 5)] {
                    let fd = (jp[f] - jm[f]) / (2.0 * h * t);
                    let err = (fd - j0[df]).norm() / j0[df].norm();
                    assert!(err < 1e-6, "{part:?} jet {df} at t={t}: fd {fd} vs {}", j0[df]);
                }
            }
        }
    }

    #[test]
    fn static_coefficients_match_kelvin_values() {
        let rf = RadialFunctions::new(&media()[0]);
        assert!((rf.static_dyad_coefficient() - 1.0 / (6.0 * PI)).abs() < 1e-16);
        assert!((rf.static_log_coefficient() + 4.0 / (12.0 * PI)).abs() < 1e-16);
    }

    #[test]
    fn dynamic_part_is_bounded_at_the_origin() {
        let rf = RadialFunctions::new(&media()[1]);
        // A − A⁰ is continuous; D − D⁰ keeps a log, tamed by the t² of X Xᵀ.
        let a = rf.jets(1e-8, Part::Dynamic).unwrap();
        let b = rf.jets(1e-6, Part::Dynamic).unwrap();
        assert!((a[0] - b[0]).norm() < 1e-9);
        assert!((a[3] * 1e-16 - b[3] * 1e-12).norm() < 1e-10);
    }
}
