//! Bessel functions `J_0, J_1, Y_0, Y_1` and Hankel functions of the first
//! kind for real positive arguments.
//!
//! Three regimes: ascending series for `x ≤ 2`, Miller backward recurrence
//! with Neumann series for the `Y`s up to `x < 25`, and the Hankel asymptotic
//! expansion beyond.

use core::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::error::{Error, Result};

/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

const SERIES_MAX: f64 = 2.0;
const ASYMPTOTIC_MIN: f64 = 25.0;

/// `(H_0^{(1)}(x), H_1^{(1)}(x))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HankelPair {
    pub h0: Complex64,
    pub h1: Complex64,
}

/// `(J_0, J_1, Y_0, Y_1)` at `x > 0`.
fn all_four(x: f64) -> [f64; 4] {
    if x <= SERIES_MAX {
        series(x)
    } else if x < ASYMPTOTIC_MIN {
        miller(x)
    } else {
        asymptotic(x)
    }
}

fn series(x: f64) -> [f64; 4] {
    let y = 0.25 * x * x;
    let half = 0.5 * x;
    let (mut j0, mut j1) = (0.0, 0.0);
    let (mut s0, mut s1) = (0.0, 0.0);
    // term0 = (-y)^k / (k!)^2, term1 = (-y)^k / (k! (k+1)!)
    let mut term0 = 1.0;
    let mut term1 = 1.0;
    let mut harmonic = 0.0;
    for k in 0..40 {
        let kf = k as f64;
        if k > 0 {
            term0 *= -y / (kf * kf);
            term1 *= -y / (kf * (kf + 1.0));
            harmonic += 1.0 / kf;
        }
        j0 += term0;
        j1 += term1;
        // ψ(k+1) + ψ(k+2) = -2γ + 2H_k + 1/(k+1)
        s0 -= harmonic * term0;
        s1 += (2.0 * harmonic + 1.0 / (kf + 1.0)) * term1;
        if term0.abs() < 1e-18 && k > 2 {
            break;
        }
    }
    let j1 = half * j1;
    let lg = (half).ln() + EULER_GAMMA;
    let y0 = 2.0 / PI * (lg * j0 + s0);
    // Y_1 = -2/(πx) + (2/π) ln(x/2) J_1 - (1/π) Σ (ψ(k+1)+ψ(k+2)) (-1)^k (x/2)^{2k+1}/(k!(k+1)!)
    let y1 = -2.0 / (PI * x) + 2.0 / PI * lg * j1 - half * s1 / PI;
    [j0, j1, y0, y1]
}

fn miller(x: f64) -> [f64; 4] {
    let start = 2 * (((x + 40.0) / 2.0) as usize + 1);
    let mut seq = [0.0; 80];
    debug_assert!(start + 1 < seq.len());
    seq[start] = 1e-30;
    for k in (1..=start).rev() {
        seq[k - 1] = 2.0 * k as f64 / x * seq[k] - seq[k + 1];
        if seq[k - 1].abs() > 1e250 {
            for v in seq[k - 1..=start].iter_mut() {
                *v *= 1e-250;
            }
        }
    }
    // 1 = J_0 + 2 Σ J_{2m}
    let norm = seq[0] + 2.0 * (1..=start / 2).map(|m| seq[2 * m]).sum::<f64>();
    let scale = 1.0 / norm;
    let (j0, j1) = (seq[0] * scale, seq[1] * scale);
    let (mut s0, mut s1) = (0.0, 0.0);
    for m in 1..start / 2 {
        let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
        s0 += sign * seq[2 * m] / m as f64;
        s1 += sign * (seq[2 * m - 1] - seq[2 * m + 1]) / (2 * m) as f64;
    }
    let lg = (0.5 * x).ln() + EULER_GAMMA;
    let y0 = 2.0 / PI * (lg * j0) - 4.0 / PI * s0 * scale;
    let y1 = -2.0 / PI * j0 / x + 2.0 / PI * lg * j1 + 4.0 / PI * s1 * scale;
    [j0, j1, y0, y1]
}

fn asymptotic(x: f64) -> [f64; 4] {
    let (p0, q0) = pq(0.0, x);
    let (p1, q1) = pq(1.0, x);
    let amp = (2.0 / (PI * x)).sqrt();
    let (s, c) = x.sin_cos();
    // χ_0 = x - π/4, χ_1 = x - 3π/4
    let (c0, s0) = ((c + s) * FRAC_1_SQRT_2, (s - c) * FRAC_1_SQRT_2);
    let (c1, s1) = ((s - c) * FRAC_1_SQRT_2, (-s - c) * FRAC_1_SQRT_2);
    [amp * (p0 * c0 - q0 * s0), amp * (p1 * c1 - q1 * s1), amp * (p0 * s0 + q0 * c0), amp * (p1 * s1 + q1 * c1)]
}

/// Hankel's `P_ν(x)`, `Q_ν(x)`, summed until the terms start growing or
/// drop below rounding.
fn pq(nu: f64, x: f64) -> (f64, f64) {
    let mu = 4.0 * nu * nu;
    let mut p = 1.0;
    let mut q = 0.0;
    let mut term: f64 = 1.0;
    let mut prev = f64::INFINITY;
    for k in 1..200 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        term *= (mu - odd * odd) / (kf * 8.0 * x);
        let mag = term.abs();
        if mag > prev || mag < 1e-17 {
            break;
        }
        prev = mag;
        // a_k / x^k enters P (even k) or Q (odd k) with sign (-1)^{floor(k/2)}
        let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
        if k % 2 == 0 {
            p += sign * term;
        } else {
            q += sign * term;
        }
    }
    (p, q)
}

fn domain(function: &'static str, x: f64) -> Error {
    Error::Domain { function, x }
}

/// `J_0(x)`, even in `x`.
pub fn bessel_j0(x: f64) -> f64 {
    let x = x.abs();
    if x == 0.0 {
        return 1.0;
    }
    all_four(x)[0]
}

/// `J_1(x)`, odd in `x`.
pub fn bessel_j1(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let v = all_four(x.abs())[1];
    if x < 0.0 {
        -v
    } else {
        v
    }
}

pub fn bessel_y0(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(domain("bessel_y0", x));
    }
    Ok(all_four(x)[2])
}

pub fn bessel_y1(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(domain("bessel_y1", x));
    }
    Ok(all_four(x)[3])
}

/// `H_ν^{(1)}(x)` for `ν ∈ {0, 1}`.
pub fn hankel1(order: u32, x: f64) -> Result<Complex64> {
    let pair = hankel_pair(x)?;
    match order {
        0 => Ok(pair.h0),
        1 => Ok(pair.h1),
        _ => Err(Error::InvalidParameter { name: "order", reason: alloc::format!("only orders 0 and 1, got {order}") }),
    }
}

/// Both Hankel functions from one evaluation.
pub fn hankel_pair(x: f64) -> Result<HankelPair> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(domain("hankel1", x));
    }
    let [j0, j1, y0, y1] = all_four(x);
    Ok(HankelPair { h0: Complex64::new(j0, y0), h1: Complex64::new(j1, y1) })
}

/// `(J_0(x), J_1(x))` for `x ≥ 0`.
pub fn bessel_j_pair(x: f64) -> (f64, f64) {
    if x == 0.0 {
        return (1.0, 0.0);
    }
    let v = all_four(x.abs());
    (v[0], if x < 0.0 { -v[1] } else { v[1] })
}

#[cfg(test)]
#[allow(clippy::excessive_precision)]
mod tests {
    use super::*;

    // (x, J0, J1, Y0, Y1), 40-digit reference values.
    const TABLE: &[(f64, f64, f64, f64, f64)] = &[
        (1e-6, 0.99999999999975, 4.9999999999993747737e-7, -8.8690314816594437317, -636619.77237217504257),
        (0.001, 0.999999750000015625, 0.00049999993750000261457, -4.4714166113759232557, -636.62216723113941482),
        (0.1, 0.997501562066040032, 0.049937526036242000321, -1.5342386513503668083, -6.4589510947020266377),
        (0.5, 0.93846980724081290423, 0.24226845767487388638, -0.44451873350670655715, -1.4714723926702430692),
        (1.0, 0.76519768655796655145, 0.44005058574493351596, 0.088256964215676957983, -0.78121282130028871655),
        (2.0, 0.22389077914123566805, 0.5767248077568733872, 0.5103756726497451196, -0.10703243154093754689),
        (3.0, -0.26005195490193343762, 0.33905895852593645893, 0.37685001001279038197, 0.32467442479179997844),
        (4.5, -0.32054250898512142436, -0.23106043192337063401, -0.19470500862950453327, 0.30099732306965462342),
        (5.0, -0.17759677131433830435, -0.32757913759146522204, -0.30851762524903378007, 0.1478631433912268448),
        (7.9, 0.19436184484127823969, 0.21917939992175120327, 0.20652094814437576859, -0.18172107728057312765),
        (8.0, 0.17165080713755390609, 0.23463634685391462438, 0.22352148938756622053, -0.15806046173124749426),
        (8.1, 0.1475174540443776703, 0.24760776698159287663, 0.23809132870223480863, -0.13314879595249592615),
        (10.0, -0.2459357644513483352, 0.04347274616886143667, 0.055671167283599391424, 0.24901542420695388392),
        (12.5, 0.14688405470042110231, -0.16548380461475971846, -0.17121430684466928735, -0.15383825653750118008),
        (17.0, -0.16985425215118354791, -0.097668492757780650236, -0.092637198442323692527, 0.16720503607723368646),
        (24.9, 0.083245968353015490053, -0.13485569953140886933, -0.13649918399676523538, -0.086002557595554252479),
        (25.0, 0.096266783275958116174, -0.12535024958028990465, -0.12724943226800613783, -0.098829964783237410053),
        (25.1, 0.10827567149994945198, -0.11463478413442256746, -0.1167677076380369472, -0.11062223322783098811),
        (40.0, 0.0073668905842372895535, 0.12603831803758499921, 0.12593641705826092925, -0.0057935058215496329412),
        (77.7, 0.005068664664995793793, 0.090408396777184832059, 0.090373910560666881799, -0.0044872369557058002615),
        (100.0, 0.019985850304223122424, -0.077145352014112158033, -0.077244313365083152254, -0.020372312002759793305),
        (
            150.0,
            -0.00077409037539429124695,
            -0.065145163657727360305,
            -0.065142221509037354596,
            0.0005569563495608399837,
        ),
        (200.0, -0.015437439930565091592, -0.054304538182378222711, -0.054265775249817910694, 0.01530182458038998922),
    ];

    #[test]
    fn matches_reference_table() {
        for &(x, j0, j1, y0, y1) in TABLE {
            let got = all_four(x);
            // Error measured against the local modulus |H_ν(x)|, which is what
            // the kernels see and stays meaningful near zeros of J or Y.
            let m0 = j0.hypot(y0);
            let m1 = j1.hypot(y1);
            for (g, e, m, name) in
                [(got[0], j0, m0, "J0"), (got[1], j1, m1, "J1"), (got[2], y0, m0, "Y0"), (got[3], y1, m1, "Y1")]
            {
                let err = (g - e).abs() / m;
                assert!(err < 1e-13, "{name}({x}): got {g}, expected {e}, rel {err:e}");
            }
        }
    }

    #[test]
    fn unit_argument_values() {
        assert!((bessel_j0(1.0) - 0.76519768655796655).abs() < 1e-15);
        assert!((bessel_y0(1.0).unwrap() - 0.08825696421567696).abs() < 1e-15);
        assert_eq!(bessel_j0(0.0), 1.0);
    }

    #[test]
    fn domain_errors() {
        assert!(bessel_y0(0.0).is_err());
        assert!(bessel_y1(-1.0).is_err());
        assert!(hankel1(0, 0.0).is_err());
        assert!(hankel1(2, 1.0).is_err());
    }
}
