//! Elastic media, incident plane waves and the boundary traction operator.

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::CVec2;
use crate::rotate_q;

/// Isotropic, homogeneous elastic medium at a fixed circular frequency.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ElasticMedium {
    lambda: f64,
    mu: f64,
    rho: f64,
    omega: f64,
}

impl ElasticMedium {
    /// Checks `mu > 0`, `rho > 0`, `omega > 0` and `lambda + mu > 0`.
    pub fn new(lambda: f64, mu: f64, rho: f64, omega: f64) -> Result<Self> {
        if !(lambda.is_finite() && mu.is_finite() && rho.is_finite() && omega.is_finite()) {
            return Err(Error::InvalidMedium("parameters must be finite"));
        }
        if mu <= 0.0 {
            return Err(Error::InvalidMedium("shear modulus mu must be positive"));
        }
        if rho <= 0.0 {
            return Err(Error::InvalidMedium("density rho must be positive"));
        }
        if omega <= 0.0 {
            return Err(Error::InvalidMedium("frequency omega must be positive"));
        }
        if lambda + mu <= 0.0 {
            return Err(Error::InvalidMedium("lambda + mu must be positive"));
        }
        Ok(ElasticMedium { lambda, mu, rho, omega })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    /// `rho * omega^2`.
    pub fn rho_omega2(&self) -> f64 {
        self.rho * self.omega * self.omega
    }

    /// `(k_p, k_s)`.
    pub fn wavenumbers(&self) -> (f64, f64) {
        let ro2 = self.rho_omega2();
        ((ro2 / (self.lambda + 2.0 * self.mu)).sqrt(), (ro2 / self.mu).sqrt())
    }

    pub fn kp(&self) -> f64 {
        self.wavenumbers().0
    }

    pub fn ks(&self) -> f64 {
        self.wavenumbers().1
    }

    /// Wavenumber of the given wave type.
    pub fn k(&self, kind: WaveKind) -> f64 {
        match kind {
            WaveKind::P => self.kp(),
            WaveKind::S => self.ks(),
        }
    }

    /// `(lambda + 2mu) / (mu (lambda + mu))`.
    pub fn tau(&self) -> f64 {
        (self.lambda + 2.0 * self.mu) / (self.mu * (self.lambda + self.mu))
    }

    /// `mu (lambda + mu) / (lambda + 2mu)`, the reciprocal of [`tau`](Self::tau).
    pub fn c(&self) -> f64 {
        self.mu * (self.lambda + self.mu) / (self.lambda + 2.0 * self.mu)
    }

    /// Applies the traction operator with normal `n` to a field whose
    /// gradient is `grad[c][a] = d u_a / d x_c`.
    pub fn traction_from_gradient(&self, grad: &[[Complex64; 2]; 2], n: [f64; 2]) -> CVec2 {
        let div = grad[0][0] + grad[1][1];
        let curl = grad[0][1] - grad[1][0];
        let qn = rotate_q(n);
        let mut t = [Complex64::new(0.0, 0.0); 2];
        for a in 0..2 {
            let dn = grad[0][a] * n[0] + grad[1][a] * n[1];
            t[a] = div * (self.lambda * n[a]) + dn * (2.0 * self.mu) + curl * (self.mu * qn[a]);
        }
        t
    }
}

/// `(k_p, k_s)` of a medium.
pub fn wavenumbers(medium: &ElasticMedium) -> (f64, f64) {
    medium.wavenumbers()
}

/// Coupling constant `tau` of a medium.
pub fn tau(medium: &ElasticMedium) -> f64 {
    medium.tau()
}

/// Longitudinal (`P`) or transversal (`S`) wave.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WaveKind {
    P,
    S,
}

impl WaveKind {
    pub const BOTH: [WaveKind; 2] = [WaveKind::P, WaveKind::S];
}

/// Plane wave travelling in direction `direction`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IncidentWave {
    kind: WaveKind,
    direction: [f64; 2],
}

impl IncidentWave {
    /// Rejects directions whose length differs from one by more than 1e-12.
    pub fn new(kind: WaveKind, direction: [f64; 2]) -> Result<Self> {
        let len = direction[0].hypot(direction[1]);
        if !((len - 1.0).abs() <= 1e-12) {
            return Err(Error::InvalidParameter {
                name: "direction",
                reason: alloc::format!("incident direction must be a unit vector, |d| = {len}"),
            });
        }
        Ok(IncidentWave { kind, direction })
    }

    /// Direction at polar angle `theta`.
    pub fn from_angle(kind: WaveKind, theta: f64) -> Self {
        IncidentWave { kind, direction: [theta.cos(), theta.sin()] }
    }

    pub fn kind(&self) -> WaveKind {
        self.kind
    }

    pub fn direction(&self) -> [f64; 2] {
        self.direction
    }

    /// Polarisation: `d` for P waves, `-Q d` for S waves.
    pub fn polarization(&self) -> [f64; 2] {
        match self.kind {
            WaveKind::P => self.direction,
            WaveKind::S => {
                let qd = rotate_q(self.direction);
                [-qd[0], -qd[1]]
            }
        }
    }
}

fn phase(wave: &IncidentWave, medium: &ElasticMedium, x: [f64; 2]) -> (f64, Complex64) {
    let k = medium.k(wave.kind);
    let d = wave.direction;
    (k, Complex64::from_polar(1.0, k * (d[0] * x[0] + d[1] * x[1])))
}

/// The plane wave evaluated at `x`.
pub fn incident_field(wave: &IncidentWave, medium: &ElasticMedium, x: [f64; 2]) -> CVec2 {
    let (_, e) = phase(wave, medium, x);
    let p = wave.polarization();
    [e * p[0], e * p[1]]
}

/// Traction of the plane wave at `x` for the unit normal `normal`.
pub fn incident_traction(wave: &IncidentWave, medium: &ElasticMedium, x: [f64; 2], normal: [f64; 2]) -> CVec2 {
    let (k, e) = phase(wave, medium, x);
    let d = wave.direction;
    let n = normal;
    let nd = n[0] * d[0] + n[1] * d[1];
    let (l, m) = (medium.lambda, medium.mu);
    let v = match wave.kind {
        WaveKind::P => [l * n[0] + 2.0 * m * nd * d[0], l * n[1] + 2.0 * m * nd * d[1]],
        WaveKind::S => {
            let p = wave.polarization();
            let qn = rotate_q(n);
            [2.0 * m * nd * p[0] + m * qn[0], 2.0 * m * nd * p[1] + m * qn[1]]
        }
    };
    let f = e * Complex64::new(0.0, k);
    [f * v[0], f * v[1]]
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn unit() -> ElasticMedium {
        ElasticMedium::new(1.0, 1.0, 1.0, 8.0).unwrap()
    }

    #[test]
    fn wavenumber_examples() {
        let (kp, ks) = unit().wavenumbers();
        assert_relative_eq!(kp, 8.0 / 3f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(ks, 8.0, max_relative = 1e-15);
        let (kp, ks) = ElasticMedium::new(0.0, 1.0, 1.0, 1.0).unwrap().wavenumbers();
        assert_relative_eq!(kp, 0.5f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(ks, 1.0, max_relative = 1e-15);
        let (kp, ks) = ElasticMedium::new(2.0, 2.0, 1.0, 8.0).unwrap().wavenumbers();
        assert_relative_eq!(kp, 3.265986323710904, max_relative = 1e-14);
        assert_relative_eq!(ks, 5.656854249492381, max_relative = 1e-14);
    }

    #[test]
    fn tau_examples() {
        assert_relative_eq!(unit().tau(), 1.5);
        assert_relative_eq!(ElasticMedium::new(2.0, 2.0, 1.0, 1.0).unwrap().tau(), 0.75);
        let m = ElasticMedium::new(2.0, 3.0, 1.0, 1.0).unwrap();
        assert_relative_eq!(m.tau(), 8.0 / 15.0, max_relative = 1e-15);
        assert_relative_eq!(m.tau() * m.c(), 1.0, max_relative = 1e-15);
    }

    #[test]
    fn rejects_bad_media() {
        assert!(ElasticMedium::new(1.0, 0.0, 1.0, 1.0).is_err());
        assert!(ElasticMedium::new(1.0, 1.0, -1.0, 1.0).is_err());
        assert!(ElasticMedium::new(1.0, 1.0, 1.0, 0.0).is_err());
        assert!(ElasticMedium::new(-1.0, 1.0, 1.0, 1.0).is_err());
        assert!(IncidentWave::new(WaveKind::P, [1.0, 1.0]).is_err());
    }

    #[test]
    fn incident_field_examples() {
        let m = unit();
        let p = IncidentWave::new(WaveKind::P, [1.0, 0.0]).unwrap();
        let s = IncidentWave::new(WaveKind::S, [1.0, 0.0]).unwrap();
        let u = incident_field(&p, &m, [0.0, 0.0]);
        assert_eq!(u, [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]);
        let u = incident_field(&s, &m, [0.0, 0.0]);
        assert_eq!(u, [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)]);
        let u = incident_field(&p, &m, [3f64.sqrt() * core::f64::consts::PI / 8.0, 0.0]);
        assert!((u[0] + 1.0).norm() < 1e-14 && u[1].norm() < 1e-14);
    }

    #[test]
    fn incident_traction_examples() {
        let m = unit();
        let p = IncidentWave::new(WaveKind::P, [1.0, 0.0]).unwrap();
        let t = incident_traction(&p, &m, [0.0, 0.0], [1.0, 0.0]);
        assert_relative_eq!(t[0].im, 8.0 * 3f64.sqrt(), max_relative = 1e-14);
        assert_eq!(t[0].re, 0.0);
        assert_eq!(t[1], Complex64::new(0.0, 0.0));
        // Tangential normal: only the lambda n term survives.
        let t = incident_traction(&p, &m, [0.0, 0.0], [0.0, 1.0]);
        assert!(t[0].norm() < 1e-15);
        assert_relative_eq!(t[1].im, 8.0 / 3f64.sqrt(), max_relative = 1e-14);
        // S wave along x with normal along x: shear traction i k_s mu (0, 1) + mu Q n term.
        let s = IncidentWave::new(WaveKind::S, [1.0, 0.0]).unwrap();
        let t = incident_traction(&s, &m, [0.0, 0.0], [1.0, 0.0]);
        assert!(t[0].norm() < 1e-15);
        assert_relative_eq!(t[1].im, 8.0, max_relative = 1e-14);
    }
}
