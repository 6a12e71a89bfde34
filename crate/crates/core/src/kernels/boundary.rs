//! The boundary-operator kernels in parametrised form, ready for
//! [`split_and_assemble`](crate::quadrature::split_and_assemble).

use alloc::format;
use alloc::string::String;

use num_complex::Complex64;
#[allow(unused_imports)] // shadowed by inherent methods when std is linked
use num_traits::Float;

use super::{KernelEvaluator, KernelKind, Part};
use crate::error::Result;
use crate::geometry::Frame;
use crate::linalg::Mat2;
use crate::media::ElasticMedium;
use crate::quadrature::{BoundaryKernel, Singularity};

fn log_part(ev: &KernelEvaluator, which: KernelKind, x: &Frame, y: &Frame, part: Part) -> Mat2 {
    // ln|x − y| = ½ ln(4 sin²((t − τ)/2)) + smooth
    ev.log_coefficient(which, x.z, x.normal, y.z, y.normal, part).scale_re(0.5 * y.speed)
}

/// `Φ(x, y)`: the single-layer operator `S`.
#[derive(Debug, Clone)]
pub struct SingleLayerKernel {
    ev: KernelEvaluator,
}

impl SingleLayerKernel {
    pub fn new(medium: &ElasticMedium) -> Self {
        SingleLayerKernel { ev: KernelEvaluator::new(medium) }
    }
}

impl BoundaryKernel for SingleLayerKernel {
    fn label(&self) -> String {
        "S".into()
    }

    fn singularity(&self) -> Singularity {
        Singularity::Log
    }

    fn kernel(&self, x: &Frame, y: &Frame) -> Result<Mat2> {
        Ok(self.ev.tensor(x.z, y.z, Part::Full)?.scale_re(y.speed))
    }

    fn log_part(&self, x: &Frame, y: &Frame) -> Mat2 {
        log_part(&self.ev, KernelKind::Tensor, x, y, Part::Full)
    }
}

/// `[T_y Φ(x, y)]ᵀ`: the double-layer operator `K`.
#[derive(Debug, Clone)]
pub struct DoubleLayerKernel {
    ev: KernelEvaluator,
}

impl DoubleLayerKernel {
    pub fn new(medium: &ElasticMedium) -> Self {
        DoubleLayerKernel { ev: KernelEvaluator::new(medium) }
    }
}

impl BoundaryKernel for DoubleLayerKernel {
    fn label(&self) -> String {
        "K".into()
    }

    fn singularity(&self) -> Singularity {
        Singularity::LogCauchy
    }

    fn kernel(&self, x: &Frame, y: &Frame) -> Result<Mat2> {
        Ok(self.ev.double_layer(x.z, y.z, y.normal, Part::Full)?.scale_re(y.speed))
    }

    fn log_part(&self, x: &Frame, y: &Frame) -> Mat2 {
        log_part(&self.ev, KernelKind::DoubleLayer, x, y, Part::Full)
    }

    fn cauchy_part(&self, x: &Frame) -> Mat2 {
        self.ev.static_unit(KernelKind::DoubleLayer, x.tangent, x.normal).scale_re(-0.5)
    }
}

/// `T_x Φ(x, y)`: the operator `L`.
#[derive(Debug, Clone)]
pub struct SingleTractionKernel {
    ev: KernelEvaluator,
}

impl SingleTractionKernel {
    pub fn new(medium: &ElasticMedium) -> Self {
        SingleTractionKernel { ev: KernelEvaluator::new(medium) }
    }
}

impl BoundaryKernel for SingleTractionKernel {
    fn label(&self) -> String {
        "L".into()
    }

    fn singularity(&self) -> Singularity {
        Singularity::LogCauchy
    }

    fn kernel(&self, x: &Frame, y: &Frame) -> Result<Mat2> {
        Ok(self.ev.single_traction(x.z, x.normal, y.z, Part::Full)?.scale_re(y.speed))
    }

    fn log_part(&self, x: &Frame, y: &Frame) -> Mat2 {
        log_part(&self.ev, KernelKind::SingleTraction, x, y, Part::Full)
    }

    fn cauchy_part(&self, x: &Frame) -> Mat2 {
        self.ev.static_unit(KernelKind::SingleTraction, x.tangent, x.normal).scale_re(-0.5)
    }
}

/// `T_x [T_y (Φ − Φ⁽⁰⁾)]ᵀ` for one medium.
#[derive(Debug, Clone)]
pub struct HyperKernel {
    ev: KernelEvaluator,
}

impl HyperKernel {
    pub fn new(medium: &ElasticMedium) -> Self {
        HyperKernel { ev: KernelEvaluator::new(medium) }
    }
}

impl BoundaryKernel for HyperKernel {
    fn label(&self) -> String {
        "N - N0".into()
    }

    fn singularity(&self) -> Singularity {
        Singularity::Log
    }

    fn kernel(&self, x: &Frame, y: &Frame) -> Result<Mat2> {
        Ok(self.ev.hyper(x.z, x.normal, y.z, y.normal, Part::Dynamic)?.scale_re(y.speed))
    }

    fn log_part(&self, x: &Frame, y: &Frame) -> Mat2 {
        log_part(&self.ev, KernelKind::Hyper, x, y, Part::Dynamic)
    }
}

/// `τ_i (N_i − N_i⁽⁰⁾) − τ_e (N_e − N_e⁽⁰⁾)`, equal to `τ_i N_i − τ_e N_e`.
#[derive(Debug, Clone)]
pub struct CombinedHyperKernel {
    interior: KernelEvaluator,
    exterior: KernelEvaluator,
    tau_i: f64,
    tau_e: f64,
}

impl CombinedHyperKernel {
    pub fn new(interior: &ElasticMedium, exterior: &ElasticMedium) -> Self {
        CombinedHyperKernel {
            interior: KernelEvaluator::new(interior),
            exterior: KernelEvaluator::new(exterior),
            tau_i: interior.tau(),
            tau_e: exterior.tau(),
        }
    }
}

impl BoundaryKernel for CombinedHyperKernel {
    fn label(&self) -> String {
        format!("{}N_i - {}N_e", self.tau_i, self.tau_e)
    }

    fn singularity(&self) -> Singularity {
        Singularity::Log
    }

    fn kernel(&self, x: &Frame, y: &Frame) -> Result<Mat2> {
        let ki = self.interior.hyper(x.z, x.normal, y.z, y.normal, Part::Dynamic)?;
        let ke = self.exterior.hyper(x.z, x.normal, y.z, y.normal, Part::Dynamic)?;
        Ok((ki.scale_re(self.tau_i) - ke.scale_re(self.tau_e)).scale_re(y.speed))
    }

    fn log_part(&self, x: &Frame, y: &Frame) -> Mat2 {
        log_part(&self.interior, KernelKind::Hyper, x, y, Part::Dynamic).scale_re(self.tau_i)
            - log_part(&self.exterior, KernelKind::Hyper, x, y, Part::Dynamic).scale_re(self.tau_e)
    }
}

/// `−ln|x − y| I + e eᵀ` with `e = (x − y)/|x − y|`, taken with respect to
/// `dτ` without arc-length weight. Sandwiched between two parameter
/// derivatives it gives the static hypersingular operator.
#[derive(Debug, Clone, Copy, Default)]
pub struct MaueKernel;

impl BoundaryKernel for MaueKernel {
    fn label(&self) -> String {
        "V".into()
    }

    fn singularity(&self) -> Singularity {
        Singularity::Log
    }

    fn kernel(&self, x: &Frame, y: &Frame) -> Result<Mat2> {
        let d = [x.z[0] - y.z[0], x.z[1] - y.z[1]];
        let r = d[0].hypot(d[1]);
        if r == 0.0 {
            return Err(crate::error::Error::SingularPoint);
        }
        let e = [d[0] / r, d[1] / r];
        Ok(Mat2::scalar(Complex64::from(-r.ln())) + Mat2::outer(e, e))
    }

    fn log_part(&self, _x: &Frame, _y: &Frame) -> Mat2 {
        Mat2::scalar(Complex64::from(-0.5))
    }
}
