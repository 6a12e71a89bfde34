//! Boundary-integral toolkit for time-harmonic elastic scattering by a
//! penetrable inclusion in the plane.
//!
//! The crate has two halves:
//!
//! * a Nyström forward solver for the transmission problem ([`forward`]),
//!   with three interchangeable layer-potential representations and an
//!   analytic point-source oracle;
//! * a two-step shape reconstruction ([`inverse`]) that alternates a
//!   well-posed boundary density solve with a Tikhonov-regularised update of
//!   a starlike radial function from far-field data.
//!
//! Everything is `no_std` + `alloc`. Enabling the `parallel` feature makes
//! operator assembly row-parallel through rayon.
#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

extern crate alloc;

pub mod error;
pub mod forward;
pub mod geometry;
pub mod inverse;
pub mod kernels;
pub mod linalg;
pub mod media;
pub mod quadrature;
pub mod specfun;

mod par;

pub use error::{Error, Result};
pub use num_complex::Complex64;

/// The fixed rotation `[[0, 1], [-1, 0]]`; maps the unit tangent onto the
/// outward unit normal.
pub const Q: [[f64; 2]; 2] = [[0.0, 1.0], [-1.0, 0.0]];

/// Applies [`Q`] to a real 2-vector.
#[inline]
pub fn rotate_q(v: [f64; 2]) -> [f64; 2] {
    [v[1], -v[0]]
}
