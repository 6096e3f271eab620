//! Exact tensor calculus over polynomial component fields.
//!
//! Everything in this crate works with exact rationals: metric components are
//! multivariate polynomials with rational coefficients, curvature identities
//! are checked as polynomial identities, and ranks and kernels are computed by
//! exact Gaussian elimination. The crate is `no_std` and only needs `alloc`.
//!
//! The modules are layered bottom-up:
//!
//! * [`algebra`]: rationals, sparse multivariate polynomials, exact matrices.
//! * [`tensor`] and [`geometry`]: dense tensor fields and the Levi-Civita
//!   curvature pipeline (Christoffel symbols, Riemann, Ricci, Weyl, `∇`).
//! * [`roter`]: the Roter metric family with parallel Weyl tensor, its
//!   parameter validation, and closed-form essential components.
//! * [`olszak`]: the rank `d` of the Olszak distribution, computed from the
//!   wedge-divisibility kernel of the Weyl 2-forms at a point.
//! * [`sample`]: random valid parameter sets with a controlled rank of `A`.

#![no_std]

extern crate alloc;

pub mod algebra;
pub mod error;
pub mod geometry;
pub mod olszak;
pub mod roter;
pub mod sample;
pub mod tensor;

pub use algebra::{MultiPoly, Rational, RationalMatrix};
pub use error::{Error, Result};
pub use tensor::{Point, TensorField, Variance};
