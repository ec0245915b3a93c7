//! Lie-theoretic toolkit: structure-constant algebras, Cartan-Schouten
//! metrics, quaternionic covers, cotangent-bundle groups and screw geodesics.
//!
//! Everything numeric is generic over [`Scalar`] (`f32` or `f64`); the
//! aliases at the crate root fix `f64`.

// `!(x < tol)` is used on purpose so that NaN fails the test.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod check;
pub mod error;
pub mod groups;
pub mod isomaps;
pub mod lie;
pub mod linalg;
pub mod metrics;
pub mod quat;
pub mod sampling;
pub mod scalar;
pub mod screws;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type Matrix = linalg::Mat<f64>;
pub type Algebra = lie::LieAlgebra<f64>;
pub type Form = lie::BilinearForm<f64>;
pub type Endo = lie::LinearEndo<f64>;
pub type Quat = quat::Quaternion<f64>;
pub type SplitQuat = quat::SplitQuaternion<f64>;
pub type DualQuat = quat::DualQuaternion<f64>;
pub type DualSplitQuat = quat::DualSplitQuaternion<f64>;
pub type Element = groups::GroupElement<f64>;
