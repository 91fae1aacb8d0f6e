//! Curvature algebra of Einstein four-manifolds.
//!
//! The crate represents curvature operators on Λ²ℝ⁴, splits them into
//! self-dual and anti-self-dual Weyl parts, computes the Berger normal form
//! and evaluates the pointwise pinching estimates that feed the
//! classification of positive Einstein four-manifolds. Every closed-form
//! bound ships with a brute-force oracle over its constraint region, and
//! the sharp constants are available as exact quadratic surds.

pub mod berger;
pub mod classify;
pub mod curvature;
pub mod error;
pub mod exact;
pub mod grid;
pub mod io;
pub mod pinch;
pub mod topology;

pub use berger::{berger_data, berger_to_operator, reconstruct_frame, BergerData, Frame};
pub use classify::{classify, ClassificationVerdict, ClassifyOptions, CurvatureInput};
pub use curvature::{
    duality_decompose, extremize_sectional, model_space, sectional, CurvatureOperator,
    DualityDecomposition, ModelSpace, TangentPlane, WeylSpectrum,
};
pub use error::{Error, Result};
pub use grid::GridReport;
pub use pinch::QuadraticSurd;
pub use topology::{admissible_types, AdmissibleSet, Alpha};
