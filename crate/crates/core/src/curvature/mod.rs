//! Curvature operators on Λ²ℝ⁴ and their duality decomposition.

pub mod bivector;
pub mod decompose;
pub mod models;
pub mod operator;
pub mod sectional;

pub use decompose::{
    duality_decompose, duality_decompose_exact, static_weitzenbock_residual, weyl_scalars,
    DualityDecomposition, ExactDecomposition, WeylScalars, WeylSpectrum,
};
pub use models::{model_space, model_space_named, ModelSpace};
pub use operator::CurvatureOperator;
pub use sectional::{
    extremize_sectional, sectional, sectional_curvature, SectionalExtrema, TangentPlane,
};
