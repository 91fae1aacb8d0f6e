//! Pointwise pinching estimates, their brute-force oracles and the sharp
//! constants in exact arithmetic.

pub mod constants;
pub mod lemmas;
pub mod oracles;
pub mod surd;

pub use constants::{constant, sharp_constants, verify_chains, ChainCheck, SharpConstant};
pub use lemmas::*;
pub use oracles::{
    lemma_algebraic2_oracle, lemma_k3k1_normsq_oracle, lemma_k3k1_oracle, pointwise_bound_oracle,
    pointwise_bound_sampler, PointwiseLemma, FEASIBILITY_TOL, HAMILTON_TOL, POLYTOPE_TOL,
};
pub use surd::QuadraticSurd;
