use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use super::operator::{CurvatureOperator, ExactMatrix};
use crate::error::{Error, Result};
use crate::exact::{rat, Rational};

/// The locally symmetric Einstein model spaces, normalized to `Rc = g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModelSpace {
    Sphere,
    /// Locally isometric to the sphere; same curvature operator.
    Rp4,
    Cp2,
    S2xS2,
}

impl ModelSpace {
    pub const ALL: [ModelSpace; 4] = [Self::Sphere, Self::Rp4, Self::Cp2, Self::S2xS2];

    pub fn name(&self) -> &'static str {
        match self {
            Self::Sphere => "sphere",
            Self::Rp4 => "rp4",
            Self::Cp2 => "cp2",
            Self::S2xS2 => "s2xs2",
        }
    }

    /// `(χ, τ)` of the compact model.
    pub fn euler_signature(&self) -> (i64, i64) {
        match self {
            Self::Sphere => (2, 0),
            Self::Rp4 => (1, 0),
            Self::Cp2 => (3, 1),
            Self::S2xS2 => (4, 0),
        }
    }

    /// Berger blocks `(A, B)` in a frame adapted to the symmetric structure.
    pub fn berger_blocks(&self) -> ([Rational; 3], [Rational; 3]) {
        let z = Rational::zero();
        match self {
            Self::Sphere | Self::Rp4 => ([rat(1, 3); 3], [z; 3]),
            Self::Cp2 => (
                [rat(1, 6), rat(1, 6), rat(2, 3)],
                [rat(-1, 6), rat(-1, 6), rat(1, 3)],
            ),
            Self::S2xS2 => ([z, z, rat(1, 1)], [z; 3]),
        }
    }
}

impl fmt::Display for ModelSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ModelSpace {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "sphere" | "s4" => Ok(Self::Sphere),
            "rp4" => Ok(Self::Rp4),
            "cp2" => Ok(Self::Cp2),
            "s2xs2" => Ok(Self::S2xS2),
            other => Err(Error::Usage(format!(
                "unknown model space {other:?}; expected one of sphere, rp4, cp2, s2xs2"
            ))),
        }
    }
}

/// Exact `[[A, B], [B, A]]` with diagonal `A`, `B`.
pub fn berger_matrix_exact(a: &[Rational; 3], b: &[Rational; 3]) -> ExactMatrix {
    let mut m = [[Rational::zero(); 6]; 6];
    for i in 0..3 {
        m[i][i] = a[i];
        m[i + 3][i + 3] = a[i];
        m[i][i + 3] = b[i];
        m[i + 3][i] = b[i];
    }
    m
}

/// Curvature operator of a model space with exact entries and `λ = 1`.
pub fn model_space(model: ModelSpace) -> CurvatureOperator {
    let (a, b) = model.berger_blocks();
    CurvatureOperator::from_exact(berger_matrix_exact(&a, &b), Some(rat(1, 1)))
        .expect("model space tables are valid Einstein operators")
}

/// [`model_space`] by name.
pub fn model_space_named(name: &str) -> Result<CurvatureOperator> {
    Ok(model_space(name.parse()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::decompose::duality_decompose_exact;

    fn r(n: i128, d: i128) -> Rational {
        rat(n, d)
    }

    #[test]
    fn exact_tables() {
        let z = Rational::zero();
        let sphere = duality_decompose_exact(&model_space(ModelSpace::Sphere)).unwrap();
        assert_eq!(sphere.scalar, r(4, 1));
        assert_eq!(sphere.traceless_ricci_norm_sq, z);
        assert_eq!(sphere.wplus, [z; 3]);
        assert_eq!(sphere.wminus, [z; 3]);

        let cp2 = duality_decompose_exact(&model_space(ModelSpace::Cp2)).unwrap();
        assert_eq!(cp2.scalar, r(4, 1));
        assert_eq!(cp2.wplus, [r(-1, 3), r(-1, 3), r(2, 3)]);
        assert_eq!(cp2.wminus, [z; 3]);

        let s2s2 = duality_decompose_exact(&model_space(ModelSpace::S2xS2)).unwrap();
        assert_eq!(s2s2.wplus, [r(-1, 3), r(-1, 3), r(2, 3)]);
        assert_eq!(s2s2.wminus, [r(-1, 3), r(-1, 3), r(2, 3)]);
    }

    #[test]
    fn rp4_matches_sphere() {
        assert_eq!(
            model_space(ModelSpace::Rp4),
            model_space(ModelSpace::Sphere)
        );
    }

    #[test]
    fn s2xs2_duality_blocks() {
        let blocks = model_space(ModelSpace::S2xS2)
            .exact_duality_blocks()
            .unwrap();
        let z = Rational::zero();
        let expected = [[z, z, z], [z, z, z], [z, z, r(1, 1)]];
        assert_eq!(blocks[0], expected);
        assert_eq!(blocks[1], expected);
    }

    #[test]
    fn unknown_name_is_usage_error() {
        assert!(matches!(model_space_named("torus"), Err(Error::Usage(_))));
        assert!(model_space_named("CP2").is_ok());
    }
}
