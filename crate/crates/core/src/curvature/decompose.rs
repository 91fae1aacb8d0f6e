//! Duality decomposition `R = [[S/12 + W⁺, E], [E, S/12 + W⁻]]` and the
//! scalar invariants of the Weyl spectra.

use nalgebra::{Matrix3, SymmetricEigen, Vector3};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::operator::CurvatureOperator;
use crate::error::{Error, Result};
use crate::exact::{self, Rational};

/// Tolerance for eigenvalue-derived identities.
pub const SPECTRAL_TOL: f64 = 1e-9;

/// Ascending eigenvalues and matching orthonormal eigenvectors (as columns)
/// of a symmetric 3×3 matrix.
pub(crate) fn sorted_eigh3(m: &Matrix3<f64>) -> (Vector3<f64>, Matrix3<f64>) {
    let eig = SymmetricEigen::new(*m);
    let mut order = [0usize, 1, 2];
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = Vector3::from_fn(|i, _| eig.eigenvalues[order[i]]);
    let mut vectors = Matrix3::zeros();
    for (dst, &src) in order.iter().enumerate() {
        vectors.set_column(dst, &eig.eigenvectors.column(src));
    }
    (values, vectors)
}

/// Trace-free eigenvalue triple of `W⁺` or `W⁻`, ascending.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeylSpectrum {
    eigenvalues: [f64; 3],
}

impl WeylSpectrum {
    /// Sorts the input; rejects triples whose sum is not zero to
    /// [`SPECTRAL_TOL`] (relative to the largest magnitude).
    pub fn new(values: [f64; 3]) -> Result<Self> {
        let mut eigenvalues = values;
        eigenvalues.sort_by(f64::total_cmp);
        let scale = eigenvalues.iter().fold(1.0f64, |m, x| m.max(x.abs()));
        let sum: f64 = eigenvalues.iter().sum();
        if !sum.is_finite() || sum.abs() > SPECTRAL_TOL * scale {
            return Err(Error::Domain(format!(
                "Weyl spectrum must be trace-free, sum = {sum:.3e}"
            )));
        }
        Ok(Self { eigenvalues })
    }

    pub fn zero() -> Self {
        Self {
            eigenvalues: [0.0; 3],
        }
    }

    pub fn eigenvalues(&self) -> [f64; 3] {
        self.eigenvalues
    }

    pub fn norm_sq(&self) -> f64 {
        self.eigenvalues.iter().map(|x| x * x).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn det(&self) -> f64 {
        self.eigenvalues.iter().product()
    }
}

/// `|W|²`, `|W|`, `det W` and the determinant inequality `36 det W ≤ 2√6 |W|³`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeylScalars {
    pub norm_sq: f64,
    pub norm: f64,
    pub det: f64,
    /// `36 det W`
    pub det_lhs: f64,
    /// `2√6 |W|³`
    pub det_rhs: f64,
    pub det_inequality_holds: bool,
}

pub fn weyl_scalars(w: &WeylSpectrum) -> WeylScalars {
    let norm_sq = w.norm_sq();
    let norm = norm_sq.sqrt();
    let det = w.det();
    let det_lhs = 36.0 * det;
    let det_rhs = 2.0 * 6f64.sqrt() * norm * norm_sq;
    WeylScalars {
        norm_sq,
        norm,
        det,
        det_lhs,
        det_rhs,
        det_inequality_holds: det_lhs <= det_rhs + SPECTRAL_TOL * det_rhs.max(1.0),
    }
}

/// Zeroth-order part of the Weitzenböck formula, `S |W|² − 36 det W`.
pub fn static_weitzenbock_residual(scalar: f64, w: &WeylSpectrum) -> f64 {
    scalar * w.norm_sq() - 36.0 * w.det()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DualityDecomposition {
    pub scalar: f64,
    pub traceless_ricci_norm_sq: f64,
    pub wplus: WeylSpectrum,
    pub wminus: WeylSpectrum,
}

impl DualityDecomposition {
    /// `|W⁺| + |W⁻|`
    pub fn weyl_sum(&self) -> f64 {
        self.wplus.norm() + self.wminus.norm()
    }

    pub fn weyl_norm_sq(&self) -> f64 {
        self.wplus.norm_sq() + self.wminus.norm_sq()
    }
}

fn remove_trace(values: Vector3<f64>, shift: f64) -> WeylSpectrum {
    let mut e = [values[0] - shift, values[1] - shift, values[2] - shift];
    // the blocks carry exactly S/4 as trace; push the rounding residue onto
    // the largest entry so the triple is trace-free
    let residue: f64 = e.iter().sum();
    e[2] -= residue;
    WeylSpectrum { eigenvalues: e }
}

/// Scalar curvature, traceless Ricci norm and the `W±` spectra of `R`.
pub fn duality_decompose(op: &CurvatureOperator) -> DualityDecomposition {
    let (plus, minus, _) = op.duality_blocks();
    let scalar = op.scalar();
    let (rp, _) = sorted_eigh3(&plus);
    let (rm, _) = sorted_eigh3(&minus);
    DualityDecomposition {
        scalar,
        traceless_ricci_norm_sq: op.traceless_ricci_norm_sq(),
        wplus: remove_trace(rp, scalar / 12.0),
        wminus: remove_trace(rm, scalar / 12.0),
    }
}

/// Rational version of [`DualityDecomposition`].
#[derive(Debug, Clone, PartialEq)]
pub struct ExactDecomposition {
    pub scalar: Rational,
    pub traceless_ricci_norm_sq: Rational,
    pub wplus: [Rational; 3],
    pub wminus: [Rational; 3],
}

impl ExactDecomposition {
    pub fn wplus_norm_sq(&self) -> Rational {
        self.wplus.iter().map(|x| x * x).sum()
    }

    pub fn wminus_norm_sq(&self) -> Rational {
        self.wminus.iter().map(|x| x * x).sum()
    }

    pub fn wplus_det(&self) -> Rational {
        self.wplus.iter().product()
    }

    pub fn wminus_det(&self) -> Rational {
        self.wminus.iter().product()
    }

    /// `S |W±|² − 36 det W±`, see [`static_weitzenbock_residual`].
    pub fn weitzenbock_residuals(&self) -> (Rational, Rational) {
        let k = Rational::from_integer(36);
        (
            self.scalar * self.wplus_norm_sq() - k * self.wplus_det(),
            self.scalar * self.wminus_norm_sq() - k * self.wminus_det(),
        )
    }

    pub fn to_strings(&self) -> ExactDecompositionStrings {
        let f = |xs: &[Rational; 3]| xs.iter().map(exact::format_rational).collect();
        ExactDecompositionStrings {
            scalar: exact::format_rational(&self.scalar),
            traceless_ricci_norm_sq: exact::format_rational(&self.traceless_ricci_norm_sq),
            wplus: f(&self.wplus),
            wminus: f(&self.wminus),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactDecompositionStrings {
    pub scalar: String,
    pub traceless_ricci_norm_sq: String,
    pub wplus: Vec<String>,
    pub wminus: Vec<String>,
}

/// Exact decomposition for operators built from rational entries whose
/// duality blocks are already diagonal (all model spaces, any Berger form).
pub fn duality_decompose_exact(op: &CurvatureOperator) -> Option<ExactDecomposition> {
    let blocks = op.exact_duality_blocks()?;
    let rc = op.exact_ricci()?;
    let diagonal =
        |b: &[[Rational; 3]; 3]| (0..3).all(|i| (0..3).all(|j| i == j || b[i][j].is_zero()));
    if !diagonal(&blocks[0]) || !diagonal(&blocks[1]) {
        return None;
    }
    let two = Rational::from_integer(2);
    let scalar: Rational = (0..4).map(|i| rc[i][i]).sum();
    let quarter = scalar / Rational::from_integer(4);
    let mut e_sq = Rational::zero();
    for (i, row) in rc.iter().enumerate() {
        for (k, v) in row.iter().enumerate() {
            let d = if i == k { *v - quarter } else { *v };
            e_sq += d * d;
        }
    }
    debug_assert_eq!(
        scalar,
        (0..3)
            .map(|i| blocks[0][i][i] + blocks[1][i][i])
            .sum::<Rational>()
            * two
    );
    let shift = scalar / Rational::from_integer(12);
    let spectrum = |b: &[[Rational; 3]; 3]| {
        let mut v = [b[0][0] - shift, b[1][1] - shift, b[2][2] - shift];
        v.sort();
        v
    };
    Some(ExactDecomposition {
        scalar,
        traceless_ricci_norm_sq: e_sq,
        wplus: spectrum(&blocks[0]),
        wminus: spectrum(&blocks[1]),
    })
}
