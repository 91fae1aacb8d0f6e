use nalgebra::{Matrix3, Matrix4, Matrix6};
use num_traits::{Num, Zero};
use std::ops::Neg;

use super::bivector::{lift, BASIS};
use crate::error::{Error, Result};
use crate::exact::{self, Rational};

/// Symmetry and Bianchi checks are relative to the largest entry.
pub const ALGEBRAIC_TOL: f64 = 1e-12;
/// Threshold on the traceless Ricci norm below which an operator is Einstein.
pub const EINSTEIN_TOL: f64 = 1e-9;

pub type ExactMatrix = [[Rational; 6]; 6];

/// A curvature operator `R : Λ²ℝ⁴ → Λ²ℝ⁴` stored as a symmetric 6×6 matrix in
/// the fixed bivector basis, so that `K(eᵢ, eⱼ) = ⟨R(eᵢ∧eⱼ), eᵢ∧eⱼ⟩`.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureOperator {
    matrix: Matrix6<f64>,
    lambda_einstein: Option<f64>,
    exact: Option<ExactMatrix>,
}

fn scale_of(m: &Matrix6<f64>) -> f64 {
    m.iter().fold(1.0f64, |acc, x| acc.max(x.abs()))
}

/// Position and sign of `eᵢ∧eⱼ` in the fixed basis.
fn pair_index(i: usize, j: usize) -> Option<(usize, bool)> {
    BASIS.iter().enumerate().find_map(|(k, &(a, b))| {
        if (a, b) == (i, j) {
            Some((k, true))
        } else if (a, b) == (j, i) {
            Some((k, false))
        } else {
            None
        }
    })
}

/// `R_{ijkl} = ⟨R(eᵢ∧eⱼ), e_k∧e_l⟩` read from a matrix accessor.
fn riemann_with<T>(get: &impl Fn(usize, usize) -> T, i: usize, j: usize, k: usize, l: usize) -> T
where
    T: Num + Neg<Output = T>,
{
    match (pair_index(i, j), pair_index(k, l)) {
        (Some((a, sa)), Some((b, sb))) => {
            let v = get(a, b);
            if sa == sb {
                v
            } else {
                -v
            }
        }
        _ => T::zero(),
    }
}

fn ricci_with<T>(get: impl Fn(usize, usize) -> T) -> [[T; 4]; 4]
where
    T: Num + Neg<Output = T> + Copy,
{
    let mut rc = [[T::zero(); 4]; 4];
    for (i, row) in rc.iter_mut().enumerate() {
        for (k, entry) in row.iter_mut().enumerate() {
            *entry = (0..4).fold(T::zero(), |acc, j| acc + riemann_with(&get, i, j, k, j));
        }
    }
    rc
}

fn validate(matrix: &Matrix6<f64>) -> Result<()> {
    if !matrix.iter().all(|x| x.is_finite()) {
        return Err(Error::InvalidOperator("non-finite entry".into()));
    }
    let tol = ALGEBRAIC_TOL * scale_of(matrix);
    let asym = (matrix - matrix.transpose()).amax();
    if asym > tol {
        return Err(Error::InvalidOperator(format!(
            "not symmetric (max |M - Mᵀ| = {asym:.3e})"
        )));
    }
    let bianchi = matrix[(0, 3)] + matrix[(1, 4)] + matrix[(2, 5)];
    if bianchi.abs() > tol {
        return Err(Error::InvalidOperator(format!(
            "first Bianchi identity fails (R1234 + R1342 + R1423 = {bianchi:.3e})"
        )));
    }
    Ok(())
}

impl CurvatureOperator {
    /// Validate symmetry, the first Bianchi identity and, when `lambda` is
    /// given, the Einstein condition `Rc = λ g`.
    pub fn new(matrix: Matrix6<f64>, lambda_einstein: Option<f64>) -> Result<Self> {
        validate(&matrix)?;
        let op = Self {
            matrix,
            lambda_einstein,
            exact: None,
        };
        if let Some(lambda) = lambda_einstein {
            op.check_einstein_constant(lambda)?;
        }
        Ok(op)
    }

    /// Build from exact rational entries; the floating point matrix is the
    /// rounded image of the exact one.
    pub fn from_exact(exact: ExactMatrix, lambda_einstein: Option<Rational>) -> Result<Self> {
        for i in 0..6 {
            for j in 0..6 {
                if exact[i][j] != exact[j][i] {
                    return Err(Error::InvalidOperator(format!(
                        "exact entries ({i},{j}) and ({j},{i}) differ"
                    )));
                }
            }
        }
        if !(exact[0][3] + exact[1][4] + exact[2][5]).is_zero() {
            return Err(Error::InvalidOperator(
                "first Bianchi identity fails on exact entries".into(),
            ));
        }
        if let Some(lambda) = lambda_einstein {
            let rc = ricci_with(|a, b| exact[a][b]);
            for (i, row) in rc.iter().enumerate() {
                for (k, v) in row.iter().enumerate() {
                    let target = if i == k { lambda } else { Rational::zero() };
                    if *v != target {
                        return Err(Error::InvalidOperator(format!(
                            "exact Ricci entry ({i},{k}) = {} differs from λ g",
                            exact::format_rational(v)
                        )));
                    }
                }
            }
        }
        let matrix = Matrix6::from_fn(|i, j| exact::to_f64(&exact[i][j]));
        Ok(Self {
            matrix,
            lambda_einstein: lambda_einstein.map(|l| exact::to_f64(&l)),
            exact: Some(exact),
        })
    }

    fn check_einstein_constant(&self, lambda: f64) -> Result<()> {
        let rc = self.ricci();
        let dev = (rc - Matrix4::identity() * lambda).amax();
        if dev > EINSTEIN_TOL * scale_of(&self.matrix) {
            return Err(Error::InvalidOperator(format!(
                "flagged Einstein with λ = {lambda} but |Rc - λg|_max = {dev:.3e}"
            )));
        }
        Ok(())
    }

    pub fn matrix(&self) -> &Matrix6<f64> {
        &self.matrix
    }

    pub fn lambda_einstein(&self) -> Option<f64> {
        self.lambda_einstein
    }

    pub fn exact(&self) -> Option<&ExactMatrix> {
        self.exact.as_ref()
    }

    pub fn riemann(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        riemann_with(&|a, b| self.matrix[(a, b)], i, j, k, l)
    }

    pub fn ricci(&self) -> Matrix4<f64> {
        let rc = ricci_with(|a, b| self.matrix[(a, b)]);
        Matrix4::from_fn(|i, k| rc[i][k])
    }

    pub fn exact_ricci(&self) -> Option<[[Rational; 4]; 4]> {
        self.exact.as_ref().map(|e| ricci_with(|a, b| e[a][b]))
    }

    /// Scalar curvature `S = 2 tr R`, so that `Rc = g` gives `S = 4`.
    pub fn scalar(&self) -> f64 {
        2.0 * self.matrix.trace()
    }

    /// `|Rc - (S/4) g|²` as a symmetric 2-tensor.
    pub fn traceless_ricci_norm_sq(&self) -> f64 {
        let e = self.ricci() - Matrix4::identity() * (self.scalar() / 4.0);
        e.norm_squared()
    }

    pub fn is_einstein(&self) -> bool {
        self.traceless_ricci_norm_sq().sqrt() <= EINSTEIN_TOL * scale_of(&self.matrix)
    }

    /// The blocks `(R⁺, R⁻, C)` of `R` in the duality basis:
    /// `R⁺ = ⟨R ω⁺ᵢ, ω⁺ⱼ⟩`, `R⁻ = ⟨R ω⁻ᵢ, ω⁻ⱼ⟩`, `Cᵢⱼ = ⟨R ω⁺ᵢ, ω⁻ⱼ⟩`.
    pub fn duality_blocks(&self) -> (Matrix3<f64>, Matrix3<f64>, Matrix3<f64>) {
        let p = self.matrix.fixed_view::<3, 3>(0, 0).into_owned();
        let q = self.matrix.fixed_view::<3, 3>(0, 3).into_owned();
        let t = self.matrix.fixed_view::<3, 3>(3, 3).into_owned();
        let qt = q.transpose();
        let plus = (p + q + qt + t) * 0.5;
        let minus = (p - q - qt + t) * 0.5;
        let cross = (p - q + qt - t) * 0.5;
        (plus, minus, cross)
    }

    /// Exact duality blocks, when exact entries are present.
    pub fn exact_duality_blocks(&self) -> Option<[[[Rational; 3]; 3]; 3]> {
        let e = self.exact.as_ref()?;
        let half = exact::rat(1, 2);
        let mut out = [[[Rational::zero(); 3]; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                let (p, q, qt, t) = (e[i][j], e[i][j + 3], e[j][i + 3], e[i + 3][j + 3]);
                out[0][i][j] = (p + q + qt + t) * half;
                out[1][i][j] = (p - q - qt + t) * half;
                out[2][i][j] = (p - q + qt - t) * half;
            }
        }
        Some(out)
    }

    /// The matrix of `R` in the bivector basis induced by an orthonormal
    /// frame `F`: entries `⟨R(F eₐ∧F e_b), F e_c∧F e_d⟩`.
    pub fn in_frame(&self, frame: &Matrix4<f64>) -> Matrix6<f64> {
        let l = lift(frame);
        l.transpose() * self.matrix * l
    }

    /// Push `R` forward by an orthogonal map `Q` of ℝ⁴: `R' = Λ²Q · R · Λ²Qᵀ`.
    pub fn rotated(&self, q: &Matrix4<f64>) -> Result<Self> {
        let l = lift(q);
        let m = l * self.matrix * l.transpose();
        let m = (m + m.transpose()) * 0.5;
        Self::new(m, self.lambda_einstein)
    }

    /// Multiply by a positive constant; exact entries are dropped unless the
    /// factor is exactly one.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if factor == 1.0 {
            return Ok(self.clone());
        }
        Self::new(
            self.matrix * factor,
            self.lambda_einstein.map(|l| l * factor),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn diag(a: [f64; 3], b: [f64; 3]) -> Matrix6<f64> {
        let mut m = Matrix6::zeros();
        for i in 0..3 {
            m[(i, i)] = a[i];
            m[(i + 3, i + 3)] = a[i];
            m[(i, i + 3)] = b[i];
            m[(i + 3, i)] = b[i];
        }
        m
    }

    #[test]
    fn rejects_asymmetric() {
        let mut m = Matrix6::identity();
        m[(0, 1)] = 0.1;
        assert!(matches!(
            CurvatureOperator::new(m, None),
            Err(Error::InvalidOperator(_))
        ));
    }

    #[test]
    fn rejects_bianchi_violation() {
        let m = diag([0.3, 0.3, 0.4], [0.1, 0.1, 0.1]);
        let err = CurvatureOperator::new(m, None).unwrap_err();
        assert!(err.to_string().contains("Bianchi"));
    }

    #[test]
    fn rejects_wrong_einstein_constant() {
        let m = Matrix6::identity() / 3.0;
        assert!(CurvatureOperator::new(m, Some(1.0)).is_ok());
        assert!(CurvatureOperator::new(m, Some(2.0)).is_err());
    }

    #[test]
    fn ricci_of_berger_form_is_trace_of_a() {
        let op = CurvatureOperator::new(diag([0.1, 0.3, 0.6], [0.05, -0.15, 0.1]), None).unwrap();
        assert_abs_diff_eq!(op.ricci(), Matrix4::identity(), epsilon = 1e-15);
        assert_abs_diff_eq!(op.scalar(), 4.0, epsilon = 1e-15);
        assert!(op.is_einstein());
    }

    #[test]
    fn non_einstein_has_cross_block() {
        // scalar-flat product-like operator: curvature only on e12
        let mut m = Matrix6::zeros();
        m[(0, 0)] = 1.0;
        let op = CurvatureOperator::new(m, None).unwrap();
        let (_, _, cross) = op.duality_blocks();
        assert!(cross.amax() > 0.1);
        assert!(!op.is_einstein());
        // Rc = diag(1, 1, 0, 0), S = 2, E = diag(1/2, 1/2, -1/2, -1/2)
        assert_abs_diff_eq!(op.traceless_ricci_norm_sq(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn riemann_symmetries() {
        let op = CurvatureOperator::new(diag([0.1, 0.3, 0.6], [0.05, -0.15, 0.1]), None).unwrap();
        // R_{1342} = b2, and the e42 sign is carried by the basis
        assert_abs_diff_eq!(op.riemann(0, 2, 3, 1), -0.15);
        assert_abs_diff_eq!(op.riemann(0, 2, 1, 3), 0.15);
        assert_abs_diff_eq!(op.riemann(2, 0, 1, 3), -0.15);
        assert_eq!(op.riemann(0, 0, 1, 2), 0.0);
    }
}
