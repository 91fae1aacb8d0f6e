//! Berger normal form of an Einstein curvature operator.
//!
//! In a suitable orthonormal frame an Einstein operator reads
//! `[[A, B], [B, A]]` with `A = diag(a₁, a₂, a₃)` the sectional curvatures of
//! the coordinate planes and `B = diag(b₁, b₂, b₃)` the mixed components
//! `R₁₂₃₄, R₁₃₄₂, R₁₄₂₃`.

pub mod sampling;

use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::{Matrix3, Matrix4, Matrix6, SymmetricEigen, Vector6};
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::curvature::bivector::{duality_basis, to_antisymmetric};
use crate::curvature::decompose::sorted_eigh3;
use crate::curvature::operator::EINSTEIN_TOL;
use crate::curvature::CurvatureOperator;
use crate::error::{Error, Result};
use crate::exact::{self, Rational};

pub use sampling::{
    frame_functional_min, haar_rotation, random_berger_data, random_einstein_operator,
};

/// Slack allowed on the Berger constraints, relative to the largest `|aᵢ|`.
pub const BERGER_TOL: f64 = 1e-9;
/// Tolerance for the block form of `R` in a reconstructed frame.
pub const FRAME_TOL: f64 = 1e-8;
/// Eigenvalue gap below which the realizing frame is not unique.
pub const DEGENERACY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BergerData {
    pub a: [f64; 3],
    pub b: [f64; 3],
    pub lambda_einstein: f64,
}

fn violations(a: &[f64; 3], b: &[f64; 3], lambda: f64) -> Vec<String> {
    let mut out = Vec::new();
    if !a.iter().chain(b).all(|x| x.is_finite()) || !lambda.is_finite() {
        out.push("entries must be finite".into());
        return out;
    }
    let scale = a
        .iter()
        .chain(b)
        .fold(lambda.abs().max(1.0), |m, x| m.max(x.abs()));
    let tol = BERGER_TOL * scale;
    let ascending = |v: [f64; 3]| v[0] <= v[1] + tol && v[1] <= v[2] + tol;
    if !ascending(*a) {
        out.push(format!("a must be ascending, got {a:?}"));
    }
    let sum_a: f64 = a.iter().sum();
    if (sum_a - lambda).abs() > tol {
        out.push(format!(
            "a1 + a2 + a3 = {sum_a} differs from lambda = {lambda}"
        ));
    }
    let sum_b: f64 = b.iter().sum();
    if sum_b.abs() > tol {
        out.push(format!("b1 + b2 + b3 = {sum_b:.3e} is not zero"));
    }
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let lhs = (b[j] - b[i]).abs();
        let rhs = a[j] - a[i];
        if lhs > rhs + tol {
            out.push(format!(
                "|b{} - b{}| = {lhs} exceeds a{} - a{} = {rhs}",
                j + 1,
                i + 1,
                j + 1,
                i + 1
            ));
        }
    }
    for (name, sign) in [("a + b", 1.0), ("a - b", -1.0)] {
        let v = [a[0] + sign * b[0], a[1] + sign * b[1], a[2] + sign * b[2]];
        if !ascending(v) {
            out.push(format!("{name} must be ascending, got {v:?}"));
        }
    }
    out
}

impl BergerData {
    /// Validates every Berger constraint; the error lists all violations.
    pub fn new(a: [f64; 3], b: [f64; 3], lambda_einstein: f64) -> Result<Self> {
        let bad = violations(&a, &b, lambda_einstein);
        if !bad.is_empty() {
            return Err(Error::InvalidBerger(bad.join("; ")));
        }
        Ok(Self {
            a,
            b,
            lambda_einstein,
        })
    }

    /// Eigenvalues of `R⁺`, ascending: `aᵢ + bᵢ`.
    pub fn r_plus(&self) -> [f64; 3] {
        [
            self.a[0] + self.b[0],
            self.a[1] + self.b[1],
            self.a[2] + self.b[2],
        ]
    }

    /// Eigenvalues of `R⁻`, ascending: `aᵢ − bᵢ`.
    pub fn r_minus(&self) -> [f64; 3] {
        [
            self.a[0] - self.b[0],
            self.a[1] - self.b[1],
            self.a[2] - self.b[2],
        ]
    }

    /// The same data for the operator scaled by `factor > 0`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        let f = |x: [f64; 3]| x.map(|v| v * factor);
        Self::new(f(self.a), f(self.b), self.lambda_einstein * factor)
    }
}

/// [`BergerData`] with rational entries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExactBergerData {
    pub a: [Rational; 3],
    pub b: [Rational; 3],
    pub lambda_einstein: Rational,
}

impl ExactBergerData {
    pub fn to_f64(&self) -> Result<BergerData> {
        let f = |x: &[Rational; 3]| x.map(|v| exact::to_f64(&v));
        BergerData::new(f(&self.a), f(&self.b), exact::to_f64(&self.lambda_einstein))
    }
}

fn not_einstein(op: &CurvatureOperator) -> Error {
    Error::NotEinstein {
        norm: op.traceless_ricci_norm_sq().sqrt(),
        tolerance: EINSTEIN_TOL,
    }
}

/// Berger data from the ordered spectra `r⁺`, `r⁻` of the duality blocks:
/// `aᵢ = (r⁺ᵢ + r⁻ᵢ)/2`, `bᵢ = (r⁺ᵢ − r⁻ᵢ)/2`.
pub fn berger_data(op: &CurvatureOperator) -> Result<BergerData> {
    if !op.is_einstein() {
        return Err(not_einstein(op));
    }
    let (plus, minus, _) = op.duality_blocks();
    let (rp, _) = sorted_eigh3(&plus);
    let (rm, _) = sorted_eigh3(&minus);
    let a = [0, 1, 2].map(|i| 0.5 * (rp[i] + rm[i]));
    let b = [0, 1, 2].map(|i| 0.5 * (rp[i] - rm[i]));
    BergerData::new(a, b, op.scalar() / 4.0)
}

/// Exact Berger data, available when the operator carries exact entries
/// and its duality blocks are diagonal.
pub fn berger_data_exact(op: &CurvatureOperator) -> Option<ExactBergerData> {
    let blocks = op.exact_duality_blocks()?;
    let diagonal =
        |m: &[[Rational; 3]; 3]| (0..3).all(|i| (0..3).all(|j| i == j || m[i][j].is_zero()));
    if !diagonal(&blocks[0])
        || !diagonal(&blocks[1])
        || blocks[2].iter().flatten().any(|x| !x.is_zero())
    {
        return None;
    }
    let mut rp = [0, 1, 2].map(|i| blocks[0][i][i]);
    let mut rm = [0, 1, 2].map(|i| blocks[1][i][i]);
    rp.sort();
    rm.sort();
    let half = exact::rat(1, 2);
    let a = [0, 1, 2].map(|i| (rp[i] + rm[i]) * half);
    let b = [0, 1, 2].map(|i| (rp[i] - rm[i]) * half);
    Some(ExactBergerData {
        a,
        b,
        lambda_einstein: a.iter().sum(),
    })
}

pub(crate) fn berger_matrix(a: &[f64; 3], b: &[f64; 3]) -> Matrix6<f64> {
    let mut m = Matrix6::zeros();
    for i in 0..3 {
        m[(i, i)] = a[i];
        m[(i + 3, i + 3)] = a[i];
        m[(i, i + 3)] = b[i];
        m[(i + 3, i)] = b[i];
    }
    m
}

/// The operator `[[diag a, diag b], [diag b, diag a]]` in the fixed basis.
pub fn berger_to_operator(d: &BergerData) -> Result<CurvatureOperator> {
    BergerData::new(d.a, d.b, d.lambda_einstein)?;
    CurvatureOperator::new(berger_matrix(&d.a, &d.b), Some(d.lambda_einstein))
}

/// An oriented orthonormal frame `(e₁, …, e₄)` stored as matrix columns.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Frame {
    matrix: Matrix4<f64>,
    /// Set when the realizing frame is not unique (repeated eigenvalues).
    pub degenerate: bool,
}

impl Frame {
    /// Requires `FᵀF = I` to 1e-10 and `det F = +1`.
    pub fn new(matrix: Matrix4<f64>) -> Result<Self> {
        let defect = (matrix.transpose() * matrix - Matrix4::identity()).amax();
        if !(defect <= 1e-10) {
            return Err(Error::Domain(format!(
                "frame is not orthonormal (defect {defect:.3e})"
            )));
        }
        let det = matrix.determinant();
        if det < 0.0 {
            return Err(Error::Domain("frame is not orientation preserving".into()));
        }
        Ok(Self {
            matrix,
            degenerate: false,
        })
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.matrix
    }
}

/// Flip the last column if needed so that the basis is oriented.
fn orient(m: &mut Matrix3<f64>) {
    if m.determinant() < 0.0 {
        let c = -m.column(2);
        m.set_column(2, &c);
    }
}

fn has_repeat(v: &nalgebra::Vector3<f64>, scale: f64) -> bool {
    v[1] - v[0] < DEGENERACY_TOL * scale || v[2] - v[1] < DEGENERACY_TOL * scale
}

/// An oriented orthonormal frame in which `R` takes the Berger block form.
///
/// Ordered eigenbases `ξᵢ` of `R⁺` and `ηᵢ` of `R⁻` are made oriented; the
/// pairs then come from one frame, with `σᵢ = (ξᵢ + ηᵢ)/√2 = e₁∧eᵢ₊₁`.
/// For `Σᵢ` the antisymmetric matrix of `σᵢ`, `−ΣᵢΣᵢ` projects onto
/// `span(e₁, eᵢ₊₁)`, so `e₁` spans the top eigenspace of their sum and
/// `eᵢ₊₁ = −Σᵢ e₁`.
pub fn reconstruct_frame(op: &CurvatureOperator) -> Result<Frame> {
    let data = berger_data(op)?;
    let (plus, minus, _) = op.duality_blocks();
    let (rp, mut xi) = sorted_eigh3(&plus);
    let (rm, mut eta) = sorted_eigh3(&minus);
    orient(&mut xi);
    orient(&mut eta);

    let u = duality_basis();
    let sigma: [Vector6<f64>; 3] = [0, 1, 2].map(|i| {
        let up = u.fixed_columns::<3>(0) * xi.column(i);
        let um = u.fixed_columns::<3>(3) * eta.column(i);
        (up + um) * FRAC_1_SQRT_2
    });
    let sig = sigma.map(|s| to_antisymmetric(&s));
    let proj: Matrix4<f64> = sig.iter().map(|s| -(s * s)).sum();
    let eig = SymmetricEigen::new(proj);
    let top = eig.eigenvalues.imax();
    let e1 = eig.eigenvectors.column(top).normalize();

    let mut f = Matrix4::zeros();
    f.set_column(0, &e1);
    for i in 0..3 {
        f.set_column(i + 1, &(-(sig[i] * e1)));
    }
    let mut frame = Frame::new(f)?;

    let scale = op.matrix().amax().max(1.0);
    frame.degenerate = has_repeat(&rp, scale) || has_repeat(&rm, scale);
    let residual = (op.in_frame(frame.matrix()) - berger_matrix(&data.a, &data.b)).amax();
    if residual > FRAME_TOL * scale {
        return Err(Error::InvalidOperator(format!(
            "frame reconstruction left a residual of {residual:.3e}"
        )));
    }
    Ok(frame)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::models::{model_space, ModelSpace};
    use crate::exact::rat;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn model_berger_data() {
        let cp2 = berger_data(&model_space(ModelSpace::Cp2)).unwrap();
        let expect_a = [1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0];
        let expect_b = [-1.0 / 6.0, -1.0 / 6.0, 1.0 / 3.0];
        for i in 0..3 {
            assert_abs_diff_eq!(cp2.a[i], expect_a[i], epsilon = 1e-14);
            assert_abs_diff_eq!(cp2.b[i], expect_b[i], epsilon = 1e-14);
        }
        assert_abs_diff_eq!(cp2.lambda_einstein, 1.0, epsilon = 1e-14);

        let s2 = berger_data(&model_space(ModelSpace::S2xS2)).unwrap();
        assert_abs_diff_eq!(s2.a[2], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(s2.a[0], 0.0, epsilon = 1e-14);

        let exact = berger_data_exact(&model_space(ModelSpace::Cp2)).unwrap();
        assert_eq!(exact.a, [rat(1, 6), rat(1, 6), rat(2, 3)]);
        assert_eq!(exact.b, [rat(-1, 6), rat(-1, 6), rat(1, 3)]);
        assert_eq!(exact.lambda_einstein, rat(1, 1));
    }

    #[test]
    fn rejects_non_einstein() {
        let mut m = Matrix6::zeros();
        m[(0, 0)] = 1.0;
        let op = CurvatureOperator::new(m, None).unwrap();
        assert!(matches!(berger_data(&op), Err(Error::NotEinstein { .. })));
        assert!(matches!(
            reconstruct_frame(&op),
            Err(Error::NotEinstein { .. })
        ));
    }

    #[test]
    fn constraint_violations_are_named() {
        let err = BergerData::new([0.0, 0.2, 0.8], [0.3, -0.3, 0.0], 1.0).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("|b2 - b1|"), "{msg}");
        assert!(BergerData::new([0.5, 0.2, 0.3], [0.0; 3], 1.0).is_err());
        assert!(BergerData::new([0.2, 0.3, 0.5], [0.1, 0.0, 0.0], 1.0).is_err());
        assert!(BergerData::new([0.2, 0.3, 0.5], [0.0; 3], 2.0).is_err());
    }

    #[test]
    fn cp2_round_trip_through_operator() {
        let d = BergerData::new(
            [1.0 / 6.0, 1.0 / 6.0, 2.0 / 3.0],
            [-1.0 / 6.0, -1.0 / 6.0, 1.0 / 3.0],
            1.0,
        )
        .unwrap();
        let op = berger_to_operator(&d).unwrap();
        let dec = crate::curvature::duality_decompose(&op);
        assert!(dec.wminus.norm() < 1e-14);
        assert_abs_diff_eq!(dec.wplus.eigenvalues()[2], 2.0 / 3.0, epsilon = 1e-14);
    }

    #[test]
    fn model_frames() {
        let s4 = reconstruct_frame(&model_space(ModelSpace::Sphere)).unwrap();
        assert!(s4.degenerate);
        let cp2 = reconstruct_frame(&model_space(ModelSpace::Cp2)).unwrap();
        assert!(cp2.degenerate);
        let d = berger_data(&model_space(ModelSpace::Cp2)).unwrap();
        let m = model_space(ModelSpace::Cp2).in_frame(cp2.matrix());
        assert_abs_diff_eq!(m, berger_matrix(&d.a, &d.b), epsilon = 1e-10);
    }

    #[test]
    fn generic_frame_is_not_degenerate() {
        let d = BergerData::new([0.1, 0.3, 0.6], [0.05, -0.08, 0.03], 1.0).unwrap();
        let frame = reconstruct_frame(&berger_to_operator(&d).unwrap()).unwrap();
        assert!(!frame.degenerate);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn normal_form_round_trip(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let d = random_berger_data(&mut rng, 1.0);
            let back = berger_data(&berger_to_operator(&d).unwrap()).unwrap();
            for i in 0..3 {
                prop_assert!((back.a[i] - d.a[i]).abs() < 1e-10);
                prop_assert!((back.b[i] - d.b[i]).abs() < 1e-10);
            }
        }

        #[test]
        fn rotation_invariance_and_frames(seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let d = random_berger_data(&mut rng, 1.0);
            let q = haar_rotation(&mut rng);
            let op = berger_to_operator(&d).unwrap().rotated(&q).unwrap();
            let back = berger_data(&op).unwrap();
            for i in 0..3 {
                prop_assert!((back.a[i] - d.a[i]).abs() < 1e-10);
                prop_assert!((back.b[i] - d.b[i]).abs() < 1e-10);
            }
            let frame = reconstruct_frame(&op).unwrap();
            let m = op.in_frame(frame.matrix());
            prop_assert!((m - berger_matrix(&back.a, &back.b)).amax() < FRAME_TOL);
        }
    }
}
