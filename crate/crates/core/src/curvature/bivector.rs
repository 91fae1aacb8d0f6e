//! Bivector algebra on Λ²ℝ⁴.
//!
//! Bivectors are stored as coordinates in the fixed basis
//! `(e₁∧e₂, e₁∧e₃, e₁∧e₄, e₃∧e₄, e₄∧e₂, e₂∧e₃)`. With this ordering the
//! Hodge star swaps the first and last triple, so an operator of the form
//! `[[A, B], [B, A]]` is literally that block matrix.

use nalgebra::{Matrix4, Matrix6, Vector4, Vector6};

/// Index pairs `(i, j)` (zero based) of the basis bivectors `eᵢ∧eⱼ`.
pub const BASIS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (2, 3), (3, 1), (1, 2)];

/// Human readable labels of the basis, as written in operator files.
pub const BASIS_LABELS: [&str; 6] = ["e12", "e13", "e14", "e34", "e42", "e23"];

/// The basis string used by the `curv4-op-v1` file format.
pub const BASIS_STRING: &str = "e12,e13,e14,e34,e42,e23";

/// `u ∧ v` in the fixed basis.
pub fn wedge(u: &Vector4<f64>, v: &Vector4<f64>) -> Vector6<f64> {
    Vector6::from_fn(|k, _| {
        let (i, j) = BASIS[k];
        u[i] * v[j] - u[j] * v[i]
    })
}

/// The antisymmetric 4×4 matrix `Σ` with `Σᵢⱼ = σ(eᵢ, eⱼ)`; for `σ = u∧v`
/// this is `u vᵀ − v uᵀ`.
pub fn to_antisymmetric(sigma: &Vector6<f64>) -> Matrix4<f64> {
    let mut m = Matrix4::zeros();
    for (k, &(i, j)) in BASIS.iter().enumerate() {
        m[(i, j)] = sigma[k];
        m[(j, i)] = -sigma[k];
    }
    m
}

fn permutation_sign(p: [usize; 4]) -> f64 {
    let mut sign = 1.0;
    for a in 0..4 {
        for b in (a + 1)..4 {
            if p[a] > p[b] {
                sign = -sign;
            }
        }
    }
    sign
}

/// Hodge star on Λ²ℝ⁴ for the orientation `e₁∧e₂∧e₃∧e₄`, computed from the
/// Levi-Civita symbol: `⋆(eᵢ∧eⱼ) = Σ_{k<l} ε_{ijkl} e_k∧e_l`.
pub fn hodge_star() -> Matrix6<f64> {
    let mut star = Matrix6::zeros();
    for (col, &(i, j)) in BASIS.iter().enumerate() {
        for (row, &(k, l)) in BASIS.iter().enumerate() {
            let idx = [i, j, k, l];
            let distinct = (0..4).all(|a| (a + 1..4).all(|b| idx[a] != idx[b]));
            if distinct {
                star[(row, col)] = permutation_sign(idx);
            }
        }
    }
    star
}

/// Orthogonal change of basis whose columns are `ω⁺₁, ω⁺₂, ω⁺₃, ω⁻₁, ω⁻₂, ω⁻₃`
/// with `ω±ᵢ = (eᵢ ± ⋆eᵢ)/√2` for the first three basis bivectors.
pub fn duality_basis() -> Matrix6<f64> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let mut u = Matrix6::zeros();
    for i in 0..3 {
        u[(i, i)] = h;
        u[(i + 3, i)] = h;
        u[(i, i + 3)] = h;
        u[(i + 3, i + 3)] = -h;
    }
    u
}

/// Induced action of a linear map of ℝ⁴ on Λ²: column `k` holds
/// `F eᵢ ∧ F eⱼ` for the `k`-th basis pair.
pub fn lift(frame: &Matrix4<f64>) -> Matrix6<f64> {
    let mut l = Matrix6::zeros();
    for (k, &(i, j)) in BASIS.iter().enumerate() {
        let w = wedge(&frame.column(i).into_owned(), &frame.column(j).into_owned());
        l.set_column(k, &w);
    }
    l
}

/// `⟨σ, ⋆σ⟩`; vanishes exactly on decomposable bivectors.
pub fn decomposability_defect(sigma: &Vector6<f64>) -> f64 {
    2.0 * (sigma[0] * sigma[3] + sigma[1] * sigma[4] + sigma[2] * sigma[5])
}

/// Factor a decomposable bivector as `|σ| · (u ∧ v)` with `(u, v)` orthonormal.
///
/// Returns `None` when `σ` is (numerically) zero. The caller is responsible
/// for decomposability; for a non-decomposable input the result spans the
/// dominant invariant plane only.
pub fn factor(sigma: &Vector6<f64>) -> Option<(Vector4<f64>, Vector4<f64>)> {
    let norm = sigma.norm();
    if norm < 1e-300 {
        return None;
    }
    let m = to_antisymmetric(&(sigma / norm));
    let (best, _) = (0..4)
        .map(|c| (c, m.column(c).norm()))
        .fold((0, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
    let w = m.column(best).normalize();
    let u = (m * w).normalize();
    Some((u, w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn star_swaps_triples() {
        let star = hodge_star();
        let mut expected = Matrix6::zeros();
        for i in 0..3 {
            expected[(i + 3, i)] = 1.0;
            expected[(i, i + 3)] = 1.0;
        }
        assert_eq!(star, expected);
        assert_abs_diff_eq!(star * star, Matrix6::identity(), epsilon = 0.0);
    }

    #[test]
    fn duality_basis_diagonalizes_star() {
        let star = hodge_star();
        let u = duality_basis();
        for i in 0..3 {
            let plus = u.column(i).into_owned();
            let minus = u.column(i + 3).into_owned();
            assert_abs_diff_eq!(star * plus, plus, epsilon = 1e-15);
            assert_abs_diff_eq!(star * minus, -minus, epsilon = 1e-15);
        }
        assert_abs_diff_eq!(u.transpose() * u, Matrix6::identity(), epsilon = 1e-15);
    }

    #[test]
    fn e42_carries_the_sign() {
        let e = Matrix4::<f64>::identity();
        let w = wedge(&e.column(3).into_owned(), &e.column(1).into_owned());
        assert_eq!(w, Vector6::new(0.0, 0.0, 0.0, 0.0, 1.0, 0.0));
    }

    #[test]
    fn lift_of_identity_is_identity() {
        assert_eq!(lift(&Matrix4::identity()), Matrix6::identity());
    }

    #[test]
    fn factor_round_trip() {
        let u = Vector4::new(1.0, 2.0, -0.5, 0.3);
        let v = Vector4::new(-0.2, 0.1, 1.0, 2.0);
        let sigma = wedge(&u, &v);
        assert_abs_diff_eq!(decomposability_defect(&sigma), 0.0, epsilon = 1e-14);
        let (a, b) = factor(&sigma).unwrap();
        assert_abs_diff_eq!(a.norm(), 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(b.norm(), 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(a.dot(&b), 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(wedge(&a, &b) * sigma.norm(), sigma, epsilon = 1e-13);
    }

    #[test]
    fn factor_of_zero_is_none() {
        assert!(factor(&Vector6::zeros()).is_none());
    }
}
