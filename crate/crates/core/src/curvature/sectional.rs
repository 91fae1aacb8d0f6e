//! Sectional curvature and its extremization over the Grassmannian of
//! 2-planes.
//!
//! A unit decomposable bivector is exactly `(ξ + η)/√2` with `ξ` a unit
//! self-dual and `η` a unit anti-self-dual form, so the Grassmannian is
//! sampled as a product of two 2-spheres in the `ω±` coordinates.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use nalgebra::{Vector3, Vector4, Vector6};
use serde::Serialize;

use super::bivector::{duality_basis, factor, wedge};
use super::operator::CurvatureOperator;
use crate::error::{Error, Result};
use crate::grid::{grid_minimize, Refinement};

pub const PLANE_TOL: f64 = 1e-12;
pub const DEGENERATE_TOL: f64 = 1e-9;

/// An oriented 2-plane given by an orthonormal pair.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TangentPlane {
    u: Vector4<f64>,
    v: Vector4<f64>,
}

impl TangentPlane {
    /// Requires `|u| = |v| = 1` and `⟨u, v⟩ = 0` to [`PLANE_TOL`].
    pub fn new(u: Vector4<f64>, v: Vector4<f64>) -> Result<Self> {
        let bad = |what: &str, x: f64| Error::InvalidPlane(format!("{what} = {x:.3e}"));
        if (u.norm() - 1.0).abs() > PLANE_TOL {
            return Err(bad("|u| - 1", u.norm() - 1.0));
        }
        if (v.norm() - 1.0).abs() > PLANE_TOL {
            return Err(bad("|v| - 1", v.norm() - 1.0));
        }
        if u.dot(&v).abs() > PLANE_TOL {
            return Err(bad("<u, v>", u.dot(&v)));
        }
        Ok(Self { u, v })
    }

    /// Orthonormalize an arbitrary spanning pair (Gram-Schmidt, orientation kept).
    pub fn from_span(u: Vector4<f64>, v: Vector4<f64>) -> Result<Self> {
        let area = wedge(&u, &v).norm();
        if !(area >= DEGENERATE_TOL) {
            return Err(Error::DegeneratePlane(area));
        }
        let e1 = u.normalize();
        let e2 = (v - e1 * e1.dot(&v)).normalize();
        Ok(Self { u: e1, v: e2 })
    }

    pub fn u(&self) -> &Vector4<f64> {
        &self.u
    }

    pub fn v(&self) -> &Vector4<f64> {
        &self.v
    }

    pub fn bivector(&self) -> Vector6<f64> {
        wedge(&self.u, &self.v)
    }

    fn from_unit_bivector(sigma: &Vector6<f64>) -> Self {
        let (u, v) = factor(sigma).expect("unit bivector");
        Self { u, v }
    }
}

/// `K(σ) = ⟨R(u∧v), u∧v⟩` for an orthonormal pair.
pub fn sectional(op: &CurvatureOperator, plane: &TangentPlane) -> f64 {
    let s = plane.bivector();
    (s.transpose() * op.matrix() * s)[(0, 0)]
}

/// Sectional curvature of the plane spanned by any two vectors.
pub fn sectional_curvature(
    op: &CurvatureOperator,
    u: &Vector4<f64>,
    v: &Vector4<f64>,
) -> Result<f64> {
    let s = wedge(u, v);
    let n2 = s.norm_squared();
    if !(n2.sqrt() >= DEGENERATE_TOL) {
        return Err(Error::DegeneratePlane(n2.sqrt()));
    }
    Ok((s.transpose() * op.matrix() * s)[(0, 0)] / n2)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SectionalExtrema {
    pub min: f64,
    pub max: f64,
    pub argmin: TangentPlane,
    pub argmax: TangentPlane,
    pub resolution: usize,
}

fn sphere_point(s: &[f64]) -> Vector3<f64> {
    let theta = PI * s[0];
    let phi = 2.0 * PI * s[1];
    Vector3::new(
        theta.sin() * phi.cos(),
        theta.sin() * phi.sin(),
        theta.cos(),
    )
}

fn bivector_of(xi: &Vector3<f64>, eta: &Vector3<f64>) -> Vector6<f64> {
    let coords = Vector6::new(xi[0], xi[1], xi[2], eta[0], eta[1], eta[2]) * FRAC_1_SQRT_2;
    duality_basis() * coords
}

const SPHERE_REFINE: Refinement = Refinement::new(3, 8);
/// Per-sphere resolution cap for the joint search on non-Einstein input.
const JOINT_CAP: usize = 24;

/// Grid search for the extreme sectional curvatures.
///
/// Each sphere is sampled on a `(θ, φ)` grid with `resolution` polar and
/// `2·resolution` azimuthal steps followed by a short zoom. On Einstein input
/// the cross block vanishes and `K = (ξᵀR⁺ξ + ηᵀR⁻η)/2`, so each sphere is
/// searched on its own; otherwise the product is searched jointly with the
/// per-sphere resolution capped at 24.
pub fn extremize_sectional(op: &CurvatureOperator, resolution: usize) -> Result<SectionalExtrema> {
    if resolution < 8 {
        return Err(Error::Domain(format!(
            "resolution must be at least 8, got {resolution}"
        )));
    }
    let (plus, minus, cross) = op.duality_blocks();
    let steps = [resolution, 2 * resolution];

    let (min, argmin, max, argmax) = if cross.amax() <= 1e-12 * op.matrix().amax().max(1.0) {
        let quad = |m: nalgebra::Matrix3<f64>, sign: f64| {
            grid_minimize(
                move |s: &[f64; 2]| {
                    let x = sphere_point(s);
                    Some(sign * (x.transpose() * m * x)[(0, 0)])
                },
                steps,
                SPHERE_REFINE,
            )
            .expect("sphere grid is always feasible")
        };
        let (lo_p, lo_m) = (quad(plus, 1.0), quad(minus, 1.0));
        let (hi_p, hi_m) = (quad(plus, -1.0), quad(minus, -1.0));
        (
            0.5 * (lo_p.value + lo_m.value),
            bivector_of(&sphere_point(&lo_p.point), &sphere_point(&lo_m.point)),
            -0.5 * (hi_p.value + hi_m.value),
            bivector_of(&sphere_point(&hi_p.point), &sphere_point(&hi_m.point)),
        )
    } else {
        let r = resolution.min(JOINT_CAP);
        let steps = [r, 2 * r, r, 2 * r];
        let m = *op.matrix();
        let search = |sign: f64| {
            grid_minimize(
                move |s: &[f64; 4]| {
                    let sigma = bivector_of(&sphere_point(&s[0..2]), &sphere_point(&s[2..4]));
                    Some(sign * (sigma.transpose() * m * sigma)[(0, 0)])
                },
                steps,
                SPHERE_REFINE,
            )
            .expect("product grid is always feasible")
        };
        let (lo, hi) = (search(1.0), search(-1.0));
        let arg = |p: &[f64; 4]| bivector_of(&sphere_point(&p[0..2]), &sphere_point(&p[2..4]));
        (lo.value, arg(&lo.point), -hi.value, arg(&hi.point))
    };

    Ok(SectionalExtrema {
        min,
        max,
        argmin: TangentPlane::from_unit_bivector(&argmin),
        argmax: TangentPlane::from_unit_bivector(&argmax),
        resolution,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::models::{model_space, ModelSpace};
    use approx::assert_abs_diff_eq;

    fn e(i: usize) -> Vector4<f64> {
        Vector4::from_fn(|k, _| if k == i { 1.0 } else { 0.0 })
    }

    #[test]
    fn sphere_is_constant() {
        let op = model_space(ModelSpace::Sphere);
        let p = TangentPlane::from_span(
            Vector4::new(1.0, 2.0, 3.0, 4.0),
            Vector4::new(0.0, -1.0, 0.5, 2.0),
        )
        .unwrap();
        assert_abs_diff_eq!(sectional(&op, &p), 1.0 / 3.0, epsilon = 1e-15);
    }

    #[test]
    fn s2xs2_factor_and_mixed_planes() {
        let op = model_space(ModelSpace::S2xS2);
        let factor = TangentPlane::new(e(0), e(3)).unwrap();
        let mixed = TangentPlane::new(e(0), e(1)).unwrap();
        assert_eq!(sectional(&op, &factor), 1.0);
        assert_eq!(sectional(&op, &mixed), 0.0);
    }

    #[test]
    fn degenerate_plane_errors() {
        let op = model_space(ModelSpace::Sphere);
        let u = Vector4::new(1.0, 0.0, 0.0, 0.0);
        assert!(matches!(
            sectional_curvature(&op, &u, &(u * 2.0)),
            Err(Error::DegeneratePlane(_))
        ));
        assert!(TangentPlane::from_span(u, u * 3.0).is_err());
        assert!(TangentPlane::new(u, Vector4::new(0.5, 1.0, 0.0, 0.0)).is_err());
    }

    #[test]
    fn unnormalized_span_agrees() {
        let op = model_space(ModelSpace::Cp2);
        let (u, v) = (
            Vector4::new(1.0, 2.0, 0.0, 1.0),
            Vector4::new(0.0, 1.0, 3.0, -1.0),
        );
        let plane = TangentPlane::from_span(u, v).unwrap();
        assert_abs_diff_eq!(
            sectional_curvature(&op, &u, &v).unwrap(),
            sectional(&op, &plane),
            epsilon = 1e-14
        );
    }

    #[test]
    fn extremes_of_models() {
        let cp2 = extremize_sectional(&model_space(ModelSpace::Cp2), 200).unwrap();
        assert_abs_diff_eq!(cp2.min, 1.0 / 6.0, epsilon = 1e-3);
        assert_abs_diff_eq!(cp2.max, 2.0 / 3.0, epsilon = 1e-3);
        let op = model_space(ModelSpace::Cp2);
        assert_abs_diff_eq!(sectional(&op, &cp2.argmin), cp2.min, epsilon = 1e-12);
        assert_abs_diff_eq!(sectional(&op, &cp2.argmax), cp2.max, epsilon = 1e-12);

        let s4 = extremize_sectional(&model_space(ModelSpace::Sphere), 16).unwrap();
        assert_abs_diff_eq!(s4.min, 1.0 / 3.0, epsilon = 1e-14);
        assert_abs_diff_eq!(s4.max, 1.0 / 3.0, epsilon = 1e-14);

        let s2 = extremize_sectional(&model_space(ModelSpace::S2xS2), 64).unwrap();
        assert_abs_diff_eq!(s2.min, 0.0, epsilon = 1e-3);
        assert_abs_diff_eq!(s2.max, 1.0, epsilon = 1e-3);
    }

    #[test]
    fn low_resolution_rejected() {
        assert!(extremize_sectional(&model_space(ModelSpace::Sphere), 7).is_err());
    }

    #[test]
    fn non_einstein_joint_search() {
        let mut m = nalgebra::Matrix6::zeros();
        m[(0, 0)] = 1.0;
        let op = CurvatureOperator::new(m, None).unwrap();
        let ext = extremize_sectional(&op, 12).unwrap();
        // K(u∧v) = (u1 v2 - u2 v1)², ranging over [0, 1]
        assert_abs_diff_eq!(ext.min, 0.0, epsilon = 1e-6);
        assert_abs_diff_eq!(ext.max, 1.0, epsilon = 1e-6);
    }
}
