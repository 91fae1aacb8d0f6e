//! Random frames and random Berger data.

use nalgebra::Matrix4;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::{berger_data, berger_to_operator, BergerData};
use crate::curvature::bivector::wedge;
use crate::curvature::CurvatureOperator;
use crate::error::{Error, Result};
use crate::grid::GridReport;

/// A Haar-distributed rotation in `SO(4)`: QR of a Gaussian matrix with the
/// signs of `R`'s diagonal pushed into `Q`, then a determinant correction.
pub fn haar_rotation<R: Rng + ?Sized>(rng: &mut R) -> Matrix4<f64> {
    let g = Matrix4::from_fn(|_, _| rng.sample::<f64, _>(StandardNormal));
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..4 {
        if r[(j, j)] < 0.0 {
            let c = -q.column(j);
            q.set_column(j, &c);
        }
    }
    if q.determinant() < 0.0 {
        let c = -q.column(0);
        q.set_column(0, &c);
    }
    q
}

/// Berger data drawn uniformly from the constraint polytope with `a₁ ≥ −λ`.
///
/// `(a₁, a₂)` is drawn by rejection from a box; the `b` triple is uniform in
/// the rectangle `|b₂ − b₁| ≤ a₂ − a₁`, `|b₃ − b₂| ≤ a₃ − a₂` cut out by the
/// constraints once `Σb = 0` is imposed.
pub fn random_berger_data<R: Rng + ?Sized>(rng: &mut R, lambda: f64) -> BergerData {
    let (a1, a2, a3) = loop {
        let a1 = rng.random_range(-1.0..=1.0 / 3.0);
        let a2 = rng.random_range(-1.0..=1.0);
        let a3 = 1.0 - a1 - a2;
        if a1 <= a2 && a2 <= a3 {
            break (a1, a2, a3);
        }
    };
    let u = (a2 - a1) * rng.random_range(-1.0..=1.0);
    let v = (a3 - a2) * rng.random_range(-1.0..=1.0);
    let b1 = -(2.0 * u + v) / 3.0;
    let a = [a1 * lambda, a2 * lambda, a3 * lambda];
    let b = [b1 * lambda, (b1 + u) * lambda, (b1 + u + v) * lambda];
    BergerData::new(a, b, lambda).expect("sampled inside the polytope")
}

/// A random Einstein operator with `λ = 1`: random Berger data seen in a
/// Haar-random frame.
pub fn random_einstein_operator<R: Rng + ?Sized>(rng: &mut R) -> CurvatureOperator {
    let d = random_berger_data(rng, 1.0);
    let q = haar_rotation(rng);
    berger_to_operator(&d)
        .and_then(|op| op.rotated(&q))
        .expect("rotations preserve the Einstein condition")
}

pub const MIN_FRAME_SAMPLES: usize = 1000;

/// Minimum of `2K(e₁,e₂) + K(e₁,e₃)` over Haar-random oriented frames with
/// `K(e₁,e₂) ≥ K(e₁,e₃)`.
///
/// The report's `bound` is `2a₂ + a₁`, the value in the Berger frame with
/// `e₂` and `e₃` exchanged; frames can only do better, so `violation` is the
/// amount by which the sampled minimum stays above it. `argument` holds the
/// best frame, column by column.
pub fn frame_functional_min(
    op: &CurvatureOperator,
    samples: usize,
    seed: u64,
) -> Result<GridReport> {
    if samples < MIN_FRAME_SAMPLES {
        return Err(Error::Domain(format!(
            "at least {MIN_FRAME_SAMPLES} frame samples are required, got {samples}"
        )));
    }
    let d = berger_data(op)?;
    let m = op.matrix();
    let k = |f: &Matrix4<f64>, i: usize, j: usize| {
        let s = wedge(&f.column(i).into_owned(), &f.column(j).into_owned());
        (s.transpose() * m * s)[(0, 0)]
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(f64, Matrix4<f64>)> = None;
    for _ in 0..samples {
        let f = haar_rotation(&mut rng);
        let (k12, k13) = (k(&f, 0, 1), k(&f, 0, 2));
        if k12 < k13 {
            continue;
        }
        let value = 2.0 * k12 + k13;
        if best.is_none_or(|(b, _)| value < b) {
            best = Some((value, f));
        }
    }
    let bound = 2.0 * d.a[1] + d.a[0];
    Ok(match best {
        Some((value, f)) => GridReport {
            extremum: value,
            argument: f.iter().copied().collect(),
            resolution: samples,
            bound,
            violation: (value - bound).max(0.0),
            feasible: true,
            evaluated: samples,
        },
        None => GridReport::infeasible(samples, bound, samples),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::models::{model_space, ModelSpace};
    use approx::assert_abs_diff_eq;

    #[test]
    fn rotations_are_special_orthogonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let q = haar_rotation(&mut rng);
            assert_abs_diff_eq!(q.transpose() * q, Matrix4::identity(), epsilon = 1e-12);
            assert_abs_diff_eq!(q.determinant(), 1.0, epsilon = 1e-12);
        }
    }

    #[test]
    fn rotation_entries_are_centered() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let n = 20_000;
        let mut mean = Matrix4::zeros();
        let mut second = 0.0;
        for _ in 0..n {
            let q = haar_rotation(&mut rng);
            mean += q;
            second += q[(0, 0)] * q[(0, 0)];
        }
        mean /= n as f64;
        assert!(mean.amax() < 0.03, "{mean}");
        // each entry of a Haar orthogonal 4×4 matrix has second moment 1/4
        assert_abs_diff_eq!(second / n as f64, 0.25, epsilon = 0.01);
    }

    #[test]
    fn frame_minimum_on_models() {
        let s4 = frame_functional_min(&model_space(ModelSpace::Sphere), 1000, 1).unwrap();
        assert_abs_diff_eq!(s4.extremum, 1.0, epsilon = 1e-12);

        let cp2 = frame_functional_min(&model_space(ModelSpace::Cp2), 20_000, 2).unwrap();
        assert!(cp2.extremum >= 0.5 - 1e-12);
        assert!(cp2.extremum < 0.52, "{}", cp2.extremum);

        let s2 = frame_functional_min(&model_space(ModelSpace::S2xS2), 20_000, 3).unwrap();
        assert!(s2.extremum < 0.05, "{}", s2.extremum);
        assert!(s2.extremum >= -1e-12);
    }

    #[test]
    fn too_few_samples() {
        assert!(frame_functional_min(&model_space(ModelSpace::Sphere), 999, 0).is_err());
    }
}
