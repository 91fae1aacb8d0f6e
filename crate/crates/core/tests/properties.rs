use std::f64::consts::PI;

use approx::assert_abs_diff_eq;
use nalgebra::{Matrix2, Vector4};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use curv4_core::berger::{
    frame_functional_min, haar_rotation, random_berger_data, random_einstein_operator,
};
use curv4_core::classify::{
    check_condition_a, pinch_to_weyl_gap, weyl_threshold, WeylBoundMode, WEYL_TOL,
};
use curv4_core::curvature::decompose::weyl_scalars;
use curv4_core::pinch::{kupper_lower, lemma_k3k1_oracle, pointwise_bound_oracle, PointwiseLemma};
use curv4_core::{
    berger_data, extremize_sectional, sectional, BergerData, TangentPlane, WeylSpectrum,
};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[test]
fn determinant_inequality_on_random_triples() {
    let mut r = rng(1);
    for _ in 0..100_000 {
        let (x, y): (f64, f64) = (r.random_range(-5.0..5.0), r.random_range(-5.0..5.0));
        let w = WeylSpectrum::new([x, y, -x - y]).unwrap();
        let s = weyl_scalars(&w);
        assert!(s.det_inequality_holds, "{w:?}");
    }
}

#[test]
fn determinant_ratio_is_cos_three_theta() {
    // a unit trace-free triple is √(2/3)(cos θ, cos(θ − 2π/3), cos(θ + 2π/3)),
    // and 36 det / (2√6 |W|³) = cos 3θ; equality needs θ ∈ (2π/3)ℤ
    let c = (2.0f64 / 3.0).sqrt();
    for k in 0..=720 {
        let theta = 2.0 * PI * k as f64 / 720.0;
        let w = WeylSpectrum::new(
            [0.0, -2.0 * PI / 3.0, 2.0 * PI / 3.0].map(|s| c * (theta + s).cos()),
        )
        .unwrap();
        let s = weyl_scalars(&w);
        assert_abs_diff_eq!(s.det_lhs / s.det_rhs, (3.0 * theta).cos(), epsilon = 1e-12);
        let e = w.eigenvalues();
        let proportional = (e[0] - e[1]).abs() < 1e-12 && e[2] > 0.0;
        assert_eq!(
            proportional,
            (s.det_rhs - s.det_lhs).abs() < 1e-12,
            "theta = {theta}"
        );
    }
}

#[test]
fn sectional_extrema_match_berger_data() {
    let mut r = rng(2);
    let resolution = 48;
    let tol = 10.0 / (resolution * resolution) as f64;
    for _ in 0..40 {
        let op = random_einstein_operator(&mut r);
        let d = berger_data(&op).unwrap();
        let ext = extremize_sectional(&op, resolution).unwrap();
        assert!((ext.min - d.a[0]).abs() <= tol, "{} vs {}", ext.min, d.a[0]);
        assert!((ext.max - d.a[2]).abs() <= tol, "{} vs {}", ext.max, d.a[2]);
        // grid values are attained, so they can only lie inside [a1, a3]
        assert!(ext.min >= d.a[0] - 1e-12 && ext.max <= d.a[2] + 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 300, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn sectional_ignores_basis_of_plane(seed in any::<u64>(), angle in 0.0..(2.0 * PI), a in 0.2f64..3.0, b in -3.0f64..3.0) {
        let mut r = rng(seed);
        let op = random_einstein_operator(&mut r);
        let q = haar_rotation(&mut r);
        let (u, v): (Vector4<f64>, Vector4<f64>) = (q.column(0).into(), q.column(1).into());
        let k = sectional(&op, &TangentPlane::new(u, v).unwrap());
        let (c, s) = (angle.cos(), angle.sin());
        let rotated = TangentPlane::new(c * u + s * v, -s * u + c * v).unwrap();
        prop_assert!((sectional(&op, &rotated) - k).abs() <= 1e-10);
        // any basis of the plane, not only orthonormal ones
        let m = Matrix2::new(a, b, 0.0, 1.0);
        let spanned = TangentPlane::from_span(m[(0, 0)] * u + m[(0, 1)] * v, m[(1, 0)] * u + m[(1, 1)] * v).unwrap();
        prop_assert!((sectional(&op, &spanned) - k).abs() <= 1e-10);
    }

    #[test]
    fn upper_bound_dominates_weyl_sum(seed in any::<u64>()) {
        let d = random_berger_data(&mut rng(seed), 1.0);
        for mode in [WeylBoundMode::Upper, WeylBoundMode::Diff] {
            prop_assert!(pinch_to_weyl_gap(&d, mode).is_ok());
        }
    }
}

/// Berger data with the given `a` and `b` differences `u`, `v` in unit
/// coordinates, if admissible.
fn polytope(a: [f64; 3], su: f64, sv: f64) -> Option<BergerData> {
    let u = (2.0 * su - 1.0) * (a[1] - a[0]);
    let v = (2.0 * sv - 1.0) * (a[2] - a[1]);
    let b1 = -(2.0 * u + v) / 3.0;
    BergerData::new(a, [b1, b1 + u, b1 + u + v], 1.0).ok()
}

#[test]
fn upper_pipeline_is_sound_on_polytope_grid() {
    let beta = (14.0 - 19f64.sqrt()) / 12.0;
    let n = 24;
    let mut checked = 0;
    for i in 0..=n {
        let a3 = 1.0 / 3.0 + (beta - 1.0 / 3.0) * i as f64 / n as f64;
        let lo = kupper_lower(a3).unwrap();
        for j in 0..=n {
            let a1 = lo + (a3 - lo) * j as f64 / n as f64;
            let a2 = 1.0 - a1 - a3;
            if !(a1 <= a2 && a2 <= a3) {
                continue;
            }
            for k in 0..=n {
                for l in 0..=n {
                    let Some(d) = polytope([a1, a2, a3], k as f64 / n as f64, l as f64 / n as f64)
                    else {
                        continue;
                    };
                    let gap = pinch_to_weyl_gap(&d, WeylBoundMode::Upper).unwrap();
                    assert!(
                        gap.bound <= weyl_threshold() + WEYL_TOL,
                        "{d:?}: {}",
                        gap.bound
                    );
                    checked += 1;
                }
            }
        }
    }
    assert!(checked > 5_000, "{checked}");
}

#[test]
fn shrinking_a3_keeps_condition_a() {
    let round = BergerData::new([1.0 / 3.0; 3], [0.0; 3], 1.0).unwrap();
    let mut r = rng(4);
    for _ in 0..500 {
        let d = random_berger_data(&mut r, 1.0);
        // convex combinations with the round point stay in the polytope and
        // move a3 monotonically toward 1/3
        let mut seen_true = false;
        for k in (0..=50).rev() {
            let t = k as f64 / 50.0;
            let mix = |x: [f64; 3], y: [f64; 3]| [0, 1, 2].map(|i| t * x[i] + (1.0 - t) * y[i]);
            let e = BergerData::new(mix(d.a, round.a), mix(d.b, round.b), 1.0).unwrap();
            let ok = check_condition_a(&e);
            assert!(ok || !seen_true, "condition (a) flipped back at t = {t}");
            seen_true |= ok;
        }
        assert!(seen_true);
    }
}

#[test]
fn frame_sampler_never_beats_berger_value_by_much() {
    // the Berger frame with e2, e3 exchanged attains 2a2 + a1, so the sampled
    // minimum can exceed it only by sampling error; the converse gap is the
    // frame condition being stronger than the Berger-frame inequality
    let mut r = rng(5);
    let threshold = (19f64.sqrt() - 3.0) / 4.0;
    let mut berger_only = 0;
    for i in 0..100 {
        let op = random_einstein_operator(&mut r);
        let d = berger_data(&op).unwrap();
        let report = frame_functional_min(&op, 100_000, i).unwrap();
        let berger = 2.0 * d.a[1] + d.a[0];
        assert!(
            report.extremum <= berger + 0.05,
            "{} vs {berger}",
            report.extremum
        );
        if berger < threshold - 0.05 {
            assert!(report.extremum < threshold);
        }
        if berger >= threshold && report.extremum < threshold {
            berger_only += 1;
        }
    }
    println!("operators passing only the Berger-frame form: {berger_only}");
}

#[test]
fn k3k1_oracle_improves_on_nested_grids() {
    for (alpha, delta) in [(0.9, 0.5), (1.0, 1.0), (0.75, 0.2), (5.0 / 6.0, 0.7)] {
        let coarse = lemma_k3k1_oracle(alpha, delta, 100).unwrap();
        let fine = lemma_k3k1_oracle(alpha, delta, 200).unwrap();
        assert!(fine.extremum >= coarse.extremum);
        assert!(fine.gap() <= coarse.gap() + 1e-15);
        assert!(fine.violation <= 1e-12);
    }
}

#[test]
fn polytope_oracles_converge() {
    for (lemma, param) in [
        (PointwiseLemma::Kupper, 0.8),
        (PointwiseLemma::Kdiff, 0.5),
        (PointwiseLemma::A2a1, 0.1),
    ] {
        for resolution in [30, 60] {
            let report = pointwise_bound_oracle(lemma, param, resolution).unwrap();
            assert!(
                report.violation <= 1e-9,
                "{lemma} at {resolution}: {}",
                report.violation
            );
            assert!(
                report.gap() <= 10.0 / resolution as f64,
                "{lemma} at {resolution}: {}",
                report.gap()
            );
        }
    }
}
