//! Closed-form pointwise estimates for Einstein operators normalized to
//! `λ = 1`, in floating point and, where the arguments are quadratic surds,
//! in exact arithmetic.

use serde::Serialize;

use super::surd::QuadraticSurd;
use crate::berger::{BergerData, ExactBergerData};
use crate::error::{Error, Result};
use crate::exact::Rational;

fn domain(what: String) -> Error {
    Error::Domain(what)
}

/// `a₁ − (a₁² + b₁² + 2a₂a₃ + 2b₂b₃)`. At a point realizing the minimum
/// sectional curvature this is nonnegative.
pub fn hamilton_gap(d: &BergerData) -> f64 {
    let (a, b) = (&d.a, &d.b);
    a[0] - (a[0] * a[0] + b[0] * b[0] + 2.0 * a[1] * a[2] + 2.0 * b[1] * b[2])
}

pub fn hamilton_gap_exact(d: &ExactBergerData) -> Rational {
    let (a, b) = (&d.a, &d.b);
    let two = Rational::from_integer(2);
    a[0] - (a[0] * a[0] + b[0] * b[0] + two * a[1] * a[2] + two * b[1] * b[2])
}

/// Bounds on the Weyl curvature in terms of `α = a₂ + a₃` and
/// `δ = 2(a₃ − a₂)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct K3K1Bounds {
    /// Bound on `|W⁺| + |W⁻|`: `(6α − 4 + δ)/√6`.
    pub sum_bound: f64,
    /// Bound on `|W⁺|² + |W⁻|²`: `(12α² − 16α + 16/3 + δ²)/2`.
    pub normsq_bound: f64,
}

pub fn lemma_k3k1_bounds(alpha: f64, delta: f64) -> Result<K3K1Bounds> {
    if !(alpha > 0.0) || !(delta >= 0.0) || !alpha.is_finite() || !delta.is_finite() {
        return Err(domain(format!(
            "need alpha > 0 and delta >= 0, got alpha = {alpha}, delta = {delta}"
        )));
    }
    Ok(K3K1Bounds {
        sum_bound: (6.0 * alpha - 4.0 + delta) / 6f64.sqrt(),
        normsq_bound: (12.0 * alpha * alpha - 16.0 * alpha + 16.0 / 3.0 + delta * delta) / 2.0,
    })
}

/// Minimum of `4xy + x² + y²` over `xy ≤ 0`, `|2x + y| ≤ a`, `|x − y| ≤ b`.
pub fn lemma_algebraic2_min(a: f64, b: f64) -> Result<f64> {
    if !(a >= 0.0) || !(b >= 0.0) || !a.is_finite() || !b.is_finite() {
        return Err(domain(format!("need a, b >= 0, got a = {a}, b = {b}")));
    }
    Ok(if 2.0 * a < b {
        (2.0 * a * a - 2.0 * a * b - b * b) / 3.0
    } else {
        -b * b / 2.0
    })
}

fn check_kupper_domain(alpha: f64) -> Result<()> {
    if !(1.0 / 3.0..=1.0).contains(&alpha) {
        return Err(domain(format!(
            "kupper bound needs 1/3 <= alpha <= 1, got {alpha}"
        )));
    }
    Ok(())
}

/// Lower bound for `a₁` at the minimizing point given `a₃ = α`:
/// `(15 − 8α − √3·√(96α² − 80α + 19))/28`.
pub fn kupper_lower(alpha: f64) -> Result<f64> {
    check_kupper_domain(alpha)?;
    let disc = 96.0 * alpha * alpha - 80.0 * alpha + 19.0;
    Ok((15.0 - 8.0 * alpha - (3.0 * disc).sqrt()) / 28.0)
}

fn check_kdiff_domain(alpha: f64) -> Result<()> {
    if !(0.0..2.0).contains(&alpha) {
        return Err(domain(format!(
            "kdiff bound needs 0 <= alpha < 2, got {alpha}"
        )));
    }
    Ok(())
}

/// Lower bound for `a₁` at the minimizing point given `a₃ − a₂ = α`:
/// `(3 − 2α − √(1 + 8α² − 4α))/6`.
pub fn kdiff_lower(alpha: f64) -> Result<f64> {
    check_kdiff_domain(alpha)?;
    Ok((3.0 - 2.0 * alpha - (1.0 + 8.0 * alpha * alpha - 4.0 * alpha).sqrt()) / 6.0)
}

fn check_a2a1_domain(delta: f64) -> Result<()> {
    if !(0.0..=1.0 / 3.0).contains(&delta) {
        return Err(domain(format!(
            "a2-a1 bound needs 0 <= delta <= 1/3, got {delta}"
        )));
    }
    Ok(())
}

/// Upper bound for `x = a₂ − a₁` at the minimizing point given `a₁ = δ`
/// and `4a₂ ≤ 1 + a₁`: `1 − 3δ − ½√(3 + 18δ² − 15δ)`.
pub fn a2a1_gap(delta: f64) -> Result<f64> {
    check_a2a1_domain(delta)?;
    let inner = (3.0 + 18.0 * delta * delta - 15.0 * delta).max(0.0);
    Ok(1.0 - 3.0 * delta - 0.5 * inner.sqrt())
}

/// Discriminant `D = 48(1 − 2δ)(1 − 3δ)` of the quadratic behind
/// [`a2a1_gap`]; nonnegative on its domain.
pub fn a2a1_discriminant(delta: f64) -> f64 {
    48.0 * (1.0 - 2.0 * delta) * (1.0 - 3.0 * delta)
}

fn q(n: i128, d: i128) -> QuadraticSurd {
    QuadraticSurd::rational(n, d).expect("nonzero denominator")
}

fn exact_in(x: &QuadraticSurd, lo: QuadraticSurd, hi: QuadraticSurd, hi_open: bool) -> Result<()> {
    let below = x.compare(&lo).ordering == Some(std::cmp::Ordering::Less);
    let above = match x.compare(&hi).ordering {
        Some(std::cmp::Ordering::Greater) => true,
        Some(std::cmp::Ordering::Equal) => hi_open,
        _ => false,
    };
    if below || above {
        return Err(domain(format!(
            "{x} outside [{lo}, {hi}{}",
            if hi_open { ")" } else { "]" }
        )));
    }
    Ok(())
}

fn root(x: QuadraticSurd) -> Result<QuadraticSurd> {
    x.sqrt().ok_or_else(|| {
        Error::Surd(format!(
            "sqrt({x}) is not a quadratic surd over the same field"
        ))
    })
}

/// [`kupper_lower`] in exact arithmetic; fails when the square root leaves
/// the field of the argument.
pub fn kupper_lower_exact(alpha: &QuadraticSurd) -> Result<QuadraticSurd> {
    exact_in(alpha, q(1, 3), q(1, 1), false)?;
    let a = *alpha;
    let disc = (q(96, 1).checked_mul(&a)?.checked_mul(&a)?)
        .checked_sub(&q(80, 1).checked_mul(&a)?)?
        .checked_add(&q(19, 1))?;
    let r = root(q(3, 1).checked_mul(&disc)?)?;
    q(15, 1)
        .checked_sub(&q(8, 1).checked_mul(&a)?)?
        .checked_sub(&r)?
        .checked_div(&q(28, 1))
}

/// [`kdiff_lower`] in exact arithmetic.
pub fn kdiff_lower_exact(alpha: &QuadraticSurd) -> Result<QuadraticSurd> {
    exact_in(alpha, q(0, 1), q(2, 1), true)?;
    let a = *alpha;
    let inner = q(1, 1)
        .checked_add(&q(8, 1).checked_mul(&a)?.checked_mul(&a)?)?
        .checked_sub(&q(4, 1).checked_mul(&a)?)?;
    let r = root(inner)?;
    q(3, 1)
        .checked_sub(&q(2, 1).checked_mul(&a)?)?
        .checked_sub(&r)?
        .checked_div(&q(6, 1))
}

/// [`a2a1_gap`] in exact arithmetic.
pub fn a2a1_gap_exact(delta: &QuadraticSurd) -> Result<QuadraticSurd> {
    exact_in(delta, q(0, 1), q(1, 3), false)?;
    let d = *delta;
    let inner = q(3, 1)
        .checked_add(&q(18, 1).checked_mul(&d)?.checked_mul(&d)?)?
        .checked_sub(&q(15, 1).checked_mul(&d)?)?;
    let r = root(inner)?;
    q(1, 1)
        .checked_sub(&q(3, 1).checked_mul(&d)?)?
        .checked_sub(&r.checked_div(&q(2, 1))?)
}
