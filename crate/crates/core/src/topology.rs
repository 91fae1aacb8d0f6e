//! Pointwise Gauss-Bonnet-Chern and signature integrands, and the
//! enumeration of Euler characteristic / signature pairs compatible with a
//! pinched Einstein metric.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;

use serde::Serialize;

use crate::curvature::DualityDecomposition;
use crate::error::{Error, Result};
use crate::pinch::QuadraticSurd;

/// `(χ, τ)` integrands per unit volume:
/// `(|W⁺|² + |W⁻|² − |E|²/2 + S²/24)/(8π²)` and `(|W⁺|² − |W⁻|²)/(12π²)`.
pub fn gbc_integrands(d: &DualityDecomposition) -> (f64, f64) {
    let (wp, wm) = (d.wplus.norm_sq(), d.wminus.norm_sq());
    let chi =
        (wp + wm - d.traceless_ricci_norm_sq / 2.0 + d.scalar * d.scalar / 24.0) / (8.0 * PI * PI);
    let tau = (wp - wm) / (12.0 * PI * PI);
    (chi, tau)
}

/// `|τ| ≤ 2χ/3`.
pub fn hitchin_thorpe(chi: i64, tau: i64) -> bool {
    3 * tau.abs() <= 2 * chi
}

fn check_pinching(alpha: f64, beta: f64) -> Result<()> {
    if !alpha.is_finite() || !beta.is_finite() || alpha > beta {
        return Err(Error::Domain(format!(
            "need alpha <= beta, got alpha = {alpha}, beta = {beta}"
        )));
    }
    // the quadrilateral cut out by x = α, y = β, 2x + y = 1 and x + 2y = 1
    // degenerates unless α ≤ 1/3 ≤ β
    if alpha > 1.0 / 3.0 || beta < 1.0 / 3.0 {
        return Err(Error::Domain(format!(
            "pinching region is empty for alpha = {alpha}, beta = {beta} (need alpha <= 1/3 <= beta)"
        )));
    }
    Ok(())
}

/// Upper bound for `8π²χ / Vol` under `α ≤ K ≤ β` with `Rc = g`:
/// `8(β² − (1 − α)(α + β)) + 10/3`.
pub fn euler_upper_per_vol(alpha: f64, beta: f64) -> Result<f64> {
    check_pinching(alpha, beta)?;
    Ok(8.0 * (beta * beta - (1.0 - alpha) * (alpha + beta)) + 10.0 / 3.0)
}

/// The pinching constant, either exact or floating point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Alpha {
    Exact(QuadraticSurd),
    Real(f64),
}

impl Alpha {
    pub fn to_f64(&self) -> f64 {
        match self {
            Self::Exact(s) => s.to_f64(),
            Self::Real(x) => *x,
        }
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Exact(s) => write!(f, "{s}"),
            Self::Real(x) => write!(f, "{x}"),
        }
    }
}

/// The Volume cap `χ < 3·C(α)`, `C(α) = euler_upper_per_vol(α, 1 − 2α)`.
///
/// With `Rc = g` the volume is at most that of the round sphere of
/// curvature 1/3, which is `24π²`, with equality only for the round sphere
/// itself. Away from the round sphere the cap is therefore strict.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EulerCap {
    /// `3·C(α) = 72α² − 48α + 10`.
    pub value: f64,
    /// Exact value when `α` was exact.
    pub exact: Option<QuadraticSurd>,
}

impl EulerCap {
    fn new(alpha: &Alpha) -> Result<Self> {
        let a = alpha.to_f64();
        check_pinching(a, 1.0 - 2.0 * a)?;
        match alpha {
            Alpha::Real(a) => Ok(Self {
                value: 72.0 * a * a - 48.0 * a + 10.0,
                exact: None,
            }),
            Alpha::Exact(s) => {
                let k = |n| QuadraticSurd::integer(n);
                let cap = k(72)
                    .checked_mul(s)?
                    .checked_mul(s)?
                    .checked_sub(&k(48).checked_mul(s)?)?
                    .checked_add(&k(10))?;
                Ok(Self {
                    value: cap.to_f64(),
                    exact: Some(cap),
                })
            }
        }
    }

    /// Whether `χ < cap`, exactly when the cap is exact.
    fn admits(&self, chi: i64) -> bool {
        match &self.exact {
            Some(cap) => QuadraticSurd::integer(chi as i128).exact_cmp(cap) == Some(Ordering::Less),
            None => (chi as f64) < self.value,
        }
    }
}

/// Rules applied, in order, to candidate pairs `(|τ|, χ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    /// `χ ≥ 2` for a positive Einstein four-manifold.
    ChiAtLeastTwo,
    /// `χ ≡ τ (mod 2)`.
    Parity,
    /// `χ > 15|τ|/4`.
    NotHalfConformallyFlat,
    /// `χ ≤ 9`.
    ChiAtMostNine,
    /// `χ < 3·C(α)`.
    EulerCap,
}

impl Rule {
    pub fn describe(&self) -> &'static str {
        match self {
            Self::ChiAtLeastTwo => "chi >= 2",
            Self::Parity => "chi = tau (mod 2)",
            Self::NotHalfConformallyFlat => "chi > 15|tau|/4",
            Self::ChiAtMostNine => "chi <= 9",
            Self::EulerCap => "chi < 3 C(alpha)",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Rejection {
    pub tau: i64,
    pub chi: i64,
    pub rule: Rule,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdmissibleSet {
    /// `(|τ|, χ)` sorted lexicographically.
    pub pairs: Vec<(i64, i64)>,
    pub cap: EulerCap,
    /// Set when the rules exclude everything (`α = 1/3`); `pairs` then holds
    /// only the round sphere's `(0, 2)`.
    pub degenerate: bool,
    /// First failing rule for each rejected pair with `χ ≤ 12`.
    pub rejected: Vec<Rejection>,
}

/// Largest `χ` (and `|τ|`) examined.
pub const EXPLAIN_LIMIT: i64 = 12;

fn first_failure(tau: i64, chi: i64, cap: &EulerCap) -> Option<Rule> {
    if chi < 2 {
        return Some(Rule::ChiAtLeastTwo);
    }
    if (chi - tau).rem_euclid(2) != 0 {
        return Some(Rule::Parity);
    }
    if 4 * chi <= 15 * tau {
        return Some(Rule::NotHalfConformallyFlat);
    }
    if chi > 9 {
        return Some(Rule::ChiAtMostNine);
    }
    if !cap.admits(chi) {
        return Some(Rule::EulerCap);
    }
    None
}

/// Pairs `(|τ|, χ)` allowed for a non-half-conformally-flat Einstein
/// four-manifold with `Rc = g` and `α ≤ K ≤ 1 − 2α`.
pub fn admissible_types(alpha: &Alpha) -> Result<AdmissibleSet> {
    let a = alpha.to_f64();
    if !(a >= 0.0) {
        return Err(Error::Domain(format!(
            "alpha must be nonnegative, got {alpha}"
        )));
    }
    let cap = EulerCap::new(alpha)?;
    let mut pairs = Vec::new();
    let mut rejected = Vec::new();
    for tau in 0..=EXPLAIN_LIMIT {
        for chi in 0..=EXPLAIN_LIMIT {
            match first_failure(tau, chi, &cap) {
                None => pairs.push((tau, chi)),
                Some(rule) => rejected.push(Rejection { tau, chi, rule }),
            }
        }
    }
    let degenerate = pairs.is_empty();
    if degenerate {
        pairs.push((0, 2));
        rejected.retain(|r| (r.tau, r.chi) != (0, 2));
    }
    Ok(AdmissibleSet {
        pairs,
        cap,
        degenerate,
        rejected,
    })
}
