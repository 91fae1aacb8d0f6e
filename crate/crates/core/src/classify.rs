//! Pointwise checks of the pinching hypotheses for Einstein curvature
//! operators, the Weyl-norm discriminant, and the combined verdict.
//!
//! A verdict only says whether one algebraic curvature operator satisfies
//! the hypotheses; it says nothing about a global metric.

use std::cmp::Ordering;
use std::fmt;

use serde::Serialize;

use crate::berger::{
    berger_data, berger_data_exact, berger_to_operator, frame_functional_min, BergerData,
    ExactBergerData, BERGER_TOL,
};
use crate::curvature::{duality_decompose, CurvatureOperator, DualityDecomposition};
use crate::error::{Error, Result};
use crate::exact::{from_f64_exact, Rational};
use crate::grid::GridReport;
use crate::pinch::{constant, hamilton_gap, kdiff_lower, kupper_lower, QuadraticSurd};

/// Slack allowed on `|W⁺| + |W⁻| ≤ √(3/2)`.
pub const WEYL_TOL: f64 = 1e-12;

/// Slack on informational certificate rows computed in floating point.
pub const ROW_TOL: f64 = 1e-12;

/// `√(3/2)`.
pub fn weyl_threshold() -> f64 {
    1.5f64.sqrt()
}

fn sharp(name: &str) -> QuadraticSurd {
    constant(name).expect("constant is tabulated")
}

#[derive(Debug, Clone, Copy)]
enum Num {
    Exact(Rational),
    Real(f64),
}

impl Num {
    fn to_f64(self) -> f64 {
        match self {
            Self::Exact(r) => crate::exact::to_f64(&r),
            Self::Real(x) => x,
        }
    }

    /// Exact comparison whenever the value is representable; doubles are
    /// converted without rounding.
    fn cmp_surd(self, c: &QuadraticSurd) -> Ordering {
        let exact = match self {
            Self::Exact(r) => Some(r),
            Self::Real(x) => from_f64_exact(x),
        };
        exact
            .and_then(|r| QuadraticSurd::from_rational(r).exact_cmp(c))
            .unwrap_or_else(|| {
                self.to_f64()
                    .partial_cmp(&c.to_f64())
                    .unwrap_or(Ordering::Greater)
            })
    }
}

/// The three quantities the curvature conditions look at.
#[derive(Debug, Clone, Copy)]
struct Key {
    a3: Num,
    sum: Num,
    diff: Num,
}

impl Key {
    fn real(d: &BergerData) -> Self {
        Self {
            a3: Num::Real(d.a[2]),
            sum: Num::Real(2.0 * d.a[1] + d.a[0]),
            diff: Num::Real(d.a[2] - d.a[1]),
        }
    }

    fn exact(d: &ExactBergerData) -> Self {
        let two = Rational::from_integer(2);
        Self {
            a3: Num::Exact(d.a[2]),
            sum: Num::Exact(two * d.a[1] + d.a[0]),
            diff: Num::Exact(d.a[2] - d.a[1]),
        }
    }

    fn condition_a(&self) -> bool {
        self.a3.cmp_surd(&sharp("upper_pinching")) != Ordering::Greater
    }

    fn condition_b(&self) -> bool {
        self.sum.cmp_surd(&sharp("condition_b_sum")) != Ordering::Less
            && self.diff.cmp_surd(&sharp("condition_b_diff")) != Ordering::Greater
    }
}

/// `a₃ ≤ (14 − √19)/12` for data normalized to `λ = 1`.
pub fn check_condition_a(d: &BergerData) -> bool {
    Key::real(d).condition_a()
}

/// `2a₂ + a₁ ≥ (√19 − 3)/4` and `a₃ − a₂ ≤ (7 − √19)/4` for data
/// normalized to `λ = 1`.
///
/// These are the Berger-frame forms of the frame condition; see
/// [`frame_functional_min`] for the sampled version.
pub fn check_condition_b(d: &BergerData) -> bool {
    Key::real(d).condition_b()
}

pub fn check_condition_a_exact(d: &ExactBergerData) -> bool {
    Key::exact(d).condition_a()
}

pub fn check_condition_b_exact(d: &ExactBergerData) -> bool {
    Key::exact(d).condition_b()
}

/// `|W⁺| + |W⁻| ≤ √(3/2)` up to [`WEYL_TOL`].
pub fn check_wpm_hypothesis(d: &DualityDecomposition) -> bool {
    d.weyl_sum() <= weyl_threshold() + WEYL_TOL
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WeylBoundMode {
    /// `4(a₃ − a₁)/√6`
    Upper,
    /// `(2 − 6a₁ + 2(a₃ − a₂))/√6`
    Diff,
}

impl fmt::Display for WeylBoundMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Upper => "upper",
            Self::Diff => "diff",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeylGap {
    pub mode: WeylBoundMode,
    pub bound: f64,
    /// `|W⁺| + |W⁻|` computed from the spectra `aᵢ ± bᵢ − 1/3`.
    pub weyl_sum: f64,
}

fn spectrum_norm(r: [f64; 3], shift: f64) -> f64 {
    r.iter().map(|x| (x - shift).powi(2)).sum::<f64>().sqrt()
}

/// `|W⁺| + |W⁻|` of Berger data.
pub fn berger_weyl_sum(d: &BergerData) -> f64 {
    let shift = d.lambda_einstein / 3.0;
    spectrum_norm(d.r_plus(), shift) + spectrum_norm(d.r_minus(), shift)
}

fn require_normalized(d: &BergerData) -> Result<()> {
    if (d.lambda_einstein - 1.0).abs() > BERGER_TOL {
        return Err(Error::Domain(format!(
            "expected data normalized to lambda = 1, got {}",
            d.lambda_einstein
        )));
    }
    Ok(())
}

/// Upper bound for `|W⁺| + |W⁻|` in terms of sectional curvatures, checked
/// against the true value.
pub fn pinch_to_weyl_gap(d: &BergerData, mode: WeylBoundMode) -> Result<WeylGap> {
    require_normalized(d)?;
    let a = &d.a;
    let bound = match mode {
        WeylBoundMode::Upper => 4.0 * (a[2] - a[0]),
        WeylBoundMode::Diff => 2.0 - 6.0 * a[0] + 2.0 * (a[2] - a[1]),
    } / 6f64.sqrt();
    let weyl_sum = berger_weyl_sum(d);
    if weyl_sum > bound + WEYL_TOL {
        return Err(Error::BoundViolated(format!(
            "{mode} bound {bound} is below |W+| + |W-| = {weyl_sum}"
        )));
    }
    Ok(WeylGap {
        mode,
        bound,
        weyl_sum,
    })
}

/// `4(a₃ − kupper(a₃))/√6`: the `upper` bound after replacing `a₁` by its
/// lower bound at the minimizing point.
pub fn upper_pipeline(a3: f64) -> Result<f64> {
    Ok(4.0 * (a3 - kupper_lower(a3)?) / 6f64.sqrt())
}

/// `(2 + 2x − 6·kdiff(x))/√6` with `x = a₃ − a₂`.
pub fn diff_pipeline(diff: f64) -> Result<f64> {
    Ok((2.0 + 2.0 * diff - 6.0 * kdiff_lower(diff)?) / 6f64.sqrt())
}

/// `D = (w⁺)^{2/3}(w⁻)^{2/3}·(−48 + 16√6(w⁺ + w⁻) − 24w⁺w⁻)`.
///
/// The constant is folded in as `16√6·(w⁺ + w⁻ − √6/2)`, using
/// `16√6·√6/2 = 48`, so the bracket vanishes exactly at the threshold.
pub fn wpm_discriminant(wplus: f64, wminus: f64) -> Result<f64> {
    if !(wplus >= 0.0) || !(wminus >= 0.0) || !wplus.is_finite() || !wminus.is_finite() {
        return Err(Error::Domain(format!(
            "Weyl norms must be nonnegative, got {wplus}, {wminus}"
        )));
    }
    let s6 = 6f64.sqrt();
    let prefactor = (wplus * wminus).cbrt().powi(2);
    let bracket = 16.0 * s6 * (wplus + wminus - s6 / 2.0) - 24.0 * wplus * wminus;
    Ok(prefactor * bracket)
}

/// Grid scan of [`wpm_discriminant`] over `w± ≥ 0`, `w⁺ + w⁻ ≤ √(3/2)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiscriminantReport {
    pub report: GridReport,
    /// Grid points whose value is within `tolerance` of the maximum.
    pub near_max: usize,
    pub tolerance: f64,
    /// Whether every such point has `w⁺w⁻ = 0`.
    pub boundary_only: bool,
}

pub fn wpm_discriminant_oracle(resolution: usize, tolerance: f64) -> Result<DiscriminantReport> {
    if resolution == 0 {
        return Err(Error::Domain("resolution must be positive".into()));
    }
    let side = weyl_threshold();
    let mut values = Vec::with_capacity((resolution + 1) * (resolution + 2) / 2);
    for i in 0..=resolution {
        for j in 0..=resolution - i {
            let (wp, wm) = (
                side * i as f64 / resolution as f64,
                side * j as f64 / resolution as f64,
            );
            values.push((wpm_discriminant(wp, wm)?, wp, wm));
        }
    }
    let mut best = values[0];
    for v in &values {
        if v.0 > best.0 {
            best = *v;
        }
    }
    let near: Vec<_> = values
        .iter()
        .filter(|v| v.0 >= best.0 - tolerance)
        .collect();
    let boundary_only = near.iter().all(|v| v.1 * v.2 == 0.0);
    Ok(DiscriminantReport {
        report: GridReport {
            // adding zero turns a −0 from the vanishing prefactor into +0
            extremum: best.0 + 0.0,
            argument: vec![best.1, best.2],
            resolution,
            bound: 0.0,
            violation: best.0.max(0.0),
            feasible: true,
            evaluated: values.len(),
        },
        near_max: near.len(),
        tolerance,
        boundary_only,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    AtMost,
    #[serde(rename = ">=")]
    AtLeast,
}

impl Relation {
    /// `value ≤ threshold + tol` or `value ≥ threshold − tol`.
    pub fn holds(&self, value: f64, threshold: f64, tol: f64) -> bool {
        match self {
            Self::AtMost => value <= threshold + tol,
            Self::AtLeast => value >= threshold - tol,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertificateRow {
    pub quantity: String,
    pub value: f64,
    pub threshold: f64,
    pub relation: Relation,
    pub pass: bool,
    /// Rows that do not enter the three conditions.
    pub informational: bool,
}

/// Sampled minimum of `2K(e₁,e₂) + K(e₁,e₃)` over frames.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrameCheck {
    pub samples: usize,
    pub seed: u64,
    pub minimum: f64,
    pub threshold: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationVerdict {
    /// Berger data after rescaling to `λ = 1`.
    pub berger: BergerData,
    /// Factor applied to the input, `1/λ`.
    pub rescale: f64,
    pub condition_a: bool,
    pub condition_b: bool,
    pub wpm_hypothesis: bool,
    /// `|W⁺| + |W⁻|`.
    pub weyl_sum: f64,
    /// Best lower bound for `a₁` from `kupper(a₃)` and `kdiff(a₃ − a₂)`.
    pub derived_kmin_bound: Option<f64>,
    /// Smaller of the two pipeline bounds for `|W⁺| + |W⁻|`.
    pub weyl_sum_bound: Option<f64>,
    /// The frame-quantified form of condition (b), when requested. Kept
    /// apart from `condition_b`, which uses the Berger-frame inequalities.
    pub frame_condition_b: Option<FrameCheck>,
    pub certificate: Vec<CertificateRow>,
}

/// Operator or Berger data.
#[derive(Debug, Clone, PartialEq)]
pub enum CurvatureInput {
    Operator(CurvatureOperator),
    Berger(BergerData),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ClassifyOptions {
    /// Run the frame sampler with this many samples.
    pub frame_samples: Option<usize>,
    pub seed: u64,
}

/// `a₃` can drift below `1/3` (or `a₃ − a₂` below 0) by rounding; pull such
/// values back into the domain.
fn clamp_near(x: f64, lo: f64, hi: f64) -> f64 {
    if x < lo && x > lo - BERGER_TOL {
        lo
    } else if x > hi && x < hi + BERGER_TOL {
        hi
    } else {
        x
    }
}

fn row(
    quantity: &str,
    value: f64,
    threshold: f64,
    relation: Relation,
    pass: bool,
    informational: bool,
) -> CertificateRow {
    CertificateRow {
        quantity: quantity.into(),
        value,
        threshold,
        relation,
        pass,
        informational,
    }
}

fn normalize(input: &CurvatureInput) -> Result<(BergerData, Option<ExactBergerData>, f64)> {
    let (raw, exact) = match input {
        CurvatureInput::Operator(op) => (berger_data(op)?, berger_data_exact(op)),
        CurvatureInput::Berger(d) => (BergerData::new(d.a, d.b, d.lambda_einstein)?, None),
    };
    let lambda = raw.lambda_einstein;
    if !(lambda > 0.0) {
        return Err(Error::Domain(format!(
            "need positive Einstein constant, got {lambda}"
        )));
    }
    let rescale = 1.0 / lambda;
    let exact = exact.and_then(|e| {
        if e.lambda_einstein <= Rational::from_integer(0) {
            return None;
        }
        let k = e.lambda_einstein.recip();
        Some(ExactBergerData {
            a: e.a.map(|x| x * k),
            b: e.b.map(|x| x * k),
            lambda_einstein: Rational::from_integer(1),
        })
    });
    let d = match &exact {
        Some(e) => e.to_f64()?,
        None if lambda == 1.0 => raw,
        None => raw.scaled(rescale)?,
    };
    Ok((d, exact, rescale))
}

/// Checks the curvature conditions, the Weyl hypothesis and both pipelines.
///
/// The input is rescaled to `λ = 1` first. Exact comparisons are used
/// throughout when the operator carries exact entries.
pub fn classify(
    input: &CurvatureInput,
    options: &ClassifyOptions,
) -> Result<ClassificationVerdict> {
    let (d, exact, rescale) = normalize(input)?;
    let key = exact
        .as_ref()
        .map(Key::exact)
        .unwrap_or_else(|| Key::real(&d));
    let condition_a = key.condition_a();
    let condition_b = key.condition_b();

    let op = berger_to_operator(&d)?;
    let decomposition = duality_decompose(&op);
    let weyl_sum = decomposition.weyl_sum();
    let wpm_hypothesis = check_wpm_hypothesis(&decomposition);

    let a = d.a;
    let a3 = clamp_near(a[2], 1.0 / 3.0, 1.0);
    let diff = clamp_near(a[2] - a[1], 0.0, f64::INFINITY);
    let kupper = kupper_lower(a3).ok();
    let kdiff = kdiff_lower(diff).ok();
    let derived_kmin_bound = match (kupper, kdiff) {
        (Some(x), Some(y)) => Some(x.max(y)),
        (x, y) => x.or(y),
    };
    let upper = upper_pipeline(a3).ok();
    let diff_bound = diff_pipeline(diff).ok();
    let weyl_sum_bound = match (upper, diff_bound) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, y) => x.or(y),
    };

    let threshold = weyl_threshold();
    let mut certificate = vec![
        row(
            "a3",
            a[2],
            sharp("upper_pinching").to_f64(),
            Relation::AtMost,
            condition_a,
            false,
        ),
        row(
            "2 a2 + a1",
            2.0 * a[1] + a[0],
            sharp("condition_b_sum").to_f64(),
            Relation::AtLeast,
            key.sum.cmp_surd(&sharp("condition_b_sum")) != Ordering::Less,
            false,
        ),
        row(
            "a3 - a2",
            a[2] - a[1],
            sharp("condition_b_diff").to_f64(),
            Relation::AtMost,
            key.diff.cmp_surd(&sharp("condition_b_diff")) != Ordering::Greater,
            false,
        ),
        row(
            "|W+| + |W-|",
            weyl_sum,
            threshold,
            Relation::AtMost,
            wpm_hypothesis,
            false,
        ),
    ];
    for mode in [WeylBoundMode::Upper, WeylBoundMode::Diff] {
        let gap = pinch_to_weyl_gap(&d, mode)?;
        certificate.push(row(
            &format!("{mode} bound on |W+| + |W-|"),
            gap.bound,
            gap.weyl_sum,
            Relation::AtLeast,
            true,
            true,
        ));
    }
    if let Some(bound) = weyl_sum_bound {
        certificate.push(row(
            "pipeline bound on |W+| + |W-|",
            bound,
            threshold,
            Relation::AtMost,
            Relation::AtMost.holds(bound, threshold, WEYL_TOL),
            true,
        ));
    }
    if let Some(bound) = derived_kmin_bound {
        let pass = Relation::AtLeast.holds(a[0], bound, ROW_TOL);
        certificate.push(row("a1", a[0], bound, Relation::AtLeast, pass, true));
    }
    let gap = hamilton_gap(&d);
    let pass = Relation::AtLeast.holds(gap, 0.0, ROW_TOL);
    certificate.push(row("hamilton gap", gap, 0.0, Relation::AtLeast, pass, true));

    let frame_condition_b = match options.frame_samples {
        Some(samples) => {
            let report = frame_functional_min(&op, samples, options.seed)?;
            let threshold = sharp("condition_b_sum");
            let pass = report.feasible
                && Num::Real(report.extremum).cmp_surd(&threshold) != Ordering::Less;
            certificate.push(row(
                "frame-sampled min 2 K12 + K13",
                report.extremum,
                threshold.to_f64(),
                Relation::AtLeast,
                pass,
                true,
            ));
            Some(FrameCheck {
                samples,
                seed: options.seed,
                minimum: report.extremum,
                threshold: threshold.to_f64(),
                pass,
            })
        }
        None => None,
    };

    Ok(ClassificationVerdict {
        berger: d,
        rescale,
        condition_a,
        condition_b,
        wpm_hypothesis,
        weyl_sum,
        derived_kmin_bound,
        weyl_sum_bound,
        frame_condition_b,
        certificate,
    })
}
