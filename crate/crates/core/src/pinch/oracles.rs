//! Brute-force oracles for the closed-form estimates in [`super::lemmas`].
//!
//! Each oracle reduces its constraint set to a box in a few free
//! coordinates, scans it with [`grid_minimize`] and compares the extremum
//! with the closed form. Nothing here calls the closed forms except to fill
//! in the report's `bound`.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::lemmas::{
    a2a1_gap, hamilton_gap, kdiff_lower, kupper_lower, lemma_algebraic2_min, lemma_k3k1_bounds,
};
use crate::berger::BergerData;
use crate::error::{Error, Result};
use crate::grid::{grid_maximize, grid_minimize, GridReport, Refinement};

/// Allowed amount by which a polytope oracle may beat a closed form.
pub const POLYTOPE_TOL: f64 = 1e-3;
/// Slack on the infeasibility test of the k3k1 region.
pub const FEASIBILITY_TOL: f64 = 1e-12;
/// A configuration satisfies the minimum-point inequality when its gap is
/// at least `-HAMILTON_TOL`.
pub const HAMILTON_TOL: f64 = 1e-12;

fn check_resolution(resolution: usize, min: usize) -> Result<()> {
    if resolution < min {
        return Err(Error::Domain(format!(
            "resolution must be at least {min}, got {resolution}"
        )));
    }
    Ok(())
}

/// Maximize `|W⁺| + |W⁻| = (√(3p² + q²) + √(3m² + n²))/√2` over
/// `p + m = 2(α − 2/3)`, `q + n = δ`, `0 ≤ q ≤ 3p`, `0 ≤ n ≤ 3m`.
///
/// With `m = (ℓ + n)/3` the region is the rectangle
/// `0 ≤ ℓ ≤ 3α₁ − δ`, `0 ≤ n ≤ δ`, empty exactly when `δ > 3α₁`.
/// The argument is `(p, q, m, n)`.
pub fn lemma_k3k1_oracle(alpha: f64, delta: f64, resolution: usize) -> Result<GridReport> {
    check_resolution(resolution, 1)?;
    let bound = lemma_k3k1_bounds(alpha, delta)?.sum_bound;
    let alpha1 = 2.0 * (alpha - 2.0 / 3.0);
    let width = 3.0 * alpha1 - delta;
    let evaluated = (resolution + 1) * (resolution + 1);
    if width < -FEASIBILITY_TOL {
        return Ok(GridReport::infeasible(resolution, bound, 0));
    }
    let width = width.max(0.0);
    let coords = move |x: &[f64; 2]| {
        let (l, n) = (width * x[0], delta * x[1]);
        let m = (l + n) / 3.0;
        [alpha1 - m, delta - n, m, n]
    };
    let f = |c: [f64; 4]| {
        ((3.0 * c[0] * c[0] + c[1] * c[1]).sqrt() + (3.0 * c[2] * c[2] + c[3] * c[3]).sqrt())
            / 2f64.sqrt()
    };
    let best = grid_maximize(
        |x| Some(f(coords(x))),
        [resolution, resolution],
        Refinement::NONE,
    )
    .expect("rectangle is nonempty");
    Ok(GridReport {
        extremum: best.value,
        argument: coords(&best.point).to_vec(),
        resolution,
        bound,
        violation: (best.value - bound).max(0.0),
        feasible: true,
        evaluated,
    })
}

/// Maximum of `|W⁺|² + |W⁻|²` over the same region as
/// [`lemma_k3k1_oracle`], compared with the square-norm bound.
pub fn lemma_k3k1_normsq_oracle(alpha: f64, delta: f64, resolution: usize) -> Result<GridReport> {
    check_resolution(resolution, 1)?;
    let bound = lemma_k3k1_bounds(alpha, delta)?.normsq_bound;
    let alpha1 = 2.0 * (alpha - 2.0 / 3.0);
    let width = 3.0 * alpha1 - delta;
    if width < -FEASIBILITY_TOL {
        return Ok(GridReport::infeasible(resolution, bound, 0));
    }
    let width = width.max(0.0);
    let coords = move |x: &[f64; 2]| {
        let (l, n) = (width * x[0], delta * x[1]);
        let m = (l + n) / 3.0;
        [alpha1 - m, delta - n, m, n]
    };
    let f = |c: [f64; 4]| (3.0 * c[0] * c[0] + c[1] * c[1] + 3.0 * c[2] * c[2] + c[3] * c[3]) / 2.0;
    let best = grid_maximize(
        |x| Some(f(coords(x))),
        [resolution, resolution],
        Refinement::NONE,
    )
    .expect("rectangle is nonempty");
    Ok(GridReport {
        extremum: best.value,
        argument: coords(&best.point).to_vec(),
        resolution,
        bound,
        violation: (best.value - bound).max(0.0),
        feasible: true,
        evaluated: (resolution + 1) * (resolution + 1),
    })
}

const ALGEBRAIC2_REFINE: Refinement = Refinement::new(10, 8);

/// Minimize `4xy + x² + y²` over `xy ≤ 0`, `|2x + y| ≤ a`, `|x − y| ≤ b`
/// on a grid in `(m, n) = (2x + y, x − y)`, which maps the two slabs to a
/// box, followed by zoom refinement. The argument is `(x, y)`.
pub fn lemma_algebraic2_oracle(a: f64, b: f64, resolution: usize) -> Result<GridReport> {
    check_resolution(resolution, 2)?;
    let bound = lemma_algebraic2_min(a, b)?;
    let xy = move |s: &[f64; 2]| {
        let m = a * (2.0 * s[0] - 1.0);
        let n = b * (2.0 * s[1] - 1.0);
        ((m + n) / 3.0, (m - 2.0 * n) / 3.0)
    };
    let objective = |s: &[f64; 2]| {
        let (x, y) = xy(s);
        (x * y <= 0.0).then_some(4.0 * x * y + x * x + y * y)
    };
    let best = grid_minimize(objective, [resolution, resolution], ALGEBRAIC2_REFINE)
        .expect("the origin is always feasible");
    let (x, y) = xy(&best.point);
    Ok(GridReport {
        extremum: best.value,
        argument: vec![x, y],
        resolution,
        bound,
        violation: (bound - best.value).max(0.0),
        feasible: true,
        evaluated: best.evaluated,
    })
}

/// The three pointwise estimates checked against the Berger polytope.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum PointwiseLemma {
    /// Lower bound on `a₁` given `a₃ = α`.
    Kupper,
    /// Lower bound on `a₁` given `a₃ − a₂ = α`.
    Kdiff,
    /// Upper bound on `a₂ − a₁` given `a₁ = δ` and `4a₂ ≤ 1 + a₁`.
    A2a1,
}

impl PointwiseLemma {
    pub const ALL: [PointwiseLemma; 3] = [Self::Kupper, Self::Kdiff, Self::A2a1];

    pub fn name(&self) -> &'static str {
        match self {
            Self::Kupper => "kupper",
            Self::Kdiff => "kdiff",
            Self::A2a1 => "a2a1",
        }
    }

    pub fn closed_form(&self, param: f64) -> Result<f64> {
        match self {
            Self::Kupper => kupper_lower(param),
            Self::Kdiff => kdiff_lower(param),
            Self::A2a1 => a2a1_gap(param),
        }
    }
}

impl fmt::Display for PointwiseLemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PointwiseLemma {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|l| l.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown pointwise lemma {s:?}")))
    }
}

/// Lower edge of the `a₁` range scanned by the kdiff oracle.
const KDIFF_A1_FLOOR: f64 = -1.5;
const POLYTOPE_REFINE: Refinement = Refinement::new(4, 8);

/// Complete Berger data from `a` and the two free differences
/// `u = b₂ − b₁ ∈ [−(a₂−a₁), a₂−a₁]`, `v = b₃ − b₂ ∈ [−(a₃−a₂), a₃−a₂]`
/// given as unit coordinates; `Σb = 0` fixes `b₁`.
fn polytope_point(a: [f64; 3], su: f64, sv: f64) -> [f64; 6] {
    let u = (2.0 * su - 1.0) * (a[1] - a[0]);
    let v = (2.0 * sv - 1.0) * (a[2] - a[1]);
    let b1 = -(2.0 * u + v) / 3.0;
    [a[0], a[1], a[2], b1, b1 + u, b1 + u + v]
}

fn admissible(p: &[f64; 6]) -> bool {
    BergerData::new([p[0], p[1], p[2]], [p[3], p[4], p[5]], 1.0)
        .map(|d| hamilton_gap(&d) >= -HAMILTON_TOL)
        .unwrap_or(false)
}

/// Berger data with `λ = 1` meeting the lemma's hypothesis, from three unit
/// coordinates: one for `a` and the differences `u`, `v` of `b`.
fn region_point(lemma: PointwiseLemma, param: f64, x: &[f64; 3]) -> [f64; 6] {
    match lemma {
        PointwiseLemma::Kupper => {
            let (lo, hi) = (1.0 - 2.0 * param, (1.0 - param) / 2.0);
            let a1 = lo + (hi - lo) * x[0];
            polytope_point([a1, 1.0 - param - a1, param], x[1], x[2])
        }
        PointwiseLemma::Kdiff => {
            let (lo, hi) = (KDIFF_A1_FLOOR, (1.0 - param) / 3.0);
            let a1 = lo + (hi - lo) * x[0];
            let a2 = (1.0 - a1 - param) / 2.0;
            polytope_point([a1, a2, a2 + param], x[1], x[2])
        }
        PointwiseLemma::A2a1 => {
            let gap = (1.0 - 3.0 * param) / 4.0 * x[0];
            polytope_point([param, param + gap, 1.0 - 2.0 * param - gap], x[1], x[2])
        }
    }
}

impl PointwiseLemma {
    /// The bounded quantity: `a₁`, or `a₂ − a₁` for [`Self::A2a1`].
    fn objective(&self, p: &[f64; 6]) -> f64 {
        match self {
            Self::Kupper | Self::Kdiff => p[0],
            Self::A2a1 => p[1] - p[0],
        }
    }

    /// Lower bounds are minimized, the upper bound maximized.
    fn minimizes(&self) -> bool {
        !matches!(self, Self::A2a1)
    }
}

fn pointwise_report(
    lemma: PointwiseLemma,
    bound: f64,
    found: Option<(f64, [f64; 6])>,
    resolution: usize,
    evaluated: usize,
) -> GridReport {
    let Some((value, arg)) = found else {
        return GridReport::infeasible(resolution, bound, evaluated);
    };
    let violation = if lemma.minimizes() {
        bound - value
    } else {
        value - bound
    };
    GridReport {
        extremum: value,
        argument: arg.to_vec(),
        resolution,
        bound,
        violation: violation.max(0.0),
        feasible: true,
        evaluated,
    }
}

/// Extremize `a₁` (or `a₂ − a₁`) over all Berger data with `λ = 1` that
/// satisfy the minimum-point inequality and the lemma's hypothesis.
///
/// The hypothesis is an equality in each case, which leaves three free
/// coordinates: one for `a` and the differences `u`, `v` of `b`. The
/// argument is `(a₁, a₂, a₃, b₁, b₂, b₃)` of the extremal configuration.
pub fn pointwise_bound_oracle(
    lemma: PointwiseLemma,
    param: f64,
    resolution: usize,
) -> Result<GridReport> {
    check_resolution(resolution, 2)?;
    let bound = lemma.closed_form(param)?;
    let steps = [resolution; 3];
    let f = |x: &[f64; 3]| {
        Some(region_point(lemma, param, x))
            .filter(admissible)
            .map(|p| lemma.objective(&p))
    };
    let best = if lemma.minimizes() {
        grid_minimize(f, steps, POLYTOPE_REFINE)
    } else {
        grid_maximize(f, steps, POLYTOPE_REFINE)
    };
    if let (PointwiseLemma::Kdiff, Some(o)) = (lemma, &best) {
        if o.point[0] * resolution as f64 <= 1.0 {
            return Err(Error::Domain(format!(
                "kdiff oracle minimum reached the scan floor a1 = {KDIFF_A1_FLOOR}"
            )));
        }
    }
    let evaluated = best
        .as_ref()
        .map_or((resolution + 1).pow(3), |o| o.evaluated);
    let found = best.map(|o| (o.value, region_point(lemma, param, &o.point)));
    Ok(pointwise_report(lemma, bound, found, resolution, evaluated))
}

/// The same extremum over uniformly random points of the region instead of
/// a grid. `resolution` in the report is the sample count.
pub fn pointwise_bound_sampler(
    lemma: PointwiseLemma,
    param: f64,
    samples: usize,
    seed: u64,
) -> Result<GridReport> {
    check_resolution(samples, 1)?;
    let bound = lemma.closed_form(param)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sign = if lemma.minimizes() { 1.0 } else { -1.0 };
    let mut best: Option<(f64, [f64; 6])> = None;
    for _ in 0..samples {
        let x: [f64; 3] = std::array::from_fn(|_| rng.random::<f64>());
        let p = region_point(lemma, param, &x);
        if !admissible(&p) {
            continue;
        }
        let v = lemma.objective(&p);
        if best.is_none_or(|(b, _)| sign * v < sign * b) {
            best = Some((v, p));
        }
    }
    Ok(pointwise_report(lemma, bound, best, samples, samples))
}
