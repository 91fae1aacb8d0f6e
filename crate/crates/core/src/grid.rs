//! Brute-force grid search over the unit cube with optional zoom refinement.
//!
//! All oracles in this crate reduce their constraint region to a box in a
//! few free coordinates and call [`grid_minimize`]. The objective returns
//! `None` for infeasible points. The scan visits grid indices in
//! lexicographic order and only replaces the incumbent on a strict
//! improvement, so ties resolve to the lexicographically smallest index.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Refinement {
    /// Number of zoom passes after the coarse scan.
    pub levels: usize,
    /// Subdivisions per dimension inside each zoom box.
    pub points: usize,
}

impl Refinement {
    pub const NONE: Refinement = Refinement {
        levels: 0,
        points: 0,
    };

    pub const fn new(levels: usize, points: usize) -> Self {
        Self { levels, points }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridOptimum<const D: usize> {
    pub value: f64,
    /// Location in unit-cube coordinates.
    pub point: [f64; D],
    pub evaluated: usize,
    pub feasible: usize,
}

struct Scan<'a, const D: usize, F> {
    f: &'a F,
    best: Option<(f64, [f64; D])>,
    evaluated: usize,
    feasible: usize,
}

impl<const D: usize, F: Fn(&[f64; D]) -> Option<f64>> Scan<'_, D, F> {
    fn run(&mut self, lo: [f64; D], hi: [f64; D], steps: [usize; D]) {
        let mut idx = [0usize; D];
        loop {
            let mut x = [0.0; D];
            for d in 0..D {
                x[d] = if steps[d] == 0 {
                    lo[d]
                } else {
                    lo[d] + (hi[d] - lo[d]) * idx[d] as f64 / steps[d] as f64
                };
            }
            self.evaluated += 1;
            if let Some(v) = (self.f)(&x) {
                if v.is_finite() {
                    self.feasible += 1;
                    if self.best.is_none_or(|(b, _)| v < b) {
                        self.best = Some((v, x));
                    }
                }
            }
            // odometer, last coordinate fastest
            let mut d = D;
            loop {
                if d == 0 {
                    return;
                }
                d -= 1;
                if idx[d] < steps[d] {
                    idx[d] += 1;
                    break;
                }
                idx[d] = 0;
            }
        }
    }
}

/// Minimize `f` over `[0, 1]^D` on a regular grid with `steps[d] + 1` points
/// per axis, then zoom `refine.levels` times into a box of one coarse cell
/// around the incumbent.
pub fn grid_minimize<const D: usize, F>(
    f: F,
    steps: [usize; D],
    refine: Refinement,
) -> Option<GridOptimum<D>>
where
    F: Fn(&[f64; D]) -> Option<f64>,
{
    let mut scan = Scan {
        f: &f,
        best: None,
        evaluated: 0,
        feasible: 0,
    };
    scan.run([0.0; D], [1.0; D], steps);
    let mut half = [0.0; D];
    for d in 0..D {
        half[d] = if steps[d] == 0 {
            0.0
        } else {
            1.0 / steps[d] as f64
        };
    }
    for _ in 0..refine.levels {
        let Some((_, center)) = scan.best else { break };
        let mut lo = [0.0; D];
        let mut hi = [0.0; D];
        let mut sub = [0usize; D];
        for d in 0..D {
            lo[d] = (center[d] - half[d]).max(0.0);
            hi[d] = (center[d] + half[d]).min(1.0);
            sub[d] = if half[d] == 0.0 {
                0
            } else {
                refine.points.max(2)
            };
        }
        scan.run(lo, hi, sub);
        for d in 0..D {
            if sub[d] > 0 {
                half[d] = (hi[d] - lo[d]) / sub[d] as f64;
            }
        }
    }
    scan.best.map(|(value, point)| GridOptimum {
        value,
        point,
        evaluated: scan.evaluated,
        feasible: scan.feasible,
    })
}

/// [`grid_minimize`] applied to `-f`.
pub fn grid_maximize<const D: usize, F>(
    f: F,
    steps: [usize; D],
    refine: Refinement,
) -> Option<GridOptimum<D>>
where
    F: Fn(&[f64; D]) -> Option<f64>,
{
    grid_minimize(|x| f(x).map(|v| -v), steps, refine).map(|mut o| {
        o.value = -o.value;
        o
    })
}

/// Result of a brute-force oracle run checked against a closed-form bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridReport {
    /// Extremum found by the oracle; `NaN` when the region is infeasible.
    pub extremum: f64,
    /// Coordinates of the optimizer, in the oracle's named parametrization.
    pub argument: Vec<f64>,
    pub resolution: usize,
    /// The closed-form value being checked.
    pub bound: f64,
    /// Largest amount by which any sample beats the bound (zero if none).
    pub violation: f64,
    pub feasible: bool,
    pub evaluated: usize,
}

impl GridReport {
    pub fn infeasible(resolution: usize, bound: f64, evaluated: usize) -> Self {
        Self {
            extremum: f64::NAN,
            argument: Vec::new(),
            resolution,
            bound,
            violation: 0.0,
            feasible: false,
            evaluated,
        }
    }

    /// `|extremum − bound|`, the sharpness gap on feasible regions.
    pub fn gap(&self) -> f64 {
        (self.extremum - self.bound).abs()
    }
}
