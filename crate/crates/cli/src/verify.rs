//! `verify` and `verify-all`: closed-form bounds against their oracles.

use std::time::Instant;

use clap::ValueEnum;
use serde_json::{json, Value};

use curv4_core::berger::berger_data_exact;
use curv4_core::classify::wpm_discriminant_oracle;
use curv4_core::exact::format_rational;
use curv4_core::pinch::{
    hamilton_gap_exact, lemma_algebraic2_min, lemma_algebraic2_oracle, lemma_k3k1_oracle,
    pointwise_bound_oracle, pointwise_bound_sampler, verify_chains, PointwiseLemma, POLYTOPE_TOL,
};
use curv4_core::{model_space, GridReport, ModelSpace, Result};

/// Tolerance on the k3k1 oracle beating its bound.
pub const K3K1_TOL: f64 = 1e-9;
/// Largest allowed gap between the algebraic2 oracle and its closed form.
pub const ALGEBRAIC2_TOL: f64 = 1e-6;
/// Largest allowed `|max D|` for the discriminant scan.
pub const DISCRIMINANT_TOL: f64 = 1e-9;
/// Random samples drawn next to the grid for the pointwise bounds.
pub const POINTWISE_SAMPLES: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Lemma {
    K3k1,
    Algebraic2,
    Kupper,
    Kdiff,
    A2a1,
    WpmDiscriminant,
    HamiltonModels,
}

impl Lemma {
    pub const ALL: [Lemma; 7] = [
        Self::K3k1,
        Self::Algebraic2,
        Self::Kupper,
        Self::Kdiff,
        Self::A2a1,
        Self::WpmDiscriminant,
        Self::HamiltonModels,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Self::K3k1 => "k3k1",
            Self::Algebraic2 => "algebraic2",
            Self::Kupper => "kupper",
            Self::Kdiff => "kdiff",
            Self::A2a1 => "a2a1",
            Self::WpmDiscriminant => "wpm-discriminant",
            Self::HamiltonModels => "hamilton-models",
        }
    }

    pub fn default_grid(&self) -> usize {
        match self {
            Self::K3k1 | Self::Algebraic2 => 400,
            Self::Kupper | Self::Kdiff | Self::A2a1 => 120,
            Self::WpmDiscriminant => 1000,
            Self::HamiltonModels => 0,
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Params {
    pub alpha: Option<f64>,
    pub delta: Option<f64>,
    pub grid: Option<usize>,
    pub seed: u64,
}

/// One verification run.
pub struct Outcome {
    pub pass: bool,
    pub json: Value,
}

fn report_json(
    lemma: Lemma,
    params: Value,
    r: &GridReport,
    started: Instant,
) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("lemma".into(), json!(lemma.name()));
    m.insert("params".into(), params);
    m.insert("bound".into(), json!(r.bound));
    m.insert(
        "oracle_extremum".into(),
        if r.feasible {
            json!(r.extremum)
        } else {
            Value::Null
        },
    );
    m.insert("violation".into(), json!(r.violation));
    m.insert("resolution".into(), json!(r.resolution));
    m.insert(
        "elapsed_ms".into(),
        json!(started.elapsed().as_secs_f64() * 1e3),
    );
    m.insert("feasible".into(), json!(r.feasible));
    m.insert("argument".into(), json!(r.argument));
    m
}

fn finish(mut m: serde_json::Map<String, Value>, pass: bool) -> Outcome {
    m.insert("pass".into(), json!(pass));
    Outcome {
        pass,
        json: Value::Object(m),
    }
}

pub fn run(lemma: Lemma, p: &Params) -> Result<Outcome> {
    let started = Instant::now();
    let grid = p.grid.unwrap_or(lemma.default_grid());
    match lemma {
        Lemma::K3k1 => {
            let (alpha, delta) = (p.alpha.unwrap_or(5.0 / 6.0), p.delta.unwrap_or(1.0));
            let r = lemma_k3k1_oracle(alpha, delta, grid)?;
            let mut m = report_json(lemma, json!({"alpha": alpha, "delta": delta}), &r, started);
            m.insert(
                "infeasible_beyond".into(),
                json!({"delta": 6.0 * alpha - 4.0}),
            );
            Ok(finish(m, r.violation <= K3K1_TOL))
        }
        Lemma::Algebraic2 => {
            let (a, b) = (p.alpha.unwrap_or(1.0), p.delta.unwrap_or(1.0));
            let r = lemma_algebraic2_oracle(a, b, grid)?;
            let closed = lemma_algebraic2_min(a, b)?;
            let mut m = report_json(lemma, json!({"a": a, "b": b}), &r, started);
            m.insert("gap".into(), json!(r.gap()));
            Ok(finish(m, (r.extremum - closed).abs() <= ALGEBRAIC2_TOL))
        }
        Lemma::Kupper | Lemma::Kdiff | Lemma::A2a1 => {
            let (which, param, name) = match lemma {
                Lemma::Kupper => (PointwiseLemma::Kupper, p.alpha.unwrap_or(0.8), "alpha"),
                Lemma::Kdiff => (PointwiseLemma::Kdiff, p.alpha.unwrap_or(0.5), "alpha"),
                _ => (PointwiseLemma::A2a1, p.delta.unwrap_or(0.1), "delta"),
            };
            let r = pointwise_bound_oracle(which, param, grid)?;
            let sampled = pointwise_bound_sampler(which, param, POINTWISE_SAMPLES, p.seed)?;
            let mut m = report_json(lemma, json!({ name: param, "seed": p.seed }), &r, started);
            m.insert(
                "sampled".into(),
                json!({
                    "samples": sampled.resolution,
                    "extremum": if sampled.feasible { json!(sampled.extremum) } else { Value::Null },
                    "violation": sampled.violation,
                }),
            );
            m.insert("tolerance".into(), json!(POLYTOPE_TOL));
            let pass = r.violation <= POLYTOPE_TOL && sampled.violation <= POLYTOPE_TOL;
            Ok(finish(m, pass))
        }
        Lemma::WpmDiscriminant => {
            let d = wpm_discriminant_oracle(grid, DISCRIMINANT_TOL)?;
            let mut m = report_json(lemma, json!({}), &d.report, started);
            m.insert("near_max_points".into(), json!(d.near_max));
            m.insert(
                "maximum_only_where_product_vanishes".into(),
                json!(d.boundary_only),
            );
            let pass = d.report.extremum.abs() <= DISCRIMINANT_TOL && d.boundary_only;
            Ok(finish(m, pass))
        }
        Lemma::HamiltonModels => {
            let mut rows = Vec::new();
            let mut pass = true;
            for model in ModelSpace::ALL {
                let d = berger_data_exact(&model_space(model)).expect("model spaces are exact");
                let gap = hamilton_gap_exact(&d);
                pass &= gap == 0.into();
                rows.push(json!({"model": model.name(), "hamilton_gap": format_rational(&gap)}));
            }
            let mut m = serde_json::Map::new();
            m.insert("lemma".into(), json!(lemma.name()));
            m.insert("params".into(), json!({}));
            m.insert("bound".into(), json!(0.0));
            m.insert("models".into(), Value::Array(rows));
            m.insert(
                "elapsed_ms".into(),
                json!(started.elapsed().as_secs_f64() * 1e3),
            );
            Ok(finish(m, pass))
        }
    }
}

/// Every lemma at its default parameters, plus the exact constant chains.
pub fn run_all(grid: Option<usize>) -> Result<Outcome> {
    let mut results = Vec::new();
    let mut pass = true;
    for lemma in Lemma::ALL {
        let o = run(
            lemma,
            &Params {
                grid,
                ..Params::default()
            },
        )?;
        pass &= o.pass;
        results.push(o.json);
    }
    let chains = verify_chains()?;
    let chains_hold = chains.iter().all(|c| c.holds);
    pass &= chains_hold;
    Ok(Outcome {
        pass,
        json: json!({"results": results, "chains": chains, "pass": pass}),
    })
}
