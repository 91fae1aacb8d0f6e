//! JSON documents for the inspection subcommands.

use serde_json::{json, Value};

use curv4_core::berger::{berger_data_exact, ExactBergerData};
use curv4_core::classify::{classify as run_classify, ClassifyOptions};
use curv4_core::curvature::decompose::{
    duality_decompose_exact, static_weitzenbock_residual, weyl_scalars,
};
use curv4_core::exact::format_rational;
use curv4_core::io::{CurvatureFile, OperatorFile};
use curv4_core::pinch::{hamilton_gap, hamilton_gap_exact, sharp_constants, verify_chains};
use curv4_core::topology::{admissible_types, gbc_integrands, hitchin_thorpe};
use curv4_core::{
    berger_data, berger_to_operator, duality_decompose, model_space, reconstruct_frame, Alpha,
    CurvatureInput, CurvatureOperator, ModelSpace, QuadraticSurd, Result, WeylSpectrum,
};

fn strings(xs: &[curv4_core::exact::Rational]) -> Vec<String> {
    xs.iter().map(format_rational).collect()
}

fn exact_berger_json(d: &ExactBergerData) -> Value {
    json!({
        "a": strings(&d.a),
        "b": strings(&d.b),
        "lambda": format_rational(&d.lambda_einstein),
    })
}

fn operator_of(input: &CurvatureInput) -> Result<CurvatureOperator> {
    match input {
        CurvatureInput::Operator(op) => Ok(op.clone()),
        CurvatureInput::Berger(d) => berger_to_operator(d),
    }
}

fn model_json(model: ModelSpace) -> Value {
    let op = model_space(model);
    let d = duality_decompose_exact(&op).expect("model spaces are exact");
    let berger = berger_data_exact(&op).expect("model spaces are exact");
    let (chi, tau) = model.euler_signature();
    let (wp, wm) = d.weitzenbock_residuals();
    json!({
        "name": model.name(),
        "euler_characteristic": chi,
        "signature": tau,
        "scalar": format_rational(&d.scalar),
        "traceless_ricci_norm_sq": format_rational(&d.traceless_ricci_norm_sq),
        "wplus": strings(&d.wplus),
        "wminus": strings(&d.wminus),
        "wplus_norm_sq": format_rational(&d.wplus_norm_sq()),
        "wminus_norm_sq": format_rational(&d.wminus_norm_sq()),
        "weitzenbock_residual": {"wplus": format_rational(&wp), "wminus": format_rational(&wm)},
        "berger": exact_berger_json(&berger),
        "hamilton_gap": format_rational(&hamilton_gap_exact(&berger)),
        "operator": CurvatureFile::Operator(OperatorFile::from_operator(&op)),
    })
}

/// One model, or all four as an array.
pub fn models(name: Option<ModelSpace>) -> Value {
    match name {
        Some(model) => model_json(model),
        None => Value::Array(ModelSpace::ALL.into_iter().map(model_json).collect()),
    }
}

fn spectrum_json(w: &WeylSpectrum, scalar: f64) -> Value {
    let s = weyl_scalars(w);
    json!({
        "eigenvalues": w.eigenvalues(),
        "norm": s.norm,
        "det": s.det,
        "det_inequality": {"lhs": s.det_lhs, "rhs": s.det_rhs, "holds": s.det_inequality_holds},
        "weitzenbock_residual": static_weitzenbock_residual(scalar, w),
    })
}

pub fn decompose(input: &CurvatureInput) -> Result<Value> {
    let op = operator_of(input)?;
    let d = duality_decompose(&op);
    let (chi, tau) = gbc_integrands(&d);
    let mut out = json!({
        "scalar": d.scalar,
        "traceless_ricci_norm_sq": d.traceless_ricci_norm_sq,
        "einstein": op.is_einstein(),
        "wplus": spectrum_json(&d.wplus, d.scalar),
        "wminus": spectrum_json(&d.wminus, d.scalar),
        "weyl_sum": d.weyl_sum(),
        "integrands": {"euler": chi, "signature": tau},
    });
    if let Some(e) = duality_decompose_exact(&op) {
        out["exact"] = serde_json::to_value(e.to_strings()).expect("strings serialize");
    }
    Ok(out)
}

pub fn berger(input: &CurvatureInput) -> Result<Value> {
    let op = operator_of(input)?;
    let d = berger_data(&op)?;
    let frame = reconstruct_frame(&op)?;
    let m = frame.matrix();
    let rows: Vec<[f64; 4]> = (0..4)
        .map(|i| [m[(i, 0)], m[(i, 1)], m[(i, 2)], m[(i, 3)]])
        .collect();
    let mut out = json!({
        "a": d.a,
        "b": d.b,
        "lambda": d.lambda_einstein,
        "r_plus": d.r_plus(),
        "r_minus": d.r_minus(),
        "hamilton_gap": hamilton_gap(&d),
        "frame": {"columns_are": "e1, e2, e3, e4", "matrix": rows, "degenerate": frame.degenerate},
    });
    if let Some(e) = berger_data_exact(&op) {
        out["exact"] = exact_berger_json(&e);
    }
    Ok(out)
}

pub fn classify(input: &CurvatureInput, frame_samples: Option<usize>, seed: u64) -> Result<Value> {
    let v = run_classify(
        input,
        &ClassifyOptions {
            frame_samples,
            seed,
        },
    )?;
    Ok(serde_json::to_value(v).expect("verdicts serialize"))
}

pub fn chi_tau(alpha: QuadraticSurd, explain: bool) -> Result<Value> {
    let set = admissible_types(&Alpha::Exact(alpha))?;
    debug_assert!(set.pairs.iter().all(|&(tau, chi)| hitchin_thorpe(chi, tau)));
    let pairs: Vec<[i64; 2]> = set.pairs.iter().map(|&(t, c)| [t, c]).collect();
    if !explain {
        return Ok(json!(pairs));
    }
    let rejected: Vec<Value> = set
        .rejected
        .iter()
        .map(|r| json!({"tau": r.tau, "chi": r.chi, "rule": r.rule, "fails": r.rule.describe()}))
        .collect();
    Ok(json!({
        "alpha": alpha.to_string(),
        "alpha_approx": alpha.to_f64(),
        "cap": set.cap,
        "degenerate": set.degenerate,
        "pairs": pairs,
        "rejected": rejected,
    }))
}

pub fn constants() -> Result<(Value, bool)> {
    let table = sharp_constants()?;
    let chains = verify_chains()?;
    let pass = chains.iter().all(|c| c.holds);
    Ok((
        json!({"constants": table, "chains": chains, "pass": pass}),
        pass,
    ))
}
