//! The sharp constants of the pinching theorems, in exact arithmetic.

use serde::Serialize;

use super::lemmas::{kdiff_lower_exact, kupper_lower_exact};
use super::surd::QuadraticSurd;
use crate::error::Result;

/// Places after the decimal point in the printed enclosures.
pub const ENCLOSURE_DIGITS: u32 = 15;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SharpConstant {
    pub name: &'static str,
    pub meaning: &'static str,
    pub value: QuadraticSurd,
    pub approx: f64,
    /// Decimal enclosure `lower ≤ value ≤ upper`, checked exactly.
    pub lower: String,
    pub upper: String,
}

const TABLE: [(&str, &str, &str); 9] = [
    (
        "upper_pinching",
        "(14 - sqrt(19))/12",
        "largest admissible upper curvature bound",
    ),
    (
        "condition_b_sum",
        "(sqrt(19) - 3)/4",
        "lower bound for 2 a2 + a1",
    ),
    (
        "condition_b_diff",
        "(7 - sqrt(19))/4",
        "upper bound for a3 - a2",
    ),
    (
        "a_priori_lower",
        "(7 - sqrt(105))/28",
        "lower bound for a1 when a3 <= 1",
    ),
    (
        "nonnegative_upper",
        "sqrt(3)/2",
        "a3 below this forces a1 >= 0",
    ),
    (
        "nonnegative_diff",
        "sqrt(3) - 1",
        "a3 - a2 below this forces a1 >= 0",
    ),
    (
        "topology_alpha",
        "(2 - sqrt(3))/6",
        "pinching constant of the Euler characteristic list",
    ),
    ("cp2_upper", "2/3", "a3 of the complex projective plane"),
    (
        "weyl_threshold",
        "sqrt(6)/2",
        "sqrt(3/2), the Weyl norm threshold",
    ),
];

fn surd(text: &str) -> QuadraticSurd {
    text.parse().expect("constant table entries parse")
}

/// Every constant with its exact value and a verified decimal enclosure.
pub fn sharp_constants() -> Result<Vec<SharpConstant>> {
    TABLE
        .iter()
        .map(|&(name, expr, meaning)| {
            let value = surd(expr);
            let (lower, upper) = value.decimal_enclosure(ENCLOSURE_DIGITS)?;
            Ok(SharpConstant {
                name,
                meaning,
                value,
                approx: value.to_f64(),
                lower,
                upper,
            })
        })
        .collect()
}

pub fn constant(name: &str) -> Option<QuadraticSurd> {
    TABLE
        .iter()
        .find(|(n, _, _)| *n == name)
        .map(|(_, expr, _)| surd(expr))
}

/// One link of a constant chain, evaluated exactly.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainCheck {
    pub name: &'static str,
    pub beta: QuadraticSurd,
    pub beta1: QuadraticSurd,
    pub value: QuadraticSurd,
    pub expected: QuadraticSurd,
    pub holds: bool,
}

/// The two identities that turn the curvature hypotheses into the Weyl
/// threshold:
///
/// * `β = (14 − √19)/12`, `β₁ = kupper(β)` gives `β − β₁ = 3/4`, hence
///   `4(β − β₁)/√6 = √(3/2)`;
/// * `β = (7 − √19)/4`, `β₁ = kdiff(β)` gives `2 + 2β − 6β₁ = 3`.
pub fn verify_chains() -> Result<Vec<ChainCheck>> {
    let upper_beta = surd("(14 - sqrt(19))/12");
    let upper_beta1 = kupper_lower_exact(&upper_beta)?;
    let upper_value = upper_beta.checked_sub(&upper_beta1)?;
    let upper_expected = surd("3/4");

    let diff_beta = surd("(7 - sqrt(19))/4");
    let diff_beta1 = kdiff_lower_exact(&diff_beta)?;
    let diff_value = surd("2")
        .checked_add(&surd("2").checked_mul(&diff_beta)?)?
        .checked_sub(&surd("6").checked_mul(&diff_beta1)?)?;
    let diff_expected = surd("3");

    let weyl = surd("4")
        .checked_mul(&upper_value)?
        .checked_div(&surd("sqrt(6)"))?;
    let weyl_expected = surd("sqrt(6)/2");

    Ok(vec![
        ChainCheck {
            name: "upper: beta - beta1",
            beta: upper_beta,
            beta1: upper_beta1,
            value: upper_value,
            expected: upper_expected,
            holds: upper_value == upper_expected,
        },
        ChainCheck {
            name: "upper: 4(beta - beta1)/sqrt(6)",
            beta: upper_beta,
            beta1: upper_beta1,
            value: weyl,
            expected: weyl_expected,
            holds: weyl == weyl_expected,
        },
        ChainCheck {
            name: "diff: 2 + 2 beta - 6 beta1",
            beta: diff_beta,
            beta1: diff_beta1,
            value: diff_value,
            expected: diff_expected,
            holds: diff_value == diff_expected,
        },
    ])
}
