//! Closed-form expressions for the GHZ/W, Smolin and N-qubit families,
//! evaluated as printed and paired with a direct evaluation from the
//! definitions so that any disagreement is visible.

use serde::Serialize;

use crate::catalog::{abd_coefficient_a, psi4, psi6, rho_ghz_w};
use crate::error::{check_unit, Error, Result};
use crate::measures::{e_ms, PureMeasure};
use crate::roof::{roof_minimize, RoofConfig};

/// Printed-vs-direct disagreement threshold.
pub const DISCREPANCY_TOL: f64 = 1e-6;

/// Roof three-tangle above which `rho_ghz_w(p)` counts as tripartite entangled.
pub const P1_ROOF_THRESHOLD: f64 = 1e-4;
/// Bracket width at which the `p1` bisection stops.
pub const P1_RESOLUTION: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ClosedFormResult {
    pub value_as_printed: f64,
    pub value_direct: f64,
    pub discrepancy_flag: bool,
}

impl ClosedFormResult {
    pub fn new(value_as_printed: f64, value_direct: f64) -> Self {
        let gap = (value_as_printed - value_direct).abs();
        Self {
            value_as_printed,
            value_direct,
            // a NaN printed value (outside its domain) is a discrepancy too
            discrepancy_flag: gap.is_nan() || gap > DISCREPANCY_TOL,
        }
    }
}

/// `(max[0, (2/3)(1−p) − √(p(2+p)/3)])²`
pub fn c_ab_sq_ghzw(p: f64) -> f64 {
    let bracket = 2.0 / 3.0 * (1.0 - p) - (p / 3.0 * (2.0 + p)).sqrt();
    bracket.max(0.0).powi(2)
}

/// Root of the bracket in [`c_ab_sq_ghzw`]: squaring `2(1−p) = √(3p(2+p))`
/// gives `p² − 14p + 4 = 0`.
pub fn p0() -> f64 {
    7.0 - 3.0 * 5f64.sqrt()
}

/// Pure-state three-tangle of `phi_abd(α, p, φ)`:
/// `4|f₁ − e^{3iφ} f₂|` with `f₁ = 6α²p(1−p)/(2+p)²` and
/// `f₂ = 24(p−p²)/(4−p) · √(α(1−α)³/(8+2p−p²))`.
///
/// `f₁` is quadratic in `α`; the zero of this expression at `φ = 0` is
/// exactly [`alpha0`]. See [`tau3_family_linear_f1`] for the variant with
/// `f₁` linear in `α`.
pub fn tau3_family(alpha: f64, p: f64, phi: f64) -> f64 {
    tau3_with_f1(alpha * alpha * f1_shape(p), alpha, p, phi)
}

/// [`tau3_family`] with `f₁ = 6αp(1−p)/(2+p)²`. This variant disagrees with
/// the directly computed three-tangle and does not vanish at [`alpha0`].
pub fn tau3_family_linear_f1(alpha: f64, p: f64, phi: f64) -> f64 {
    tau3_with_f1(alpha * f1_shape(p), alpha, p, phi)
}

fn f1_shape(p: f64) -> f64 {
    6.0 * p * (1.0 - p) / (2.0 + p).powi(2)
}

fn tau3_with_f1(f1: f64, alpha: f64, p: f64, phi: f64) -> f64 {
    let f2 = 24.0 * (p - p * p) / (4.0 - p)
        * (alpha * (1.0 - alpha).powi(3) / (8.0 + 2.0 * p - p * p)).sqrt();
    let z = num_complex::Complex64::new(f1, 0.0) - num_complex::Complex64::from_polar(f2, 3.0 * phi);
    4.0 * z.norm()
}

/// `[1 + (2·2^{1/3})^{-1} (6/(2+p) − 1)]^{-1}`
pub fn alpha0(p: f64) -> f64 {
    1.0 / (1.0 + (6.0 / (2.0 + p) - 1.0) / (2.0 * 2f64.cbrt()))
}

/// `3p/(2−p)` as printed for the `ψ⁽¹⁾` coefficient.
pub fn abd_coefficient_a_printed(p: f64) -> f64 {
    3.0 * p / (2.0 - p)
}

/// Printed `a` against the coefficient read off the partial trace.
pub fn abd_coefficient_a_closed(p: f64) -> Result<ClosedFormResult> {
    check_unit("p", p)?;
    Ok(ClosedFormResult::new(
        abd_coefficient_a_printed(p),
        abd_coefficient_a(p)?,
    ))
}

/// `3p(2−3p)/4 + 2(1−p)√(p(2−p))/√3`, the low-`p` branch as printed.
pub fn e_ms_psi4_branch_i(p: f64) -> f64 {
    3.0 * p * (2.0 - 3.0 * p) / 4.0 + 2.0 * (1.0 - p) * (p * (2.0 - p)).sqrt() / 3f64.sqrt()
}

/// `(8 + (14 − 13p)p)/12`
pub fn e_ms_psi4_branch_ii(p: f64) -> f64 {
    (8.0 + (14.0 - 13.0 * p) * p) / 12.0
}

/// Printed piecewise `E_ms(Ψ₄(p))` (branch I for `p ≤ p0`) against `e_ms(psi4(p))`.
pub fn e_ms_psi4_closed(p: f64) -> Result<ClosedFormResult> {
    let printed = if p <= p0() {
        e_ms_psi4_branch_i(p)
    } else {
        e_ms_psi4_branch_ii(p)
    };
    Ok(ClosedFormResult::new(printed, e_ms(&psi4(p)?)?))
}

/// Smallest `p` (to [`P1_RESOLUTION`]) at which the numeric roof three-tangle
/// of `rho_ghz_w(p)` exceeds [`P1_ROOF_THRESHOLD`], found by bisection on
/// `[0, 1]`. Returns the upper end of the final bracket.
pub fn p1(config: &RoofConfig) -> Result<f64> {
    let entangled = |p: f64| -> Result<bool> {
        let out = roof_minimize(&rho_ghz_w(p)?, &PureMeasure::ThreeTangle, config)?;
        Ok(out.value > P1_ROOF_THRESHOLD)
    };
    let (mut lo, mut hi) = (0.0, 1.0);
    if entangled(lo)? || !entangled(hi)? {
        return Err(Error::Unsupported(
            "roof three-tangle does not change sign on [0, 1]".into(),
        ));
    }
    while hi - lo > P1_RESOLUTION {
        let mid = 0.5 * (lo + hi);
        if entangled(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

/// `[max(0, 1 − 3p/2)]²`
pub fn c_ab_sq_smolin(p: f64) -> f64 {
    (1.0 - 1.5 * p).max(0.0).powi(2)
}

/// Threshold of the Smolin family, `2/3`.
pub fn smolin_p0() -> f64 {
    2.0 / 3.0
}

/// `5p(1−p)/3`, the low-`p` branch as printed.
pub fn e_ms_psi6_branch_i(p: f64) -> f64 {
    5.0 * p * (1.0 - p) / 3.0
}

/// `(2 + 2p − p²)/3`
pub fn e_ms_psi6_branch_ii(p: f64) -> f64 {
    (2.0 + 2.0 * p - p * p) / 3.0
}

/// Printed piecewise `E_ms(Ψ₆(p))` (branch I for `p ≤ 2/3`) against `e_ms(psi6(p))`.
pub fn e_ms_psi6_closed(p: f64) -> Result<ClosedFormResult> {
    let printed = if p <= smolin_p0() {
        e_ms_psi6_branch_i(p)
    } else {
        e_ms_psi6_branch_ii(p)
    };
    Ok(ClosedFormResult::new(printed, e_ms(&psi6(p)?)?))
}

/// `4(N−1)/(N²+N)`
pub fn tau_a1_formula(n: usize) -> f64 {
    let n = n as f64;
    4.0 * (n - 1.0) / (n * n + n)
}
