//! Entanglement quantities of pure and mixed multiqubit states.
//!
//! Values in `(-1e-9, 0)` are float noise and clamp to zero; anything lower is
//! reported as [`Error::MeasureRange`]. The bounded measures get the same
//! treatment at the top of `[0, 1]`.

use nalgebra::{DMatrix, Matrix2};

use crate::error::{Error, Result};
use crate::state::{bit, partial_transpose, trace_norm, DensityMatrix, QubitSubset, StateVector, C64};

const CLAMP_TOL: f64 = 1e-9;
/// Eigenvalues of a two-qubit state treated as exact zeros.
const FACTOR_DROP: f64 = 1e-14;

/// Entry signs of `σ_y ⊗ σ_y`, which is anti-diagonal: `(YY v)[i] = SIGN[i] v[3 - i]`.
const YY_SIGN: [f64; 4] = [-1.0, 1.0, 1.0, -1.0];

#[derive(Clone, Debug, PartialEq)]
pub struct MeasureValue {
    pub name: &'static str,
    pub value: f64,
    pub partition: Option<QubitSubset>,
}

/// Pure-state measures that can be extended to mixed states by a convex roof.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PureMeasure {
    /// Linear entropy across the cut `subset | rest`.
    OneTangle(QubitSubset),
    /// Three-qubit residual tangle.
    ThreeTangle,
    /// Multipartite complementarity measure.
    Ems,
}

impl PureMeasure {
    pub fn name(&self) -> &'static str {
        match self {
            PureMeasure::OneTangle(_) => "one_tangle",
            PureMeasure::ThreeTangle => "three_tangle",
            PureMeasure::Ems => "e_ms",
        }
    }

    /// Rejects registers the measure is not defined on.
    pub fn check_register(&self, n_qubits: usize) -> Result<()> {
        match self {
            PureMeasure::OneTangle(k) => check_cut(k, n_qubits),
            PureMeasure::ThreeTangle if n_qubits != 3 => Err(Error::Unsupported(format!(
                "three-tangle needs 3 qubits, got {n_qubits}"
            ))),
            PureMeasure::Ems if n_qubits < 3 => Err(Error::Unsupported(format!(
                "e_ms needs at least 3 qubits, got {n_qubits}"
            ))),
            _ => Ok(()),
        }
    }

    pub fn evaluate(&self, psi: &StateVector) -> Result<f64> {
        self.check_register(psi.n_qubits())?;
        self.evaluate_amplitudes(psi.n_qubits(), psi.amplitudes())
    }

    /// Same as [`evaluate`](Self::evaluate) on a normalized amplitude slice,
    /// without re-validating the register.
    pub(crate) fn evaluate_amplitudes(&self, n: usize, amps: &[C64]) -> Result<f64> {
        match self {
            PureMeasure::OneTangle(k) => one_tangle_amplitudes(amps, n, k),
            PureMeasure::ThreeTangle => three_tangle_amplitudes(amps),
            PureMeasure::Ems => e_ms_amplitudes(amps, n),
        }
    }
}

fn clamp(measure: &'static str, value: f64, upper: Option<f64>) -> Result<f64> {
    if value < -CLAMP_TOL || value.is_nan() {
        return Err(Error::MeasureRange { measure, value });
    }
    match upper {
        Some(hi) if value > hi + CLAMP_TOL => Err(Error::MeasureRange { measure, value }),
        Some(hi) => Ok(value.clamp(0.0, hi)),
        None => Ok(value.max(0.0)),
    }
}

fn check_cut(k: &QubitSubset, n: usize) -> Result<()> {
    k.validate(n)?;
    if k.is_empty() || k.len() == n {
        return Err(Error::Subset(format!(
            "{k} is not a proper nonempty subset of {n} qubits"
        )));
    }
    Ok(())
}

/// Purity `tr ρ_k²` of the reduced state on `k`.
fn reduced_purity(amps: &[C64], n: usize, k: &QubitSubset) -> f64 {
    if k.len() == 1 {
        let r = single_reduced(amps, n, k.indices()[0]);
        return (r * r).trace().re;
    }
    let psi = StateVector::from_unnormalized(n, amps.to_vec()).expect("nonzero");
    psi.partial_trace(k).expect("validated").purity()
}

pub(crate) fn single_reduced(amps: &[C64], n: usize, k: usize) -> Matrix2<C64> {
    let stride = 1usize << (n - 1 - k);
    let mut r = Matrix2::<C64>::zeros();
    for i in 0..amps.len() {
        if i & stride == 0 {
            let a0 = amps[i];
            let a1 = amps[i | stride];
            r[(0, 0)] += a0 * a0.conj();
            r[(0, 1)] += a0 * a1.conj();
            r[(1, 1)] += a1 * a1.conj();
        }
    }
    r[(1, 0)] = r[(0, 1)].conj();
    r
}

/// `M` with `ρ_ij = M M†`: the amplitudes regrouped as (pair index, rest index).
fn pair_factor(amps: &[C64], n: usize, i: usize, j: usize) -> DMatrix<C64> {
    let cols = amps.len() / 4;
    let mut m = DMatrix::zeros(4, cols);
    for (idx, a) in amps.iter().enumerate() {
        let row = (bit(idx, n, i) << 1) | bit(idx, n, j);
        let col = (0..n)
            .filter(|&q| q != i && q != j)
            .fold(0usize, |acc, q| (acc << 1) | bit(idx, n, q));
        m[(row, col)] = *a;
    }
    m
}

/// Concurrence of `ρ = M M†` for a 4×K factor `M`.
///
/// The square roots of the spin-flip eigenvalues are the singular values of
/// `Mᵀ (σ_y⊗σ_y) M`, so no square root of a near-zero eigenvalue is taken.
fn concurrence_from_factor(m: &DMatrix<C64>) -> f64 {
    let v = if m.ncols() > 4 {
        // ρ = R† R with R from the thin QR of M†
        m.adjoint().qr().r().adjoint()
    } else {
        m.clone()
    };
    let k = v.ncols();
    let mut flipped = DMatrix::zeros(4, k);
    for c in 0..k {
        for r in 0..4 {
            flipped[(r, c)] = v[(3 - r, c)] * YY_SIGN[r];
        }
    }
    let tau = v.transpose() * flipped;
    let mut s: Vec<f64> = tau.singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s.resize(4, 0.0);
    let c = s[0] - s[1] - s[2] - s[3];
    // a few ulp of rounding is not entanglement
    if c <= 8.0 * f64::EPSILON {
        0.0
    } else {
        c
    }
}

/// Squared concurrences `C²_ij` for every pair `i < j` of a pure state, in
/// lexicographic pair order.
pub fn pairwise_concurrence_sq(psi: &StateVector) -> Vec<((usize, usize), f64)> {
    let n = psi.n_qubits();
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            let c = concurrence_from_factor(&pair_factor(psi.amplitudes(), n, i, j));
            out.push(((i, j), c * c));
        }
    }
    out
}

fn one_tangle_amplitudes(amps: &[C64], n: usize, k: &QubitSubset) -> Result<f64> {
    let value = 2.0 * (1.0 - reduced_purity(amps, n, k));
    let upper = (k.len() == 1).then_some(1.0);
    clamp("one_tangle", value, upper)
}

/// Linear entropy `2(1 − tr ρ_k²)` between `k` and the rest of the register.
pub fn one_tangle(psi: &StateVector, k: &QubitSubset) -> Result<f64> {
    check_cut(k, psi.n_qubits())?;
    one_tangle_amplitudes(psi.amplitudes(), psi.n_qubits(), k)
}

/// `2 tr ρ_k² − 1`, the complement of [`one_tangle`] in the complementarity relation.
pub fn single_property(psi: &StateVector, k: &QubitSubset) -> Result<f64> {
    check_cut(k, psi.n_qubits())?;
    Ok(2.0 * reduced_purity(psi.amplitudes(), psi.n_qubits(), k) - 1.0)
}

/// Wootters concurrence of a two-qubit density matrix.
///
/// Factors `ρ = M M†` from its eigendecomposition and takes the singular
/// values of `Mᵀ (σ_y⊗σ_y) M`, which are the square roots of the eigenvalues
/// of `ρ ρ̃`. Eigenvalues at or below [`FACTOR_DROP`] are dropped so that rank
/// deficient states do not pick up square-root noise.
pub fn concurrence(rho: &DensityMatrix) -> Result<f64> {
    if rho.n_qubits() != 2 {
        return Err(Error::Unsupported(format!(
            "concurrence needs a 2-qubit state, got {} qubits",
            rho.n_qubits()
        )));
    }
    let spec = rho.spectrum()?;
    let kept: Vec<usize> = (0..4).filter(|&j| spec.eigenvalues[j] > FACTOR_DROP).collect();
    let m = DMatrix::from_fn(4, kept.len(), |r, c| {
        spec.eigenvectors[(r, kept[c])] * spec.eigenvalues[kept[c]].sqrt()
    });
    Ok(concurrence_from_factor(&m))
}

fn three_tangle_amplitudes(amps: &[C64]) -> Result<f64> {
    let r = single_reduced(amps, 3, 0);
    let tau_a = 2.0 * (1.0 - (r * r).trace().re);
    let c_ab = concurrence_from_factor(&pair_factor(amps, 3, 0, 1));
    let c_ac = concurrence_from_factor(&pair_factor(amps, 3, 0, 2));
    clamp("three_tangle", tau_a - c_ab * c_ab - c_ac * c_ac, Some(1.0))
}

/// Residual tangle `τ_A − C²_AB − C²_AC` of a three-qubit pure state.
pub fn three_tangle_pure(psi: &StateVector) -> Result<f64> {
    PureMeasure::ThreeTangle.evaluate(psi)
}

fn e_ms_amplitudes(amps: &[C64], n: usize) -> Result<f64> {
    let mut tau_sum = 0.0;
    for k in 0..n {
        let r = single_reduced(amps, n, k);
        tau_sum += 2.0 * (1.0 - (r * r).trace().re);
    }
    let mut c_sum = 0.0;
    for i in 0..n {
        for j in i + 1..n {
            let c = concurrence_from_factor(&pair_factor(amps, n, i, j));
            c_sum += c * c;
        }
    }
    clamp("e_ms", (tau_sum - 2.0 * c_sum) / n as f64, Some(1.0))
}

/// `[Σ_k τ_k − 2 Σ_{i<j} C²_ij] / N` over single-qubit cuts and qubit pairs.
pub fn e_ms(psi: &StateVector) -> Result<f64> {
    PureMeasure::Ems.evaluate(psi)
}

/// `(‖ρ^{T_subset}‖₁ − 1) / 2`
pub fn negativity(rho: &DensityMatrix, subset: &QubitSubset) -> Result<f64> {
    let pt = partial_transpose(rho, subset)?;
    clamp("negativity", (trace_norm(&pt)? - 1.0) / 2.0, None)
}
