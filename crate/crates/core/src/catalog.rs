//! Constructors for the GHZ/W families, the deformed Smolin state and their
//! purifications.
//!
//! Register orders: `psi4` is A,B,C,D with D the environment; `psi6` is
//! A,B,C,D,E,F with E,F the environment; `psi_n1` appends the environment
//! qubit after the N system qubits.

use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{check_unit, Error, Result};
use crate::state::{DensityMatrix, QubitSubset, StateVector, C64};

pub const MIN_FAMILY_QUBITS: usize = 2;
pub const MAX_FAMILY_QUBITS: usize = 10;

/// Bell basis labels; the index order is fixed across the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Bell {
    PhiPlus = 0,
    PhiMinus = 1,
    PsiPlus = 2,
    PsiMinus = 3,
}

impl Bell {
    pub const ALL: [Bell; 4] = [Bell::PhiPlus, Bell::PhiMinus, Bell::PsiPlus, Bell::PsiMinus];

    pub fn from_index(index: usize) -> Result<Bell> {
        Self::ALL.get(index).copied().ok_or(Error::Parameter {
            name: "bell index",
            value: index as f64,
            range: "{0, 1, 2, 3}",
        })
    }
}

fn re(x: f64) -> C64 {
    C64::new(x, 0.0)
}

fn check_n(n: usize, max: usize) -> Result<()> {
    if (MIN_FAMILY_QUBITS..=max).contains(&n) {
        Ok(())
    } else {
        Err(Error::Parameter {
            name: "n",
            value: n as f64,
            range: "supported qubit count",
        })
    }
}

fn sparse(n: usize, terms: &[(usize, C64)]) -> StateVector {
    let mut amps = vec![re(0.0); 1 << n];
    for &(i, a) in terms {
        amps[i] += a;
    }
    StateVector::from_unnormalized(n, amps).expect("family states are nonzero")
}

/// `(|0…0⟩ + |1…1⟩)/√2`
pub fn ghz(n: usize) -> Result<StateVector> {
    check_n(n, MAX_FAMILY_QUBITS)?;
    Ok(sparse(n, &[(0, re(1.0)), ((1 << n) - 1, re(1.0))]))
}

/// Equal superposition of the single-excitation basis states.
pub fn w(n: usize) -> Result<StateVector> {
    check_n(n, MAX_FAMILY_QUBITS)?;
    let terms: Vec<(usize, C64)> = (0..n).map(|k| (1usize << k, re(1.0))).collect();
    Ok(sparse(n, &terms))
}

pub fn bell(which: Bell) -> StateVector {
    let h = FRAC_1_SQRT_2;
    let amps = match which {
        Bell::PhiPlus => [h, 0.0, 0.0, h],
        Bell::PhiMinus => [h, 0.0, 0.0, -h],
        Bell::PsiPlus => [0.0, h, h, 0.0],
        Bell::PsiMinus => [0.0, h, -h, 0.0],
    };
    StateVector::new(2, amps.iter().map(|&x| re(x)).collect()).expect("normalized")
}

/// `p|GHZ⟩⟨GHZ| + (1-p)|W⟩⟨W|` on three qubits.
pub fn rho_ghz_w(p: f64) -> Result<DensityMatrix> {
    check_unit("p", p)?;
    let (g, w3) = (ghz(3)?, w(3)?);
    DensityMatrix::mixture(&[(p, &g), (1.0 - p, &w3)])
}

/// `√(1-p)|W⟩|0⟩ + √p|GHZ⟩|1⟩`, a purification of [`rho_ghz_w`].
pub fn psi4(p: f64) -> Result<StateVector> {
    check_unit("p", p)?;
    let zero = StateVector::basis(1, 0)?;
    let one = StateVector::basis(1, 1)?;
    let a = w(3)?.tensor(&zero);
    let b = ghz(3)?.tensor(&one);
    let amps = a
        .amplitudes()
        .iter()
        .zip(b.amplitudes())
        .map(|(x, y)| x * (1.0 - p).sqrt() + y * p.sqrt())
        .collect();
    StateVector::new(4, amps)
}

/// Weight of the `ψ⁽¹⁾` branch in `tr_C |Ψ₄(p)⟩⟨Ψ₄(p)|`.
pub fn abd_weight(p: f64) -> f64 {
    (2.0 + p) / 6.0
}

/// Coefficient `b` of `ψ⁽²⁾(p)`.
pub fn abd_coefficient_b(p: f64) -> f64 {
    3.0 * p / (4.0 - p)
}

/// Coefficient `a` of `ψ⁽¹⁾(p)`, read off the partial trace of `psi4(p)`
/// over qubit C: the `|111⟩` population divided by the branch weight.
pub fn abd_coefficient_a(p: f64) -> Result<f64> {
    let r = psi4(p)?.partial_trace(&abd_keep())?;
    Ok(r.matrix()[(0b111, 0b111)].re / abd_weight(p))
}

/// The A,B,D qubits of the `psi4` register.
pub fn abd_keep() -> QubitSubset {
    QubitSubset::new(vec![0, 1, 3]).expect("sorted")
}

/// `(ψ⁽¹⁾(p), ψ⁽²⁾(p))` in qubit order A,B,D.
pub fn abd_components(p: f64) -> Result<(StateVector, StateVector)> {
    check_unit("p", p)?;
    let a = abd_coefficient_a(p)?;
    let b = abd_coefficient_b(p);
    let psi1 = sparse(3, &[(0b000, re((1.0 - a).max(0.0).sqrt())), (0b111, re(a.sqrt()))]);
    let side = ((1.0 - b) / 2.0).max(0.0).sqrt();
    let psi2 = sparse(3, &[(0b001, re(b.sqrt())), (0b010, re(side)), (0b100, re(side))]);
    Ok((psi1, psi2))
}

/// `√α|ψ⁽¹⁾(p)⟩ − e^{iφ}√(1−α)|ψ⁽²⁾(p)⟩`
pub fn phi_abd(alpha: f64, p: f64, phi: f64) -> Result<StateVector> {
    check_unit("alpha", alpha)?;
    check_phase(phi)?;
    let (psi1, psi2) = abd_components(p)?;
    let rel = C64::from_polar(1.0, phi) * (1.0 - alpha).sqrt();
    let amps = psi1
        .amplitudes()
        .iter()
        .zip(psi2.amplitudes())
        .map(|(x, y)| x * alpha.sqrt() - y * rel)
        .collect();
    StateVector::new(3, amps)
}

/// `α ψ⁽¹⁾(p) + (1−α) ψ⁽²⁾(p)` for arbitrary `α`.
pub fn rho_abd_family(alpha: f64, p: f64) -> Result<DensityMatrix> {
    check_unit("alpha", alpha)?;
    let (psi1, psi2) = abd_components(p)?;
    DensityMatrix::mixture(&[(alpha, &psi1), (1.0 - alpha, &psi2)])
}

/// The A,B,D reduction of `psi4(p)`, i.e. the family at `α_p = (2+p)/6`.
pub fn rho_abd(p: f64) -> Result<DensityMatrix> {
    check_unit("p", p)?;
    rho_abd_family(abd_weight(p), p)
}

/// Deformed Smolin state on A,B,C,D: the three Bell⊗Bell projectors for
/// `Φ⁺, Φ⁻, Ψ⁺` carry `p/4` each and the singlet pair carries `1 − 3p/4`.
pub fn smolin(p: f64) -> Result<DensityMatrix> {
    check_unit("p", p)?;
    let pairs: Vec<StateVector> = Bell::ALL.iter().map(|&b| bell(b).tensor(&bell(b))).collect();
    let weights = smolin_weights(p);
    let comps: Vec<(f64, &StateVector)> = weights.iter().copied().zip(pairs.iter()).collect();
    DensityMatrix::mixture(&comps)
}

fn smolin_weights(p: f64) -> [f64; 4] {
    [p / 4.0, p / 4.0, p / 4.0, 1.0 - 3.0 * p / 4.0]
}

/// `Σ_{ij} ξ_ij |ψ⁽ⁱʲ⁾⟩_AB |ψ⁽ⁱʲ⁾⟩_CD |ij⟩_EF`, a purification of [`smolin`].
pub fn psi6(p: f64) -> Result<StateVector> {
    check_unit("p", p)?;
    let weights = smolin_weights(p);
    let mut amps = vec![re(0.0); 64];
    for (k, &b) in Bell::ALL.iter().enumerate() {
        let term = bell(b)
            .tensor(&bell(b))
            .tensor(&StateVector::basis(2, k)?);
        let xi = weights[k].sqrt();
        for (a, t) in amps.iter_mut().zip(term.amplitudes()) {
            *a += t * xi;
        }
    }
    StateVector::new(6, amps)
}

/// `α|1…1⟩⟨1…1| + (1−α)|W_N⟩⟨W_N|`
pub fn rho_wn_mix(n: usize, alpha: f64) -> Result<DensityMatrix> {
    check_n(n, MAX_FAMILY_QUBITS - 1)?;
    check_unit("alpha", alpha)?;
    let ones = StateVector::basis(n, (1 << n) - 1)?;
    let wn = w(n)?;
    DensityMatrix::mixture(&[(alpha, &ones), (1.0 - alpha, &wn)])
}

/// `√α|1…1⟩|1⟩ + √(1−α)|W_N⟩|0⟩`
pub fn psi_n1(n: usize, alpha: f64) -> Result<StateVector> {
    check_n(n, MAX_FAMILY_QUBITS - 1)?;
    check_unit("alpha", alpha)?;
    let ones = StateVector::basis(n + 1, (1 << (n + 1)) - 1)?;
    let wn = w(n)?.tensor(&StateVector::basis(1, 0)?);
    let amps = ones
        .amplitudes()
        .iter()
        .zip(wn.amplitudes())
        .map(|(x, y)| x * alpha.sqrt() + y * (1.0 - alpha).sqrt())
        .collect();
    StateVector::new(n + 1, amps)
}

/// The family choice `α = 1/(N+1)`.
pub fn wn_mix_alpha(n: usize) -> f64 {
    1.0 / (n as f64 + 1.0)
}

fn check_phase(phi: f64) -> Result<()> {
    if phi.is_finite() && (0.0..=std::f64::consts::TAU).contains(&phi) {
        Ok(())
    } else {
        Err(Error::Parameter {
            name: "phi",
            value: phi,
            range: "[0, 2π]",
        })
    }
}
