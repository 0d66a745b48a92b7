//! The verification suite: ten numbered checks plus a ledger of closed forms
//! whose printed expression disagrees with direct evaluation.
//!
//! A criterion that errors out is reported as a failed check rather than
//! aborting the run.

use std::f64::consts::PI;
use std::fmt;

use nalgebra::Matrix2;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::catalog::{
    abd_components, phi_abd, psi4, rho_abd, rho_abd_family, rho_ghz_w, rho_wn_mix, smolin,
    wn_mix_alpha,
};
use crate::error::Result;
use crate::formulas::{
    abd_coefficient_a_closed, alpha0, c_ab_sq_ghzw, c_ab_sq_smolin, e_ms_psi4_branch_i,
    e_ms_psi4_branch_ii, e_ms_psi6_branch_i, e_ms_psi6_branch_ii, p0, p1, smolin_p0, tau3_family,
    tau_a1_formula, DISCREPANCY_TOL,
};
use crate::measures::{
    concurrence, e_ms, negativity, one_tangle, single_property, three_tangle_pure, PureMeasure,
};
use crate::roof::{measure_env_povm, roof_minimize, Ensemble, PovmElement, RoofConfig};
use crate::state::{purify, DensityMatrix, QubitSubset, Spectrum, StateVector, C64};
use crate::sweep::linspace;

/// Names of the numbered criteria, in order.
pub const CRITERIA: [&str; 10] = [
    "thresholds",
    "e_ms_maximum",
    "zero_point",
    "mixed_three_tangle",
    "smolin_region",
    "n_qubit_family",
    "purification",
    "povm_reduction",
    "discrepancy_ledger",
    "property_suites",
];

/// Closed forms expected to disagree with direct evaluation.
pub const EXPECTED_LEDGER: [&str; 3] = ["abd_coefficient_a", "e_ms_psi4_branch_i", "e_ms_psi6_branch_i"];

const P_GRID: [f64; 9] = [0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Ledgered,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Ledgered => "LEDGER",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub printed_value: Option<f64>,
    pub direct_value: Option<f64>,
    pub tolerance: f64,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = |v: Option<f64>| v.map_or("-".to_string(), |x| format!("{x:.6e}"));
        write!(
            f,
            "{:<6} {:<34} printed={} direct={} tol={:.0e}  {}",
            self.status,
            self.name,
            num(self.printed_value),
            num(self.direct_value),
            self.tolerance,
            self.detail
        )
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn ledgered(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Ledgered)
    }

    pub fn passed(&self) -> bool {
        self.failures().next().is_none()
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        write!(
            f,
            "{} checks, {} failed, {} ledgered",
            self.checks.len(),
            self.failures().count(),
            self.ledgered().count()
        )
    }
}

/// Runs every criterion and appends the ledger rows.
pub fn run(config: &RoofConfig) -> VerifyReport {
    let audit = closed_form_audit();
    let mut checks: Vec<Check> = (1..=CRITERIA.len())
        .map(|k| {
            if k == 9 {
                discrepancy_ledger_check(&audit)
            } else {
                criterion(k, config)
            }
        })
        .collect();
    if let Ok(entries) = &audit {
        checks.extend(ledger_rows(entries));
    }
    VerifyReport { checks }
}

/// Runs criterion `k` (1-based).
pub fn criterion(k: usize, config: &RoofConfig) -> Check {
    let result = match k {
        1 => thresholds(config),
        2 => e_ms_maximum(),
        3 => zero_point(),
        4 => mixed_three_tangle(config),
        5 => smolin_region(config),
        6 => n_qubit_family(config),
        7 => purification(),
        8 => povm_reduction(config),
        9 => return discrepancy_ledger_check(&closed_form_audit()),
        10 => property_suites(config),
        _ => panic!("criterion index {k} out of range 1..=10"),
    };
    let name = format!("{k:>2} {}", CRITERIA[k - 1]);
    match result {
        Ok(t) => t.finish(name),
        Err(e) => Check {
            name,
            status: Status::Fail,
            printed_value: None,
            direct_value: None,
            tolerance: 0.0,
            detail: format!("error: {e}"),
        },
    }
}

/// Headline numbers plus the sub-checks that failed.
struct Tally {
    printed: Option<f64>,
    direct: Option<f64>,
    tolerance: f64,
    failed: Vec<String>,
    notes: Vec<String>,
}

impl Tally {
    fn new(printed: Option<f64>, direct: f64, tolerance: f64) -> Self {
        Self {
            printed,
            direct: Some(direct),
            tolerance,
            failed: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn require(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failed.push(what());
        }
    }

    fn note(&mut self, s: String) {
        self.notes.push(s);
    }

    fn finish(self, name: String) -> Check {
        let status = if self.failed.is_empty() { Status::Pass } else { Status::Fail };
        let detail = if self.failed.is_empty() {
            self.notes.join("; ")
        } else {
            self.failed.join("; ")
        };
        Check {
            name,
            status,
            printed_value: self.printed,
            direct_value: self.direct,
            tolerance: self.tolerance,
            detail,
        }
    }
}

fn pair(i: usize, j: usize) -> QubitSubset {
    QubitSubset::new(vec![i, j]).expect("i < j")
}

fn pair_concurrence(rho: &DensityMatrix, i: usize, j: usize) -> Result<f64> {
    concurrence(&rho.partial_trace(&pair(i, j))?)
}

fn thresholds(config: &RoofConfig) -> Result<Tally> {
    let p0 = p0();
    let mut t = Tally::new(Some(0.2918), p0, 5e-5);
    t.require((p0 - 0.2918).abs() <= 5e-5, || format!("p0 = {p0}"));
    for p in linspace(0.0, 1.0, 101) {
        let c = pair_concurrence(&rho_ghz_w(p)?, 0, 1)?;
        if p >= p0 {
            t.require(c <= 1e-10, || format!("C_AB({p}) = {c:e} above p0"));
        } else if p < p0 - 1e-3 {
            t.require(c > 0.0, || format!("C_AB({p}) = 0 below p0"));
        }
    }
    let p1 = p1(config)?;
    t.require((p1 - 0.6269).abs() <= 1e-2, || format!("p1 = {p1}"));
    t.note(format!("p1 = {p1:.4}"));
    Ok(t)
}

fn e_ms_maximum() -> Result<Tally> {
    let (mut arg, mut max) = (0.0, f64::NEG_INFINITY);
    for k in 0..=10_000 {
        let p = k as f64 / 10_000.0;
        let v = e_ms(&psi4(p)?)?;
        if v > max {
            (arg, max) = (p, v);
        }
    }
    let mut t = Tally::new(Some(0.9808), max, 2e-4);
    t.require((max - 0.9808).abs() <= 2e-4, || format!("max {max}"));
    t.require((arg - 7.0 / 13.0).abs() <= 1e-3, || format!("argmax {arg}"));
    let mut gap: f64 = 0.0;
    for p in linspace(0.0, 1.0, 1001).into_iter().filter(|&p| p > p0()) {
        gap = gap.max((e_ms_psi4_branch_ii(p) - e_ms(&psi4(p)?)?).abs());
    }
    t.require(gap <= 1e-10, || format!("branch II gap {gap:e}"));
    t.note(format!("argmax {arg}, branch II gap {gap:.1e}"));
    Ok(t)
}

fn zero_point() -> Result<Tally> {
    let mut worst: f64 = 0.0;
    let mut mix_dev: f64 = 0.0;
    for p in P_GRID {
        let a = alpha0(p);
        let members = (0..3)
            .map(|k| phi_abd(a, p, 2.0 * PI * k as f64 / 3.0))
            .collect::<Result<Vec<_>>>()?;
        for m in &members {
            worst = worst.max(three_tangle_pure(m)?);
        }
        let parts: Vec<(f64, &StateVector)> = members.iter().map(|m| (1.0 / 3.0, m)).collect();
        let mix = DensityMatrix::mixture(&parts)?;
        mix_dev = mix_dev.max(mix.max_abs_diff(&rho_abd_family(a, p)?));
    }
    let mut t = Tally::new(Some(0.0), worst, 1e-9);
    t.require(worst <= 1e-9, || format!("tau3 {worst:e}"));
    let (lo, hi) = (alpha0(0.0), alpha0(1.0));
    t.require((lo - 0.5575).abs() <= 5e-5, || format!("alpha0(0) = {lo}"));
    t.require((hi - 0.7159).abs() <= 5e-5, || format!("alpha0(1) = {hi}"));
    t.require(mix_dev <= 1e-10, || format!("mixture deviation {mix_dev:e}"));
    t.note(format!("alpha0 in [{lo:.4}, {hi:.4}], mixture deviation {mix_dev:.1e}"));
    Ok(t)
}

fn mixed_three_tangle(config: &RoofConfig) -> Result<Tally> {
    let mut worst: f64 = 0.0;
    for p in P_GRID {
        worst = worst.max(roof_minimize(&rho_abd(p)?, &PureMeasure::ThreeTangle, config)?.value);
    }
    let mut t = Tally::new(Some(0.0), worst, 1e-6);
    t.require(worst <= 1e-6, || format!("roof tau3 {worst:e}"));
    Ok(t)
}

fn smolin_region(config: &RoofConfig) -> Result<Tally> {
    let (mut c_max, mut tau3_max, mut ems_max, mut neg_min) = (0.0f64, 0.0f64, 0.0f64, f64::INFINITY);
    let mut formula_max: f64 = 0.0;
    for p in [0.7, 0.8, 0.9, 1.0] {
        let rho = smolin(p)?;
        formula_max = formula_max.max(c_ab_sq_smolin(p));
        for i in 0..4 {
            for j in i + 1..4 {
                c_max = c_max.max(pair_concurrence(&rho, i, j)?);
            }
        }
        for drop in 0..4 {
            let keep = QubitSubset::new((0..4).filter(|&q| q != drop).collect::<Vec<_>>())?;
            let reduced = rho.partial_trace(&keep)?;
            tau3_max = tau3_max.max(roof_minimize(&reduced, &PureMeasure::ThreeTangle, config)?.value);
        }
        ems_max = ems_max.max(roof_minimize(&rho, &PureMeasure::Ems, config)?.value);
        neg_min = neg_min.min(negativity(&rho, &QubitSubset::single(0))?);
    }
    let mut t = Tally::new(Some(0.0), ems_max, 1e-6);
    t.require(formula_max == 0.0, || format!("closed-form C_AB^2 {formula_max}"));
    t.require(c_max <= 1e-10, || format!("pair concurrence {c_max:e}"));
    t.require(tau3_max <= 1e-6, || format!("roof tau3 {tau3_max:e}"));
    t.require(ems_max <= 1e-6, || format!("roof e_ms {ems_max:e}"));
    t.require(neg_min > 1e-3, || format!("negativity {neg_min}"));
    t.note(format!("min negativity {neg_min:.4}, max roof tau3 {tau3_max:.1e}"));
    Ok(t)
}

fn n_qubit_family(config: &RoofConfig) -> Result<Tally> {
    let mut c_max: f64 = 0.0;
    for n in 3..=7 {
        let rho = rho_wn_mix(n, wn_mix_alpha(n))?;
        for i in 0..n {
            for j in i + 1..n {
                c_max = c_max.max(pair_concurrence(&rho, i, j)?);
            }
        }
    }
    let mut headline = None;
    let mut gaps = Vec::new();
    let mut failed = Vec::new();
    for n in [3, 4] {
        let rho = rho_wn_mix(n, wn_mix_alpha(n))?;
        let roof = roof_minimize(&rho, &PureMeasure::OneTangle(QubitSubset::single(0)), config)?.value;
        let target = tau_a1_formula(n);
        headline.get_or_insert((target, roof));
        if (roof - target).abs() > 1e-3 {
            failed.push(format!("N={n}: roof {roof} vs {target}"));
        }
        gaps.push(format!("N={n} gap {:.1e}", roof - target));
    }
    let (target, roof) = headline.expect("two sizes");
    let mut t = Tally::new(Some(target), roof, 1e-3);
    t.require(c_max <= 1e-10, || format!("pair concurrence {c_max:e}"));
    for f in failed {
        t.require(false, || f);
    }
    t.note(format!("max pair concurrence {c_max:.1e}, {}", gaps.join(", ")));
    Ok(t)
}

/// `max_U |⟨a|(I⊗U)|b⟩|` over unitaries on the last `env` qubits, which is the
/// trace norm of the cross operator `Σ_s a*(s,e) b(s,e')`.
fn best_env_overlap(a: &StateVector, b: &StateVector, env: usize) -> f64 {
    let env_dim = 1usize << env;
    let sys_dim = a.dim() / env_dim;
    let x = nalgebra::DMatrix::from_fn(env_dim, env_dim, |e, f| {
        (0..sys_dim)
            .map(|s| a.amplitudes()[s * env_dim + e].conj() * b.amplitudes()[s * env_dim + f])
            .sum::<C64>()
    });
    x.singular_values().sum()
}

fn purification() -> Result<Tally> {
    let mut dev: f64 = 0.0;
    let mut overlap_dev: f64 = 0.0;
    let mut check = |rho: DensityMatrix| -> Result<StateVector> {
        let psi = purify(&rho)?;
        let back = psi.partial_trace(&QubitSubset::range(0..rho.n_qubits()))?;
        dev = dev.max(back.max_abs_diff(&rho));
        Ok(psi)
    };
    for p in linspace(0.0, 1.0, 21) {
        let psi = check(rho_ghz_w(p)?)?;
        let reference = psi4(p)?;
        if psi.n_qubits() != reference.n_qubits() {
            return Err(crate::Error::Dimension {
                n_qubits: reference.n_qubits(),
                expected: reference.dim(),
                actual: psi.dim(),
            });
        }
        overlap_dev = overlap_dev.max((1.0 - best_env_overlap(&psi, &reference, 1)).abs());
        check(smolin(p)?)?;
        check(rho_wn_mix(3, p)?)?;
        check(rho_wn_mix(4, p)?)?;
    }
    let mut t = Tally::new(Some(0.0), dev, 1e-10);
    t.require(dev <= 1e-10, || format!("round-trip deviation {dev:e}"));
    t.require(overlap_dev <= 1e-10, || format!("environment fidelity gap {overlap_dev:e}"));
    t.note(format!("fidelity gap to psi4 {overlap_dev:.1e}"));
    Ok(t)
}

/// Two-outcome projective measurement of qubit D onto `(|0⟩ ± e^{iφ}|1⟩)/√2`.
fn phase_basis(phi: f64) -> Result<Vec<PovmElement>> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let ph = C64::from_polar(h, phi);
    [ph, -ph]
        .into_iter()
        .map(|x| PovmElement::rank_one(1.0, &[C64::new(h, 0.0), x]))
        .collect()
}

fn povm_reduction(config: &RoofConfig) -> Result<Tally> {
    let a = PureMeasure::OneTangle(QubitSubset::single(0));
    let d = QubitSubset::single(3);
    let mut worst_gap: f64 = 0.0;
    let mut headline = (0.0, 0.0);
    let mut failed = Vec::new();
    for p in [0.1, 0.3, 0.5, 0.7, 0.9] {
        let psi = psi4(p)?;
        let roof = roof_minimize(&rho_ghz_w(p)?, &a, config)?.value;
        let plus_minus = measure_env_povm(&psi, &d, &phase_basis(0.0)?)?.average(&a)?;
        if plus_minus < roof - 1e-6 {
            failed.push(format!("p={p}: {{+,-}} average {plus_minus} below roof {roof}"));
        }
        let mut best = f64::INFINITY;
        for k in 0..360 {
            let ens: Ensemble = measure_env_povm(&psi, &d, &phase_basis(PI * k as f64 / 180.0)?)?;
            best = best.min(ens.average(&a)?);
        }
        let gap = (best - roof).abs();
        if gap >= worst_gap {
            worst_gap = gap;
            headline = (best, roof);
        }
        if gap > 1e-3 {
            failed.push(format!("p={p}: phase-family minimum {best} vs roof {roof}"));
        }
    }
    let mut t = Tally::new(Some(headline.0), headline.1, 1e-3);
    for f in failed {
        t.require(false, || f);
    }
    t.note(format!("worst phase-family gap {worst_gap:.1e}"));
    Ok(t)
}

/// Largest printed-vs-direct gap of one closed form over its grid, plus a
/// probe point.
#[derive(Clone, Debug, Serialize)]
pub struct AuditEntry {
    pub name: &'static str,
    pub max_gap: f64,
    pub probe_param: f64,
    pub probe_printed: f64,
    pub probe_direct: f64,
}

impl AuditEntry {
    pub fn flagged(&self) -> bool {
        self.max_gap.is_nan() || self.max_gap > DISCREPANCY_TOL
    }
}

fn audit_grid(
    name: &'static str,
    grid: impl IntoIterator<Item = f64>,
    probe: f64,
    eval: impl Fn(f64) -> Result<(f64, f64)>,
) -> Result<AuditEntry> {
    let mut max_gap: f64 = 0.0;
    for p in grid {
        let (printed, direct) = eval(p)?;
        let gap = (printed - direct).abs();
        max_gap = if gap.is_nan() { f64::INFINITY } else { max_gap.max(gap) };
    }
    let (probe_printed, probe_direct) = eval(probe)?;
    Ok(AuditEntry {
        name,
        max_gap,
        probe_param: probe,
        probe_printed,
        probe_direct,
    })
}

/// Every closed form compared with direct evaluation across its grid.
pub fn closed_form_audit() -> Result<Vec<AuditEntry>> {
    let unit = || linspace(0.0, 1.0, 101);
    let p0 = p0();
    let s0 = smolin_p0();
    let mut out = vec![
        audit_grid("c_ab_sq_ghzw", unit(), p0, |p| {
            Ok((c_ab_sq_ghzw(p), pair_concurrence(&rho_ghz_w(p)?, 0, 1)?.powi(2)))
        })?,
        audit_grid("abd_coefficient_a", unit(), 0.3, |p| {
            let r = abd_coefficient_a_closed(p)?;
            Ok((r.value_as_printed, r.value_direct))
        })?,
        audit_grid(
            "e_ms_psi4_branch_i",
            unit().into_iter().filter(|&p| p <= p0).chain([p0]),
            p0,
            |p| Ok((e_ms_psi4_branch_i(p), e_ms(&psi4(p)?)?)),
        )?,
        audit_grid("e_ms_psi4_branch_ii", unit().into_iter().filter(|&p| p > p0), 7.0 / 13.0, |p| {
            Ok((e_ms_psi4_branch_ii(p), e_ms(&psi4(p)?)?))
        })?,
        audit_grid("c_ab_sq_smolin", unit(), 1.0 / 3.0, |p| {
            Ok((c_ab_sq_smolin(p), pair_concurrence(&smolin(p)?, 0, 1)?.powi(2)))
        })?,
        audit_grid(
            "e_ms_psi6_branch_i",
            unit().into_iter().filter(|&p| p <= s0).chain([s0]),
            s0,
            |p| Ok((e_ms_psi6_branch_i(p), e_ms(&crate::catalog::psi6(p)?)?)),
        )?,
        audit_grid("e_ms_psi6_branch_ii", unit().into_iter().filter(|&p| p > s0), 1.0, |p| {
            Ok((e_ms_psi6_branch_ii(p), e_ms(&crate::catalog::psi6(p)?)?))
        })?,
        audit_grid("tau_a1_formula", (2..=7).map(|n| n as f64), 3.0, |x| {
            let n = x as usize;
            Ok((tau_a1_formula(n), spectral_one_tangle(&rho_wn_mix(n, wn_mix_alpha(n))?)?))
        })?,
    ];
    let mut tau3_gap: f64 = 0.0;
    for i in 1..=9 {
        let alpha = i as f64 / 10.0;
        for p in P_GRID {
            for k in 0..8 {
                let phi = 2.0 * PI * k as f64 / 8.0;
                let direct = three_tangle_pure(&phi_abd(alpha, p, phi)?)?;
                tau3_gap = tau3_gap.max((tau3_family(alpha, p, phi) - direct).abs());
            }
        }
    }
    let probe = alpha0(0.5);
    out.push(AuditEntry {
        name: "tau3_family",
        max_gap: tau3_gap,
        probe_param: 0.5,
        probe_printed: tau3_family(probe, 0.5, 0.0),
        probe_direct: three_tangle_pure(&phi_abd(probe, 0.5, 0.0)?)?,
    });
    Ok(out)
}

/// Eigen-ensemble average of the one-tangle of qubit 0.
fn spectral_one_tangle(rho: &DensityMatrix) -> Result<f64> {
    let spec: Spectrum = rho.spectrum()?;
    let a = QubitSubset::single(0);
    let mut total = 0.0;
    for (j, &l) in spec.eigenvalues.iter().enumerate().filter(|(_, &l)| l > 1e-12) {
        let v = spec.eigenvectors.column(j).iter().copied().collect();
        total += l * one_tangle(&StateVector::from_unnormalized(rho.n_qubits(), v)?, &a)?;
    }
    Ok(total)
}

fn ledger_rows(audit: &[AuditEntry]) -> Vec<Check> {
    audit
        .iter()
        .filter(|e| e.flagged())
        .map(|e| Check {
            name: format!("ledger {}", e.name),
            status: Status::Ledgered,
            printed_value: Some(e.probe_printed),
            direct_value: Some(e.probe_direct),
            tolerance: DISCREPANCY_TOL,
            detail: format!("probe at {:.6}, largest gap {:.3e}", e.probe_param, e.max_gap),
        })
        .collect()
}

fn discrepancy_ledger_check(audit: &Result<Vec<AuditEntry>>) -> Check {
    let name = format!(" 9 {}", CRITERIA[8]);
    let audit = match audit {
        Ok(a) => a,
        Err(e) => {
            return Check {
                name,
                status: Status::Fail,
                printed_value: None,
                direct_value: None,
                tolerance: 0.0,
                detail: format!("error: {e}"),
            }
        }
    };
    let flagged: Vec<&str> = audit.iter().filter(|e| e.flagged()).map(|e| e.name).collect();
    let mut t = Tally::new(Some(EXPECTED_LEDGER.len() as f64), flagged.len() as f64, 0.0);
    let mut expected = EXPECTED_LEDGER.to_vec();
    expected.sort_unstable();
    let mut got = flagged.clone();
    got.sort_unstable();
    t.require(got == expected, || format!("ledgered {flagged:?}"));
    for e in audit.iter().filter(|e| !e.flagged()) {
        t.require(e.max_gap <= 1e-8, || format!("{} gap {:e}", e.name, e.max_gap));
    }
    let probe = |name: &str| audit.iter().find(|e| e.name == name);
    let mut probe_ok = |name: &str, printed: f64, direct: f64| match probe(name) {
        Some(e) => t.require(
            (e.probe_printed - printed).abs() <= 1e-3 && (e.probe_direct - direct).abs() <= 1e-3,
            || format!("{name} probe {} vs {}", e.probe_printed, e.probe_direct),
        ),
        None => t.require(false, || format!("{name} missing")),
    };
    probe_ok("e_ms_psi4_branch_i", 0.8235, 0.9149);
    probe_ok("e_ms_psi6_branch_i", 10.0 / 27.0, 26.0 / 27.0);
    t.note(format!("ledgered {}", flagged.join(", ")));
    t.finish(name)
}

/// Independent three-tangle evaluators used only for cross-checking.
pub mod oracle {
    use crate::state::{StateVector, C64};

    /// `4|d₁ − 2d₂ + 4d₃|` from the amplitudes `a_{ijk}` of a 3-qubit state.
    pub fn hyperdeterminant_tangle(psi: &StateVector) -> f64 {
        let a = |i: usize| psi.amplitudes()[i];
        let (a000, a001, a010, a011) = (a(0), a(1), a(2), a(3));
        let (a100, a101, a110, a111) = (a(4), a(5), a(6), a(7));
        let sq = |x: C64| x * x;
        let d1 = sq(a000) * sq(a111) + sq(a001) * sq(a110) + sq(a010) * sq(a101) + sq(a100) * sq(a011);
        let d2 = a000 * a111 * a011 * a100
            + a000 * a111 * a101 * a010
            + a000 * a111 * a110 * a001
            + a011 * a100 * a101 * a010
            + a011 * a100 * a110 * a001
            + a101 * a010 * a110 * a001;
        let d3 = a000 * a110 * a101 * a011 + a111 * a001 * a010 * a100;
        4.0 * (d1 - 2.0 * d2 + 4.0 * d3).norm()
    }
}

/// Normalized complex Gaussian state.
pub fn random_state<R: Rng>(n: usize, rng: &mut R) -> StateVector {
    let amps = (0..1usize << n)
        .map(|_| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
        .collect();
    StateVector::from_unnormalized(n, amps).expect("nonzero with probability one")
}

/// Haar-distributed 2×2 unitary.
pub fn random_unitary<R: Rng>(rng: &mut R) -> Matrix2<C64> {
    let g = Matrix2::from_fn(|_, _| C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)));
    let qr = g.qr();
    let (q, r) = (qr.q(), qr.r());
    // fix the phases of R's diagonal so Q is Haar
    let d = Matrix2::from_diagonal(&nalgebra::Vector2::new(
        r[(0, 0)] / r[(0, 0)].norm(),
        r[(1, 1)] / r[(1, 1)].norm(),
    ));
    q * d
}

fn spectrum_gap(a: &DensityMatrix, b: &DensityMatrix) -> Result<f64> {
    let (mut x, mut y) = (a.spectrum()?.eigenvalues, b.spectrum()?.eigenvalues);
    let len = x.len().max(y.len());
    x.resize(len, 0.0);
    y.resize(len, 0.0);
    Ok(x.iter().zip(&y).map(|(u, v)| (u - v).abs()).fold(0.0, f64::max))
}

/// Every measure on a 3-qubit state, in a fixed order.
fn measure_vector(psi: &StateVector) -> Result<Vec<f64>> {
    let rho = psi.to_density();
    let mut out = Vec::new();
    for k in 0..3 {
        let cut = QubitSubset::single(k);
        out.push(one_tangle(psi, &cut)?);
        out.push(single_property(psi, &cut)?);
        out.push(negativity(&rho, &cut)?);
    }
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        out.push(pair_concurrence(&rho, i, j)?);
    }
    out.push(three_tangle_pure(psi)?);
    out.push(e_ms(psi)?);
    Ok(out)
}

fn property_suites(config: &RoofConfig) -> Result<Tally> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut t = Tally::new(None, 0.0, 1e-9);

    let mut schmidt: f64 = 0.0;
    let mut qcr: f64 = 0.0;
    for trial in 0..200 {
        let n = 2 + trial % 4;
        let psi = random_state(n, &mut rng);
        let cut = rng.gen_range(1..n);
        let mut keep: Vec<usize> = rand::seq::index::sample(&mut rng, n, cut).into_vec();
        keep.sort_unstable();
        let s = QubitSubset::new(keep)?;
        let rest = s.complement(n);
        schmidt = schmidt.max(spectrum_gap(&psi.partial_trace(&s)?, &psi.partial_trace(&rest)?)?);
        for k in 0..n {
            let q = QubitSubset::single(k);
            qcr = qcr.max((one_tangle(&psi, &q)? + single_property(&psi, &q)? - 1.0).abs());
        }
    }
    t.require(schmidt <= 1e-9, || format!("Schmidt spectra differ by {schmidt:e}"));
    t.require(qcr <= 1e-12, || format!("QCR identity off by {qcr:e}"));

    let a = QubitSubset::single(0);
    let (mut ckw_min, mut hyper_gap) = (f64::INFINITY, 0.0f64);
    for trial in 0..10_000 {
        let psi = random_state(3, &mut rng);
        let rho = psi.to_density();
        let residual = one_tangle(&psi, &a)?
            - pair_concurrence(&rho, 0, 1)?.powi(2)
            - pair_concurrence(&rho, 0, 2)?.powi(2);
        ckw_min = ckw_min.min(residual);
        if trial < 1000 {
            let gap = (three_tangle_pure(&psi)? - oracle::hyperdeterminant_tangle(&psi)).abs();
            hyper_gap = hyper_gap.max(gap);
        }
    }
    t.require(ckw_min >= -1e-9, || format!("CKW residual {ckw_min:e}"));
    t.require(hyper_gap <= 1e-9, || format!("hyperdeterminant gap {hyper_gap:e}"));
    t.direct = Some(hyper_gap);

    let mut lu: f64 = 0.0;
    for _ in 0..200 {
        let psi = random_state(3, &mut rng);
        let mut moved = psi.clone();
        for q in 0..3 {
            moved = moved.apply_single_qubit(q, &random_unitary(&mut rng))?;
        }
        for (x, y) in measure_vector(&psi)?.iter().zip(measure_vector(&moved)?) {
            lu = lu.max((x - y).abs());
        }
    }
    t.require(lu <= 1e-9, || format!("local-unitary drift {lu:e}"));

    let rho = rho_ghz_w(0.7)?;
    let first = roof_minimize(&rho, &PureMeasure::ThreeTangle, config)?;
    let second = roof_minimize(&rho, &PureMeasure::ThreeTangle, config)?;
    t.require(first.value.to_bits() == second.value.to_bits(), || {
        format!("roof runs differ: {} vs {}", first.value, second.value)
    });
    t.require(first.value <= first.spectral_value, || "roof above spectral average".into());

    // the ABD mixture below alpha0 splits into zero-tangle members
    let mut convex: f64 = 0.0;
    for p in [0.2, 0.5, 0.8] {
        let a0 = alpha0(p);
        let (_, psi2) = abd_components(p)?;
        for alpha in [0.1, 0.3, 0.5] {
            let x = alpha / a0;
            let mut parts: Vec<(f64, StateVector)> = (0..3)
                .map(|k| Ok((x / 3.0, phi_abd(a0, p, 2.0 * PI * k as f64 / 3.0)?)))
                .collect::<Result<_>>()?;
            parts.push((1.0 - x, psi2.clone()));
            let ens = Ensemble::new(parts)?;
            let dev = ens.density_matrix().max_abs_diff(&rho_abd_family(alpha, p)?);
            t.require(dev <= 1e-9, || format!("ABD mixture off by {dev:e} at ({alpha}, {p})"));
            convex = convex.max(ens.average(&PureMeasure::ThreeTangle)?);
        }
    }
    t.require(convex <= 1e-6, || format!("ABD mixture tangle {convex:e}"));

    t.note(format!(
        "Schmidt {schmidt:.1e}, CKW min {ckw_min:.1e}, hyperdet {hyper_gap:.1e}, LU {lu:.1e}"
    ));
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{ghz, w};

    #[test]
    fn hyperdeterminant_examples() {
        assert!((oracle::hyperdeterminant_tangle(&ghz(3).unwrap()) - 1.0).abs() < 1e-12);
        assert!(oracle::hyperdeterminant_tangle(&w(3).unwrap()).abs() < 1e-12);
    }

    #[test]
    fn random_unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let u = random_unitary(&mut rng);
        assert!((u * u.adjoint() - Matrix2::identity()).norm() < 1e-12);
    }

    #[test]
    fn audit_flags_three_forms() {
        let audit = closed_form_audit().unwrap();
        let flagged: Vec<&str> = audit.iter().filter(|e| e.flagged()).map(|e| e.name).collect();
        assert_eq!(flagged, EXPECTED_LEDGER);
    }

    #[test]
    fn fast_criteria_pass() {
        let cfg = RoofConfig::default();
        for k in [2, 3, 7] {
            let c = criterion(k, &cfg);
            assert_eq!(c.status, Status::Pass, "{c}");
        }
    }

    #[test]
    fn report_json_has_statuses() {
        let report = VerifyReport {
            checks: vec![Check {
                name: "x".into(),
                status: Status::Ledgered,
                printed_value: Some(1.0),
                direct_value: None,
                tolerance: 1e-6,
                detail: String::new(),
            }],
        };
        let json = report.to_json().unwrap();
        assert!(json.contains("\"ledgered\""));
        assert!(report.passed());
    }
}
