//! Parameter sweeps over the catalog families, written as CSV.

use std::io::Write;
use std::str::FromStr;

use crate::catalog::{psi4, psi6, rho_ghz_w, rho_wn_mix, smolin};
use crate::error::{Error, Result};
use crate::formulas::tau3_family;
use crate::io::fmt_f64;
use crate::measures::{concurrence, e_ms, negativity, PureMeasure};
use crate::roof::{roof_minimize, RoofConfig};
use crate::state::{DensityMatrix, QubitSubset};

/// Grid size of the single-parameter presets.
pub const DEFAULT_STEPS: usize = 101;
/// Points per axis of the `(α, p)` surface.
pub const SURFACE_STEPS: usize = 41;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// `rho_ghz_w(p)` with its purification `psi4(p)`.
    GhzW,
    /// `smolin(p)` with its purification `psi6(p)`.
    Smolin,
    /// `rho_wn_mix(n, α)`, swept over `α`.
    WnMix(usize),
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::GhzW => "ghz_w",
            Family::Smolin => "smolin",
            Family::WnMix(_) => "wn_mix",
        }
    }

    /// Columns every measure list defaults to.
    pub fn default_measures(&self) -> &'static [&'static str] {
        match self {
            Family::GhzW => &["concurrence_sq_AB", "tau3_roof_ABC", "one_tangle_roof_A", "e_ms_psi4"],
            Family::Smolin => &["concurrence_sum", "tau3_plus_tau4_roof", "negativity_avg", "e_ms_psi6"],
            Family::WnMix(_) => &["concurrence_sq_A1A2", "one_tangle_roof_A1", "negativity_A1"],
        }
    }

    /// All measure identifiers accepted for this family.
    pub fn known_measures(&self) -> &'static [&'static str] {
        match self {
            Family::GhzW => &["concurrence_sq_AB", "tau3_roof_ABC", "one_tangle_roof_A", "e_ms_psi4"],
            Family::Smolin => &[
                "concurrence_sq_AB",
                "concurrence_sum",
                "tau3_plus_tau4_roof",
                "negativity_avg",
                "e_ms_psi6",
            ],
            Family::WnMix(_) => &["concurrence_sq_A1A2", "one_tangle_roof_A1", "negativity_A1"],
        }
    }

    fn state(&self, x: f64) -> Result<DensityMatrix> {
        match *self {
            Family::GhzW => rho_ghz_w(x),
            Family::Smolin => smolin(x),
            Family::WnMix(n) => rho_wn_mix(n, x),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    /// `wn_mix` parses with `n = 3`; use [`Family::WnMix`] directly for others.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ghz_w" => Ok(Family::GhzW),
            "smolin" => Ok(Family::Smolin),
            "wn_mix" => Ok(Family::WnMix(3)),
            other => Err(Error::Config(format!(
                "unknown family {other:?} (expected ghz_w, smolin or wn_mix)"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepSpec {
    pub family: Family,
    pub start: f64,
    pub stop: f64,
    pub steps: usize,
    pub measures: Vec<String>,
    pub roof_config: RoofConfig,
}

impl SweepSpec {
    /// `[0, 1]` on [`DEFAULT_STEPS`] points with the family's default columns.
    pub fn preset(family: Family) -> Self {
        Self {
            family,
            start: 0.0,
            stop: 1.0,
            steps: DEFAULT_STEPS,
            measures: family.default_measures().iter().map(|m| m.to_string()).collect(),
            roof_config: RoofConfig::default(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.steps < 2 {
            return Err(Error::Config(format!("steps must be at least 2, got {}", self.steps)));
        }
        if !(0.0 <= self.start && self.start < self.stop && self.stop <= 1.0) {
            return Err(Error::Config(format!(
                "need 0 <= start < stop <= 1, got [{}, {}]",
                self.start, self.stop
            )));
        }
        if self.measures.is_empty() {
            return Err(Error::Config("no measures requested".into()));
        }
        if let Family::WnMix(n) = self.family {
            if !(2..=9).contains(&n) {
                return Err(Error::Config(format!("wn_mix needs 2 <= n <= 9, got {n}")));
            }
        }
        let known = self.family.known_measures();
        for m in &self.measures {
            if !known.contains(&m.as_str()) {
                return Err(Error::Config(format!(
                    "unknown measure {m:?} for {} (known: {})",
                    self.family.name(),
                    known.join(", ")
                )));
            }
        }
        self.roof_config.validate()
    }

    pub fn grid(&self) -> Vec<f64> {
        linspace(self.start, self.stop, self.steps)
    }
}

/// One CSV row: the parameter and one value per requested measure.
#[derive(Clone, Debug, PartialEq)]
pub struct SweepRecord {
    pub param: f64,
    pub values: Vec<f64>,
}

pub(crate) fn linspace(start: f64, stop: f64, steps: usize) -> Vec<f64> {
    let last = steps - 1;
    (0..steps)
        .map(|i| {
            if i == last {
                stop
            } else {
                start + (stop - start) * i as f64 / last as f64
            }
        })
        .collect()
}

pub fn run_sweep(spec: &SweepSpec) -> Result<Vec<SweepRecord>> {
    spec.validate()?;
    spec.grid()
        .into_iter()
        .map(|x| {
            let rho = spec.family.state(x)?;
            let values = spec
                .measures
                .iter()
                .map(|m| evaluate(spec, m, x, &rho))
                .collect::<Result<_>>()?;
            Ok(SweepRecord { param: x, values })
        })
        .collect()
}

fn concurrence_sq(rho: &DensityMatrix, i: usize, j: usize) -> Result<f64> {
    Ok(concurrence(&rho.partial_trace(&QubitSubset::new(vec![i, j])?)?)?.powi(2))
}

fn evaluate(spec: &SweepSpec, measure: &str, x: f64, rho: &DensityMatrix) -> Result<f64> {
    let roof = |rho: &DensityMatrix, m: PureMeasure| -> Result<f64> {
        Ok(roof_minimize(rho, &m, &spec.roof_config)?.value)
    };
    let a = QubitSubset::single(0);
    match measure {
        "concurrence_sq_AB" | "concurrence_sq_A1A2" => concurrence_sq(rho, 0, 1),
        "tau3_roof_ABC" => roof(rho, PureMeasure::ThreeTangle),
        "one_tangle_roof_A" | "one_tangle_roof_A1" => roof(rho, PureMeasure::OneTangle(a)),
        "e_ms_psi4" => e_ms(&psi4(x)?),
        "concurrence_sum" => (1..rho.n_qubits()).map(|j| concurrence_sq(rho, 0, j)).sum(),
        "tau3_plus_tau4_roof" => roof(rho, PureMeasure::Ems),
        "negativity_avg" => {
            let n = rho.n_qubits();
            let total: f64 = (0..n)
                .map(|k| negativity(rho, &QubitSubset::single(k)))
                .sum::<Result<f64>>()?;
            Ok(total / n as f64)
        }
        "negativity_A1" => negativity(rho, &a),
        "e_ms_psi6" => e_ms(&psi6(x)?),
        other => Err(Error::Config(format!("unknown measure {other:?}"))),
    }
}

pub fn write_sweep<W: Write>(spec: &SweepSpec, records: &[SweepRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["param".to_string()];
    header.extend(spec.measures.iter().cloned());
    w.write_record(&header)?;
    for r in records {
        let mut row = vec![fmt_f64(r.param)];
        row.extend(r.values.iter().map(|&v| fmt_f64(v)));
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

/// `(α, p, τ₃)` rows of [`tau3_family`] at `φ = 0`, `α` varying slowest.
pub fn tau3_surface(alpha_steps: usize, p_steps: usize) -> Result<Vec<[f64; 3]>> {
    if alpha_steps < 2 || p_steps < 2 {
        return Err(Error::Config("surface needs at least 2 points per axis".into()));
    }
    let ps = linspace(0.0, 1.0, p_steps);
    Ok(linspace(0.0, 1.0, alpha_steps)
        .into_iter()
        .flat_map(|a| ps.iter().map(move |&p| [a, p, tau3_family(a, p, 0.0)]))
        .collect())
}

pub fn write_surface<W: Write>(rows: &[[f64; 3]], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["alpha", "p", "tau3"])?;
    for r in rows {
        w.write_record(r.iter().map(|&v| fmt_f64(v)))?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formulas::{alpha0, c_ab_sq_ghzw, c_ab_sq_smolin, e_ms_psi4_branch_ii, p0};

    fn small(family: Family, measures: &[&str], steps: usize) -> SweepSpec {
        SweepSpec {
            steps,
            measures: measures.iter().map(|m| m.to_string()).collect(),
            ..SweepSpec::preset(family)
        }
    }

    #[test]
    fn grid_hits_both_ends() {
        let g = linspace(0.0, 1.0, 101);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[100], 1.0);
        assert_eq!(g[50], 0.5);
    }

    #[test]
    fn rejects_bad_specs() {
        let base = SweepSpec::preset(Family::GhzW);
        assert!(SweepSpec { steps: 1, ..base.clone() }.validate().is_err());
        assert!(SweepSpec { start: 0.6, stop: 0.5, ..base.clone() }.validate().is_err());
        assert!(SweepSpec { stop: 1.5, ..base.clone() }.validate().is_err());
        assert!(small(Family::GhzW, &["e_ms_psi6"], 3).validate().is_err());
        assert!(small(Family::WnMix(12), &["negativity_A1"], 3).validate().is_err());
        assert!("ghz".parse::<Family>().is_err());
    }

    #[test]
    fn ghz_w_closed_form_columns() {
        let spec = small(Family::GhzW, &["concurrence_sq_AB", "e_ms_psi4"], 101);
        let rows = run_sweep(&spec).unwrap();
        for r in &rows {
            assert!((r.values[0] - c_ab_sq_ghzw(r.param)).abs() < 1e-8, "p = {}", r.param);
            if r.param > p0() {
                assert!((r.values[1] - e_ms_psi4_branch_ii(r.param)).abs() < 1e-8);
            }
        }
        let last = rows.last().unwrap();
        assert_eq!(last.param, 1.0);
        assert_eq!(last.values[0], 0.0);
        assert!((last.values[1] - 0.75).abs() < 1e-12);
    }

    #[test]
    fn smolin_columns() {
        let spec = small(
            Family::Smolin,
            &["concurrence_sq_AB", "concurrence_sum", "negativity_avg"],
            21,
        );
        for r in run_sweep(&spec).unwrap() {
            let rho = smolin(r.param).unwrap();
            assert!((r.values[0] - c_ab_sq_smolin(r.param)).abs() < 1e-8, "p = {}", r.param);
            let cuts: Vec<f64> = (0..4)
                .map(|k| negativity(&rho, &QubitSubset::single(k)).unwrap())
                .collect();
            for c in &cuts {
                assert!((c - cuts[0]).abs() < 1e-10);
            }
            assert!((r.values[2] - cuts.iter().sum::<f64>() / 4.0).abs() < 1e-12);
        }
    }

    #[test]
    fn csv_is_deterministic() {
        let spec = small(Family::WnMix(3), &["concurrence_sq_A1A2", "one_tangle_roof_A1"], 5);
        let render = || {
            let mut buf = Vec::new();
            write_sweep(&spec, &run_sweep(&spec).unwrap(), &mut buf).unwrap();
            buf
        };
        let first = render();
        assert_eq!(first, render());
        let text = String::from_utf8(first).unwrap();
        assert!(text.starts_with("param,concurrence_sq_A1A2,one_tangle_roof_A1\n"));
        assert_eq!(text.lines().count(), 6);
    }

    #[test]
    fn surface_shape_and_zero() {
        let rows = tau3_surface(SURFACE_STEPS, SURFACE_STEPS).unwrap();
        assert_eq!(rows.len(), 41 * 41);
        assert_eq!(rows[1][0], 0.0);
        assert_eq!(rows[41][0], 0.025);
        assert!(tau3_family(alpha0(0.5), 0.5, 0.0) <= 1e-9);
    }
}
