//! Convex-roof extension of pure-state measures.
//!
//! Every `m`-member decomposition of a rank-`r` state is reached from its
//! eigen-ensemble by an `m×r` isometry. The minimizer draws random
//! isometries and refines each one by pairwise unitary mixing of ensemble
//! members, accepting a move only when the ensemble average drops. Values
//! returned are therefore upper bounds on the true roof.

use std::f64::consts::{FRAC_PI_2, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::PureMeasure;
use crate::state::{
    check_hermitian, max_abs_diff, CMatrix, DensityMatrix, QubitSubset, Spectrum, StateVector,
    C64, RANK_TOL,
};

/// Default cap on the number of ensemble members.
pub const ENSEMBLE_CAP: usize = 8;
/// Once an ensemble average reaches this the search stops; every supported
/// measure is nonnegative.
pub const ZERO_FLOOR: f64 = 1e-10;

const INITIAL_STEP: f64 = 0.4;
const MIN_STEP: f64 = 1e-10;
const STALL_WINDOW: usize = 25;
const MEMBER_TOL: f64 = 1e-15;

/// Probability-weighted pure states.
#[derive(Clone, Debug)]
pub struct Ensemble {
    members: Vec<(f64, StateVector)>,
}

impl Ensemble {
    /// Probabilities must be positive and sum to one within 1e-10.
    pub fn new(members: Vec<(f64, StateVector)>) -> Result<Self> {
        let n = members
            .first()
            .map(|m| m.1.n_qubits())
            .ok_or_else(|| Error::Unsupported("empty ensemble".into()))?;
        if members.iter().any(|(p, s)| *p <= 0.0 || s.n_qubits() != n) {
            return Err(Error::Unsupported(
                "ensemble members need positive weight and a common register".into(),
            ));
        }
        let total: f64 = members.iter().map(|m| m.0).sum();
        if (total - 1.0).abs() > 1e-10 {
            return Err(Error::BadTrace(total));
        }
        Ok(Self { members })
    }

    /// Builds from unnormalized vectors whose squared norms are the weights;
    /// vectors with negligible weight are dropped.
    fn from_unnormalized(n_qubits: usize, vectors: &[Vec<C64>]) -> Result<Self> {
        let mut members = Vec::new();
        for v in vectors {
            let p: f64 = v.iter().map(|a| a.norm_sqr()).sum();
            if p > MEMBER_TOL {
                members.push((p, StateVector::from_unnormalized(n_qubits, v.clone())?));
            }
        }
        let total: f64 = members.iter().map(|m| m.0).sum();
        for m in &mut members {
            m.0 /= total;
        }
        Self::new(members)
    }

    pub fn members(&self) -> &[(f64, StateVector)] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn n_qubits(&self) -> usize {
        self.members[0].1.n_qubits()
    }

    /// `Σ pᵢ |ψᵢ⟩⟨ψᵢ|`
    pub fn density_matrix(&self) -> DensityMatrix {
        let comps: Vec<(f64, &StateVector)> = self.members.iter().map(|(p, s)| (*p, s)).collect();
        DensityMatrix::mixture(&comps).expect("validated ensemble")
    }

    /// `Σ pᵢ E(ψᵢ)`
    pub fn average(&self, measure: &PureMeasure) -> Result<f64> {
        self.members
            .iter()
            .map(|(p, s)| Ok(p * measure.evaluate(s)?))
            .sum()
    }
}

/// Column-orthonormal `m×r` matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DecompositionIsometry {
    matrix: CMatrix,
}

impl DecompositionIsometry {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        let r = matrix.ncols();
        if matrix.nrows() < r || r == 0 {
            return Err(Error::Unsupported(format!(
                "isometry must have at least as many rows as columns, got {}x{}",
                matrix.nrows(),
                r
            )));
        }
        let gram = matrix.adjoint() * &matrix;
        let dev = max_abs_diff(&gram, &CMatrix::identity(r, r));
        if dev > 1e-10 {
            return Err(Error::Unsupported(format!(
                "columns not orthonormal (deviation {dev:e})"
            )));
        }
        Ok(Self { matrix })
    }

    /// The first `r` rows of the `m×m` identity.
    pub fn identity(m: usize, r: usize) -> Result<Self> {
        Self::new(CMatrix::identity(m, r))
    }

    /// Gram-Schmidt on a complex Gaussian `m×r` matrix.
    pub fn random<R: Rng>(m: usize, r: usize, rng: &mut R) -> Result<Self> {
        let mut q = CMatrix::from_fn(m, r, |_, _| {
            C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
        });
        for c in 0..r {
            for prev in 0..c {
                let proj: C64 = (0..m).map(|i| q[(i, prev)].conj() * q[(i, c)]).sum();
                for i in 0..m {
                    let x = q[(i, prev)];
                    q[(i, c)] -= proj * x;
                }
            }
            let norm = (0..m).map(|i| q[(i, c)].norm_sqr()).sum::<f64>().sqrt();
            for i in 0..m {
                q[(i, c)] /= norm;
            }
        }
        Self::new(q)
    }

    pub fn rows(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }
}

/// Optimizer settings; deserializes from the CLI's JSON config.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RoofConfig {
    pub restarts: usize,
    /// `None` means `min(2r, 8)`.
    pub max_ensemble_size: Option<usize>,
    pub objective_tolerance: f64,
    pub max_iterations: usize,
    pub seed: u64,
}

impl Default for RoofConfig {
    fn default() -> Self {
        Self {
            restarts: 32,
            max_ensemble_size: None,
            objective_tolerance: 1e-8,
            max_iterations: 2000,
            seed: 0,
        }
    }
}

impl RoofConfig {
    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 {
            return Err(Error::Config("restarts must be at least 1".into()));
        }
        if self.objective_tolerance.is_nan() || self.objective_tolerance < 0.0 {
            return Err(Error::Config("objective_tolerance must be nonnegative".into()));
        }
        if self.max_ensemble_size == Some(0) {
            return Err(Error::Config("max_ensemble_size must be positive".into()));
        }
        Ok(())
    }

    /// Ensemble size for a state of rank `r`.
    pub fn ensemble_size(&self, r: usize) -> Result<usize> {
        let m = self
            .max_ensemble_size
            .unwrap_or_else(|| (2 * r).min(ENSEMBLE_CAP));
        if m < r {
            return Err(Error::Unsupported(format!(
                "rank {r} exceeds ensemble size cap {m}"
            )));
        }
        Ok(m)
    }
}

/// Eigen-ensemble mapped through `v`: member `i` is `Σ_j v*_ij √λ_j |e_j⟩`.
pub fn ensemble_from_isometry(rho: &DensityMatrix, v: &DecompositionIsometry) -> Result<Ensemble> {
    let spec = rho.spectrum()?;
    let rank = spec.rank();
    if rank != v.cols() {
        return Err(Error::RankMismatch {
            rank,
            cols: v.cols(),
        });
    }
    let vectors = isometry_members(&spec, rank, v.matrix());
    Ensemble::from_unnormalized(rho.n_qubits(), &vectors)
}

fn isometry_members(spec: &Spectrum, rank: usize, v: &CMatrix) -> Vec<Vec<C64>> {
    let dim = spec.eigenvectors.nrows();
    (0..v.nrows())
        .map(|i| {
            let mut out = vec![C64::new(0.0, 0.0); dim];
            for j in 0..rank {
                let coeff = v[(i, j)].conj() * spec.eigenvalues[j].sqrt();
                for (s, o) in out.iter_mut().enumerate() {
                    *o += coeff * spec.eigenvectors[(s, j)];
                }
            }
            out
        })
        .collect()
}

/// Result of a roof search.
#[derive(Clone, Debug)]
pub struct RoofOutcome {
    /// Lowest ensemble average found.
    pub value: f64,
    pub ensemble: Ensemble,
    /// Average over the eigen-ensemble, which `value` never exceeds.
    pub spectral_value: f64,
    /// Restart that produced `value`; restart 0 starts from the eigen-ensemble.
    pub restart: usize,
}

/// Minimizes `Σ pᵢ E(ψᵢ)` over decompositions of `rho`.
///
/// Restart 0 refines the eigen-ensemble; restarts `1..` refine random
/// isometries drawn from a stream keyed by `(seed, restart)`, cycling the
/// ensemble size through `r + 1, …, m, r, r + 1, …` for a rank-`r` state and
/// size cap `m`. Ties go to the lowest restart index. The search ends early once an average of
/// [`ZERO_FLOOR`] or less is found.
pub fn roof_minimize(
    rho: &DensityMatrix,
    measure: &PureMeasure,
    config: &RoofConfig,
) -> Result<RoofOutcome> {
    config.validate()?;
    measure.check_register(rho.n_qubits())?;
    let spec = rho.spectrum()?;
    let rank = spec.rank().max(1);
    let m = config.ensemble_size(rank)?;
    let n = rho.n_qubits();

    let spectral = isometry_members(&spec, rank, &CMatrix::identity(rank, rank));
    let spectral_value = Search::new(measure, n, spectral.clone())?.total();

    let mut best: Option<(f64, Vec<Vec<C64>>, usize)> = None;
    for restart in 0..config.restarts {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        rng.set_stream(restart as u64);
        let start = if restart == 0 {
            spectral.clone()
        } else {
            let size = rank + restart % (m - rank + 1);
            let v = DecompositionIsometry::random(size, rank, &mut rng)?;
            isometry_members(&spec, rank, v.matrix())
        };
        let mut search = Search::new(measure, n, start)?;
        let value = search.refine(config, &mut rng)?;
        if best.as_ref().is_none_or(|b| value < b.0) {
            best = Some((value, search.members, restart));
        }
        if best.as_ref().is_some_and(|b| b.0 <= ZERO_FLOOR) {
            break;
        }
    }
    let (value, members, restart) = best.expect("at least one restart");
    Ok(RoofOutcome {
        value,
        ensemble: Ensemble::from_unnormalized(n, &members)?,
        spectral_value,
        restart,
    })
}

/// One local descent over unnormalized ensemble members.
struct Search<'a> {
    measure: &'a PureMeasure,
    n: usize,
    members: Vec<Vec<C64>>,
    costs: Vec<f64>,
    scratch: Vec<C64>,
}

impl<'a> Search<'a> {
    fn new(measure: &'a PureMeasure, n: usize, members: Vec<Vec<C64>>) -> Result<Self> {
        let dim = members[0].len();
        let mut search = Self {
            measure,
            n,
            costs: vec![0.0; members.len()],
            members,
            scratch: vec![C64::new(0.0, 0.0); dim],
        };
        for i in 0..search.members.len() {
            let v = std::mem::take(&mut search.members[i]);
            search.costs[i] = search.cost(&v)?;
            search.members[i] = v;
        }
        Ok(search)
    }

    fn total(&self) -> f64 {
        self.costs.iter().sum()
    }

    /// `‖v‖² E(v/‖v‖)`
    fn cost(&mut self, v: &[C64]) -> Result<f64> {
        let p: f64 = v.iter().map(|a| a.norm_sqr()).sum();
        if p <= MEMBER_TOL * MEMBER_TOL {
            return Ok(0.0);
        }
        let inv = 1.0 / p.sqrt();
        for (s, a) in self.scratch.iter_mut().zip(v) {
            *s = a * inv;
        }
        let scratch = std::mem::take(&mut self.scratch);
        let e = self.measure.evaluate_amplitudes(self.n, &scratch);
        self.scratch = scratch;
        Ok(p * e?)
    }

    /// Descends on `Σ gᵢ²` first, which is smooth where a member sits on a
    /// zero of the measure, then on the ensemble average `Σ gᵢ` itself.
    /// Never ends above the starting average, since the first phase may trade
    /// `Σ gᵢ` for `Σ gᵢ²`.
    fn refine(&mut self, config: &RoofConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
        let start = (self.members.clone(), self.costs.clone());
        let initial = self.total();
        self.descend(2.0, config, rng)?;
        if self.descend(1.0, config, rng)? > initial {
            (self.members, self.costs) = start;
        }
        Ok(self.total())
    }

    fn descend(&mut self, power: f64, config: &RoofConfig, rng: &mut ChaCha8Rng) -> Result<f64> {
        let m = self.members.len();
        let pairs = m * (m - 1) / 2;
        let mut step = INITIAL_STEP;
        let mut history = Vec::with_capacity(config.max_iterations.min(4096));
        for _ in 0..config.max_iterations {
            if self.total() <= ZERO_FLOOR || step < MIN_STEP {
                break;
            }
            let mut accepted = 0;
            for i in 0..m {
                for j in i + 1..m {
                    let offset: f64 = rng.gen::<f64>() * TAU;
                    for t in 0..4 {
                        let phase = offset + t as f64 * FRAC_PI_2;
                        if self.try_rotation(i, j, step, phase, power)? {
                            accepted += 1;
                            break;
                        }
                    }
                }
            }
            let objective = self.objective(power);
            if accepted == 0 {
                step *= 0.5;
            } else if 2 * accepted > pairs {
                step = (step * 1.5).min(FRAC_PI_2);
            }
            history.push(objective);
            let h = history.len();
            let tol = config.objective_tolerance.powf(power);
            if h > STALL_WINDOW && history[h - 1 - STALL_WINDOW] - objective < tol {
                break;
            }
        }
        Ok(self.total())
    }

    fn objective(&self, power: f64) -> f64 {
        self.costs.iter().map(|c| c.powf(power)).sum()
    }

    /// Mixes members `i` and `j` by `[[c, s e^{iφ}], [−s e^{−iφ}, c]]`; keeps
    /// the move only if their combined `cost^power` drops.
    fn try_rotation(&mut self, i: usize, j: usize, angle: f64, phase: f64, power: f64) -> Result<bool> {
        let (s, c) = angle.sin_cos();
        let e = C64::from_polar(s, phase);
        let a = &self.members[i];
        let b = &self.members[j];
        let new_a: Vec<C64> = a.iter().zip(b).map(|(x, y)| x * c + y * e).collect();
        let new_b: Vec<C64> = a.iter().zip(b).map(|(x, y)| y * c - x * e.conj()).collect();
        let ca = self.cost(&new_a)?;
        let cb = self.cost(&new_b)?;
        let before = self.costs[i].powf(power) + self.costs[j].powf(power);
        if ca.powf(power) + cb.powf(power) < before {
            self.members[i] = new_a;
            self.members[j] = new_b;
            self.costs[i] = ca;
            self.costs[j] = cb;
            Ok(true)
        } else {
            Ok(false)
        }
    }
}

/// A positive operator on the environment qubits.
#[derive(Clone, Debug)]
pub struct PovmElement {
    operator: CMatrix,
}

impl PovmElement {
    pub fn new(operator: CMatrix) -> Result<Self> {
        check_hermitian(&operator).map_err(|e| Error::Povm(e.to_string()))?;
        let spec = Spectrum::of_hermitian(&operator);
        if spec.eigenvalues.last().is_some_and(|&l| l < -1e-10) {
            return Err(Error::Povm("element is not positive semidefinite".into()));
        }
        Ok(Self { operator })
    }

    /// `weight · |v⟩⟨v|` for a unit vector `v`.
    pub fn rank_one(weight: f64, v: &[C64]) -> Result<Self> {
        let d = v.len();
        Self::new(CMatrix::from_fn(d, d, |i, j| v[i] * v[j].conj() * weight))
    }

    pub fn operator(&self) -> &CMatrix {
        &self.operator
    }
}

/// Measures `env` of a pure state and returns the induced ensemble of
/// post-measurement system states, ordered by outcome. Only rank-1 elements
/// are supported, since other outcomes leave the system mixed.
pub fn measure_env_povm(
    psi: &StateVector,
    env: &QubitSubset,
    povm: &[PovmElement],
) -> Result<Ensemble> {
    let n = psi.n_qubits();
    env.validate(n)?;
    if env.is_empty() || env.len() == n {
        return Err(Error::Subset(format!(
            "environment {env} must be a proper nonempty subset"
        )));
    }
    let env_dim = 1usize << env.len();
    if povm.is_empty() || povm.iter().any(|e| e.operator.nrows() != env_dim) {
        return Err(Error::Povm(format!(
            "elements must be {env_dim}x{env_dim} operators"
        )));
    }
    let sum = povm
        .iter()
        .fold(CMatrix::zeros(env_dim, env_dim), |acc, e| acc + &e.operator);
    let dev = max_abs_diff(&sum, &CMatrix::identity(env_dim, env_dim));
    if dev > 1e-10 {
        return Err(Error::Povm(format!("elements do not sum to identity ({dev:e})")));
    }

    let system = env.complement(n);
    let sys_dim = 1usize << system.len();
    let split: Vec<(usize, usize)> = (0..psi.dim())
        .map(|i| {
            let pick = |qs: &QubitSubset| {
                qs.indices()
                    .iter()
                    .fold(0usize, |acc, &q| (acc << 1) | ((i >> (n - 1 - q)) & 1))
            };
            (pick(&system), pick(env))
        })
        .collect();

    let mut vectors = Vec::with_capacity(povm.len());
    for element in povm {
        let spec = Spectrum::of_hermitian(&element.operator);
        if spec.rank() > 1 {
            return Err(Error::Unsupported(
                "POVM element of rank > 1 leaves a mixed conditional state".into(),
            ));
        }
        let w: Vec<C64> = (0..env_dim)
            .map(|k| spec.eigenvectors[(k, 0)] * spec.eigenvalues[0].max(0.0).sqrt())
            .collect();
        let mut v = vec![C64::new(0.0, 0.0); sys_dim];
        for (i, &(s, e)) in split.iter().enumerate() {
            v[s] += w[e].conj() * psi.amplitudes()[i];
        }
        vectors.push(v);
    }
    Ensemble::from_unnormalized(system.len(), &vectors)
}

/// Eigenvalues at or below [`RANK_TOL`] count as zero.
pub fn numerical_rank(rho: &DensityMatrix) -> Result<usize> {
    Ok(rho.spectrum()?.eigenvalues.iter().filter(|&&l| l > RANK_TOL).count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{ghz, psi4, rho_ghz_w, rho_wn_mix, w};
    use crate::measures::one_tangle;
    use std::f64::consts::{FRAC_1_SQRT_2, PI};

    fn quick() -> RoofConfig {
        RoofConfig {
            restarts: 4,
            max_iterations: 400,
            ..RoofConfig::default()
        }
    }

    #[test]
    fn identity_isometry_gives_eigen_ensemble() {
        let rho = rho_ghz_w(0.3).unwrap();
        let ens = ensemble_from_isometry(&rho, &DecompositionIsometry::identity(2, 2).unwrap()).unwrap();
        assert_eq!(ens.len(), 2);
        let probs: Vec<f64> = ens.members().iter().map(|m| m.0).collect();
        assert!((probs[0] - 0.7).abs() < 1e-12 && (probs[1] - 0.3).abs() < 1e-12);
        assert!(ens.density_matrix().max_abs_diff(&rho) < 1e-12);
    }

    #[test]
    fn hadamard_isometry_gives_phase_pair() {
        let p = 0.4;
        let rho = rho_ghz_w(p).unwrap();
        let h = FRAC_1_SQRT_2;
        let v = CMatrix::from_row_slice(2, 2, &[C64::new(h, 0.0), C64::new(h, 0.0), C64::new(h, 0.0), C64::new(-h, 0.0)]);
        let ens = ensemble_from_isometry(&rho, &DecompositionIsometry::new(v).unwrap()).unwrap();
        let (g, w3) = (ghz(3).unwrap(), w(3).unwrap());
        for (prob, s) in ens.members() {
            assert!((prob - 0.5).abs() < 1e-12);
            assert!((s.inner(&g).norm_sqr() - p).abs() < 1e-12);
            assert!((s.inner(&w3).norm_sqr() - (1.0 - p)).abs() < 1e-12);
        }
    }

    #[test]
    fn rank_mismatch_is_reported() {
        let rho = rho_ghz_w(0.3).unwrap();
        let v = DecompositionIsometry::identity(3, 3).unwrap();
        assert!(matches!(ensemble_from_isometry(&rho, &v), Err(Error::RankMismatch { rank: 2, cols: 3 })));
    }

    #[test]
    fn random_isometries_reconstruct() {
        let rho = rho_wn_mix(3, 0.25).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for m in 2..=5 {
            let v = DecompositionIsometry::random(m, 2, &mut rng).unwrap();
            let ens = ensemble_from_isometry(&rho, &v).unwrap();
            assert!(ens.density_matrix().max_abs_diff(&rho) < 1e-9);
        }
    }

    #[test]
    fn pure_state_roof_is_its_measure() {
        let g = ghz(3).unwrap();
        let out = roof_minimize(&g.to_density(), &PureMeasure::ThreeTangle, &quick()).unwrap();
        assert!((out.value - 1.0).abs() < 1e-10);
    }

    #[test]
    fn roof_never_exceeds_spectral() {
        let rho = rho_ghz_w(0.5).unwrap();
        let k = PureMeasure::OneTangle(QubitSubset::single(0));
        let out = roof_minimize(&rho, &k, &quick()).unwrap();
        assert!(out.value <= out.spectral_value);
        assert!(out.ensemble.density_matrix().max_abs_diff(&rho) < 1e-9);
        assert!((out.ensemble.average(&k).unwrap() - out.value).abs() < 1e-9);
    }

    #[test]
    fn config_errors() {
        let rho = rho_ghz_w(0.5).unwrap();
        let bad = RoofConfig { restarts: 0, ..RoofConfig::default() };
        assert!(roof_minimize(&rho, &PureMeasure::ThreeTangle, &bad).is_err());
        let small = RoofConfig { max_ensemble_size: Some(1), ..RoofConfig::default() };
        assert!(roof_minimize(&rho, &PureMeasure::ThreeTangle, &small).is_err());
        assert!(roof_minimize(&rho, &PureMeasure::Ems, &quick()).is_ok());
        let four = psi4(0.3).unwrap().to_density();
        assert!(roof_minimize(&four, &PureMeasure::ThreeTangle, &quick()).is_err());
    }

    #[test]
    fn config_json_keys() {
        let cfg: RoofConfig = serde_json::from_str(
            r#"{"restarts": 3, "max_ensemble_size": 5, "objective_tolerance": 1e-6, "max_iterations": 10, "seed": 9}"#,
        )
        .unwrap();
        assert_eq!(cfg.restarts, 3);
        assert_eq!(cfg.max_ensemble_size, Some(5));
        let partial: RoofConfig = serde_json::from_str(r#"{"seed": 4}"#).unwrap();
        assert_eq!(partial.restarts, 32);
        assert!(serde_json::from_str::<RoofConfig>(r#"{"bogus": 1}"#).is_err());
    }

    fn plus_minus() -> Vec<PovmElement> {
        let h = FRAC_1_SQRT_2;
        [1.0, -1.0]
            .iter()
            .map(|&s| PovmElement::rank_one(1.0, &[C64::new(h, 0.0), C64::new(s * h, 0.0)]).unwrap())
            .collect()
    }

    #[test]
    fn projective_env_measurement_on_psi4() {
        let p = 0.35;
        let ens = measure_env_povm(&psi4(p).unwrap(), &QubitSubset::single(3), &plus_minus()).unwrap();
        assert_eq!(ens.len(), 2);
        let (g, w3) = (ghz(3).unwrap(), w(3).unwrap());
        let signs = [1.0, -1.0];
        for ((prob, s), sign) in ens.members().iter().zip(signs) {
            assert!((prob - 0.5).abs() < 1e-12);
            let rel = s.inner(&g) / s.inner(&w3);
            assert!((rel - C64::new(sign * (p / (1.0 - p)).sqrt(), 0.0)).norm() < 1e-12);
        }
        assert!(ens.density_matrix().max_abs_diff(&rho_ghz_w(p).unwrap()) < 1e-9);
    }

    #[test]
    fn three_outcome_povm_phases() {
        let p = 0.6;
        let h = FRAC_1_SQRT_2;
        let povm: Vec<PovmElement> = (0..3)
            .map(|k| {
                let ph = C64::from_polar(1.0, -2.0 * PI * k as f64 / 3.0);
                PovmElement::rank_one(2.0 / 3.0, &[C64::new(h, 0.0), -ph * h]).unwrap()
            })
            .collect();
        let ens = measure_env_povm(&psi4(p).unwrap(), &QubitSubset::single(3), &povm).unwrap();
        let (g, w3) = (ghz(3).unwrap(), w(3).unwrap());
        for (k, (prob, s)) in ens.members().iter().enumerate() {
            assert!((prob - 1.0 / 3.0).abs() < 1e-12);
            // s ∝ √(1−p)|W⟩ − e^{i2kπ/3} √p|GHZ⟩
            let rel = g.inner(s) / w3.inner(s);
            let expect = -C64::from_polar((p / (1.0 - p)).sqrt(), 2.0 * PI * k as f64 / 3.0);
            assert!((rel - expect).norm() < 1e-12, "k = {k}");
        }
    }

    #[test]
    fn povm_validation() {
        let psi = psi4(0.5).unwrap();
        let incomplete = vec![plus_minus().remove(0)];
        assert!(measure_env_povm(&psi, &QubitSubset::single(3), &incomplete).is_err());
        let full = vec![PovmElement::new(CMatrix::identity(2, 2)).unwrap()];
        assert!(matches!(
            measure_env_povm(&psi, &QubitSubset::single(3), &full),
            Err(Error::Unsupported(_))
        ));
        let negative = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![C64::new(1.5, 0.0), C64::new(-0.5, 0.0)]));
        assert!(PovmElement::new(negative).is_err());
    }

    #[test]
    fn eigen_ensemble_average_matches_one_tangle_of_w() {
        let rho = rho_wn_mix(3, 0.25).unwrap();
        let a = QubitSubset::single(0);
        let out = roof_minimize(&rho, &PureMeasure::OneTangle(a.clone()), &quick()).unwrap();
        let expect = 0.75 * one_tangle(&w(3).unwrap(), &a).unwrap();
        assert!((out.spectral_value - expect).abs() < 1e-12);
    }
}
