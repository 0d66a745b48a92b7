//! Dense pure and mixed multiqubit states.
//!
//! Basis index convention: qubit 0 is the most significant bit, so on `n`
//! qubits the bit belonging to qubit `k` of index `i` is `(i >> (n - 1 - k)) & 1`.
//! Every module in the crate relies on this ordering.

use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;

/// Largest register the dense kernel is meant for.
pub const MAX_QUBITS: usize = 12;

const NORM_TOL: f64 = 1e-10;
const HERMITIAN_TOL: f64 = 1e-10;
const PSD_TOL: f64 = 1e-10;
/// Eigenvalues at or below this are treated as zero when counting rank.
pub const RANK_TOL: f64 = 1e-10;

#[inline]
pub(crate) fn bit(index: usize, n: usize, qubit: usize) -> usize {
    (index >> (n - 1 - qubit)) & 1
}

/// Strictly increasing list of qubit positions.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QubitSubset {
    indices: Vec<usize>,
}

impl QubitSubset {
    pub fn new(indices: impl Into<Vec<usize>>) -> Result<Self> {
        let indices = indices.into();
        if indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Subset(format!(
                "{indices:?} is not strictly increasing"
            )));
        }
        Ok(Self { indices })
    }

    pub fn single(qubit: usize) -> Self {
        Self {
            indices: vec![qubit],
        }
    }

    pub fn range(range: std::ops::Range<usize>) -> Self {
        Self {
            indices: range.collect(),
        }
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains(&self, qubit: usize) -> bool {
        self.indices.binary_search(&qubit).is_ok()
    }

    /// Checks every index against a register of `n_qubits`.
    pub fn validate(&self, n_qubits: usize) -> Result<()> {
        match self.indices.last() {
            Some(&last) if last >= n_qubits => Err(Error::Subset(format!(
                "index {last} out of range for {n_qubits} qubits"
            ))),
            _ => Ok(()),
        }
    }

    pub fn complement(&self, n_qubits: usize) -> Self {
        Self {
            indices: (0..n_qubits).filter(|q| !self.contains(*q)).collect(),
        }
    }
}

impl std::fmt::Display for QubitSubset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.indices.iter().map(|q| q.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Splits full basis indices into (kept, traced) sub-indices.
struct IndexSplit {
    kept: Vec<usize>,
    rest: Vec<usize>,
    kept_dim: usize,
    rest_dim: usize,
}

impl IndexSplit {
    fn new(n: usize, keep: &QubitSubset) -> Self {
        let rest_q = keep.complement(n);
        let dim = 1usize << n;
        let mut kept = Vec::with_capacity(dim);
        let mut rest = Vec::with_capacity(dim);
        for i in 0..dim {
            kept.push(
                keep.indices()
                    .iter()
                    .fold(0, |acc, &q| (acc << 1) | bit(i, n, q)),
            );
            rest.push(
                rest_q
                    .indices()
                    .iter()
                    .fold(0, |acc, &q| (acc << 1) | bit(i, n, q)),
            );
        }
        Self {
            kept,
            rest,
            kept_dim: 1 << keep.len(),
            rest_dim: 1 << rest_q.len(),
        }
    }
}

/// Normalized amplitude vector over `2^n` basis states.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amplitudes: Vec<C64>,
}

impl StateVector {
    pub fn new(n_qubits: usize, amplitudes: Vec<C64>) -> Result<Self> {
        check_len(n_qubits, amplitudes.len())?;
        let norm_sq: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sq - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized(norm_sq));
        }
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    /// Rescales to unit norm; fails on the zero vector.
    pub fn from_unnormalized(n_qubits: usize, mut amplitudes: Vec<C64>) -> Result<Self> {
        check_len(n_qubits, amplitudes.len())?;
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if norm < 1e-300 {
            return Err(Error::NotNormalized(0.0));
        }
        for a in &mut amplitudes {
            *a /= norm;
        }
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    pub fn basis(n_qubits: usize, index: usize) -> Result<Self> {
        let dim = 1usize << n_qubits;
        if index >= dim {
            return Err(Error::Parameter {
                name: "index",
                value: index as f64,
                range: "[0, 2^n)",
            });
        }
        let mut amplitudes = vec![C64::new(0.0, 0.0); dim];
        amplitudes[index] = C64::new(1.0, 0.0);
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amplitudes
    }

    /// `⟨self|other⟩`
    pub fn inner(&self, other: &StateVector) -> C64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn to_density(&self) -> DensityMatrix {
        let d = self.dim();
        let matrix = CMatrix::from_fn(d, d, |i, j| self.amplitudes[i] * self.amplitudes[j].conj());
        DensityMatrix {
            n_qubits: self.n_qubits,
            matrix,
        }
    }

    /// `self ⊗ other`, with this register's qubits first.
    pub fn tensor(&self, other: &StateVector) -> StateVector {
        let mut amplitudes = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amplitudes {
            for b in &other.amplitudes {
                amplitudes.push(a * b);
            }
        }
        StateVector {
            n_qubits: self.n_qubits + other.n_qubits,
            amplitudes,
        }
    }

    pub fn partial_trace(&self, keep: &QubitSubset) -> Result<DensityMatrix> {
        check_keep(keep, self.n_qubits)?;
        let split = IndexSplit::new(self.n_qubits, keep);
        // psi reshaped as kept x rest; rho = M M^dagger
        let mut m = CMatrix::zeros(split.kept_dim, split.rest_dim);
        for (i, a) in self.amplitudes.iter().enumerate() {
            m[(split.kept[i], split.rest[i])] = *a;
        }
        let matrix = &m * m.adjoint();
        Ok(DensityMatrix {
            n_qubits: keep.len(),
            matrix,
        })
    }

    /// Applies a 2x2 unitary to one qubit.
    pub fn apply_single_qubit(&self, qubit: usize, u: &Matrix2<C64>) -> Result<StateVector> {
        QubitSubset::single(qubit).validate(self.n_qubits)?;
        let n = self.n_qubits;
        let stride = 1usize << (n - 1 - qubit);
        let mut out = self.amplitudes.clone();
        for i in 0..self.dim() {
            if i & stride == 0 {
                let a0 = self.amplitudes[i];
                let a1 = self.amplitudes[i | stride];
                out[i] = u[(0, 0)] * a0 + u[(0, 1)] * a1;
                out[i | stride] = u[(1, 0)] * a0 + u[(1, 1)] * a1;
            }
        }
        Ok(StateVector {
            n_qubits: n,
            amplitudes: out,
        })
    }

    /// Reorders qubits: qubit `q` of the result is qubit `perm[q]` of `self`.
    pub fn permute_qubits(&self, perm: &[usize]) -> Result<StateVector> {
        let map = permutation_map(self.n_qubits, perm)?;
        let mut amplitudes = vec![C64::new(0.0, 0.0); self.dim()];
        for (new, &old) in map.iter().enumerate() {
            amplitudes[new] = self.amplitudes[old];
        }
        Ok(StateVector {
            n_qubits: self.n_qubits,
            amplitudes,
        })
    }
}

/// Hermitian, positive-semidefinite, unit-trace matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    n_qubits: usize,
    matrix: CMatrix,
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(n_qubits: usize, matrix: CMatrix) -> Result<Self> {
        let dim = 1usize << n_qubits;
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return Err(Error::Dimension {
                n_qubits,
                expected: dim,
                actual: matrix.nrows().max(matrix.ncols()),
            });
        }
        check_hermitian(&matrix)?;
        let trace = matrix.trace().re;
        if (trace - 1.0).abs() > NORM_TOL {
            return Err(Error::BadTrace(trace));
        }
        let rho = Self { n_qubits, matrix };
        rho.spectrum()?;
        Ok(rho)
    }

    /// Convex combination of pure states; weights must be nonnegative and sum to one.
    pub fn mixture(components: &[(f64, &StateVector)]) -> Result<Self> {
        let first = components
            .first()
            .ok_or_else(|| Error::Unsupported("empty mixture".into()))?;
        let n = first.1.n_qubits();
        let dim = first.1.dim();
        let mut matrix = CMatrix::zeros(dim, dim);
        let mut total = 0.0;
        for (w, psi) in components {
            if psi.n_qubits() != n {
                return Err(Error::Dimension {
                    n_qubits: n,
                    expected: dim,
                    actual: psi.dim(),
                });
            }
            if *w < 0.0 {
                return Err(Error::Parameter {
                    name: "weight",
                    value: *w,
                    range: "[0, 1]",
                });
            }
            total += w;
            let a = psi.amplitudes();
            for i in 0..dim {
                for j in 0..dim {
                    matrix[(i, j)] += a[i] * a[j].conj() * *w;
                }
            }
        }
        if (total - 1.0).abs() > NORM_TOL {
            return Err(Error::BadTrace(total));
        }
        Ok(Self {
            n_qubits: n,
            matrix,
        })
    }

    pub fn maximally_mixed(n_qubits: usize) -> Self {
        let dim = 1usize << n_qubits;
        let matrix = CMatrix::identity(dim, dim) * C64::new(1.0 / dim as f64, 0.0);
        Self { n_qubits, matrix }
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        DensityMatrix {
            n_qubits: self.n_qubits + other.n_qubits,
            matrix: self.matrix.kronecker(&other.matrix),
        }
    }

    pub fn partial_trace(&self, keep: &QubitSubset) -> Result<DensityMatrix> {
        check_keep(keep, self.n_qubits)?;
        let split = IndexSplit::new(self.n_qubits, keep);
        let dim = self.dim();
        let mut out = CMatrix::zeros(split.kept_dim, split.kept_dim);
        for i in 0..dim {
            for j in 0..dim {
                if split.rest[i] == split.rest[j] {
                    out[(split.kept[i], split.kept[j])] += self.matrix[(i, j)];
                }
            }
        }
        Ok(DensityMatrix {
            n_qubits: keep.len(),
            matrix: out,
        })
    }

    /// Descending spectrum. Eigenvalues in `[-1e-10, 0)` are clamped to zero;
    /// anything more negative is rejected.
    pub fn spectrum(&self) -> Result<Spectrum> {
        let spec = Spectrum::of_hermitian(&self.matrix);
        if let Some(&min) = spec.eigenvalues.last() {
            if min < -PSD_TOL {
                return Err(Error::NotPositive(min));
            }
        }
        let mut spec = spec;
        for l in &mut spec.eigenvalues {
            if *l < 0.0 {
                *l = 0.0;
            }
        }
        Ok(spec)
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.spectrum()?.rank())
    }

    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }

    /// Largest elementwise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &DensityMatrix) -> f64 {
        max_abs_diff(&self.matrix, &other.matrix)
    }

    /// Qubit `q` of the result is qubit `perm[q]` of `self`.
    pub fn permute_qubits(&self, perm: &[usize]) -> Result<DensityMatrix> {
        let map = permutation_map(self.n_qubits, perm)?;
        let dim = self.dim();
        let matrix = CMatrix::from_fn(dim, dim, |i, j| self.matrix[(map[i], map[j])]);
        Ok(DensityMatrix {
            n_qubits: self.n_qubits,
            matrix,
        })
    }
}

/// Either kind of state, for callers that pick the kind at run time.
#[derive(Clone, Debug, PartialEq)]
pub enum QuantumState {
    Pure(StateVector),
    Mixed(DensityMatrix),
}

impl QuantumState {
    pub fn n_qubits(&self) -> usize {
        match self {
            QuantumState::Pure(s) => s.n_qubits(),
            QuantumState::Mixed(r) => r.n_qubits(),
        }
    }

    pub fn to_density(&self) -> DensityMatrix {
        match self {
            QuantumState::Pure(s) => s.to_density(),
            QuantumState::Mixed(r) => r.clone(),
        }
    }
}

/// Tensor product of two states of the same kind.
pub fn tensor_product(a: &QuantumState, b: &QuantumState) -> Result<QuantumState> {
    match (a, b) {
        (QuantumState::Pure(x), QuantumState::Pure(y)) => Ok(QuantumState::Pure(x.tensor(y))),
        (QuantumState::Mixed(x), QuantumState::Mixed(y)) => Ok(QuantumState::Mixed(x.tensor(y))),
        _ => Err(Error::KindMismatch),
    }
}

pub fn partial_trace(state: &QuantumState, keep: &QubitSubset) -> Result<DensityMatrix> {
    match state {
        QuantumState::Pure(s) => s.partial_trace(keep),
        QuantumState::Mixed(r) => r.partial_trace(keep),
    }
}

/// Transposes the factors belonging to `subset`. The result is Hermitian but
/// in general not positive.
pub fn partial_transpose(rho: &DensityMatrix, subset: &QubitSubset) -> Result<CMatrix> {
    subset.validate(rho.n_qubits())?;
    let n = rho.n_qubits();
    let mask = subset
        .indices()
        .iter()
        .fold(0usize, |acc, &q| acc | (1 << (n - 1 - q)));
    let dim = rho.dim();
    let m = rho.matrix();
    Ok(CMatrix::from_fn(dim, dim, |i, j| {
        let src_i = (i & !mask) | (j & mask);
        let src_j = (j & !mask) | (i & mask);
        m[(src_i, src_j)]
    }))
}

/// Sum of absolute eigenvalues of a Hermitian matrix.
pub fn trace_norm(m: &CMatrix) -> Result<f64> {
    check_hermitian(m)?;
    let spec = Spectrum::of_hermitian(m);
    Ok(spec.eigenvalues.iter().map(|l| l.abs()).sum())
}

/// Minimal purification with the environment appended after the system.
///
/// Eigenvectors are taken in descending eigenvalue order and matched to
/// environment basis states `|0⟩, |1⟩, ...`; the global phase makes the
/// largest-magnitude amplitude real and positive. A pure input gets one
/// environment qubit left in `|0⟩`.
pub fn purify(rho: &DensityMatrix) -> Result<StateVector> {
    let spec = rho.spectrum()?;
    let rank = spec.rank().max(1);
    let env_qubits = (usize::BITS - (rank - 1).leading_zeros()).max(1) as usize;
    let env_dim = 1usize << env_qubits;
    let dim = rho.dim();
    let mut amplitudes = vec![C64::new(0.0, 0.0); dim * env_dim];
    for j in 0..rank {
        let w = spec.eigenvalues[j].sqrt();
        for s in 0..dim {
            amplitudes[s * env_dim + j] = spec.eigenvectors[(s, j)] * w;
        }
    }
    fix_global_phase(&mut amplitudes);
    StateVector::from_unnormalized(rho.n_qubits() + env_qubits, amplitudes)
}

/// Descending eigen-decomposition of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors as columns, in the order of `eigenvalues`.
    pub eigenvectors: CMatrix,
}

impl Spectrum {
    /// Each eigenvector's phase is fixed by making its largest-magnitude
    /// component real positive.
    pub fn of_hermitian(m: &CMatrix) -> Self {
        let eig = m.clone().symmetric_eigen();
        let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
        order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
        let eigenvalues = order.iter().map(|&k| eig.eigenvalues[k]).collect();
        let dim = m.nrows();
        let mut eigenvectors = CMatrix::zeros(dim, order.len());
        for (col, &k) in order.iter().enumerate() {
            let mut v: Vec<C64> = eig.eigenvectors.column(k).iter().copied().collect();
            fix_global_phase(&mut v);
            for (row, x) in v.into_iter().enumerate() {
                eigenvectors[(row, col)] = x;
            }
        }
        Self {
            eigenvalues,
            eigenvectors,
        }
    }

    pub fn rank(&self) -> usize {
        self.eigenvalues.iter().filter(|&&l| l > RANK_TOL).count()
    }

    pub fn reconstruct(&self) -> CMatrix {
        let d = CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
            self.eigenvalues.len(),
            self.eigenvalues.iter().map(|&l| C64::new(l, 0.0)),
        ));
        &self.eigenvectors * d * self.eigenvectors.adjoint()
    }
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Rotates the vector so that its first largest-magnitude entry is real positive.
pub(crate) fn fix_global_phase(v: &mut [C64]) {
    let max = v.iter().map(|a| a.norm()).fold(0.0, f64::max);
    if max == 0.0 {
        return;
    }
    let pivot = v
        .iter()
        .find(|a| a.norm() >= max * (1.0 - 1e-9))
        .copied()
        .unwrap();
    let phase = pivot.conj() / pivot.norm();
    for a in v.iter_mut() {
        *a *= phase;
    }
}

fn check_len(n_qubits: usize, len: usize) -> Result<()> {
    if n_qubits == 0 || n_qubits > MAX_QUBITS || len != 1usize << n_qubits {
        return Err(Error::Dimension {
            n_qubits,
            expected: 1usize << n_qubits.min(MAX_QUBITS),
            actual: len,
        });
    }
    Ok(())
}

fn check_keep(keep: &QubitSubset, n: usize) -> Result<()> {
    if keep.is_empty() {
        return Err(Error::Subset(
            "cannot trace out every qubit; keep set is empty".into(),
        ));
    }
    keep.validate(n)
}

pub(crate) fn check_hermitian(m: &CMatrix) -> Result<()> {
    if m.nrows() != m.ncols() {
        return Err(Error::NotHermitian(f64::INFINITY));
    }
    let dev = max_abs_diff(m, &m.adjoint());
    if dev > HERMITIAN_TOL {
        return Err(Error::NotHermitian(dev));
    }
    Ok(())
}

/// `map[new_index] = old_index` for a qubit permutation.
fn permutation_map(n: usize, perm: &[usize]) -> Result<Vec<usize>> {
    let mut seen = vec![false; n];
    if perm.len() != n || perm.iter().any(|&p| p >= n || std::mem::replace(&mut seen[p], true)) {
        return Err(Error::Subset(format!("{perm:?} is not a permutation of {n} qubits")));
    }
    let dim = 1usize << n;
    Ok((0..dim)
        .map(|new| {
            (0..n).fold(0usize, |acc, q| {
                acc | (bit(new, n, q) << (n - 1 - perm[q]))
            })
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn phi_plus() -> StateVector {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        StateVector::new(2, vec![c(h), c(0.0), c(0.0), c(h)]).unwrap()
    }

    #[test]
    fn basis_tensor_orders_first_operand_high() {
        let s = StateVector::basis(1, 0).unwrap().tensor(&StateVector::basis(1, 1).unwrap());
        assert_eq!(s.amplitudes()[1], c(1.0));
        assert_eq!(s.n_qubits(), 2);
    }

    #[test]
    fn bell_tensor_bell() {
        let s = phi_plus().tensor(&phi_plus());
        for (i, a) in s.amplitudes().iter().enumerate() {
            let expect = if [0b0000, 0b0011, 0b1100, 0b1111].contains(&i) { 0.5 } else { 0.0 };
            assert!((a - c(expect)).norm() < 1e-15);
        }
    }

    #[test]
    fn mixed_tensor_of_identities() {
        let r = DensityMatrix::maximally_mixed(1).tensor(&DensityMatrix::maximally_mixed(1));
        assert!(r.max_abs_diff(&DensityMatrix::maximally_mixed(2)) < 1e-15);
    }

    #[test]
    fn kind_mismatch() {
        let a = QuantumState::Pure(phi_plus());
        let b = QuantumState::Mixed(DensityMatrix::maximally_mixed(1));
        assert!(matches!(tensor_product(&a, &b), Err(Error::KindMismatch)));
    }

    #[test]
    fn trace_of_bell_pair_is_maximally_mixed() {
        let r = phi_plus().partial_trace(&QubitSubset::single(0)).unwrap();
        assert!(r.max_abs_diff(&DensityMatrix::maximally_mixed(1)) < 1e-15);
    }

    #[test]
    fn empty_keep_is_rejected() {
        let keep = QubitSubset::new(vec![]).unwrap();
        assert!(phi_plus().partial_trace(&keep).is_err());
        assert!(phi_plus().to_density().partial_trace(&keep).is_err());
    }

    #[test]
    fn subset_must_be_increasing_and_in_range() {
        assert!(QubitSubset::new(vec![1, 0]).is_err());
        assert!(QubitSubset::new(vec![0, 0]).is_err());
        assert!(phi_plus().partial_trace(&QubitSubset::single(2)).is_err());
    }

    #[test]
    fn partial_transpose_of_bell_projector() {
        let pt = partial_transpose(&phi_plus().to_density(), &QubitSubset::single(0)).unwrap();
        let spec = Spectrum::of_hermitian(&pt);
        assert!((spec.eigenvalues[3] + 0.5).abs() < 1e-12);
        assert!((trace_norm(&pt).unwrap() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn trace_norm_rejects_non_hermitian() {
        let m = CMatrix::from_row_slice(2, 2, &[c(0.0), c(1.0), c(0.0), c(0.0)]);
        assert!(matches!(trace_norm(&m), Err(Error::NotHermitian(_))));
        let d = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(0.5), c(-0.5)]));
        assert!((trace_norm(&d).unwrap() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn density_validation() {
        let bad_trace = CMatrix::identity(2, 2);
        assert!(matches!(DensityMatrix::new(1, bad_trace), Err(Error::BadTrace(_))));
        let negative = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(1.5), c(-0.5)]));
        assert!(matches!(DensityMatrix::new(1, negative), Err(Error::NotPositive(_))));
        let tiny = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(1.0 + 5e-11), c(-5e-11)]));
        let rho = DensityMatrix::new(1, tiny).unwrap();
        assert_eq!(rho.spectrum().unwrap().eigenvalues[1], 0.0);
    }

    #[test]
    fn purify_pure_appends_env_zero() {
        let psi = phi_plus();
        let p = purify(&psi.to_density()).unwrap();
        assert_eq!(p.n_qubits(), 3);
        let expect = psi.tensor(&StateVector::basis(1, 0).unwrap());
        assert!((p.inner(&expect).norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn purify_maximally_mixed_qubit() {
        let p = purify(&DensityMatrix::maximally_mixed(1)).unwrap();
        assert_eq!(p.n_qubits(), 2);
        let r = p.partial_trace(&QubitSubset::single(1)).unwrap();
        assert!(r.max_abs_diff(&DensityMatrix::maximally_mixed(1)) < 1e-12);
    }

    #[test]
    fn permutation_swaps_qubits() {
        let s = StateVector::basis(3, 0b100).unwrap();
        let t = s.permute_qubits(&[2, 1, 0]).unwrap();
        assert_eq!(t.amplitudes()[0b001], c(1.0));
        assert!(s.permute_qubits(&[0, 0, 1]).is_err());
    }
}
