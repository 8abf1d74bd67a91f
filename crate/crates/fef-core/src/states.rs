//! States of a d⊗d system: pure vectors, density matrices, Schmidt data,
//! the named one-parameter families, and seeded random generation.

use num_complex::Complex64;

use crate::error::FefError;
use crate::linalg::{self, ComplexMatrix};
use crate::rng::GaussianSource;

/// Allowed deviation of Σ|amplitude|² from 1.
pub const NORM_TOL: f64 = 1e-10;

/// Allowed deviation of tr ρ from 1.
pub const TRACE_TOL: f64 = 1e-9;

/// Eigenvalues of a density matrix may dip this far below zero before the
/// state is rejected; round-off from sums of outer products stays well above.
pub const EIGENVALUE_FLOOR: f64 = -1e-9;

/// Allowed deviation of a probability vector's sum from 1.
pub const WEIGHT_TOL: f64 = 1e-12;

/// Unit vector over the composite basis |a,k⟩ at flat index a·d + k.
#[derive(Clone, Debug)]
pub struct PureState {
    d: usize,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    pub fn new(d: usize, amplitudes: Vec<Complex64>) -> Result<Self, FefError> {
        if d < 2 {
            return Err(FefError::DimensionTooSmall(d));
        }
        if amplitudes.len() != d * d {
            return Err(FefError::AmplitudeCount { expected: d * d, found: amplitudes.len() });
        }
        if let Some(idx) = amplitudes.iter().position(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(FefError::NonFiniteAmplitude(idx));
        }
        let norm_sqr: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum();
        if (norm_sqr - 1.0).abs() > NORM_TOL {
            return Err(FefError::NotNormalized((norm_sqr - 1.0).abs()));
        }
        Ok(Self { d, amplitudes })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Amplitude on the basis state |a,k⟩.
    pub fn amplitude(&self, a: usize, k: usize) -> Complex64 {
        assert!(a < self.d && k < self.d, "basis label ({a}, {k}) out of range");
        self.amplitudes[a * self.d + k]
    }

    /// The d×d matrix A with A(a,k) equal to the amplitude on |a,k⟩; the
    /// state's Schmidt data is the SVD of this matrix.
    pub fn coefficient_matrix(&self) -> ComplexMatrix {
        ComplexMatrix::new(self.d, self.d, self.amplitudes.clone())
            .expect("a valid state has d*d finite amplitudes")
    }

    /// ⟨self|other⟩.
    pub fn inner(&self, other: &PureState) -> Complex64 {
        assert_eq!(self.d, other.d, "inner product of states with different dimensions");
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// The projector |ψ⟩⟨ψ| as a density matrix.
    pub fn density(&self) -> DensityMatrix {
        let n = self.d * self.d;
        let matrix = ComplexMatrix::from_fn(n, n, |i, j| {
            self.amplitudes[i] * self.amplitudes[j].conj()
        });
        // Outer products of a unit vector satisfy every density invariant
        // exactly, up to the round-off already admitted by NORM_TOL.
        DensityMatrix { d: self.d, matrix }
    }
}

/// d²×d² Hermitian, unit-trace, positive-semidefinite operator.
#[derive(Clone, Debug)]
pub struct DensityMatrix {
    d: usize,
    matrix: ComplexMatrix,
}

impl DensityMatrix {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    /// ⟨ψ|ρ|ψ⟩, real because ρ is Hermitian.
    pub fn overlap(&self, psi: &PureState) -> f64 {
        assert_eq!(self.d, psi.d(), "overlap of objects with different dimensions");
        let applied = self.matrix.mul_vec(psi.amplitudes());
        psi.amplitudes()
            .iter()
            .zip(&applied)
            .map(|(a, b)| (a.conj() * b).re)
            .sum()
    }
}

/// Schmidt form of a pure state: λ sorted nonincreasing and local unitaries
/// with (u1 ⊗ u2)|ψ⟩ = Σ λⱼ|jj⟩.
#[derive(Clone, Debug)]
pub struct SchmidtDecomposition {
    /// Nonnegative, sorted nonincreasing, Σλ² = 1.
    pub coefficients: Vec<f64>,
    pub u1: ComplexMatrix,
    pub u2: ComplexMatrix,
}

/// (1/√d)·Σ|kk⟩, the maximally entangled reference state.
pub fn max_entangled(d: usize) -> Result<PureState, FefError> {
    if d < 2 {
        return Err(FefError::DimensionTooSmall(d));
    }
    let scale = 1.0 / (d as f64).sqrt();
    let mut amplitudes = vec![Complex64::new(0.0, 0.0); d * d];
    for k in 0..d {
        amplitudes[k * d + k] = Complex64::new(scale, 0.0);
    }
    PureState::new(d, amplitudes)
}

/// Schmidt decomposition via the SVD of the coefficient matrix: for
/// A = UΣV†, the unitaries u1 = U† and u2 = Vᵀ rotate ψ onto Σλⱼ|jj⟩.
pub fn schmidt_decompose(psi: &PureState) -> SchmidtDecomposition {
    let f = linalg::svd(&psi.coefficient_matrix());
    SchmidtDecomposition {
        coefficients: f.singulars,
        u1: f.left.adjoint(),
        u2: f.right.transpose(),
    }
}

/// Isotropic state: the U⊗U* invariant mixture of white noise with the
/// maximally entangled projector, at fidelity f = ⟨ψ⁺|ρ|ψ⁺⟩.
pub fn isotropic(d: usize, f: f64) -> Result<DensityMatrix, FefError> {
    if d < 2 {
        return Err(FefError::DimensionTooSmall(d));
    }
    if !(0.0..=1.0).contains(&f) || !f.is_finite() {
        return Err(FefError::ParameterRange { name: "f", value: f, min: 0.0, max: 1.0 });
    }
    let n = d * d;
    let psi = max_entangled(d)?;
    let amps = psi.amplitudes();
    let noise = (1.0 - f) / (n as f64 - 1.0);
    let signal = Complex64::new((n as f64 * f - 1.0) / (n as f64 - 1.0), 0.0);
    let matrix = ComplexMatrix::from_fn(n, n, |i, j| {
        let mut z = amps[i] * amps[j].conj() * signal;
        if i == j {
            z += Complex64::new(noise, 0.0);
        }
        z
    });
    validate_density(matrix, d)
}

/// The swap operator V = Σ|ij⟩⟨ji|.
pub fn swap_operator(d: usize) -> ComplexMatrix {
    let n = d * d;
    ComplexMatrix::from_fn(n, n, |r, c| {
        let (a, k) = (r / d, r % d);
        let (b, l) = (c / d, c % d);
        if a == l && k == b {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// Werner state: the U⊗U invariant family
/// ρ = (d−f)/(d³−d)·I + (df−1)/(d³−d)·V.
///
/// The construction satisfies tr(ρV) = f, which is the identity used to
/// recover the parameter from a raw matrix. It is positive semidefinite on
/// exactly f ∈ [−1, 1]: the spectrum is (1+f)/(d(d+1)) on the symmetric
/// subspace and (1−f)/(d(d−1)) on the antisymmetric one.
pub fn werner(d: usize, f: f64) -> Result<DensityMatrix, FefError> {
    if d < 2 {
        return Err(FefError::DimensionTooSmall(d));
    }
    if !(-1.0..=1.0).contains(&f) || !f.is_finite() {
        return Err(FefError::ParameterRange { name: "f", value: f, min: -1.0, max: 1.0 });
    }
    let n = d * d;
    let dd = d as f64;
    let denominator = dd * dd * dd - dd;
    let identity_coeff = (dd - f) / denominator;
    let swap_coeff = (dd * f - 1.0) / denominator;
    let matrix = ComplexMatrix::from_fn(n, n, |r, c| {
        let (a, k) = (r / d, r % d);
        let (b, l) = (c / d, c % d);
        let mut v = 0.0;
        if r == c {
            v += identity_coeff;
        }
        if a == l && k == b {
            v += swap_coeff;
        }
        Complex64::new(v, 0.0)
    });
    validate_density(matrix, d)
}

/// Mixture Σᵢ pᵢ |i,σ(i)⟩⟨i,σ(i)| over a permutation σ of 0..d.
pub fn permutation_mixture(d: usize, sigma: &[usize], weights: &[f64]) -> Result<DensityMatrix, FefError> {
    if d < 2 {
        return Err(FefError::DimensionTooSmall(d));
    }
    if sigma.len() != d || !is_permutation(sigma) {
        return Err(FefError::NotPermutation(d));
    }
    if weights.len() != d {
        return Err(FefError::ComponentCount { expected: d, found: weights.len() });
    }
    check_weights(weights)?;
    let n = d * d;
    let mut matrix = ComplexMatrix::zeros(n, n);
    for (i, (&target, &p)) in sigma.iter().zip(weights).enumerate() {
        let flat = i * d + target;
        matrix.set(flat, flat, Complex64::new(p, 0.0));
    }
    validate_density(matrix, d)
}

fn is_permutation(sigma: &[usize]) -> bool {
    let mut seen = vec![false; sigma.len()];
    for &s in sigma {
        if s >= sigma.len() || seen[s] {
            return false;
        }
        seen[s] = true;
    }
    true
}

pub(crate) fn check_weights(weights: &[f64]) -> Result<(), FefError> {
    if weights.is_empty() {
        return Err(FefError::EmptyDecomposition);
    }
    for &w in weights {
        if !w.is_finite() || w < 0.0 {
            return Err(FefError::BadWeight(w));
        }
    }
    let sum: f64 = weights.iter().sum();
    if (sum - 1.0).abs() > WEIGHT_TOL {
        return Err(FefError::WeightSum(sum));
    }
    Ok(())
}

/// Validates a weighted set of pure components and returns their common d.
pub(crate) fn check_decomposition(weights: &[f64], pures: &[PureState]) -> Result<usize, FefError> {
    check_weights(weights)?;
    if pures.len() != weights.len() {
        return Err(FefError::ComponentCount { expected: weights.len(), found: pures.len() });
    }
    let d = pures[0].d();
    for psi in pures {
        if psi.d() != d {
            return Err(FefError::MixedDimensions(d, psi.d()));
        }
    }
    Ok(d)
}

/// Σᵢ pᵢ |ψᵢ⟩⟨ψᵢ| as a validated density matrix.
pub fn mixture(weights: &[f64], pures: &[PureState]) -> Result<DensityMatrix, FefError> {
    let d = check_decomposition(weights, pures)?;
    let n = d * d;
    let mut entries = vec![Complex64::new(0.0, 0.0); n * n];
    for (psi, &p) in pures.iter().zip(weights) {
        let amps = psi.amplitudes();
        for i in 0..n {
            let left = amps[i] * p;
            for j in 0..n {
                entries[i * n + j] += left * amps[j].conj();
            }
        }
    }
    let matrix = ComplexMatrix::new(n, n, entries)?;
    validate_density(matrix, d)
}

/// Haar-distributed pure state: d² independent complex Gaussian amplitudes,
/// normalized. Deterministic per seed.
pub fn random_pure(d: usize, seed: u64) -> Result<PureState, FefError> {
    if d < 2 {
        return Err(FefError::DimensionTooSmall(d));
    }
    let mut source = GaussianSource::from_seed(seed);
    let raw: Vec<Complex64> = (0..d * d).map(|_| source.complex_gaussian()).collect();
    let norm = raw.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
    assert!(norm > 0.0, "a Gaussian draw of d*d amplitudes cannot be the zero vector");
    let amplitudes = raw.into_iter().map(|a| a / norm).collect();
    PureState::new(d, amplitudes)
}

/// Haar-distributed d×d unitary, drawn as the polar factor of a Ginibre
/// matrix. Deterministic per seed.
pub fn random_unitary(d: usize, seed: u64) -> Result<ComplexMatrix, FefError> {
    if d < 2 {
        return Err(FefError::DimensionTooSmall(d));
    }
    Ok(GaussianSource::from_seed(seed).haar_unitary(d))
}

/// ρ = GG†/tr(GG†) for a d²×rank Ginibre matrix G. Deterministic per seed;
/// the spectrum has `rank` nonzero eigenvalues for generic seeds.
pub fn random_density(d: usize, rank: usize, seed: u64) -> Result<DensityMatrix, FefError> {
    if d < 2 {
        return Err(FefError::DimensionTooSmall(d));
    }
    let n = d * d;
    if rank < 1 || rank > n {
        return Err(FefError::RankRange { got: rank, max: n });
    }
    let mut source = GaussianSource::from_seed(seed);
    let g = source.ginibre(n, rank);
    let gram = g.mul(&g.adjoint());
    let trace = gram.trace().re;
    assert!(trace > 0.0, "a Ginibre Gram matrix has positive trace");
    let matrix = gram.scale(Complex64::new(1.0 / trace, 0.0));
    validate_density(matrix, d)
}

/// Checks the density-matrix invariants (shape, finiteness, Hermiticity
/// within 1e-10, unit trace within 1e-9, spectrum above −1e-9), symmetrizes,
/// and wraps the result.
pub fn validate_density(rho: ComplexMatrix, d: usize) -> Result<DensityMatrix, FefError> {
    if d < 2 {
        return Err(FefError::DimensionTooSmall(d));
    }
    let n = d * d;
    if rho.rows() != n || rho.cols() != n {
        return Err(FefError::DensitySize { rows: rho.rows(), cols: rho.cols(), expected: n });
    }
    if let Some((row, col)) = rho.non_finite_position() {
        return Err(FefError::Linalg(crate::error::LinalgError::NonFiniteEntry { row, col }));
    }
    let deviation = rho.hermitian_deviation();
    if deviation > linalg::HERMITICITY_TOL {
        return Err(FefError::NotHermitianDensity(deviation));
    }
    let matrix = rho.symmetrized();
    let trace = matrix.trace();
    if (trace.re - 1.0).abs() > TRACE_TOL {
        return Err(FefError::TraceNotOne((trace.re - 1.0).abs()));
    }
    let eig = linalg::hermitian_eig(&matrix).expect("symmetrized matrices pass the Hermitian check");
    let smallest = *eig.eigenvalues.last().expect("density matrices are nonempty");
    if smallest < EIGENVALUE_FLOOR {
        return Err(FefError::NotPositive(smallest));
    }
    Ok(DensityMatrix { d, matrix })
}
