//! Closed-form entanglement quantities: the pure-state fraction, the
//! isotropic and Werner family formulas, related measures, and the
//! decomposition and superposition bounds that connect them.

use crate::error::FefError;
use crate::linalg::{self, Complex64, ComplexMatrix};
use crate::numeric::{fef_maximize, OptimizerConfig};
use crate::states::{
    check_decomposition, mixture, schmidt_decompose, DensityMatrix, PureState,
};

/// Agreement tolerance between a mixture's fraction and its weighted
/// pure-state sum before the two are reported as equal.
pub const EQUALITY_TOL: f64 = 1e-6;

/// Two unitaries count as equal up to global phase when the optimally
/// phased difference stays below this in max norm.
pub const PHASE_MATCH_TOL: f64 = 1e-6;

/// Schmidt spectra with coefficients closer than this (or smaller than
/// this) leave the alignment check without a unique gauge.
pub const DEGENERACY_TOL: f64 = 1e-8;

/// Slack applied when validating that a caller-supplied fraction lies in
/// the universal range [1/d², 1].
pub const FEF_RANGE_SLACK: f64 = 1e-9;

const ZERO_VECTOR_NORM_SQ: f64 = 1e-24;

/// Fully entangled fraction of a pure state: (Σᵢλᵢ)²/d over the Schmidt
/// coefficients. Lies in [1/d, 1], with 1/d exactly for product states.
pub fn fef_pure(psi: &PureState) -> f64 {
    let schmidt = schmidt_decompose(psi);
    let sum: f64 = schmidt.coefficients.iter().sum();
    sum * sum / psi.d() as f64
}

/// Fully entangled fraction of the isotropic state at fidelity f: the
/// fidelity itself above 1/d², and (1−f)/(d²−1) below.
pub fn fef_isotropic(d: usize, f: f64) -> Result<f64, FefError> {
    if d < 2 {
        return Err(FefError::DimensionTooSmall(d));
    }
    if !(0.0..=1.0).contains(&f) {
        return Err(FefError::ParameterRange { name: "f", value: f, min: 0.0, max: 1.0 });
    }
    let dd = (d * d) as f64;
    if f >= 1.0 / dd {
        Ok(f)
    } else {
        Ok((1.0 - f) / (dd - 1.0))
    }
}

/// Fully entangled fraction of the Werner state at swap expectation f.
/// Above f = 1/d the value is (f+1)/(d(d+1)); below, the even and odd
/// dimensions follow different formulas, meeting at 1/d² on the boundary.
pub fn fef_werner(d: usize, f: f64) -> Result<f64, FefError> {
    if d < 2 {
        return Err(FefError::DimensionTooSmall(d));
    }
    if !(-1.0..=1.0).contains(&f) {
        return Err(FefError::ParameterRange { name: "f", value: f, min: -1.0, max: 1.0 });
    }
    let df = d as f64;
    if f >= 1.0 / df {
        Ok((f + 1.0) / (df * (df + 1.0)))
    } else if d % 2 == 0 {
        Ok((1.0 - f) / (df * (df - 1.0)))
    } else {
        Ok((df * df - df * df * f + df * f + df - 2.0) / (df * df * (df * df - 1.0)))
    }
}

/// Negativity (‖ρ^{T₁}‖₁ − 1)/2 from the partial transpose over the first
/// subsystem. For pure states this equals (d·F − 1)/2.
pub fn negativity(rho: &DensityMatrix) -> f64 {
    let pt = linalg::partial_transpose_first(rho.matrix(), rho.d())
        .expect("density matrix has d^2 x d^2 shape");
    (linalg::trace_norm(&pt) - 1.0) / 2.0
}

/// Geometric measure of a pure state as (E, λ₁²) with E = 1 − λ₁², where
/// λ₁ is the largest Schmidt coefficient.
pub fn geometric_measure_pure(psi: &PureState) -> (f64, f64) {
    let schmidt = schmidt_decompose(psi);
    let lambda_max_sq = schmidt.coefficients[0] * schmidt.coefficients[0];
    (1.0 - lambda_max_sq, lambda_max_sq)
}

/// Concurrence of a pure state, √(2(1 − Σᵢλᵢ⁴)): zero for product states
/// and √(2(d−1)/d) at maximal entanglement.
pub fn concurrence_pure(psi: &PureState) -> f64 {
    let schmidt = schmidt_decompose(psi);
    let quartic: f64 = schmidt.coefficients.iter().map(|l| l.powi(4)).sum();
    (2.0 * (1.0 - quartic)).max(0.0).sqrt()
}

/// Lower bound on the concurrence of any state with the given fraction:
/// max{√(2/(d(d−1)))·(d·fef − 1), 0}. The fraction must lie in the
/// universal range [1/d², 1].
pub fn concurrence_lower_bound(fef: f64, d: usize) -> Result<f64, FefError> {
    check_fef_range(fef, d)?;
    let df = d as f64;
    let raw = (2.0 / (df * (df - 1.0))).sqrt() * (df * fef - 1.0);
    Ok(raw.max(0.0))
}

/// Weighted sum Σᵢ pᵢ·F(ψᵢ), an upper bound on the fraction of the
/// mixture Σᵢ pᵢ|ψᵢ⟩⟨ψᵢ|.
pub fn mixture_upper_bound(weights: &[f64], pures: &[PureState]) -> Result<f64, FefError> {
    check_decomposition(weights, pures)?;
    Ok(weights.iter().zip(pures).map(|(&p, psi)| p * fef_pure(psi)).sum())
}

/// The maximally entangled state closest to ψ, namely (W⊗I)|ψ⁺⟩ with W
/// the unitary polar factor of the coefficient matrix, together with the
/// squared overlap |⟨mes|ψ⟩|², which equals the fraction of ψ.
pub fn closest_mes_pure(psi: &PureState) -> (PureState, f64) {
    let d = psi.d();
    let f = linalg::svd(&psi.coefficient_matrix());
    let w = f.left.mul(&f.right.adjoint());
    let sum: f64 = f.singulars.iter().sum();
    let overlap = sum * sum / d as f64;
    let raw = w.entries();
    let norm: f64 = raw.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let scale = Complex64::new(1.0 / norm, 0.0);
    let amplitudes = raw.iter().map(|z| z * scale).collect();
    let mes = PureState::new(d, amplitudes).expect("unitary coefficients normalize exactly");
    (mes, overlap)
}

/// Whether the alignment condition for decomposition equality could be
/// decided, and its outcome when it could.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConditionStatus {
    /// All component unitaries agree up to a global phase.
    Satisfied,
    /// At least one pair of component unitaries differs beyond phase.
    Violated,
    /// A degenerate Schmidt spectrum leaves the unitaries gauge-dependent,
    /// so agreement cannot be decided from one decomposition.
    Indeterminate,
}

/// Outcome of comparing a mixture's fraction against its weighted
/// pure-state sum.
#[derive(Clone, Debug)]
pub struct DecompositionCheckResult {
    /// Numerically maximized fraction of the mixed state.
    pub fef_mixture: f64,
    /// Σᵢ pᵢ·F(ψᵢ), always an upper bound on `fef_mixture`.
    pub weighted_pure_sum: f64,
    /// True when the two agree within [`EQUALITY_TOL`].
    pub equality_holds: bool,
    /// Result of the pairwise phase-alignment test on the components'
    /// closest-unitary factors.
    pub condition_status: ConditionStatus,
}

/// Tests whether Σᵢ pᵢ·F(ψᵢ) is attained by the mixture and whether the
/// components share a common closest maximally entangled state. The
/// mixture side is maximized numerically under `config`.
pub fn decomposition_equality_check(
    weights: &[f64],
    pures: &[PureState],
    config: &OptimizerConfig,
) -> Result<DecompositionCheckResult, FefError> {
    let rho = mixture(weights, pures)?;
    let fef_mixture = fef_maximize(&rho, config).value;
    let weighted_pure_sum: f64 =
        weights.iter().zip(pures).map(|(&p, psi)| p * fef_pure(psi)).sum();
    Ok(DecompositionCheckResult {
        fef_mixture,
        weighted_pure_sum,
        equality_holds: (fef_mixture - weighted_pure_sum).abs() <= EQUALITY_TOL,
        condition_status: alignment_status(pures),
    })
}

fn alignment_status(pures: &[PureState]) -> ConditionStatus {
    if pures.len() == 1 {
        return ConditionStatus::Satisfied;
    }
    let mut factors = Vec::with_capacity(pures.len());
    for psi in pures {
        let schmidt = schmidt_decompose(psi);
        let lambda = &schmidt.coefficients;
        let degenerate = lambda.windows(2).any(|w| w[0] - w[1] < DEGENERACY_TOL)
            || lambda.last().is_some_and(|&l| l < DEGENERACY_TOL);
        if degenerate {
            return ConditionStatus::Indeterminate;
        }
        factors.push(schmidt.u1.adjoint().mul(&schmidt.u2.conjugate()));
    }
    for s in 0..factors.len() {
        for t in s + 1..factors.len() {
            if phase_aligned_distance(&factors[s], &factors[t]) > PHASE_MATCH_TOL {
                return ConditionStatus::Violated;
            }
        }
    }
    ConditionStatus::Satisfied
}

/// Max-norm distance between a and e^{iθ}b at the optimal phase
/// θ = arg tr(b†a). Infinite when the trace vanishes, since two unitaries
/// equal up to phase have |tr(b†a)| = d.
fn phase_aligned_distance(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    let z = b.adjoint().mul(a).trace();
    if z.norm() < 1e-300 {
        return f64::INFINITY;
    }
    a.max_abs_diff(&b.scale(Complex64::cis(z.arg())))
}

/// Two-sided bounds on |γ|·F^{1/2} of a normalized superposition, where γ
/// is the norm of the unnormalized superposed vector.
#[derive(Clone, Copy, Debug)]
pub struct SuperpositionBounds {
    pub lower: f64,
    pub upper: f64,
}

/// The superposition α|φ₁⟩ + β|φ₂⟩ normalized to a pure state, returned
/// with the normalizing factor γ.
pub fn normalized_superposition(
    alpha: Complex64,
    beta: Complex64,
    phi1: &PureState,
    phi2: &PureState,
) -> Result<(PureState, f64), FefError> {
    if phi1.d() != phi2.d() {
        return Err(FefError::MixedDimensions(phi1.d(), phi2.d()));
    }
    let raw: Vec<Complex64> = phi1
        .amplitudes()
        .iter()
        .zip(phi2.amplitudes())
        .map(|(a, b)| alpha * a + beta * b)
        .collect();
    normalize_components(phi1.d(), raw)
}

fn normalize_components(d: usize, raw: Vec<Complex64>) -> Result<(PureState, f64), FefError> {
    let norm_sq: f64 = raw.iter().map(|z| z.norm_sqr()).sum();
    if norm_sq < ZERO_VECTOR_NORM_SQ {
        return Err(FefError::DegenerateSuperposition(norm_sq.sqrt()));
    }
    let gamma = norm_sq.sqrt();
    let scale = Complex64::new(1.0 / gamma, 0.0);
    let psi = PureState::new(d, raw.into_iter().map(|z| z * scale).collect())?;
    Ok((psi, gamma))
}

/// Sandwich bounds for a two-component superposition: with
/// sₜ = |coefficient|·F^{1/2}(φₜ), the quantity |γ|·F^{1/2}(ψ) lies in
/// [max{|s₁ − s₂|, 1/d²}, min{s₁ + s₂, 1}].
pub fn superposition_bounds(
    alpha: Complex64,
    beta: Complex64,
    phi1: &PureState,
    phi2: &PureState,
) -> Result<SuperpositionBounds, FefError> {
    normalized_superposition(alpha, beta, phi1, phi2)?;
    let terms = [
        alpha.norm() * fef_pure(phi1).sqrt(),
        beta.norm() * fef_pure(phi2).sqrt(),
    ];
    Ok(bounds_from_terms(phi1.d(), &terms))
}

/// The m-component generalization of [`superposition_bounds`]: the spread
/// term becomes maxₜ(2sₜ − Σs), clamped to zero before the 1/d² floor.
pub fn superposition_bounds_multi(
    coeffs: &[Complex64],
    pures: &[PureState],
) -> Result<SuperpositionBounds, FefError> {
    if pures.is_empty() {
        return Err(FefError::EmptyDecomposition);
    }
    if coeffs.len() != pures.len() {
        return Err(FefError::ComponentCount { expected: pures.len(), found: coeffs.len() });
    }
    let d = pures[0].d();
    for psi in pures {
        if psi.d() != d {
            return Err(FefError::MixedDimensions(d, psi.d()));
        }
    }
    let n = d * d;
    let mut raw = vec![Complex64::new(0.0, 0.0); n];
    for (c, psi) in coeffs.iter().zip(pures) {
        for (acc, a) in raw.iter_mut().zip(psi.amplitudes()) {
            *acc += c * a;
        }
    }
    normalize_components(d, raw)?;
    let terms: Vec<f64> = coeffs
        .iter()
        .zip(pures)
        .map(|(c, psi)| c.norm() * fef_pure(psi).sqrt())
        .collect();
    Ok(bounds_from_terms(d, &terms))
}

fn bounds_from_terms(d: usize, terms: &[f64]) -> SuperpositionBounds {
    let total: f64 = terms.iter().sum();
    let spread = terms.iter().fold(0.0_f64, |acc, &s| acc.max(2.0 * s - total));
    SuperpositionBounds {
        lower: spread.max(1.0 / (d * d) as f64),
        upper: total.min(1.0),
    }
}

/// Optimal teleportation fidelity (fef·d + 1)/(d + 1) through a resource
/// state with the given fraction, and whether the state is useful, i.e.
/// beats the classical threshold fef > 1/d.
pub fn teleportation_fidelity(fef: f64, d: usize) -> Result<(f64, bool), FefError> {
    check_fef_range(fef, d)?;
    let df = d as f64;
    Ok(((fef * df + 1.0) / (df + 1.0), fef > 1.0 / df))
}

/// The universal range [1/d², 1] containing the fraction of every state
/// of local dimension d, with 1/d² attained only by the maximally mixed
/// state.
pub fn fef_range(rho: &DensityMatrix) -> (f64, f64) {
    (1.0 / (rho.d() * rho.d()) as f64, 1.0)
}

fn check_fef_range(fef: f64, d: usize) -> Result<(), FefError> {
    if d < 2 {
        return Err(FefError::DimensionTooSmall(d));
    }
    let min = 1.0 / (d * d) as f64;
    if !fef.is_finite() || fef < min - FEF_RANGE_SLACK || fef > 1.0 + FEF_RANGE_SLACK {
        return Err(FefError::ParameterRange { name: "fef", value: fef, min, max: 1.0 });
    }
    Ok(())
}
