//! Numerical maximization of the fraction over the unitary group. The
//! workhorse is a restarted polar fixed-point ascent; a brute-force grid
//! oracle over U(2) provides an independent cross-check for two qubits.

use crate::error::FefError;
use crate::linalg::{self, Complex64, ComplexMatrix};
use crate::rng::GaussianSource;
use crate::states::DensityMatrix;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Largest deviation from U†U = I accepted by [`fef_objective`].
pub const UNITARITY_TOL: f64 = 1e-8;

/// Restart values within this of the best are ties; the earliest restart
/// wins so results do not depend on scheduling.
pub const TIE_TOL: f64 = 1e-12;

const DEGENERATE_STEP_TOL: f64 = 1e-12;

/// Knobs for the restarted ascent.
#[derive(Clone, Debug)]
pub struct OptimizerConfig {
    /// Iteration cap per restart.
    pub max_iterations: usize,
    /// Stop a restart once one step improves by less than this.
    pub tolerance: f64,
    /// Restart count: deterministic seed matrices first, Haar-random
    /// starts after those run out.
    pub restarts: usize,
    /// Base seed; restart i draws from an independent stream (seed, i).
    pub seed: u64,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self { max_iterations: 10_000, tolerance: 1e-12, restarts: 20, seed: 0 }
    }
}

/// Outcome of the restarted maximization.
#[derive(Clone, Debug)]
pub struct FefResult {
    /// Best objective value found across restarts.
    pub value: f64,
    /// Unitary attaining `value`, global phase left as produced.
    pub optimal_unitary: ComplexMatrix,
    /// Iterations summed over all restarts.
    pub iterations_total: usize,
    /// Scheduled restarts plus any degenerate-step refreshes.
    pub restarts_used: usize,
    /// False only when every restart hit the iteration cap.
    pub converged: bool,
    /// Largest eigenvalue of ρ; the value never exceeds it.
    pub spectral_bound: f64,
}

/// The quadratic form (1/d)·vec(U)†·ρ·vec(U) with vec the row-major
/// reshape. No unitarity check; exposed for gradient tests and search
/// loops that guarantee their own iterates.
pub fn fef_quadratic_form(rho: &DensityMatrix, u: &ComplexMatrix) -> f64 {
    let v = linalg::mat_to_vec(u);
    let applied = rho.matrix().mul_vec(&v);
    let overlap: f64 = v.iter().zip(&applied).map(|(a, b)| (a.conj() * b).re).sum();
    overlap / rho.d() as f64
}

/// Overlap of ρ with the maximally entangled state (U⊗I)|ψ⁺⟩, the
/// quantity being maximized. Rejects u unless it is d×d and unitary
/// within [`UNITARITY_TOL`].
pub fn fef_objective(rho: &DensityMatrix, u: &ComplexMatrix) -> Result<f64, FefError> {
    let d = rho.d();
    if u.rows() != d || u.cols() != d {
        return Err(FefError::UnitarySize { expected: d, rows: u.rows(), cols: u.cols() });
    }
    let deviation = u.unitarity_deviation();
    if deviation > UNITARITY_TOL {
        return Err(FefError::NotUnitary(deviation));
    }
    Ok(fef_quadratic_form(rho, u))
}

/// Euclidean gradient direction G = (1/d)·reshape(ρ·vec(U)): the
/// derivative of the objective at U along Δ equals 2·Re⟨vec(Δ), vec(G)⟩.
pub fn fef_euclidean_gradient(rho: &DensityMatrix, u: &ComplexMatrix) -> ComplexMatrix {
    let applied = rho.matrix().mul_vec(&linalg::mat_to_vec(u));
    let g = linalg::vec_to_mat(&applied).expect("density dimension is a perfect square");
    g.scale(Complex64::new(1.0 / rho.d() as f64, 0.0))
}

/// One ascent step: apply ρ to vec(U) and project the reshaped image
/// back onto the unitary group. Returns None when the image is too small
/// to define a direction, which happens exactly on the kernel of ρ.
pub fn polar_ascent_step(rho: &DensityMatrix, u: &ComplexMatrix) -> Option<ComplexMatrix> {
    let applied = rho.matrix().mul_vec(&linalg::mat_to_vec(u));
    let w = linalg::vec_to_mat(&applied).expect("density dimension is a perfect square");
    if w.frobenius_norm() < DEGENERATE_STEP_TOL {
        return None;
    }
    Some(linalg::polar_unitary(&w).expect("reshaped image is square").unitary)
}

struct RestartOutcome {
    value: f64,
    unitary: ComplexMatrix,
    iterations: usize,
    refreshes: usize,
    converged: bool,
}

fn run_restart(
    rho: &DensityMatrix,
    config: &OptimizerConfig,
    index: usize,
    starts: &[ComplexMatrix],
) -> RestartOutcome {
    let d = rho.d();
    let mut source = GaussianSource::with_stream(config.seed, index as u64);
    let mut u = if index < starts.len() {
        starts[index].clone()
    } else {
        source.haar_unitary(d)
    };
    let mut value = fef_quadratic_form(rho, &u);
    let mut iterations = 0;
    let mut refreshes = 0;
    let mut converged = false;
    while iterations < config.max_iterations {
        iterations += 1;
        let Some(next) = polar_ascent_step(rho, &u) else {
            refreshes += 1;
            u = source.haar_unitary(d);
            value = fef_quadratic_form(rho, &u);
            continue;
        };
        let next_value = fef_quadratic_form(rho, &next);
        let gain = next_value - value;
        u = next;
        value = next_value;
        if gain < config.tolerance {
            converged = true;
            break;
        }
    }
    RestartOutcome { value, unitary: u, iterations, refreshes, converged }
}

/// Maximizes the fraction by restarted polar fixed-point ascent.
/// Deterministic for a given config; with the `parallel` feature the
/// restarts run concurrently without changing any result.
pub fn fef_maximize(rho: &DensityMatrix, config: &OptimizerConfig) -> FefResult {
    check_config(config);
    let starts = deterministic_starts(rho.d());
    assemble(rho, run_all(rho, config, &starts))
}

/// Single-threaded variant of [`fef_maximize`] with identical results,
/// kept callable under every feature set for benchmark comparison.
pub fn fef_maximize_seq(rho: &DensityMatrix, config: &OptimizerConfig) -> FefResult {
    check_config(config);
    let starts = deterministic_starts(rho.d());
    let outcomes = (0..config.restarts).map(|i| run_restart(rho, config, i, &starts)).collect();
    assemble(rho, outcomes)
}

#[cfg(feature = "parallel")]
fn run_all(
    rho: &DensityMatrix,
    config: &OptimizerConfig,
    starts: &[ComplexMatrix],
) -> Vec<RestartOutcome> {
    (0..config.restarts)
        .into_par_iter()
        .map(|i| run_restart(rho, config, i, starts))
        .collect()
}

#[cfg(not(feature = "parallel"))]
fn run_all(
    rho: &DensityMatrix,
    config: &OptimizerConfig,
    starts: &[ComplexMatrix],
) -> Vec<RestartOutcome> {
    (0..config.restarts).map(|i| run_restart(rho, config, i, starts)).collect()
}

fn check_config(config: &OptimizerConfig) {
    assert!(config.max_iterations > 0, "max_iterations must be positive");
    assert!(config.restarts > 0, "restarts must be positive");
    assert!(
        config.tolerance > 0.0 && config.tolerance < 1.0,
        "tolerance must lie in (0, 1)"
    );
}

fn assemble(rho: &DensityMatrix, mut outcomes: Vec<RestartOutcome>) -> FefResult {
    let best = outcomes.iter().map(|o| o.value).fold(f64::NEG_INFINITY, f64::max);
    let winner = outcomes
        .iter()
        .position(|o| o.value >= best - TIE_TOL)
        .expect("config guarantees at least one restart");
    let iterations_total = outcomes.iter().map(|o| o.iterations).sum();
    let restarts_used = outcomes.len() + outcomes.iter().map(|o| o.refreshes).sum::<usize>();
    let converged = outcomes.iter().any(|o| o.converged);
    let spectral_bound = linalg::hermitian_eig(rho.matrix())
        .expect("density matrices are Hermitian")
        .eigenvalues[0];
    let chosen = outcomes.swap_remove(winner);
    FefResult {
        value: chosen.value,
        optimal_unitary: chosen.unitary,
        iterations_total,
        restarts_used,
        converged,
        spectral_bound,
    }
}

/// Unitary seed matrices covering the known family optima: the identity,
/// the cyclic shift, the diagonal of d-th roots of unity (both traceless),
/// and a rotation block reaching the odd-dimension Werner optimum.
pub fn deterministic_starts(d: usize) -> Vec<ComplexMatrix> {
    assert!(d >= 2, "local dimension must be at least 2");
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(1.0, 0.0);
    let shift = ComplexMatrix::from_fn(d, d, |i, j| if i == (j + 1) % d { one } else { zero });
    let roots = ComplexMatrix::from_fn(d, d, |i, j| {
        if i == j {
            Complex64::cis(std::f64::consts::TAU * i as f64 / d as f64)
        } else {
            zero
        }
    });
    vec![ComplexMatrix::identity(d), shift, roots, rotation_block(d)]
}

fn rotation_block(d: usize) -> ComplexMatrix {
    let one = Complex64::new(1.0, 0.0);
    let mut a = ComplexMatrix::zeros(2, 2);
    a.set(0, 1, one);
    a.set(1, 0, -one);
    if d % 2 == 0 {
        linalg::kron(&a, &ComplexMatrix::identity(d / 2)).expect("small fixed dimensions")
    } else {
        let mut m = ComplexMatrix::zeros(d, d);
        for t in 0..d / 2 {
            m.set(2 * t, 2 * t + 1, one);
            m.set(2 * t + 1, 2 * t, -one);
        }
        m.set(d - 1, d - 1, one);
        m
    }
}

/// Exhaustive maximum over U(2) modulo global phase on a
/// resolution³ grid over (θ, α, β), polished by the ascent iteration.
/// Global-phase invariance of the objective makes the three-parameter
/// family complete.
pub fn fef_oracle_grid_d2(rho: &DensityMatrix, resolution: usize) -> Result<f64, FefError> {
    check_grid(rho, resolution)?;
    let (value, flat) = best_grid_point(rho, resolution);
    Ok(polish(rho, grid_unitary_flat(resolution, flat), value))
}

/// Single-threaded variant of [`fef_oracle_grid_d2`] with identical
/// results.
pub fn fef_oracle_grid_d2_seq(rho: &DensityMatrix, resolution: usize) -> Result<f64, FefError> {
    check_grid(rho, resolution)?;
    let (value, flat) = (0..resolution)
        .map(|i| best_in_row(rho, resolution, i))
        .fold((f64::NEG_INFINITY, usize::MAX), better);
    Ok(polish(rho, grid_unitary_flat(resolution, flat), value))
}

fn check_grid(rho: &DensityMatrix, resolution: usize) -> Result<(), FefError> {
    if rho.d() != 2 {
        return Err(FefError::OracleDimension(rho.d()));
    }
    if resolution < 2 {
        return Err(FefError::ResolutionTooSmall(resolution));
    }
    Ok(())
}

#[cfg(feature = "parallel")]
fn best_grid_point(rho: &DensityMatrix, resolution: usize) -> (f64, usize) {
    (0..resolution)
        .into_par_iter()
        .map(|i| best_in_row(rho, resolution, i))
        .reduce(|| (f64::NEG_INFINITY, usize::MAX), better)
}

#[cfg(not(feature = "parallel"))]
fn best_grid_point(rho: &DensityMatrix, resolution: usize) -> (f64, usize) {
    (0..resolution)
        .map(|i| best_in_row(rho, resolution, i))
        .fold((f64::NEG_INFINITY, usize::MAX), better)
}

fn best_in_row(rho: &DensityMatrix, resolution: usize, i: usize) -> (f64, usize) {
    let mut best = (f64::NEG_INFINITY, usize::MAX);
    for j in 0..resolution {
        for k in 0..resolution {
            let flat = (i * resolution + j) * resolution + k;
            let value = fef_quadratic_form(rho, &grid_unitary(resolution, i, j, k));
            best = better(best, (value, flat));
        }
    }
    best
}

/// Lexicographic max by (value, then smaller flat index): a total order,
/// so any reduction grouping yields the same winner.
fn better(a: (f64, usize), b: (f64, usize)) -> (f64, usize) {
    if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
        b
    } else {
        a
    }
}

fn grid_unitary_flat(resolution: usize, flat: usize) -> ComplexMatrix {
    let i = flat / (resolution * resolution);
    let rest = flat % (resolution * resolution);
    grid_unitary(resolution, i, rest / resolution, rest % resolution)
}

fn grid_unitary(resolution: usize, i: usize, j: usize, k: usize) -> ComplexMatrix {
    use std::f64::consts::{FRAC_PI_2, TAU};
    let theta = FRAC_PI_2 * i as f64 / (resolution - 1) as f64;
    let alpha = TAU * j as f64 / resolution as f64;
    let beta = TAU * k as f64 / resolution as f64;
    let (sin, cos) = theta.sin_cos();
    let entries = vec![
        Complex64::cis(alpha) * cos,
        Complex64::cis(beta) * sin,
        -Complex64::cis(-beta) * sin,
        Complex64::cis(-alpha) * cos,
    ];
    ComplexMatrix::new(2, 2, entries).expect("fixed 2x2 shape")
}

fn polish(rho: &DensityMatrix, mut u: ComplexMatrix, mut value: f64) -> f64 {
    for _ in 0..10_000 {
        let Some(next) = polar_ascent_step(rho, &u) else { break };
        let next_value = fef_quadratic_form(rho, &next);
        let gain = next_value - value;
        u = next;
        value = next_value;
        if gain < 1e-12 {
            break;
        }
    }
    value
}
