//! Recognizes density matrices with closed-form FEF: rank-one (pure) states
//! and the isotropic and Werner families. Family parameters are recovered by
//! least-squares projection onto the one-parameter affine family, then
//! confirmed by rebuilding the candidate and checking the residual.

use fef_core::exact::{fef_isotropic, fef_pure, fef_werner};
use fef_core::linalg::hermitian_eig;
use fef_core::states::{isotropic, werner};
use fef_core::{Complex64, DensityMatrix, FefError, PureState};

/// Largest max-norm residual accepted when matching a state to a family.
pub const RESIDUAL_TOL: f64 = 1e-8;

/// A recognized closed-form family, carrying what is needed to evaluate it.
pub enum Family {
    Pure(PureState),
    Isotropic(f64),
    Werner(f64),
}

impl Family {
    pub fn describe(&self) -> String {
        match self {
            Family::Pure(_) => "pure (rank one)".to_string(),
            Family::Isotropic(f) => format!("isotropic (f = {f:.6})"),
            Family::Werner(f) => format!("werner (f = {f:.6})"),
        }
    }

    pub fn fef_exact(&self, d: usize) -> f64 {
        match self {
            Family::Pure(psi) => fef_pure(psi),
            Family::Isotropic(f) => fef_isotropic(d, *f).expect("fitted parameter is in domain"),
            Family::Werner(f) => fef_werner(d, *f).expect("fitted parameter is in domain"),
        }
    }
}

/// Tries pure, isotropic, and Werner recognition in that order.
pub fn detect(rho: &DensityMatrix) -> Option<Family> {
    let d = rho.d();
    detect_pure(rho)
        .map(Family::Pure)
        .or_else(|| fit_family(rho, |f| isotropic(d, f), 0.0, 1.0).map(Family::Isotropic))
        .or_else(|| fit_family(rho, |f| werner(d, f), -1.0, 1.0).map(Family::Werner))
}

fn detect_pure(rho: &DensityMatrix) -> Option<PureState> {
    let eig = hermitian_eig(rho.matrix()).ok()?;
    if eig.eigenvalues[0] < 1.0 - RESIDUAL_TOL {
        return None;
    }
    let n = rho.d() * rho.d();
    let amps: Vec<Complex64> = (0..n).map(|i| eig.eigenvectors.get(i, 0)).collect();
    let psi = PureState::new(rho.d(), amps).ok()?;
    (rho.matrix().max_abs_diff(psi.density().matrix()) <= RESIDUAL_TOL).then_some(psi)
}

fn fit_family<F>(rho: &DensityMatrix, build: F, lo: f64, hi: f64) -> Option<f64>
where
    F: Fn(f64) -> Result<DensityMatrix, FefError>,
{
    let m0 = build(lo).ok()?;
    let m1 = build(hi).ok()?;
    let direction: Vec<Complex64> = m1
        .matrix()
        .entries()
        .iter()
        .zip(m0.matrix().entries())
        .map(|(a, b)| a - b)
        .collect();
    let norm_sq: f64 = direction.iter().map(|z| z.norm_sqr()).sum();
    if norm_sq <= 0.0 {
        return None;
    }
    let projected: f64 = direction
        .iter()
        .zip(rho.matrix().entries().iter().zip(m0.matrix().entries()))
        .map(|(dz, (r, b))| (dz.conj() * (r - b)).re)
        .sum();
    let t = projected / norm_sq;
    if !(-1e-9..=1.0 + 1e-9).contains(&t) {
        return None;
    }
    let f = lo + t.clamp(0.0, 1.0) * (hi - lo);
    let candidate = build(f).ok()?;
    (candidate.matrix().max_abs_diff(rho.matrix()) <= RESIDUAL_TOL).then_some(f)
}
