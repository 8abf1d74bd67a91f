//! Fully entangled fraction of bipartite d⊗d quantum states.
//!
//! The fraction of a state ρ is its maximal overlap with the orbit
//! (U⊗I)|ψ⁺⟩ of the maximally entangled state, a number in [1/d², 1]
//! that controls how well ρ serves as a teleportation resource. This
//! crate evaluates it two ways and keeps both honest against each other:
//!
//! - [`exact`]: closed forms for pure states (via the Schmidt
//!   decomposition) and for the isotropic and Werner families, plus the
//!   measures and bounds tied to the fraction (negativity, concurrence,
//!   geometric measure, decomposition and superposition bounds,
//!   teleportation fidelity).
//! - [`numeric`]: a restarted polar fixed-point ascent over the unitary
//!   group for arbitrary density matrices, with a spectral upper bound
//!   as certificate and a brute-force U(2) grid oracle for cross-checks.
//!
//! States and matrices live in [`states`] and [`linalg`]; everything is
//! deterministic given explicit seeds.
//!
//! ```
//! use fef_core::exact::fef_pure;
//! use fef_core::numeric::{fef_maximize, OptimizerConfig};
//! use fef_core::states::max_entangled;
//!
//! let bell = max_entangled(2).unwrap();
//! assert!((fef_pure(&bell) - 1.0).abs() < 1e-12);
//!
//! let result = fef_maximize(&bell.density(), &OptimizerConfig::default());
//! assert!((result.value - 1.0).abs() < 1e-9);
//! ```

pub mod error;
pub mod exact;
pub mod linalg;
pub mod numeric;
pub mod rng;
pub mod states;

pub use error::{FefError, LinalgError};
pub use linalg::{Complex64, ComplexMatrix};
pub use numeric::{FefResult, OptimizerConfig};
pub use states::{DensityMatrix, PureState};
