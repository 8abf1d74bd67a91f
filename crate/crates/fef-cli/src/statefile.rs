//! StateFile documents: JSON of the form `{"d": n, "kind": "pure" | "density",
//! "data": ...}` where complex entries are `[re, im]` pairs in row-major
//! composite order a*d + k. Numbers are written with 17 significant digits so
//! every value round-trips exactly.

use fef_core::linalg::Complex64;
use fef_core::states::validate_density;
use fef_core::{ComplexMatrix, DensityMatrix, PureState};
use serde::Deserialize;
use std::fmt::Write as _;

#[derive(Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
enum RawStateFile {
    Pure { d: usize, data: Vec<[f64; 2]> },
    Density { d: usize, data: Vec<Vec<[f64; 2]>> },
}

/// A parsed and validated StateFile.
pub enum LoadedState {
    Pure(PureState),
    Density(DensityMatrix),
}

impl LoadedState {
    pub fn kind(&self) -> &'static str {
        match self {
            LoadedState::Pure(_) => "pure",
            LoadedState::Density(_) => "density",
        }
    }

    pub fn density(&self) -> DensityMatrix {
        match self {
            LoadedState::Pure(psi) => psi.density(),
            LoadedState::Density(rho) => rho.clone(),
        }
    }
}

/// Parses and validates a StateFile document.
pub fn parse_state(text: &str) -> Result<LoadedState, String> {
    let raw: RawStateFile =
        serde_json::from_str(text).map_err(|e| format!("invalid StateFile JSON: {e}"))?;
    match raw {
        RawStateFile::Pure { d, data } => {
            let n = checked_square(d)?;
            if data.len() != n {
                return Err(format!(
                    "pure data has {} amplitudes, expected {n} for d = {d}",
                    data.len()
                ));
            }
            let amps = data.iter().map(|&[re, im]| Complex64::new(re, im)).collect();
            PureState::new(d, amps)
                .map(LoadedState::Pure)
                .map_err(|e| format!("invalid pure state: {e}"))
        }
        RawStateFile::Density { d, data } => {
            let n = checked_square(d)?;
            if data.len() != n {
                return Err(format!(
                    "density data has {} rows, expected {n} for d = {d}",
                    data.len()
                ));
            }
            for (i, row) in data.iter().enumerate() {
                if row.len() != n {
                    return Err(format!("density row {i} has {} entries, expected {n}", row.len()));
                }
            }
            let entries = data
                .iter()
                .flatten()
                .map(|&[re, im]| Complex64::new(re, im))
                .collect();
            let matrix = ComplexMatrix::new(n, n, entries)
                .map_err(|e| format!("invalid density data: {e}"))?;
            validate_density(matrix, d)
                .map(LoadedState::Density)
                .map_err(|e| format!("invalid density matrix: {e}"))
        }
    }
}

fn checked_square(d: usize) -> Result<usize, String> {
    d.checked_mul(d).ok_or_else(|| format!("dimension {d} is too large"))
}

/// Decimal form with 17 significant digits, enough to reproduce any f64 exactly.
pub(crate) fn number(x: f64) -> String {
    format!("{x:.16e}")
}

fn pair(z: Complex64) -> String {
    format!("[{}, {}]", number(z.re), number(z.im))
}

/// Renders a pure state as a StateFile document.
pub fn pure_document(psi: &PureState) -> String {
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"d\": {},", psi.d());
    out.push_str("  \"kind\": \"pure\",\n");
    out.push_str("  \"data\": [\n");
    let amps = psi.amplitudes();
    for (i, z) in amps.iter().enumerate() {
        let sep = if i + 1 < amps.len() { "," } else { "" };
        let _ = writeln!(out, "    {}{sep}", pair(*z));
    }
    out.push_str("  ]\n}\n");
    out
}

/// Renders a density matrix as a StateFile document, one matrix row per line.
pub fn density_document(rho: &DensityMatrix) -> String {
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"d\": {},", rho.d());
    out.push_str("  \"kind\": \"density\",\n");
    out.push_str("  \"data\": [\n");
    let matrix = rho.matrix();
    let n = matrix.rows();
    for i in 0..n {
        let row: Vec<String> = (0..n).map(|j| pair(matrix.get(i, j))).collect();
        let sep = if i + 1 < n { "," } else { "" };
        let _ = writeln!(out, "    [{}]{sep}", row.join(", "));
    }
    out.push_str("  ]\n}\n");
    out
}

/// Renders a unitary matrix in the same pair notation, one row per line.
pub fn unitary_document(u: &ComplexMatrix) -> String {
    let mut out = String::new();
    out.push_str("{\n");
    let _ = writeln!(out, "  \"d\": {},", u.rows());
    out.push_str("  \"kind\": \"unitary\",\n");
    out.push_str("  \"data\": [\n");
    let n = u.rows();
    for i in 0..n {
        let row: Vec<String> = (0..n).map(|j| pair(u.get(i, j))).collect();
        let sep = if i + 1 < n { "," } else { "" };
        let _ = writeln!(out, "    [{}]{sep}", row.join(", "));
    }
    out.push_str("  ]\n}\n");
    out
}
