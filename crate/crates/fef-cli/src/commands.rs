//! The compute, family, and random subcommands.

use crate::detect::{self, Family};
use crate::statefile::{self, number, LoadedState};
use crate::{CliError, ComputeArgs, FamilyArgs, FamilyKind, Method, RandomArgs, RandomKind};
use fef_core::exact::{fef_isotropic, fef_werner, teleportation_fidelity};
use fef_core::linalg::hermitian_eig;
use fef_core::numeric::fef_maximize;
use fef_core::states::{isotropic, random_density, random_pure, werner};
use fef_core::{DensityMatrix, FefError, OptimizerConfig};
use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::time::Instant;

/// Largest local dimension accepted for generated states and family scans.
const MAX_GENERATED_D: usize = 32;

pub fn compute(args: &ComputeArgs) -> Result<(), CliError> {
    let started = Instant::now();
    let config = optimizer_config(args.restarts, args.tol, args.seed)?;
    if args.emit_unitary.is_some() && args.method == Method::Exact {
        return Err(CliError::Input(
            "--emit-unitary needs the optimizer; use --method numeric or both".to_string(),
        ));
    }

    let text = read_file(&args.input)?;
    let state = statefile::parse_state(&text).map_err(CliError::Input)?;
    let rho = state.density();
    let d = rho.d();

    let family = match &state {
        LoadedState::Pure(psi) => Some(Family::Pure(psi.clone())),
        LoadedState::Density(rho) => detect::detect(rho),
    };
    let exact = match args.method {
        Method::Numeric => None,
        Method::Exact | Method::Both => family.as_ref().map(|fam| fam.fef_exact(d)),
    };
    if args.method == Method::Exact && exact.is_none() {
        return Err(CliError::ExactUnavailable(
            "no closed form: the state is mixed and matches neither the isotropic nor the \
             Werner family (try --method numeric)"
                .to_string(),
        ));
    }

    let numeric = match args.method {
        Method::Exact => None,
        Method::Numeric | Method::Both => Some(fef_maximize(&rho, &config)),
    };

    let spectral = hermitian_eig(rho.matrix())
        .expect("validated density matrix")
        .eigenvalues[0];
    let best = exact.unwrap_or_else(|| numeric.as_ref().expect("some method ran").value);
    let (fidelity, useful) = teleportation_fidelity(best, d).expect("fef is in range");

    let mut report = String::new();
    let _ = writeln!(
        report,
        "state: {} (kind = {}, d = {d})",
        args.input.display(),
        state.kind()
    );
    let _ = writeln!(
        report,
        "family: {}",
        family
            .as_ref()
            .map_or("none recognized".to_string(), Family::describe)
    );
    match exact {
        Some(v) => {
            let _ = writeln!(report, "fef_exact: {}", number(v));
        }
        None if args.method == Method::Both => {
            let _ = writeln!(report, "fef_exact: unavailable (no recognized closed form)");
        }
        None => {}
    }
    if let Some(result) = &numeric {
        let _ = writeln!(report, "fef_numeric: {}", number(result.value));
        if let Some(v) = exact {
            let _ = writeln!(report, "gap: {:.3e}", (v - result.value).abs());
        }
    }
    let _ = writeln!(report, "fef_range: [{}, 1]", number(1.0 / (d * d) as f64));
    let _ = writeln!(report, "spectral_bound: {}", number(spectral));
    let _ = writeln!(report, "teleportation_fidelity: {}", number(fidelity));
    let _ = writeln!(report, "useful_for_teleportation: {useful}");
    if let Some(result) = &numeric {
        let _ = writeln!(report, "converged: {}", result.converged);
        let _ = writeln!(report, "iterations: {}", result.iterations_total);
        let _ = writeln!(report, "restarts_used: {}", result.restarts_used);
    }
    let _ = writeln!(report, "seed: {}", args.seed);
    let _ = writeln!(
        report,
        "elapsed_ms: {:.3}",
        started.elapsed().as_secs_f64() * 1e3
    );
    print!("{report}");

    if let (Some(path), Some(result)) = (&args.emit_unitary, &numeric) {
        write_file(path, &statefile::unitary_document(&result.optimal_unitary))?;
        println!("optimal_unitary: written to {}", path.display());
    }
    Ok(())
}

pub fn family_scan(args: &FamilyArgs) -> Result<(), CliError> {
    check_dimension(args.d)?;
    if args.steps == 0 {
        return Err(CliError::Input("--steps must be at least 1".to_string()));
    }
    let (lo, hi) = match args.family {
        FamilyKind::Isotropic => (0.0, 1.0),
        FamilyKind::Werner => (-1.0, 1.0),
    };
    if !(args.f_min <= args.f_max) || args.f_min < lo || args.f_max > hi {
        return Err(CliError::Input(format!(
            "f range [{}, {}] must satisfy {lo} <= f-min <= f-max <= {hi} for the {} family",
            args.f_min,
            args.f_max,
            family_name(args.family)
        )));
    }

    let config = OptimizerConfig {
        seed: args.seed,
        ..OptimizerConfig::default()
    };
    let mut csv = String::from("f,fef_exact,fef_numeric,abs_err,teleport_fidelity,useful\n");
    for i in 0..args.steps {
        let f = if args.steps == 1 {
            args.f_min
        } else {
            let t = i as f64 / (args.steps - 1) as f64;
            (args.f_min + (args.f_max - args.f_min) * t).clamp(args.f_min, args.f_max)
        };
        let (exact, rho) =
            family_point(args.family, args.d, f).map_err(|e| CliError::Input(e.to_string()))?;
        let numeric = fef_maximize(&rho, &config).value;
        let (fidelity, useful) = teleportation_fidelity(exact, args.d).expect("closed form in range");
        let _ = writeln!(
            csv,
            "{},{},{},{},{},{useful}",
            number(f),
            number(exact),
            number(numeric),
            number((exact - numeric).abs()),
            number(fidelity)
        );
    }
    write_file(&args.output, &csv)?;
    println!("wrote {} rows to {}", args.steps, args.output.display());
    Ok(())
}

pub fn random_state(args: &RandomArgs) -> Result<(), CliError> {
    check_dimension(args.d)?;
    let (text, kind_name) = match args.kind {
        RandomKind::Pure => {
            if args.rank.is_some() {
                return Err(CliError::Input(
                    "--rank applies only to --kind density".to_string(),
                ));
            }
            let psi =
                random_pure(args.d, args.seed).map_err(|e| CliError::Input(e.to_string()))?;
            (statefile::pure_document(&psi), "pure")
        }
        RandomKind::Density => {
            let rank = args.rank.unwrap_or(args.d * args.d);
            let rho = random_density(args.d, rank, args.seed)
                .map_err(|e| CliError::Input(e.to_string()))?;
            (statefile::density_document(&rho), "density")
        }
    };
    write_file(&args.output, &text)?;
    println!(
        "wrote {kind_name} state (d = {}, seed = {}) to {}",
        args.d,
        args.seed,
        args.output.display()
    );
    Ok(())
}

pub fn optimizer_config(restarts: usize, tol: f64, seed: u64) -> Result<OptimizerConfig, CliError> {
    if restarts == 0 {
        return Err(CliError::Input("--restarts must be at least 1".to_string()));
    }
    if !(tol > 0.0 && tol < 1.0) {
        return Err(CliError::Input("--tol must lie in (0, 1)".to_string()));
    }
    Ok(OptimizerConfig {
        restarts,
        tolerance: tol,
        seed,
        ..OptimizerConfig::default()
    })
}

fn check_dimension(d: usize) -> Result<(), CliError> {
    if !(2..=MAX_GENERATED_D).contains(&d) {
        return Err(CliError::Input(format!(
            "--d must be between 2 and {MAX_GENERATED_D}"
        )));
    }
    Ok(())
}

fn family_point(kind: FamilyKind, d: usize, f: f64) -> Result<(f64, DensityMatrix), FefError> {
    match kind {
        FamilyKind::Isotropic => Ok((fef_isotropic(d, f)?, isotropic(d, f)?)),
        FamilyKind::Werner => Ok((fef_werner(d, f)?, werner(d, f)?)),
    }
}

fn family_name(kind: FamilyKind) -> &'static str {
    match kind {
        FamilyKind::Isotropic => "isotropic",
        FamilyKind::Werner => "werner",
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text)
        .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))
}
