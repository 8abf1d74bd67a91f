//! Randomized verification suites. Every property prints one line with its
//! pass/fail status, the worst observed violation (negative values mean the
//! check held with margin), the tolerance, and the base seed.

use crate::statefile::number;
use crate::{CliError, Suite, VerifyArgs};
use fef_core::exact::{
    concurrence_pure, decomposition_equality_check, fef_pure, geometric_measure_pure,
    mixture_upper_bound, negativity, normalized_superposition, superposition_bounds,
};
use fef_core::linalg::Complex64;
use fef_core::numeric::fef_maximize;
use fef_core::rng::GaussianSource;
use fef_core::states::{isotropic, max_entangled, mixture, random_density, random_pure};
use fef_core::{OptimizerConfig, PureState};

struct Property {
    name: String,
    worst: f64,
    tolerance: f64,
    detail: String,
}

impl Property {
    fn new(name: &str, worst: f64, tolerance: f64) -> Self {
        Self {
            name: name.to_string(),
            worst,
            tolerance,
            detail: String::new(),
        }
    }

    fn with_detail(mut self, detail: String) -> Self {
        self.detail = detail;
        self
    }

    fn passes(&self) -> bool {
        self.worst <= self.tolerance
    }
}

pub fn run(args: &VerifyArgs) -> Result<(), CliError> {
    if !(2..=6).contains(&args.d) {
        return Err(CliError::Input("--d must be between 2 and 6".to_string()));
    }
    if args.samples == 0 {
        return Err(CliError::Input("--samples must be at least 1".to_string()));
    }
    let config = OptimizerConfig {
        seed: args.seed,
        ..OptimizerConfig::default()
    };

    let mut props = Vec::new();
    if matches!(args.suite, Suite::Bounds | Suite::All) {
        bounds_suite(args, &config, &mut props);
    }
    if matches!(args.suite, Suite::Relations | Suite::All) {
        relations_suite(args, &mut props);
    }
    if matches!(args.suite, Suite::Mixtures | Suite::All) {
        mixtures_suite(args, &config, &mut props);
    }
    if matches!(args.suite, Suite::Superposition | Suite::All) {
        superposition_suite(args, &mut props);
    }

    let mut failed = 0usize;
    for p in &props {
        if !p.passes() {
            failed += 1;
        }
        let tag = if p.passes() { "[pass]" } else { "[FAIL]" };
        let mut line = format!(
            "{tag} {:<32} worst {:>12} (tolerance {:.0e}, seed {})",
            p.name,
            format!("{:.3e}", p.worst),
            p.tolerance,
            args.seed
        );
        if !p.detail.is_empty() {
            line.push(' ');
            line.push_str(&p.detail);
        }
        println!("{line}");
    }
    println!(
        "{} of {} properties passed (suite = {}, d = {}, samples = {})",
        props.len() - failed,
        props.len(),
        suite_name(args.suite),
        args.d,
        args.samples
    );
    if failed > 0 {
        Err(CliError::VerificationFailed(failed))
    } else {
        Ok(())
    }
}

fn bounds_suite(args: &VerifyArgs, config: &OptimizerConfig, props: &mut Vec<Property>) {
    let d = args.d;
    let floor = 1.0 / (d * d) as f64;
    let mut range_worst = f64::NEG_INFINITY;
    let mut cert_worst = f64::NEG_INFINITY;
    for trial in 0..args.samples {
        let rank = (trial as usize % (d * d)) + 1;
        let rho = random_density(d, rank, args.seed.wrapping_add(11_000).wrapping_add(trial))
            .expect("dimension is validated");
        let result = fef_maximize(&rho, config);
        range_worst = range_worst
            .max(floor - result.value)
            .max(result.value - 1.0);
        cert_worst = cert_worst.max(result.value - result.spectral_bound);
    }
    props.push(Property::new("bounds/range", range_worst, 1e-9));
    props.push(Property::new(
        "bounds/spectral-certificate",
        cert_worst,
        1e-9,
    ));

    let white = fef_maximize(&isotropic(d, floor).expect("floor is in domain"), config).value;
    props.push(
        Property::new("bounds/white-noise-point", (white - floor).abs(), 1e-6)
            .with_detail(format!("value {}", number(white))),
    );

    let mes = max_entangled(d).expect("dimension is validated");
    let top = fef_maximize(&mes.density(), config).value;
    props.push(
        Property::new("bounds/max-entangled-point", (top - 1.0).abs(), 1e-9)
            .with_detail(format!("value {}", number(top))),
    );
}

fn relations_suite(args: &VerifyArgs, props: &mut Vec<Property>) {
    let d = args.d;
    let df = d as f64;
    let mut neg_worst = f64::NEG_INFINITY;
    let mut geo_cap_worst = f64::NEG_INFINITY;
    let mut top_floor_worst = f64::NEG_INFINITY;
    let mut conc_floor_worst = f64::NEG_INFINITY;
    let mut geo_range_worst = f64::NEG_INFINITY;
    for trial in 0..args.samples {
        let psi = random_pure(d, args.seed.wrapping_add(22_000).wrapping_add(trial))
            .expect("dimension is validated");
        let fef = fef_pure(&psi);
        let (geo, top) = geometric_measure_pure(&psi);
        let conc = concurrence_pure(&psi);

        let neg = negativity(&psi.density());
        neg_worst = neg_worst.max((neg - (df * fef - 1.0) / 2.0).abs());
        geo_cap_worst = geo_cap_worst.max(fef - df * (1.0 - geo));
        top_floor_worst = top_floor_worst.max(fef - df * top);
        let conc_bound = (2.0 / (df * (df - 1.0))).sqrt() * (df * fef - 1.0);
        conc_floor_worst = conc_floor_worst.max(conc_bound - conc);
        geo_range_worst = geo_range_worst.max(-geo).max(geo - (df - 1.0) / df);
    }
    props.push(Property::new(
        "relations/negativity-identity",
        neg_worst,
        1e-9,
    ));
    props.push(Property::new("relations/geometric-cap", geo_cap_worst, 1e-9));
    props.push(Property::new(
        "relations/top-weight-floor",
        top_floor_worst,
        1e-9,
    ));
    props.push(Property::new(
        "relations/concurrence-floor",
        conc_floor_worst,
        1e-9,
    ));
    props.push(Property::new(
        "relations/geometric-range",
        geo_range_worst,
        1e-12,
    ));
}

fn mixtures_suite(args: &VerifyArgs, config: &OptimizerConfig, props: &mut Vec<Property>) {
    let d = args.d;
    let mut cap_worst = f64::NEG_INFINITY;
    for trial in 0..args.samples {
        let mut source =
            GaussianSource::from_seed(args.seed.wrapping_add(33_000).wrapping_add(trial));
        let weights = source.weights(3);
        let pures: Vec<PureState> = (0..3)
            .map(|j| {
                random_pure(
                    d,
                    args.seed
                        .wrapping_add(34_000)
                        .wrapping_add(3 * trial)
                        .wrapping_add(j),
                )
                .expect("dimension is validated")
            })
            .collect();
        let bound = mixture_upper_bound(&weights, &pures).expect("matching components");
        let rho = mixture(&weights, &pures).expect("matching components");
        cap_worst = cap_worst.max(fef_maximize(&rho, config).value - bound);
    }
    props.push(Property::new("mixtures/weighted-sum-cap", cap_worst, 1e-8));

    let mut value_worst = f64::NEG_INFINITY;
    let mut equality_worst = f64::NEG_INFINITY;
    for trial in 0..args.samples {
        let mut source =
            GaussianSource::from_seed(args.seed.wrapping_add(35_000).wrapping_add(trial));
        let sigma = source.permutation(d);
        let weights = source.weights(d);
        let components: Vec<PureState> = (0..d).map(|i| basis_state(d, i * d + sigma[i])).collect();
        let check = decomposition_equality_check(&weights, &components, config)
            .expect("valid decomposition");
        value_worst = value_worst.max((check.fef_mixture - 1.0 / d as f64).abs());
        equality_worst = equality_worst.max((check.fef_mixture - check.weighted_pure_sum).abs());
    }
    props.push(Property::new(
        "mixtures/permutation-value",
        value_worst,
        1e-6,
    ));
    props.push(Property::new(
        "mixtures/permutation-equality",
        equality_worst,
        1e-6,
    ));
}

fn superposition_suite(args: &VerifyArgs, props: &mut Vec<Property>) {
    let d = args.d;
    let mut sandwich_worst = f64::NEG_INFINITY;
    for trial in 0..args.samples {
        let (phi1, phi2) =
            orthonormal_pair(d, args.seed.wrapping_add(44_000).wrapping_add(2 * trial));
        let mut source =
            GaussianSource::from_seed(args.seed.wrapping_add(46_000).wrapping_add(trial));
        let (za, zb) = (source.complex_gaussian(), source.complex_gaussian());
        let norm = (za.norm_sqr() + zb.norm_sqr()).sqrt();
        let (alpha, beta) = (za / norm, zb / norm);

        let bounds = superposition_bounds(alpha, beta, &phi1, &phi2).expect("nondegenerate");
        let (psi, gamma) =
            normalized_superposition(alpha, beta, &phi1, &phi2).expect("nondegenerate");
        let reached = gamma * fef_pure(&psi).sqrt();
        sandwich_worst = sandwich_worst
            .max(bounds.lower - reached)
            .max(reached - bounds.upper);
    }
    props.push(Property::new(
        "superposition/sandwich",
        sandwich_worst,
        1e-8,
    ));

    let half = std::f64::consts::FRAC_1_SQRT_2;
    let coeff = Complex64::new(half, 0.0);
    let ket00 = basis_state(2, 0);
    let ket11 = basis_state(2, 3);
    let bounds = superposition_bounds(coeff, coeff, &ket00, &ket11).expect("nondegenerate");
    let (psi, gamma) = normalized_superposition(coeff, coeff, &ket00, &ket11).expect("nondegenerate");
    let reached = gamma * fef_pure(&psi).sqrt();
    props.push(Property::new(
        "superposition/boundary-upper",
        (reached - bounds.upper).abs().max((bounds.upper - 1.0).abs()),
        1e-12,
    ));

    let minus = PureState::new(
        2,
        vec![
            Complex64::new(half, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(-half, 0.0),
        ],
    )
    .expect("normalized");
    let alpha = Complex64::new((2.0f64 / 3.0).sqrt(), 0.0);
    let beta = Complex64::new((1.0f64 / 3.0).sqrt(), 0.0);
    let bounds = superposition_bounds(alpha, beta, &minus, &ket11).expect("nondegenerate");
    let (psi, gamma) = normalized_superposition(alpha, beta, &minus, &ket11).expect("nondegenerate");
    let reached = gamma * fef_pure(&psi).sqrt();
    props.push(Property::new(
        "superposition/boundary-lower",
        (reached - bounds.lower)
            .abs()
            .max((bounds.lower - 1.0 / 6.0f64.sqrt()).abs()),
        1e-12,
    ));
}

fn basis_state(d: usize, index: usize) -> PureState {
    let mut amps = vec![Complex64::new(0.0, 0.0); d * d];
    amps[index] = Complex64::new(1.0, 0.0);
    PureState::new(d, amps).expect("unit basis vector")
}

fn orthonormal_pair(d: usize, seed: u64) -> (PureState, PureState) {
    let phi1 = random_pure(d, seed).expect("dimension is validated");
    let raw = random_pure(d, seed.wrapping_add(1)).expect("dimension is validated");
    let overlap = phi1.inner(&raw);
    let amps: Vec<Complex64> = raw
        .amplitudes()
        .iter()
        .zip(phi1.amplitudes())
        .map(|(b, a)| b - overlap * a)
        .collect();
    let norm = amps.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    assert!(norm > 1e-6, "sampled states were nearly parallel");
    let phi2 = PureState::new(d, amps.into_iter().map(|z| z / norm).collect())
        .expect("normalized by construction");
    (phi1, phi2)
}

fn suite_name(suite: Suite) -> &'static str {
    match suite {
        Suite::Bounds => "bounds",
        Suite::Relations => "relations",
        Suite::Mixtures => "mixtures",
        Suite::Superposition => "superposition",
        Suite::All => "all",
    }
}
