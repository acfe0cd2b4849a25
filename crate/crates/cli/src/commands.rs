use std::fmt;
use std::path::Path;

use hshift::fitting::{density_grid, fit_coefficients, load_measurements, synthesize_dataset, write_measurements};
use hshift::hyperfine::{high_field_states, level_crossing_field, mixing_angle, parse_pair, solve_states};
use hshift::interaction::{coupling_table, pair_channel_weights};
use hshift::num::KetScalar;
use hshift::shifts::{
    clock_shift, compare_to_theory, evaluate_shift, extract_delta_a, field_shift_coefficient, model_ratio,
};
use hshift::spinalg::{antisymmetrize, channel_weights, symmetrize, tensor, to_coupled, AtomLabel, Components};
use hshift::units::{GAUSS, PER_CM3, PM};
use hshift::{
    DensitySet, Error, FieldShiftCoefficient, FieldSpec, HyperfineStates, InteractionModel, Params, Pseudopotential,
    QSqrt2, SpinKet, StateLabel, Transition,
};

use crate::output::{Record, Value};
use crate::{Cli, Command};

/// Reference value of a_t - a_s used for the consistency note (pm).
const REFERENCE_DELTA_A_PM: (f64, f64) = (30.0, 5.0);

#[derive(Debug)]
pub enum CliError {
    /// Invalid flag values; exit code 2.
    Usage(String),
    /// Exit code 1.
    Failure(Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) => f.write_str(msg),
            CliError::Failure(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidInput(msg) => CliError::Usage(msg),
            other => CliError::Failure(other),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn params(constants: Option<&Path>) -> CliResult<Params> {
    match constants {
        Some(path) => Params::load(path).map_err(|e| CliError::Usage(format!("constants: {e}"))),
        None => Ok(Params::hydrogen()),
    }
}

pub fn run(cli: &Cli) -> CliResult<Vec<Record>> {
    let p = params(cli.constants.as_deref())?;
    match &cli.command {
        Command::States { field } => states(&p, *field),
        Command::Decompose { pair, symmetrize: _, antisymmetrize, product, field } => {
            let mode = if *antisymmetrize {
                PairMode::Antisymmetrize
            } else if *product {
                PairMode::Product
            } else {
                PairMode::Symmetrize
            };
            decompose(&p, pair, mode, field.field())
        }
        Command::Shift { transition, model, na, nb, nc, nd, scattering, field } => {
            let n = densities([*na, *nb, *nc, *nd])?;
            shift(&p, *transition, *model, &n, scattering.a_s, scattering.a_t, field.field())
        }
        Command::ExtractDa { c, units, sigma } => {
            let c = FieldShiftCoefficient::new(*c, *units)?;
            let sigma = sigma.map(|s| FieldShiftCoefficient::new(s, *units)).transpose()?;
            extract(&p, c, sigma, &units.to_string())
        }
        Command::Fit { input, transition } => fit(input, *transition),
        Command::Synth { transition, c_cross, c_self, noise, seed, n_bath_max, n_self_max, levels, out } => synth(
            *transition,
            *c_cross,
            *c_self,
            *noise,
            *seed,
            (*n_bath_max, *n_self_max, *levels),
            out.as_deref(),
        ),
        Command::CompareModels { transition, scattering, n_bath, report } => {
            compare_models(&p, *transition, scattering.a_s, scattering.a_t, *n_bath, *report)
        }
    }
}

fn field_value(field: Option<f64>) -> Value {
    match field {
        Some(b) => Value::Num(b),
        None => Value::from("high-field"),
    }
}

fn pseudopotential(p: &Params, a_s_pm: f64, a_t_pm: f64) -> CliResult<Pseudopotential<f64>> {
    Ok(Pseudopotential::new(a_s_pm * PM, a_t_pm * PM, p.mass, p.hbar)?)
}

fn densities(cm3: [f64; 4]) -> CliResult<DensitySet<f64>> {
    let [a, b, c, d] = cm3.map(|n| n * PER_CM3);
    Ok(DensitySet::new(a, b, c, d)?)
}

/// `C_xy` for the coefficient of ΔB_transition per density of `species`.
fn coefficient_name(transition: Transition, species: StateLabel) -> String {
    format!("C_{}{}", transition.initial, species)
}

fn states(p: &Params, field: f64) -> CliResult<Vec<Record>> {
    let solved = solve_states(p, field)?;
    let mut records: Vec<Record> = solved
        .iter()
        .map(|s| {
            let energy = s.energy.expect("solved states carry energies");
            let mut r = Record::new("state")
                .with("state", s.label.to_string())
                .with("energy_rad_s", energy)
                .with("energy_hz", energy / std::f64::consts::TAU);
            for (label, amp) in AtomLabel::ALL.iter().zip(s.ket.amplitudes()) {
                r = r.with(&amplitude_key(*label), *amp);
            }
            r.with("epsilon_rad", s.epsilon)
        })
        .collect();
    let energies: Vec<f64> = solved.iter().filter_map(|s| s.energy).collect();
    let spread = energies.iter().cloned().fold(f64::NEG_INFINITY, f64::max)
        - energies.iter().cloned().fold(f64::INFINITY, f64::min);
    records.push(
        Record::new("levels")
            .with("field_T", field)
            .with("epsilon_rad", mixing_angle(p, field))
            .with("hyperfine_A_rad_s", p.hyperfine_a)
            .with("spread_rad_s", spread)
            .with("cd_crossing_field_T", level_crossing_field(p).map(Value::Num).unwrap_or(Value::from("none"))),
    );
    Ok(records)
}

fn amplitude_key(label: AtomLabel) -> String {
    let name = |s: hshift::Spin| if s == hshift::Spin::Up { "up" } else { "down" };
    format!("amp_{}_{}", name(label.electron), name(label.nucleus))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum PairMode {
    Symmetrize,
    Antisymmetrize,
    Product,
}

impl PairMode {
    fn name(self) -> &'static str {
        match self {
            PairMode::Symmetrize => "symmetrized",
            PairMode::Antisymmetrize => "antisymmetrized",
            PairMode::Product => "product",
        }
    }
}

fn decompose(p: &Params, pair: &str, mode: PairMode, field: Option<f64>) -> CliResult<Vec<Record>> {
    let (x, y) = parse_pair(pair)?;
    match field {
        None => decompose_with(&high_field_states::<QSqrt2>(), x, y, mode, field),
        Some(b) => decompose_with(&solve_states(p, b)?, x, y, mode, field),
    }
}

fn decompose_with<S: KetScalar>(
    states: &HyperfineStates<S>,
    x: StateLabel,
    y: StateLabel,
    mode: PairMode,
    field: Option<f64>,
) -> CliResult<Vec<Record>> {
    let (left, right) = (&states[x].ket, &states[y].ket);
    let ket: SpinKet<S> = match mode {
        PairMode::Symmetrize => symmetrize(left, right)?,
        PairMode::Antisymmetrize => antisymmetrize(left, right)?,
        PairMode::Product => tensor(left, right)?,
    };
    let pair = format!("{x}{y}");
    let base = || {
        Record::new("term").with("pair", pair.as_str()).with("mode", mode.name()).with("field_T", field_value(field))
    };
    if ket.is_zero() {
        return Ok(vec![base().with("term", "zero ket").with("amplitude", "0").with("value", 0.0)]);
    }
    let coupled = to_coupled(&ket)?;
    let mut records: Vec<Record> = coupled
        .terms()
        .map(|(label, c)| {
            base().with("term", label.to_string()).with("amplitude", c.fmt_amplitude()).with("value", c.to_f64())
        })
        .collect();
    let w = channel_weights(&ket, Components::All)?;
    records.push(
        Record::new("channels")
            .with("pair", pair.as_str())
            .with("mode", mode.name())
            .with("electron_singlet_weight", w.singlet.to_f64())
            .with("electron_triplet_weight", w.triplet.to_f64()),
    );
    Ok(records)
}

fn shift(
    p: &Params,
    transition: Transition,
    model: InteractionModel,
    n: &DensitySet<f64>,
    a_s: f64,
    a_t: f64,
    field: Option<f64>,
) -> CliResult<Vec<Record>> {
    let pp = pseudopotential(p, a_s, a_t)?;
    let spec = field.map(FieldSpec::Tesla).unwrap_or(FieldSpec::HighField);
    let result = evaluate_shift(transition, model, n, &pp, p, spec)?;
    let mut r = Record::new("shift")
        .with("transition", transition.to_string())
        .with("model", model.short_name())
        .with("field_T", field_value(field))
        .with("a_s_pm", a_s)
        .with("a_t_pm", a_t)
        .with("a_s_minus_a_t_pm", a_s - a_t);
    for label in StateLabel::ALL {
        r = r.with(&format!("n_{label}_cm3"), n.get(label) / PER_CM3);
    }
    r = r.with("delta_f_hz", result.delta_omega / std::f64::consts::TAU).with("delta_B_G", result.delta_b / GAUSS);
    for (key, value) in result.record() {
        r = r.with(key, value);
    }
    Ok(vec![r
        .with("C_name", coefficient_name(transition, transition.bath))
        .with("C_self_name", coefficient_name(transition, transition.self_species()))])
}

fn extract(
    p: &Params,
    c: FieldShiftCoefficient<f64>,
    sigma: Option<FieldShiftCoefficient<f64>>,
    units: &str,
) -> CliResult<Vec<Record>> {
    let measured = extract_delta_a(c, sigma, p)?;
    let band = compare_to_theory(measured.value);
    let (da, sigma_pm) = (measured.value / PM, measured.sigma / PM);
    let (reference, reference_sigma) = REFERENCE_DELTA_A_PM;
    let joint = sigma_pm.hypot(reference_sigma);
    let pull = (da - reference) / joint;
    let consistency = if pull.abs() <= 1.0 {
        format!("consistent with {reference}({reference_sigma}) pm within 1 joint sigma ({pull:+.2})")
    } else if pull.abs() <= 2.0 {
        format!("consistent with {reference}({reference_sigma}) pm within 2 joint sigma ({pull:+.2})")
    } else {
        format!("differs from {reference}({reference_sigma}) pm by {pull:+.2} joint sigma")
    };
    Ok(vec![
        Record::new("delta_a")
            .with("units", units)
            .with("C_m3_per_T", c.m3_tesla())
            .with("C_cm3_gauss", c.cm3_gauss())
            .with("delta_a_pm", da)
            .with("sigma_pm", sigma_pm)
            .with("delta_a_m", measured.value)
            .with("sigma_m", measured.sigma)
            .with("theory_band", band.position.to_string())
            .with("theory_low_pm", band.range.0 / PM)
            .with("theory_high_pm", band.range.1 / PM)
            .with("reference_pm", reference)
            .with("reference_sigma_pm", reference_sigma)
            .with("reference_pull", pull),
        Record::new("note").with("text", consistency),
        Record::new("note").with(
            "text",
            "C = 2*pi*hbar*delta_a/(gamma_e*m) with gamma_e in rad/s/T; \
             the same relation reads hbar*delta_a/(gamma_e*m) with gamma_e in Hz/T",
        ),
    ])
}

fn fit(input: &Path, transition: Transition) -> CliResult<Vec<Record>> {
    let rows = load_measurements::<f64>(input).map_err(CliError::Failure)?;
    let fit = fit_coefficients(&rows, transition).map_err(CliError::Failure)?;
    let cov = fit.covariance_cm6();
    Ok(vec![Record::new("fit")
        .with("transition", transition.to_string())
        .with("rows", fit.dof + 2)
        .with("C_cross_name", coefficient_name(transition, transition.bath))
        .with("C_cross_cm3_gauss", fit.c_cross.cm3_gauss())
        .with("sigma_C_cross_cm3_gauss", fit.sigma_cross().cm3_gauss())
        .with("C_self_name", coefficient_name(transition, transition.self_species()))
        .with("C_self_cm3_gauss", fit.c_self.cm3_gauss())
        .with("sigma_C_self_cm3_gauss", fit.sigma_self().cm3_gauss())
        .with("cov_cross_cross_cm6", cov[0][0])
        .with("cov_cross_self_cm6", cov[0][1])
        .with("cov_self_self_cm6", cov[1][1])
        .with("C_cross_m3_per_T", fit.c_cross.m3_tesla())
        .with("C_self_m3_per_T", fit.c_self.m3_tesla())
        .with("chi2", fit.chi2)
        .with("dof", fit.dof)
        .with("chi2_per_dof", fit.reduced_chi2().unwrap_or(f64::NAN))])
}

fn synth(
    transition: Transition,
    c_cross: f64,
    c_self: f64,
    noise_gauss: f64,
    seed: u64,
    (n_bath_max, n_self_max, levels): (f64, f64, usize),
    out: Option<&Path>,
) -> CliResult<Vec<Record>> {
    if levels == 0 {
        return Err(CliError::Usage("levels must be ≥ 1".into()));
    }
    if !(n_bath_max > 0.0 && n_self_max >= 0.0) {
        return Err(CliError::Usage("n-bath-max must be > 0 and n-self-max ≥ 0".into()));
    }
    let axis = |max: f64| -> Vec<f64> { (1..=levels).map(|i| max * PER_CM3 * i as f64 / levels as f64).collect() };
    let grid = density_grid(&axis(n_bath_max), &axis(n_self_max));
    let cgs = |x| FieldShiftCoefficient::new(x, hshift::CoefficientUnits::Cm3Gauss);
    let rows = synthesize_dataset(transition, cgs(c_cross)?, cgs(c_self)?, &grid, noise_gauss * GAUSS, seed)?;
    match out {
        None => {
            write_measurements(&rows, std::io::stdout().lock()).map_err(CliError::Failure)?;
            Ok(Vec::new())
        }
        Some(path) => {
            let file = std::fs::File::create(path)
                .map_err(|source| CliError::Failure(Error::Io { path: path.to_path_buf(), source }))?;
            write_measurements(&rows, std::io::BufWriter::new(file)).map_err(CliError::Failure)?;
            Ok(vec![Record::new("synth")
                .with("path", path.display().to_string())
                .with("transition", transition.to_string())
                .with("rows", rows.len())
                .with("seed", seed)
                .with("noise_G", noise_gauss)])
        }
    }
}

fn compare_models(
    p: &Params,
    transition: Transition,
    a_s: f64,
    a_t: f64,
    n_bath_cm3: f64,
    report: bool,
) -> CliResult<Vec<Record>> {
    let pp = pseudopotential(p, a_s, a_t)?;
    let hf = high_field_states::<QSqrt2>();
    let n = DensitySet::only(transition.bath, n_bath_cm3 * PER_CM3)?;
    let sym = clock_shift(InteractionModel::Symmetrized, transition, &n, &pp, &hf)?;
    let dist = clock_shift(InteractionModel::Distinguishable, transition, &n, &pp, &hf)?;
    let ratio = match model_ratio(transition, &n, &pp, &hf)? {
        Some(r) => Value::Num(r),
        None if sym == 0.0 => Value::from("ratio undefined (both shifts zero)"),
        None => Value::from("ratio undefined (distinguishable shift zero)"),
    };
    let mut records = vec![Record::new("ratio")
        .with("transition", transition.to_string())
        .with("bath", transition.bath.to_string())
        .with("n_bath_cm3", n_bath_cm3)
        .with("a_s_pm", a_s)
        .with("a_t_pm", a_t)
        .with("delta_omega_sym_rad_s", sym)
        .with("delta_omega_dist_rad_s", dist)
        .with("ratio", ratio)];

    let tables = [
        coupling_table(InteractionModel::Symmetrized, &hf, &pp)?,
        coupling_table(InteractionModel::Distinguishable, &hf, &pp)?,
    ];
    for (i, x) in StateLabel::ALL.into_iter().enumerate() {
        for y in StateLabel::ALL.into_iter().skip(i) {
            let ws = pair_channel_weights(InteractionModel::Symmetrized, &hf[x], &hf[y])?;
            let wd = pair_channel_weights(InteractionModel::Distinguishable, &hf[x], &hf[y])?;
            records.push(
                Record::new("coupling")
                    .with("pair", format!("{x}{y}"))
                    .with("lambda_sym_J_m3", tables[0].get(x, y))
                    .with("lambda_dist_J_m3", tables[1].get(x, y))
                    .with("sym_singlet_weight", ws.singlet.to_string())
                    .with("sym_triplet_weight", ws.triplet.to_string())
                    .with("dist_singlet_weight", wd.singlet.to_string())
                    .with("dist_triplet_weight", wd.triplet.to_string()),
            );
        }
    }

    if report {
        for model in InteractionModel::ALL {
            let c = field_shift_coefficient(transition, model, &pp, p, FieldSpec::HighField)?;
            records.push(
                Record::new("prediction")
                    .with("model", model.short_name())
                    .with("C_cross_name", coefficient_name(transition, transition.bath))
                    .with("C_cross_cm3_gauss", c.cross.cm3_gauss())
                    .with("C_cross_m3_per_T", c.cross.m3_tesla())
                    .with("C_self_name", coefficient_name(transition, transition.self_species()))
                    .with("C_self_cm3_gauss", c.self_.cm3_gauss())
                    .with("C_self_m3_per_T", c.self_.m3_tesla()),
            );
        }
        let own = coefficient_name(transition, transition.self_species());
        records.push(Record::new("note").with(
            "text",
            format!(
                "sym: {own} is zero because lambda_{i}{i} and lambda_{f}{i} are both pure triplet",
                i = transition.initial,
                f = transition.final_
            ),
        ));
        records.push(Record::new("note").with(
            "text",
            format!(
                "dist: {own} follows from applying the heterostate zeroing rule to same-transition pairs as well; \
                 that extension is a modelling assumption, not a measured value"
            ),
        ));
    }
    Ok(records)
}
