//! Weighted linear least squares for resonance-field shifts.
//!
//! Each transition is fitted to `ΔB = C_cross·n_bath + C_self·n_self`
//! with weights 1/σ_B², where the bath is the spectator species (b for a→d,
//! a for b→c) and `self` is the initial state.
//!
//! Measurement files are CSV with the exact header
//! `transition,n_a,n_b,delta_B,sigma_B`. Densities are in cm⁻³ and fields in
//! gauss. `#` starts a comment line. Rows are converted to SI on parse.

use std::io::{Read, Write};
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crate::error::{Error, Result};
use crate::hyperfine::StateLabel;
use crate::num::{lit, Real};
use crate::shifts::{FieldShiftCoefficient, Transition};
use crate::units;

pub const CSV_HEADER: [&str; 5] = ["transition", "n_a", "n_b", "delta_B", "sigma_B"];

/// Reported σ_B for noiseless synthetic rows (gauss).
pub const NOMINAL_SIGMA_GAUSS: f64 = 1e-5;

/// One measurement, in SI: densities in m⁻³, fields in tesla.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasurementRow<T> {
    /// 1-based index among data rows.
    pub row: usize,
    pub transition: Transition,
    pub n_a: T,
    pub n_b: T,
    pub delta_b: T,
    pub sigma_b: T,
}

impl<T: Real> MeasurementRow<T> {
    pub fn density(&self, label: StateLabel) -> T {
        match label {
            StateLabel::A => self.n_a,
            StateLabel::B => self.n_b,
            _ => T::zero(),
        }
    }

    /// (n_bath, n_self) for this row's transition.
    pub fn design(&self) -> [T; 2] {
        [self.density(self.transition.bath), self.density(self.transition.self_species())]
    }
}

fn parse_err(row: usize, message: impl Into<String>) -> Error {
    Error::Parse { row, message: message.into() }
}

/// Parses measurement CSV from a reader.
pub fn parse_measurements<T: Real, R: Read>(reader: R) -> Result<Vec<MeasurementRow<T>>> {
    let mut csv = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(reader);
    let header = csv.headers()?.clone();
    if header.iter().ne(CSV_HEADER.iter().copied()) {
        let missing: Vec<_> = CSV_HEADER.iter().filter(|c| !header.iter().any(|h| h == **c)).collect();
        return Err(parse_err(
            0,
            if missing.is_empty() {
                format!("header must be exactly {}", CSV_HEADER.join(","))
            } else {
                format!("missing column {}", missing.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(", "))
            },
        ));
    }

    let mut rows = Vec::new();
    for (i, record) in csv.records().enumerate() {
        let row = i + 1;
        let record = record?;
        if record.len() != CSV_HEADER.len() {
            return Err(parse_err(row, format!("expected {} fields, found {}", CSV_HEADER.len(), record.len())));
        }
        let transition: Transition = record[0]
            .parse()
            .map_err(|_| parse_err(row, format!("transition must be ad or bc, got {:?}", &record[0])))?;
        let mut values = [0.0f64; 4];
        for (k, v) in values.iter_mut().enumerate() {
            let column = CSV_HEADER[k + 1];
            *v = record[k + 1]
                .parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| parse_err(row, format!("{column} is not a number: {:?}", &record[k + 1])))?;
        }
        let [n_a, n_b, delta_b, sigma_b] = values;
        if n_a < 0.0 {
            return Err(parse_err(row, "n_a must be non-negative"));
        }
        if n_b < 0.0 {
            return Err(parse_err(row, "n_b must be non-negative"));
        }
        if sigma_b <= 0.0 {
            return Err(parse_err(row, "sigma_B must be positive"));
        }
        rows.push(MeasurementRow {
            row,
            transition,
            n_a: lit(n_a * units::PER_CM3),
            n_b: lit(n_b * units::PER_CM3),
            delta_b: lit(delta_b * units::GAUSS),
            sigma_b: lit(sigma_b * units::GAUSS),
        });
    }
    if rows.is_empty() {
        return Err(Error::NoMeasurements);
    }
    Ok(rows)
}

pub fn load_measurements<T: Real>(path: impl AsRef<Path>) -> Result<Vec<MeasurementRow<T>>> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
    parse_measurements(std::io::BufReader::new(file))
}

/// Writes rows back in the laboratory units of the CSV schema.
pub fn write_measurements<T: Real, W: Write>(rows: &[MeasurementRow<T>], writer: W) -> Result<()> {
    let mut csv = csv::Writer::from_writer(writer);
    csv.write_record(CSV_HEADER)?;
    let f = |x: T, scale: f64| format!("{:.16e}", x.to_f64().unwrap_or(f64::NAN) / scale);
    for r in rows {
        csv.write_record([
            r.transition.to_string(),
            f(r.n_a, units::PER_CM3),
            f(r.n_b, units::PER_CM3),
            f(r.delta_b, units::GAUSS),
            f(r.sigma_b, units::GAUSS),
        ])?;
    }
    csv.flush().map_err(|e| Error::Csv(e.into()))?;
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FitResult<T> {
    pub transition: Transition,
    pub c_cross: FieldShiftCoefficient<T>,
    pub c_self: FieldShiftCoefficient<T>,
    /// Covariance of (C_cross, C_self) in (m³·T)².
    pub covariance: [[T; 2]; 2],
    pub chi2: T,
    pub dof: usize,
}

impl<T: Real> FitResult<T> {
    pub fn sigma_cross(&self) -> FieldShiftCoefficient<T> {
        FieldShiftCoefficient::from_m3_tesla(self.covariance[0][0].sqrt())
    }

    pub fn sigma_self(&self) -> FieldShiftCoefficient<T> {
        FieldShiftCoefficient::from_m3_tesla(self.covariance[1][1].sqrt())
    }

    /// Covariance in (cm³)², i.e. for coefficients in the cm³·G convention.
    pub fn covariance_cm6(&self) -> [[T; 2]; 2] {
        let s = lit::<T>(units::CM3_GAUSS);
        self.covariance.map(|row| row.map(|x| x / (s * s)))
    }

    pub fn reduced_chi2(&self) -> Option<T> {
        (self.dof > 0).then(|| self.chi2 / T::from_usize(self.dof).unwrap())
    }
}

/// Fits the rows belonging to `transition`; other rows are ignored.
pub fn fit_coefficients<T: Real>(rows: &[MeasurementRow<T>], transition: Transition) -> Result<FitResult<T>> {
    let rows: Vec<_> = rows.iter().filter(|r| r.transition == transition).collect();
    if rows.len() < 3 {
        return Err(Error::InsufficientData { transition: transition.to_string(), found: rows.len(), required: 3 });
    }
    // column scaling keeps XᵀWX well inside the float range
    let mut scale = [T::zero(); 2];
    for r in &rows {
        for (s, x) in scale.iter_mut().zip(r.design()) {
            *s = s.max(x.abs());
        }
    }
    let bath = format!("n_{}", transition.bath);
    let own = format!("n_{}", transition.self_species());
    for (s, name, c) in [(scale[0], &bath, "C_cross"), (scale[1], &own, "C_self")] {
        if s == T::zero() {
            return Err(Error::SingularFit(format!(
                "{name} is zero in every row, so {c} is unidentifiable (design rank 1)"
            )));
        }
    }

    let mut m = [[T::zero(); 2]; 2];
    let mut v = [T::zero(); 2];
    let mut y_scale = T::zero();
    for r in &rows {
        y_scale = y_scale.max(r.delta_b.abs()).max(r.sigma_b);
    }
    for r in &rows {
        let x = [r.design()[0] / scale[0], r.design()[1] / scale[1]];
        let s = r.sigma_b / y_scale;
        let w = (s * s).recip();
        let y = r.delta_b / y_scale;
        for i in 0..2 {
            v[i] = v[i] + w * x[i] * y;
            for j in 0..2 {
                m[i][j] = m[i][j] + w * x[i] * x[j];
            }
        }
    }
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    if det <= T::epsilon() * lit(4096.0) * m[0][0] * m[1][1] {
        return Err(Error::SingularFit(format!("{bath} and {own} are collinear across rows (design rank 1)")));
    }
    let inv = [[m[1][1] / det, -m[0][1] / det], [-m[1][0] / det, m[0][0] / det]];
    let beta = [inv[0][0] * v[0] + inv[0][1] * v[1], inv[1][0] * v[0] + inv[1][1] * v[1]];

    // undo scalings: C_k = β_k·y_scale/scale_k, Cov_kl = inv_kl·y_scale²/(scale_k·scale_l)
    let coef = [beta[0] * y_scale / scale[0], beta[1] * y_scale / scale[1]];
    let mut covariance = [[T::zero(); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            covariance[i][j] = inv[i][j] * y_scale * y_scale / (scale[i] * scale[j]);
        }
    }
    let chi2 = rows.iter().fold(T::zero(), |acc, r| {
        let [xb, xs] = r.design();
        let resid = (r.delta_b - coef[0] * xb - coef[1] * xs) / r.sigma_b;
        acc + resid * resid
    });
    Ok(FitResult {
        transition,
        c_cross: FieldShiftCoefficient::from_m3_tesla(coef[0]),
        c_self: FieldShiftCoefficient::from_m3_tesla(coef[1]),
        covariance,
        chi2,
        dof: rows.len() - 2,
    })
}

/// A (n_bath, n_self) design point in m⁻³.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityPoint<T> {
    pub bath: T,
    pub own: T,
}

/// Cartesian product of bath and self density levels.
pub fn density_grid<T: Real>(bath: &[T], own: &[T]) -> Vec<DensityPoint<T>> {
    bath.iter()
        .flat_map(|&b| own.iter().map(move |&o| DensityPoint { bath: b, own: o }))
        .collect()
}

/// Synthetic rows `ΔB = C_cross·n_bath + C_self·n_self + noise`.
///
/// Noise is Gaussian with standard deviation `noise_sigma` (T), drawn from
/// `ChaCha8Rng::seed_from_u64(seed)`. Every row reports σ_B = `noise_sigma`,
/// or [`NOMINAL_SIGMA_GAUSS`] when the noise is zero.
pub fn synthesize_dataset<T: Real>(
    transition: Transition,
    c_cross: FieldShiftCoefficient<T>,
    c_self: FieldShiftCoefficient<T>,
    grid: &[DensityPoint<T>],
    noise_sigma: T,
    seed: u64,
) -> Result<Vec<MeasurementRow<T>>> {
    if grid.is_empty() {
        return Err(Error::InvalidInput("density grid is empty".into()));
    }
    if !(noise_sigma >= T::zero() && noise_sigma.is_finite()) {
        return Err(Error::InvalidInput("noise sigma must be ≥ 0".into()));
    }
    if grid.iter().any(|p| !(p.bath >= T::zero() && p.own >= T::zero())) {
        return Err(Error::InvalidInput("grid densities must be ≥ 0".into()));
    }
    let sigma_f64 = noise_sigma.to_f64().unwrap_or(0.0);
    let normal = Normal::new(0.0, sigma_f64).map_err(|e| Error::InvalidInput(e.to_string()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let reported = if noise_sigma > T::zero() { noise_sigma } else { lit(NOMINAL_SIGMA_GAUSS * units::GAUSS) };

    Ok(grid
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let noise: T = if sigma_f64 > 0.0 { lit(normal.sample(&mut rng)) } else { T::zero() };
            let delta_b = c_cross.m3_tesla() * p.bath + c_self.m3_tesla() * p.own + noise;
            let (n_a, n_b) = if transition.bath == StateLabel::A { (p.bath, p.own) } else { (p.own, p.bath) };
            MeasurementRow { row: i + 1, transition, n_a, n_b, delta_b, sigma_b: reported }
        })
        .collect())
}
