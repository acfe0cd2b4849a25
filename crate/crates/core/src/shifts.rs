//! Density-dependent clock shifts of the ESR transitions a→d and b→c.
//!
//! A transition initial→final in a gas with densities n_β shifts by
//!
//! ```text
//! ħΔω = μ_final − μ_initial = Σ_β (λ_final,β − λ_initial,β) n_β
//! ```
//!
//! At a fixed drive frequency the resonance field then moves by
//! `ΔB = −Δω / (dω/dB)`, and the shift coefficient is `C = ΔB/n`. In the
//! symmetrized high-field model this gives
//! `ħΔω_bc = (2πħ²/m)(a_s − a_t) n_a` and
//! `C = 2πħ(a_t − a_s)/(γ_e m)`. C is positive when a_t > a_s.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::hyperfine::{high_field_states, solve_states, transition_field_slope, HyperfineParams, StateLabel};
use crate::interaction::{coupling_table, CouplingTable, DensitySet, InteractionModel, Pseudopotential};
use crate::num::{lit, KetScalar, QSqrt2, Real};
use crate::units;
use crate::hyperfine::HyperfineStates;

/// An ESR transition observed in the presence of a spectator (bath) species.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Transition {
    pub initial: StateLabel,
    pub final_: StateLabel,
    pub bath: StateLabel,
}

impl Transition {
    /// a→d with b atoms as the bath.
    pub const AD: Transition = Transition { initial: StateLabel::A, final_: StateLabel::D, bath: StateLabel::B };
    /// b→c with a atoms as the bath.
    pub const BC: Transition = Transition { initial: StateLabel::B, final_: StateLabel::C, bath: StateLabel::A };

    pub fn new(initial: StateLabel, final_: StateLabel, bath: StateLabel) -> Result<Self> {
        if initial == final_ {
            return Err(Error::InvalidInput(format!("transition {initial}→{final_} must connect distinct states")));
        }
        Ok(Transition { initial, final_, bath })
    }

    /// Same transition driven the other way.
    pub fn reversed(self) -> Self {
        Transition { initial: self.final_, final_: self.initial, bath: self.bath }
    }

    /// The species whose own density enters the C_self coefficient.
    pub fn self_species(self) -> StateLabel {
        self.initial
    }
}

impl fmt::Display for Transition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.initial, self.final_)
    }
}

impl FromStr for Transition {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ad" => Ok(Transition::AD),
            "bc" => Ok(Transition::BC),
            _ => Err(Error::InvalidInput(format!("unknown transition {s:?} (expected ad or bc)"))),
        }
    }
}

/// dΔω/dn_species (rad·s⁻¹·m³).
pub fn shift_per_density<T: Real>(table: &CouplingTable<T>, transition: Transition, species: StateLabel, hbar: T) -> T {
    table.coupling_difference(transition.initial, transition.final_, species) / hbar
}

fn shift_from_table<T: Real>(table: &CouplingTable<T>, transition: Transition, n: &DensitySet<T>, hbar: T) -> T {
    StateLabel::ALL.into_iter().fold(T::zero(), |acc, beta| {
        acc + table.coupling_difference(transition.initial, transition.final_, beta) * n.get(beta)
    }) / hbar
}

/// Clock shift Δω (rad/s) of `transition` in a gas with densities `n`.
pub fn clock_shift<S: KetScalar, T: Real>(
    model: InteractionModel,
    transition: Transition,
    n: &DensitySet<T>,
    pp: &Pseudopotential<T>,
    states: &HyperfineStates<S>,
) -> Result<T> {
    let table = coupling_table(model, states, pp)?;
    Ok(shift_from_table(&table, transition, n, pp.hbar()))
}

/// Δω(Symmetrized) / Δω(Distinguishable); `None` when the denominator vanishes.
pub fn model_ratio<S: KetScalar, T: Real>(
    transition: Transition,
    n: &DensitySet<T>,
    pp: &Pseudopotential<T>,
    states: &HyperfineStates<S>,
) -> Result<Option<T>> {
    let sym = clock_shift(InteractionModel::Symmetrized, transition, n, pp, states)?;
    let dist = clock_shift(InteractionModel::Distinguishable, transition, n, pp, states)?;
    Ok((dist != T::zero()).then(|| sym / dist))
}

/// Unit convention of a field-shift coefficient C in ΔB = C·n.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoefficientUnits {
    /// C in cm³ with ΔB in gauss and n in cm⁻³.
    Cm3Gauss,
    /// C in m³·T with ΔB in tesla and n in m⁻³.
    M3Tesla,
}

impl CoefficientUnits {
    /// Multiplier from this convention to m³·T.
    pub fn to_si(self) -> f64 {
        match self {
            CoefficientUnits::Cm3Gauss => units::CM3_GAUSS,
            CoefficientUnits::M3Tesla => 1.0,
        }
    }
}

impl FromStr for CoefficientUnits {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cm3-gauss" => Ok(CoefficientUnits::Cm3Gauss),
            "m3-tesla" => Ok(CoefficientUnits::M3Tesla),
            "" => Err(Error::InvalidInput("missing unit convention for C".into())),
            _ => Err(Error::InvalidInput(format!("unknown unit convention {s:?} (expected cm3-gauss or m3-tesla)"))),
        }
    }
}

impl fmt::Display for CoefficientUnits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoefficientUnits::Cm3Gauss => "cm3-gauss",
            CoefficientUnits::M3Tesla => "m3-tesla",
        })
    }
}

/// Resonance-field shift coefficient, stored in m³·T.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct FieldShiftCoefficient<T> {
    m3_tesla: T,
}

impl<T: Real> FieldShiftCoefficient<T> {
    pub fn new(value: T, units: CoefficientUnits) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::InvalidInput("coefficient C must be finite".into()));
        }
        Ok(FieldShiftCoefficient { m3_tesla: value * lit(units.to_si()) })
    }

    pub fn from_m3_tesla(value: T) -> Self {
        FieldShiftCoefficient { m3_tesla: value }
    }

    pub fn m3_tesla(&self) -> T {
        self.m3_tesla
    }

    pub fn cm3_gauss(&self) -> T {
        self.m3_tesla / lit(units::CM3_GAUSS)
    }

    pub fn in_units(&self, units: CoefficientUnits) -> T {
        self.m3_tesla / lit(units.to_si())
    }
}

/// Where the hyperfine states and the transition slope are evaluated.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FieldSpec<T> {
    /// Pure product states and slope dω/dB = γ_e.
    HighField,
    /// Solved states and finite-difference slope at this field (T).
    Tesla(T),
}

/// Shift coefficients for the bath and self densities of a transition.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShiftCoefficients<T> {
    pub transition: Transition,
    pub model: InteractionModel,
    pub cross: FieldShiftCoefficient<T>,
    pub self_: FieldShiftCoefficient<T>,
    /// dω/dB used for the conversion (rad·s⁻¹·T⁻¹).
    pub slope: T,
}

/// Shift of one transition at given densities.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ShiftResult<T> {
    pub transition: Transition,
    pub model: InteractionModel,
    /// rad/s
    pub delta_omega: T,
    /// tesla, −Δω/slope
    pub delta_b: T,
    pub c_cross: FieldShiftCoefficient<T>,
    pub c_self: FieldShiftCoefficient<T>,
}

impl<T: Real> ShiftResult<T> {
    /// Flat record with the documented keys, in SI unless the key says otherwise.
    pub fn record(&self) -> Vec<(&'static str, T)> {
        vec![
            ("delta_omega_rad_s", self.delta_omega),
            ("delta_B_T", self.delta_b),
            ("C_m3_per_T", self.c_cross.m3_tesla()),
            ("C_cm3_gauss", self.c_cross.cm3_gauss()),
            ("C_self_m3_per_T", self.c_self.m3_tesla()),
            ("C_self_cm3_gauss", self.c_self.cm3_gauss()),
        ]
    }
}

#[allow(clippy::large_enum_variant)]
enum ResolvedStates<T> {
    Exact(HyperfineStates<QSqrt2>),
    Float(HyperfineStates<T>),
}

fn resolve<T: Real>(
    model: InteractionModel,
    transition: Transition,
    pp: &Pseudopotential<T>,
    params: &HyperfineParams<T>,
    field: FieldSpec<T>,
) -> Result<(CouplingTable<T>, T)> {
    params.validate()?;
    let (states, slope) = match field {
        FieldSpec::HighField => (ResolvedStates::Exact(high_field_states()), params.gamma_e),
        FieldSpec::Tesla(b) => (
            ResolvedStates::Float(solve_states(params, b)?),
            transition_field_slope(params, transition.initial, transition.final_, b)?,
        ),
    };
    let table = match &states {
        ResolvedStates::Exact(s) => coupling_table(model, s, pp)?,
        ResolvedStates::Float(s) => coupling_table(model, s, pp)?,
    };
    Ok((table, slope))
}

/// C_cross (per bath density) and C_self (per initial-state density).
pub fn field_shift_coefficient<T: Real>(
    transition: Transition,
    model: InteractionModel,
    pp: &Pseudopotential<T>,
    params: &HyperfineParams<T>,
    field: FieldSpec<T>,
) -> Result<ShiftCoefficients<T>> {
    let (table, slope) = resolve(model, transition, pp, params, field)?;
    let coefficient = |species| {
        FieldShiftCoefficient::from_m3_tesla(-shift_per_density(&table, transition, species, pp.hbar()) / slope)
    };
    Ok(ShiftCoefficients {
        transition,
        model,
        cross: coefficient(transition.bath),
        self_: coefficient(transition.self_species()),
        slope,
    })
}

/// Δω, ΔB and both coefficients for `transition` at densities `n`.
pub fn evaluate_shift<T: Real>(
    transition: Transition,
    model: InteractionModel,
    n: &DensitySet<T>,
    pp: &Pseudopotential<T>,
    params: &HyperfineParams<T>,
    field: FieldSpec<T>,
) -> Result<ShiftResult<T>> {
    let (table, slope) = resolve(model, transition, pp, params, field)?;
    let delta_omega = shift_from_table(&table, transition, n, pp.hbar());
    let coefficient = |species| {
        FieldShiftCoefficient::from_m3_tesla(-shift_per_density(&table, transition, species, pp.hbar()) / slope)
    };
    Ok(ShiftResult {
        transition,
        model,
        delta_omega,
        delta_b: -delta_omega / slope,
        c_cross: coefficient(transition.bath),
        c_self: coefficient(transition.self_species()),
    })
}

/// A value with a one-sigma uncertainty.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Measured<T> {
    pub value: T,
    pub sigma: T,
}

/// Δa = a_t − a_s (m) from a measured bath coefficient:
/// Δa = C·γ_e·m / (2πħ), the inverse of the symmetrized high-field C.
/// The uncertainty propagates linearly.
pub fn extract_delta_a<T: Real>(
    c: FieldShiftCoefficient<T>,
    sigma: Option<FieldShiftCoefficient<T>>,
    params: &HyperfineParams<T>,
) -> Result<Measured<T>> {
    params.validate()?;
    let factor = params.gamma_e * params.mass / (T::TAU() * params.hbar);
    let sigma = sigma.map(|s| s.m3_tesla().abs()).unwrap_or(T::zero());
    if !sigma.is_finite() {
        return Err(Error::InvalidInput("uncertainty of C must be finite".into()));
    }
    Ok(Measured { value: c.m3_tesla() * factor, sigma: sigma * factor })
}

/// Quoted theoretical range of a_t − a_s, in pm.
pub const THEORY_BAND_PM: (f64, f64) = (42.0, 55.0);

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BandPosition {
    Below,
    Within,
    Above,
}

impl fmt::Display for BandPosition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BandPosition::Below => "below",
            BandPosition::Within => "within",
            BandPosition::Above => "above",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TheoryComparison<T> {
    pub delta_a: T,
    pub position: BandPosition,
    /// Band edges in metres.
    pub range: (T, T),
}

impl<T> TheoryComparison<T> {
    pub fn within_range(&self) -> bool {
        self.position == BandPosition::Within
    }
}

/// Locates Δa (m) relative to the theoretical band.
pub fn compare_to_theory<T: Real>(delta_a: T) -> TheoryComparison<T> {
    let lo = lit::<T>(THEORY_BAND_PM.0 * units::PM);
    let hi = lit::<T>(THEORY_BAND_PM.1 * units::PM);
    let position = if delta_a < lo {
        BandPosition::Below
    } else if delta_a > hi {
        BandPosition::Above
    } else {
        BandPosition::Within
    };
    TheoryComparison { delta_a, position, range: (lo, hi) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::units::PM;
    use proptest::prelude::*;
    use std::f64::consts::PI;
    use StateLabel::{A, B};

    fn params() -> HyperfineParams<f64> {
        HyperfineParams::hydrogen()
    }

    fn pp(a_s_pm: f64, a_t_pm: f64) -> Pseudopotential<f64> {
        let p = params();
        Pseudopotential::new(a_s_pm * PM, a_t_pm * PM, p.mass, p.hbar).unwrap()
    }

    fn rel(x: f64, y: f64) -> f64 {
        (x - y).abs() / y.abs()
    }

    /// (2πħ²/m)(a_s − a_t) n / ħ
    fn eq_shift(a_s: f64, a_t: f64, n: f64) -> f64 {
        let p = params();
        2.0 * PI * p.hbar * p.hbar / p.mass * (a_s - a_t) * PM * n / p.hbar
    }

    #[test]
    fn bc_shift_formula() {
        let hf = high_field_states::<QSqrt2>();
        let n = DensitySet::only(A, 1e22).unwrap();
        let shift = clock_shift(InteractionModel::Symmetrized, Transition::BC, &n, &pp(17.0, 65.0), &hf).unwrap();
        assert!(rel(shift, eq_shift(17.0, 65.0, 1e22)) < 1e-12);
        assert!(shift < 0.0);
    }

    #[test]
    fn ad_pure_a_gas_has_no_shift() {
        let hf = high_field_states::<QSqrt2>();
        let n = DensitySet::only(A, 1e22).unwrap();
        let shift = clock_shift(InteractionModel::Symmetrized, Transition::AD, &n, &pp(17.0, 65.0), &hf).unwrap();
        assert_eq!(shift, 0.0);
    }

    #[test]
    fn degenerate_channels_no_shift() {
        let hf = high_field_states::<QSqrt2>();
        let n = DensitySet::new(1e22, 2e22, 3e22, 4e22).unwrap();
        for t in [Transition::AD, Transition::BC] {
            assert_eq!(clock_shift(InteractionModel::Symmetrized, t, &n, &pp(40.0, 40.0), &hf).unwrap(), 0.0);
            // heterostate halving leaves a self-density term in the distinguishable model
            let bath = DensitySet::only(t.bath, 1e22).unwrap();
            assert_eq!(clock_shift(InteractionModel::Distinguishable, t, &bath, &pp(40.0, 40.0), &hf).unwrap(), 0.0);
            assert_ne!(clock_shift(InteractionModel::Distinguishable, t, &n, &pp(40.0, 40.0), &hf).unwrap(), 0.0);
        }
        let bath = DensitySet::only(A, 1e22).unwrap();
        assert_eq!(model_ratio(Transition::BC, &bath, &pp(40.0, 40.0), &hf).unwrap(), None);
        assert_eq!(model_ratio(Transition::BC, &n, &pp(40.0, 40.0), &hf).unwrap(), Some(0.0));
    }

    #[test]
    fn ratio_is_two() {
        let hf = high_field_states::<QSqrt2>();
        for t in [Transition::AD, Transition::BC] {
            let n = DensitySet::only(t.bath, 3.3e21).unwrap();
            assert_eq!(model_ratio(t, &n, &pp(17.0, 65.0), &hf).unwrap(), Some(2.0));
        }
    }

    #[test]
    fn coefficient_and_inverse() {
        let p = params();
        let c = field_shift_coefficient(Transition::BC, InteractionModel::Symmetrized, &pp(0.0, 35.6), &p, FieldSpec::HighField)
            .unwrap();
        let oracle = 2.0 * PI * p.hbar * 35.6 * PM / (p.gamma_e * p.mass);
        assert!(rel(c.cross.m3_tesla(), oracle) < 1e-12);
        assert!((c.cross.cm3_gauss() - 8e-19).abs() < 0.01e-19);
        assert_eq!(c.self_.m3_tesla(), 0.0);
        let back = extract_delta_a(c.cross, None, &p).unwrap();
        assert!(rel(back.value, 35.6 * PM) < 1e-12);

        let zero = field_shift_coefficient(Transition::AD, InteractionModel::Symmetrized, &pp(20.0, 20.0), &p, FieldSpec::HighField)
            .unwrap();
        assert_eq!(zero.cross.m3_tesla(), 0.0);

        let dist = field_shift_coefficient(Transition::BC, InteractionModel::Distinguishable, &pp(0.0, 35.6), &p, FieldSpec::HighField)
            .unwrap();
        assert_eq!(dist.cross.m3_tesla() * 2.0, c.cross.m3_tesla());
    }

    #[test]
    fn finite_field_coefficient_close_to_high_field() {
        let p = params();
        let pp = pp(17.0, 65.0);
        let hf = field_shift_coefficient(Transition::AD, InteractionModel::Symmetrized, &pp, &p, FieldSpec::HighField).unwrap();
        let at = field_shift_coefficient(Transition::AD, InteractionModel::Symmetrized, &pp, &p, FieldSpec::Tesla(4.6)).unwrap();
        assert!(rel(at.cross.m3_tesla(), hf.cross.m3_tesla()) < 1e-3);
        assert!(at.self_.m3_tesla().abs() < 1e-3 * hf.cross.m3_tesla().abs());
        assert!(field_shift_coefficient(Transition::AD, InteractionModel::Symmetrized, &pp, &p, FieldSpec::Tesla(-1.0)).is_err());
    }

    #[test]
    fn shift_result_record() {
        let p = params();
        let n = DensitySet::only(A, 1e22).unwrap();
        let r = evaluate_shift(Transition::BC, InteractionModel::Symmetrized, &n, &pp(17.0, 65.0), &p, FieldSpec::HighField).unwrap();
        assert!(rel(r.delta_b, -r.delta_omega / p.gamma_e) < 1e-15);
        assert!(r.delta_b > 0.0);
        assert!(rel(r.delta_b, r.c_cross.m3_tesla() * 1e22) < 1e-12);
        let rec = r.record();
        let keys: Vec<_> = rec.iter().map(|(k, _)| *k).collect();
        assert_eq!(&keys[..4], &["delta_omega_rad_s", "delta_B_T", "C_m3_per_T", "C_cm3_gauss"]);
        assert!(rel(rec[2].1 * 1e10, rec[3].1) < 1e-15);
    }

    #[test]
    fn extract_reference_coefficient() {
        let p = params();
        let c = FieldShiftCoefficient::new(8e-19, CoefficientUnits::Cm3Gauss).unwrap();
        let s = FieldShiftCoefficient::new(2e-19, CoefficientUnits::Cm3Gauss).unwrap();
        let da = extract_delta_a(c, Some(s), &p).unwrap();
        assert!((da.value / PM - 35.579).abs() < 0.01);
        assert!((da.sigma / PM - 8.895).abs() < 0.01);
        let zero = FieldShiftCoefficient::new(0.0, CoefficientUnits::M3Tesla).unwrap();
        assert_eq!(extract_delta_a(zero, None, &p).unwrap().value, 0.0);
        assert!(FieldShiftCoefficient::new(f64::INFINITY, CoefficientUnits::M3Tesla).is_err());
        assert!("".parse::<CoefficientUnits>().is_err());
        assert!("gauss".parse::<CoefficientUnits>().is_err());
    }

    #[test]
    fn theory_band() {
        assert_eq!(compare_to_theory(30.0 * PM).position, BandPosition::Below);
        assert_eq!(compare_to_theory(48.0 * PM).position, BandPosition::Within);
        assert!(compare_to_theory(48.0 * PM).within_range());
        assert_eq!(compare_to_theory(60.0 * PM).position, BandPosition::Above);
    }

    #[test]
    fn transition_parse() {
        assert_eq!("ad".parse::<Transition>().unwrap(), Transition::AD);
        assert_eq!(Transition::BC.to_string(), "bc");
        assert!("ab".parse::<Transition>().is_err());
        assert!(Transition::new(B, B, A).is_err());
    }

    proptest! {
        #[test]
        fn linear_in_bath_density(a_s in -20.0f64..80.0, a_t in -20.0f64..80.0, n in 1e18f64..1e23) {
            let hf = high_field_states::<QSqrt2>();
            let pp = pp(a_s, a_t);
            for t in [Transition::AD, Transition::BC] {
                let one = clock_shift(InteractionModel::Symmetrized, t, &DensitySet::only(t.bath, n).unwrap(), &pp, &hf).unwrap();
                let ten = clock_shift(InteractionModel::Symmetrized, t, &DensitySet::only(t.bath, 10.0 * n).unwrap(), &pp, &hf).unwrap();
                prop_assert!((ten - 10.0 * one).abs() <= 1e-12 * ten.abs());
            }
        }

        #[test]
        fn reversal_flips_sign(a_s in -20.0f64..80.0, a_t in -20.0f64..80.0, n in prop::array::uniform4(0.0f64..1e22), b in 0.0f64..10.0) {
            let states = solve_states(&params(), b).unwrap();
            let pp = pp(a_s, a_t);
            let dens = DensitySet::new(n[0], n[1], n[2], n[3]).unwrap();
            for model in InteractionModel::ALL {
                for t in [Transition::AD, Transition::BC] {
                    let fwd = clock_shift(model, t, &dens, &pp, &states).unwrap();
                    let back = clock_shift(model, t.reversed(), &dens, &pp, &states).unwrap();
                    prop_assert_eq!(fwd, -back);
                }
            }
        }

        #[test]
        fn extract_inverts_coefficient(a_s in -50.0f64..50.0, a_t in -50.0f64..100.0, cgs in proptest::bool::ANY) {
            prop_assume!((a_t - a_s).abs() > 1e-3);
            let p = params();
            let units = if cgs { CoefficientUnits::Cm3Gauss } else { CoefficientUnits::M3Tesla };
            for t in [Transition::AD, Transition::BC] {
                let c = field_shift_coefficient(t, InteractionModel::Symmetrized, &pp(a_s, a_t), &p, FieldSpec::HighField).unwrap();
                let tagged = FieldShiftCoefficient::new(c.cross.in_units(units), units).unwrap();
                let da = extract_delta_a(tagged, None, &p).unwrap().value;
                let truth = (a_t - a_s) * PM;
                prop_assert!((da - truth).abs() <= 1e-12 * truth.abs());
            }
        }
    }
}
