use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::num::{lit, Real};

/// Reduced Planck constant (J s).
pub const HBAR: f64 = 1.054571817e-34;
/// Hydrogen atom mass (kg).
pub const HYDROGEN_MASS: f64 = 1.6735575e-27;
/// Electron gyromagnetic ratio over 2π (Hz/T).
pub const GAMMA_E_OVER_2PI: f64 = 28.0249514e9;
/// Proton gyromagnetic ratio over 2π (Hz/T).
pub const GAMMA_N_OVER_2PI: f64 = 42.5774785e6;
/// Hydrogen ground-state hyperfine splitting over 2π (Hz).
pub const HYPERFINE_A_OVER_2PI: f64 = 1.4204057518e9;

/// Constants of a spin-½ electron + spin-½ nucleus atom.
///
/// Frequencies are angular: `hyperfine_a` in rad/s, gyromagnetic ratios in
/// rad·s⁻¹·T⁻¹. `gamma_e` is the magnitude of the electron ratio.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HyperfineParams<T> {
    pub hbar: T,
    pub mass: T,
    pub hyperfine_a: T,
    pub gamma_e: T,
    pub gamma_n: T,
}

impl<T: Real> HyperfineParams<T> {
    pub fn hydrogen() -> Self {
        let tau = T::TAU();
        HyperfineParams {
            hbar: lit(HBAR),
            mass: lit(HYDROGEN_MASS),
            hyperfine_a: tau * lit(HYPERFINE_A_OVER_2PI),
            gamma_e: tau * lit(GAMMA_E_OVER_2PI),
            gamma_n: tau * lit(GAMMA_N_OVER_2PI),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let positive = [
            ("hbar", self.hbar),
            ("mass", self.mass),
            ("A", self.hyperfine_a),
            ("gamma_e", self.gamma_e),
        ];
        for (name, v) in positive {
            if !(v > T::zero() && v.is_finite()) {
                return Err(Error::InvalidInput(format!("{name} must be positive and finite")));
            }
        }
        if !self.gamma_n.is_finite() {
            return Err(Error::InvalidInput("gamma_n must be finite".into()));
        }
        Ok(())
    }

    /// Parses a constants file.
    ///
    /// The format is `key = value` lines with `#` comments. Recognized keys
    /// are `hbar`, `mass`, `A`, `gamma_e`, `gamma_n` in the units of the
    /// struct fields. Missing keys keep the hydrogen defaults.
    pub fn from_constants_str(text: &str) -> Result<Self> {
        let file: ConstantsFile =
            toml::from_str(text).map_err(|e| Error::Constants(e.message().to_string()))?;
        let defaults = Self::hydrogen();
        let pick = |v: Option<f64>, d: T| v.map(lit).unwrap_or(d);
        let params = HyperfineParams {
            hbar: pick(file.hbar, defaults.hbar),
            mass: pick(file.mass, defaults.mass),
            hyperfine_a: pick(file.a, defaults.hyperfine_a),
            gamma_e: pick(file.gamma_e, defaults.gamma_e),
            gamma_n: pick(file.gamma_n, defaults.gamma_n),
        };
        params.validate()?;
        Ok(params)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|source| Error::Io { path: path.to_path_buf(), source })?;
        Self::from_constants_str(&text)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConstantsFile {
    hbar: Option<f64>,
    mass: Option<f64>,
    #[serde(rename = "A")]
    a: Option<f64>,
    gamma_e: Option<f64>,
    gamma_n: Option<f64>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_hydrogen() {
        let p = HyperfineParams::<f64>::hydrogen();
        p.validate().unwrap();
        // A/h ≈ 1420.405 MHz
        assert!((p.hyperfine_a / std::f64::consts::TAU - 1.4204057518e9).abs() < 1.0);
        // g_e μ_B / h: μ_B = eħ/2m_e, g ≈ 2.0023 → 28.025 GHz/T
        let mu_b = 1.602176634e-19 * HBAR / (2.0 * 9.1093837015e-31);
        let gamma_from_mu_b = 2.00231930436 * mu_b / HBAR;
        assert!((p.gamma_e / gamma_from_mu_b - 1.0).abs() < 1e-6);
        // proton gyromagnetic ratio 2.675221874e8 rad/s/T
        assert!((p.gamma_n / 2.675221874e8 - 1.0).abs() < 1e-8);
        // hydrogen mass ≈ m_p + m_e; the default sits 1.5e-5 above it
        assert!((p.mass / (1.67262192369e-27 + 9.1093837015e-31) - 1.0).abs() < 1e-4);
    }

    #[test]
    fn partial_file_overrides() {
        let p = HyperfineParams::<f64>::from_constants_str("# test\nmass = 2.0e-27\nA = 1e10\n").unwrap();
        assert_eq!(p.mass, 2.0e-27);
        assert_eq!(p.hyperfine_a, 1e10);
        assert_eq!(p.gamma_e, HyperfineParams::<f64>::hydrogen().gamma_e);
        let p = HyperfineParams::<f64>::from_constants_str("gamma_n = 0").unwrap();
        assert_eq!(p.gamma_n, 0.0);
    }

    #[test]
    fn bad_files() {
        assert!(HyperfineParams::<f64>::from_constants_str("massive = 1.0").is_err());
        assert!(HyperfineParams::<f64>::from_constants_str("mass = -1.0").is_err());
        assert!(HyperfineParams::<f64>::from_constants_str("mass = ").is_err());
    }

    #[test]
    fn load_from_disk() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.txt");
        std::fs::write(&path, "gamma_n = 0.0\n").unwrap();
        let p = HyperfineParams::<f64>::load(&path).unwrap();
        assert_eq!(p.gamma_n, 0.0);
        assert!(matches!(
            HyperfineParams::<f64>::load(dir.path().join("missing")),
            Err(Error::Io { .. })
        ));
    }
}
