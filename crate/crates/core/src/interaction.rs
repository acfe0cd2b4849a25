//! Contact-pseudopotential couplings between hyperfine states.
//!
//! The pair interaction is `V = λ δ(r₂ − r₁)` with `λ = 4πħ²a/m`. The
//! strength depends only on the electron spin channel, λ_s or λ_t, and not on
//! the nuclear spins. Spatial exchange is applied as two rules:
//!
//! * exchange-antisymmetric spin components have a vanishing contact matrix
//!   element;
//! * in a heterostate pair the symmetric spin component |αβ⟩₊ carries the
//!   full coupling (spatial factor doubled), so the atoms behave as identical.
//!
//! [`InteractionModel::Symmetrized`] applies both rules.
//! [`InteractionModel::Distinguishable`] treats a heterostate pair as the bare
//! product |αβ⟩ and only zeroes its antisymmetric components. For α ≠ β it
//! therefore yields half the coupling.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::hyperfine::{HyperfineState, HyperfineStates, StateLabel};
use crate::num::{lit, KetScalar, Real};
use crate::spinalg::{channel_weights, symmetrize, tensor, ChannelWeights, Components};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InteractionModel {
    Symmetrized,
    Distinguishable,
}

impl InteractionModel {
    pub const ALL: [InteractionModel; 2] = [InteractionModel::Symmetrized, InteractionModel::Distinguishable];

    pub fn short_name(self) -> &'static str {
        match self {
            InteractionModel::Symmetrized => "sym",
            InteractionModel::Distinguishable => "dist",
        }
    }
}

impl fmt::Display for InteractionModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for InteractionModel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sym" | "symmetrized" => Ok(InteractionModel::Symmetrized),
            "dist" | "distinguishable" => Ok(InteractionModel::Distinguishable),
            _ => Err(Error::InvalidInput(format!("unknown model {s:?} (expected sym or dist)"))),
        }
    }
}

/// λ = 4πħ²a/m (J·m³).
pub fn lambda_from_scattering_length<T: Real>(a: T, mass: T, hbar: T) -> Result<T> {
    if mass.is_nan() || mass <= T::zero() {
        return Err(Error::InvalidInput("mass must be positive".into()));
    }
    Ok(lit::<T>(4.0) * T::PI() * hbar * hbar * a / mass)
}

/// Inverse of [`lambda_from_scattering_length`].
pub fn scattering_length_from_lambda<T: Real>(lambda: T, mass: T, hbar: T) -> Result<T> {
    if mass.is_nan() || mass <= T::zero() {
        return Err(Error::InvalidInput("mass must be positive".into()));
    }
    Ok(lambda * mass / (lit::<T>(4.0) * T::PI() * hbar * hbar))
}

/// Singlet and triplet scattering lengths (m) for atoms of one mass (kg).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Pseudopotential<T> {
    a_s: T,
    a_t: T,
    mass: T,
    hbar: T,
    lambda_s: T,
    lambda_t: T,
}

impl<T: Real> Pseudopotential<T> {
    pub fn new(a_s: T, a_t: T, mass: T, hbar: T) -> Result<Self> {
        if !(a_s.is_finite() && a_t.is_finite()) {
            return Err(Error::InvalidInput("scattering lengths must be finite".into()));
        }
        Ok(Pseudopotential {
            a_s,
            a_t,
            mass,
            hbar,
            lambda_s: lambda_from_scattering_length(a_s, mass, hbar)?,
            lambda_t: lambda_from_scattering_length(a_t, mass, hbar)?,
        })
    }

    pub fn a_s(&self) -> T {
        self.a_s
    }
    pub fn a_t(&self) -> T {
        self.a_t
    }
    pub fn mass(&self) -> T {
        self.mass
    }
    pub fn hbar(&self) -> T {
        self.hbar
    }
    pub fn lambda_s(&self) -> T {
        self.lambda_s
    }
    pub fn lambda_t(&self) -> T {
        self.lambda_t
    }
}

/// Electron-channel weights of the pair (α, β) under `model`.
///
/// These are the exact rational numbers behind every coupling: for the
/// high-field (b, d) pair they are {½, ½} when symmetrized and {¼, ¼} when
/// treated as distinguishable.
pub fn pair_channel_weights<S: KetScalar>(
    model: InteractionModel,
    alpha: &HyperfineState<S>,
    beta: &HyperfineState<S>,
) -> Result<ChannelWeights<S>> {
    let weights = match model {
        InteractionModel::Symmetrized => {
            let plus = if alpha.label == beta.label {
                tensor(&alpha.ket, &beta.ket)?
            } else {
                symmetrize(&alpha.ket, &beta.ket)?
            };
            if plus.is_zero() {
                return Err(Error::Internal(format!(
                    "symmetrized pair ({}, {}) vanished",
                    alpha.label, beta.label
                )));
            }
            channel_weights(&plus, Components::All)?
        }
        InteractionModel::Distinguishable => {
            let product = tensor(&alpha.ket, &beta.ket)?;
            channel_weights(&product, Components::ExchangeSymmetric)?
        }
    };
    Ok(weights)
}

/// Effective contact coupling λ_αβ (J·m³).
pub fn pair_lambda<S: KetScalar, T: Real>(
    model: InteractionModel,
    alpha: &HyperfineState<S>,
    beta: &HyperfineState<S>,
    pp: &Pseudopotential<T>,
) -> Result<T> {
    let w = pair_channel_weights(model, alpha, beta)?;
    Ok(w.blend(pp.lambda_s, pp.lambda_t))
}

/// Symmetric 4×4 table of pair couplings under one model.
#[derive(Clone, Debug, PartialEq)]
pub struct CouplingTable<T> {
    model: InteractionModel,
    weights: [[ChannelWeights<T>; 4]; 4],
    lambda: [[T; 4]; 4],
    lambda_s: T,
    lambda_t: T,
}

impl<T: Real> CouplingTable<T> {
    pub fn model(&self) -> InteractionModel {
        self.model
    }

    pub fn get(&self, alpha: StateLabel, beta: StateLabel) -> T {
        self.lambda[alpha.index()][beta.index()]
    }

    pub fn weights(&self, alpha: StateLabel, beta: StateLabel) -> ChannelWeights<T> {
        self.weights[alpha.index()][beta.index()]
    }

    /// λ_{final,β} − λ_{initial,β}, formed from exact weight differences so
    /// scalings by powers of two survive rounding.
    pub fn coupling_difference(&self, initial: StateLabel, final_: StateLabel, beta: StateLabel) -> T {
        let wf = self.weights(final_, beta);
        let wi = self.weights(initial, beta);
        (wf.singlet - wi.singlet) * self.lambda_s + (wf.triplet - wi.triplet) * self.lambda_t
    }
}

pub fn coupling_table<S: KetScalar, T: Real>(
    model: InteractionModel,
    states: &HyperfineStates<S>,
    pp: &Pseudopotential<T>,
) -> Result<CouplingTable<T>> {
    let zero = ChannelWeights { singlet: T::zero(), triplet: T::zero() };
    let mut weights = [[zero; 4]; 4];
    let mut lambda = [[T::zero(); 4]; 4];
    for (i, alpha) in StateLabel::ALL.into_iter().enumerate() {
        for beta in StateLabel::ALL.into_iter().skip(i) {
            let w = pair_channel_weights(model, &states[alpha], &states[beta])?.to_real::<T>();
            let l = w.blend(pp.lambda_s, pp.lambda_t);
            weights[alpha.index()][beta.index()] = w;
            weights[beta.index()][alpha.index()] = w;
            lambda[alpha.index()][beta.index()] = l;
            lambda[beta.index()][alpha.index()] = l;
        }
    }
    Ok(CouplingTable { model, weights, lambda, lambda_s: pp.lambda_s, lambda_t: pp.lambda_t })
}

/// Number densities (m⁻³) of the four hyperfine states.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensitySet<T> {
    n: [T; 4],
}

impl<T: Real> DensitySet<T> {
    pub fn new(n_a: T, n_b: T, n_c: T, n_d: T) -> Result<Self> {
        let n = [n_a, n_b, n_c, n_d];
        for (label, x) in StateLabel::ALL.iter().zip(n) {
            if !(x >= T::zero() && x.is_finite()) {
                return Err(Error::InvalidInput(format!("density n_{label} must be ≥ 0")));
            }
        }
        Ok(DensitySet { n })
    }

    pub fn zero() -> Self {
        DensitySet { n: [T::zero(); 4] }
    }

    /// A gas of a single species.
    pub fn only(label: StateLabel, density: T) -> Result<Self> {
        Self::zero().with(label, density)
    }

    pub fn with(mut self, label: StateLabel, density: T) -> Result<Self> {
        self.n[label.index()] = density;
        Self::new(self.n[0], self.n[1], self.n[2], self.n[3])
    }

    pub fn get(&self, label: StateLabel) -> T {
        self.n[label.index()]
    }

    pub fn total(&self) -> T {
        self.n.iter().fold(T::zero(), |s, &x| s + x)
    }
}

/// Mean-field interaction energy density (J·m⁻³):
/// E = ½ Σ_α λ_αα n_α² + Σ_{α<β} λ_αβ n_α n_β.
pub fn interaction_energy_density<T: Real>(table: &CouplingTable<T>, n: &DensitySet<T>) -> T {
    let half = lit::<T>(0.5);
    let mut e = T::zero();
    for (i, alpha) in StateLabel::ALL.into_iter().enumerate() {
        e = e + half * table.get(alpha, alpha) * n.get(alpha) * n.get(alpha);
        for beta in StateLabel::ALL.into_iter().skip(i + 1) {
            e = e + table.get(alpha, beta) * n.get(alpha) * n.get(beta);
        }
    }
    e
}

/// μ_α = ∂E/∂n_α = Σ_β λ_αβ n_β (J).
pub fn chemical_potential<T: Real>(table: &CouplingTable<T>, n: &DensitySet<T>, species: StateLabel) -> T {
    StateLabel::ALL
        .into_iter()
        .fold(T::zero(), |mu, beta| mu + table.get(species, beta) * n.get(beta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperfine::{high_field_states, solve_states, HyperfineParams};
    use crate::num::{QSqrt2, Rational};
    use proptest::prelude::*;
    use StateLabel::{A, B, C, D};

    const PM: f64 = 1e-12;

    fn pp(a_s: f64, a_t: f64) -> Pseudopotential<f64> {
        let p = HyperfineParams::<f64>::hydrogen();
        Pseudopotential::new(a_s * PM, a_t * PM, p.mass, p.hbar).unwrap()
    }

    fn exact_weights(model: InteractionModel, x: StateLabel, y: StateLabel) -> (Rational, Rational) {
        let hf = high_field_states::<QSqrt2>();
        let w = pair_channel_weights(model, &hf[x], &hf[y]).unwrap().as_rational().unwrap();
        (w.singlet, w.triplet)
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn lambda_relation() {
        let (m, hbar): (f64, f64) = (1.6735575e-27, 1.054571817e-34);
        assert_eq!(lambda_from_scattering_length(0.0, m, hbar).unwrap(), 0.0);
        let l1 = lambda_from_scattering_length(72e-12, m, hbar).unwrap();
        let l2 = lambda_from_scattering_length(144e-12, m, hbar).unwrap();
        assert_eq!(l2, 2.0 * l1);
        assert!(lambda_from_scattering_length(-1e-12, m, hbar).unwrap() < 0.0);
        let back = scattering_length_from_lambda(l1, m, hbar).unwrap();
        assert!((back / 72e-12 - 1.0).abs() < 1e-15);
        assert!(lambda_from_scattering_length(1e-12, 0.0, hbar).is_err());
        assert!(lambda_from_scattering_length(1e-12, -1.0, hbar).is_err());
    }

    #[test]
    fn symmetrized_high_field_weights() {
        use InteractionModel::Symmetrized as Sym;
        assert_eq!(exact_weights(Sym, A, B), (r(0, 1), r(1, 1)));
        assert_eq!(exact_weights(Sym, B, D), (r(1, 2), r(1, 2)));
        assert_eq!(exact_weights(Sym, A, C), (r(1, 2), r(1, 2)));
        for (x, y) in [(A, A), (B, B), (C, C), (D, D), (A, D), (B, C)] {
            assert_eq!(exact_weights(Sym, x, y), (r(0, 1), r(1, 1)), "{x}{y}");
        }
    }

    #[test]
    fn distinguishable_high_field_weights() {
        use InteractionModel::Distinguishable as Dist;
        assert_eq!(exact_weights(Dist, B, D), (r(1, 4), r(1, 4)));
        assert_eq!(exact_weights(Dist, A, C), (r(1, 4), r(1, 4)));
        assert_eq!(exact_weights(Dist, A, B), (r(0, 1), r(1, 2)));
        for x in StateLabel::ALL {
            assert_eq!(exact_weights(Dist, x, x), exact_weights(InteractionModel::Symmetrized, x, x));
        }
    }

    #[test]
    fn heterostate_halving() {
        for (i, x) in StateLabel::ALL.into_iter().enumerate() {
            for y in StateLabel::ALL.into_iter().skip(i + 1) {
                let (ss, st) = exact_weights(InteractionModel::Symmetrized, x, y);
                let (ds, dt) = exact_weights(InteractionModel::Distinguishable, x, y);
                assert_eq!((ds, dt), (ss / 2, st / 2), "{x}{y}");
            }
        }
    }

    #[test]
    fn pair_lambda_values() {
        let pp = pp(17.0, 65.0);
        let hf = high_field_states::<QSqrt2>();
        let sym = |x, y| pair_lambda(InteractionModel::Symmetrized, &hf[x], &hf[y], &pp).unwrap();
        let dist = |x, y| pair_lambda(InteractionModel::Distinguishable, &hf[x], &hf[y], &pp).unwrap();
        assert_eq!(sym(A, B), pp.lambda_t());
        assert_eq!(sym(B, D), 0.5 * pp.lambda_s() + 0.5 * pp.lambda_t());
        assert_eq!(dist(B, D), 0.25 * pp.lambda_s() + 0.25 * pp.lambda_t());
        assert_eq!(dist(A, B), 0.5 * pp.lambda_t());
    }

    #[test]
    fn degenerate_channels_give_uniform_table() {
        let pp = pp(50.0, 50.0);
        for model in InteractionModel::ALL {
            let table = coupling_table(model, &high_field_states::<QSqrt2>(), &pp).unwrap();
            if model == InteractionModel::Symmetrized {
                for x in StateLabel::ALL {
                    for y in StateLabel::ALL {
                        assert_eq!(table.get(x, y), pp.lambda_t());
                    }
                }
            }
        }
        let table = coupling_table(InteractionModel::Symmetrized, &high_field_states::<QSqrt2>(), &pp).unwrap();
        let n = DensitySet::new(1e20, 2e20, 3e20, 4e20).unwrap();
        let total = n.total();
        let e = interaction_energy_density(&table, &n);
        assert!((e / (0.5 * pp.lambda_t() * total * total) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn energy_density_examples() {
        let pp = pp(17.0, 65.0);
        let table = coupling_table(InteractionModel::Symmetrized, &high_field_states::<QSqrt2>(), &pp).unwrap();
        let (na, nb) = (3e20, 5e20);
        let n = DensitySet::new(na, nb, 0.0, 0.0).unwrap();
        let lt = pp.lambda_t();
        let e = interaction_energy_density(&table, &n);
        let expected = 0.5 * lt * na * na + lt * na * nb + 0.5 * lt * nb * nb;
        assert!((e / expected - 1.0).abs() < 1e-15);
        assert_eq!(interaction_energy_density(&table, &DensitySet::zero()), 0.0);

        let (nb, nd) = (2e20, 7e20);
        let n = DensitySet::new(0.0, nb, 0.0, nd).unwrap();
        let cross = interaction_energy_density(&table, &n) - 0.5 * lt * (nb * nb + nd * nd);
        let expected = 0.5 * (pp.lambda_s() + lt) * nb * nd;
        assert!((cross / expected - 1.0).abs() < 1e-12);
    }

    #[test]
    fn chemical_potentials() {
        let pp = pp(17.0, 65.0);
        let table = coupling_table(InteractionModel::Symmetrized, &high_field_states::<QSqrt2>(), &pp).unwrap();
        let n = DensitySet::only(A, 4e20).unwrap();
        assert_eq!(chemical_potential(&table, &n, A), pp.lambda_t() * 4e20);
        assert_eq!(chemical_potential(&table, &n, D), pp.lambda_t() * 4e20);
        assert_eq!(chemical_potential(&table, &DensitySet::zero(), C), 0.0);
    }

    #[test]
    fn negative_density_rejected() {
        assert!(DensitySet::new(-1.0, 0.0, 0.0, 0.0).is_err());
        assert!(DensitySet::only(C, f64::NAN).is_err());
    }

    #[test]
    fn finite_field_table_is_symmetric_and_bounded() {
        let p = HyperfineParams::<f64>::hydrogen();
        let pp = pp(17.0, 65.0);
        for b in [0.0, 0.05, 1.0, 4.6] {
            let states = solve_states(&p, b).unwrap();
            let sym = coupling_table(InteractionModel::Symmetrized, &states, &pp).unwrap();
            let dist = coupling_table(InteractionModel::Distinguishable, &states, &pp).unwrap();
            let (lo, hi) = (pp.lambda_s().min(pp.lambda_t()), pp.lambda_s().max(pp.lambda_t()));
            let slack = 1e-12 * hi;
            for x in StateLabel::ALL {
                assert!((sym.get(x, x) - dist.get(x, x)).abs() <= slack);
                for y in StateLabel::ALL {
                    assert_eq!(sym.get(x, y), sym.get(y, x));
                    assert!(sym.get(x, y) >= lo - slack && sym.get(x, y) <= hi + slack);
                    assert!(dist.get(x, y) <= sym.get(x, y) + slack);
                }
            }
        }
    }

    proptest! {
        #[test]
        fn energy_is_symmetric_quadratic_form(
            a_s in -50.0f64..100.0, a_t in -50.0f64..100.0,
            n in prop::array::uniform4(0.0f64..1e21),
            i in 0usize..4, j in 0usize..4,
        ) {
            let pp = pp(a_s, a_t);
            let table = coupling_table(InteractionModel::Symmetrized, &high_field_states::<QSqrt2>(), &pp).unwrap();
            let mut swapped = n;
            swapped[i] = n[j];
            swapped[j] = n[i];
            let e = |v: [f64; 4]| interaction_energy_density(&table, &DensitySet::new(v[0], v[1], v[2], v[3]).unwrap());
            // E(swap) = E when the swapped species couple identically to the rest
            let (x, y) = (StateLabel::ALL[i], StateLabel::ALL[j]);
            let same = StateLabel::ALL.iter().all(|&z| table.get(x, z) == table.get(y, z) || z == x || z == y)
                && table.get(x, x) == table.get(y, y);
            if same {
                let (e1, e2) = (e(n), e(swapped));
                prop_assert!((e1 - e2).abs() <= 1e-12 * e1.abs().max(1e-300));
            }
            // μ is the gradient of E
            let dens = DensitySet::new(n[0], n[1], n[2], n[3]).unwrap();
            let h = 1e14;
            let mut up = n; up[i] += h;
            let mut dn = n; dn[i] = (n[i] - h).max(0.0);
            let fd = (e(up) - e(dn)) / (up[i] - dn[i]);
            let mu = chemical_potential(&table, &dens, x);
            prop_assert!((fd - mu).abs() <= 1e-6 * (mu.abs() + pp.lambda_s().abs().max(pp.lambda_t().abs()) * 1e21));
        }
    }
}
