use std::fmt;

use crate::error::{Error, Result};
use crate::num::{KetScalar, Rational};

use super::basis::{CoupledLabel, PairLabel};
use super::ket::{SpinKet, PAIR_DIM};

/// Pair ket expanded in the electron/nuclear singlet–triplet basis.
#[derive(Clone, Debug, PartialEq)]
pub struct CoupledKet<S> {
    coefficients: Vec<S>,
    zero: bool,
}

impl<S: KetScalar> CoupledKet<S> {
    pub fn unit(label: CoupledLabel) -> Self {
        let mut coefficients = vec![S::zero(); PAIR_DIM];
        coefficients[label.index()] = S::one();
        CoupledKet { coefficients, zero: false }
    }

    /// Builds a coupled ket from explicit terms; unlisted labels are zero.
    pub fn from_terms(terms: impl IntoIterator<Item = (CoupledLabel, S)>) -> Self {
        let mut coefficients = vec![S::zero(); PAIR_DIM];
        for (label, c) in terms {
            coefficients[label.index()] = c;
        }
        CoupledKet { coefficients, zero: false }
    }

    pub fn coefficient(&self, label: CoupledLabel) -> &S {
        &self.coefficients[label.index()]
    }

    pub fn coefficients(&self) -> &[S] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.zero
    }

    pub fn terms(&self) -> impl Iterator<Item = (CoupledLabel, &S)> {
        self.coefficients
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_negligible())
            .map(|(i, c)| (CoupledLabel::from_index(i), c))
    }

    pub fn close_to(&self, other: &Self) -> bool {
        self.coefficients.iter().zip(&other.coefficients).all(|(x, y)| x.close_to(y))
    }
}

impl<S: KetScalar> fmt::Display for CoupledKet<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .terms()
            .map(|(l, c)| format!("{}·|{}⟩", c.fmt_amplitude(), l))
            .collect();
        if self.zero || terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" "))
        }
    }
}

/// Expands a pair ket in the coupled basis: c_k = Σ_p ⟨k|p⟩ ψ_p.
pub fn to_coupled<S: KetScalar>(pair: &SpinKet<S>) -> Result<CoupledKet<S>> {
    pair.expect_dim(PAIR_DIM)?;
    let amps = pair.amplitudes();
    let coefficients = CoupledLabel::all()
        .map(|k| {
            PairLabel::all()
                .filter(|p| !amps[p.index()].is_negligible())
                .fold(S::zero(), |acc, p| acc + k.overlap::<S>(p) * amps[p.index()].clone())
        })
        .collect();
    Ok(CoupledKet { coefficients, zero: pair.is_zero() })
}

/// Inverse of [`to_coupled`]: ψ_p = Σ_k ⟨k|p⟩ c_k (the change of basis is real orthogonal).
pub fn from_coupled<S: KetScalar>(coupled: &CoupledKet<S>) -> SpinKet<S> {
    if coupled.zero {
        return SpinKet::zero_pair();
    }
    let amplitudes = PairLabel::all()
        .map(|p| {
            CoupledLabel::all().fold(S::zero(), |acc, k| {
                acc + k.overlap::<S>(p) * coupled.coefficients[k.index()].clone()
            })
        })
        .collect();
    SpinKet::pair(amplitudes).expect("orthogonal change of basis preserves the norm")
}

/// Which coupled components enter [`channel_weights`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Components {
    All,
    /// Only exchange-symmetric spin components (e_t n_t and e_s n_s).
    ExchangeSymmetric,
}

/// Squared weight of a pair ket in the electron-singlet and
/// electron-triplet channels.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChannelWeights<S> {
    pub singlet: S,
    pub triplet: S,
}

impl<S: KetScalar> ChannelWeights<S> {
    pub fn total(&self) -> S {
        self.singlet.clone() + self.triplet.clone()
    }

    /// `singlet·λ_s + triplet·λ_t`.
    pub fn blend<T>(&self, lambda_s: T, lambda_t: T) -> T
    where
        T: crate::num::Real,
    {
        self.singlet.to_real::<T>() * lambda_s + self.triplet.to_real::<T>() * lambda_t
    }

    pub fn to_real<T: crate::num::Real>(&self) -> ChannelWeights<T> {
        ChannelWeights { singlet: self.singlet.to_real(), triplet: self.triplet.to_real() }
    }
}

impl ChannelWeights<crate::num::QSqrt2> {
    /// Rational weights; exact kets always give rational squared weights
    /// in practice, `None` flags the exception.
    pub fn as_rational(&self) -> Option<ChannelWeights<Rational>> {
        Some(ChannelWeights {
            singlet: self.singlet.as_rational()?,
            triplet: self.triplet.as_rational()?,
        })
    }
}

pub fn channel_weights<S: KetScalar>(
    pair: &SpinKet<S>,
    components: Components,
) -> Result<ChannelWeights<S>> {
    if pair.is_zero() {
        return Err(Error::UndefinedWeights);
    }
    let coupled = to_coupled(pair)?;
    let mut singlet = S::zero();
    let mut triplet = S::zero();
    for (label, c) in coupled.terms() {
        if components == Components::ExchangeSymmetric && label.parity() < 0 {
            continue;
        }
        let w = c.clone() * c.clone();
        if label.electron.is_singlet() {
            singlet = singlet + w;
        } else {
            triplet = triplet + w;
        }
    }
    Ok(ChannelWeights { singlet, triplet })
}
