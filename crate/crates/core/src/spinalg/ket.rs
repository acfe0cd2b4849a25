use std::fmt;

use crate::error::{Error, Result};
use crate::num::KetScalar;

use super::basis::{AtomLabel, PairLabel};

pub const ATOM_DIM: usize = 4;
pub const PAIR_DIM: usize = 16;

/// Real spin ket in the single-atom (4-dim) or pair (16-dim) product basis.
///
/// Amplitudes are indexed by [`AtomLabel::index`] or [`PairLabel::index`].
/// A zero ket is only produced by (anti)symmetrization and carries an
/// explicit flag.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinKet<S> {
    amplitudes: Vec<S>,
    zero: bool,
}

impl<S: KetScalar> SpinKet<S> {
    /// Normalized single-atom ket from amplitudes in canonical label order.
    pub fn atom(amplitudes: [S; ATOM_DIM]) -> Result<Self> {
        Self::normalized(amplitudes.to_vec())
    }

    /// Normalized pair ket from amplitudes in canonical label order.
    pub fn pair(amplitudes: Vec<S>) -> Result<Self> {
        if amplitudes.len() != PAIR_DIM {
            return Err(Error::DimensionMismatch { expected: PAIR_DIM, found: amplitudes.len() });
        }
        Self::normalized(amplitudes)
    }

    fn normalized(amplitudes: Vec<S>) -> Result<Self> {
        let ket = SpinKet { amplitudes, zero: false };
        let n2 = ket.norm_squared();
        if !n2.close_to(&S::one()) {
            return Err(Error::NotNormalized(n2.to_f64()));
        }
        Ok(ket)
    }

    pub fn atom_basis(label: AtomLabel) -> Self {
        Self::unit(ATOM_DIM, label.index())
    }

    pub fn pair_basis(label: PairLabel) -> Self {
        Self::unit(PAIR_DIM, label.index())
    }

    fn unit(dim: usize, index: usize) -> Self {
        let mut amplitudes = vec![S::zero(); dim];
        amplitudes[index] = S::one();
        SpinKet { amplitudes, zero: false }
    }

    pub fn zero_pair() -> Self {
        SpinKet { amplitudes: vec![S::zero(); PAIR_DIM], zero: true }
    }

    pub fn dimension(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn is_pair(&self) -> bool {
        self.dimension() == PAIR_DIM
    }

    pub fn is_zero(&self) -> bool {
        self.zero
    }

    pub fn amplitudes(&self) -> &[S] {
        &self.amplitudes
    }

    pub fn atom_amplitude(&self, label: AtomLabel) -> Result<&S> {
        self.expect_dim(ATOM_DIM)?;
        Ok(&self.amplitudes[label.index()])
    }

    pub fn pair_amplitude(&self, label: PairLabel) -> Result<&S> {
        self.expect_dim(PAIR_DIM)?;
        Ok(&self.amplitudes[label.index()])
    }

    pub(crate) fn expect_dim(&self, dim: usize) -> Result<()> {
        if self.dimension() == dim {
            Ok(())
        } else {
            Err(Error::DimensionMismatch { expected: dim, found: self.dimension() })
        }
    }

    pub fn norm_squared(&self) -> S {
        self.amplitudes
            .iter()
            .fold(S::zero(), |acc, a| acc + a.clone() * a.clone())
    }

    /// Real inner product ⟨self|other⟩.
    pub fn inner(&self, other: &Self) -> Result<S> {
        other.expect_dim(self.dimension())?;
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .fold(S::zero(), |acc, (x, y)| acc + x.clone() * y.clone()))
    }

    pub fn scaled(&self, factor: &S) -> Self {
        SpinKet {
            amplitudes: self.amplitudes.iter().map(|a| a.clone() * factor.clone()).collect(),
            zero: self.zero,
        }
    }

    /// Exchange of atoms 1 and 2 (pair kets only).
    pub fn exchanged(&self) -> Result<Self> {
        self.expect_dim(PAIR_DIM)?;
        let amplitudes = PairLabel::all()
            .map(|l| self.amplitudes[l.swapped().index()].clone())
            .collect();
        Ok(SpinKet { amplitudes, zero: self.zero })
    }

    /// Non-negligible terms in canonical order.
    pub fn pair_terms(&self) -> impl Iterator<Item = (PairLabel, &S)> {
        self.amplitudes
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_negligible())
            .map(|(i, a)| (PairLabel::from_index(i), a))
    }

    pub fn close_to(&self, other: &Self) -> bool {
        self.dimension() == other.dimension()
            && self.amplitudes.iter().zip(&other.amplitudes).all(|(x, y)| x.close_to(y))
    }

    fn combine(&self, other: &Self, sign: S) -> Self {
        SpinKet {
            amplitudes: self
                .amplitudes
                .iter()
                .zip(&other.amplitudes)
                .map(|(x, y)| x.clone() + sign.clone() * y.clone())
                .collect(),
            zero: false,
        }
    }
}

fn expect_normalized_atom<S: KetScalar>(ket: &SpinKet<S>) -> Result<()> {
    ket.expect_dim(ATOM_DIM)?;
    let n2 = ket.norm_squared();
    if n2.close_to(&S::one()) {
        Ok(())
    } else {
        Err(Error::NotNormalized(n2.to_f64()))
    }
}

/// |left⟩ ⊗ |right⟩, with `left` as atom 1.
pub fn tensor<S: KetScalar>(left: &SpinKet<S>, right: &SpinKet<S>) -> Result<SpinKet<S>> {
    expect_normalized_atom(left)?;
    expect_normalized_atom(right)?;
    let amplitudes = PairLabel::all()
        .map(|l| left.amplitudes[l.first.index()].clone() * right.amplitudes[l.second.index()].clone())
        .collect();
    Ok(SpinKet { amplitudes, zero: false })
}

/// Normalized |ij⟩₊ ∝ |ij⟩ + |ji⟩.
pub fn symmetrize<S: KetScalar>(left: &SpinKet<S>, right: &SpinKet<S>) -> Result<SpinKet<S>> {
    exchange_projection(left, right, S::one())
}

/// Normalized |ij⟩₋ ∝ |ij⟩ − |ji⟩, or the flagged zero ket.
pub fn antisymmetrize<S: KetScalar>(left: &SpinKet<S>, right: &SpinKet<S>) -> Result<SpinKet<S>> {
    exchange_projection(left, right, -S::one())
}

fn exchange_projection<S: KetScalar>(
    left: &SpinKet<S>,
    right: &SpinKet<S>,
    sign: S,
) -> Result<SpinKet<S>> {
    let direct = tensor(left, right)?;
    let exchanged = tensor(right, left)?;
    let raw = direct.combine(&exchanged, sign);
    let n2 = raw.norm_squared();
    if n2.is_negligible() {
        return Ok(SpinKet::zero_pair());
    }
    let inv_norm = n2
        .sqrt()
        .and_then(|n| n.recip())
        .ok_or_else(|| Error::NotRepresentable(format!("normalization 1/√{}", n2.to_f64())))?;
    Ok(raw.scaled(&inv_norm))
}

/// Weights of a pair ket in the exchange-symmetric and -antisymmetric
/// subspaces, ‖P₊ψ‖² and ‖P₋ψ‖².
pub fn exchange_weights<S: KetScalar>(pair: &SpinKet<S>) -> Result<(S, S)> {
    let swapped = pair.exchanged()?;
    let half = S::from_ratio(1, 2);
    let plus = pair.combine(&swapped, S::one()).scaled(&half);
    let minus = pair.combine(&swapped, -S::one()).scaled(&half);
    Ok((plus.norm_squared(), minus.norm_squared()))
}

impl<S: KetScalar> fmt::Display for SpinKet<S> {
    /// `±√(p/q)·|label⟩` terms in canonical order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.zero || self.amplitudes.iter().all(|a| a.is_negligible()) {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .amplitudes
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_negligible())
            .map(|(i, a)| {
                let label = if self.is_pair() {
                    PairLabel::from_index(i).to_string()
                } else {
                    AtomLabel::from_index(i).to_string()
                };
                format!("{}·|{}⟩", a.fmt_amplitude(), label)
            })
            .collect();
        write!(f, "{}", terms.join(" "))
    }
}
