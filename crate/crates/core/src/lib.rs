//! Spin algebra, hyperfine states, s-wave couplings and density-dependent
//! clock shifts for a gas of spin-½ electron + spin-½ nucleus atoms.
//!
//! Everything numeric is generic over [`num::Real`]; kets are generic over
//! [`num::KetScalar`], which also admits the exact field [`num::QSqrt2`].
//! The aliases below fix the common choices.

pub mod error;
pub mod fitting;
pub mod hyperfine;
pub mod interaction;
pub mod num;
pub mod shifts;
pub mod spinalg;
pub mod units;

pub use error::{Error, Result};
pub use hyperfine::{HyperfineParams, HyperfineState, HyperfineStates, StateLabel};
pub use interaction::{CouplingTable, DensitySet, InteractionModel, Pseudopotential};
pub use num::{Amplitude, QSqrt2};
pub use shifts::{CoefficientUnits, FieldShiftCoefficient, FieldSpec, Transition};
pub use spinalg::{ChannelWeights, CoupledKet, CoupledLabel, PairLabel, PairSpin, Spin, SpinKet};

/// Ket with exact amplitudes in Q(√2).
pub type ExactKet = SpinKet<QSqrt2>;
pub type ExactCoupledKet = CoupledKet<QSqrt2>;
pub type Ket = SpinKet<f64>;
pub type Params = HyperfineParams<f64>;
pub type States = HyperfineStates<f64>;
pub type Couplings = CouplingTable<f64>;
pub type Densities = DensitySet<f64>;
pub type Coefficient = FieldShiftCoefficient<f64>;
pub type Measurement = fitting::MeasurementRow<f64>;
pub type Fit = fitting::FitResult<f64>;
