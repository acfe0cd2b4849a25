//! Exact algebra of one- and two-atom spin states.
//!
//! Single atoms live in the 4-dim product basis |m_S m_I⟩, pairs in the
//! 16-dim product basis. Pair kets can be (anti)symmetrized under exchange
//! and re-expressed in the coupled basis of electron and nuclear singlets
//! and triplets, where the contact interaction is diagonal in the electron
//! channel.
//!
//! Spatial exchange factors are not represented here; see
//! [`crate::interaction`] for how they enter the couplings.

mod basis;
mod coupled;
mod ket;

pub use basis::{AtomLabel, CoupledLabel, PairLabel, PairSpin, Spin};
pub use coupled::{channel_weights, from_coupled, to_coupled, ChannelWeights, CoupledKet, Components};
pub use ket::{antisymmetrize, exchange_weights, symmetrize, tensor, SpinKet, ATOM_DIM, PAIR_DIM};
