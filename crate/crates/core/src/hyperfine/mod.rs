//! Single-atom hyperfine + Zeeman eigenproblem (Breit–Rabi).
//!
//! Hamiltonian, in angular-frequency units:
//!
//! ```text
//! H/ħ = A (I·S)/ħ² + γ_e B S_z/ħ − γ_n B I_z/ħ
//! ```
//!
//! With the electron Zeeman term positive for ↑, the four eigenstates are
//!
//! ```text
//! a = cos ε |↓⇑⟩ − sin ε |↑⇓⟩      b = |↓⇓⟩
//! c = sin ε |↓⇑⟩ + cos ε |↑⇓⟩      d = |↑⇑⟩
//! ```
//!
//! with `tan 2ε = A / ((γ_e + γ_n) B)`. Labels follow state identity, not
//! energy rank: above [`level_crossing_field`] (≈16.65 T for hydrogen) `c`
//! lies above `d`. Below it the labels are in ascending energy order.

mod eigen;
mod params;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::num::{lit, KetScalar, Real};
use crate::spinalg::{AtomLabel, SpinKet, Spin};

pub use eigen::symmetric_eigen;
pub use params::{
    HyperfineParams, GAMMA_E_OVER_2PI, GAMMA_N_OVER_2PI, HBAR, HYDROGEN_MASS, HYPERFINE_A_OVER_2PI,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StateLabel {
    A,
    B,
    C,
    D,
}

impl StateLabel {
    pub const ALL: [StateLabel; 4] = [StateLabel::A, StateLabel::B, StateLabel::C, StateLabel::D];

    pub fn index(self) -> usize {
        self as usize
    }

    /// Dominant product state, exact in the high-field limit.
    pub fn high_field_label(self) -> AtomLabel {
        match self {
            StateLabel::A => AtomLabel::new(Spin::Down, Spin::Up),
            StateLabel::B => AtomLabel::new(Spin::Down, Spin::Down),
            StateLabel::C => AtomLabel::new(Spin::Up, Spin::Down),
            StateLabel::D => AtomLabel::new(Spin::Up, Spin::Up),
        }
    }

    /// m_F = m_S + m_I.
    pub fn total_projection(self) -> i8 {
        let l = self.high_field_label();
        (l.electron.twice_projection() + l.nucleus.twice_projection()) / 2
    }

    pub fn as_char(self) -> char {
        (b'a' + self as u8) as char
    }
}

impl fmt::Display for StateLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

impl FromStr for StateLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "a" => Ok(StateLabel::A),
            "b" => Ok(StateLabel::B),
            "c" => Ok(StateLabel::C),
            "d" => Ok(StateLabel::D),
            _ => Err(Error::InvalidInput(format!("invalid hyperfine label {s:?} (expected a, b, c or d)"))),
        }
    }
}

/// Parses a two-letter pair like `"ab"`.
pub fn parse_pair(s: &str) -> Result<(StateLabel, StateLabel)> {
    let mut chars = s.chars();
    match (chars.next(), chars.next(), chars.next()) {
        (Some(x), Some(y), None) => Ok((x.to_string().parse()?, y.to_string().parse()?)),
        _ => Err(Error::InvalidInput(format!("invalid pair {s:?} (expected two labels, e.g. ab)"))),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HyperfineState<S> {
    pub label: StateLabel,
    /// Energy in rad/s; `None` in the formal high-field limit.
    pub energy: Option<S>,
    pub ket: SpinKet<S>,
    /// Admixture angle ε in radians.
    pub epsilon: S,
}

/// The four states a, b, c, d.
#[derive(Clone, Debug, PartialEq)]
pub struct HyperfineStates<S> {
    states: [HyperfineState<S>; 4],
}

impl<S> HyperfineStates<S> {
    pub fn get(&self, label: StateLabel) -> &HyperfineState<S> {
        &self.states[label.index()]
    }

    pub fn iter(&self) -> impl Iterator<Item = &HyperfineState<S>> {
        self.states.iter()
    }
}

impl<S> std::ops::Index<StateLabel> for HyperfineStates<S> {
    type Output = HyperfineState<S>;
    fn index(&self, label: StateLabel) -> &HyperfineState<S> {
        self.get(label)
    }
}

/// a = |↓⇑⟩, b = |↓⇓⟩, c = |↑⇓⟩, d = |↑⇑⟩ with ε = 0.
pub fn high_field_states<S: KetScalar>() -> HyperfineStates<S> {
    let states = StateLabel::ALL.map(|label| HyperfineState {
        label,
        energy: None,
        ket: SpinKet::atom_basis(label.high_field_label()),
        epsilon: S::zero(),
    });
    HyperfineStates { states }
}

fn check_field<T: Real>(field: T) -> Result<()> {
    if field >= T::zero() && field.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidInput("field must be ≥ 0".into()))
    }
}

/// The 4×4 Hamiltonian (rad/s) in the product basis |↓⇓⟩, |↓⇑⟩, |↑⇓⟩, |↑⇑⟩.
pub fn hamiltonian<T: Real>(params: &HyperfineParams<T>, field: T) -> [[T; 4]; 4] {
    let quarter = params.hyperfine_a / lit(4.0);
    let ze = params.gamma_e * field / lit(2.0);
    let zn = params.gamma_n * field / lit(2.0);
    let mut h = [[T::zero(); 4]; 4];
    for label in AtomLabel::ALL {
        let ms = T::from_i8(label.electron.twice_projection()).unwrap();
        let mi = T::from_i8(label.nucleus.twice_projection()).unwrap();
        h[label.index()][label.index()] = quarter * ms * mi + ze * ms - zn * mi;
    }
    let flip_flop = params.hyperfine_a / lit(2.0);
    let (dn_up, up_dn) = (
        StateLabel::A.high_field_label().index(),
        StateLabel::C.high_field_label().index(),
    );
    h[dn_up][up_dn] = flip_flop;
    h[up_dn][dn_up] = flip_flop;
    h
}

/// Closed-form Breit–Rabi energy (rad/s). Valid for any real field.
pub fn breit_rabi_energy<T: Real>(params: &HyperfineParams<T>, label: StateLabel, field: T) -> T {
    let a = params.hyperfine_a;
    let quarter = a / lit(4.0);
    let half = lit::<T>(0.5);
    match label {
        StateLabel::B => quarter - half * (params.gamma_e - params.gamma_n) * field,
        StateLabel::D => quarter + half * (params.gamma_e - params.gamma_n) * field,
        StateLabel::A | StateLabel::C => {
            let x = (params.gamma_e + params.gamma_n) * field;
            let root = half * a.hypot(x);
            if label == StateLabel::A {
                -quarter - root
            } else {
                -quarter + root
            }
        }
    }
}

/// Closed-form admixture angle ε = ½·atan2(A, (γ_e + γ_n) B).
pub fn mixing_angle<T: Real>(params: &HyperfineParams<T>, field: T) -> T {
    lit::<T>(0.5) * params.hyperfine_a.atan2((params.gamma_e + params.gamma_n) * field)
}

/// Field above which `c` lies above `d`: B = A(γ_e − γ_n)/(2 γ_e γ_n).
///
/// `None` when γ_n ≤ 0 or γ_n ≥ γ_e, where the two levels never cross for B > 0.
pub fn level_crossing_field<T: Real>(params: &HyperfineParams<T>) -> Option<T> {
    let (ge, gn) = (params.gamma_e, params.gamma_n);
    (gn > T::zero() && gn < ge).then(|| params.hyperfine_a * (ge - gn) / (lit::<T>(2.0) * ge * gn))
}

/// Diagonalizes the 4×4 Hamiltonian numerically and labels the eigenstates.
///
/// b and d are identified by their m_F = −1, +1 product components, and a and
/// c are the lower and upper m_F = 0 states. Phases are fixed so that the
/// dominant high-field component of every state is positive.
pub fn solve_states<T: Real>(params: &HyperfineParams<T>, field: T) -> Result<HyperfineStates<T>> {
    params.validate()?;
    check_field(field)?;
    let (values, vectors) = symmetric_eigen(hamiltonian(params, field));
    let column = |j: usize| -> [T; 4] { [vectors[0][j], vectors[1][j], vectors[2][j], vectors[3][j]] };

    let weight_on = |j: usize, label: StateLabel| column(j)[label.high_field_label().index()].abs();
    let pick = |label: StateLabel, taken: &[usize]| -> usize {
        (0..4)
            .filter(|j| !taken.contains(j))
            .max_by(|&i, &j| weight_on(i, label).partial_cmp(&weight_on(j, label)).unwrap())
            .expect("four eigenvectors")
    };
    let b = pick(StateLabel::B, &[]);
    let d = pick(StateLabel::D, &[b]);
    let mut rest: Vec<usize> = (0..4).filter(|j| *j != b && *j != d).collect();
    rest.sort_by(|&i, &j| values[i].partial_cmp(&values[j]).unwrap());
    let (a, c) = (rest[0], rest[1]);

    let minor = StateLabel::C.high_field_label().index();
    let mut epsilon = T::zero();
    let states = [(StateLabel::A, a), (StateLabel::B, b), (StateLabel::C, c), (StateLabel::D, d)].map(
        |(label, j)| {
            let mut amps = column(j);
            if amps[label.high_field_label().index()] < T::zero() {
                amps = amps.map(|x| -x);
            }
            if label == StateLabel::A {
                epsilon = (-amps[minor]).atan2(amps[label.high_field_label().index()]);
            }
            let ket = SpinKet::atom(amps).expect("Jacobi eigenvectors are orthonormal");
            HyperfineState { label, energy: Some(values[j]), ket, epsilon: T::zero() }
        },
    );
    let mut states = states;
    for s in states.iter_mut() {
        if matches!(s.label, StateLabel::A | StateLabel::C) {
            s.epsilon = epsilon;
        }
    }
    Ok(HyperfineStates { states })
}

/// dω/dB (rad·s⁻¹·T⁻¹) of the transition `initial → final` at `field`,
/// by central difference with step 1e−6·max(B, 1 T).
pub fn transition_field_slope<T: Real>(
    params: &HyperfineParams<T>,
    initial: StateLabel,
    final_: StateLabel,
    field: T,
) -> Result<T> {
    check_field(field)?;
    if initial == final_ {
        return Err(Error::InvalidInput(format!("transition {initial}→{final_} must connect distinct states")));
    }
    let h = lit::<T>(1e-6) * field.max(T::one());
    let omega = |b: T| breit_rabi_energy(params, final_, b) - breit_rabi_energy(params, initial, b);
    Ok((omega(field + h) - omega(field - h)) / (lit::<T>(2.0) * h))
}
