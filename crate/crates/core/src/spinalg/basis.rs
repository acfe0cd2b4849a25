//! Product and coupled basis labels for one and two spin-½ + spin-½ atoms.

use std::fmt;

use crate::num::KetScalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Spin {
    Down,
    Up,
}

impl Spin {
    pub const ALL: [Spin; 2] = [Spin::Down, Spin::Up];

    /// Projection in units of ħ/2 (−1 or +1).
    pub fn twice_projection(self) -> i8 {
        match self {
            Spin::Down => -1,
            Spin::Up => 1,
        }
    }
}

/// Single-atom product state |m_S, m_I⟩.
///
/// Canonical order: |↓⇓⟩, |↓⇑⟩, |↑⇓⟩, |↑⇑⟩.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AtomLabel {
    pub electron: Spin,
    pub nucleus: Spin,
}

impl AtomLabel {
    pub const fn new(electron: Spin, nucleus: Spin) -> Self {
        AtomLabel { electron, nucleus }
    }

    pub const ALL: [AtomLabel; 4] = [
        AtomLabel::new(Spin::Down, Spin::Down),
        AtomLabel::new(Spin::Down, Spin::Up),
        AtomLabel::new(Spin::Up, Spin::Down),
        AtomLabel::new(Spin::Up, Spin::Up),
    ];

    pub fn index(self) -> usize {
        2 * self.electron as usize + self.nucleus as usize
    }

    pub fn from_index(i: usize) -> Self {
        AtomLabel::ALL[i]
    }
}

impl fmt::Display for AtomLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = match self.electron {
            Spin::Up => '↑',
            Spin::Down => '↓',
        };
        let n = match self.nucleus {
            Spin::Up => '⇑',
            Spin::Down => '⇓',
        };
        write!(f, "{e}{n}")
    }
}

/// Two-atom product state; `first` is atom 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PairLabel {
    pub first: AtomLabel,
    pub second: AtomLabel,
}

impl PairLabel {
    pub fn new(first: AtomLabel, second: AtomLabel) -> Self {
        PairLabel { first, second }
    }

    pub fn index(self) -> usize {
        4 * self.first.index() + self.second.index()
    }

    pub fn from_index(i: usize) -> Self {
        PairLabel::new(AtomLabel::from_index(i / 4), AtomLabel::from_index(i % 4))
    }

    pub fn all() -> impl Iterator<Item = PairLabel> {
        (0..16).map(PairLabel::from_index)
    }

    /// The label with atoms 1 and 2 exchanged.
    pub fn swapped(self) -> Self {
        PairLabel::new(self.second, self.first)
    }
}

impl fmt::Display for PairLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.first, self.second)
    }
}

/// Total-spin state of two spin-½ particles.
///
/// Phase convention: singlet = (↑↓ − ↓↑)/√2 and triplet(0) = (↑↓ + ↓↑)/√2,
/// with the first spin belonging to atom 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PairSpin {
    Singlet,
    TripletMinus,
    TripletZero,
    TripletPlus,
}

impl PairSpin {
    pub const ALL: [PairSpin; 4] = [
        PairSpin::Singlet,
        PairSpin::TripletMinus,
        PairSpin::TripletZero,
        PairSpin::TripletPlus,
    ];

    pub fn is_singlet(self) -> bool {
        self == PairSpin::Singlet
    }

    /// Exchange parity: +1 for triplets, −1 for the singlet.
    pub fn parity(self) -> i8 {
        if self.is_singlet() {
            -1
        } else {
            1
        }
    }

    /// Total projection m (−1, 0, +1).
    pub fn projection(self) -> i8 {
        match self {
            PairSpin::Singlet | PairSpin::TripletZero => 0,
            PairSpin::TripletMinus => -1,
            PairSpin::TripletPlus => 1,
        }
    }

    /// ⟨self | s1 s2⟩.
    pub fn overlap<S: KetScalar>(self, s1: Spin, s2: Spin) -> S {
        use Spin::{Down, Up};
        let r = S::frac_1_sqrt_2;
        match (self, s1, s2) {
            (PairSpin::TripletPlus, Up, Up) | (PairSpin::TripletMinus, Down, Down) => S::one(),
            (PairSpin::TripletZero, Up, Down) | (PairSpin::TripletZero, Down, Up) => r(),
            (PairSpin::Singlet, Up, Down) => r(),
            (PairSpin::Singlet, Down, Up) => -r(),
            _ => S::zero(),
        }
    }

    fn tag(self) -> &'static str {
        match self {
            PairSpin::Singlet => "s",
            PairSpin::TripletMinus => "t(-1)",
            PairSpin::TripletZero => "t(0)",
            PairSpin::TripletPlus => "t(+1)",
        }
    }
}

/// Coupled pair label |S m_S, I m_I⟩, i.e. electron and nuclear
/// singlet/triplet channels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoupledLabel {
    pub electron: PairSpin,
    pub nuclear: PairSpin,
}

impl CoupledLabel {
    pub const fn new(electron: PairSpin, nuclear: PairSpin) -> Self {
        CoupledLabel { electron, nuclear }
    }

    pub fn index(self) -> usize {
        4 * self.electron as usize + self.nuclear as usize
    }

    pub fn from_index(i: usize) -> Self {
        CoupledLabel::new(PairSpin::ALL[i / 4], PairSpin::ALL[i % 4])
    }

    pub fn all() -> impl Iterator<Item = CoupledLabel> {
        (0..16).map(CoupledLabel::from_index)
    }

    /// Exchange parity of the whole pair spin state.
    pub fn parity(self) -> i8 {
        self.electron.parity() * self.nuclear.parity()
    }

    /// ⟨self | product⟩ under the fixed phase convention.
    pub fn overlap<S: KetScalar>(self, product: PairLabel) -> S {
        let e = self.electron.overlap::<S>(product.first.electron, product.second.electron);
        if e.is_negligible() {
            return S::zero();
        }
        e * self.nuclear.overlap::<S>(product.first.nucleus, product.second.nucleus)
    }
}

impl fmt::Display for CoupledLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e_{} n_{}", self.electron.tag(), self.nuclear.tag())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::QSqrt2;
    use num_traits::Zero;

    #[test]
    fn label_counts_and_order() {
        assert_eq!(AtomLabel::ALL.len(), 4);
        assert_eq!(PairLabel::all().count(), 16);
        assert_eq!(CoupledLabel::all().count(), 16);
        for (i, l) in AtomLabel::ALL.iter().enumerate() {
            assert_eq!(l.index(), i);
        }
        let pairs: Vec<_> = PairLabel::all().collect();
        assert!(pairs.windows(2).all(|w| w[0] < w[1]));
        let coupled: Vec<_> = CoupledLabel::all().collect();
        assert!(coupled.windows(2).all(|w| w[0] < w[1]));
        for (i, c) in coupled.iter().enumerate() {
            assert_eq!(c.index(), i);
        }
    }

    #[test]
    fn change_of_basis_entries_and_orthogonality() {
        let allowed = [
            QSqrt2::zero(),
            QSqrt2::from_integer(1),
            QSqrt2::from_integer(-1),
            QSqrt2::frac_1_sqrt_2(),
            -QSqrt2::frac_1_sqrt_2(),
            QSqrt2::from_ratio(1, 2),
            QSqrt2::from_ratio(-1, 2),
        ];
        for c in CoupledLabel::all() {
            for p in PairLabel::all() {
                assert!(allowed.contains(&c.overlap::<QSqrt2>(p)));
            }
        }
        for c1 in CoupledLabel::all() {
            for c2 in CoupledLabel::all() {
                let dot = PairLabel::all()
                    .map(|p| c1.overlap::<QSqrt2>(p) * c2.overlap::<QSqrt2>(p))
                    .fold(QSqrt2::zero(), |a, b| a + b);
                let expected = if c1 == c2 { QSqrt2::from_integer(1) } else { QSqrt2::zero() };
                assert_eq!(dot, expected, "{c1} vs {c2}");
            }
        }
    }

    #[test]
    fn display() {
        assert_eq!(AtomLabel::new(Spin::Down, Spin::Up).to_string(), "↓⇑");
        assert_eq!(
            CoupledLabel::new(PairSpin::TripletMinus, PairSpin::TripletZero).to_string(),
            "e_t(-1) n_t(0)"
        );
        assert_eq!(CoupledLabel::new(PairSpin::Singlet, PairSpin::Singlet).to_string(), "e_s n_s");
    }
}
