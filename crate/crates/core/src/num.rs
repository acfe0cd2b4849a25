//! Scalar types.
//!
//! Two families of scalars flow through the crate:
//!
//! * [`Real`]: floating point (`f32`/`f64`) used for anything carrying
//!   physical units.
//! * [`KetScalar`]: amplitudes of spin kets. Implemented for every [`Real`]
//!   and for the exact field [`QSqrt2`] of numbers `a + b·√2` with rational
//!   `a`, `b`, which is closed under everything the spin algebra needs
//!   (tensor products, `1/√2` symmetrization, the singlet–triplet change of
//!   basis).

use std::fmt::{self, Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Roots;
use num_rational::Ratio;
use num_traits::{Float, FloatConst, FromPrimitive, One, Signed, ToPrimitive, Zero};

/// Rational numbers used for exact amplitudes and channel weights.
pub type Rational = Ratio<i64>;

/// Floating point scalar: f32 or f64.
pub trait Real:
    Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
}

impl<T> Real for T where
    T: Float + FloatConst + FromPrimitive + ToPrimitive + Debug + Display + Default + Send + Sync + 'static
{
}

/// Converts an `f64` literal into `T`.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 literal representable in target float type")
}

/// Scalar usable as a spin-ket amplitude.
pub trait KetScalar:
    Clone
    + PartialEq
    + Debug
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// True when equality tests on this scalar are exact.
    const EXACT: bool;

    fn frac_1_sqrt_2() -> Self;

    fn from_ratio(numer: i64, denom: i64) -> Self;

    /// Non-negative square root, if it exists in this scalar type.
    fn sqrt(&self) -> Option<Self>;

    fn recip(&self) -> Option<Self>;

    fn to_f64(&self) -> f64;

    /// Exact zero for exact scalars; |x| below a few hundred ulps for floats.
    fn is_negligible(&self) -> bool;

    /// Amplitude text used by the ket pretty-printer.
    fn fmt_amplitude(&self) -> String;

    fn close_to(&self, other: &Self) -> bool {
        (self.clone() - other.clone()).is_negligible()
    }

    /// Converts into a float type, exactly where the value is representable.
    fn to_real<T: Real>(&self) -> T {
        lit(self.to_f64())
    }
}

impl<T: Real> KetScalar for T {
    const EXACT: bool = false;

    fn frac_1_sqrt_2() -> Self {
        T::FRAC_1_SQRT_2()
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        lit::<T>(numer as f64) / lit::<T>(denom as f64)
    }

    fn sqrt(&self) -> Option<Self> {
        (*self >= T::zero()).then(|| Float::sqrt(*self))
    }

    fn recip(&self) -> Option<Self> {
        (*self != T::zero()).then(|| Float::recip(*self))
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn is_negligible(&self) -> bool {
        Float::abs(*self) <= T::epsilon() * lit(1024.0)
    }

    fn fmt_amplitude(&self) -> String {
        format!("{:+.12}", ToPrimitive::to_f64(self).unwrap_or(f64::NAN))
    }
}

/// An element `rational + irrational·√2` of the field Q(√2).
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct QSqrt2 {
    rational: Rational,
    irrational: Rational,
}

impl QSqrt2 {
    pub fn new(rational: Rational, irrational: Rational) -> Self {
        QSqrt2 { rational, irrational }
    }

    pub fn from_rational(r: Rational) -> Self {
        QSqrt2::new(r, Rational::zero())
    }

    pub fn from_integer(n: i64) -> Self {
        QSqrt2::from_rational(Rational::from_integer(n))
    }

    pub fn sqrt2() -> Self {
        QSqrt2::new(Rational::zero(), Rational::one())
    }

    /// Rational part `a` of `a + b√2`.
    pub fn rational_part(&self) -> Rational {
        self.rational
    }

    /// Coefficient `b` of `a + b√2`.
    pub fn irrational_part(&self) -> Rational {
        self.irrational
    }

    /// The value as a rational, when the √2 part vanishes.
    pub fn as_rational(&self) -> Option<Rational> {
        self.irrational.is_zero().then_some(self.rational)
    }

    /// Exact sign: -1, 0 or +1.
    pub fn signum(&self) -> i8 {
        let a = self.rational.signum();
        let b = self.irrational.signum();
        if a == b || b.is_zero() {
            return sign_of(&a);
        }
        if a.is_zero() {
            return sign_of(&b);
        }
        // opposite signs: compare a² with 2b²
        let a2 = self.rational * self.rational;
        let b2 = self.irrational * self.irrational * Rational::from_integer(2);
        match a2.cmp(&b2) {
            std::cmp::Ordering::Greater => sign_of(&a),
            std::cmp::Ordering::Less => sign_of(&b),
            std::cmp::Ordering::Equal => 0,
        }
    }

    fn conjugate(&self) -> Self {
        QSqrt2::new(self.rational, -self.irrational)
    }

    /// The field norm `a² − 2b²`.
    fn norm(&self) -> Rational {
        self.rational * self.rational - Rational::from_integer(2) * self.irrational * self.irrational
    }
}

fn sign_of(r: &Rational) -> i8 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

/// Square root of a non-negative rational, if rational.
fn rational_sqrt(r: Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let (n, d) = (*r.numer(), *r.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (rn * rn == n && rd * rd == d).then(|| Rational::new(rn, rd))
}

impl Debug for QSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QSqrt2({} + {}√2)", self.rational, self.irrational)
    }
}

impl Display for QSqrt2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rational.is_zero(), self.irrational.is_zero()) {
            (_, true) => write!(f, "{}", self.rational),
            (true, false) => write!(f, "{}√2", self.irrational),
            (false, false) => write!(f, "{}{:+}√2", self.rational, self.irrational),
        }
    }
}

impl Add for QSqrt2 {
    type Output = QSqrt2;
    fn add(self, rhs: Self) -> Self {
        QSqrt2::new(self.rational + rhs.rational, self.irrational + rhs.irrational)
    }
}

impl Sub for QSqrt2 {
    type Output = QSqrt2;
    fn sub(self, rhs: Self) -> Self {
        QSqrt2::new(self.rational - rhs.rational, self.irrational - rhs.irrational)
    }
}

impl Mul for QSqrt2 {
    type Output = QSqrt2;
    fn mul(self, rhs: Self) -> Self {
        let two = Rational::from_integer(2);
        QSqrt2::new(
            self.rational * rhs.rational + two * self.irrational * rhs.irrational,
            self.rational * rhs.irrational + self.irrational * rhs.rational,
        )
    }
}

impl Neg for QSqrt2 {
    type Output = QSqrt2;
    fn neg(self) -> Self {
        QSqrt2::new(-self.rational, -self.irrational)
    }
}

impl Zero for QSqrt2 {
    fn zero() -> Self {
        QSqrt2::from_integer(0)
    }
    fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.irrational.is_zero()
    }
}

impl One for QSqrt2 {
    fn one() -> Self {
        QSqrt2::from_integer(1)
    }
}

impl KetScalar for QSqrt2 {
    const EXACT: bool = true;

    fn frac_1_sqrt_2() -> Self {
        QSqrt2::new(Rational::zero(), Rational::new(1, 2))
    }

    fn from_ratio(numer: i64, denom: i64) -> Self {
        QSqrt2::from_rational(Rational::new(numer, denom))
    }

    fn sqrt(&self) -> Option<Self> {
        match self.signum() {
            -1 => return None,
            0 => return Some(QSqrt2::zero()),
            _ => {}
        }
        if self.irrational.is_zero() {
            let r = self.rational;
            if let Some(root) = rational_sqrt(r) {
                return Some(QSqrt2::from_rational(root));
            }
            // r = 2s²  =>  √r = s√2
            return rational_sqrt(r / Rational::from_integer(2))
                .map(|s| QSqrt2::new(Rational::zero(), s));
        }
        // (c + d√2)² = (c² + 2d²) + 2cd√2; c² is a root of x² − a·x + b²/2.
        let disc = rational_sqrt(self.norm())?;
        let two = Rational::from_integer(2);
        for c2 in [(self.rational + disc) / two, (self.rational - disc) / two] {
            if let Some(c) = rational_sqrt(c2) {
                if c.is_zero() {
                    continue;
                }
                let d = self.irrational / (two * c);
                let root = QSqrt2::new(c, d);
                if root.signum() > 0 && root * root == *self {
                    return Some(root);
                }
                let root = -root;
                if root.signum() > 0 && root * root == *self {
                    return Some(root);
                }
            }
        }
        None
    }

    fn recip(&self) -> Option<Self> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        let c = self.conjugate();
        Some(QSqrt2::new(c.rational / n, c.irrational / n))
    }

    fn to_f64(&self) -> f64 {
        let a = self.rational.to_f64().unwrap_or(f64::NAN);
        let b = self.irrational.to_f64().unwrap_or(f64::NAN);
        a + b * std::f64::consts::SQRT_2
    }

    fn is_negligible(&self) -> bool {
        self.is_zero()
    }

    fn fmt_amplitude(&self) -> String {
        match Amplitude::try_from(*self) {
            Ok(amp) => amp.to_string(),
            Err(_) => format!("({self})"),
        }
    }
}

/// A signed square root of a rational: `sign · √radicand`.
///
/// Every amplitude that appears in the high-field pair algebra has this
/// form (±1, ±1/√2, ±1/2, ...). Products and squares stay exact.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Amplitude {
    sign: i8,
    radicand: Rational,
    value: f64,
}

impl Amplitude {
    pub fn new(sign: i8, radicand: Rational) -> Result<Self, crate::Error> {
        if radicand.is_negative() {
            return Err(crate::Error::InvalidInput(format!(
                "amplitude radicand must be non-negative, got {radicand}"
            )));
        }
        let sign = if radicand.is_zero() { 0 } else { sign.signum() };
        let root = radicand.to_f64().unwrap_or(f64::NAN).sqrt();
        Ok(Amplitude { sign, radicand, value: f64::from(sign) * root })
    }

    pub fn zero() -> Self {
        Amplitude { sign: 0, radicand: Rational::zero(), value: 0.0 }
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn radicand(&self) -> Rational {
        self.radicand
    }

    /// Cached float value.
    pub fn value(&self) -> f64 {
        self.value
    }

    /// |amplitude|², exact.
    pub fn square(&self) -> Rational {
        self.radicand
    }

    pub fn to_exact(&self) -> QSqrt2 {
        let magnitude = QSqrt2::from_rational(self.radicand)
            .sqrt()
            .expect("radicand of an Amplitude built from Q(√2) has a root in Q(√2)");
        if self.sign < 0 {
            -magnitude
        } else {
            magnitude
        }
    }
}

impl Mul for Amplitude {
    type Output = Amplitude;
    fn mul(self, rhs: Self) -> Self {
        let sign = self.sign * rhs.sign;
        let radicand = self.radicand * rhs.radicand;
        Amplitude::new(sign, radicand).expect("product of non-negative radicands")
    }
}

impl TryFrom<QSqrt2> for Amplitude {
    type Error = crate::Error;

    fn try_from(x: QSqrt2) -> Result<Self, Self::Error> {
        let (a, b) = (x.rational, x.irrational);
        match (a.is_zero(), b.is_zero()) {
            (true, true) => Ok(Amplitude::zero()),
            (false, true) => Amplitude::new(sign_of(&a), a * a),
            (true, false) => Amplitude::new(sign_of(&b), Rational::from_integer(2) * b * b),
            (false, false) => Err(crate::Error::NotRepresentable(format!(
                "{x} is not of the form ±√r"
            ))),
        }
    }
}

impl Display for Amplitude {
    /// Perfect-square radicands print as rationals (`+1`, `-1/2`), all
    /// others as `±√(p/q)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign == 0 {
            return write!(f, "0");
        }
        let s = if self.sign > 0 { '+' } else { '-' };
        match rational_sqrt(self.radicand) {
            Some(root) => write!(f, "{s}{root}"),
            None if self.radicand.is_integer() => write!(f, "{s}√{}", self.radicand),
            None => write!(f, "{s}√({})", self.radicand),
        }
    }
}
