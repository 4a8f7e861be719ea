//! Exact scalar arithmetic: arbitrary-precision rationals and `Q(sqrt 2)`.
//!
//! [`Rational`] is a canonical reduced fraction (denominator always
//! positive, stored in lowest terms). [`QuadExt`] is an element
//! `a + b*sqrt(2)` with exact sign determination by case analysis, so
//! positive-semidefiniteness can be decided over `Q(sqrt 2)` without ever
//! approximating the surd. Both are immutable values with structural
//! equality, safe to share between threads.
//!
//! Textual encodings: `Rational` prints as `p/q` (just `p` when `q = 1`);
//! `QuadExt` as `p/q + r/s*sqrt2` (the surd term is dropped when zero).
//! Parsing round-trips bit-exactly.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::{BigInt, Sign as BigSign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Errors from constructing or parsing exact scalars.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactNumError {
    /// Zero denominator in a fraction.
    DivisionByZero,
    /// Malformed textual encoding.
    Parse(String),
}

impl fmt::Display for ExactNumError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactNumError::DivisionByZero => write!(f, "division by zero"),
            ExactNumError::Parse(s) => write!(f, "invalid number literal: {s}"),
        }
    }
}

impl core::error::Error for ExactNumError {}

/// Arbitrary-precision rational in lowest terms, denominator > 0.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    /// Canonical reduced fraction `num/den`; fails on `den == 0`.
    pub fn new<N: Into<BigInt>, D: Into<BigInt>>(num: N, den: D) -> Result<Self, ExactNumError> {
        let den: BigInt = den.into();
        if den.is_zero() {
            return Err(ExactNumError::DivisionByZero);
        }
        Ok(Rational(BigRational::new(num.into(), den)))
    }

    pub fn from_int<N: Into<BigInt>>(n: N) -> Self {
        Rational(BigRational::from_integer(n.into()))
    }

    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// Exact sign: -1, 0 or +1.
    pub fn signum(&self) -> i8 {
        match self.0.numer().sign() {
            BigSign::Minus => -1,
            BigSign::NoSign => 0,
            BigSign::Plus => 1,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Smallest integer >= self, as a rational.
    pub fn ceil(&self) -> Self {
        Rational(self.0.ceil())
    }

    /// Largest integer <= self, as a rational.
    pub fn floor(&self) -> Self {
        Rational(self.0.floor())
    }

    pub fn recip(&self) -> Result<Self, ExactNumError> {
        if self.is_zero() {
            return Err(ExactNumError::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    pub fn pow(&self, exp: u32) -> Self {
        Rational(self.0.pow(exp as i32))
    }

    pub fn max(self, other: Self) -> Self {
        if self >= other {
            self
        } else {
            other
        }
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Rational {
    type Err = ExactNumError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || ExactNumError::Parse(String::from(s));
        match s.split_once('/') {
            Some((num, den)) => {
                let num = BigInt::from_str(num.trim()).map_err(|_| bad())?;
                let den = BigInt::from_str(den.trim()).map_err(|_| bad())?;
                if den.is_zero() {
                    return Err(ExactNumError::DivisionByZero);
                }
                Ok(Rational(BigRational::new(num, den)))
            }
            None => {
                let num = BigInt::from_str(s).map_err(|_| bad())?;
                Ok(Rational::from_int(num))
            }
        }
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

macro_rules! rational_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(self.0 $op rhs.0)
            }
        }
        impl<'a> $trait<&'a Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                Rational(&self.0 $op &rhs.0)
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                Rational(self.0 $op &rhs.0)
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                Rational(&self.0 $op rhs.0)
            }
        }
    };
}

rational_binop!(Add, add, +);
rational_binop!(Sub, sub, -);
rational_binop!(Mul, mul, *);

// Division panics on a zero divisor, like integer division; use `recip`
// for a checked reciprocal.
rational_binop!(Div, div, /);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-&self.0)
    }
}

impl core::iter::Sum for Rational {
    fn sum<I: Iterator<Item = Rational>>(iter: I) -> Rational {
        iter.fold(Rational::zero(), |acc, x| acc + x)
    }
}

/// Element `rat + surd*sqrt(2)` of the real quadratic field `Q(sqrt 2)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadExt {
    rat: Rational,
    surd: Rational,
}

impl QuadExt {
    pub fn new(rat: Rational, surd: Rational) -> Self {
        QuadExt { rat, surd }
    }

    pub fn from_rational(rat: Rational) -> Self {
        QuadExt {
            rat,
            surd: Rational::zero(),
        }
    }

    /// The element `sqrt(2)`.
    pub fn sqrt2() -> Self {
        QuadExt {
            rat: Rational::zero(),
            surd: Rational::one(),
        }
    }

    pub fn zero() -> Self {
        QuadExt::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        QuadExt::from_rational(Rational::one())
    }

    pub fn rat_part(&self) -> &Rational {
        &self.rat
    }

    pub fn surd_part(&self) -> &Rational {
        &self.surd
    }

    pub fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.surd.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.surd.is_zero()
    }

    /// Galois conjugate `rat - surd*sqrt(2)`.
    pub fn conj(&self) -> Self {
        QuadExt {
            rat: self.rat.clone(),
            surd: -&self.surd,
        }
    }

    /// Field norm `rat^2 - 2*surd^2`, a rational.
    pub fn norm(&self) -> Rational {
        &self.rat * &self.rat - Rational::from(2) * &self.surd * &self.surd
    }

    /// Exact sign of `rat + surd*sqrt(2)` using only rational comparisons.
    ///
    /// Since `sqrt 2` is irrational the value vanishes only when both
    /// parts do; in the mixed-sign cases the sign is carried by the part
    /// whose square (weighted by 2) dominates.
    pub fn signum(&self) -> i8 {
        let sa = self.rat.signum();
        let sb = self.surd.signum();
        match (sa, sb) {
            (0, _) => sb,
            (_, 0) => sa,
            (1, 1) => 1,
            (-1, -1) => -1,
            // a and b*sqrt2 compete: compare a^2 against 2 b^2.
            (1, -1) => self.norm().signum(),
            (-1, 1) => -self.norm().signum(),
            _ => unreachable!(),
        }
    }

    pub fn recip(&self) -> Result<Self, ExactNumError> {
        if self.is_zero() {
            return Err(ExactNumError::DivisionByZero);
        }
        let n = self.norm();
        Ok(QuadExt {
            rat: &self.rat / &n,
            surd: -&self.surd / &n,
        })
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.surd.is_zero() {
            write!(f, "{}", self.rat)
        } else if self.surd.is_negative() {
            write!(f, "{} - {}*sqrt2", self.rat, self.surd.abs())
        } else {
            write!(f, "{} + {}*sqrt2", self.rat, self.surd)
        }
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for QuadExt {
    type Err = ExactNumError;

    /// Accepts `p/q`, `p/q + r/s*sqrt2`, `p/q - r/s*sqrt2`, and a bare
    /// surd term `r/s*sqrt2` (with `sqrt2` shorthand for `1*sqrt2`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let bad = || ExactNumError::Parse(String::from(s));

        // Split at the last top-level '+' or '-' that separates the two
        // terms. A sign at position 0 or right after '/' belongs to a
        // number, not to the term structure.
        let surd_term = |t: &str| -> Result<Rational, ExactNumError> {
            let t = t.trim();
            if t == "sqrt2" {
                return Ok(Rational::one());
            }
            match t.strip_suffix("sqrt2") {
                Some(head) => {
                    let head = head.trim();
                    let head = head.strip_suffix('*').ok_or_else(bad)?;
                    Rational::from_str(head)
                }
                None => Err(bad()),
            }
        };

        if !s.contains("sqrt2") {
            return Ok(QuadExt::from_rational(Rational::from_str(s)?));
        }

        let mut split = None;
        for (i, ch) in s.char_indices().skip(1) {
            if (ch == '+' || ch == '-')
                && !matches!(
                    s[..i].trim_end().chars().last(),
                    Some('/') | Some('+') | Some('-') | Some('*') | None
                )
            {
                split = Some((i, ch));
            }
        }

        match split {
            Some((i, ch)) => {
                let rat = Rational::from_str(&s[..i])?;
                let mut surd = surd_term(&s[i + 1..])?;
                if ch == '-' {
                    surd = -surd;
                }
                Ok(QuadExt::new(rat, surd))
            }
            None => Ok(QuadExt::new(Rational::zero(), surd_term(s)?)),
        }
    }
}

impl From<Rational> for QuadExt {
    fn from(r: Rational) -> Self {
        QuadExt::from_rational(r)
    }
}

impl From<i64> for QuadExt {
    fn from(n: i64) -> Self {
        QuadExt::from_rational(Rational::from(n))
    }
}

impl Add for QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: QuadExt) -> QuadExt {
        QuadExt {
            rat: self.rat + rhs.rat,
            surd: self.surd + rhs.surd,
        }
    }
}

impl Sub for QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: QuadExt) -> QuadExt {
        QuadExt {
            rat: self.rat - rhs.rat,
            surd: self.surd - rhs.surd,
        }
    }
}

impl Mul for QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: QuadExt) -> QuadExt {
        // (a + b s)(c + d s) = ac + 2bd + (ad + bc) s, s^2 = 2
        let two = Rational::from(2);
        QuadExt {
            rat: &self.rat * &rhs.rat + two * &self.surd * &rhs.surd,
            surd: &self.rat * &rhs.surd + &self.surd * &rhs.rat,
        }
    }
}

impl Div for QuadExt {
    type Output = QuadExt;
    fn div(self, rhs: QuadExt) -> QuadExt {
        let inv = rhs.recip().expect("division by zero in Q(sqrt2)");
        self * inv
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt {
            rat: -self.rat,
            surd: -self.surd,
        }
    }
}

/// Exact field scalar usable by the linear algebra and moment machinery.
///
/// Implementations must be exact: `signum` decides the true sign, and the
/// arithmetic has no rounding. Implemented for [`Rational`] and
/// [`QuadExt`].
pub trait Scalar:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    /// Exact sign in {-1, 0, +1}.
    fn signum(&self) -> i8;
    fn from_rational(r: &Rational) -> Self;
    fn from_int(n: i64) -> Self;

    /// Rescale a vector to a canonical representative of its ray.
    ///
    /// For rationals this clears denominators and divides by the content,
    /// yielding coprime integers; the orientation chosen by the caller is
    /// preserved. The default is a no-op.
    fn normalize_column(col: &mut [Self]) {
        let _ = col;
    }
}

fn integer_scale(values: &mut [Rational]) {
    if values.iter().all(|v| v.is_zero()) {
        return;
    }
    let mut lcm = BigInt::one();
    for v in values.iter() {
        lcm = lcm.lcm(v.denom());
    }
    let lcm = Rational::from_int(lcm);
    let mut gcd = BigInt::zero();
    for v in values.iter() {
        gcd = gcd.gcd((v * &lcm).numer());
    }
    let scale = &lcm / Rational::from_int(gcd);
    for v in values.iter_mut() {
        *v = &*v * &scale;
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn signum(&self) -> i8 {
        Rational::signum(self)
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn from_int(n: i64) -> Self {
        Rational::from(n)
    }
    fn normalize_column(col: &mut [Self]) {
        integer_scale(col);
    }
}

impl Scalar for QuadExt {
    fn zero() -> Self {
        QuadExt::zero()
    }
    fn one() -> Self {
        QuadExt::one()
    }
    fn is_zero(&self) -> bool {
        QuadExt::is_zero(self)
    }
    fn signum(&self) -> i8 {
        QuadExt::signum(self)
    }
    fn from_rational(r: &Rational) -> Self {
        QuadExt::from_rational(r.clone())
    }
    fn from_int(n: i64) -> Self {
        QuadExt::from(n)
    }
    fn normalize_column(col: &mut [Self]) {
        // Clear rational denominators of both parts, divide by the
        // common integer content.
        let mut parts: Vec<Rational> = Vec::with_capacity(col.len() * 2);
        for v in col.iter() {
            parts.push(v.rat.clone());
            parts.push(v.surd.clone());
        }
        integer_scale(&mut parts);
        for (v, pair) in col.iter_mut().zip(parts.chunks(2)) {
            *v = QuadExt::new(pair[0].clone(), pair[1].clone());
        }
    }
}

/// Convenience constructor used pervasively in tests and generators.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(num, den).expect("nonzero denominator")
}
