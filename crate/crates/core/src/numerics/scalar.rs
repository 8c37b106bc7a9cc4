//! Scalar abstraction shared by every distance, radius and threshold.
//!
//! The exact instantiation is [`BigRational`]; `f64` is supported for quick
//! exploratory runs where rounding is acceptable.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, Signed, ToPrimitive, Zero};

/// Number type usable as a distance value.
pub trait Scalar: Clone + Debug + PartialOrd + Num + Signed + Send + Sync + 'static {
    /// Whether arithmetic on this type is exact.
    const EXACT: bool;

    fn from_int(n: i64) -> Self;

    /// `num / den`.
    fn ratio(num: i64, den: i64) -> Self {
        Self::from_int(num) / Self::from_int(den)
    }

    /// Parses `"p/q"` or an integer `"p"`. Decimal notation is rejected.
    fn parse_exact(text: &str) -> Option<Self>;

    /// Canonical text form; for rationals always `"p/q"` with `q > 0`.
    fn render(&self) -> String;

    /// Smallest integer `n` with `n >= self`, if it fits in an `i64`.
    fn ceil_int(&self) -> Option<i64>;

    /// Square root when it is representable in this type.
    fn try_sqrt(&self) -> Option<Self>;

    fn half(&self) -> Self {
        self.clone() / Self::from_int(2)
    }

    fn midpoint(a: &Self, b: &Self) -> Self {
        (a.clone() + b.clone()).half()
    }

    fn max_of(a: &Self, b: &Self) -> Self {
        if a >= b {
            a.clone()
        } else {
            b.clone()
        }
    }

    fn min_of(a: &Self, b: &Self) -> Self {
        if a <= b {
            a.clone()
        } else {
            b.clone()
        }
    }
}

fn parse_int_token(token: &str) -> Option<BigInt> {
    let token = token.trim();
    let digits = token.strip_prefix(['-', '+']).unwrap_or(token);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    token.parse().ok()
}

impl Scalar for BigRational {
    const EXACT: bool = true;

    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn parse_exact(text: &str) -> Option<Self> {
        match text.split_once('/') {
            Some((num, den)) => {
                let num = parse_int_token(num)?;
                let den = parse_int_token(den)?;
                if den.is_zero() {
                    return None;
                }
                Some(BigRational::new(num, den))
            }
            None => parse_int_token(text).map(BigRational::from_integer),
        }
    }

    fn render(&self) -> String {
        format!("{}/{}", self.numer(), self.denom())
    }

    fn ceil_int(&self) -> Option<i64> {
        self.ceil().to_integer().to_i64()
    }

    fn try_sqrt(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let num = self.numer().sqrt();
        let den = self.denom().sqrt();
        if &(&num * &num) == self.numer() && &(&den * &den) == self.denom() {
            Some(BigRational::new(num, den))
        } else {
            None
        }
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_int(n: i64) -> Self {
        n as f64
    }

    fn parse_exact(text: &str) -> Option<Self> {
        let r = BigRational::parse_exact(text)?;
        Some(r.numer().to_f64()? / r.denom().to_f64()?)
    }

    fn render(&self) -> String {
        format!("{self}")
    }

    fn ceil_int(&self) -> Option<i64> {
        let c = self.ceil();
        (c.is_finite() && c.abs() < 9.0e18).then_some(c as i64)
    }

    fn try_sqrt(&self) -> Option<Self> {
        (*self >= 0.0).then(|| self.sqrt())
    }
}

/// `base^exp` by repeated squaring.
pub fn pow<S: Scalar>(base: &S, exp: u32) -> S {
    num_traits::pow(base.clone(), exp as usize)
}

/// `true` when `x` is an integer value.
pub fn is_integral<S: Scalar>(x: &S) -> bool {
    match x.ceil_int() {
        Some(c) => S::from_int(c) == *x,
        None => false,
    }
}
