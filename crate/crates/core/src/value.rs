//! Values of valuations: exact rationals extended by a maximal element `inf`.
//!
//! Every valuation in this crate takes values here. Rationals are kept in
//! lowest terms with positive denominator (num-rational's canonical form),
//! and `Infinite` compares strictly greater than every finite value.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ExtValue {
    Finite(BigRational),
    Infinite,
}

impl ExtValue {
    pub fn zero() -> Self {
        ExtValue::Finite(BigRational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        ExtValue::Finite(BigRational::from_integer(BigInt::from(n)))
    }

    /// Exact rational `num/den`. Panics if `den == 0`.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        ExtValue::Finite(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtValue::Infinite)
    }

    pub fn is_finite(&self) -> bool {
        !self.is_infinite()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            ExtValue::Finite(r) => Some(r),
            ExtValue::Infinite => None,
        }
    }

    /// Subtracts a finite rational. `inf - r = inf`; subtracting `inf` is not
    /// defined in the value group and has no counterpart here.
    pub fn sub_finite(&self, rhs: &BigRational) -> ExtValue {
        match self {
            ExtValue::Finite(r) => ExtValue::Finite(r - rhs),
            ExtValue::Infinite => ExtValue::Infinite,
        }
    }

    /// `n * self` where `n` is an exponent of a polynomial term. The `n = 0`
    /// case yields 0 even for `inf`: it stands for the value of `q^0 = 1`.
    pub fn scale(&self, n: usize) -> ExtValue {
        match self {
            _ if n == 0 => ExtValue::zero(),
            ExtValue::Finite(r) => ExtValue::Finite(r * BigRational::from_integer(BigInt::from(n))),
            ExtValue::Infinite => ExtValue::Infinite,
        }
    }

    /// Division by a positive integer (the `/b` in the level formula).
    /// `inf / n = inf`.
    pub fn div_nat(&self, n: usize) -> ExtValue {
        assert!(n >= 1, "division by zero");
        match self {
            ExtValue::Finite(r) => ExtValue::Finite(r / BigRational::from_integer(BigInt::from(n))),
            ExtValue::Infinite => ExtValue::Infinite,
        }
    }

    pub fn min(self, other: ExtValue) -> ExtValue {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: ExtValue) -> ExtValue {
        if self >= other {
            self
        } else {
            other
        }
    }
}

impl PartialOrd for ExtValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtValue {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtValue::Infinite, ExtValue::Infinite) => Ordering::Equal,
            (ExtValue::Infinite, ExtValue::Finite(_)) => Ordering::Greater,
            (ExtValue::Finite(_), ExtValue::Infinite) => Ordering::Less,
            (ExtValue::Finite(a), ExtValue::Finite(b)) => a.cmp(b),
        }
    }
}

impl Add for ExtValue {
    type Output = ExtValue;
    fn add(self, rhs: ExtValue) -> ExtValue {
        &self + &rhs
    }
}

impl Add for &ExtValue {
    type Output = ExtValue;
    fn add(self, rhs: &ExtValue) -> ExtValue {
        match (self, rhs) {
            (ExtValue::Finite(a), ExtValue::Finite(b)) => ExtValue::Finite(a + b),
            _ => ExtValue::Infinite,
        }
    }
}

impl fmt::Display for ExtValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtValue::Infinite => write!(f, "inf"),
            ExtValue::Finite(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValueParseError(pub String);

impl fmt::Display for ValueParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid value literal: {}", self.0)
    }
}

impl std::error::Error for ValueParseError {}

impl FromStr for ExtValue {
    type Err = ValueParseError;

    /// Accepts `inf`, an integer, or `num/den` with a positive denominator.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "inf" {
            return Ok(ExtValue::Infinite);
        }
        let parse_int = |t: &str| -> Result<BigInt, ValueParseError> {
            t.parse::<BigInt>().map_err(|_| ValueParseError(s.to_string()))
        };
        match s.split_once('/') {
            None => Ok(ExtValue::Finite(BigRational::from_integer(parse_int(s)?))),
            Some((num, den)) => {
                let den = parse_int(den)?;
                if den.is_zero() || den.is_negative() {
                    return Err(ValueParseError(s.to_string()));
                }
                Ok(ExtValue::Finite(BigRational::new(parse_int(num)?, den)))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn infinite_is_maximum() {
        assert!(ExtValue::Infinite > ExtValue::from_int(1_000_000_000));
        assert_eq!(ExtValue::Infinite, ExtValue::Infinite);
        assert!(ExtValue::from_ratio(3, 2) < ExtValue::from_int(2));
    }

    #[test]
    fn addition_absorbs_infinity() {
        let inf = ExtValue::Infinite;
        assert_eq!(&inf + &ExtValue::from_int(-7), ExtValue::Infinite);
        assert_eq!(
            ExtValue::from_ratio(1, 2) + ExtValue::from_ratio(1, 3),
            ExtValue::from_ratio(5, 6)
        );
    }

    #[test]
    fn division_by_positive_integer() {
        assert_eq!(ExtValue::from_int(3).div_nat(2), ExtValue::from_ratio(3, 2));
        assert_eq!(ExtValue::Infinite.div_nat(5), ExtValue::Infinite);
    }

    #[test]
    fn scaling_by_exponent() {
        assert_eq!(ExtValue::from_ratio(1, 2).scale(4), ExtValue::from_int(2));
        assert_eq!(ExtValue::Infinite.scale(3), ExtValue::Infinite);
        // value of q^0, even when v(q) = inf
        assert_eq!(ExtValue::Infinite.scale(0), ExtValue::zero());
    }

    #[test]
    fn display_and_parse_round_trip() {
        for s in ["inf", "3/2", "-7", "0", "-10/3"] {
            let v: ExtValue = s.parse().unwrap();
            assert_eq!(v.to_string(), s);
        }
        assert!("1/0".parse::<ExtValue>().is_err());
        assert!("x".parse::<ExtValue>().is_err());
    }
}
