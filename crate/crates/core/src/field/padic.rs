//! The rationals with the p-adic valuation.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{is_prime, FieldKind, NotPrime, ValuedField};
use crate::value::ExtValue;

/// Q with v_p. Elements are exact `BigRational`s in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Padic {
    p: u64,
}

impl Padic {
    pub fn new(p: u64) -> Result<Padic, NotPrime> {
        if is_prime(p) {
            Ok(Padic { p })
        } else {
            Err(NotPrime(p))
        }
    }

    fn int_val(&self, n: &BigInt) -> u64 {
        debug_assert!(!n.is_zero());
        let p = BigInt::from(self.p);
        let mut m = n.clone();
        let mut v = 0u64;
        loop {
            let (q, r) = m.div_rem(&p);
            if !r.is_zero() {
                return v;
            }
            v += 1;
            m = q;
        }
    }
}

impl ValuedField for Padic {
    type Elem = BigRational;

    fn kind(&self) -> FieldKind {
        FieldKind::Padic
    }

    fn prime(&self) -> u64 {
        self.p
    }

    fn characteristic(&self) -> u64 {
        0
    }

    fn descriptor(&self) -> String {
        format!("qp:{}", self.p)
    }

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }

    fn one(&self) -> BigRational {
        BigRational::one()
    }

    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }

    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }

    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }

    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }

    fn div(&self, a: &BigRational, b: &BigRational) -> Option<BigRational> {
        if b.is_zero() {
            None
        } else {
            Some(a / b)
        }
    }

    fn from_bigint(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }

    fn val(&self, a: &BigRational) -> ExtValue {
        if a.is_zero() {
            return ExtValue::Infinite;
        }
        let v = self.int_val(a.numer()) as i64 - self.int_val(a.denom()) as i64;
        ExtValue::from_int(v)
    }

    fn uniformizer(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(self.p))
    }

    fn indeterminate(&self) -> Option<BigRational> {
        None
    }

    fn as_rational(&self, a: &BigRational) -> Option<BigRational> {
        Some(a.clone())
    }

    fn reduce_mod_pow(&self, a: &BigRational, k: u32) -> Option<BigRational> {
        if a.is_zero() {
            return Some(BigRational::zero());
        }
        if self.val(a) < ExtValue::zero() {
            return None;
        }
        let modulus = BigInt::from(self.p).pow(k);
        let den_inv = mod_inverse(a.denom(), &modulus)?;
        let r = (a.numer() * den_inv).mod_floor(&modulus);
        Some(BigRational::from_integer(r))
    }

    fn format_elem(&self, a: &BigRational) -> String {
        if a.denom().is_one() {
            a.numer().to_string()
        } else {
            format!("{}/{}", a.numer(), a.denom())
        }
    }

    fn cmp_elems(&self, a: &BigRational, b: &BigRational) -> Ordering {
        a.cmp(b)
    }
}

/// Inverse of `a` modulo `m` via the extended Euclidean algorithm; `None`
/// when gcd(a, m) != 1.
fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn valuation_of_rationals() {
        let f = Padic::new(3).unwrap();
        assert_eq!(f.val(&q(9, 2)), ExtValue::from_int(2));
        assert_eq!(f.val(&q(2, 27)), ExtValue::from_int(-3));
        assert_eq!(f.val(&BigRational::zero()), ExtValue::Infinite);
        let f7 = Padic::new(7).unwrap();
        assert_eq!(f7.val(&BigRational::zero()), ExtValue::Infinite);
    }

    #[test]
    fn rejects_composite_primes() {
        assert!(Padic::new(6).is_err());
        assert!(Padic::new(1).is_err());
        assert!(Padic::new(2).is_ok());
    }

    #[test]
    fn canonical_representative_mod_p_k() {
        let f = Padic::new(7).unwrap();
        // 11/6 = 10 mod 49
        let r = f.reduce_mod_pow(&q(11, 6), 2).unwrap();
        assert_eq!(r, q(10, 1));
        // negative valuation has no representative
        assert!(f.reduce_mod_pow(&q(1, 7), 2).is_none());
    }

    #[test]
    fn division_by_zero_is_none() {
        let f = Padic::new(5).unwrap();
        assert!(f.div(&f.one(), &f.zero()).is_none());
    }
}
