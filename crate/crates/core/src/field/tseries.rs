//! Rational functions over F_p with the t-adic valuation.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::fp::FpPoly;
use super::{is_prime, FieldKind, NotPrime, ValuedField};
use crate::value::ExtValue;

/// An element of F_p(t) in canonical form: coprime numerator and monic
/// denominator; zero is 0/1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: FpPoly,
    den: FpPoly,
}

impl RatFunc {
    pub fn new(num: FpPoly, den: FpPoly) -> RatFunc {
        assert!(!den.is_zero(), "zero denominator");
        debug_assert_eq!(num.p, den.p);
        if num.is_zero() {
            return RatFunc {
                den: FpPoly::one(num.p),
                num,
            };
        }
        let g = num.gcd(&den);
        let (num, _) = num.divrem(&g);
        let (den, _) = den.divrem(&g);
        // normalize to a monic denominator
        let lead = den.leading();
        let den = den.monic();
        let p = num.p;
        let inv_lead = {
            // lead^-1 = lead^(p-2)
            let mut acc = 1u64;
            let mut b = lead % p;
            let mut e = p - 2;
            while e > 0 {
                if e & 1 == 1 {
                    acc = ((acc as u128 * b as u128) % p as u128) as u64;
                }
                b = ((b as u128 * b as u128) % p as u128) as u64;
                e >>= 1;
            }
            acc
        };
        RatFunc {
            num: num.mul_scalar(inv_lead),
            den,
        }
    }

    pub fn from_poly(num: FpPoly) -> RatFunc {
        let p = num.p;
        RatFunc {
            num,
            den: FpPoly::one(p),
        }
    }

    pub fn numer(&self) -> &FpPoly {
        &self.num
    }

    pub fn denom(&self) -> &FpPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn p(&self) -> u64 {
        self.num.p
    }

    /// t-order: ord(num) - ord(den); `None` for zero.
    pub fn t_order(&self) -> Option<i64> {
        let n = self.num.t_order()? as i64;
        let d = self.den.t_order().expect("nonzero denominator") as i64;
        Some(n - d)
    }
}

/// F_p(t) with the order-of-vanishing-at-0 valuation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TSeries {
    p: u64,
}

impl TSeries {
    pub fn new(p: u64) -> Result<TSeries, NotPrime> {
        if is_prime(p) {
            Ok(TSeries { p })
        } else {
            Err(NotPrime(p))
        }
    }
}

impl ValuedField for TSeries {
    type Elem = RatFunc;

    fn kind(&self) -> FieldKind {
        FieldKind::TSeries
    }

    fn prime(&self) -> u64 {
        self.p
    }

    fn characteristic(&self) -> u64 {
        self.p
    }

    fn descriptor(&self) -> String {
        format!("fpt:{}", self.p)
    }

    fn zero(&self) -> RatFunc {
        RatFunc::from_poly(FpPoly::zero(self.p))
    }

    fn one(&self) -> RatFunc {
        RatFunc::from_poly(FpPoly::one(self.p))
    }

    fn is_zero(&self, a: &RatFunc) -> bool {
        a.is_zero()
    }

    fn add(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        let num = a.num.mul(&b.den).add(&b.num.mul(&a.den));
        RatFunc::new(num, a.den.mul(&b.den))
    }

    fn sub(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        self.add(a, &self.neg(b))
    }

    fn mul(&self, a: &RatFunc, b: &RatFunc) -> RatFunc {
        RatFunc::new(a.num.mul(&b.num), a.den.mul(&b.den))
    }

    fn neg(&self, a: &RatFunc) -> RatFunc {
        RatFunc {
            num: a.num.neg(),
            den: a.den.clone(),
        }
    }

    fn div(&self, a: &RatFunc, b: &RatFunc) -> Option<RatFunc> {
        if b.is_zero() {
            return None;
        }
        Some(RatFunc::new(a.num.mul(&b.den), a.den.mul(&b.num)))
    }

    fn from_bigint(&self, n: &BigInt) -> RatFunc {
        let r = n.mod_floor(&BigInt::from(self.p));
        RatFunc::from_poly(FpPoly::new(self.p, vec![r.to_u64().expect("reduced mod p")]))
    }

    fn val(&self, a: &RatFunc) -> ExtValue {
        match a.t_order() {
            None => ExtValue::Infinite,
            Some(v) => ExtValue::from_int(v),
        }
    }

    fn uniformizer(&self) -> RatFunc {
        RatFunc::from_poly(FpPoly::t_pow(self.p, 1))
    }

    fn indeterminate(&self) -> Option<RatFunc> {
        Some(self.uniformizer())
    }

    fn as_rational(&self, _a: &RatFunc) -> Option<num_rational::BigRational> {
        None
    }

    fn reduce_mod_pow(&self, a: &RatFunc, k: u32) -> Option<RatFunc> {
        if a.is_zero() {
            return Some(self.zero());
        }
        if self.val(a) < ExtValue::zero() {
            return None;
        }
        // v(a) >= 0 and num/den coprime force a unit denominator at t = 0
        debug_assert!(a.den.eval0() != 0);
        let inv = a.den.series_inverse(k as usize);
        Some(RatFunc::from_poly(a.num.mul(&inv).truncated(k as usize)))
    }

    fn format_elem(&self, a: &RatFunc) -> String {
        let num_str = a.num.to_string();
        if a.den == FpPoly::one(self.p) {
            num_str
        } else {
            let num_part = if a.num.coeffs.iter().filter(|&&c| c != 0).count() > 1 {
                format!("({num_str})")
            } else {
                num_str
            };
            format!("{num_part}/({})", a.den)
        }
    }

    fn cmp_elems(&self, a: &RatFunc, b: &RatFunc) -> Ordering {
        let key = |x: &RatFunc| {
            (
                x.den.coeffs.len(),
                x.den.coeffs.clone(),
                x.num.coeffs.len(),
                x.num.coeffs.clone(),
            )
        };
        key(a).cmp(&key(b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fld() -> TSeries {
        TSeries::new(5).unwrap()
    }

    fn poly(coeffs: &[u64]) -> RatFunc {
        RatFunc::from_poly(FpPoly::new(5, coeffs.to_vec()))
    }

    #[test]
    fn t_order_of_quotients() {
        let f = fld();
        // t^2 / (t + 1) has order 2
        let a = f
            .div(&poly(&[0, 0, 1]), &poly(&[1, 1]))
            .unwrap();
        assert_eq!(f.val(&a), ExtValue::from_int(2));
        // 1 / t has order -1
        let b = f.div(&f.one(), &poly(&[0, 1])).unwrap();
        assert_eq!(f.val(&b), ExtValue::from_int(-1));
        assert_eq!(f.val(&f.zero()), ExtValue::Infinite);
    }

    #[test]
    fn arithmetic_canonicalizes() {
        let f = fld();
        // t/t = 1
        let t = f.uniformizer();
        assert_eq!(f.div(&t, &t).unwrap(), f.one());
        // t * t = t^2
        assert_eq!(f.mul(&t, &t), poly(&[0, 0, 1]));
        // (t^2-1)/(t-1) = t+1
        let a = f
            .div(&f.sub(&poly(&[0, 0, 1]), &f.one()), &f.sub(&t, &f.one()))
            .unwrap();
        assert_eq!(a, poly(&[1, 1]));
    }

    #[test]
    fn characteristic_kills_binomials() {
        let f = TSeries::new(3).unwrap();
        assert!(f.is_zero(&f.from_int(6)));
        assert_eq!(f.from_int(-1), f.from_int(2));
    }

    #[test]
    fn series_truncation_representative() {
        let f = fld();
        // 1/(1-t) = 1 + t + t^2 + ... -> truncated below t^3
        let a = f
            .div(&f.one(), &f.sub(&f.one(), &f.uniformizer()))
            .unwrap();
        let r = f.reduce_mod_pow(&a, 3).unwrap();
        assert_eq!(r, poly(&[1, 1, 1]));
        // difference has valuation >= 3
        assert!(f.val(&f.sub(&a, &r)) >= ExtValue::from_int(3));
    }
}
