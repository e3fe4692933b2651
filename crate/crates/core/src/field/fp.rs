//! Dense polynomials over the prime field F_p, used as numerators and
//! denominators of `RatFunc` coefficients.

use std::fmt;

/// A polynomial in t over F_p. Coefficients are reduced representatives in
/// `[0, p)` with no trailing zeros; the zero polynomial has an empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpPoly {
    pub p: u64,
    pub coeffs: Vec<u64>,
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, p);
        }
        base = mulmod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn invmod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0, "inverting zero mod p");
    powmod(a, p - 2, p)
}

impl FpPoly {
    pub fn new(p: u64, coeffs: Vec<u64>) -> FpPoly {
        let mut coeffs: Vec<u64> = coeffs.into_iter().map(|c| c % p).collect();
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    pub fn zero(p: u64) -> FpPoly {
        FpPoly { p, coeffs: vec![] }
    }

    pub fn one(p: u64) -> FpPoly {
        FpPoly::new(p, vec![1])
    }

    pub fn constant(p: u64, c: i64) -> FpPoly {
        FpPoly::new(p, vec![c.rem_euclid(p as i64) as u64])
    }

    /// The monomial t^k.
    pub fn t_pow(p: u64, k: usize) -> FpPoly {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = 1;
        FpPoly::new(p, coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Order of vanishing at t = 0; `None` for the zero polynomial.
    pub fn t_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    pub fn leading(&self) -> u64 {
        *self.coeffs.last().unwrap_or(&0)
    }

    pub fn eval0(&self) -> u64 {
        *self.coeffs.first().unwrap_or(&0)
    }

    pub fn add(&self, rhs: &FpPoly) -> FpPoly {
        debug_assert_eq!(self.p, rhs.p);
        let p = self.p;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                (self.coeffs.get(i).copied().unwrap_or(0) + rhs.coeffs.get(i).copied().unwrap_or(0)) % p
            })
            .collect();
        FpPoly::new(p, coeffs)
    }

    pub fn neg(&self) -> FpPoly {
        let p = self.p;
        FpPoly::new(p, self.coeffs.iter().map(|&c| (p - c) % p).collect())
    }

    pub fn sub(&self, rhs: &FpPoly) -> FpPoly {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &FpPoly) -> FpPoly {
        debug_assert_eq!(self.p, rhs.p);
        let p = self.p;
        if self.is_zero() || rhs.is_zero() {
            return FpPoly::zero(p);
        }
        let mut coeffs = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = (coeffs[i + j] + mulmod(a, b, p)) % p;
            }
        }
        FpPoly::new(p, coeffs)
    }

    pub fn mul_scalar(&self, c: u64) -> FpPoly {
        let p = self.p;
        FpPoly::new(p, self.coeffs.iter().map(|&a| mulmod(a, c, p)).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, rhs: &FpPoly) -> (FpPoly, FpPoly) {
        debug_assert_eq!(self.p, rhs.p);
        assert!(!rhs.is_zero(), "division by the zero polynomial");
        let p = self.p;
        let d = rhs.coeffs.len() - 1;
        if self.coeffs.len() < rhs.coeffs.len() {
            return (FpPoly::zero(p), self.clone());
        }
        let lead_inv = invmod(rhs.leading(), p);
        let mut rem = self.coeffs.clone();
        let mut quo = vec![0u64; self.coeffs.len() - d];
        for i in (d..self.coeffs.len()).rev() {
            let q = mulmod(rem[i], lead_inv, p);
            if q != 0 {
                quo[i - d] = q;
                for (j, &b) in rhs.coeffs.iter().enumerate() {
                    let idx = i - d + j;
                    rem[idx] = (rem[idx] + p - mulmod(q, b, p)) % p;
                }
            }
        }
        rem.truncate(d);
        (FpPoly::new(p, quo), FpPoly::new(p, rem))
    }

    pub fn gcd(&self, rhs: &FpPoly) -> FpPoly {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> FpPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.mul_scalar(invmod(self.leading(), self.p))
    }

    /// Power-series inverse to `terms` coefficients; requires a unit
    /// constant term.
    pub fn series_inverse(&self, terms: usize) -> FpPoly {
        assert!(self.eval0() != 0, "series inverse needs a unit constant term");
        let p = self.p;
        let c0_inv = invmod(self.eval0(), p);
        let mut inv = vec![0u64; terms];
        if terms == 0 {
            return FpPoly::zero(p);
        }
        inv[0] = c0_inv;
        for j in 1..terms {
            let mut acc = 0u64;
            for i in 1..=j.min(self.coeffs.len() - 1) {
                acc = (acc + mulmod(self.coeffs[i], inv[j - i], p)) % p;
            }
            inv[j] = mulmod((p - acc) % p, c0_inv, p);
        }
        FpPoly::new(p, inv)
    }

    /// Truncation below t^k.
    pub fn truncated(&self, k: usize) -> FpPoly {
        FpPoly::new(self.p, self.coeffs.iter().take(k).copied().collect())
    }
}

impl fmt::Display for FpPoly {
    /// Ascending powers, e.g. `1+2*t+t^3`; `0` for the zero polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "t")?,
                (1, c) => write!(f, "{c}*t")?,
                (i, 1) => write!(f, "t^{i}")?,
                (i, c) => write!(f, "{c}*t^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divrem_reconstructs() {
        let p = 5;
        let a = FpPoly::new(p, vec![1, 2, 3, 4]);
        let b = FpPoly::new(p, vec![2, 1]);
        let (q, r) = a.divrem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree() < b.degree());
    }

    #[test]
    fn gcd_is_monic_common_divisor() {
        let p = 3;
        let f = FpPoly::new(p, vec![0, 1]); // t
        let g = FpPoly::new(p, vec![0, 0, 2]); // 2t^2
        let d = f.gcd(&g);
        assert_eq!(d, FpPoly::new(p, vec![0, 1]));
    }

    #[test]
    fn series_inverse_truncates_correctly() {
        let p = 3;
        // 1/(1+t) = 1 - t + t^2 - ... = 1 + 2t + t^2 + 2t^3 ... mod 3
        let d = FpPoly::new(p, vec![1, 1]);
        let inv = d.series_inverse(4);
        assert_eq!(d.mul(&inv).truncated(4), FpPoly::one(p));
    }
}
