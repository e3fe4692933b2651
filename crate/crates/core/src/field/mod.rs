//! Valued base fields.
//!
//! Two concrete fields are provided: `Padic` (the rationals with the p-adic
//! valuation) and `TSeries` (rational functions over F_p with the t-adic
//! valuation). Everything above this layer is generic over [`ValuedField`];
//! the field value is passed around as context, coefficients are plain data.

mod fp;
mod padic;
mod tseries;

pub use fp::FpPoly;
pub use padic::Padic;
pub use tseries::{RatFunc, TSeries};

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;

use crate::value::ExtValue;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldKind {
    /// Q with the p-adic valuation.
    Padic,
    /// F_p(t) with the t-adic valuation.
    TSeries,
}

/// A valued field together with its element operations.
///
/// The field value itself is a small descriptor (essentially the prime);
/// element arithmetic is routed through it so that mod-p reduction and
/// valuations always know their context.
pub trait ValuedField: Clone + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + fmt::Debug + PartialEq + Send + Sync + 'static;

    fn kind(&self) -> FieldKind;
    fn prime(&self) -> u64;
    /// 0 for the p-adic rationals, p for F_p(t).
    fn characteristic(&self) -> u64;
    /// 1 in characteristic 0, otherwise the characteristic.
    fn exponent_characteristic(&self) -> u64 {
        match self.characteristic() {
            0 => 1,
            p => p,
        }
    }
    /// Canonical descriptor, `qp:<p>` or `fpt:<p>`.
    fn descriptor(&self) -> String;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// Exact division; `None` when `b = 0`.
    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;

    fn from_bigint(&self, n: &BigInt) -> Self::Elem;
    fn from_int(&self, n: i64) -> Self::Elem {
        self.from_bigint(&BigInt::from(n))
    }

    /// The valuation of the field: v(0) = inf, v(ab) = v(a) + v(b),
    /// v(a + b) >= min(v(a), v(b)).
    fn val(&self, a: &Self::Elem) -> ExtValue;

    /// An element of valuation exactly 1 (p, resp. t).
    fn uniformizer(&self) -> Self::Elem;

    fn uniformizer_pow(&self, k: i32) -> Self::Elem {
        let u = self.uniformizer();
        let mut acc = self.one();
        for _ in 0..k.unsigned_abs() {
            acc = self.mul(&acc, &u);
        }
        if k < 0 {
            self.div(&self.one(), &acc).expect("uniformizer is nonzero")
        } else {
            acc
        }
    }

    /// The transcendental generator of the coefficient field, when there is
    /// one (`t` for F_p(t)); `None` over Q.
    fn indeterminate(&self) -> Option<Self::Elem>;

    /// The element as an exact rational, when the field embeds in Q.
    fn as_rational(&self, a: &Self::Elem) -> Option<num_rational::BigRational>;

    /// Canonical representative of `a` modulo u^k: for `qp:p` the integer in
    /// `[0, p^k)`, for `fpt:p` the power-series truncation below t^k.
    /// `None` when v(a) < 0.
    fn reduce_mod_pow(&self, a: &Self::Elem, k: u32) -> Option<Self::Elem>;

    fn format_elem(&self, a: &Self::Elem) -> String;

    /// A total order on elements, used for deterministic enumeration and
    /// tie-breaking; it has no arithmetic meaning.
    fn cmp_elems(&self, a: &Self::Elem, b: &Self::Elem) -> Ordering;

    /// The coefficient search grid `{0} ∪ {±c·u^k}` in canonical order
    /// (zero first), deduplicated.
    fn grid(&self, spec: &GridSpec) -> Vec<Self::Elem> {
        let mut out = vec![self.zero()];
        for c in 1..=spec.coeff_max {
            for k in spec.pow_min..=spec.pow_max {
                let base = self.mul(&self.from_int(c as i64), &self.uniformizer_pow(k));
                for cand in [base.clone(), self.neg(&base)] {
                    if !out.contains(&cand) {
                        out.push(cand);
                    }
                }
            }
        }
        out
    }
}

/// Coefficient grid parameters: `{ c * u^k : 0 <= c <= coeff_max,
/// pow_min <= k <= pow_max }` together with the negatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridSpec {
    pub coeff_max: u32,
    pub pow_min: i32,
    pub pow_max: i32,
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            coeff_max: 2,
            pow_min: -2,
            pow_max: 3,
        }
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "c={},k={}..{}", self.coeff_max, self.pow_min, self.pow_max)
    }
}

impl std::str::FromStr for GridSpec {
    type Err = String;

    /// Parses `c=<max>,k=<min>..<max>`.
    fn from_str(s: &str) -> Result<Self, String> {
        let err = || format!("invalid grid spec `{s}`, expected c=<max>,k=<min>..<max>");
        let mut spec = GridSpec::default();
        for part in s.split(',') {
            let (key, val) = part.split_once('=').ok_or_else(err)?;
            match key.trim() {
                "c" => spec.coeff_max = val.trim().parse().map_err(|_| err())?,
                "k" => {
                    let (lo, hi) = val.split_once("..").ok_or_else(err)?;
                    spec.pow_min = lo.trim().parse().map_err(|_| err())?;
                    spec.pow_max = hi.trim().parse().map_err(|_| err())?;
                }
                _ => return Err(err()),
            }
        }
        if spec.pow_min > spec.pow_max {
            return Err(err());
        }
        Ok(spec)
    }
}

/// Runtime-selected base field, as named by a `qp:<p>` / `fpt:<p>` descriptor.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyField {
    Qp(Padic),
    Fpt(TSeries),
}

impl AnyField {
    pub fn parse(s: &str) -> Result<AnyField, String> {
        let (tag, p) = s
            .split_once(':')
            .ok_or_else(|| format!("invalid field descriptor `{s}`, expected qp:<p> or fpt:<p>"))?;
        let p: u64 = p
            .trim()
            .parse()
            .map_err(|_| format!("invalid prime in field descriptor `{s}`"))?;
        match tag.trim() {
            "qp" => Ok(AnyField::Qp(Padic::new(p).map_err(|e| e.to_string())?)),
            "fpt" => Ok(AnyField::Fpt(TSeries::new(p).map_err(|e| e.to_string())?)),
            _ => Err(format!("unknown field tag `{tag}`, expected qp or fpt")),
        }
    }

    pub fn descriptor(&self) -> String {
        match self {
            AnyField::Qp(f) => f.descriptor(),
            AnyField::Fpt(f) => f.descriptor(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotPrime(pub u64);

impl fmt::Display for NotPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} is not prime", self.0)
    }
}

impl std::error::Error for NotPrime {}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponent_characteristic_convention() {
        assert_eq!(Padic::new(3).unwrap().exponent_characteristic(), 1);
        assert_eq!(TSeries::new(3).unwrap().exponent_characteristic(), 3);
    }

    #[test]
    fn field_descriptor_round_trip() {
        for s in ["qp:7", "fpt:3"] {
            assert_eq!(AnyField::parse(s).unwrap().descriptor(), s);
        }
        assert!(AnyField::parse("qp:6").is_err());
        assert!(AnyField::parse("zz:5").is_err());
    }

    #[test]
    fn grid_starts_at_zero_and_deduplicates() {
        let f = Padic::new(3).unwrap();
        let g = f.grid(&GridSpec::default());
        assert!(f.is_zero(&g[0]));
        for (i, a) in g.iter().enumerate() {
            assert!(!g[i + 1..].contains(a));
        }
        // c in {1,2}, k in -2..=3, both signs: 24 nonzero elements over Q
        assert_eq!(g.len(), 25);
    }

    #[test]
    fn grid_spec_parse() {
        let spec: GridSpec = "c=1,k=0..1".parse().unwrap();
        assert_eq!(
            spec,
            GridSpec {
                coeff_max: 1,
                pow_min: 0,
                pow_max: 1
            }
        );
        assert!("c=x".parse::<GridSpec>().is_err());
    }
}
