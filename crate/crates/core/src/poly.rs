//! Dense univariate polynomials over a valued base field.
//!
//! Carries the formal (Hasse) derivatives, Taylor expansions and q-standard
//! expansions that the rest of the crate is built on. Polynomials are kept
//! trimmed: the zero polynomial has an empty coefficient vector and no
//! degree.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::field::{FieldKind, Padic, ValuedField};

#[derive(Clone, Debug, PartialEq)]
pub struct Poly<F: ValuedField> {
    field: F,
    coeffs: Vec<F::Elem>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyError {
    DivisionByZero,
    /// The base of a q-expansion must be monic.
    NonMonicBase,
    /// The base of a q-expansion must have degree >= 1.
    ConstantBase,
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::DivisionByZero => write!(f, "polynomial division by zero"),
            PolyError::NonMonicBase => write!(f, "expansion base is not monic"),
            PolyError::ConstantBase => write!(f, "expansion base is constant"),
        }
    }
}

impl std::error::Error for PolyError {}

/// Verdict of the bounded irreducibility test. `Factor` always carries a
/// verified exact divisor; `Unknown` means the search budget ran out.
#[derive(Clone, Debug, PartialEq)]
pub enum Irreducibility<F: ValuedField> {
    Irreducible,
    Factor(Poly<F>),
    Unknown,
}

impl<F: ValuedField> Poly<F> {
    pub fn new(field: F, coeffs: Vec<F::Elem>) -> Poly<F> {
        let mut p = Poly { field, coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self
            .coeffs
            .last()
            .is_some_and(|c| self.field.is_zero(c))
        {
            self.coeffs.pop();
        }
    }

    pub fn zero(field: F) -> Poly<F> {
        Poly {
            field,
            coeffs: vec![],
        }
    }

    pub fn one(field: F) -> Poly<F> {
        let one = field.one();
        Poly {
            field,
            coeffs: vec![one],
        }
    }

    pub fn constant(field: F, c: F::Elem) -> Poly<F> {
        Poly::new(field, vec![c])
    }

    /// The monomial x.
    pub fn x(field: F) -> Poly<F> {
        let (zero, one) = (field.zero(), field.one());
        Poly {
            field,
            coeffs: vec![zero, one],
        }
    }

    /// x - a.
    pub fn x_minus(field: F, a: &F::Elem) -> Poly<F> {
        let neg = field.neg(a);
        let one = field.one();
        Poly::new(field, vec![neg, one])
    }

    /// Ascending integer coefficients mapped into the field.
    pub fn from_ints(field: F, coeffs: &[i64]) -> Poly<F> {
        let elems = coeffs.iter().map(|&c| field.from_int(c)).collect();
        Poly::new(field, elems)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&F::Elem> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| *c == self.field.one())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    fn assert_same_field(&self, other: &Poly<F>) {
        assert!(
            self.field == other.field,
            "mixed base fields: {} vs {}",
            self.field.descriptor(),
            other.field.descriptor()
        );
    }

    pub fn add(&self, other: &Poly<F>) -> Poly<F> {
        self.assert_same_field(other);
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => self.field.add(a, b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            })
            .collect();
        Poly::new(self.field.clone(), coeffs)
    }

    pub fn neg(&self) -> Poly<F> {
        let coeffs = self.coeffs.iter().map(|c| self.field.neg(c)).collect();
        Poly {
            field: self.field.clone(),
            coeffs,
        }
    }

    pub fn sub(&self, other: &Poly<F>) -> Poly<F> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly<F>) -> Poly<F> {
        self.assert_same_field(other);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field.clone());
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if self.field.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let prod = self.field.mul(a, b);
                coeffs[i + j] = self.field.add(&coeffs[i + j], &prod);
            }
        }
        Poly::new(self.field.clone(), coeffs)
    }

    pub fn mul_elem(&self, c: &F::Elem) -> Poly<F> {
        let coeffs = self.coeffs.iter().map(|a| self.field.mul(a, c)).collect();
        Poly::new(self.field.clone(), coeffs)
    }

    pub fn pow(&self, mut n: usize) -> Poly<F> {
        let mut base = self.clone();
        let mut acc = Poly::one(self.field.clone());
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Normalizes to a monic polynomial; `None` for zero.
    pub fn monicized(&self) -> Option<Poly<F>> {
        let lead = self.leading()?;
        let inv = self.field.div(&self.field.one(), lead)?;
        Some(self.mul_elem(&inv))
    }

    /// Euclidean division: `self = q * g + r` with `deg r < deg g`.
    pub fn divmod(&self, g: &Poly<F>) -> Result<(Poly<F>, Poly<F>), PolyError> {
        self.assert_same_field(g);
        let g_deg = g.degree().ok_or(PolyError::DivisionByZero)?;
        let field = self.field.clone();
        let lead_inv = field
            .div(&field.one(), g.leading().expect("nonzero divisor"))
            .expect("leading coefficient is nonzero");
        let mut rem = self.coeffs.clone();
        if rem.len() < g.coeffs.len() {
            return Ok((Poly::zero(field), self.clone()));
        }
        let mut quo = vec![field.zero(); rem.len() - g_deg];
        for i in (g_deg..rem.len()).rev() {
            if field.is_zero(&rem[i]) {
                continue;
            }
            let q = field.mul(&rem[i], &lead_inv);
            for (j, b) in g.coeffs.iter().enumerate() {
                let t = field.mul(&q, b);
                rem[i - g_deg + j] = field.sub(&rem[i - g_deg + j], &t);
            }
            quo[i - g_deg] = q;
        }
        rem.truncate(g_deg);
        Ok((Poly::new(field.clone(), quo), Poly::new(field, rem)))
    }

    pub fn divides(&self, other: &Poly<F>) -> bool {
        match other.divmod(self) {
            Ok((_, r)) => r.is_zero(),
            Err(_) => false,
        }
    }

    /// The b-th formal derivative: `d_b x^n = C(n, b) x^(n-b)`, with the
    /// binomial computed over the integers and then mapped into the field,
    /// so characteristic-p vanishing falls out on its own.
    pub fn hasse_derivative(&self, b: usize) -> Poly<F> {
        if b == 0 {
            return self.clone();
        }
        if self.coeffs.len() <= b {
            return Poly::zero(self.field.clone());
        }
        let coeffs = (b..self.coeffs.len())
            .map(|n| {
                let binom = binomial_big(n, b);
                let factor = self.field.from_bigint(&binom);
                self.field.mul(&self.coeffs[n], &factor)
            })
            .collect();
        Poly::new(self.field.clone(), coeffs)
    }

    /// Exact Horner evaluation.
    pub fn eval(&self, a: &F::Elem) -> F::Elem {
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = self.field.add(&self.field.mul(&acc, a), c);
        }
        acc
    }

    /// `[d_0 f(a), d_1 f(a), ..., d_n f(a)]`, so that
    /// `f = sum_i d_i f(a) (x - a)^i`.
    pub fn taylor_expansion(&self, a: &F::Elem) -> Vec<F::Elem> {
        let n = self.degree().unwrap_or(0);
        (0..=n).map(|i| self.hasse_derivative(i).eval(a)).collect()
    }

    /// The q-standard expansion `f = f_0 + f_1 q + ... + f_n q^n` with each
    /// digit zero or of degree < deg q. Requires q monic of degree >= 1.
    pub fn q_expansion(&self, q: &Poly<F>) -> Result<Vec<Poly<F>>, PolyError> {
        self.assert_same_field(q);
        if q.degree().unwrap_or(0) < 1 {
            return Err(PolyError::ConstantBase);
        }
        if !q.is_monic() {
            return Err(PolyError::NonMonicBase);
        }
        if self.is_zero() {
            return Ok(vec![Poly::zero(self.field.clone())]);
        }
        let mut digits = Vec::new();
        let mut rest = self.clone();
        while !rest.is_zero() {
            let (quo, rem) = rest.divmod(q)?;
            digits.push(rem);
            rest = quo;
        }
        Ok(digits)
    }

    /// Deterministic total order (degree, then coefficients from the
    /// constant term up); used only for canonical tie-breaking.
    pub fn cmp_canonical(&self, other: &Poly<F>) -> Ordering {
        match self.coeffs.len().cmp(&other.coeffs.len()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for (a, b) in self.coeffs.iter().zip(other.coeffs.iter()) {
            match self.field.cmp_elems(a, b) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

fn binomial_big(n: usize, k: usize) -> BigInt {
    num_integer::binomial(BigInt::from(n), BigInt::from(k))
}

// ---------------------------------------------------------------------------
// Display

/// True when the coefficient string can stand unparenthesized next to a
/// variable part or a sign: integers, or a single t-term.
fn atomic(s: &str) -> bool {
    let body = s.strip_prefix('-').unwrap_or(s);
    !body.is_empty()
        && body
            .chars()
            .all(|c| c.is_ascii_digit() || c == 't' || c == '^' || c == '*')
}

impl<F: ValuedField> fmt::Display for Poly<F> {
    /// Canonical form: descending powers, explicit signs, `0` for zero.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let one = self.field.one();
        let minus_one = self.field.neg(&one);
        let mut first = true;
        for i in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[i];
            if self.field.is_zero(c) {
                continue;
            }
            let mut s = self.field.format_elem(c);
            let mut negated = false;
            if !first && s.starts_with('-') {
                negated = true;
                s = s[1..].to_string();
            }
            if first {
                first = false;
            } else {
                write!(f, "{}", if negated { " - " } else { " + " })?;
            }
            let var = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            if var.is_empty() {
                if atomic(&s) {
                    write!(f, "{s}")?;
                } else {
                    write!(f, "({s})")?;
                }
            } else if *c == one || (negated && s == "1") {
                write!(f, "{var}")?;
            } else if *c == minus_one && !negated {
                write!(f, "-{var}")?;
            } else if atomic(&s) {
                write!(f, "{s}*{var}")?;
            } else {
                write!(f, "({s})*{var}")?;
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Bounded irreducibility

impl<F: ValuedField> Poly<F> {
    /// Bounded irreducibility test. Over `qp:p` this is an exact rational
    /// root test (decisive through degree 3) plus a bounded search for monic
    /// integer factors; over `fpt:p` it is trial division by enumerated
    /// low-degree monic divisors. `Factor` is always verified.
    pub fn irreducible_bounded(&self, budget: u64) -> Irreducibility<F> {
        assert!(self.degree().unwrap_or(0) >= 1, "constant input");
        if self.degree() == Some(1) {
            return Irreducibility::Irreducible;
        }
        match self.field.kind() {
            FieldKind::Padic => self.irreducible_padic(budget),
            FieldKind::TSeries => self.irreducible_tseries(budget),
        }
    }

    fn irreducible_padic(&self, budget: u64) -> Irreducibility<F> {
        // Work over the integers: rational coefficients cleared of
        // denominators.
        let rats: Vec<BigRational> = self
            .coeffs
            .iter()
            .map(|c| self.field.as_rational(c).expect("qp elements are rationals"))
            .collect();
        let mut lcm = BigInt::one();
        for r in &rats {
            lcm = lcm.lcm(r.denom());
        }
        let ints: Vec<BigInt> = rats
            .iter()
            .map(|r| (r * BigRational::from_integer(lcm.clone())).to_integer())
            .collect();
        let deg = ints.len() - 1;

        if ints[0].is_zero() {
            return Irreducibility::Factor(Poly::x(self.field.clone()));
        }

        let mut spent = 0u64;
        let a0 = factor_divisors(&ints[0], budget, &mut spent);
        let an = factor_divisors(&ints[deg], budget, &mut spent);
        let (a0, an) = match (a0, an) {
            (Some(a0), Some(an)) => (a0, an),
            _ => return Irreducibility::Unknown,
        };
        for r in &a0 {
            for s in &an {
                if spent >= budget {
                    return Irreducibility::Unknown;
                }
                spent += 1;
                if !r.gcd(s).is_one() {
                    continue;
                }
                for root in [
                    BigRational::new(r.clone(), s.clone()),
                    BigRational::new(-r.clone(), s.clone()),
                ] {
                    let val: BigRational = rats
                        .iter()
                        .rev()
                        .fold(BigRational::zero(), |acc, c| acc * &root + c);
                    if val.is_zero() {
                        let a = self.field.from_bigint(root.numer());
                        let b = self.field.from_bigint(root.denom());
                        let root_elem = self.field.div(&a, &b).expect("nonzero denominator");
                        return Irreducibility::Factor(Poly::x_minus(
                            self.field.clone(),
                            &root_elem,
                        ));
                    }
                }
            }
        }
        if deg <= 3 {
            return Irreducibility::Irreducible;
        }
        // Degree >= 4: search monic integer-coefficient divisors of degree
        // 2..=deg/2 with coefficient height growing until the budget is hit.
        let mut height: i64 = 1;
        loop {
            for d in 2..=deg / 2 {
                let mut stack = vec![Vec::<i64>::new()];
                while let Some(prefix) = stack.pop() {
                    if prefix.len() == d {
                        if spent >= budget {
                            return Irreducibility::Unknown;
                        }
                        spent += 1;
                        let mut coeffs: Vec<i64> = prefix.clone();
                        coeffs.push(1);
                        let cand = Poly::from_ints(self.field.clone(), &coeffs);
                        if cand.divides(self) {
                            return Irreducibility::Factor(cand);
                        }
                        continue;
                    }
                    for c in -height..=height {
                        let mut next = prefix.clone();
                        next.push(c);
                        stack.push(next);
                    }
                }
            }
            if spent >= budget {
                return Irreducibility::Unknown;
            }
            height += 1;
        }
    }

    fn irreducible_tseries(&self, budget: u64) -> Irreducibility<F> {
        let deg = self.degree().unwrap();
        let mut spent = 0u64;
        // Coefficients drawn from rational functions with numerator and
        // denominator t-degree <= b, for growing b.
        for b in 0..=3usize {
            let coeff_pool = tseries_coeff_pool(&self.field, b);
            for d in 1..=deg / 2 {
                let mut stack = vec![Vec::<F::Elem>::new()];
                while let Some(prefix) = stack.pop() {
                    if prefix.len() == d {
                        if spent >= budget {
                            return Irreducibility::Unknown;
                        }
                        spent += 1;
                        let mut coeffs = prefix.clone();
                        coeffs.push(self.field.one());
                        let cand = Poly::new(self.field.clone(), coeffs);
                        if cand.divides(self) {
                            return Irreducibility::Factor(cand);
                        }
                        continue;
                    }
                    for c in &coeff_pool {
                        let mut next = prefix.clone();
                        next.push(c.clone());
                        stack.push(next);
                    }
                }
            }
        }
        Irreducibility::Unknown
    }
}

/// All positive divisors of `n`, or `None` if trial division exceeds the
/// budget.
fn factor_divisors(n: &BigInt, budget: u64, spent: &mut u64) -> Option<Vec<BigInt>> {
    let mut m = n.abs();
    let two = BigInt::from(2);
    let mut primes: Vec<(BigInt, u32)> = Vec::new();
    let mut d = two;
    while &d * &d <= m {
        *spent += 1;
        if *spent >= budget {
            return None;
        }
        let mut e = 0u32;
        while (&m % &d).is_zero() {
            m /= &d;
            e += 1;
        }
        if e > 0 {
            primes.push((d.clone(), e));
        }
        d += 1;
    }
    if m > BigInt::one() {
        primes.push((m, 1));
    }
    let mut divs = vec![BigInt::one()];
    for (p, e) in primes {
        let mut next = Vec::new();
        for d in &divs {
            let mut acc = d.clone();
            for _ in 0..=e {
                next.push(acc.clone());
                acc *= &p;
            }
        }
        divs = next;
    }
    divs.sort();
    divs.dedup();
    Some(divs)
}

/// Rational functions with numerator degree <= b and monic denominator of
/// degree <= b, deduplicated.
fn tseries_coeff_pool<F: ValuedField>(field: &F, b: usize) -> Vec<F::Elem> {
    let p = field.prime();
    let t = field
        .indeterminate()
        .expect("tseries coefficient pool over a function field");
    let mut monomials = vec![field.one()];
    for k in 1..=b {
        let mut acc = field.one();
        for _ in 0..k {
            acc = field.mul(&acc, &t);
        }
        monomials.push(acc);
    }
    // polynomials of degree <= b
    let mut polys = vec![field.zero()];
    for m in &monomials {
        let mut next = Vec::new();
        for base in &polys {
            for c in 0..p {
                let term = field.mul(&field.from_int(c as i64), m);
                next.push(field.add(base, &term));
            }
        }
        polys = next;
    }
    let mut pool = Vec::new();
    for num in &polys {
        for den in &polys {
            if field.is_zero(den) {
                continue;
            }
            if let Some(q) = field.div(num, den) {
                if !pool.contains(&q) {
                    pool.push(q);
                }
            }
        }
    }
    pool
}

/// Convenience check used by tests: exact reconstruction of a q-expansion.
pub fn reconstruct<F: ValuedField>(digits: &[Poly<F>], q: &Poly<F>) -> Poly<F> {
    let field = q.field().clone();
    let mut acc = Poly::zero(field);
    for (i, d) in digits.iter().enumerate() {
        acc = acc.add(&d.mul(&q.pow(i)));
    }
    acc
}

pub type QpPoly = Poly<Padic>;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Padic, TSeries};

    fn qp3() -> Padic {
        Padic::new(3).unwrap()
    }

    #[test]
    fn product_of_conjugates() {
        let f = qp3();
        let a = Poly::from_ints(f.clone(), &[1, 1]); // x + 1
        let b = Poly::from_ints(f.clone(), &[-1, 1]); // x - 1
        assert_eq!(a.mul(&b), Poly::from_ints(f, &[-1, 0, 1]));
    }

    #[test]
    fn additive_identities() {
        let f = qp3();
        let a = Poly::from_ints(f.clone(), &[2, 0, 5]);
        assert_eq!(a.add(&Poly::zero(f.clone())), a);
        assert!(a.sub(&a).is_zero());
        assert_eq!(Poly::zero(f.clone()).degree(), None);
    }

    #[test]
    fn divmod_examples() {
        let f = qp3();
        let x3 = Poly::from_ints(f.clone(), &[0, 0, 0, 1]);
        let q = Poly::from_ints(f.clone(), &[1, 0, 1]); // x^2 + 1
        let (quo, rem) = x3.divmod(&q).unwrap();
        assert_eq!(quo, Poly::from_ints(f.clone(), &[0, 1]));
        assert_eq!(rem, Poly::from_ints(f.clone(), &[0, -1]));
        let (quo, rem) = q.divmod(&q).unwrap();
        assert!(quo == Poly::one(f.clone()) && rem.is_zero());
        let x = Poly::x(f.clone());
        let (quo, rem) = x.divmod(&q).unwrap();
        assert!(quo.is_zero() && rem == x);
        assert_eq!(
            x.divmod(&Poly::zero(f)).unwrap_err(),
            PolyError::DivisionByZero
        );
    }

    #[test]
    fn hasse_derivative_characteristic_dependence() {
        // d_2 (x^4 + x^3) = 6x^2 + 3x, which dies mod 3
        let f0 = Poly::from_ints(qp3(), &[0, 0, 0, 1, 1]);
        assert_eq!(f0.hasse_derivative(2), Poly::from_ints(qp3(), &[0, 3, 6]));
        let t3 = TSeries::new(3).unwrap();
        let f1 = Poly::from_ints(t3, &[0, 0, 0, 1, 1]);
        assert!(f1.hasse_derivative(2).is_zero());
        assert_eq!(f0.hasse_derivative(0), f0);
        assert!(f0.hasse_derivative(5).is_zero());
    }

    #[test]
    fn taylor_expansion_at_three() {
        // x^2 at a = 3: (x-3)^2 + 6(x-3) + 9
        let f = qp3();
        let sq = Poly::from_ints(f.clone(), &[0, 0, 1]);
        let tl = sq.taylor_expansion(&f.from_int(3));
        assert_eq!(tl, vec![f.from_int(9), f.from_int(6), f.from_int(1)]);
        let c = Poly::from_ints(f.clone(), &[5]);
        assert_eq!(c.taylor_expansion(&f.from_int(2)), vec![f.from_int(5)]);
    }

    #[test]
    fn q_expansion_digits() {
        let f = qp3();
        let q = Poly::from_ints(f.clone(), &[1, 0, 1]); // x^2+1
        let x3 = Poly::from_ints(f.clone(), &[0, 0, 0, 1]);
        let digits = x3.q_expansion(&q).unwrap();
        assert_eq!(
            digits,
            vec![
                Poly::from_ints(f.clone(), &[0, -1]),
                Poly::from_ints(f.clone(), &[0, 1])
            ]
        );
        assert_eq!(reconstruct(&digits, &q), x3);

        let digits = q.q_expansion(&q).unwrap();
        assert_eq!(digits.len(), 2);
        assert!(digits[0].is_zero());
        assert_eq!(digits[1], Poly::one(f.clone()));

        // x^2 - 9 = (x^2 + 1) - 10
        let f2 = Poly::from_ints(f.clone(), &[-9, 0, 1]);
        let digits = f2.q_expansion(&q).unwrap();
        assert_eq!(digits[0], Poly::from_ints(f.clone(), &[-10]));
        assert_eq!(digits[1], Poly::one(f.clone()));

        let not_monic = Poly::from_ints(f.clone(), &[0, 2]);
        assert_eq!(x3.q_expansion(&not_monic).unwrap_err(), PolyError::NonMonicBase);
        let constant = Poly::one(f);
        assert_eq!(x3.q_expansion(&constant).unwrap_err(), PolyError::ConstantBase);
    }

    #[test]
    fn eval_examples() {
        let f7 = Padic::new(7).unwrap();
        let g = Poly::from_ints(f7.clone(), &[-2, 0, 1]);
        assert_eq!(g.eval(&f7.from_int(3)), f7.from_int(7));
        assert_eq!(g.eval(&f7.from_int(10)), f7.from_int(98));
        assert_eq!(g.eval(&f7.from_int(0)), f7.from_int(-2));
    }

    #[test]
    fn irreducibility_examples() {
        let f3 = qp3();
        let q = Poly::from_ints(f3.clone(), &[1, 0, 1]);
        assert_eq!(q.irreducible_bounded(10_000), Irreducibility::Irreducible);
        let sq = Poly::from_ints(f3.clone(), &[-9, 0, 1]);
        assert_eq!(
            sq.irreducible_bounded(10_000),
            Irreducibility::Factor(Poly::from_ints(f3, &[-3, 1]))
        );
        let f7 = Padic::new(7).unwrap();
        let g = Poly::from_ints(f7, &[-2, 0, 1]);
        assert_eq!(g.irreducible_bounded(10_000), Irreducibility::Irreducible);
    }

    #[test]
    fn irreducibility_over_function_fields() {
        let t3 = TSeries::new(3).unwrap();
        // x^2 - t^2 = (x-t)(x+t)
        let t = t3.uniformizer();
        let tt = t3.mul(&t, &t);
        let f = Poly::new(t3.clone(), vec![t3.neg(&tt), t3.zero(), t3.one()]);
        match f.irreducible_bounded(100_000) {
            Irreducibility::Factor(g) => assert!(g.divides(&f)),
            other => panic!("expected a factor, got {other:?}"),
        }
        // x^2 - t has no root with bounded numerator/denominator degree
        let g = Poly::new(t3.clone(), vec![t3.neg(&t), t3.zero(), t3.one()]);
        assert_eq!(g.irreducible_bounded(5_000), Irreducibility::Unknown);
    }

    #[test]
    fn display_canonical_form() {
        let f = qp3();
        let p = Poly::from_ints(f.clone(), &[-9, 0, 1]);
        assert_eq!(p.to_string(), "x^2 - 9");
        let q = Poly::from_ints(f.clone(), &[1, -1]);
        assert_eq!(q.to_string(), "-x + 1");
        assert_eq!(Poly::zero(f.clone()).to_string(), "0");
        let half = f.div(&f.one(), &f.from_int(2)).unwrap();
        let r = Poly::new(f, vec![half.clone(), half]);
        assert_eq!(r.to_string(), "1/2*x + 1/2");
    }
}
