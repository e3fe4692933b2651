//! Seeded samplers for the property suites. Sampling only selects inputs;
//! every asserted fact about a sampled input is exact.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::field::ValuedField;
use crate::poly::Poly;

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A field element of the form `sum of up to three c * u^k terms`,
/// c in [-4, 4], k in [-2, 3].
pub fn sample_elem<F: ValuedField, R: Rng>(field: &F, rng: &mut R) -> F::Elem {
    let terms = rng.gen_range(1..=3);
    let mut acc = field.zero();
    for _ in 0..terms {
        let c: i64 = rng.gen_range(-4..=4);
        let k: i32 = rng.gen_range(-2..=3);
        let term = field.mul(&field.from_int(c), &field.uniformizer_pow(k));
        acc = field.add(&acc, &term);
    }
    acc
}

pub fn sample_nonzero_elem<F: ValuedField, R: Rng>(field: &F, rng: &mut R) -> F::Elem {
    loop {
        let a = sample_elem(field, rng);
        if !field.is_zero(&a) {
            return a;
        }
    }
}

/// A polynomial of degree <= max_deg with sampled coefficients; may be any
/// degree down to zero but never the zero polynomial.
pub fn sample_poly<F: ValuedField, R: Rng>(field: &F, rng: &mut R, max_deg: usize) -> Poly<F> {
    loop {
        let deg = rng.gen_range(0..=max_deg);
        let coeffs: Vec<F::Elem> = (0..=deg)
            .map(|_| {
                if rng.gen_bool(0.2) {
                    field.zero()
                } else {
                    sample_elem(field, rng)
                }
            })
            .collect();
        let p = Poly::new(field.clone(), coeffs);
        if !p.is_zero() {
            return p;
        }
    }
}

/// A monic polynomial of exactly the given degree.
pub fn sample_monic_poly<F: ValuedField, R: Rng>(
    field: &F,
    rng: &mut R,
    deg: usize,
) -> Poly<F> {
    let mut coeffs: Vec<F::Elem> = (0..deg)
        .map(|_| {
            if rng.gen_bool(0.2) {
                field.zero()
            } else {
                sample_elem(field, rng)
            }
        })
        .collect();
    coeffs.push(field.one());
    Poly::new(field.clone(), coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Padic, TSeries};

    #[test]
    fn sampling_is_deterministic_under_seed() {
        let f = Padic::new(3).unwrap();
        let mut a = rng_from_seed(7);
        let mut b = rng_from_seed(7);
        for _ in 0..20 {
            assert_eq!(sample_poly(&f, &mut a, 4), sample_poly(&f, &mut b, 4));
        }
    }

    #[test]
    fn samples_cover_both_fields() {
        let f = TSeries::new(3).unwrap();
        let mut rng = rng_from_seed(1);
        for _ in 0..50 {
            let p = sample_poly(&f, &mut rng, 3);
            assert!(!p.is_zero());
        }
    }
}
