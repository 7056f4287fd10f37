//! Seeded random sampling of exact values for property checks.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::Scalar;
use crate::flatmodel::Signature;
use crate::liealg::GradedElement;
use crate::linalg::Vector;

/// Deterministic source of small elements of `Q(sqrt d)`.
pub struct Sampler {
    rng: ChaCha8Rng,
    d: u64,
}

impl Sampler {
    pub fn new(seed: u64, d: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            d,
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Integer in `[-bound, bound]`.
    pub fn int(&mut self, bound: i64) -> i64 {
        self.rng.gen_range(-bound..=bound)
    }

    fn small_rational(&mut self) -> BigRational {
        let num = self.int(9);
        let den = self.rng.gen_range(1..=3i64);
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    /// `a + b sqrt(d)` with small rational `a`, `b`; `b` is zero half the time.
    pub fn scalar(&mut self) -> Scalar {
        let a = self.small_rational();
        if self.rng.gen_bool(0.5) {
            return Scalar::rational(a);
        }
        let b = self.small_rational();
        Scalar::new(a, b, self.d).expect("valid field")
    }

    pub fn vector(&mut self, n: usize) -> Vector {
        (0..n).map(|_| self.scalar()).collect()
    }

    /// Vector with integer entries in `[-bound, bound]`.
    pub fn int_vector(&mut self, n: usize, bound: i64) -> Vector {
        (0..n).map(|_| Scalar::from_int(self.int(bound))).collect()
    }

    pub fn graded_element(&mut self, sig: Signature) -> GradedElement {
        let coords = self.vector(GradedElement::algebra_dim(&sig));
        GradedElement::from_coords(sig, &coords).expect("dimension")
    }
}
