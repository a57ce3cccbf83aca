//! Seeded pseudo-random inputs.
//!
//! The generator is ChaCha8 seeded through `seed_from_u64`, so a seed fixes
//! every sample on every platform. Covector coordinates are zero with
//! probability 1/4 and otherwise uniform on `{-10, ..., 10} \ {0}`; the zeros
//! are what make degenerate layers reachable. Group elements use fractions
//! `p/q` with `p` in `±1..=10` and `q` in `1..=5`.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Covector, Vector};
use crate::scalar::{rat, Rational};

pub type SampleRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SampleRng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn nonzero_int(rng: &mut SampleRng) -> i64 {
    let v = rng.gen_range(1..=10);
    if rng.gen_bool(0.5) {
        v
    } else {
        -v
    }
}

pub fn covector_coordinate(rng: &mut SampleRng) -> Rational {
    if rng.gen_ratio(1, 4) {
        rat(0, 1)
    } else {
        rat(nonzero_int(rng), 1)
    }
}

pub fn fraction(rng: &mut SampleRng) -> Rational {
    let q = rng.gen_range(1..=5);
    rat(nonzero_int(rng), q)
}

pub fn covector(rng: &mut SampleRng, n: usize) -> Covector<Rational> {
    Covector((0..n).map(|_| covector_coordinate(rng)).collect())
}

/// A Lie algebra element; each coordinate is zero with probability 1/4.
pub fn vector(rng: &mut SampleRng, n: usize) -> Vector<Rational> {
    Vector(
        (0..n)
            .map(|_| if rng.gen_ratio(1, 4) { rat(0, 1) } else { fraction(rng) })
            .collect(),
    )
}

/// `count` covectors from a fresh generator seeded with `seed`.
pub fn covectors(seed: u64, n: usize, count: usize) -> Vec<Covector<Rational>> {
    let mut r = rng(seed);
    (0..count).map(|_| covector(&mut r, n)).collect()
}
