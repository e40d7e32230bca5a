//! Seeded random polynomials for property tests and the self-test command.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::poly::Polynomial;
use crate::ring::RingContext;

/// A random homogeneous polynomial of the given degree: each monomial of that
/// degree is included with probability 1/2, but never all-absent when the
/// degree has monomials (re-rolled so tests exercise nonzero inputs).
pub fn random_homogeneous(ctx: &Arc<RingContext>, degree: u32, seed: u64) -> Polynomial {
    let monos = ctx
        .monomials_of_degree(degree)
        .expect("degree under the cap");
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (u64::from(degree) << 32));
    loop {
        let picked = monos.iter().filter(|_| rng.gen::<bool>()).cloned();
        let p = Polynomial::from_monomials(ctx, picked);
        if !p.is_zero() || monos.is_empty() {
            return p;
        }
    }
}

/// A sparse random homogeneous polynomial with at most `max_terms` terms.
pub fn random_sparse(ctx: &Arc<RingContext>, degree: u32, max_terms: usize, seed: u64) -> Polynomial {
    let monos = ctx
        .monomials_of_degree(degree)
        .expect("degree under the cap");
    if monos.is_empty() {
        return Polynomial::zero(ctx);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15));
    let count = rng.gen_range(1..=max_terms.min(monos.len()));
    let picked = monos
        .choose_multiple(&mut rng, count)
        .cloned()
        .collect::<Vec<_>>();
    Polynomial::from_monomials(ctx, picked)
}
