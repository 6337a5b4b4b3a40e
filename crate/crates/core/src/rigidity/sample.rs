//! Seeded random convex domains.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::SupportDomain;

/// `a0 = 1`, no translation mode, and `a_n, b_n` uniform in `±0.5/n³` for
/// `n = 2..8`; draws are repeated until the domain is strictly convex.
pub fn random_domain<R: Rng>(rng: &mut R) -> SupportDomain {
    loop {
        let mut modes = vec![(0.0, 0.0)];
        for n in 2..=8u32 {
            let s = 0.5 / (n * n * n) as f64;
            modes.push((rng.random_range(-s..=s), rng.random_range(-s..=s)));
        }
        if let Ok(d) = SupportDomain::new(1.0, modes) {
            return d;
        }
    }
}

/// `count` domains from a ChaCha8 stream seeded with `seed`.
pub fn random_domains(seed: u64, count: usize) -> Vec<SupportDomain> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_domain(&mut rng)).collect()
}
