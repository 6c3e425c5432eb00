//! Deterministic pseudorandom sequences shared by the integration suites.

use addrep_core::IntegerSequence;

pub struct SplitMix(pub u64);

impl SplitMix {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }
}

/// Random set of positive integers in `[1, bound]` with the given density
/// in parts per thousand. Reproducible from the seed alone.
pub fn random_positive_sequence(bound: u64, density_ppm: u64, seed: u64) -> IntegerSequence {
    let mut rng = SplitMix(seed);
    let mut elements = Vec::new();
    for n in 1..=bound {
        if rng.next_u64() % 1_000_000 < density_ppm {
            elements.push(n);
        }
    }
    IntegerSequence::new(elements, bound).expect("ascending by construction")
}
