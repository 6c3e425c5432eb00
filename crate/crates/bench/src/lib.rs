//! Benchmark-only crate; see `benches/kernels.rs`.

/// Deterministic pseudorandom sequence used across benches: density is
/// `num/den` with elements drawn by a splitmix step.
pub fn pseudorandom_sequence(
    bound: u64,
    num: u64,
    den: u64,
    seed: u64,
) -> addrep_core::IntegerSequence {
    let mut state = seed;
    let mut elements = Vec::new();
    for n in 1..=bound {
        state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^= z >> 31;
        if z % den < num {
            elements.push(n);
        }
    }
    addrep_core::IntegerSequence::new(elements, bound).expect("ascending by construction")
}
