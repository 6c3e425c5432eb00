//! Property tests for the module invariants.

use proptest::collection::btree_set;
use proptest::prelude::*;

use addrep_core::analytic::{dyadic_sum, identity28_check, psi};
use addrep_core::repfuncs::{naive_profiles, r1_over, rep_profiles};
use addrep_core::seq::sumset;
use addrep_core::sums::{m_of, s_profile, t_of, t_plus};
use addrep_core::{CoefficientSeries, IntegerSequence};

fn seq_strategy(max: u64) -> impl Strategy<Value = IntegerSequence> {
    btree_set(0..=max, 0..64)
        .prop_map(move |set| IntegerSequence::new(set.into_iter().collect(), max).unwrap())
}

fn positive_seq_strategy(max: u64) -> impl Strategy<Value = IntegerSequence> {
    btree_set(1..=max, 1..64)
        .prop_map(move |set| IntegerSequence::new(set.into_iter().collect(), max).unwrap())
}

proptest! {
    #[test]
    fn complement_involution(a in seq_strategy(300), n in 1u64..=300) {
        let c = a.complement(n).unwrap();
        let back = c.complement(n).unwrap();
        let expect: Vec<u64> = a.elements().iter().copied()
            .filter(|&e| e >= 1 && e <= n)
            .collect();
        prop_assert_eq!(back.elements(), &expect[..]);
    }

    #[test]
    fn counting_partitions_range(a in seq_strategy(300), n in 1u64..=300) {
        let c = a.complement(n).unwrap();
        prop_assert_eq!(a.counting(n).unwrap() + c.counting(n).unwrap(), n);
    }

    #[test]
    fn sumset_symmetric_and_monotone(
        b in seq_strategy(120),
        c in seq_strategy(120),
        n in 1u64..=240,
    ) {
        let bc = sumset(&b, &c, n);
        let cb = sumset(&c, &b, n);
        prop_assert_eq!(&bc, &cb);
        // dropping elements of b can only shrink the sumset
        let half: Vec<u64> = b.elements().iter().copied().step_by(2).collect();
        let b_half = IntegerSequence::new(half, b.bound()).unwrap();
        let smaller = sumset(&b_half, &c, n);
        for e in smaller.elements() {
            prop_assert!(bc.elements().binary_search(e).is_ok());
        }
    }

    #[test]
    fn fast_profile_equals_oracle(a in seq_strategy(400)) {
        let n = a.bound();
        prop_assert_eq!(rep_profiles(&a, n).unwrap(), naive_profiles(&a, n).unwrap());
    }

    #[test]
    fn r1_parity_matches_diagonal(a in seq_strategy(400)) {
        let p = rep_profiles(&a, 400).unwrap();
        for n in 0..=400usize {
            let diagonal = n % 2 == 0 && a.contains(n as u64 / 2);
            prop_assert_eq!(p.r1()[n] % 2 == 1, diagonal);
        }
    }

    #[test]
    fn r1_over_equals_profile_r1(b in seq_strategy(400)) {
        let p = rep_profiles(&b, 400).unwrap();
        prop_assert_eq!(&r1_over(&b, 400).unwrap()[..], p.r1());
    }

    #[test]
    fn series_square_matches_r1(a in seq_strategy(256)) {
        let sq = CoefficientSeries::characteristic(&a, 256).square();
        let p = rep_profiles(&a, 256).unwrap();
        for n in 0..=256u64 {
            prop_assert_eq!(
                sq.coeff(n),
                &num_bigint::BigInt::from(p.r1()[n as usize])
            );
        }
    }

    #[test]
    fn t_plus_is_clamped_t(a in seq_strategy(400), n in 3u64..=12) {
        let m = m_of(n).unwrap();
        let p = rep_profiles(&a, 2 * m + 1).unwrap();
        let s = s_profile(&p, m).unwrap();
        let t = t_of(&s, n).unwrap();
        let tp = t_plus(&s, n).unwrap();
        prop_assert_eq!(tp, t.max(0));
        if (1..=m).any(|k| s.s(k) >= 0) {
            prop_assert_eq!(tp, t);
        }
    }

    #[test]
    fn dyadic_sum_below_both_bounds(x in 0.001f64..0.999) {
        let v = dyadic_sum(x, 1e-12).unwrap();
        prop_assert!(v <= 2.0 * x / (1.0 - x) + 1e-12);
        prop_assert!(v <= x * (1.0 + x) / (1.0 - x) + 1e-12);
    }

    #[test]
    fn psi_at_most_y(a in positive_seq_strategy(4000), y in 1.0f64..40.0) {
        let v = psi(&a, y, 1e-9).unwrap();
        prop_assert!(v.value <= y + v.err + 1e-9);
    }

    #[test]
    fn identity28_zero_on_positive_sequences(a in positive_seq_strategy(300)) {
        prop_assert_eq!(identity28_check(&a, 300).unwrap(), 0);
    }
}
