//! Sidon-set generators and the complement-of-a-Sidon-set construction.
//!
//! Taking `B` an infinite Sidon set of even integers, `A = ℕ ∖ B`,
//! `Y = (B+B) ∪ B` and `X = ℕ ∖ Y`, the identity
//! `(1−z)f(z)² = z²/(1−z) + (1−z)g(z)² − 2z·g(z)` (with `f`, `g` the
//! characteristic series of `A`, `B`) forces `R1(n+1) ≥ R1(n)` for every
//! `n ∈ X`, and `X` has density 1. Here `ℕ` starts at 1. This module builds
//! such instances at finite scale and verifies the claim exhaustively.

use crate::error::Error;
use crate::repfuncs::{r1_over, rep_profiles};
use crate::seq::{sumset, IntegerSequence};
use crate::Result;

/// A materialized instance of the construction: the Sidon base `B`, the
/// sequence `A = ℕ ∖ B`, the excluded positions `Y = (B+B) ∪ B`, and the
/// monotone set `X = [1, N_max] ∖ Y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SarkozyInstance {
    pub b: IntegerSequence,
    pub a: IntegerSequence,
    pub y: IntegerSequence,
    pub x: IntegerSequence,
    pub n_max: u64,
}

/// Checks that the finite set is Sidon in the definition-level sense:
/// `R2 ≤ 1` everywhere up to twice the largest element.
pub fn verify_sidon(s: &IntegerSequence) -> Result<()> {
    let Some(max) = s.max() else { return Ok(()) };
    // The elements form a complete finite set, so the profile is exact up
    // to twice the maximum even when that exceeds the carried bound.
    let lifted = IntegerSequence::new(s.elements().to_vec(), 2 * max)?;
    let p = rep_profiles(&lifted, 2 * max)?;
    if let Some(n) = p.r2().iter().position(|&c| c > 1) {
        return Err(Error::Construction(format!(
            "not a Sidon set: {n} has {} representations",
            p.r2()[n]
        )));
    }
    Ok(())
}

fn verify_even_positive(s: &IntegerSequence) -> Result<()> {
    if let Some(&bad) = s.elements().iter().find(|&&e| e == 0 || e % 2 == 1) {
        return Err(Error::Construction(format!(
            "element {bad} is not a positive even integer"
        )));
    }
    Ok(())
}

/// The lexicographically least Sidon sequence: start at 1 and repeatedly
/// append the smallest integer `≤ cap` preserving the Sidon property.
pub fn greedy_sidon(count: usize, cap: u64) -> Result<IntegerSequence> {
    if count == 0 {
        return Err(Error::Domain("greedy Sidon needs count >= 1".into()));
    }
    if cap == 0 {
        return Err(Error::Capacity {
            cap,
            got: 0,
            want: count,
        });
    }
    let mut elements: Vec<u64> = Vec::with_capacity(count);
    let mut pair_sums = std::collections::HashSet::new();
    let mut candidate = 1u64;
    while elements.len() < count {
        if candidate > cap {
            return Err(Error::Capacity {
                cap,
                got: elements.len(),
                want: count,
            });
        }
        // c is admissible iff no new pair sum c+a (or c+c) collides with an
        // existing one; the new sums are mutually distinct automatically.
        let ok = !pair_sums.contains(&(2 * candidate))
            && elements
                .iter()
                .all(|&a| !pair_sums.contains(&(candidate + a)));
        if ok {
            for &a in &elements {
                pair_sums.insert(candidate + a);
            }
            pair_sums.insert(2 * candidate);
            elements.push(candidate);
        }
        candidate += 1;
    }
    IntegerSequence::new(elements, cap)
}

/// Every greedy Sidon term not exceeding `cap`.
pub fn greedy_sidon_up_to(cap: u64) -> IntegerSequence {
    if cap == 0 {
        return IntegerSequence::empty(0);
    }
    let mut elements: Vec<u64> = Vec::new();
    let mut pair_sums = std::collections::HashSet::new();
    for candidate in 1..=cap {
        let ok = !pair_sums.contains(&(2 * candidate))
            && elements
                .iter()
                .all(|&a| !pair_sums.contains(&(candidate + a)));
        if ok {
            for &a in &elements {
                pair_sums.insert(candidate + a);
            }
            pair_sums.insert(2 * candidate);
            elements.push(candidate);
        }
    }
    IntegerSequence::new(elements, cap).expect("greedy output is sorted")
}

/// `{2^m : m ≥ 1, 2^m ≤ cap}` — even, and Sidon because distinct dyadic
/// pairs have distinct sums.
pub fn powers_of_two(cap: u64) -> Result<IntegerSequence> {
    if cap < 2 {
        return Err(Error::Domain(format!("cap must be at least 2, got {cap}")));
    }
    let mut elements = Vec::new();
    let mut p = 2u64;
    loop {
        elements.push(p);
        if p > cap / 2 {
            break;
        }
        p *= 2;
    }
    IntegerSequence::new(elements, cap)
}

/// `{2s : s ∈ S}`. Doubling preserves the Sidon property and makes every
/// element even.
pub fn double_sequence(s: &IntegerSequence) -> IntegerSequence {
    let elements = s.elements().iter().map(|&e| 2 * e).collect();
    IntegerSequence::new(elements, 2 * s.bound()).expect("doubling preserves ordering")
}

/// Assembles the four sets of the construction, validating that `B` is an
/// even positive Sidon set materialized at least to `n_max`.
pub fn build_instance(b: &IntegerSequence, n_max: u64) -> Result<SarkozyInstance> {
    if b.bound() < n_max {
        return Err(Error::OutOfBound {
            needed: n_max,
            bound: b.bound(),
        });
    }
    verify_even_positive(b)?;
    verify_sidon(b)?;
    let a = b.complement(n_max)?;
    let bb = sumset(b, b, n_max);
    let mut y_els: Vec<u64> = bb.elements().to_vec();
    for &e in b.elements().iter().take_while(|&&e| e <= n_max) {
        if let Err(pos) = y_els.binary_search(&e) {
            y_els.insert(pos, e);
        }
    }
    let y = IntegerSequence::new(y_els, n_max)?;
    let x = y.complement(n_max)?;
    Ok(SarkozyInstance {
        b: b.clone(),
        a,
        y,
        x,
        n_max,
    })
}

/// All `n ∈ X ∩ [1, N]` with `R1(A, n+1) < R1(A, n)`. The construction
/// predicts the empty list.
pub fn monotonicity_violations(inst: &SarkozyInstance, n: u64) -> Result<Vec<u64>> {
    if n + 1 > inst.n_max {
        return Err(Error::OutOfBound {
            needed: n + 1,
            bound: inst.n_max,
        });
    }
    let p = rep_profiles(&inst.a, n + 1)?;
    let r1 = p.r1();
    Ok(inst
        .x
        .elements()
        .iter()
        .copied()
        .take_while(|&v| v <= n)
        .filter(|&v| r1[v as usize + 1] < r1[v as usize])
        .collect())
}

/// Verifies the closed coefficient formulas for `(1−z)f(z)²` over
/// `A = ℕ ∖ B`: at `z^(2k)` the coefficient equals
/// `1 + r1(2k) − r1(2k−1) − 2χ_B(2k−1)`, and at `z^(2k+1)` it equals
/// `1 + r1(2k+1) − r1(2k) − 2χ_B(2k)`, for `1 ≤ k ≤ k_max`.
/// Returns the maximum absolute discrepancy (0 when the formulas hold).
pub fn coefficient_identity_check(b: &IntegerSequence, k_max: u64) -> Result<u64> {
    let n = 2 * k_max + 1;
    if n > b.bound() {
        return Err(Error::OutOfBound {
            needed: n,
            bound: b.bound(),
        });
    }
    verify_even_positive(b)?;
    verify_sidon(b)?;
    let a = b.complement(n)?;
    let pa = rep_profiles(&a, n)?;
    let r1a = pa.r1();
    let b_view = IntegerSequence::new(
        b.elements()
            .iter()
            .copied()
            .take_while(|&e| e <= n)
            .collect(),
        n,
    )?;
    let r1b = r1_over(&b_view, n)?;
    let chi = |m: usize| -> i64 { i64::from(b_view.contains(m as u64)) };

    let mut residual = 0u64;
    for k in 1..=k_max as usize {
        let even_lhs = r1a[2 * k] as i64 - r1a[2 * k - 1] as i64;
        let even_rhs = 1 + r1b[2 * k] as i64 - r1b[2 * k - 1] as i64 - 2 * chi(2 * k - 1);
        let odd_lhs = r1a[2 * k + 1] as i64 - r1a[2 * k] as i64;
        let odd_rhs = 1 + r1b[2 * k + 1] as i64 - r1b[2 * k] as i64 - 2 * chi(2 * k);
        residual = residual
            .max(even_lhs.abs_diff(even_rhs))
            .max(odd_lhs.abs_diff(odd_rhs));
    }
    Ok(residual)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn greedy_first_terms() {
        assert_eq!(greedy_sidon(1, 10).unwrap().elements(), &[1]);
        assert_eq!(greedy_sidon(5, 100).unwrap().elements(), &[1, 2, 4, 8, 13]);
    }

    #[test]
    fn greedy_capacity_error() {
        assert!(matches!(
            greedy_sidon(5, 10),
            Err(Error::Capacity {
                cap: 10,
                got: 4,
                want: 5
            })
        ));
    }

    #[test]
    fn greedy_matches_quadratic_oracle() {
        // Oracle: recheck every candidate from scratch against the
        // definition (all pairwise sums distinct).
        let mut oracle: Vec<u64> = vec![1];
        let mut c = 2u64;
        while oracle.len() < 10 {
            let mut trial = oracle.clone();
            trial.push(c);
            let mut sums = std::collections::HashSet::new();
            let mut distinct = true;
            for i in 0..trial.len() {
                for j in i..trial.len() {
                    if !sums.insert(trial[i] + trial[j]) {
                        distinct = false;
                    }
                }
            }
            if distinct {
                oracle.push(c);
            }
            c += 1;
        }
        assert_eq!(greedy_sidon(10, 200).unwrap().elements(), &oracle[..]);
        assert_eq!(greedy_sidon_up_to(81).elements(), &oracle[..]);
    }

    #[test]
    fn greedy_passes_sidon_verification() {
        let s = greedy_sidon(20, 100_000).unwrap();
        verify_sidon(&s).unwrap();
    }

    #[test]
    fn powers_examples() {
        assert_eq!(powers_of_two(32).unwrap().elements(), &[2, 4, 8, 16, 32]);
        assert_eq!(powers_of_two(2).unwrap().elements(), &[2]);
        let p = powers_of_two(100).unwrap();
        assert_eq!(p.elements(), &[2, 4, 8, 16, 32, 64]);
        verify_sidon(&p).unwrap();
        assert!(powers_of_two(1).is_err());
    }

    #[test]
    fn doubling_preserves_sidon() {
        let s = greedy_sidon(5, 100).unwrap();
        let d = double_sequence(&s);
        assert_eq!(d.elements(), &[2, 4, 8, 16, 26]);
        verify_sidon(&d).unwrap();
        assert!(double_sequence(&IntegerSequence::empty(4)).is_empty());

        for seed in 0..20u64 {
            let s = greedy_sidon(4 + (seed % 5) as usize, 200 + 31 * seed).unwrap();
            verify_sidon(&double_sequence(&s)).unwrap();
        }
    }

    #[test]
    fn build_small_instance() {
        let b = IntegerSequence::new(vec![2, 4], 10).unwrap();
        let inst = build_instance(&b, 10).unwrap();
        assert_eq!(inst.y.elements(), &[2, 4, 6, 8]);
        assert_eq!(inst.x.elements(), &[1, 3, 5, 7, 9, 10]);
        assert_eq!(inst.a.elements(), &[1, 3, 5, 6, 7, 8, 9, 10]);
    }

    #[test]
    fn build_empty_instance() {
        let b = IntegerSequence::empty(5);
        let inst = build_instance(&b, 5).unwrap();
        assert_eq!(inst.a.elements(), &[1, 2, 3, 4, 5]);
        assert_eq!(inst.x.elements(), &[1, 2, 3, 4, 5]);
        assert!(inst.y.is_empty());
    }

    #[test]
    fn build_rejects_bad_bases() {
        let odd = IntegerSequence::new(vec![2, 5], 10).unwrap();
        assert!(matches!(
            build_instance(&odd, 10),
            Err(Error::Construction(_))
        ));
        let not_sidon = IntegerSequence::new(vec![2, 4, 6], 12).unwrap();
        assert!(matches!(
            build_instance(&not_sidon, 12),
            Err(Error::Construction(_))
        ));
    }

    #[test]
    fn pair_sum_count_bounds_y() {
        let b = powers_of_two(1 << 17).unwrap();
        let inst = build_instance(&b, 100_000).unwrap();
        // at most 17 powers plus C(17,2) + 17 pair sums
        assert!(inst.y.len() as u64 <= 170);
    }

    #[test]
    fn violations_empty_for_construction() {
        let b = powers_of_two(4096).unwrap();
        let inst = build_instance(&b, 2048).unwrap();
        assert_eq!(
            monotonicity_violations(&inst, 2047).unwrap(),
            Vec::<u64>::new()
        );
    }

    #[test]
    fn violations_on_full_set_empty() {
        let inst = build_instance(&IntegerSequence::empty(64), 64).unwrap();
        assert_eq!(
            monotonicity_violations(&inst, 63).unwrap(),
            Vec::<u64>::new()
        );
    }

    #[test]
    fn violation_found_on_counterexample_shape() {
        // Handcrafted instance: A = {1}, X = [1,5]. R1(2) = 1 > R1(3) = 0.
        let inst = SarkozyInstance {
            b: IntegerSequence::empty(6),
            a: IntegerSequence::new(vec![1], 6).unwrap(),
            y: IntegerSequence::empty(6),
            x: IntegerSequence::new(vec![1, 2, 3, 4, 5], 6).unwrap(),
            n_max: 6,
        };
        assert_eq!(monotonicity_violations(&inst, 5).unwrap(), vec![2]);
    }

    #[test]
    fn coefficient_identity_examples() {
        let b = IntegerSequence::new(vec![2, 4], 32).unwrap();
        assert_eq!(coefficient_identity_check(&b, 10).unwrap(), 0);

        let b = powers_of_two(1 << 14).unwrap();
        assert_eq!(coefficient_identity_check(&b, 4000).unwrap(), 0);

        // Empty base: both formulas reduce to constant-1 differences.
        let b = IntegerSequence::empty(64);
        assert_eq!(coefficient_identity_check(&b, 31).unwrap(), 0);
    }

    #[test]
    fn density_counting_bound() {
        let b = powers_of_two(1 << 17).unwrap();
        let inst = build_instance(&b, 100_000).unwrap();
        for n in [100u64, 1000, 10_000, 100_000] {
            let d = inst.x.density_in(n).unwrap();
            let cnt = inst.b.counting(n).unwrap() as f64;
            assert!(d.ratio >= 1.0 - (cnt * cnt + cnt) / n as f64);
        }
    }
}
