//! The three representation-function profiles, exactly.
//!
//! For a sequence `A` and `0 ≤ n ≤ N`:
//!
//! - `R1(n)` counts ordered pairs `(a_i, a_j)` with `a_i + a_j = n`;
//! - `R2(n)` counts unordered pairs with repetition (`i ≤ j`);
//! - `R3(n)` counts unordered pairs without repetition (`i < j`).
//!
//! With `d(n) = [n even and n/2 ∈ A]` they satisfy `R1 = 2·R3 + d` and
//! `R2 = R3 + d`, so the fast path computes `R1` by exact characteristic-
//! vector self-convolution and derives the other two. [`naive_profiles`]
//! recomputes all three by definition-level pair enumeration; the two must
//! agree bit for bit.

use std::io::Write;

use crate::conv;
use crate::error::Error;
use crate::seq::IntegerSequence;
use crate::Result;

/// Exact `R1`, `R2`, `R3` arrays for `0 ≤ n ≤ n_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepProfile {
    n_max: u64,
    r1: Vec<u64>,
    r2: Vec<u64>,
    r3: Vec<u64>,
}

impl RepProfile {
    /// Largest index the profile covers.
    pub fn n_max(&self) -> u64 {
        self.n_max
    }

    pub fn r1(&self) -> &[u64] {
        &self.r1
    }

    pub fn r2(&self) -> &[u64] {
        &self.r2
    }

    pub fn r3(&self) -> &[u64] {
        &self.r3
    }
}

fn check_range(a: &IntegerSequence, n_max: u64) -> Result<()> {
    if n_max > a.bound() {
        return Err(Error::OutOfBound {
            needed: n_max,
            bound: a.bound(),
        });
    }
    Ok(())
}

/// Indicator of the convolution diagonal: 1 at even `n` with `n/2 ∈ A`.
fn diagonal(a: &IntegerSequence, n_max: u64) -> Vec<u64> {
    let mut d = vec![0u64; n_max as usize + 1];
    for &e in a.elements() {
        if 2 * e > n_max {
            break;
        }
        d[(2 * e) as usize] = 1;
    }
    d
}

/// Fast exact profile via self-convolution of the characteristic vector.
///
/// Requiring `n_max ≤ a.bound()` guarantees every pair with sum `≤ n_max`
/// uses elements the truncation has materialized, so the counts are exact.
pub fn rep_profiles(a: &IntegerSequence, n_max: u64) -> Result<RepProfile> {
    check_range(a, n_max)?;
    let r1 = conv::char_self_convolve(a.elements(), n_max);
    let d = diagonal(a, n_max);
    let mut r2 = vec![0u64; r1.len()];
    let mut r3 = vec![0u64; r1.len()];
    for n in 0..r1.len() {
        debug_assert_eq!(r1[n] % 2, d[n] % 2, "parity of R1 must match the diagonal");
        r3[n] = (r1[n] - d[n]) / 2;
        r2[n] = r3[n] + d[n];
    }
    Ok(RepProfile { n_max, r1, r2, r3 })
}

/// Definition-level enumeration oracle. Identical output to
/// [`rep_profiles`], computed by a double loop over element pairs; intended
/// for modest sequence sizes.
pub fn naive_profiles(a: &IntegerSequence, n_max: u64) -> Result<RepProfile> {
    check_range(a, n_max)?;
    let len = n_max as usize + 1;
    let (mut r1, mut r2, mut r3) = (vec![0u64; len], vec![0u64; len], vec![0u64; len]);
    let els = a.elements();
    for i in 0..els.len() {
        for j in i..els.len() {
            let s = els[i] + els[j];
            if s > n_max {
                break;
            }
            let s = s as usize;
            r2[s] += 1;
            if i == j {
                r1[s] += 1;
            } else {
                r1[s] += 2;
                r3[s] += 1;
            }
        }
    }
    Ok(RepProfile { n_max, r1, r2, r3 })
}

/// Ordered-pair representation counts `r1(n) = Σ_{b_i + b_j = n} 1` over `B`.
pub fn r1_over(b: &IntegerSequence, n_max: u64) -> Result<Vec<u64>> {
    check_range(b, n_max)?;
    Ok(conv::char_self_convolve(b.elements(), n_max))
}

/// CSV export with header `n,R1,R2,R3`.
pub fn write_profile_csv<W: Write>(p: &RepProfile, mut w: W) -> Result<()> {
    writeln!(w, "n,R1,R2,R3")?;
    for n in 0..p.r1.len() {
        writeln!(w, "{},{},{},{}", n, p.r1[n], p.r2[n], p.r3[n])?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(elements: &[u64], bound: u64) -> IntegerSequence {
        IntegerSequence::new(elements.to_vec(), bound).unwrap()
    }

    #[test]
    fn profile_of_one_two() {
        // Pair enumeration: 1+1=2, 1+2=3 (two orders), 2+2=4.
        let p = rep_profiles(&seq(&[1, 2], 4), 4).unwrap();
        assert_eq!(p.r1(), &[0, 0, 1, 2, 1]);
        assert_eq!(p.r2(), &[0, 0, 1, 1, 1]);
        assert_eq!(p.r3(), &[0, 0, 0, 1, 0]);
        assert_eq!(naive_profiles(&seq(&[1, 2], 4), 4).unwrap(), p);
    }

    #[test]
    fn full_set_closed_forms() {
        let n = 512;
        let a = IntegerSequence::new((0..=n).collect(), n).unwrap();
        let p = rep_profiles(&a, n).unwrap();
        for m in 0..=n as usize {
            assert_eq!(p.r1()[m], m as u64 + 1);
            assert_eq!(p.r2()[m], m as u64 / 2 + 1);
        }
    }

    #[test]
    fn singleton_zero() {
        let p = rep_profiles(&seq(&[0], 4), 4).unwrap();
        assert_eq!(p.r1(), &[1, 0, 0, 0, 0]);
        assert_eq!(p.r2(), &[1, 0, 0, 0, 0]);
        assert_eq!(p.r3(), &[0, 0, 0, 0, 0]);
    }

    #[test]
    fn empty_profile_is_zero() {
        let p = naive_profiles(&IntegerSequence::empty(10), 10).unwrap();
        assert!(p.r1().iter().all(|&v| v == 0));
        assert!(p.r2().iter().all(|&v| v == 0));
        assert!(p.r3().iter().all(|&v| v == 0));
    }

    #[test]
    fn r1_over_examples() {
        let b = seq(&[2, 4], 8);
        let r1 = r1_over(&b, 8).unwrap();
        assert_eq!(r1[6], 2);
        assert_eq!(r1[4], 1);
        assert_eq!(r1[5], 0);
        assert!(r1_over(&IntegerSequence::empty(8), 8)
            .unwrap()
            .iter()
            .all(|&v| v == 0));
        let b = seq(&[2, 4, 8, 16], 16);
        assert_eq!(r1_over(&b, 16).unwrap()[12], 2);
    }

    #[test]
    fn total_mass_is_cardinality_squared() {
        let a = seq(&[1, 3, 4, 9, 11], 22);
        let p = rep_profiles(&a, 22).unwrap();
        let total: u64 = p.r1().iter().sum();
        assert_eq!(total, (a.len() * a.len()) as u64);
    }

    #[test]
    fn out_of_bound_refused() {
        let a = seq(&[1, 2], 4);
        assert!(matches!(
            rep_profiles(&a, 5),
            Err(Error::OutOfBound {
                needed: 5,
                bound: 4
            })
        ));
    }

    #[test]
    fn invariant_relations_hold() {
        let a = seq(&(1..=200).filter(|n| n % 7 != 0).collect::<Vec<_>>(), 200);
        let p = rep_profiles(&a, 200).unwrap();
        for n in 0..=200usize {
            let d = (n % 2 == 0 && a.contains(n as u64 / 2)) as u64;
            assert_eq!(p.r1()[n], 2 * p.r3()[n] + d);
            assert_eq!(p.r2()[n], p.r3()[n] + d);
        }
    }

    #[test]
    fn csv_shape() {
        let p = rep_profiles(&seq(&[1, 2], 4), 4).unwrap();
        let mut buf = Vec::new();
        write_profile_csv(&p, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some("n,R1,R2,R3"));
        assert_eq!(lines.next(), Some("0,0,0,0"));
        assert_eq!(text.lines().count(), 6);
    }
}
