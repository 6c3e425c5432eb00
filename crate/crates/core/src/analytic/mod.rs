//! Laplace-weighted generating-function quantities with certified
//! truncation error, plus exact polynomial-identity checks.
//!
//! For a sequence `A` of positive integers and `f(z) = Σ_{a∈A} z^a`:
//!
//! - `ψ(Y) = f(e^(−1/Y))`, a smoothed count of elements at scale `Y`;
//! - `g(Y) = 1 + 4(1 − e^(−2/Y)) Σ_{k≥1} S_k e^(−2k/Y)`, the correction
//!   term in the doubling inequality for `ψ`;
//! - the dyadic sum `Σ 2ⁿ x^(2ⁿ)` and the cascade `H(Y;α)`;
//! - the coefficient identity
//!   `2z·f(z²) = (1−z)f(z)² + 4z·Σ_{k≥1}(R2(2k)−R2(2k+1))z^(2k) − (1+z)f(−z)²`
//!   verified in exact integer arithmetic;
//! - the inequality `ψ(Y)² ≥ 2Y·ψ(Y/2) − Y·g(Y)`.
//!
//! Every floating result carries a certified bound on its distance from the
//! untruncated value; cutoffs come from closed-form geometric or integral
//! tail bounds and are recorded alongside the value.

mod series;

pub use series::CoefficientSeries;

use num_bigint::BigInt;

use crate::error::Error;
use crate::repfuncs::{rep_profiles, RepProfile};
use crate::seq::IntegerSequence;
use crate::sums::{s_profile, SumProfile};
use crate::Result;

/// A floating value paired with a certified truncation-error bound and the
/// evaluation parameters that produced it.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct AnalyticValue {
    pub value: f64,
    pub err: f64,
    pub params: EvalParams,
}

#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct EvalParams {
    pub y: f64,
    pub tol: f64,
    pub cutoff: u64,
}

fn check_scale(y: f64, tol: f64) -> Result<()> {
    if !(y.is_finite() && y > 0.0) {
        return Err(Error::Domain(format!("scale Y must be positive, got {y}")));
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::Domain(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    Ok(())
}

/// Tail of `Σ_{a > k} e^(−a/Y)` over all integers: geometric closed form.
fn psi_tail(k: f64, y: f64) -> f64 {
    (-k / y).exp() / (1.0 - (-1.0 / y).exp())
}

/// Smallest summation cutoff whose geometric tail certifies `tol`.
pub(crate) fn psi_cutoff(y: f64, tol: f64) -> u64 {
    let mut k = (y * (2.0 * y / tol).ln()).ceil().max(1.0) as u64;
    let step = (y.ceil() as u64).max(1);
    while psi_tail(k as f64, y) >= tol {
        k += step;
    }
    k
}

/// `ψ(Y) = Σ_{a∈A} e^(−a/Y)` with certified error below `tol`.
///
/// Requires `0 ∉ A` (otherwise `ψ(Y) ≤ Y` fails) and a bound large enough
/// for the geometric tail to certify the tolerance. Terms are accumulated
/// smallest-first.
pub fn psi(a: &IntegerSequence, y: f64, tol: f64) -> Result<AnalyticValue> {
    check_scale(y, tol)?;
    if a.min() == Some(0) {
        return Err(Error::Positivity);
    }
    let cutoff = psi_cutoff(y, tol);
    if a.bound() < cutoff {
        return Err(Error::InsufficientTruncation {
            have: a.bound(),
            need: cutoff,
            tol,
        });
    }
    let upto = a.elements().partition_point(|&e| e <= cutoff);
    let mut value = 0.0;
    for &e in a.elements()[..upto].iter().rev() {
        value += (-(e as f64) / y).exp();
    }
    Ok(AnalyticValue {
        value,
        err: psi_tail(cutoff as f64, y),
        params: EvalParams { y, tol, cutoff },
    })
}

/// Integral tail bound `∫_K^∞ x² e^(−2x/Y) dx`, valid once the integrand is
/// decreasing (`K ≥ Y`).
fn quadratic_integral_tail(k: f64, y: f64) -> f64 {
    (-2.0 * k / y).exp() * (k * k * y / 2.0 + k * y * y / 2.0 + y * y * y / 4.0)
}

/// Tail bound for the `S_k`-weighted form of `g`, using `|S_k| ≤ k²` for
/// `k ≥ 3` (the valid two-sided version of the crude quadratic bound).
fn g_tail_weighted(k: f64, y: f64) -> f64 {
    4.0 * (1.0 - (-2.0 / y).exp()) * quadratic_integral_tail(k, y)
}

/// Tail bound for the direct `R2`-difference form, using
/// `|R2(2k) − R2(2k+1)| ≤ k + 1`: `4 ∫_K^∞ (x+1) e^(−2x/Y) dx`.
fn g_tail_direct(k: f64, y: f64) -> f64 {
    4.0 * (-2.0 * k / y).exp() * ((k + 1.0) * y / 2.0 + y * y / 4.0)
}

/// Prefix length of `S` needed so both `g` summation routes certify `tol`.
pub(crate) fn g_cutoff(y: f64, tol: f64) -> u64 {
    let mut k = (y.ceil() as u64).max(3);
    let step = ((y / 2.0).ceil() as u64).max(1);
    while g_tail_weighted(k as f64, y) >= tol || g_tail_direct(k as f64, y) >= tol {
        k += step;
    }
    k
}

/// `g(Y)` from a precomputed sum profile; needs `k_max ≥ g_cutoff(Y, tol)`.
pub fn g_from_sums(s: &SumProfile, y: f64, tol: f64) -> Result<AnalyticValue> {
    check_scale(y, tol)?;
    let cutoff = g_cutoff(y, tol);
    if s.k_max() < cutoff {
        return Err(Error::InsufficientTruncation {
            have: s.k_max(),
            need: cutoff,
            tol,
        });
    }
    let weight = 1.0 - (-2.0 / y).exp();
    let mut acc = 0.0;
    for k in (1..=cutoff).rev() {
        acc += s.s(k) as f64 * (-2.0 * k as f64 / y).exp();
    }
    Ok(AnalyticValue {
        value: 1.0 + 4.0 * weight * acc,
        err: g_tail_weighted(cutoff as f64, y),
        params: EvalParams { y, tol, cutoff },
    })
}

/// `g(Y) = 1 + 4(1 − e^(−2/Y)) Σ_{k≥1} S_k e^(−2k/Y)` with certified error.
pub fn g_of(a: &IntegerSequence, y: f64, tol: f64) -> Result<AnalyticValue> {
    check_scale(y, tol)?;
    let cutoff = g_cutoff(y, tol);
    let (_, s) = profile_to(a, cutoff, tol)?;
    g_from_sums(&s, y, tol)
}

fn profile_to(a: &IntegerSequence, k: u64, tol: f64) -> Result<(RepProfile, SumProfile)> {
    if 2 * k + 1 > a.bound() {
        return Err(Error::InsufficientTruncation {
            have: a.bound(),
            need: 2 * k + 1,
            tol,
        });
    }
    let p = rep_profiles(a, 2 * k + 1)?;
    let s = s_profile(&p, k)?;
    Ok((p, s))
}

/// `g(Y)` computed two ways: via the `S_k` weighting and via the direct
/// `R2`-difference weighting related to it by Abel summation. The two values
/// agree within the sum of their certified errors.
pub fn g_two_ways(a: &IntegerSequence, y: f64, tol: f64) -> Result<(AnalyticValue, AnalyticValue)> {
    check_scale(y, tol)?;
    let cutoff = g_cutoff(y, tol);
    let (p, s) = profile_to(a, cutoff, tol)?;
    let weighted = g_from_sums(&s, y, tol)?;
    let r2 = p.r2();
    let mut acc = 0.0;
    for k in (1..=cutoff as usize).rev() {
        let diff = r2[2 * k] as f64 - r2[2 * k + 1] as f64;
        acc += diff * (-2.0 * k as f64 / y).exp();
    }
    let direct = AnalyticValue {
        value: 1.0 + 4.0 * acc,
        err: g_tail_direct(cutoff as f64, y),
        params: EvalParams { y, tol, cutoff },
    };
    Ok((weighted, direct))
}

/// `Σ_{n≥0} 2ⁿ x^(2ⁿ)`, summed until the next term drops below `tol` on the
/// decreasing side. The partial sum never exceeds the closed bounds
/// `2x/(1−x)` and `x(1+x)/(1−x)`.
pub fn dyadic_sum(x: f64, tol: f64) -> Result<f64> {
    if !(x.is_finite() && x > 0.0 && x < 1.0) {
        return Err(Error::Domain(format!(
            "dyadic sum needs 0 < x < 1, got {x}"
        )));
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::Domain(format!(
            "tolerance must be positive, got {tol}"
        )));
    }
    let mut sum = 0.0;
    let mut power = x; // x^(2^n)
    let mut weight = 1.0; // 2^n
    let mut prev = f64::INFINITY;
    for _ in 0..128 {
        let term = weight * power;
        if term < tol && term < prev {
            break;
        }
        sum += term;
        prev = term;
        power *= power;
        weight *= 2.0;
    }
    Ok(sum)
}

/// The dyadic cascade `H(Y;α) = Σ_{j=0}^{α−1} h(Y/2ʲ) / 2^(j+1)`, closed form.
pub fn h_cascade<F: Fn(f64) -> f64>(h: F, y: f64, alpha: u32) -> f64 {
    let mut acc = 0.0;
    let mut scale = y;
    let mut weight = 0.5;
    for _ in 0..alpha {
        acc += weight * h(scale);
        scale /= 2.0;
        weight /= 2.0;
    }
    acc
}

/// The same cascade built by the recurrence
/// `F(y₀, 0) = 0`, `F(y₀, a+1) = (h(y₀·2^(a+1)) + F(y₀, a)) / 2`
/// anchored at `y₀ = Y / 2^α`; agrees with [`h_cascade`] to relative 1e-12.
pub fn h_cascade_recurrence<F: Fn(f64) -> f64>(h: F, y: f64, alpha: u32) -> f64 {
    let y0 = y / 2f64.powi(alpha as i32);
    let mut f = 0.0;
    for a in 1..=alpha {
        f = (h(y0 * 2f64.powi(a as i32)) + f) / 2.0;
    }
    f
}

/// Verifies `2z·f(z²) = (1−z)f(z)² + 4z·Σ_{k≥1}(R2(2k)−R2(2k+1))z^(2k)
/// − (1+z)f(−z)²` as exact integer polynomials truncated to `degree`,
/// returning the maximum absolute coefficient difference (0 when the
/// identity holds).
///
/// Requires `0 ∉ A`: the `k ≥ 1` sum omits a `k = 0` term that vanishes
/// only for positive sequences.
pub fn identity28_check(a: &IntegerSequence, degree: u64) -> Result<u64> {
    if a.min() == Some(0) {
        return Err(Error::Positivity);
    }
    if degree > a.bound() {
        return Err(Error::OutOfBound {
            needed: degree,
            bound: a.bound(),
        });
    }
    let d = degree as usize;
    let p = rep_profiles(a, degree)?;
    let r2 = p.r2();
    let fsq = CoefficientSeries::characteristic(a, degree).square();
    let fnsq = CoefficientSeries::characteristic_alternating(a, degree).square();

    let mut residual = BigInt::ZERO;
    for m in 0..=d {
        // left side: 2z·f(z²) has coefficient 2 exactly at m = 2a + 1
        let lhs = if m % 2 == 1 && a.contains((m as u64 - 1) / 2) {
            BigInt::from(2)
        } else {
            BigInt::ZERO
        };
        let prev_sq = if m > 0 {
            fsq.coeff(m as u64 - 1)
        } else {
            &BigInt::ZERO
        };
        let prev_nsq = if m > 0 {
            fnsq.coeff(m as u64 - 1)
        } else {
            &BigInt::ZERO
        };
        let mut rhs = fsq.coeff(m as u64) - prev_sq - fnsq.coeff(m as u64) - prev_nsq;
        if m % 2 == 1 && m >= 3 {
            let k = (m - 1) / 2;
            rhs += 4 * (BigInt::from(r2[2 * k]) - BigInt::from(r2[2 * k + 1]));
        }
        let diff = (lhs - rhs).magnitude().clone();
        if BigInt::from(diff.clone()) > residual {
            residual = BigInt::from(diff);
        }
    }
    Ok(u64::try_from(&residual).unwrap_or(u64::MAX))
}

/// Signed slack of `ψ(Y)² ≥ 2Y·ψ(Y/2) − Y·g(Y)`: returns
/// `ψ(Y)² + Y·g(Y) − 2Y·ψ(Y/2)` with the accumulated certified error.
/// The slack is never below minus that error.
pub fn ineq33_check(a: &IntegerSequence, y: f64, tol: f64) -> Result<AnalyticValue> {
    let psi_y = psi(a, y, tol)?;
    let psi_half = psi(a, y / 2.0, tol)?;
    let g = g_of(a, y, tol)?;
    let value = psi_y.value * psi_y.value + y * g.value - 2.0 * y * psi_half.value;
    let err =
        2.0 * psi_y.value * psi_y.err + psi_y.err * psi_y.err + y * g.err + 2.0 * y * psi_half.err;
    Ok(AnalyticValue {
        value,
        err,
        params: EvalParams {
            y,
            tol,
            cutoff: psi_y
                .params
                .cutoff
                .max(psi_half.params.cutoff)
                .max(g.params.cutoff),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(elements: &[u64], bound: u64) -> IntegerSequence {
        IntegerSequence::new(elements.to_vec(), bound).unwrap()
    }

    #[test]
    fn psi_single_element() {
        let v = psi(&seq(&[1], 100), 1.0, 1e-9).unwrap();
        assert!((v.value - (-1.0f64).exp()).abs() < 1e-15);
        assert!(v.err < 1e-9);
    }

    #[test]
    fn psi_full_geometric() {
        let a = IntegerSequence::full_positive(400);
        let v = psi(&a, 10.0, 1e-9).unwrap();
        let closed = 1.0 / (0.1f64.exp() - 1.0);
        assert!((v.value - closed).abs() <= v.err + 1e-12);
        assert!(v.value <= 10.0 + 1e-9);
    }

    #[test]
    fn psi_monotone_in_y() {
        let a = seq(&(1..=2000).filter(|n| n % 3 == 1).collect::<Vec<_>>(), 2000);
        let mut last = 0.0;
        for y in [5.0, 10.0, 20.0, 40.0] {
            let v = psi(&a, y, 1e-9).unwrap();
            assert!(v.value + 2.0 * v.err >= last);
            last = v.value;
        }
    }

    #[test]
    fn psi_errors() {
        assert!(matches!(
            psi(&seq(&[0, 1], 100), 1.0, 1e-9),
            Err(Error::Positivity)
        ));
        assert!(matches!(
            psi(&seq(&[1], 10), 10.0, 1e-9),
            Err(Error::InsufficientTruncation { .. })
        ));
        assert!(matches!(
            psi(&seq(&[1], 100), -1.0, 1e-9),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn g_of_full_set_is_exactly_one() {
        let a = IntegerSequence::full_positive(2000);
        let v = g_of(&a, 2.0, 1e-9).unwrap();
        assert_eq!(v.value, 1.0);
    }

    #[test]
    fn g_of_closed_form() {
        // For {0,1} (and {1}) the defect sums are identically 1, so
        // g(Y) = 1 + 4e^(−2/Y).
        for els in [vec![0, 1], vec![1]] {
            let a = seq(&els, 600);
            let v = g_of(&a, 2.0, 1e-9).unwrap();
            let closed = 1.0 + 4.0 * (-1.0f64).exp();
            assert!((v.value - closed).abs() <= v.err + 1e-12, "A = {els:?}");
        }
    }

    #[test]
    fn g_two_ways_agree() {
        let a = IntegerSequence::full_positive(2000);
        let (w, d) = g_two_ways(&a, 2.0, 1e-9).unwrap();
        assert_eq!((w.value, d.value), (1.0, 1.0));

        let a = seq(&[0, 1], 700);
        let (w, d) = g_two_ways(&a, 2.0, 1e-9).unwrap();
        assert!((w.value - d.value).abs() <= w.err + d.err);
        assert!((w.value - (1.0 + 4.0 * (-1.0f64).exp())).abs() < 1e-9);

        let a = seq(&(1..=5000).filter(|n| n % 7 != 2).collect::<Vec<_>>(), 5000);
        let (w, d) = g_two_ways(&a, 50.0, 1e-6).unwrap();
        assert!((w.value - d.value).abs() <= w.err + d.err);
    }

    #[test]
    fn dyadic_sum_value_and_bounds() {
        // Independent oracle: accumulate the largest index first.
        let oracle: f64 = (0..64u32)
            .rev()
            .map(|n| 2f64.powi(n as i32) * 0.5f64.powf(2f64.powi(n as i32)))
            .sum();
        let v = dyadic_sum(0.5, 1e-12).unwrap();
        assert!((v - oracle).abs() < 1e-12);
        assert!((v - 1.2814941480755806).abs() < 1e-12);
        assert!(v <= 2.0 * 0.5 / 0.5);
        assert!(v <= 0.5 * 1.5 / 0.5);

        let tiny = dyadic_sum(1e-9, 1e-15).unwrap();
        assert!((tiny - 1e-9).abs() < 1e-15);

        let big = dyadic_sum(0.99, 1e-12).unwrap();
        assert!(big <= 2.0 * 0.99 / 0.01);
    }

    #[test]
    fn dyadic_domain() {
        assert!(matches!(dyadic_sum(0.0, 1e-9), Err(Error::Domain(_))));
        assert!(matches!(dyadic_sum(1.0, 1e-9), Err(Error::Domain(_))));
        assert!(matches!(dyadic_sum(-0.5, 1e-9), Err(Error::Domain(_))));
    }

    #[test]
    fn cascade_closed_forms() {
        assert_eq!(h_cascade(|_| 1.0, 7.0, 0), 0.0);
        let ln2 = std::f64::consts::LN_2;
        for alpha in [1u32, 3, 10, 40] {
            let got = h_cascade(|_| ln2, 9.5, alpha);
            let expect = ln2 * (1.0 - 2f64.powi(-(alpha as i32)));
            assert!((got - expect).abs() < 1e-14);

            let got = h_cascade(|y| y, 9.5, alpha);
            let expect = (2.0 * 9.5 / 3.0) * (1.0 - 4f64.powi(-(alpha as i32)));
            assert!((got - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn cascade_recurrence_matches_closed_form() {
        let gs = |y: f64| 2.3 * (1.0 + 4.0 * (-2.0 / y).exp()) / y;
        for alpha in 0..=40u32 {
            for y in [3.0, 64.0, 1000.0] {
                let a = h_cascade(gs, y, alpha);
                let b = h_cascade_recurrence(gs, y, alpha);
                let scale = a.abs().max(b.abs()).max(f64::MIN_POSITIVE);
                assert!((a - b).abs() / scale <= 1e-12, "alpha={alpha} y={y}");
            }
        }
    }

    #[test]
    fn identity28_examples() {
        let a = seq(&[1, 2], 64);
        assert_eq!(identity28_check(&a, 64).unwrap(), 0);
        let a = IntegerSequence::full_positive(128);
        assert_eq!(identity28_check(&a, 128).unwrap(), 0);
        let a = seq(&[0, 1], 16);
        assert!(matches!(identity28_check(&a, 16), Err(Error::Positivity)));
    }

    #[test]
    fn identity28_detects_perturbation() {
        // Sanity that the residual is a real comparison: a sequence whose
        // bound lies about completeness makes the sides disagree.
        let a = IntegerSequence::new(vec![1, 2, 4, 7], 64).unwrap();
        assert_eq!(identity28_check(&a, 64).unwrap(), 0);
        // Degree beyond the bound is refused rather than reported as zero.
        assert!(matches!(
            identity28_check(&a, 65),
            Err(Error::OutOfBound { .. })
        ));
    }

    #[test]
    fn ineq33_singleton_closed_form() {
        let a = seq(&[1], 500);
        let v = ineq33_check(&a, 10.0, 1e-9).unwrap();
        let psi10 = (-0.1f64).exp();
        let psi5 = (-0.2f64).exp();
        let g10 = 1.0 + 4.0 * (-0.2f64).exp();
        let expect = psi10 * psi10 + 10.0 * g10 - 20.0 * psi5;
        assert!((v.value - expect).abs() < 1e-7);
        assert!(v.value > 0.0);
    }

    #[test]
    fn ineq33_full_set() {
        let a = IntegerSequence::full_positive(20_000);
        let v = ineq33_check(&a, 50.0, 1e-9).unwrap();
        assert!(v.value >= -v.err);
        assert!(v.err < 1e-6);
    }
}
