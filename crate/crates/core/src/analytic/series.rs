//! Exact truncated integer power series.
//!
//! Coefficients are arbitrary-precision integers; no floating rounding
//! occurs anywhere in construction or arithmetic. Squaring takes a machine-
//! word fast path whenever the output provably fits in `i64`, and widens
//! otherwise — it never wraps.

use num_bigint::BigInt;

use crate::seq::IntegerSequence;

/// A polynomial `Σ c_n zⁿ` truncated to a fixed degree, with exact integer
/// coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoefficientSeries {
    coeffs: Vec<BigInt>,
}

impl CoefficientSeries {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(BigInt::ZERO);
        }
        CoefficientSeries { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// The characteristic series `Σ_{a ∈ A, a ≤ degree} z^a`.
    pub fn characteristic(a: &IntegerSequence, degree: u64) -> Self {
        let mut coeffs = vec![BigInt::ZERO; degree as usize + 1];
        for &e in a.elements() {
            if e > degree {
                break;
            }
            coeffs[e as usize] = BigInt::from(1);
        }
        CoefficientSeries { coeffs }
    }

    /// The series of `f(−z)`: coefficient `(−1)^a` at each member `a ≤ degree`.
    pub fn characteristic_alternating(a: &IntegerSequence, degree: u64) -> Self {
        let mut coeffs = vec![BigInt::ZERO; degree as usize + 1];
        for &e in a.elements() {
            if e > degree {
                break;
            }
            coeffs[e as usize] = BigInt::from(if e % 2 == 0 { 1 } else { -1 });
        }
        CoefficientSeries { coeffs }
    }

    pub fn degree(&self) -> u64 {
        (self.coeffs.len() - 1) as u64
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, n: u64) -> &BigInt {
        &self.coeffs[n as usize]
    }

    /// Exact square, truncated to the same degree.
    ///
    /// When the input is the characteristic series of `A` with bound at
    /// least the degree, coefficient `n` of the square equals `R1(n)`.
    pub fn square(&self) -> CoefficientSeries {
        let d = self.coeffs.len();
        if let Some(small) = self.as_i64_vec() {
            let max_abs = small.iter().map(|c| c.unsigned_abs()).max().unwrap_or(0);
            // (number of products per coefficient) · max²  bounds every output
            if (d as u128) * (max_abs as u128) * (max_abs as u128) <= i64::MAX as u128 {
                return Self::square_small(&small);
            }
        }
        self.square_wide()
    }

    fn as_i64_vec(&self) -> Option<Vec<i64>> {
        self.coeffs
            .iter()
            .map(i64::try_from)
            .collect::<Result<_, _>>()
            .ok()
    }

    fn square_small(coeffs: &[i64]) -> CoefficientSeries {
        let d = coeffs.len();
        let mut out = vec![0i64; d];
        for i in 0..d {
            let ci = coeffs[i];
            if ci == 0 {
                continue;
            }
            if 2 * i < d {
                out[2 * i] += ci * ci;
            }
            // j stays below d - i so that i + j stays in range
            for j in (i + 1)..d.saturating_sub(i) {
                let cj = coeffs[j];
                if cj != 0 {
                    out[i + j] += 2 * ci * cj;
                }
            }
        }
        CoefficientSeries::from_i64(&out)
    }

    fn square_wide(&self) -> CoefficientSeries {
        let d = self.coeffs.len();
        let mut out = vec![BigInt::ZERO; d];
        for i in 0..d {
            if self.coeffs[i] == BigInt::ZERO {
                continue;
            }
            for j in i..d {
                let n = i + j;
                if n >= d {
                    break;
                }
                if self.coeffs[j] == BigInt::ZERO {
                    continue;
                }
                let prod = &self.coeffs[i] * &self.coeffs[j];
                out[n] += if i == j { prod } else { prod * 2 };
            }
        }
        CoefficientSeries::new(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::repfuncs::rep_profiles;

    #[test]
    fn square_of_constant_one() {
        let a = IntegerSequence::new(vec![0], 0).unwrap();
        let f = CoefficientSeries::characteristic(&a, 0);
        assert_eq!(f.square(), CoefficientSeries::from_i64(&[1]));
    }

    #[test]
    fn square_matches_r1() {
        let a = IntegerSequence::new(vec![1, 2], 8).unwrap();
        let sq = CoefficientSeries::characteristic(&a, 8).square();
        assert_eq!(*sq.coeff(2), BigInt::from(1));
        assert_eq!(*sq.coeff(3), BigInt::from(2));
        assert_eq!(*sq.coeff(4), BigInt::from(1));

        let a = IntegerSequence::new((1..=60).filter(|n| n % 3 != 0).collect(), 60).unwrap();
        let sq = CoefficientSeries::characteristic(&a, 60).square();
        let p = rep_profiles(&a, 60).unwrap();
        for n in 0..=60u64 {
            assert_eq!(*sq.coeff(n), BigInt::from(p.r1()[n as usize]));
        }
    }

    #[test]
    fn alternating_square_flips_odd_coefficients() {
        let a = IntegerSequence::new(vec![1, 2, 5, 6], 16).unwrap();
        let plain = CoefficientSeries::characteristic(&a, 16).square();
        let alt = CoefficientSeries::characteristic_alternating(&a, 16).square();
        for n in 0..=16u64 {
            let expect = if n % 2 == 0 {
                plain.coeff(n).clone()
            } else {
                -plain.coeff(n)
            };
            assert_eq!(*alt.coeff(n), expect);
        }
    }

    #[test]
    fn square_widens_instead_of_wrapping() {
        let big = 1i64 << 40;
        let f = CoefficientSeries::from_i64(&[big, big, big]);
        let sq = f.square();
        let b = BigInt::from(big);
        assert_eq!(*sq.coeff(0), &b * &b);
        assert_eq!(*sq.coeff(1), &b * &b * 2);
        assert_eq!(*sq.coeff(2), &b * &b * 3);

        let f = CoefficientSeries::new(vec![BigInt::from(i64::MAX) * 4, BigInt::from(1)]);
        let sq = f.square();
        assert_eq!(
            *sq.coeff(0),
            BigInt::from(i64::MAX) * BigInt::from(i64::MAX) * 16
        );
    }

    #[test]
    fn small_and_wide_paths_agree() {
        let coeffs: Vec<i64> = (0..50).map(|i| (i * i) as i64 % 17 - 8).collect();
        let f = CoefficientSeries::from_i64(&coeffs);
        assert_eq!(f.square(), f.square_wide());
    }
}
