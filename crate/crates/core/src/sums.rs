//! Monotonicity-defect statistics of `R2`.
//!
//! `S_k = Σ_{l=1}^{k} (R2(2l) − R2(2l+1))` measures how far `R2` is from
//! increasing across even/odd steps; `S⁺_k = max(S_k, 0)`. From these come
//! the sup statistics `T(N) = max_{n ≤ m(N)} S_n` (and `T⁺`), where
//! `m(N) = ⌊N(ln N + ln ln N)⌋`, and the `L¹` sum `Σ_{n ≤ m(N)} S⁺_n / n`.

use std::io::Write;

use crate::error::Error;
use crate::repfuncs::RepProfile;
use crate::Result;

/// Exact prefix sums `S_k` and their positive parts, `1 ≤ k ≤ k_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumProfile {
    // index 0 is the sentinel S_0 = 0
    s: Vec<i64>,
    s_plus: Vec<i64>,
}

impl SumProfile {
    pub fn k_max(&self) -> u64 {
        (self.s.len() - 1) as u64
    }

    /// `S_k`; panics when `k` is outside `0..=k_max`.
    pub fn s(&self, k: u64) -> i64 {
        self.s[k as usize]
    }

    /// `S⁺_k = max(S_k, 0)`.
    pub fn s_plus(&self, k: u64) -> i64 {
        self.s_plus[k as usize]
    }
}

/// Builds `S_1..S_k_max` from an `R2` profile. Needs `R2` up to `2·k_max+1`.
pub fn s_profile(p: &RepProfile, k_max: u64) -> Result<SumProfile> {
    if 2 * k_max + 1 > p.n_max() {
        return Err(Error::OutOfBound {
            needed: 2 * k_max + 1,
            bound: p.n_max(),
        });
    }
    let r2 = p.r2();
    let mut s = Vec::with_capacity(k_max as usize + 1);
    let mut s_plus = Vec::with_capacity(k_max as usize + 1);
    s.push(0);
    s_plus.push(0);
    let mut acc = 0i64;
    for k in 1..=k_max as usize {
        acc += r2[2 * k] as i64 - r2[2 * k + 1] as i64;
        s.push(acc);
        s_plus.push(acc.max(0));
    }
    Ok(SumProfile { s, s_plus })
}

/// `m(N) = ⌊N (ln N + ln ln N)⌋`, natural logarithms. Flooring is the
/// conservative choice for the length of a max range.
pub fn m_of(n: u64) -> Result<u64> {
    if n < 3 {
        return Err(Error::Domain(format!("m(N) requires N >= 3, got {n}")));
    }
    let x = n as f64;
    Ok((x * (x.ln() + x.ln().ln())).floor() as u64)
}

/// `T(N) = max_{1 ≤ n ≤ m(N)} S_n`.
pub fn t_of(s: &SumProfile, n: u64) -> Result<i64> {
    let m = m_of(n)?;
    max_over(s, m, false)
}

/// `T⁺(N) = max_{1 ≤ n ≤ m(N)} S⁺_n`; never negative.
pub fn t_plus(s: &SumProfile, n: u64) -> Result<i64> {
    let m = m_of(n)?;
    max_over(s, m, true)
}

/// The earlier variant of `T(N)` with the max taken over `n ≤ N` instead of
/// `n ≤ m(N)`.
pub fn t_of_v1(s: &SumProfile, n: u64) -> Result<i64> {
    max_over(s, n, false)
}

fn max_over(s: &SumProfile, range: u64, plus: bool) -> Result<i64> {
    if range > s.k_max() {
        return Err(Error::OutOfBound {
            needed: range,
            bound: s.k_max(),
        });
    }
    if range == 0 {
        return Err(Error::Domain("empty max range".into()));
    }
    let slice = if plus {
        &s.s_plus[1..=range as usize]
    } else {
        &s.s[1..=range as usize]
    };
    Ok(*slice.iter().max().expect("nonempty range"))
}

/// `Σ_{n=1}^{m(N)} S⁺_n / n`, accumulated in descending-`n` order so the
/// floating result is independent of chunking.
pub fn l1_sum(s: &SumProfile, n: u64) -> Result<f64> {
    let m = m_of(n)?;
    if m > s.k_max() {
        return Err(Error::OutOfBound {
            needed: m,
            bound: s.k_max(),
        });
    }
    let mut acc = 0.0;
    for k in (1..=m).rev() {
        acc += s.s_plus(k) as f64 / k as f64;
    }
    Ok(acc)
}

/// CSV export with header `k,S,S_plus`.
pub fn write_sums_csv<W: Write>(s: &SumProfile, mut w: W) -> Result<()> {
    writeln!(w, "k,S,S_plus")?;
    for k in 1..=s.k_max() {
        writeln!(w, "{},{},{}", k, s.s(k), s.s_plus(k))?;
    }
    Ok(())
}
