//! Exact self-convolution of characteristic vectors.
//!
//! `R1(n) = Σ_{i+j=n} χ(i)χ(j)` for all `0 ≤ n ≤ n_max`, as exact integers.
//! Two paths:
//!
//! - up to `POPCOUNT_MAX` bits, word-packed shift-and-popcount against a
//!   bit-reversed copy of the vector (`O(n_max² / 64)`);
//! - above that, a radix-2 number-theoretic transform over the prime
//!   `p = 2⁶⁴ − 2³² + 1`. Counts are bounded by `n_max + 1 ≪ p`, so a single
//!   prime recovers them exactly; floating FFT is never used.
//!
//! Both paths are deterministic and are cross-checked in tests.

/// Largest index handled by the shift-and-popcount path.
const POPCOUNT_MAX: u64 = 1 << 16;

/// Self-convolution counts of the characteristic vector of `elements`,
/// for indices `0..=n_max`. Elements larger than `n_max` cannot contribute
/// and are ignored.
pub(crate) fn char_self_convolve(elements: &[u64], n_max: u64) -> Vec<u64> {
    if n_max <= POPCOUNT_MAX {
        convolve_popcount(elements, n_max)
    } else {
        convolve_ntt(elements, n_max)
    }
}

fn bitset_of(elements: &[u64], n_max: u64) -> Vec<u64> {
    let nwords = (n_max as usize + 1).div_ceil(64);
    let mut words = vec![0u64; nwords];
    for &e in elements {
        if e > n_max {
            break;
        }
        words[(e / 64) as usize] |= 1u64 << (e % 64);
    }
    words
}

/// Word `w` of the vector `v` logically shifted right by `s` bits.
#[inline]
fn shifted_word(v: &[u64], w: usize, q: usize, r: u32) -> u64 {
    let i = w + q;
    let lo = v.get(i).copied().unwrap_or(0);
    if r == 0 {
        lo
    } else {
        (lo >> r) | (v.get(i + 1).copied().unwrap_or(0) << (64 - r))
    }
}

pub(crate) fn convolve_popcount(elements: &[u64], n_max: u64) -> Vec<u64> {
    let x = bitset_of(elements, n_max);
    // rv bit j = x bit (n_max - j), so that bit i of (rv >> (n_max - n))
    // is χ(n - i).
    let mut rv = vec![0u64; x.len()];
    for &e in elements {
        if e > n_max {
            break;
        }
        let j = n_max - e;
        rv[(j / 64) as usize] |= 1u64 << (j % 64);
    }
    let mut out = vec![0u64; n_max as usize + 1];
    for (n, slot) in out.iter_mut().enumerate() {
        let s = n_max - n as u64;
        let (q, r) = ((s / 64) as usize, (s % 64) as u32);
        let mut acc = 0u32;
        for (w, &xw) in x.iter().enumerate() {
            if xw != 0 {
                acc += (xw & shifted_word(&rv, w, q, r)).count_ones();
            }
        }
        *slot = acc as u64;
    }
    out
}

// --- arithmetic modulo p = 2^64 - 2^32 + 1 ---

const P: u64 = 0xffff_ffff_0000_0001;
const EPSILON: u64 = 0xffff_ffff; // 2^64 mod p

#[inline]
fn reduce128(x: u128) -> u64 {
    let lo = x as u64;
    let hi = (x >> 64) as u64;
    let hi_hi = hi >> 32;
    let hi_lo = hi & EPSILON;
    // x ≡ lo + (2^32 - 1)·hi_lo - hi_hi (mod p)
    let (mut t0, borrow) = lo.overflowing_sub(hi_hi);
    if borrow {
        t0 = t0.wrapping_sub(EPSILON);
    }
    let t1 = hi_lo * EPSILON;
    let (mut r, carry) = t0.overflowing_add(t1);
    if carry {
        r = r.wrapping_add(EPSILON);
    }
    if r >= P {
        r -= P;
    }
    r
}

#[inline]
fn mul_mod(a: u64, b: u64) -> u64 {
    reduce128(a as u128 * b as u128)
}

#[inline]
fn add_mod(a: u64, b: u64) -> u64 {
    let (s, carry) = a.overflowing_add(b);
    let mut s = s;
    if carry || s >= P {
        s = s.wrapping_sub(P);
    }
    s
}

#[inline]
fn sub_mod(a: u64, b: u64) -> u64 {
    let (d, borrow) = a.overflowing_sub(b);
    if borrow {
        d.wrapping_add(P)
    } else {
        d
    }
}

fn pow_mod(mut base: u64, mut exp: u64) -> u64 {
    let mut acc = 1u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        exp >>= 1;
    }
    acc
}

#[inline]
fn inv_mod(a: u64) -> u64 {
    pow_mod(a, P - 2)
}

/// In-place radix-2 transform. `root` must be a primitive `a.len()`-th root
/// of unity; `a.len()` must be a power of two dividing 2³².
fn ntt(a: &mut [u64], root: u64) {
    let n = a.len();
    let mut j = 0usize;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            a.swap(i, j);
        }
    }
    let mut len = 2;
    while len <= n {
        let wlen = pow_mod(root, (n / len) as u64);
        for chunk in a.chunks_mut(len) {
            let mut w = 1u64;
            let (lo, hi) = chunk.split_at_mut(len / 2);
            for (u, v) in lo.iter_mut().zip(hi.iter_mut()) {
                let t = mul_mod(*v, w);
                let x = *u;
                *u = add_mod(x, t);
                *v = sub_mod(x, t);
                w = mul_mod(w, wlen);
            }
        }
        len <<= 1;
    }
}

pub(crate) fn convolve_ntt(elements: &[u64], n_max: u64) -> Vec<u64> {
    let m = n_max as usize + 1;
    let l = (2 * m - 1).next_power_of_two();
    assert!(l as u64 <= 1 << 32, "transform length exceeds 2-adicity");
    let mut v = vec![0u64; l];
    for &e in elements {
        if e > n_max {
            break;
        }
        v[e as usize] = 1;
    }
    // 7 generates the multiplicative group mod p.
    let root = pow_mod(7, (P - 1) / l as u64);
    ntt(&mut v, root);
    for x in v.iter_mut() {
        *x = mul_mod(*x, *x);
    }
    ntt(&mut v, inv_mod(root));
    let scale = inv_mod(l as u64);
    v.truncate(m);
    for x in v.iter_mut() {
        *x = mul_mod(*x, scale);
    }
    v
}
