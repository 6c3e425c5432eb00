//! Finite truncations of integer sequences with set algebra and counting.
//!
//! An [`IntegerSequence`] is `A ∩ [0, bound]` for some integer sequence `A`:
//! a strictly increasing list of non-negative integers together with the
//! explicit bound up to which the materialization is complete. Carrying the
//! bound lets every operation distinguish "not a member" from "not known",
//! and refuse queries it cannot certify.

use std::io::{BufRead, Write};
use std::sync::OnceLock;

use crate::error::Error;
use crate::Result;

/// A strictly increasing sequence of non-negative integers, materialized up
/// to `bound`.
///
/// Storage is dual: the sorted element array, plus a bit-per-integer
/// characteristic vector built lazily for O(1) membership tests and fast
/// convolution. Values are immutable after construction and safe to share
/// across threads.
#[derive(Debug)]
pub struct IntegerSequence {
    elements: Vec<u64>,
    bound: u64,
    bits: OnceLock<Vec<u64>>,
}

impl Clone for IntegerSequence {
    fn clone(&self) -> Self {
        IntegerSequence {
            elements: self.elements.clone(),
            bound: self.bound,
            bits: OnceLock::new(),
        }
    }
}

impl PartialEq for IntegerSequence {
    fn eq(&self, other: &Self) -> bool {
        self.bound == other.bound && self.elements == other.elements
    }
}

impl Eq for IntegerSequence {}

/// Count of hits in a range together with the hit ratio.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct Density {
    pub hits: u64,
    pub range: u64,
    pub ratio: f64,
}

impl IntegerSequence {
    /// Builds a sequence, validating strict monotonicity and the bound.
    pub fn new(elements: Vec<u64>, bound: u64) -> Result<Self> {
        for pair in elements.windows(2) {
            if pair[0] >= pair[1] {
                return Err(Error::InvalidSequence(format!(
                    "elements must be strictly increasing, found {} before {}",
                    pair[0], pair[1]
                )));
            }
        }
        if let Some(&last) = elements.last() {
            if last > bound {
                return Err(Error::InvalidSequence(format!(
                    "element {last} exceeds bound {bound}"
                )));
            }
        }
        Ok(IntegerSequence {
            elements,
            bound,
            bits: OnceLock::new(),
        })
    }

    /// The empty truncation with the given bound.
    pub fn empty(bound: u64) -> Self {
        IntegerSequence {
            elements: Vec::new(),
            bound,
            bits: OnceLock::new(),
        }
    }

    /// All positive integers `1..=bound`.
    pub fn full_positive(bound: u64) -> Self {
        IntegerSequence {
            elements: (1..=bound).collect(),
            bound,
            bits: OnceLock::new(),
        }
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn min(&self) -> Option<u64> {
        self.elements.first().copied()
    }

    pub fn max(&self) -> Option<u64> {
        self.elements.last().copied()
    }

    /// Characteristic words, bit `i` set iff `i` is a member; `bound + 1` bits.
    pub(crate) fn char_words(&self) -> &[u64] {
        self.bits.get_or_init(|| {
            let nwords = (self.bound as usize + 1).div_ceil(64);
            let mut words = vec![0u64; nwords];
            for &e in &self.elements {
                words[(e / 64) as usize] |= 1u64 << (e % 64);
            }
            words
        })
    }

    /// O(1) membership. Panics if `n` is beyond the materialized bound,
    /// where membership is unknown.
    pub fn contains(&self, n: u64) -> bool {
        assert!(
            n <= self.bound,
            "membership of {n} is unknown beyond bound {}",
            self.bound
        );
        self.char_words()[(n / 64) as usize] >> (n % 64) & 1 == 1
    }

    /// `A(N) = |A ∩ [1, N]|`. Element 0 is never counted.
    pub fn counting(&self, n: u64) -> Result<u64> {
        if n > self.bound {
            return Err(Error::OutOfBound {
                needed: n,
                bound: self.bound,
            });
        }
        let upto = self.elements.partition_point(|&e| e <= n);
        let zeros = self.elements.partition_point(|&e| e == 0);
        Ok((upto - zeros) as u64)
    }

    /// `{n ∈ [1, n_max] : n ∉ A}`, the complement inside the positive
    /// integers, with bound `n_max`.
    pub fn complement(&self, n_max: u64) -> Result<IntegerSequence> {
        if n_max > self.bound {
            return Err(Error::OutOfBound {
                needed: n_max,
                bound: self.bound,
            });
        }
        let mut elements = Vec::with_capacity((n_max as usize).saturating_sub(self.len()));
        let mut it = self.elements.iter().copied().peekable();
        for n in 1..=n_max {
            while it.peek().is_some_and(|&e| e < n) {
                it.next();
            }
            if it.peek() != Some(&n) {
                elements.push(n);
            }
        }
        Ok(IntegerSequence {
            elements,
            bound: n_max,
            bits: OnceLock::new(),
        })
    }

    /// Density of the sequence in `[1, N]`.
    pub fn density_in(&self, n: u64) -> Result<Density> {
        if n == 0 {
            return Err(Error::Domain("density range N must be positive".into()));
        }
        let hits = self.counting(n)?;
        Ok(Density {
            hits,
            range: n,
            ratio: hits as f64 / n as f64,
        })
    }
}

/// `{b + c ≤ n_max : b ∈ B, c ∈ C}` as a sorted, duplicate-free sequence
/// with bound `n_max`.
pub fn sumset(b: &IntegerSequence, c: &IntegerSequence, n_max: u64) -> IntegerSequence {
    let nwords = (n_max as usize + 1).div_ceil(64);
    let mut words = vec![0u64; nwords];
    for &x in b.elements() {
        if x > n_max {
            break;
        }
        for &y in c.elements() {
            let s = x + y;
            if s > n_max {
                break;
            }
            words[(s / 64) as usize] |= 1u64 << (s % 64);
        }
    }
    let mut elements = Vec::new();
    for (w, &word) in words.iter().enumerate() {
        let mut m = word;
        while m != 0 {
            let bit = m.trailing_zeros() as u64;
            elements.push(w as u64 * 64 + bit);
            m &= m - 1;
        }
    }
    IntegerSequence {
        elements,
        bound: n_max,
        bits: OnceLock::new(),
    }
}

#[derive(serde::Serialize, serde::Deserialize)]
struct SeqJson {
    bound: u64,
    elements: Vec<u64>,
}

/// Parses either format: plain text (`#` comments, a required `bound=<N>`
/// header, one ascending integer per line) or the JSON alternative
/// `{"bound": N, "elements": [..]}`.
pub fn read_sequence<R: BufRead>(reader: R) -> Result<IntegerSequence> {
    let mut content = String::new();
    let mut reader = reader;
    reader.read_to_string(&mut content)?;
    if content.trim_start().starts_with('{') {
        let parsed: SeqJson = serde_json::from_str(&content).map_err(|e| Error::Parse {
            line: e.line(),
            msg: e.to_string(),
        })?;
        return IntegerSequence::new(parsed.elements, parsed.bound);
    }
    parse_text(&content)
}

fn parse_text(content: &str) -> Result<IntegerSequence> {
    let mut bound: Option<u64> = None;
    let mut elements = Vec::new();
    for (idx, raw) in content.lines().enumerate() {
        let line = raw.trim();
        let lineno = idx + 1;
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("bound=") {
            if bound.is_some() {
                return Err(Error::Parse {
                    line: lineno,
                    msg: "duplicate bound header".into(),
                });
            }
            bound = Some(rest.trim().parse().map_err(|_| Error::Parse {
                line: lineno,
                msg: format!("invalid bound value {rest:?}"),
            })?);
            continue;
        }
        if bound.is_none() {
            return Err(Error::Parse {
                line: lineno,
                msg: "expected `bound=<N>` header before elements".into(),
            });
        }
        let value: u64 = line.parse().map_err(|_| Error::Parse {
            line: lineno,
            msg: format!("invalid integer {line:?}"),
        })?;
        if elements.last().is_some_and(|&prev| prev >= value) {
            return Err(Error::Parse {
                line: lineno,
                msg: format!("elements must be strictly ascending, got {value}"),
            });
        }
        elements.push(value);
    }
    let bound = bound.ok_or(Error::Parse {
        line: content.lines().count().max(1),
        msg: "missing `bound=<N>` header".into(),
    })?;
    IntegerSequence::new(elements, bound)
}

/// Writes the plain-text format accepted by [`read_sequence`].
pub fn write_sequence_text<W: Write>(seq: &IntegerSequence, mut w: W) -> Result<()> {
    writeln!(w, "bound={}", seq.bound())?;
    for e in seq.elements() {
        writeln!(w, "{e}")?;
    }
    Ok(())
}

/// Writes the JSON format accepted by [`read_sequence`].
pub fn write_sequence_json<W: Write>(seq: &IntegerSequence, mut w: W) -> Result<()> {
    let json = serde_json::to_string(&SeqJson {
        bound: seq.bound(),
        elements: seq.elements().to_vec(),
    })
    .expect("sequence serialization cannot fail");
    writeln!(w, "{json}")?;
    Ok(())
}
