//! Weight-preserving bijection on fixed-length binary activity patterns,
//! the leading-one partition it maps into, and the induced leading-one
//! distribution for i.i.d. Bernoulli bits.

use crate::error::{ensure, Result};

/// Fixed-length binary word, length 1..=64.
///
/// Position 1 is the left-most symbol; internally position p maps to bit
/// p-1 of the machine word, so serialization and display read positions
/// left to right.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ActivityPattern {
    bits: u64,
    len: u8,
}

impl ActivityPattern {
    pub fn new(bits: u64, len: usize) -> Result<Self> {
        ensure!((1..=64).contains(&len), "len", "length must be 1..=64, got {len}");
        if len < 64 {
            ensure!(
                bits < (1u64 << len),
                "bits",
                "word 0x{bits:x} does not fit in {len} positions"
            );
        }
        Ok(Self { bits, len: len as u8 })
    }

    /// Parse a left-to-right string of '0'/'1' characters.
    pub fn parse(word: &str) -> Result<Self> {
        ensure!(
            (1..=64).contains(&word.len()),
            "word",
            "length must be 1..=64, got {}",
            word.len()
        );
        let mut bits = 0u64;
        for (i, ch) in word.chars().enumerate() {
            match ch {
                '1' => bits |= 1u64 << i,
                '0' => {}
                other => {
                    return Err(crate::error::Error::param(
                        "word",
                        format!("unexpected character {other:?} at position {}", i + 1),
                    ))
                }
            }
        }
        Self::new(bits, word.len())
    }

    pub fn len(&self) -> usize {
        self.len as usize
    }

    pub fn is_empty(&self) -> bool {
        false // length is always >= 1
    }

    /// Hamming weight.
    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    /// Bit at 1-based position (1 = left-most).
    pub fn bit(&self, pos: usize) -> bool {
        assert!(pos >= 1 && pos <= self.len(), "position out of range");
        (self.bits >> (pos - 1)) & 1 == 1
    }

    pub fn raw_bits(&self) -> u64 {
        self.bits
    }

    fn is_zero(&self) -> bool {
        self.bits == 0
    }
}

impl std::fmt::Display for ActivityPattern {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for pos in 1..=self.len() {
            f.write_str(if self.bit(pos) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Forward mapping: the all-zero word is fixed; otherwise, with i the
/// position of the right-most 1 and m = L - i + 1, the output is
/// [0^{m-1}, 1, b_1^{L-m}]. Weight is preserved and the output's leading 1
/// sits at position m.
pub fn forward_map(b: &ActivityPattern) -> ActivityPattern {
    if b.is_zero() {
        return *b;
    }
    let len = b.len();
    // Right-most 1 = largest set position.
    let i = 64 - b.bits.leading_zeros() as usize;
    let m = len - i + 1;
    let kept = len - m; // b_1^{L-m}
    let bits = if kept == 0 {
        1u64 << (m - 1)
    } else {
        (1u64 << (m - 1)) | ((b.bits & ((1u64 << kept) - 1)) << m)
    };
    ActivityPattern { bits, len: b.len }
}

/// Inverse of [`forward_map`]: with i the position of the left-most 1 and
/// m = i, returns [b̃_{m+1}^{L}, 1, 0^{m-1}].
pub fn inverse_map(bt: &ActivityPattern) -> ActivityPattern {
    if bt.is_zero() {
        return *bt;
    }
    let len = bt.len();
    let m = bt.bits.trailing_zeros() as usize + 1;
    let high = if m == len { 0 } else { bt.bits >> m };
    let bits = high | (1u64 << (len - m));
    ActivityPattern { bits, len: bt.len }
}

/// Position of the left-most 1, or L+1 for the all-zero word. The level
/// sets of this index partition {0,1}^L.
pub fn partition_index(b: &ActivityPattern) -> usize {
    if b.is_zero() {
        b.len() + 1
    } else {
        b.bits.trailing_zeros() as usize + 1
    }
}

/// Leading-one distribution for i.i.d. Bernoulli(p) bits: Pr[m] =
/// p(1-p)^{m-1} for m = 1..=L and (1-p)^L at m = L+1. The last bin is the
/// complement, so the vector sums to 1 exactly.
pub fn leading_one_pmf(p: f64, len: usize) -> Result<Vec<f64>> {
    ensure!(p > 0.0 && p <= 1.0, "p", "must lie in (0, 1], got {p}");
    ensure!(len >= 1, "len", "length must be at least 1");
    let mut pmf = Vec::with_capacity(len + 1);
    for m in 1..=len {
        pmf.push(p * (1.0 - p).powi(m as i32 - 1));
    }
    pmf.push((1.0 - p).powi(len as i32));
    Ok(pmf)
}

/// Partial sums of the leading-one series: Σ p(1-p)^{m-1} and
/// Σ (m-1) p(1-p)^{m-1} over m = 1..=terms, with compensated summation.
/// Their closed forms are 1 and (1-p)/p.
pub fn leading_one_series_partial_sums(p: f64, terms: u64) -> Result<(f64, f64)> {
    ensure!(p > 0.0 && p <= 1.0, "p", "must lie in (0, 1], got {p}");
    ensure!(terms >= 1, "terms", "need at least one term");
    let mut unit = KahanSum::default();
    let mut shifted = KahanSum::default();
    let q = 1.0 - p;
    let mut geometric = p; // p (1-p)^{m-1}
    for m in 1..=terms {
        unit.add(geometric);
        shifted.add((m - 1) as f64 * geometric);
        geometric *= q;
    }
    Ok((unit.value(), shifted.value()))
}

#[derive(Default)]
struct KahanSum {
    sum: f64,
    carry: f64,
}

impl KahanSum {
    fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(s: &str) -> ActivityPattern {
        ActivityPattern::parse(s).unwrap()
    }

    #[test]
    fn forward_worked_examples() {
        assert_eq!(forward_map(&word("0000")), word("0000"));
        assert_eq!(forward_map(&word("1010")), word("0110"));
        assert_eq!(forward_map(&word("1111")), word("1111"));
    }

    #[test]
    fn inverse_worked_examples() {
        assert_eq!(inverse_map(&word("0000")), word("0000"));
        assert_eq!(inverse_map(&word("0110")), word("1010"));
    }

    #[test]
    fn partition_index_examples() {
        assert_eq!(partition_index(&word("1000")), 1);
        assert_eq!(partition_index(&word("0010")), 3);
        assert_eq!(partition_index(&word("0000")), 5);
    }

    #[test]
    fn exhaustive_round_trip_small_lengths() {
        for len in 1..=12usize {
            let words = 1u64 << len;
            let mut seen = vec![false; words as usize];
            for bits in 0..words {
                let b = ActivityPattern::new(bits, len).unwrap();
                let fb = forward_map(&b);
                assert_eq!(fb.weight(), b.weight(), "weight at {b}");
                assert_eq!(inverse_map(&fb), b, "round trip at {b}");
                assert!(!seen[fb.raw_bits() as usize], "collision at {b}");
                seen[fb.raw_bits() as usize] = true;
            }
            assert!(seen.iter().all(|&s| s), "not onto at len={len}");
        }
    }

    #[test]
    fn forward_output_structure() {
        // f(b) = [0^{m-1}, 1, b_1^{L-m}] with m the output's leading-one
        // position.
        for len in 1..=10usize {
            for bits in 1..(1u64 << len) {
                let b = ActivityPattern::new(bits, len).unwrap();
                let fb = forward_map(&b);
                let m = partition_index(&fb);
                for pos in 1..m {
                    assert!(!fb.bit(pos));
                }
                assert!(fb.bit(m));
                for pos in m + 1..=len {
                    assert_eq!(fb.bit(pos), b.bit(pos - m));
                }
            }
        }
    }

    #[test]
    fn boundary_length_64() {
        let lone_left = ActivityPattern::new(1, 64).unwrap(); // word 1 0^63
        let fb = forward_map(&lone_left);
        // Right-most 1 at i = 1, so m = 64: output is 0^63 1.
        assert_eq!(fb.raw_bits(), 1u64 << 63);
        assert_eq!(inverse_map(&fb), lone_left);

        let all_ones = ActivityPattern::new(u64::MAX, 64).unwrap();
        assert_eq!(forward_map(&all_ones), all_ones);
        assert_eq!(inverse_map(&all_ones), all_ones);
    }

    #[test]
    fn pmf_point_mass_at_one() {
        let pmf = leading_one_pmf(1.0, 5).unwrap();
        assert_eq!(pmf[0], 1.0);
        assert!(pmf[1..].iter().all(|&x| x == 0.0));
    }

    #[test]
    fn pmf_geometric_plus_remainder() {
        let pmf = leading_one_pmf(0.5, 3).unwrap();
        assert_eq!(pmf, vec![0.5, 0.25, 0.125, 0.125]);
        // Sums to 1 exactly: the last bin is defined by complement.
        let sum: f64 = pmf.iter().sum();
        assert_eq!(sum, 1.0);
    }

    #[test]
    fn pmf_matches_enumeration() {
        // Exact check against enumeration over all words at L = 12:
        // Pr[partition_index(forward(B)) = m] for B with iid Ber(p) bits.
        let len = 12usize;
        let p = 0.3f64;
        let pmf = leading_one_pmf(p, len).unwrap();
        let mut enumerated = vec![0.0f64; len + 1];
        for bits in 0..(1u64 << len) {
            let b = ActivityPattern::new(bits, len).unwrap();
            let prob = p.powi(b.weight() as i32) * (1.0 - p).powi(len as i32 - b.weight() as i32);
            enumerated[partition_index(&forward_map(&b)) - 1] += prob;
        }
        for m in 0..=len {
            assert!(
                (enumerated[m] - pmf[m]).abs() < 1e-14,
                "m={}: enumerated={}, closed={}",
                m + 1,
                enumerated[m],
                pmf[m]
            );
        }
    }

    #[test]
    fn weight_preservation_makes_words_equiprobable() {
        // Pr[A = f(a)] = Pr[A = a] for iid Ber(p) bits, checked exactly.
        let len = 10usize;
        let p = 0.27f64;
        for bits in 0..(1u64 << len) {
            let b = ActivityPattern::new(bits, len).unwrap();
            let fb = forward_map(&b);
            let pr = |w: u32| p.powi(w as i32) * (1.0 - p).powi(len as i32 - w as i32);
            assert_eq!(pr(b.weight()), pr(fb.weight()));
        }
    }

    #[test]
    fn geometric_series_identities() {
        for &p in &[0.01, 0.1, 0.3, 0.5, 0.9, 0.99] {
            let (unit, shifted) = leading_one_series_partial_sums(p, 10_000).unwrap();
            assert!((unit - 1.0).abs() < 1e-12, "p={p}: unit sum {unit}");
            let closed = (1.0 - p) / p;
            let err = if closed == 0.0 {
                shifted.abs()
            } else {
                ((shifted - closed) / closed).abs()
            };
            assert!(err < 1e-12, "p={p}: shifted {shifted} vs {closed}");
        }
        let (unit, shifted) = leading_one_series_partial_sums(1.0, 10).unwrap();
        assert_eq!(unit, 1.0);
        assert_eq!(shifted, 0.0);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(ActivityPattern::new(0, 0).is_err());
        assert!(ActivityPattern::new(0, 65).is_err());
        assert!(ActivityPattern::new(8, 3).is_err());
        assert!(ActivityPattern::parse("01a1").is_err());
        assert!(leading_one_pmf(0.0, 4).is_err());
        assert!(leading_one_pmf(1.1, 4).is_err());
    }
}
