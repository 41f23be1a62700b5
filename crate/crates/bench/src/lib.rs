//! Fixtures shared by the criterion benchmarks.

use starph_core::foundation::Rational;
use starph_core::model::{normalize_lengths, EdgeLengthVector};

/// Distinct tail `k, k-1, ..., 2` (halved) with `L = 10 k`.
pub fn distinct_lengths(k: usize) -> EdgeLengthVector {
    let k = k as i64;
    let mut raw = vec![Rational::from_integer(10 * k)];
    raw.extend((2..=k).rev().map(|i| Rational::new(i, 2).expect("nonzero denominator")));
    normalize_lengths(&raw).expect("positive lengths")
}

/// Every tail length equal to one.
pub fn equal_lengths(k: usize) -> EdgeLengthVector {
    let mut raw = vec![Rational::from_integer(10)];
    raw.extend(std::iter::repeat_n(Rational::one(), k - 1));
    normalize_lengths(&raw).expect("positive lengths")
}
