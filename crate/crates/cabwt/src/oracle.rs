//! Brute-force reference implementations used as ground truth in tests and
//! by the CLI `verify` command on small inputs. Correct and slow on
//! purpose; nothing here is shared with the engines it checks.

use crate::error::Result;
use crate::query::RowRange;
use crate::scheme::{compare_rotations, OrderingScheme};
use crate::transform::ensure_primitive;

/// The fully materialized matrix: every rotation of `s`, sorted under the
/// scheme's comparator.
#[derive(Debug, Clone)]
pub struct NaiveMatrix {
    s: Vec<u8>,
    order: Vec<usize>,
}

impl NaiveMatrix {
    pub fn build(s: &[u8], scheme: &OrderingScheme) -> Result<Self> {
        scheme.alphabet().check_contains_all(s)?;
        ensure_primitive(s)?;
        let mut order: Vec<usize> = (0..s.len()).collect();
        order.sort_by(|&a, &b| compare_rotations(s, a, b, scheme));
        Ok(NaiveMatrix {
            s: s.to_vec(),
            order,
        })
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Rotation start positions in row order.
    pub fn rotation_starts(&self) -> &[usize] {
        &self.order
    }

    pub fn row(&self, r: usize) -> Vec<u8> {
        let n = self.s.len();
        let start = self.order[r];
        (0..n).map(|k| self.s[(start + k) % n]).collect()
    }

    pub fn first_column(&self) -> Vec<u8> {
        self.order.iter().map(|&p| self.s[p]).collect()
    }

    pub fn last_column(&self) -> Vec<u8> {
        let n = self.s.len();
        self.order
            .iter()
            .map(|&p| self.s[(p + n - 1) % n])
            .collect()
    }

    /// Row holding the unrotated string.
    pub fn original_row(&self) -> usize {
        self.order.iter().position(|&p| p == 0).unwrap()
    }

    /// Row holding the rotation that starts at text position `start`.
    pub fn row_of_rotation(&self, start: usize) -> usize {
        self.order.iter().position(|&p| p == start).unwrap()
    }

    /// The contiguous block of rows whose rotations begin with `pattern`
    /// (read cyclically). Empty block encoded as `[0, 0]`.
    pub fn range_of(&self, pattern: &[u8]) -> RowRange {
        let n = self.s.len();
        let matches: Vec<usize> = (0..n)
            .filter(|&r| {
                let start = self.order[r];
                pattern
                    .iter()
                    .enumerate()
                    .all(|(k, &c)| self.s[(start + k) % n] == c)
            })
            .collect();
        match matches.first() {
            None => RowRange::EMPTY,
            Some(&first) => {
                debug_assert!(matches
                    .iter()
                    .enumerate()
                    .all(|(i, &r)| r == first + i));
                RowRange::new(first, matches.len())
            }
        }
    }
}

/// Rows of the scheme's sorted matrix prefixed by `pattern`, found by
/// scanning the materialized matrix.
pub fn naive_range(s: &[u8], scheme: &OrderingScheme, pattern: &[u8]) -> Result<RowRange> {
    Ok(NaiveMatrix::build(s, scheme)?.range_of(pattern))
}

/// Number of start positions at which `pattern` occurs in the circular
/// string `s` (wrapping as often as needed).
pub fn naive_circular_count(s: &[u8], pattern: &[u8]) -> usize {
    let n = s.len();
    if n == 0 || pattern.is_empty() {
        return 0;
    }
    (0..n)
        .filter(|&j| {
            pattern
                .iter()
                .enumerate()
                .all(|(k, &c)| s[(j + k) % n] == c)
        })
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{demo_scheme, demo_standard, DEMO_TEXT};

    #[test]
    fn matrix_matches_the_worked_example() {
        let m = NaiveMatrix::build(DEMO_TEXT, &demo_scheme()).unwrap();
        assert_eq!(m.last_column(), b"aabcabaaa");
        assert_eq!(m.original_row(), 3);
        assert_eq!(m.row(0), b"baaabacaa");
        assert_eq!(m.first_column(), b"bbaaaaaac");
    }

    #[test]
    fn standard_matrix_is_the_lexicographic_sort() {
        let m = NaiveMatrix::build(DEMO_TEXT, &demo_standard()).unwrap();
        assert_eq!(m.last_column(), b"bcaaabaaa");
        assert_eq!(m.original_row(), 1);
        let mut rows: Vec<Vec<u8>> = (0..m.len()).map(|r| m.row(r)).collect();
        let sorted = {
            let mut s = rows.clone();
            s.sort();
            s
        };
        rows.sort_by(|a, b| a.cmp(b));
        assert_eq!(rows, sorted);
    }

    #[test]
    fn circular_counts() {
        assert_eq!(naive_circular_count(DEMO_TEXT, b"ab"), 2);
        assert_eq!(naive_circular_count(DEMO_TEXT, b"aab"), 2);
        assert_eq!(naive_circular_count(DEMO_TEXT, DEMO_TEXT), 1);
        assert_eq!(naive_circular_count(DEMO_TEXT, b"ca"), 1);
        assert_eq!(naive_circular_count(DEMO_TEXT, b"cc"), 0);
        // wraps beyond one full turn
        assert_eq!(naive_circular_count(b"ab", b"ababa"), 1);
    }

    #[test]
    fn range_scan_agrees_with_the_example() {
        let rng = naive_range(DEMO_TEXT, &demo_scheme(), b"ab").unwrap();
        assert_eq!((rng.start, rng.len), (6, 2));
        let rng = naive_range(DEMO_TEXT, &demo_scheme(), b"zz").unwrap();
        assert!(rng.is_empty());
        let rng = naive_range(DEMO_TEXT, &demo_scheme(), b"aab").unwrap();
        assert_eq!((rng.start, rng.len), (3, 2));
    }

    #[test]
    fn range_length_equals_circular_count() {
        let m = NaiveMatrix::build(DEMO_TEXT, &demo_scheme()).unwrap();
        for pat in [&b"a"[..], b"b", b"c", b"aa", b"ba", b"aaab", b"cab"] {
            assert_eq!(
                m.range_of(pat).len,
                naive_circular_count(DEMO_TEXT, pat),
                "pattern {:?}",
                std::str::from_utf8(pat)
            );
        }
    }
}
