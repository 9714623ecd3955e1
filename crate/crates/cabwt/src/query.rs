//! Pattern counting over a transformed string.
//!
//! A `QueryIndex` wraps the transformed string with rank support, the
//! first-column table, and (for local schemes) the table of all
//! two-symbol row ranges. Counting works backwards through the pattern:
//! the generic path maintains, per substring, the range of rows it
//! prefixes split by the following symbol, and grows substrings one
//! symbol at a time through a triangular tableau; the local path advances
//! one plain range per step in constant time.

use crate::alphabet::Permutation;
use crate::error::{Error, Result};
use crate::rank_select::SequenceIndex;
use crate::scheme::{OrderingScheme, SchemeKind};

/// A contiguous block of matrix rows. The empty block is canonically
/// `[0, 0]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RowRange {
    pub start: usize,
    pub len: usize,
}

impl RowRange {
    pub const EMPTY: RowRange = RowRange { start: 0, len: 0 };

    pub fn new(start: usize, len: usize) -> Self {
        RowRange { start, len }
    }

    pub fn end(&self) -> usize {
        self.start + self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, row: usize) -> bool {
        self.start <= row && row < self.end()
    }

    /// Collapses zero-length ranges to the canonical empty encoding.
    pub fn normalized(self) -> Self {
        if self.len == 0 {
            RowRange::EMPTY
        } else {
            self
        }
    }
}

/// The rows prefixed by some string `x`, split by the symbol that
/// follows: `counts[i]` is the number of rows prefixed by `x . c_i`,
/// indexed by standard alphabet position. The permutation attached to
/// `x` only enters when the split is laid out into child ranges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SplitRange {
    pub start: usize,
    pub counts: Vec<usize>,
}

impl SplitRange {
    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }

    /// The underlying plain range `[start, total]`.
    pub fn row_range(&self) -> RowRange {
        RowRange::new(self.start, self.total())
    }

    /// Ranges of the one-symbol extensions, indexed by standard alphabet
    /// position. Visited in `pi` rank order they tile the parent range
    /// left to right; absent extensions come out with length zero at
    /// their tile position.
    pub fn child_ranges(&self, pi: &Permutation) -> Vec<RowRange> {
        let sigma = self.counts.len();
        let mut out = vec![RowRange::EMPTY; sigma];
        let mut b = self.start;
        for r in 0..sigma {
            let pos = pi.position_at_rank(r);
            out[pos] = RowRange::new(b, self.counts[pos]);
            b += self.counts[pos];
        }
        out
    }

    /// Alphabet position of the symbol found one past the shared prefix
    /// on row `row`, i.e. the child range that contains the row.
    pub fn symbol_at_row(&self, pi: &Permutation, row: usize) -> Result<usize> {
        if row < self.start {
            return Err(Error::RowOutOfRange { row });
        }
        let mut b = self.start;
        for r in 0..self.counts.len() {
            let pos = pi.position_at_rank(r);
            b += self.counts[pos];
            if row < b {
                return Ok(pos);
            }
        }
        Err(Error::RowOutOfRange { row })
    }
}

/// Immutable counting index over one transformed string under one scheme.
#[derive(Debug, Clone)]
pub struct QueryIndex<'s> {
    scheme: &'s OrderingScheme,
    seq: SequenceIndex,
    /// Range of rows starting with each symbol, by alphabet position.
    first_col: Vec<RowRange>,
    /// Nonempty first-column ranges as (start, alphabet position),
    /// ascending, for row -> first-symbol lookups.
    first_boundaries: Vec<(usize, usize)>,
    /// `pairs[i][j]` = rows prefixed by `c_i c_j`; local schemes only.
    pairs: Option<Vec<Vec<RowRange>>>,
}

impl<'s> QueryIndex<'s> {
    /// Builds the index over the transformed string `transformed`. For
    /// local schemes this includes the sigma^2 pair table.
    pub fn new(transformed: &[u8], scheme: &'s OrderingScheme) -> Result<Self> {
        let seq = SequenceIndex::build(transformed, scheme.alphabet())?;
        let sigma = scheme.alphabet().size();
        let n = seq.len();
        let pi0 = scheme.ordering_for(&[]);
        let mut first_col = vec![RowRange::EMPTY; sigma];
        let mut first_boundaries = Vec::new();
        let mut b = 0usize;
        for r in 0..sigma {
            let pos = pi0.position_at_rank(r);
            let cnt = seq.rank_pos(pos, n);
            first_col[pos] = RowRange::new(b, cnt);
            if cnt > 0 {
                first_boundaries.push((b, pos));
            }
            b += cnt;
        }
        debug_assert_eq!(b, n);
        let mut index = QueryIndex {
            scheme,
            seq,
            first_col,
            first_boundaries,
            pairs: None,
        };
        if scheme.kind() == SchemeKind::Local1 {
            let mut pairs = Vec::with_capacity(sigma);
            for pos in 0..sigma {
                let split = index.symbol_split_pos(pos);
                let ctx = [scheme.alphabet().symbol(pos)];
                let pi = scheme.ordering_for(&ctx);
                pairs.push(split.child_ranges(pi));
            }
            index.pairs = Some(pairs);
        }
        Ok(index)
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn seq(&self) -> &SequenceIndex {
        &self.seq
    }

    pub fn scheme(&self) -> &OrderingScheme {
        self.scheme
    }

    /// Range of rows starting with `c` (empty for foreign bytes).
    pub fn symbol_range(&self, c: u8) -> RowRange {
        match self.scheme.alphabet().position(c) {
            None => RowRange::EMPTY,
            Some(pos) => self.first_col[pos],
        }
    }

    /// Rows prefixed by `c`, split by the second symbol: the count for
    /// `c_i` is the number of `c`s in the transformed string across the
    /// rows starting with `c_i`. A symbol absent from the string yields
    /// all-zero counts, not an error.
    pub fn symbol_split(&self, c: u8) -> SplitRange {
        match self.scheme.alphabet().position(c) {
            None => SplitRange {
                start: 0,
                counts: vec![0; self.scheme.alphabet().size()],
            },
            Some(pos) => self.symbol_split_pos(pos),
        }
    }

    fn symbol_split_pos(&self, pos: usize) -> SplitRange {
        let sigma = self.scheme.alphabet().size();
        let counts = (0..sigma)
            .map(|i| {
                let r = self.first_col[i];
                self.seq.range_count_pos(pos, r.start, r.len)
            })
            .collect();
        SplitRange {
            start: self.first_col[pos].start,
            counts,
        }
    }

    /// Grows a split one symbol at both ends of the tableau: given the
    /// splits of `target[..m-1]` and `target[1..]`, produces the split of
    /// the whole `target`. Costs O(sigma) rank queries.
    pub fn extend(&self, prefix: &SplitRange, suffix: &SplitRange, target: &[u8]) -> SplitRange {
        debug_assert!(target.len() >= 2);
        let sigma = self.scheme.alphabet().size();
        let m = target.len();
        let (first, last) = (target[0], target[m - 1]);
        let (first_pos, last_pos) = match (
            self.scheme.alphabet().position(first),
            self.scheme.alphabet().position(last),
        ) {
            (Some(f), Some(l)) => (f, l),
            _ => {
                return SplitRange {
                    start: 0,
                    counts: vec![0; sigma],
                }
            }
        };
        let pi_prefix = self.scheme.ordering_for(&target[..m - 1]);
        let start = prefix.child_ranges(pi_prefix)[last_pos].start;
        let pi_suffix = self.scheme.ordering_for(&target[1..]);
        let suffix_children = suffix.child_ranges(pi_suffix);
        let counts: Vec<usize> = suffix_children
            .iter()
            .map(|r| self.seq.range_count_pos(first_pos, r.start, r.len))
            .collect();
        SplitRange { start, counts }
    }

    /// Range of rows prefixed by `pattern`, valid under every scheme
    /// kind. O(sigma p^2) time, O(sigma p) space for a pattern of length
    /// `p`. The range length is the number of occurrences of the pattern
    /// in the circular input.
    pub fn count_generic(&self, pattern: &[u8]) -> Result<RowRange> {
        if pattern.is_empty() {
            return Err(Error::EmptyPattern);
        }
        if pattern
            .iter()
            .any(|&b| self.scheme.alphabet().position(b).is_none())
        {
            return Ok(RowRange::EMPTY);
        }
        let p = pattern.len();
        let mut col: Vec<SplitRange> =
            pattern.iter().map(|&c| self.symbol_split(c)).collect();
        for t in 2..=p {
            let mut next = Vec::with_capacity(p - t + 1);
            for k in 0..=(p - t) {
                next.push(self.extend(&col[k], &col[k + 1], &pattern[k..k + t]));
            }
            col = next;
        }
        Ok(col[0].row_range().normalized())
    }

    /// Rows prefixed by the two-symbol string `first . second`
    /// (precomputed for local schemes).
    pub fn pair_range(&self, first: u8, second: u8) -> Result<RowRange> {
        let pairs = self.pairs.as_ref().ok_or(Error::WrongSchemeKind)?;
        match (
            self.scheme.alphabet().position(first),
            self.scheme.alphabet().position(second),
        ) {
            (Some(f), Some(s)) => Ok(pairs[f][s]),
            _ => Ok(RowRange::EMPTY),
        }
    }

    /// One constant-time backward step under a local scheme: from the
    /// range of rows prefixed by `x_2 ... x_m` (whose first symbol
    /// `range_first = x_2` the caller tracks) to the range prefixed by
    /// `new_first . x_2 ... x_m`. Rows starting with `x_1 x_2` correspond
    /// one-to-one, in order, with rows starting with `x_2` that end with
    /// `x_1`, which is what makes the step sound.
    pub fn local_backward_extend(
        &self,
        range: RowRange,
        range_first: u8,
        new_first: u8,
    ) -> Result<RowRange> {
        let pairs = self.pairs.as_ref().ok_or(Error::WrongSchemeKind)?;
        if range.is_empty() {
            return Ok(RowRange::EMPTY);
        }
        let (new_pos, first_pos) = match (
            self.scheme.alphabet().position(new_first),
            self.scheme.alphabet().position(range_first),
        ) {
            (Some(a), Some(b)) => (a, b),
            _ => return Ok(RowRange::EMPTY),
        };
        let base = self.first_col[first_pos];
        debug_assert!(base.start <= range.start && range.end() <= base.end());
        let skipped =
            self.seq.rank_pos(new_pos, range.start) - self.seq.rank_pos(new_pos, base.start);
        let hits = self.seq.range_count_pos(new_pos, range.start, range.len);
        if hits == 0 {
            return Ok(RowRange::EMPTY);
        }
        Ok(RowRange::new(pairs[new_pos][first_pos].start + skipped, hits))
    }

    /// Range of rows prefixed by `pattern` under a local scheme: a pair
    /// table lookup followed by one backward step per remaining symbol,
    /// O(p) after the O(sigma^2) preprocessing done at build time.
    /// Identical result to [`count_generic`](Self::count_generic).
    pub fn count_local(&self, pattern: &[u8]) -> Result<RowRange> {
        if self.pairs.is_none() {
            return Err(Error::WrongSchemeKind);
        }
        if pattern.is_empty() {
            return Err(Error::EmptyPattern);
        }
        if pattern
            .iter()
            .any(|&b| self.scheme.alphabet().position(b).is_none())
        {
            return Ok(RowRange::EMPTY);
        }
        let p = pattern.len();
        if p == 1 {
            return Ok(self.symbol_range(pattern[0]).normalized());
        }
        let mut range = self.pair_range(pattern[p - 2], pattern[p - 1])?;
        for k in (0..p - 2).rev() {
            if range.is_empty() {
                return Ok(RowRange::EMPTY);
            }
            range = self.local_backward_extend(range, pattern[k + 1], pattern[k])?;
        }
        Ok(range.normalized())
    }

    /// Counts through the fastest path the scheme supports.
    pub fn count(&self, pattern: &[u8]) -> Result<RowRange> {
        match self.scheme.kind() {
            SchemeKind::Local1 => self.count_local(pattern),
            _ => self.count_generic(pattern),
        }
    }

    /// First-column symbol of a row.
    pub fn first_symbol_of_row(&self, row: usize) -> Result<u8> {
        if row >= self.len() {
            return Err(Error::RowOutOfRange { row });
        }
        let i = self
            .first_boundaries
            .partition_point(|&(start, _)| start <= row);
        let (_, pos) = self.first_boundaries[i - 1];
        Ok(self.scheme.alphabet().symbol(pos))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;
    use crate::oracle::{naive_circular_count, NaiveMatrix};
    use crate::testutil::{demo_scheme, local_identity, random_scheme, XorShift, DEMO_TEXT};
    use crate::transform::{is_primitive, transform_fast};

    fn demo_index(scheme: &OrderingScheme) -> (Vec<u8>, usize) {
        let out = transform_fast(DEMO_TEXT, scheme).unwrap();
        (out.data, out.row_index)
    }

    #[test]
    fn first_column_table() {
        let scheme = demo_scheme();
        let (l, _) = demo_index(&scheme);
        let qi = QueryIndex::new(&l, &scheme).unwrap();
        // first column is b,b,a,a,a,a,a,a,c
        assert_eq!(qi.symbol_range(b'b'), RowRange::new(0, 2));
        assert_eq!(qi.symbol_range(b'a'), RowRange::new(2, 6));
        assert_eq!(qi.symbol_range(b'c'), RowRange::new(8, 1));
        assert_eq!(qi.symbol_range(b'z'), RowRange::EMPTY);
        for (row, expect) in [(0, b'b'), (1, b'b'), (2, b'a'), (7, b'a'), (8, b'c')] {
            assert_eq!(qi.first_symbol_of_row(row).unwrap(), expect);
        }
        assert!(qi.first_symbol_of_row(9).is_err());
    }

    #[test]
    fn symbol_split_matches_the_worked_example() {
        let scheme = demo_scheme();
        let (l, _) = demo_index(&scheme);
        let qi = QueryIndex::new(&l, &scheme).unwrap();
        let a = qi.symbol_split(b'a');
        assert_eq!(a.start, 2);
        assert_eq!(a.counts, vec![3, 2, 1]);
        let b = qi.symbol_split(b'b');
        assert_eq!(b.start, 0);
        assert_eq!(b.counts, vec![2, 0, 0]);
        let z = qi.symbol_split(b'z');
        assert_eq!(z.counts, vec![0, 0, 0]);
    }

    #[test]
    fn child_ranges_tile_in_permutation_order() {
        let scheme = demo_scheme();
        let (l, _) = demo_index(&scheme);
        let qi = QueryIndex::new(&l, &scheme).unwrap();
        let split = qi.symbol_split(b'a');
        let pi = scheme.ordering_for(b"a"); // cab
        let children = split.child_ranges(pi);
        assert_eq!(children[2], RowRange::new(2, 1)); // "ac"
        assert_eq!(children[0], RowRange::new(3, 3)); // "aa"
        assert_eq!(children[1], RowRange::new(6, 2)); // "ab"
        // all-zero split: every child parks at the start
        let empty = SplitRange {
            start: 5,
            counts: vec![0, 0, 0],
        };
        for r in empty.child_ranges(pi) {
            assert_eq!((r.start, r.len), (5, 0));
        }
    }

    #[test]
    fn extend_produces_the_two_symbol_split() {
        let scheme = demo_scheme();
        let (l, _) = demo_index(&scheme);
        let qi = QueryIndex::new(&l, &scheme).unwrap();
        let a = qi.symbol_split(b'a');
        let b = qi.symbol_split(b'b');
        let ab = qi.extend(&a, &b, b"ab");
        assert_eq!(ab.start, 6);
        assert_eq!(ab.counts, vec![2, 0, 0]);
        assert_eq!(ab.row_range(), RowRange::new(6, 2));
        // empty suffix split stays empty
        let z = SplitRange {
            start: 0,
            counts: vec![0, 0, 0],
        };
        assert_eq!(qi.extend(&a, &z, b"ab").total(), 0);
    }

    #[test]
    fn count_generic_on_the_worked_example() {
        let scheme = demo_scheme();
        let (l, _) = demo_index(&scheme);
        let qi = QueryIndex::new(&l, &scheme).unwrap();
        assert_eq!(qi.count_generic(b"ab").unwrap(), RowRange::new(6, 2));
        assert_eq!(qi.count_generic(b"aab").unwrap(), RowRange::new(3, 2));
        assert_eq!(qi.count_generic(b"aabaaabac").unwrap().len, 1);
        assert_eq!(qi.count_generic(b"xy").unwrap(), RowRange::EMPTY);
        assert_eq!(qi.count_generic(b"cc").unwrap(), RowRange::EMPTY);
        assert_eq!(qi.count_generic(b""), Err(Error::EmptyPattern));
    }

    #[test]
    fn symbol_at_row_reads_the_next_symbol() {
        let scheme = demo_scheme();
        let (l, _) = demo_index(&scheme);
        let qi = QueryIndex::new(&l, &scheme).unwrap();
        let a = qi.symbol_split(b'a');
        let pi = scheme.ordering_for(b"a");
        // row 3 holds the unrotated string; its second symbol is a
        assert_eq!(a.symbol_at_row(pi, 3).unwrap(), 0);
        assert_eq!(a.symbol_at_row(pi, 2).unwrap(), 2); // "ac" row
        assert_eq!(a.symbol_at_row(pi, 6).unwrap(), 1); // first "ab" row
        assert!(a.symbol_at_row(pi, 8).is_ok());
        assert!(a.symbol_at_row(pi, 0).is_err());
        assert!(a.symbol_at_row(pi, 9).is_err());
    }

    #[test]
    fn local_ops_require_a_local_scheme() {
        let scheme = demo_scheme();
        let (l, _) = demo_index(&scheme);
        let qi = QueryIndex::new(&l, &scheme).unwrap();
        assert_eq!(qi.count_local(b"ab"), Err(Error::WrongSchemeKind));
        assert_eq!(qi.pair_range(b'a', b'b'), Err(Error::WrongSchemeKind));
        assert_eq!(
            qi.local_backward_extend(RowRange::new(0, 1), b'a', b'b'),
            Err(Error::WrongSchemeKind)
        );
    }

    #[test]
    fn local_counting_agrees_with_generic_and_the_scan() {
        let mut rng = XorShift::new(0x10c4 + 77);
        let alpha = Alphabet::from_bytes(b"abc").unwrap();
        for _ in 0..150 {
            let n = 2 + rng.below(60);
            let s: Vec<u8> = (0..n).map(|_| b"abc"[rng.below(3)]).collect();
            if !is_primitive(&s).unwrap() {
                continue;
            }
            let scheme = random_scheme(&mut rng, 2, &alpha, &s);
            let out = transform_fast(&s, &scheme).unwrap();
            let qi = QueryIndex::new(&out.data, &scheme).unwrap();
            for _ in 0..20 {
                let plen = 1 + rng.below(n.min(8));
                let start = rng.below(n);
                let pat: Vec<u8> = (0..plen).map(|k| s[(start + k) % n]).collect();
                let local = qi.count_local(&pat).unwrap();
                let generic = qi.count_generic(&pat).unwrap();
                assert_eq!(local, generic, "s={s:?} pat={pat:?}");
                assert_eq!(local.len, naive_circular_count(&s, &pat));
            }
            // a pattern that cannot occur
            let absent = vec![b'c'; n + 1];
            let local = qi.count_local(&absent).unwrap();
            assert_eq!(local, qi.count_generic(&absent).unwrap());
        }
    }

    #[test]
    fn backward_step_from_a_full_symbol_range_lands_on_the_pair_table() {
        let scheme = local_identity(Alphabet::from_bytes(b"abc").unwrap());
        let (l, _) = demo_index(&scheme);
        let qi = QueryIndex::new(&l, &scheme).unwrap();
        for &c2 in b"abc" {
            let full = qi.symbol_range(c2);
            for &c1 in b"abc" {
                let stepped = qi.local_backward_extend(full, c2, c1).unwrap();
                let table = qi.pair_range(c1, c2).unwrap();
                assert_eq!(stepped, table.normalized());
            }
        }
    }

    #[test]
    fn generic_counts_match_the_matrix_on_random_schemes() {
        let mut rng = XorShift::new(314);
        let alpha = Alphabet::from_bytes(b"ab").unwrap();
        for n in 2..=10usize {
            for bits in 0..(1usize << n) {
                let s: Vec<u8> = (0..n)
                    .map(|i| if bits >> i & 1 == 1 { b'b' } else { b'a' })
                    .collect();
                if !is_primitive(&s).unwrap() {
                    continue;
                }
                let kind = (bits % 4) as u8;
                let scheme = random_scheme(&mut rng, kind, &alpha, &s);
                let out = transform_fast(&s, &scheme).unwrap();
                let qi = QueryIndex::new(&out.data, &scheme).unwrap();
                let m = NaiveMatrix::build(&s, &scheme).unwrap();
                for plen in 1..=n {
                    let start = rng.below(n);
                    let pat: Vec<u8> = (0..plen).map(|k| s[(start + k) % n]).collect();
                    assert_eq!(
                        qi.count_generic(&pat).unwrap(),
                        m.range_of(&pat),
                        "s={s:?} pat={pat:?}"
                    );
                }
            }
        }
    }
}
