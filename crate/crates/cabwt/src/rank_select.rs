//! Immutable rank/select/access index over a byte sequence.
//!
//! Binary splitting over the alphabet (a wavelet tree): queries cost one
//! bit-vector rank per level, O(log sigma) overall, which behaves as a
//! small constant at byte alphabets. Immutable after build, so concurrent
//! queries are safe.

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};

/// Bit vector with per-word prefix popcounts.
#[derive(Debug, Clone)]
struct BitRank {
    words: Vec<u64>,
    prefix: Vec<u32>,
    len: usize,
}

impl BitRank {
    fn from_bits(bits: &[bool]) -> Self {
        let len = bits.len();
        let n_words = len.div_ceil(64);
        let mut words = vec![0u64; n_words];
        for (i, &b) in bits.iter().enumerate() {
            if b {
                words[i / 64] |= 1 << (i % 64);
            }
        }
        let mut prefix = Vec::with_capacity(n_words + 1);
        let mut acc = 0u32;
        prefix.push(0);
        for &w in &words {
            acc += w.count_ones();
            prefix.push(acc);
        }
        BitRank { words, prefix, len }
    }

    fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    /// Ones among the first `i` bits.
    fn rank1(&self, i: usize) -> usize {
        debug_assert!(i <= self.len);
        let w = i / 64;
        let r = i % 64;
        let within = if r == 0 {
            0
        } else {
            (self.words[w] & ((1u64 << r) - 1)).count_ones()
        };
        self.prefix[w] as usize + within as usize
    }

    fn rank0(&self, i: usize) -> usize {
        i - self.rank1(i)
    }
}

const NONE: usize = usize::MAX;

#[derive(Debug, Clone)]
struct Node {
    bits: BitRank,
    left: usize,
    right: usize,
}

/// Sequence index answering `rank`, `select`, `access`, and
/// `range_count` over a fixed alphabet.
#[derive(Debug, Clone)]
pub struct SequenceIndex {
    len: usize,
    alphabet: Alphabet,
    nodes: Vec<Node>,
    root: usize,
}

impl SequenceIndex {
    /// Indexes `seq`; every byte must belong to `alphabet`.
    pub fn build(seq: &[u8], alphabet: &Alphabet) -> Result<Self> {
        let mut positions = Vec::with_capacity(seq.len());
        for &b in seq {
            positions.push(
                alphabet
                    .position(b)
                    .ok_or(Error::ByteOutsideAlphabet(b))? as u16,
            );
        }
        let mut nodes = Vec::new();
        let root = if alphabet.size() > 1 && !positions.is_empty() {
            build_node(&mut nodes, positions, 0, alphabet.size())
        } else {
            NONE
        };
        Ok(SequenceIndex {
            len: seq.len(),
            alphabet: alphabet.clone(),
            nodes,
            root,
        })
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// Occurrences of `c` among the first `i` symbols (`i` is a prefix
    /// length, `0..=len`). A byte outside the alphabet has zero
    /// occurrences everywhere.
    pub fn rank(&self, c: u8, i: usize) -> Result<usize> {
        if i > self.len {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.len,
            });
        }
        Ok(match self.alphabet.position(c) {
            None => 0,
            Some(pos) => self.rank_pos(pos, i),
        })
    }

    /// 0-based position of the `j`-th occurrence of `c` (`j >= 1`).
    pub fn select(&self, c: u8, j: usize) -> Result<usize> {
        let pos = self.alphabet.position(c);
        let total = pos.map_or(0, |p| self.rank_pos(p, self.len));
        if j == 0 || j > total {
            return Err(Error::NotEnoughOccurrences {
                requested: j,
                available: total,
            });
        }
        let pos = pos.unwrap();
        // smallest prefix length whose count reaches j
        let (mut lo, mut hi) = (0usize, self.len);
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if self.rank_pos(pos, mid) >= j {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        Ok(lo - 1)
    }

    /// The `i`-th symbol of the indexed sequence.
    pub fn access(&self, i: usize) -> Result<u8> {
        if i >= self.len {
            return Err(Error::IndexOutOfRange {
                index: i,
                len: self.len,
            });
        }
        if self.alphabet.size() == 1 {
            return Ok(self.alphabet.symbol(0));
        }
        let (mut lo, mut hi) = (0usize, self.alphabet.size());
        let mut node_id = self.root;
        let mut idx = i;
        while hi - lo > 1 {
            let node = &self.nodes[node_id];
            let mid = lo + (hi - lo) / 2;
            if node.bits.get(idx) {
                idx = node.bits.rank1(idx);
                node_id = node.right;
                lo = mid;
            } else {
                idx = node.bits.rank0(idx);
                node_id = node.left;
                hi = mid;
            }
        }
        Ok(self.alphabet.symbol(lo))
    }

    /// `rank(c, start+len) - rank(c, start)`.
    pub fn range_count(&self, c: u8, start: usize, len: usize) -> Result<usize> {
        let end = start
            .checked_add(len)
            .filter(|&e| e <= self.len)
            .ok_or(Error::IndexOutOfRange {
                index: start.saturating_add(len),
                len: self.len,
            })?;
        Ok(match self.alphabet.position(c) {
            None => 0,
            Some(pos) => self.rank_pos(pos, end) - self.rank_pos(pos, start),
        })
    }

    /// Unchecked rank by alphabet position; `i <= len`.
    pub(crate) fn rank_pos(&self, pos: usize, i: usize) -> usize {
        debug_assert!(i <= self.len && pos < self.alphabet.size());
        if i == 0 || self.len == 0 {
            return 0;
        }
        if self.alphabet.size() == 1 {
            return i;
        }
        let (mut lo, mut hi) = (0usize, self.alphabet.size());
        let mut node_id = self.root;
        let mut cnt = i;
        while hi - lo > 1 {
            if node_id == NONE {
                return 0;
            }
            let node = &self.nodes[node_id];
            let mid = lo + (hi - lo) / 2;
            if pos < mid {
                cnt = node.bits.rank0(cnt);
                node_id = node.left;
                hi = mid;
            } else {
                cnt = node.bits.rank1(cnt);
                node_id = node.right;
                lo = mid;
            }
            if cnt == 0 {
                return 0;
            }
        }
        cnt
    }

    pub(crate) fn range_count_pos(&self, pos: usize, start: usize, len: usize) -> usize {
        self.rank_pos(pos, start + len) - self.rank_pos(pos, start)
    }
}

fn build_node(nodes: &mut Vec<Node>, positions: Vec<u16>, lo: usize, hi: usize) -> usize {
    debug_assert!(hi - lo >= 2 && !positions.is_empty());
    let mid = lo + (hi - lo) / 2;
    let bits: Vec<bool> = positions.iter().map(|&p| (p as usize) >= mid).collect();
    let left_seq: Vec<u16> = positions
        .iter()
        .copied()
        .filter(|&p| (p as usize) < mid)
        .collect();
    let right_seq: Vec<u16> = positions
        .into_iter()
        .filter(|&p| (p as usize) >= mid)
        .collect();
    let id = nodes.len();
    nodes.push(Node {
        bits: BitRank::from_bits(&bits),
        left: NONE,
        right: NONE,
    });
    let left = if mid - lo >= 2 && !left_seq.is_empty() {
        build_node(nodes, left_seq, lo, mid)
    } else {
        NONE
    };
    let right = if hi - mid >= 2 && !right_seq.is_empty() {
        build_node(nodes, right_seq, mid, hi)
    } else {
        NONE
    };
    nodes[id].left = left;
    nodes[id].right = right;
    id
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::XorShift;

    fn idx(seq: &[u8]) -> SequenceIndex {
        let a = Alphabet::from_bytes(seq).unwrap();
        SequenceIndex::build(seq, &a).unwrap()
    }

    #[test]
    fn transformed_example_queries() {
        let i = idx(b"bcaaabaaa");
        assert_eq!(i.access(0).unwrap(), b'b');
        assert_eq!(i.rank(b'a', 9).unwrap(), 6);
        let l = idx(b"aabcabaaa");
        // prefix "aabc" holds two a's; "aabca" holds three
        assert_eq!(l.rank(b'a', 4).unwrap(), 2);
        assert_eq!(l.rank(b'a', 5).unwrap(), 3);
        assert_eq!(l.range_count(b'a', 0, 2).unwrap(), 2);
        assert_eq!(l.range_count(b'b', 2, 4).unwrap(), 1);
    }

    #[test]
    fn empty_sequence() {
        let a = Alphabet::from_bytes(b"ab").unwrap();
        let i = SequenceIndex::build(b"", &a).unwrap();
        assert_eq!(i.len(), 0);
        assert_eq!(i.rank(b'a', 0).unwrap(), 0);
        assert!(i.access(0).is_err());
        assert!(i.select(b'a', 1).is_err());
    }

    #[test]
    fn unary_sequence() {
        let i = idx(b"aaaa");
        assert_eq!(i.rank(b'a', 4).unwrap(), 4);
        assert_eq!(i.rank(b'b', 4).unwrap(), 0);
        assert_eq!(i.select(b'a', 3).unwrap(), 2);
        assert_eq!(i.access(2).unwrap(), b'a');
    }

    #[test]
    fn rejects_bytes_outside_the_alphabet() {
        let a = Alphabet::from_bytes(b"ab").unwrap();
        assert_eq!(
            SequenceIndex::build(b"abz", &a),
            Err(Error::ByteOutsideAlphabet(b'z')).map_err(|e| e),
            "build must reject foreign bytes"
        );
    }

    #[test]
    fn select_errors_when_occurrences_run_out() {
        let i = idx(b"abab");
        assert_eq!(i.select(b'a', 2).unwrap(), 2);
        assert!(matches!(
            i.select(b'a', 3),
            Err(Error::NotEnoughOccurrences { .. })
        ));
        assert!(i.select(b'a', 0).is_err());
    }

    #[test]
    fn agrees_with_scanning_on_random_sequences() {
        let mut rng = XorShift::new(0x5eed);
        for sigma in [1usize, 2, 3, 7, 16] {
            let symbols: Vec<u8> = (0..sigma as u8).map(|k| b'a' + k).collect();
            let alphabet = Alphabet::new(symbols.clone()).unwrap();
            let n = 1 + rng.below(2000);
            let seq: Vec<u8> = (0..n).map(|_| symbols[rng.below(sigma)]).collect();
            let index = SequenceIndex::build(&seq, &alphabet).unwrap();
            for _ in 0..200 {
                let c = symbols[rng.below(sigma)];
                let i = rng.below(n + 1);
                let expect = seq[..i].iter().filter(|&&b| b == c).count();
                assert_eq!(index.rank(c, i).unwrap(), expect);
                if i < n {
                    assert_eq!(index.access(i).unwrap(), seq[i]);
                }
                let lo = rng.below(n);
                let len = rng.below(n - lo + 1);
                let expect = seq[lo..lo + len].iter().filter(|&&b| b == c).count();
                assert_eq!(index.range_count(c, lo, len).unwrap(), expect);
            }
            // rank/select adjointness over every symbol
            for &c in &symbols {
                let total = index.rank(c, n).unwrap();
                for j in 1..=total {
                    let p = index.select(c, j).unwrap();
                    assert!(p < n);
                    assert_eq!(index.rank(c, p + 1).unwrap(), j);
                    assert_eq!(seq[p], c);
                }
            }
        }
    }
}
