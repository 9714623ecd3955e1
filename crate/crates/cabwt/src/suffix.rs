//! Circular suffix array, LCP array, and the compacted trie of all cyclic
//! rotations, built as an interval tree over the LCP array.
//!
//! The suffix array is computed on the doubled, sentinel-terminated text
//! with a linear-time induced-sorting construction; the first occurrence
//! of each rotation (start position `< n`) gives the rotations in standard
//! lexicographic order, which is valid because distinct rotations of a
//! primitive string differ within their first `n` symbols.

use crate::error::{Error, Result};
use crate::transform::ensure_primitive;

/// A child slot in the rotation trie: either a deeper internal node or a
/// single rotation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrieChild {
    Internal(usize),
    /// Rank of the rotation in the standard-sorted suffix array.
    Leaf(usize),
}

/// Internal node: the rotations `sa[start..end]` share a prefix of length
/// `depth`, and `children` partitions them by their symbol at offset
/// `depth`, in ascending symbol order.
#[derive(Debug, Clone)]
pub struct TrieNode {
    pub depth: usize,
    pub start: usize,
    pub end: usize,
    pub children: Vec<(u8, TrieChild)>,
}

/// Compacted trie of all cyclic rotations of a primitive string.
#[derive(Debug, Clone)]
pub struct RotationTrie {
    text: Vec<u8>,
    sa: Vec<usize>,
    lcp: Vec<usize>,
    nodes: Vec<TrieNode>,
    root: TrieChild,
}

impl RotationTrie {
    pub fn build(s: &[u8]) -> Result<Self> {
        ensure_primitive(s)?;
        let n = s.len();
        let (sa, lcp) = circular_sa_lcp(s);
        if n == 1 {
            return Ok(RotationTrie {
                text: s.to_vec(),
                sa,
                lcp,
                nodes: Vec::new(),
                root: TrieChild::Leaf(0),
            });
        }
        let rmq = ArgMinTable::new(&lcp);
        let mut nodes = Vec::new();
        let root_depth = lcp[rmq.argmin(&lcp, 1, n)];
        debug_assert_eq!(root_depth, 0);
        nodes.push(TrieNode {
            depth: root_depth,
            start: 0,
            end: n,
            children: Vec::new(),
        });
        let mut queue = vec![0usize];
        let mut splits = Vec::new();
        let mut ranges = Vec::new();
        while let Some(id) = queue.pop() {
            let (start, end, depth) = {
                let nd = &nodes[id];
                (nd.start, nd.end, nd.depth)
            };
            // positions inside (start, end) where the LCP drops to the
            // node's depth; they separate the child sub-intervals
            splits.clear();
            ranges.clear();
            ranges.push((start + 1, end));
            while let Some((a, b)) = ranges.pop() {
                if a >= b {
                    continue;
                }
                let p = rmq.argmin(&lcp, a, b);
                if lcp[p] != depth {
                    continue;
                }
                splits.push(p);
                ranges.push((a, p));
                ranges.push((p + 1, b));
            }
            splits.sort_unstable();
            debug_assert!(!splits.is_empty());
            let mut children = Vec::with_capacity(splits.len() + 1);
            let mut lo = start;
            for bound in splits.iter().copied().chain(std::iter::once(end)) {
                let branch = s[(sa[lo] + depth) % n];
                let child = if bound - lo == 1 {
                    TrieChild::Leaf(lo)
                } else {
                    let d = lcp[rmq.argmin(&lcp, lo + 1, bound)];
                    let cid = nodes.len();
                    nodes.push(TrieNode {
                        depth: d,
                        start: lo,
                        end: bound,
                        children: Vec::new(),
                    });
                    queue.push(cid);
                    TrieChild::Internal(cid)
                };
                children.push((branch, child));
                lo = bound;
            }
            nodes[id].children = children;
        }
        Ok(RotationTrie {
            text: s.to_vec(),
            sa,
            lcp,
            nodes,
            root: TrieChild::Internal(0),
        })
    }

    /// Number of rotations (= input length).
    pub fn len(&self) -> usize {
        self.sa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sa.is_empty()
    }

    pub fn text(&self) -> &[u8] {
        &self.text
    }

    /// Rotation start positions in standard lexicographic order.
    pub fn sa(&self) -> &[usize] {
        &self.sa
    }

    /// `lcp[i]` is the longest common prefix of rotations `sa[i-1]` and
    /// `sa[i]`; `lcp[0] = 0`.
    pub fn lcp(&self) -> &[usize] {
        &self.lcp
    }

    pub fn root(&self) -> TrieChild {
        self.root
    }

    pub fn node(&self, id: usize) -> &TrieNode {
        &self.nodes[id]
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// The path label of an internal node: the shared prefix of its
    /// rotations.
    pub fn context_of(&self, node: &TrieNode) -> Vec<u8> {
        let n = self.text.len();
        let start = self.sa[node.start];
        (0..node.depth).map(|k| self.text[(start + k) % n]).collect()
    }
}

/// Builds the rotation trie of a primitive string.
pub fn build_rotation_trie(s: &[u8]) -> Result<RotationTrie> {
    RotationTrie::build(s)
}

/// Suffix array and LCP array of the rotations of `s` under the standard
/// order. Requires `s` primitive (not rechecked here).
fn circular_sa_lcp(s: &[u8]) -> (Vec<usize>, Vec<usize>) {
    let n = s.len();
    if n == 1 {
        return (vec![0], vec![0]);
    }
    let mut t = Vec::with_capacity(2 * n + 1);
    for _ in 0..2 {
        t.extend(s.iter().map(|&b| b as u32 + 1));
    }
    t.push(0);
    let sa_full = suffix_array(&t, 257);
    let lcp_full = lcp_kasai(&t, &sa_full);
    let mut sa = Vec::with_capacity(n);
    let mut lcp = Vec::with_capacity(n);
    let mut pending = usize::MAX;
    for (r, &p) in sa_full.iter().enumerate() {
        if r > 0 {
            pending = pending.min(lcp_full[r]);
        }
        if p < n {
            lcp.push(if sa.is_empty() { 0 } else { pending.min(n) });
            sa.push(p);
            pending = usize::MAX;
        }
    }
    debug_assert_eq!(sa.len(), n);
    (sa, lcp)
}

/// SA-IS over an integer text that ends with a unique smallest sentinel 0.
/// `k` is an exclusive upper bound on the symbol values.
fn suffix_array(text: &[u32], k: usize) -> Vec<usize> {
    let n = text.len();
    if n == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![0];
    }

    let mut is_s = vec![false; n];
    is_s[n - 1] = true;
    for i in (0..n - 1).rev() {
        is_s[i] = text[i] < text[i + 1] || (text[i] == text[i + 1] && is_s[i + 1]);
    }
    let lms: Vec<usize> = (1..n).filter(|&i| is_s[i] && !is_s[i - 1]).collect();

    let mut sa = vec![usize::MAX; n];
    induce(text, k, &is_s, &lms, &mut sa);

    let sorted_lms: Vec<usize> = sa
        .iter()
        .copied()
        .filter(|&p| p != usize::MAX && p > 0 && is_s[p] && !is_s[p - 1])
        .collect();
    debug_assert_eq!(sorted_lms.len(), lms.len());

    // name the LMS substrings in sorted order
    let mut name_of = vec![0usize; n];
    let mut current = 0usize;
    let mut prev = usize::MAX;
    for &p in &sorted_lms {
        if prev != usize::MAX && !lms_substrings_equal(text, &is_s, prev, p) {
            current += 1;
        }
        name_of[p] = current;
        prev = p;
    }
    let names = current + 1;

    let lms_sorted: Vec<usize> = if names < lms.len() {
        let reduced: Vec<u32> = lms.iter().map(|&p| name_of[p] as u32).collect();
        let rsa = suffix_array(&reduced, names);
        rsa.iter().map(|&r| lms[r]).collect()
    } else {
        sorted_lms
    };

    induce(text, k, &is_s, &lms_sorted, &mut sa);
    sa
}

/// One induced-sorting round: seeds the LMS suffixes (in the given order)
/// at their bucket tails, then induces L-suffixes left to right and
/// S-suffixes right to left.
fn induce(text: &[u32], k: usize, is_s: &[bool], lms: &[usize], sa: &mut [usize]) {
    let n = text.len();
    sa.fill(usize::MAX);
    let mut count = vec![0usize; k];
    for &c in text {
        count[c as usize] += 1;
    }
    let mut tails = vec![0usize; k];
    {
        let mut acc = 0;
        for c in 0..k {
            acc += count[c];
            tails[c] = acc;
        }
    }
    let mut t = tails.clone();
    for &p in lms.iter().rev() {
        let c = text[p] as usize;
        t[c] -= 1;
        sa[t[c]] = p;
    }
    let mut heads = vec![0usize; k];
    {
        let mut acc = 0;
        for c in 0..k {
            heads[c] = acc;
            acc += count[c];
        }
    }
    for i in 0..n {
        let p = sa[i];
        if p != usize::MAX && p > 0 && !is_s[p - 1] {
            let c = text[p - 1] as usize;
            sa[heads[c]] = p - 1;
            heads[c] += 1;
        }
    }
    let mut t = tails;
    for i in (0..n).rev() {
        let p = sa[i];
        if p != usize::MAX && p > 0 && is_s[p - 1] {
            let c = text[p - 1] as usize;
            t[c] -= 1;
            sa[t[c]] = p - 1;
        }
    }
}

fn lms_substrings_equal(text: &[u32], is_s: &[bool], a: usize, b: usize) -> bool {
    if a == b {
        return true;
    }
    let n = text.len();
    let is_lms = |i: usize| i > 0 && is_s[i] && !is_s[i - 1];
    let mut off = 0;
    loop {
        let pa = a + off;
        let pb = b + off;
        if pa >= n || pb >= n || text[pa] != text[pb] {
            return false;
        }
        if off > 0 {
            match (is_lms(pa), is_lms(pb)) {
                (true, true) => return true,
                (false, false) => {}
                _ => return false,
            }
        }
        off += 1;
    }
}

fn lcp_kasai(text: &[u32], sa: &[usize]) -> Vec<usize> {
    let n = text.len();
    let mut rank = vec![0usize; n];
    for (r, &p) in sa.iter().enumerate() {
        rank[p] = r;
    }
    let mut lcp = vec![0usize; n];
    let mut h = 0usize;
    for p in 0..n {
        if rank[p] > 0 {
            let q = sa[rank[p] - 1];
            while p + h < n && q + h < n && text[p + h] == text[q + h] {
                h += 1;
            }
            lcp[rank[p]] = h;
            h = h.saturating_sub(1);
        } else {
            h = 0;
        }
    }
    lcp
}

/// Sparse table answering "position of the leftmost minimum in `[a, b)`".
struct ArgMinTable {
    levels: Vec<Vec<u32>>,
}

impl ArgMinTable {
    fn new(vals: &[usize]) -> Self {
        let n = vals.len();
        let mut levels: Vec<Vec<u32>> = Vec::new();
        if n > 0 {
            levels.push((0..n as u32).collect());
            let mut span = 1usize;
            while span * 2 <= n {
                let prev = levels.last().unwrap();
                let m = n - span * 2 + 1;
                let mut next = Vec::with_capacity(m);
                for i in 0..m {
                    let a = prev[i];
                    let b = prev[i + span];
                    next.push(if vals[b as usize] < vals[a as usize] { b } else { a });
                }
                levels.push(next);
                span *= 2;
            }
        }
        ArgMinTable { levels }
    }

    fn argmin(&self, vals: &[usize], a: usize, b: usize) -> usize {
        debug_assert!(a < b && b <= vals.len());
        let len = b - a;
        let k = (usize::BITS - 1 - len.leading_zeros()) as usize;
        let span = 1usize << k;
        let x = self.levels[k][a] as usize;
        let y = self.levels[k][b - span] as usize;
        if vals[y] < vals[x] {
            y
        } else {
            x
        }
    }
}
