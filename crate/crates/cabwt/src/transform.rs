//! Forward transforms: sort all cyclic rotations of the input under a
//! scheme and emit the last column plus the row index of the unrotated
//! string.
//!
//! Two interchangeable constructions are provided. `transform_naive` sorts
//! rotations with the comparator directly and serves as the reference.
//! `transform_fast` walks the rotation trie depth first, reordering each
//! node's children by the permutation attached to the node's path label;
//! the leaves then fall out in matrix row order.

use crate::alphabet::Alphabet;
use crate::error::{Error, Result};
use crate::scheme::{compare_rotations, OrderingScheme};
use crate::suffix::{RotationTrie, TrieChild};

/// The transformed string `data` (last matrix column), the 0-based row
/// index of the input string, and enough metadata to check integrity at
/// inversion time.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformOutput {
    pub data: Vec<u8>,
    pub row_index: usize,
    pub alphabet: Alphabet,
    pub scheme_fingerprint: u64,
}

/// True iff all `|s|` cyclic rotations of `s` are distinct, decided by the
/// smallest period of `s`.
pub fn is_primitive(s: &[u8]) -> Result<bool> {
    if s.is_empty() {
        return Err(Error::EmptyString);
    }
    let n = s.len();
    let mut fail = vec![0usize; n];
    let mut k = 0usize;
    for i in 1..n {
        while k > 0 && s[i] != s[k] {
            k = fail[k - 1];
        }
        if s[i] == s[k] {
            k += 1;
        }
        fail[i] = k;
    }
    let period = n - fail[n - 1];
    Ok(period == n || n % period != 0)
}

pub(crate) fn ensure_primitive(s: &[u8]) -> Result<()> {
    if is_primitive(s)? {
        Ok(())
    } else {
        Err(Error::NotPrimitive)
    }
}

fn check_input(s: &[u8], scheme: &OrderingScheme) -> Result<()> {
    scheme.alphabet().check_contains_all(s)?;
    ensure_primitive(s)
}

fn output_from_order(s: &[u8], scheme: &OrderingScheme, order: &[usize]) -> TransformOutput {
    let n = s.len();
    let mut data = Vec::with_capacity(n);
    let mut row_index = 0;
    for (r, &p) in order.iter().enumerate() {
        if p == 0 {
            row_index = r;
        }
        data.push(s[(p + n - 1) % n]);
    }
    TransformOutput {
        data,
        row_index,
        alphabet: scheme.alphabet().clone(),
        scheme_fingerprint: scheme.fingerprint(),
    }
}

/// Reference construction: sorts every rotation with the scheme
/// comparator. Quadratic; use [`transform_fast`] for anything but tests
/// and tiny inputs.
pub fn transform_naive(s: &[u8], scheme: &OrderingScheme) -> Result<TransformOutput> {
    check_input(s, scheme)?;
    let mut order: Vec<usize> = (0..s.len()).collect();
    order.sort_unstable_by(|&a, &b| compare_rotations(s, a, b, scheme));
    Ok(output_from_order(s, scheme, &order))
}

/// Trie-based construction; bit-identical to [`transform_naive`].
pub fn transform_fast(s: &[u8], scheme: &OrderingScheme) -> Result<TransformOutput> {
    check_input(s, scheme)?;
    let trie = RotationTrie::build(s)?;
    let order = reordered_rotations(&trie, scheme);
    Ok(output_from_order(s, scheme, &order))
}

/// Depth-first leaf order of the trie with every node's children visited
/// in the rank order their branch symbols take under the node's context
/// permutation.
pub(crate) fn reordered_rotations(trie: &RotationTrie, scheme: &OrderingScheme) -> Vec<usize> {
    let s = trie.text();
    let alphabet = scheme.alphabet();
    let mut order = Vec::with_capacity(trie.len());
    let mut stack = vec![trie.root()];
    let mut ranked: Vec<(usize, TrieChild)> = Vec::new();
    while let Some(child) = stack.pop() {
        match child {
            TrieChild::Leaf(rank) => order.push(trie.sa()[rank]),
            TrieChild::Internal(id) => {
                let node = trie.node(id);
                let pi =
                    scheme.ordering_for_rotation_prefix(s, trie.sa()[node.start], node.depth);
                ranked.clear();
                ranked.extend(node.children.iter().map(|&(sym, ch)| {
                    let pos = alphabet.position(sym).expect("symbol outside alphabet");
                    (pi.rank(pos), ch)
                }));
                ranked.sort_unstable_by_key(|&(r, _)| r);
                for &(_, ch) in ranked.iter().rev() {
                    stack.push(ch);
                }
            }
        }
    }
    order
}
