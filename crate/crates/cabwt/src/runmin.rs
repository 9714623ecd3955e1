//! Run minimization: the member of the transform family producing the
//! fewest runs of equal adjacent symbols, found by dynamic programming
//! over the rotation trie.
//!
//! Reordering a node's children permutes the block of output symbols
//! below it, so per node and per (first symbol, last symbol) pair the
//! table stores the fewest runs any child ordering can achieve. Chains of
//! children combine left to right; gluing two blocks saves one run when
//! the touching symbols coincide. Backtracking recovers one optimal
//! ordering per internal node, which becomes an explicit scheme keyed by
//! the node's path label.

use std::collections::BTreeMap;

use itertools::Itertools;

use crate::alphabet::{Alphabet, Permutation};
use crate::error::{Error, Result};
use crate::scheme::OrderingScheme;
use crate::suffix::{RotationTrie, TrieChild};
use crate::transform::{transform_fast, TransformOutput};

/// Default cap on the alphabet size: per-node work grows with the
/// factorial of the child count, which is bounded by sigma.
pub const DEFAULT_SIGMA_LIMIT: usize = 6;

/// Number of maximal blocks of equal adjacent symbols; 0 for the empty
/// string.
pub fn count_runs(t: &[u8]) -> usize {
    if t.is_empty() {
        return 0;
    }
    1 + t.windows(2).filter(|w| w[0] != w[1]).count()
}

/// Optimal run count, a scheme achieving it, and the transform it
/// produces.
#[derive(Debug, Clone)]
pub struct RunMinimization {
    pub opt: usize,
    pub scheme: OrderingScheme,
    pub transform: TransformOutput,
}

pub fn min_runs(s: &[u8]) -> Result<RunMinimization> {
    min_runs_with_limit(s, DEFAULT_SIGMA_LIMIT)
}

/// Like [`min_runs`] with an explicit alphabet guard. Raising the guard
/// beyond the default gets expensive fast: a node with h children costs
/// h! * h * sigma^3.
pub fn min_runs_with_limit(s: &[u8], max_sigma: usize) -> Result<RunMinimization> {
    if s.is_empty() {
        return Err(Error::EmptyString);
    }
    let alphabet = Alphabet::from_bytes(s)?;
    let sigma = alphabet.size();
    if sigma > max_sigma {
        return Err(Error::AlphabetTooLarge {
            sigma,
            limit: max_sigma,
        });
    }
    let trie = RotationTrie::build(s)?;
    let n = s.len();
    let inf = (n + 1) as u32;

    let mut contexts: BTreeMap<Vec<u8>, Permutation> = BTreeMap::new();
    let opt;
    if let TrieChild::Internal(root) = trie.root() {
        let dp = solve(&trie, &alphabet, inf);
        // first minimal entry in standard (row, column) scan order
        let root_rho = &dp.rho[root];
        let mut best = (0usize, 0usize, inf);
        for i in 0..sigma {
            for j in 0..sigma {
                if root_rho[i * sigma + j] < best.2 {
                    best = (i, j, root_rho[i * sigma + j]);
                }
            }
        }
        debug_assert!(best.2 < inf);
        opt = best.2 as usize;
        backtrack(&trie, &alphabet, &dp, inf, (best.0, best.1), &mut contexts);
    } else {
        // a single rotation: one symbol, one run, nothing to order
        opt = 1;
    }

    let scheme = OrderingScheme::explicit(
        alphabet.clone(),
        Permutation::identity(alphabet.size()),
        contexts,
    )?;
    let transform = transform_fast(s, &scheme)?;
    debug_assert_eq!(count_runs(&transform.data), opt);
    Ok(RunMinimization {
        opt,
        scheme,
        transform,
    })
}

struct DpTables {
    /// Per internal node, sigma x sigma: fewest runs over feasible
    /// arrangements of the node's output block starting/ending with the
    /// indexed symbols. `inf` marks infeasible pairs.
    rho: Vec<Vec<u32>>,
    /// Per internal node and entry, which child ordering achieved it
    /// (index into the lexicographic enumeration of child permutations).
    best_ordering: Vec<Vec<u32>>,
}

/// Output symbol attached to a leaf: the symbol preceding the rotation.
fn leaf_symbol_pos(trie: &RotationTrie, alphabet: &Alphabet, rank: usize) -> usize {
    let s = trie.text();
    let n = s.len();
    let b = s[(trie.sa()[rank] + n - 1) % n];
    alphabet.position(b).expect("leaf symbol in alphabet")
}

fn leaf_matrix(sigma: usize, inf: u32, pos: usize) -> Vec<u32> {
    let mut m = vec![inf; sigma * sigma];
    m[pos * sigma + pos] = 1;
    m
}

fn solve(trie: &RotationTrie, alphabet: &Alphabet, inf: u32) -> DpTables {
    let sigma = alphabet.size();
    let node_count = trie.node_count();
    let mut rho: Vec<Vec<u32>> = vec![Vec::new(); node_count];
    let mut best_ordering: Vec<Vec<u32>> = vec![Vec::new(); node_count];
    // children are created after their parent, so descending id order is
    // a valid bottom-up schedule
    for id in (0..node_count).rev() {
        let node = trie.node(id);
        let child_mats: Vec<Vec<u32>> = node
            .children
            .iter()
            .map(|&(_, child)| match child {
                TrieChild::Leaf(rank) => {
                    leaf_matrix(sigma, inf, leaf_symbol_pos(trie, alphabet, rank))
                }
                TrieChild::Internal(cid) => rho[cid].clone(),
            })
            .collect();
        let h = child_mats.len();
        let mut node_rho = vec![inf; sigma * sigma];
        let mut node_best = vec![0u32; sigma * sigma];
        for (ordering_idx, ordering) in (0..h).permutations(h).enumerate() {
            let glued = glue_chain(&child_mats, &ordering, sigma, inf);
            for cell in 0..sigma * sigma {
                if glued[cell] < node_rho[cell] {
                    node_rho[cell] = glued[cell];
                    node_best[cell] = ordering_idx as u32;
                }
            }
        }
        rho[id] = node_rho;
        best_ordering[id] = node_best;
    }
    DpTables { rho, best_ordering }
}

/// Fewest runs over arrangements that concatenate the children in the
/// given order, per (start symbol, end symbol).
fn glue_chain(mats: &[Vec<u32>], ordering: &[usize], sigma: usize, inf: u32) -> Vec<u32> {
    let mut acc = mats[ordering[0]].clone();
    for &k in &ordering[1..] {
        acc = glue_pair(&acc, &mats[k], sigma, inf);
    }
    acc
}

fn glue_pair(left: &[u32], right: &[u32], sigma: usize, inf: u32) -> Vec<u32> {
    // min over the right block's start symbol, with and without merging
    // a shared boundary symbol into one run
    let mut right_col_min = vec![inf; sigma];
    for end in 0..sigma {
        let mut m = inf;
        for start in 0..sigma {
            m = m.min(right[start * sigma + end]);
        }
        right_col_min[end] = m;
    }
    let mut out = vec![inf; sigma * sigma];
    for first in 0..sigma {
        let mut left_row_min = inf;
        for mid in 0..sigma {
            left_row_min = left_row_min.min(left[first * sigma + mid]);
        }
        for last in 0..sigma {
            let mut best = sat_add(left_row_min, right_col_min[last], inf);
            for mid in 0..sigma {
                let a = left[first * sigma + mid];
                let b = right[mid * sigma + last];
                if a < inf && b < inf {
                    best = best.min(a + b - 1);
                }
            }
            out[first * sigma + last] = best.min(inf);
        }
    }
    out
}

fn sat_add(a: u32, b: u32, inf: u32) -> u32 {
    if a >= inf || b >= inf {
        inf
    } else {
        (a + b).min(inf)
    }
}

fn backtrack(
    trie: &RotationTrie,
    alphabet: &Alphabet,
    dp: &DpTables,
    inf: u32,
    root_req: (usize, usize),
    contexts: &mut BTreeMap<Vec<u8>, Permutation>,
) {
    let sigma = alphabet.size();
    let mut stack = vec![(trie.root(), root_req)];
    while let Some((child, (req_start, req_end))) = stack.pop() {
        let id = match child {
            TrieChild::Leaf(rank) => {
                debug_assert_eq!(req_start, req_end);
                debug_assert_eq!(req_start, leaf_symbol_pos(trie, alphabet, rank));
                continue;
            }
            TrieChild::Internal(id) => id,
        };
        let node = trie.node(id);
        let h = node.children.len();
        let ordering_idx = dp.best_ordering[id][req_start * sigma + req_end] as usize;
        let ordering: Vec<usize> = (0..h)
            .permutations(h)
            .nth(ordering_idx)
            .expect("recorded ordering index");
        let child_mats: Vec<Vec<u32>> = node
            .children
            .iter()
            .map(|&(_, c)| match c {
                TrieChild::Leaf(rank) => {
                    leaf_matrix(sigma, inf, leaf_symbol_pos(trie, alphabet, rank))
                }
                TrieChild::Internal(cid) => dp.rho[cid].clone(),
            })
            .collect();
        // replay the chain to recover the per-child boundary symbols
        let mut prefixes: Vec<Vec<u32>> = Vec::with_capacity(h);
        prefixes.push(child_mats[ordering[0]].clone());
        for k in 1..h {
            prefixes.push(glue_pair(
                &prefixes[k - 1],
                &child_mats[ordering[k]],
                sigma,
                inf,
            ));
        }
        let mut end = req_end;
        let mut requirements = vec![(0usize, 0usize); h];
        for k in (1..h).rev() {
            let target = prefixes[k][req_start * sigma + end];
            let prev = &prefixes[k - 1];
            let right = &child_mats[ordering[k]];
            let mut found = None;
            'scan: for i in 0..sigma {
                for j in 0..sigma {
                    let a = prev[req_start * sigma + i];
                    let b = right[j * sigma + end];
                    if a >= inf || b >= inf {
                        continue;
                    }
                    let save = u32::from(i == j);
                    if a + b - save == target {
                        found = Some((i, j));
                        break 'scan;
                    }
                }
            }
            let (i, j) = found.expect("glue backtrack must land on an attained minimum");
            requirements[k] = (j, end);
            end = i;
        }
        requirements[0] = (req_start, end);
        // the chosen child order, completed with the unused symbols in
        // standard order, becomes the permutation for this context
        let mut ranked: Vec<u8> = ordering.iter().map(|&k| node.children[k].0).collect();
        let mut used = [false; 256];
        for &b in &ranked {
            used[b as usize] = true;
        }
        ranked.extend(alphabet.symbols().iter().copied().filter(|&b| !used[b as usize]));
        let perm = Permutation::from_ranked_symbols(alphabet, &ranked)
            .expect("child symbols are distinct alphabet members");
        contexts.insert(trie.context_of(node), perm);
        for (k, &(a, b)) in requirements.iter().enumerate() {
            stack.push((node.children[ordering[k]].1, (a, b)));
        }
    }
}

/// Independent oracle: tries every assignment of child orderings to every
/// internal trie node, materializes each resulting output, and returns
/// the minimum run count. Guarded to tiny instances.
pub fn exhaustive_min_runs(s: &[u8]) -> Result<usize> {
    const MAX_N: usize = 12;
    const MAX_SIGMA: usize = 3;
    if s.is_empty() {
        return Err(Error::EmptyString);
    }
    let alphabet = Alphabet::from_bytes(s)?;
    if s.len() > MAX_N || alphabet.size() > MAX_SIGMA {
        return Err(Error::InstanceTooLarge {
            max_n: MAX_N,
            max_sigma: MAX_SIGMA,
        });
    }
    let trie = RotationTrie::build(s)?;
    if let TrieChild::Leaf(_) = trie.root() {
        return Ok(1);
    }
    let n = s.len();
    let node_count = trie.node_count();
    let orderings_per_node: Vec<Vec<Vec<usize>>> = (0..node_count)
        .map(|id| {
            let h = trie.node(id).children.len();
            (0..h).permutations(h).collect()
        })
        .collect();
    let mut choice = vec![0usize; node_count];
    let mut best = usize::MAX;
    let mut output = Vec::with_capacity(n);
    loop {
        output.clear();
        let mut stack = vec![trie.root()];
        while let Some(c) = stack.pop() {
            match c {
                TrieChild::Leaf(rank) => {
                    output.push(trie.text()[(trie.sa()[rank] + n - 1) % n]);
                }
                TrieChild::Internal(id) => {
                    let node = trie.node(id);
                    let ordering = &orderings_per_node[id][choice[id]];
                    for &k in ordering.iter().rev() {
                        stack.push(node.children[k].1);
                    }
                }
            }
        }
        best = best.min(count_runs(&output));
        // odometer
        let mut carry = 0usize;
        loop {
            if carry == node_count {
                return Ok(best);
            }
            choice[carry] += 1;
            if choice[carry] < orderings_per_node[carry].len() {
                break;
            }
            choice[carry] = 0;
            carry += 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testutil::{demo_abwt, demo_standard, random_scheme, XorShift, DEMO_TEXT};
    use crate::transform::is_primitive;

    #[test]
    fn run_counting() {
        assert_eq!(count_runs(b"bcaaabaaa"), 5);
        assert_eq!(count_runs(b"aabcabaaa"), 6);
        assert_eq!(count_runs(b"aaaa"), 1);
        assert_eq!(count_runs(b""), 0);
        assert_eq!(count_runs(b"x"), 1);
    }

    #[test]
    fn two_symbols_force_two_runs() {
        let r = min_runs(b"ab").unwrap();
        assert_eq!(r.opt, 2);
        assert_eq!(count_runs(&r.transform.data), 2);
        assert_eq!(exhaustive_min_runs(b"ab").unwrap(), 2);
    }

    #[test]
    fn three_symbol_multiset() {
        let r = min_runs(b"aab").unwrap();
        assert_eq!(r.opt, 2);
        assert_eq!(exhaustive_min_runs(b"aab").unwrap(), 2);
    }

    #[test]
    fn worked_example_is_optimal_and_achieved() {
        let r = min_runs(DEMO_TEXT).unwrap();
        let oracle = exhaustive_min_runs(DEMO_TEXT).unwrap();
        assert_eq!(r.opt, oracle);
        assert!(r.opt <= 5, "the standard transform already gets 5 runs");
        assert_eq!(count_runs(&r.transform.data), r.opt);
        // dominance over the fixed schemes
        let std_runs = count_runs(
            &crate::transform::transform_fast(DEMO_TEXT, &demo_standard())
                .unwrap()
                .data,
        );
        let abwt_runs = count_runs(
            &crate::transform::transform_fast(DEMO_TEXT, &demo_abwt())
                .unwrap()
                .data,
        );
        assert!(r.opt <= std_runs.min(abwt_runs));
    }

    #[test]
    fn single_symbol_input() {
        let r = min_runs(b"z").unwrap();
        assert_eq!(r.opt, 1);
        assert_eq!(r.transform.data, b"z");
        assert_eq!(exhaustive_min_runs(b"z").unwrap(), 1);
    }

    #[test]
    fn guards() {
        assert!(matches!(min_runs(b""), Err(Error::EmptyString)));
        assert!(matches!(
            min_runs_with_limit(b"abcdefg", 6),
            Err(Error::AlphabetTooLarge { sigma: 7, limit: 6 })
        ));
        assert!(min_runs_with_limit(b"abcdefg", 7).is_ok());
        assert!(matches!(
            exhaustive_min_runs(b"abcd"),
            Err(Error::InstanceTooLarge { .. })
        ));
        assert!(matches!(
            exhaustive_min_runs(b"aaaaaaaaaaaab"),
            Err(Error::InstanceTooLarge { .. })
        ));
        assert_eq!(min_runs(b"abab").err(), Some(Error::NotPrimitive));
    }

    #[test]
    fn matches_exhaustive_on_small_ternary_strings() {
        let mut rng = XorShift::new(808);
        let mut stack: Vec<Vec<u8>> = vec![Vec::new()];
        let mut checked = 0usize;
        while let Some(cur) = stack.pop() {
            if cur.len() >= 2 && is_primitive(&cur).unwrap() && rng.below(4) == 0 {
                let dp = min_runs(&cur).unwrap();
                let oracle = exhaustive_min_runs(&cur).unwrap();
                assert_eq!(dp.opt, oracle, "s = {cur:?}");
                assert_eq!(count_runs(&dp.transform.data), dp.opt);
                checked += 1;
            }
            if cur.len() < 7 {
                for &c in b"abc" {
                    let mut next = cur.clone();
                    next.push(c);
                    stack.push(next);
                }
            }
        }
        assert!(checked > 100);
    }

    #[test]
    fn opt_lower_bounds_random_schemes() {
        let mut rng = XorShift::new(4242);
        let alpha = crate::alphabet::Alphabet::from_bytes(b"abc").unwrap();
        for _ in 0..40 {
            let n = 2 + rng.below(30);
            let s: Vec<u8> = (0..n).map(|_| b"abc"[rng.below(3)]).collect();
            if !is_primitive(&s).unwrap() {
                continue;
            }
            let r = min_runs(&s).unwrap();
            assert!(r.opt >= crate::alphabet::Alphabet::from_bytes(&s).unwrap().size());
            for kind in 0..4u8 {
                let scheme = random_scheme(&mut rng, kind, &alpha, &s);
                if scheme.alphabet().check_contains_all(&s).is_err() {
                    continue;
                }
                let out = crate::transform::transform_fast(&s, &scheme).unwrap();
                assert!(
                    r.opt <= count_runs(&out.data),
                    "optimum beaten by a sampled scheme on {s:?}"
                );
            }
        }
    }
}
