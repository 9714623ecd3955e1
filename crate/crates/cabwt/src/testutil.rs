//! Shared fixtures for the unit tests.

use std::collections::BTreeMap;

use crate::alphabet::{Alphabet, Permutation};
use crate::scheme::OrderingScheme;

pub(crate) const DEMO_TEXT: &[u8] = b"aabaaabac";

/// The explicit scheme used as the running example across the crate:
/// empty context -> bac, "a" -> cab, "aa" -> cba, every other context abc.
/// On `DEMO_TEXT` it transforms to "aabcabaaa" with row index 3.
pub(crate) fn demo_scheme() -> OrderingScheme {
    let a = Alphabet::from_bytes(b"abc").unwrap();
    let p = |s: &[u8]| Permutation::from_ranked_symbols(&a, s).unwrap();
    let mut ctx = BTreeMap::new();
    ctx.insert(b"".to_vec(), p(b"bac"));
    ctx.insert(b"a".to_vec(), p(b"cab"));
    ctx.insert(b"aa".to_vec(), p(b"cba"));
    OrderingScheme::explicit(a.clone(), p(b"abc"), ctx).unwrap()
}

pub(crate) fn demo_standard() -> OrderingScheme {
    OrderingScheme::standard(Alphabet::from_bytes(b"abc").unwrap())
}

pub(crate) fn demo_abwt() -> OrderingScheme {
    OrderingScheme::abwt(Alphabet::from_bytes(b"abc").unwrap())
}

/// A local scheme that reproduces the standard transform (identity base,
/// no per-symbol overrides) but goes through the `Local1` code paths.
pub(crate) fn local_identity(alphabet: Alphabet) -> OrderingScheme {
    let sigma = alphabet.size();
    OrderingScheme::local1(alphabet, Permutation::identity(sigma), []).unwrap()
}

/// Tiny deterministic generator so unit tests can sample schemes without
/// pulling in an RNG crate for the library build.
pub(crate) struct XorShift(u64);

impl XorShift {
    pub(crate) fn new(seed: u64) -> Self {
        XorShift(seed.max(1))
    }
    pub(crate) fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }
    pub(crate) fn below(&mut self, n: usize) -> usize {
        (self.next() % n as u64) as usize
    }
}

pub(crate) fn random_permutation(rng: &mut XorShift, alphabet: &Alphabet) -> Permutation {
    let mut syms = alphabet.symbols().to_vec();
    for i in (1..syms.len()).rev() {
        let j = rng.below(i + 1);
        syms.swap(i, j);
    }
    Permutation::from_ranked_symbols(alphabet, &syms).unwrap()
}

/// Random scheme of the given kind; explicit contexts are drawn from the
/// circular substrings of `text` so they actually influence the result.
pub(crate) fn random_scheme(
    rng: &mut XorShift,
    kind: u8,
    alphabet: &Alphabet,
    text: &[u8],
) -> OrderingScheme {
    let base = random_permutation(rng, alphabet);
    match kind % 4 {
        0 => OrderingScheme::standard_with_base(alphabet.clone(), base).unwrap(),
        1 => OrderingScheme::abwt_with_base(alphabet.clone(), base).unwrap(),
        2 => {
            let mut entries = Vec::new();
            for &sym in alphabet.symbols() {
                if rng.below(4) != 0 {
                    entries.push((sym, random_permutation(rng, alphabet)));
                }
            }
            OrderingScheme::local1(alphabet.clone(), base, entries).unwrap()
        }
        _ => {
            let mut ctx = BTreeMap::new();
            if !text.is_empty() {
                let n = text.len();
                let entries = 1 + rng.below(2 * n.min(10));
                for _ in 0..entries {
                    let start = rng.below(n);
                    let len = rng.below(n.min(6));
                    let key: Vec<u8> = (0..len).map(|k| text[(start + k) % n]).collect();
                    ctx.entry(key)
                        .or_insert_with(|| random_permutation(rng, alphabet));
                }
            }
            OrderingScheme::explicit(alphabet.clone(), base, ctx).unwrap()
        }
    }
}
