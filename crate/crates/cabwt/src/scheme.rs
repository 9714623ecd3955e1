//! Ordering schemes: the assignment of an alphabet permutation to every
//! comparison context.
//!
//! Two rotations of a string are compared by finding their longest common
//! prefix (the *context*) and ranking their next symbols under the
//! permutation the scheme attaches to that context. The classic transform
//! uses the standard order everywhere; the schemes here let the order vary
//! with the context.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::alphabet::{Alphabet, Permutation};
use crate::error::{Error, Result};

/// How a scheme maps contexts to permutations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchemeKind {
    /// One fixed permutation for every context.
    Standard,
    /// The base order at even context lengths, its reversal at odd ones
    /// (the alternating transform).
    Abwt,
    /// The permutation depends only on the last symbol of the context.
    Local1,
    /// An explicit map from context strings to permutations.
    Explicit,
}

/// A context-to-permutation map defining one member of the transform
/// family. Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct OrderingScheme {
    alphabet: Alphabet,
    kind: SchemeKind,
    base: Permutation,
    base_reversed: Permutation,
    /// Indexed by alphabet position; `Local1` only.
    per_symbol: Vec<Option<Permutation>>,
    /// `Explicit` only. The empty key, if present, overrides `base` for
    /// first-column comparisons.
    per_context: BTreeMap<Vec<u8>, Permutation>,
    max_context_len: usize,
}

impl OrderingScheme {
    fn assemble(
        alphabet: Alphabet,
        kind: SchemeKind,
        base: Permutation,
        per_symbol: Vec<Option<Permutation>>,
        per_context: BTreeMap<Vec<u8>, Permutation>,
    ) -> Result<Self> {
        if base.len() != alphabet.size() {
            return Err(Error::InvalidPermutation(
                "base permutation does not match the alphabet".into(),
            ));
        }
        for p in per_symbol.iter().flatten() {
            if p.len() != alphabet.size() {
                return Err(Error::InvalidPermutation(
                    "per-symbol permutation does not match the alphabet".into(),
                ));
            }
        }
        for (ctx, p) in &per_context {
            alphabet.check_contains_all(ctx)?;
            if p.len() != alphabet.size() {
                return Err(Error::InvalidPermutation(
                    "per-context permutation does not match the alphabet".into(),
                ));
            }
        }
        let base_reversed = base.reversed();
        let max_context_len = per_context.keys().map(|c| c.len()).max().unwrap_or(0);
        Ok(OrderingScheme {
            alphabet,
            kind,
            base,
            base_reversed,
            per_symbol,
            per_context,
            max_context_len,
        })
    }

    /// The classic transform: the standard order everywhere.
    pub fn standard(alphabet: Alphabet) -> Self {
        let base = Permutation::identity(alphabet.size());
        Self::standard_with_base(alphabet, base).expect("identity always fits")
    }

    /// A constant (context-independent) order that need not be the
    /// standard one.
    pub fn standard_with_base(alphabet: Alphabet, base: Permutation) -> Result<Self> {
        Self::assemble(alphabet, SchemeKind::Standard, base, Vec::new(), BTreeMap::new())
    }

    /// The alternating transform over the standard base order.
    pub fn abwt(alphabet: Alphabet) -> Self {
        let base = Permutation::identity(alphabet.size());
        Self::abwt_with_base(alphabet, base).expect("identity always fits")
    }

    pub fn abwt_with_base(alphabet: Alphabet, base: Permutation) -> Result<Self> {
        Self::assemble(alphabet, SchemeKind::Abwt, base, Vec::new(), BTreeMap::new())
    }

    /// A local ordering: the permutation attached to a context depends only
    /// on its last symbol. The empty context uses `base`, as does any
    /// symbol without an entry.
    pub fn local1<I>(alphabet: Alphabet, base: Permutation, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u8, Permutation)>,
    {
        let mut per_symbol: Vec<Option<Permutation>> = vec![None; alphabet.size()];
        for (sym, perm) in entries {
            let pos = alphabet
                .position(sym)
                .ok_or(Error::ByteOutsideAlphabet(sym))?;
            if per_symbol[pos].is_some() {
                return Err(Error::InvalidPermutation(format!(
                    "symbol 0x{sym:02x} mapped twice"
                )));
            }
            per_symbol[pos] = Some(perm);
        }
        Self::assemble(alphabet, SchemeKind::Local1, base, per_symbol, BTreeMap::new())
    }

    /// A fully explicit scheme: exact context strings map to permutations,
    /// everything else falls back to `base`.
    pub fn explicit(
        alphabet: Alphabet,
        base: Permutation,
        contexts: BTreeMap<Vec<u8>, Permutation>,
    ) -> Result<Self> {
        Self::assemble(alphabet, SchemeKind::Explicit, base, Vec::new(), contexts)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn kind(&self) -> SchemeKind {
        self.kind
    }

    pub fn base(&self) -> &Permutation {
        &self.base
    }

    /// Per-symbol entries of a `Local1` scheme, in standard symbol order.
    pub fn per_symbol_entries(&self) -> impl Iterator<Item = (u8, &Permutation)> {
        self.per_symbol
            .iter()
            .enumerate()
            .filter_map(|(pos, p)| p.as_ref().map(|p| (self.alphabet.symbol(pos), p)))
    }

    /// Context entries of an `Explicit` scheme, in byte-lexicographic order.
    pub fn context_entries(&self) -> impl Iterator<Item = (&[u8], &Permutation)> {
        self.per_context.iter().map(|(c, p)| (c.as_slice(), p))
    }

    /// The permutation governing the symbols that follow context `ctx`.
    /// Deterministic and side-effect free.
    pub fn ordering_for(&self, ctx: &[u8]) -> &Permutation {
        match self.kind {
            SchemeKind::Standard => &self.base,
            SchemeKind::Abwt => {
                if ctx.len() % 2 == 0 {
                    &self.base
                } else {
                    &self.base_reversed
                }
            }
            SchemeKind::Local1 => match ctx.last() {
                None => &self.base,
                Some(&sym) => self.lookup_symbol(sym),
            },
            SchemeKind::Explicit => self.per_context.get(ctx).unwrap_or(&self.base),
        }
    }

    fn lookup_symbol(&self, sym: u8) -> &Permutation {
        self.alphabet
            .position(sym)
            .and_then(|pos| self.per_symbol[pos].as_ref())
            .unwrap_or(&self.base)
    }

    /// Same as [`ordering_for`](Self::ordering_for) for the context
    /// `s[start..start+len]` read circularly, without materializing it
    /// unless the scheme genuinely keys on the full string.
    pub(crate) fn ordering_for_rotation_prefix(
        &self,
        s: &[u8],
        start: usize,
        len: usize,
    ) -> &Permutation {
        match self.kind {
            SchemeKind::Standard => &self.base,
            SchemeKind::Abwt => {
                if len % 2 == 0 {
                    &self.base
                } else {
                    &self.base_reversed
                }
            }
            SchemeKind::Local1 => {
                if len == 0 {
                    &self.base
                } else {
                    self.lookup_symbol(s[(start + len - 1) % s.len()])
                }
            }
            SchemeKind::Explicit => {
                if len > self.max_context_len {
                    return &self.base;
                }
                let n = s.len();
                let ctx: Vec<u8> = (0..len).map(|k| s[(start + k) % n]).collect();
                self.per_context.get(&ctx).unwrap_or(&self.base)
            }
        }
    }

    /// A stable 64-bit digest of the scheme (kind, alphabet, and all
    /// permutations), used by the transform file format to flag mismatched
    /// scheme/transform pairs.
    pub fn fingerprint(&self) -> u64 {
        let mut h = Fnv::new();
        h.byte(match self.kind {
            SchemeKind::Standard => 0,
            SchemeKind::Abwt => 1,
            SchemeKind::Local1 => 2,
            SchemeKind::Explicit => 3,
        });
        h.usize(self.alphabet.size());
        h.bytes(self.alphabet.symbols());
        h.bytes(&self.base.ranked_symbols(&self.alphabet));
        for (sym, perm) in self.per_symbol_entries() {
            h.byte(sym);
            h.bytes(&perm.ranked_symbols(&self.alphabet));
        }
        for (ctx, perm) in self.context_entries() {
            h.usize(ctx.len());
            h.bytes(ctx);
            h.bytes(&perm.ranked_symbols(&self.alphabet));
        }
        h.finish()
    }
}

/// FNV-1a, fixed so fingerprints are reproducible across runs and builds.
struct Fnv(u64);

impl Fnv {
    fn new() -> Self {
        Fnv(0xcbf2_9ce4_8422_2325)
    }
    fn byte(&mut self, b: u8) {
        self.0 ^= b as u64;
        self.0 = self.0.wrapping_mul(0x1_0000_0000_01b3);
    }
    fn bytes(&mut self, bs: &[u8]) {
        for &b in bs {
            self.byte(b);
        }
    }
    fn usize(&mut self, v: usize) {
        self.bytes(&(v as u64).to_le_bytes());
    }
    fn finish(self) -> u64 {
        self.0
    }
}

/// Compares the cyclic rotations of `s` starting at `i` and `j` under
/// `scheme`: the longest common prefix of the two rotations selects the
/// permutation that ranks their first differing symbols.
///
/// For a primitive `s` this is a strict total order; distinct rotations of
/// a non-primitive string may compare `Equal`.
pub fn compare_rotations(s: &[u8], i: usize, j: usize, scheme: &OrderingScheme) -> Ordering {
    if i == j {
        return Ordering::Equal;
    }
    let n = s.len();
    for k in 0..n {
        let a = s[(i + k) % n];
        let b = s[(j + k) % n];
        if a != b {
            let pi = scheme.ordering_for_rotation_prefix(s, i, k);
            let ra = pi.rank(scheme.alphabet.position(a).expect("symbol outside alphabet"));
            let rb = pi.rank(scheme.alphabet.position(b).expect("symbol outside alphabet"));
            return ra.cmp(&rb);
        }
    }
    Ordering::Equal
}
