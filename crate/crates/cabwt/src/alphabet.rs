//! Byte alphabets and alphabet permutations.

use crate::error::{Error, Result};

const ABSENT: u16 = u16::MAX;

/// An ordered set of byte symbols. The standard order is ascending byte
/// value; every permutation used by a scheme is a reordering of one of
/// these alphabets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    symbols: Vec<u8>,
    position: Vec<u16>, // 256 entries, byte -> position or ABSENT
}

impl Alphabet {
    /// Builds an alphabet from symbols that must be strictly increasing.
    pub fn new(symbols: Vec<u8>) -> Result<Self> {
        if symbols.is_empty() || symbols.len() > 256 {
            return Err(Error::InvalidAlphabet);
        }
        if symbols.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidAlphabet);
        }
        let mut position = vec![ABSENT; 256];
        for (i, &b) in symbols.iter().enumerate() {
            position[b as usize] = i as u16;
        }
        Ok(Alphabet { symbols, position })
    }

    /// Infers the alphabet of `data`: its distinct bytes in ascending order.
    pub fn from_bytes(data: &[u8]) -> Result<Self> {
        let mut seen = [false; 256];
        for &b in data {
            seen[b as usize] = true;
        }
        let symbols: Vec<u8> = (0u16..256)
            .filter(|&b| seen[b as usize])
            .map(|b| b as u8)
            .collect();
        Alphabet::new(symbols)
    }

    pub fn size(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    /// Byte at alphabet position `pos`. Panics if `pos >= size()`.
    pub fn symbol(&self, pos: usize) -> u8 {
        self.symbols[pos]
    }

    pub fn position(&self, byte: u8) -> Option<usize> {
        match self.position[byte as usize] {
            ABSENT => None,
            p => Some(p as usize),
        }
    }

    pub fn contains(&self, byte: u8) -> bool {
        self.position[byte as usize] != ABSENT
    }

    /// First byte of `data` that is not a member, if any.
    pub fn check_contains_all(&self, data: &[u8]) -> Result<()> {
        match data.iter().find(|&&b| !self.contains(b)) {
            Some(&b) => Err(Error::ByteOutsideAlphabet(b)),
            None => Ok(()),
        }
    }
}

/// A reordering of an alphabet: `rank` maps an alphabet position to its
/// rank under the ordering, `position_at_rank` is the inverse.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    rank_of: Vec<u16>,
    position_at: Vec<u16>,
}

impl Permutation {
    /// The standard order: rank equals alphabet position.
    pub fn identity(sigma: usize) -> Self {
        let ids: Vec<u16> = (0..sigma as u16).collect();
        Permutation {
            rank_of: ids.clone(),
            position_at: ids,
        }
    }

    /// Builds a permutation from the symbols listed in rank order, e.g.
    /// `b"bac"` ranks `b` before `a` before `c`. The listing must cover the
    /// alphabet exactly once.
    pub fn from_ranked_symbols(alphabet: &Alphabet, ranked: &[u8]) -> Result<Self> {
        let sigma = alphabet.size();
        if ranked.len() != sigma {
            return Err(Error::InvalidPermutation(format!(
                "lists {} symbols, alphabet has {}",
                ranked.len(),
                sigma
            )));
        }
        let mut rank_of = vec![ABSENT; sigma];
        let mut position_at = vec![0u16; sigma];
        for (r, &b) in ranked.iter().enumerate() {
            let pos = alphabet
                .position(b)
                .ok_or(Error::ByteOutsideAlphabet(b))?;
            if rank_of[pos] != ABSENT {
                return Err(Error::InvalidPermutation(format!(
                    "symbol 0x{b:02x} listed twice"
                )));
            }
            rank_of[pos] = r as u16;
            position_at[r] = pos as u16;
        }
        Ok(Permutation {
            rank_of,
            position_at,
        })
    }

    pub fn len(&self) -> usize {
        self.rank_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rank_of.is_empty()
    }

    /// Rank of the symbol at alphabet position `pos`.
    pub fn rank(&self, pos: usize) -> usize {
        self.rank_of[pos] as usize
    }

    /// Alphabet position of the symbol holding rank `r`.
    pub fn position_at_rank(&self, r: usize) -> usize {
        self.position_at[r] as usize
    }

    /// The exactly reversed rank order. An involution.
    pub fn reversed(&self) -> Self {
        let sigma = self.len();
        let mut rank_of = vec![0u16; sigma];
        let mut position_at = vec![0u16; sigma];
        for pos in 0..sigma {
            let r = sigma - 1 - self.rank(pos);
            rank_of[pos] = r as u16;
            position_at[r] = pos as u16;
        }
        Permutation {
            rank_of,
            position_at,
        }
    }

    /// Symbols in rank order, resolved through `alphabet`.
    pub fn ranked_symbols(&self, alphabet: &Alphabet) -> Vec<u8> {
        self.position_at
            .iter()
            .map(|&p| alphabet.symbol(p as usize))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> Alphabet {
        Alphabet::from_bytes(b"cab").unwrap()
    }

    #[test]
    fn alphabet_sorts_and_indexes() {
        let a = abc();
        assert_eq!(a.symbols(), b"abc");
        assert_eq!(a.position(b'b'), Some(1));
        assert_eq!(a.position(b'z'), None);
        assert!(a.check_contains_all(b"cabba").is_ok());
        assert_eq!(
            a.check_contains_all(b"abz"),
            Err(Error::ByteOutsideAlphabet(b'z'))
        );
    }

    #[test]
    fn alphabet_rejects_bad_input() {
        assert_eq!(Alphabet::new(vec![]), Err(Error::InvalidAlphabet));
        assert_eq!(Alphabet::new(vec![3, 3]), Err(Error::InvalidAlphabet));
        assert_eq!(Alphabet::new(vec![5, 2]), Err(Error::InvalidAlphabet));
        assert_eq!(Alphabet::from_bytes(b""), Err(Error::InvalidAlphabet));
    }

    #[test]
    fn full_byte_alphabet() {
        let all: Vec<u8> = (0u16..256).map(|b| b as u8).collect();
        let a = Alphabet::new(all).unwrap();
        assert_eq!(a.size(), 256);
        assert_eq!(a.position(0xff), Some(255));
    }

    #[test]
    fn permutation_reverse_is_involution() {
        let a = abc();
        let p = Permutation::from_ranked_symbols(&a, b"bac").unwrap();
        let r = p.reversed();
        assert_eq!(r.ranked_symbols(&a), b"cab");
        assert_eq!(r.reversed(), p);
        let q = Permutation::from_ranked_symbols(&a, b"abc").unwrap();
        assert_eq!(q.reversed().ranked_symbols(&a), b"cba");
    }

    #[test]
    fn permutation_rejects_non_bijections() {
        let a = abc();
        assert!(Permutation::from_ranked_symbols(&a, b"ab").is_err());
        assert!(Permutation::from_ranked_symbols(&a, b"aab").is_err());
        assert!(Permutation::from_ranked_symbols(&a, b"abz").is_err());
    }

    #[test]
    fn rank_and_position_are_inverse() {
        let a = abc();
        let p = Permutation::from_ranked_symbols(&a, b"cab").unwrap();
        for pos in 0..a.size() {
            assert_eq!(p.position_at_rank(p.rank(pos)), pos);
        }
    }
}
