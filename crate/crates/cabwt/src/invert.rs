//! Recovering the input from (transformed string, row index, scheme).
//!
//! The generic path replays the counting machinery: the first-column
//! table plus the row index give the first symbol, and each further
//! symbol is read off the split of the recovered prefix, growing one
//! tableau diagonal per step, O(sigma n^2) overall. Local schemes
//! instead walk the row permutation that shifts rotations right by one,
//! one constant-time step per symbol, for O(sigma^2 + n) total.

use crate::error::{Error, Result};
use crate::query::QueryIndex;
use crate::scheme::{OrderingScheme, SchemeKind};

/// Inverts any scheme kind. `row_index` must be the matrix row of the
/// original string, as produced by the forward transform.
pub fn invert_generic(
    transformed: &[u8],
    row_index: usize,
    scheme: &OrderingScheme,
) -> Result<Vec<u8>> {
    let n = transformed.len();
    if row_index >= n {
        return Err(Error::MalformedInput(format!(
            "row index {row_index} out of range for length {n}"
        )));
    }
    let qi = QueryIndex::new(transformed, scheme)?;
    let mut recovered = Vec::with_capacity(n);
    recovered.push(qi.first_symbol_of_row(row_index)?);
    let mut diagonal = vec![qi.symbol_split(recovered[0])];
    for _ in 1..n {
        let m = recovered.len();
        let pi = scheme.ordering_for(&recovered);
        let next_pos = diagonal[0].symbol_at_row(pi, row_index)?;
        let next = scheme.alphabet().symbol(next_pos);
        recovered.push(next);
        // grow the diagonal: splits of recovered[j..] for every j
        let mut grown = Vec::with_capacity(m + 1);
        grown.push(qi.symbol_split(next));
        for j in (0..m).rev() {
            let split = qi.extend(&diagonal[j], grown.last().unwrap(), &recovered[j..]);
            grown.push(split);
        }
        grown.reverse();
        diagonal = grown;
    }
    Ok(recovered)
}

/// Maps a row to the row holding its rotation shifted right by one
/// position. Constant time; local schemes only. Iterated from any start
/// it visits all n rows, stepping the rotation start backwards through
/// the text.
pub fn shift_row(qi: &QueryIndex, row: usize) -> Result<usize> {
    if qi.scheme().kind() != SchemeKind::Local1 {
        return Err(Error::WrongSchemeKind);
    }
    if row >= qi.len() {
        return Err(Error::RowOutOfRange { row });
    }
    let first = qi.first_symbol_of_row(row)?;
    let last = qi.seq().access(row)?;
    let base = qi.symbol_range(first);
    let skipped = qi.seq().rank(last, row)? - qi.seq().rank(last, base.start)?;
    Ok(qi.pair_range(last, first)?.start + skipped)
}

/// Linear-time inversion for local schemes; output identical to
/// [`invert_generic`].
pub fn invert_local(
    transformed: &[u8],
    row_index: usize,
    scheme: &OrderingScheme,
) -> Result<Vec<u8>> {
    if scheme.kind() != SchemeKind::Local1 {
        return Err(Error::WrongSchemeKind);
    }
    let n = transformed.len();
    if row_index >= n {
        return Err(Error::MalformedInput(format!(
            "row index {row_index} out of range for length {n}"
        )));
    }
    let qi = QueryIndex::new(transformed, scheme)?;
    let mut out = vec![0u8; n];
    out[0] = qi.first_symbol_of_row(row_index)?;
    let mut row = row_index;
    for k in 1..n {
        row = shift_row(&qi, row)?;
        out[n - k] = qi.first_symbol_of_row(row)?;
    }
    Ok(out)
}
