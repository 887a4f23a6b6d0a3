//! Mullineux's `e`-rim and symbol, and the exhaustive symbol-search oracle.

use std::fmt;

use crate::error::{Error, Result};
use crate::partition::{enumerate_partitions, Partition};

/// Largest size the symbol-search oracle accepts by default.
pub const DEFAULT_ORACLE_BOUND: usize = 20;

/// A box of a Young diagram, 1-indexed, row `row` and column `col`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cell {
    pub row: usize,
    pub col: usize,
}

impl Cell {
    pub fn new(row: usize, col: usize) -> Self {
        Cell { row, col }
    }
}

/// Rim boxes in traversal order: along the first row from its end, then down
/// and to the left. Row `i` contributes columns `max(λ_{i+1}, 1) ..= λ_i`.
fn rim(lambda: &Partition) -> Vec<Cell> {
    let mut out = Vec::new();
    for (i, &len) in lambda.parts().iter().enumerate() {
        let lower = lambda.part(i + 1).max(1);
        out.extend((lower..=len).rev().map(|col| Cell::new(i + 1, col)));
    }
    out
}

/// Mullineux's `e`-rim: runs of `e` consecutive rim boxes, each later run
/// starting at the first rim box in the row strictly below the end of the
/// previous run; the last run may be short.
pub fn e_rim(lambda: &Partition, e: usize) -> Result<Vec<Cell>> {
    if lambda.is_empty() {
        return Err(Error::Domain("the empty partition has no rim".into()));
    }
    if e < 2 {
        return Err(Error::Domain(format!("e = {e} must be at least 2")));
    }
    let rim = rim(lambda);
    let mut out = Vec::new();
    let mut start = 0;
    loop {
        let end = (start + e).min(rim.len());
        let segment = &rim[start..end];
        out.extend_from_slice(segment);
        if segment.len() < e {
            break;
        }
        let last_row = segment[segment.len() - 1].row;
        match rim[end..].iter().position(|c| c.row > last_row) {
            Some(offset) => start = end + offset,
            None => break,
        }
    }
    Ok(out)
}

/// Removes `cells`, which must be the rightmost boxes of their rows.
pub(crate) fn strip(lambda: &Partition, cells: &[Cell]) -> Partition {
    let mut rows = lambda.parts().to_vec();
    for c in cells {
        rows[c.row - 1] -= 1;
    }
    Partition::from_rows(rows)
}

/// Two-row array `(a_i ; r_i)`: sizes of the successive `e`-rims and the
/// number of rows just before each strip.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MullineuxSymbol {
    pub columns: Vec<(usize, usize)>,
}

impl MullineuxSymbol {
    /// Symbol of the Mullineux image: `s_i = a_i − r_i + ε_i` with
    /// `ε_i = 1` iff `e ∤ a_i`.
    pub fn image(&self, e: usize) -> MullineuxSymbol {
        let columns = self
            .columns
            .iter()
            .map(|&(a, r)| {
                let eps = usize::from(a % e != 0);
                (a, a + eps - r)
            })
            .collect();
        MullineuxSymbol { columns }
    }

    pub fn size(&self) -> usize {
        self.columns.iter().map(|c| c.0).sum()
    }
}

impl fmt::Display for MullineuxSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let top: Vec<String> = self.columns.iter().map(|c| c.0.to_string()).collect();
        let bottom: Vec<String> = self.columns.iter().map(|c| c.1.to_string()).collect();
        write!(f, "({} ; {})", top.join(" "), bottom.join(" "))
    }
}

pub fn mullineux_symbol(lambda: &Partition, e: usize) -> Result<MullineuxSymbol> {
    if e < 2 {
        return Err(Error::Domain(format!("e = {e} must be at least 2")));
    }
    if !lambda.is_regular(e) {
        return Err(Error::Domain(format!("{lambda} is not {e}-regular")));
    }
    let mut columns = Vec::new();
    let mut current = lambda.clone();
    while !current.is_empty() {
        let cells = e_rim(&current, e)?;
        columns.push((cells.len(), current.len()));
        current = strip(&current, &cells);
    }
    Ok(MullineuxSymbol { columns })
}

/// Independent oracle for `M_e`: scans all `e`-regular partitions of the same
/// size for the unique one whose symbol is the transformed symbol.
pub fn mullineux_symbol_search(lambda: &Partition, e: usize) -> Result<Partition> {
    mullineux_symbol_search_bounded(lambda, e, DEFAULT_ORACLE_BOUND)
}

pub fn mullineux_symbol_search_bounded(
    lambda: &Partition,
    e: usize,
    bound: usize,
) -> Result<Partition> {
    let n = lambda.size();
    if n > bound {
        return Err(Error::Capacity {
            what: "symbol-search oracle",
            value: n,
            bound,
        });
    }
    let target = mullineux_symbol(lambda, e)?.image(e);
    let mut hits = Vec::new();
    for mu in enumerate_partitions(n)? {
        if mu.is_regular(e) && mullineux_symbol(&mu, e)? == target {
            hits.push(mu);
        }
    }
    match hits.len() {
        1 => Ok(hits.pop().unwrap()),
        0 => Err(Error::Oracle(format!(
            "no {e}-regular partition of {n} has symbol {target}"
        ))),
        _ => Err(Error::Oracle(format!(
            "symbol {target} has {} preimages",
            hits.len()
        ))),
    }
}
