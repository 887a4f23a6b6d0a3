//! Good and cogood boxes, and the good-box recursion for `M_e`.
//!
//! For a residue `i`, the addable and removable `i`-boxes are read along the
//! boundary and adjacent addable/removable pairs cancel. The reading order and
//! which pair cancels are fixed by [`SignatureConvention`]; the calibrated
//! choice is [`SignatureConvention::CALIBRATED`].

use std::fmt;

use crate::error::{Error, Result};
use crate::mullineux::rim::Cell;
use crate::partition::Partition;

/// `(col − row) mod e` of a box.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Residue(usize);

impl Residue {
    pub fn new(value: usize, e: usize) -> Self {
        Residue(value % e)
    }

    pub fn of(cell: Cell, e: usize) -> Self {
        Residue((cell.col + cell.row * (e - 1)) % e)
    }

    pub fn value(self) -> usize {
        self.0
    }

    /// `−i mod e`.
    pub fn negate(self, e: usize) -> Self {
        Residue((e - self.0) % e)
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReadingOrder {
    /// First row to last row.
    TopDown,
    /// Last row to first row.
    BottomUp,
}

/// Which adjacent pair cancels in the reading word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Cancellation {
    AddableThenRemovable,
    RemovableThenAddable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SignatureConvention {
    pub reading: ReadingOrder,
    pub cancellation: Cancellation,
}

impl SignatureConvention {
    /// The convention under which the recursion is an involution, equals the
    /// transpose for `e > n`, and reproduces the symbol transformation.
    /// `(BottomUp, RemovableThenAddable)` is the same rule read backwards.
    pub const CALIBRATED: SignatureConvention = SignatureConvention {
        reading: ReadingOrder::TopDown,
        cancellation: Cancellation::AddableThenRemovable,
    };

    pub fn all() -> [SignatureConvention; 4] {
        use Cancellation::*;
        use ReadingOrder::*;
        [
            (TopDown, AddableThenRemovable),
            (TopDown, RemovableThenAddable),
            (BottomUp, AddableThenRemovable),
            (BottomUp, RemovableThenAddable),
        ]
        .map(|(reading, cancellation)| SignatureConvention {
            reading,
            cancellation,
        })
    }
}

impl Default for SignatureConvention {
    fn default() -> Self {
        Self::CALIBRATED
    }
}

pub fn addable_cells(lambda: &Partition) -> Vec<Cell> {
    (0..=lambda.len())
        .filter(|&i| i == 0 || lambda.part(i - 1) > lambda.part(i))
        .map(|i| Cell::new(i + 1, lambda.part(i) + 1))
        .collect()
}

pub fn removable_cells(lambda: &Partition) -> Vec<Cell> {
    (0..lambda.len())
        .filter(|&i| lambda.part(i) > lambda.part(i + 1))
        .map(|i| Cell::new(i + 1, lambda.part(i)))
        .collect()
}

pub(crate) fn remove_cell(lambda: &Partition, cell: Cell) -> Partition {
    let mut rows = lambda.parts().to_vec();
    rows[cell.row - 1] -= 1;
    Partition::from_rows(rows)
}

pub(crate) fn add_cell(lambda: &Partition, cell: Cell) -> Partition {
    let mut rows = lambda.parts().to_vec();
    if cell.row > rows.len() {
        rows.push(0);
    }
    rows[cell.row - 1] += 1;
    Partition::from_rows(rows)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Node {
    Addable,
    Removable,
}

/// The good removable `i`-box of `lambda`, if any.
pub fn good_box(
    lambda: &Partition,
    e: usize,
    i: Residue,
    conv: SignatureConvention,
) -> Option<Cell> {
    let mut word: Vec<(Cell, Node)> = addable_cells(lambda)
        .into_iter()
        .map(|c| (c, Node::Addable))
        .chain(
            removable_cells(lambda)
                .into_iter()
                .map(|c| (c, Node::Removable)),
        )
        .filter(|&(c, _)| Residue::of(c, e) == i)
        .collect();
    // A row has one addable and at most one removable box, in adjacent
    // columns, so for e ≥ 2 each row holds at most one box of residue i.
    word.sort_by_key(|&(c, _)| c.row);
    if conv.reading == ReadingOrder::BottomUp {
        word.reverse();
    }
    let (first, second) = match conv.cancellation {
        Cancellation::AddableThenRemovable => (Node::Addable, Node::Removable),
        Cancellation::RemovableThenAddable => (Node::Removable, Node::Addable),
    };
    let mut reduced: Vec<(Cell, Node)> = Vec::with_capacity(word.len());
    for item in word {
        match reduced.last() {
            Some(&(_, top)) if top == first && item.1 == second => {
                reduced.pop();
            }
            _ => reduced.push(item),
        }
    }
    // The reduced word reads (second)* (first)*; the good box is the
    // surviving removable box next to the boundary between the two blocks.
    let mut removable = reduced
        .into_iter()
        .filter(|&(_, kind)| kind == Node::Removable)
        .map(|(c, _)| c);
    match first {
        Node::Removable => removable.next(),
        Node::Addable => removable.next_back(),
    }
}

/// Residues admitting a good box, ascending.
pub fn good_residues(lambda: &Partition, e: usize, conv: SignatureConvention) -> Vec<Residue> {
    (0..e)
        .map(|v| Residue::new(v, e))
        .filter(|&i| good_box(lambda, e, i, conv).is_some())
        .collect()
}

/// The addable `j`-box `B` of `mu` that is the good `j`-box of `mu + B`.
pub fn cogood_box(mu: &Partition, e: usize, j: Residue, conv: SignatureConvention) -> Result<Cell> {
    let hits: Vec<Cell> = addable_cells(mu)
        .into_iter()
        .filter(|&c| Residue::of(c, e) == j)
        .filter(|&c| good_box(&add_cell(mu, c), e, j, conv) == Some(c))
        .collect();
    match hits.as_slice() {
        [one] => Ok(*one),
        _ => Err(Error::Convention(format!(
            "{} cogood {j}-boxes on {mu} (e = {e}, {conv:?})",
            hits.len()
        ))),
    }
}

/// One step of the recursion: the residue and good box removed from `lambda`.
pub(crate) fn peel(
    lambda: &Partition,
    e: usize,
    conv: SignatureConvention,
    choose: &mut dyn FnMut(&[Residue]) -> Residue,
) -> Result<(Residue, Cell)> {
    let candidates = good_residues(lambda, e, conv);
    if candidates.is_empty() {
        return Err(Error::Convention(format!(
            "{lambda} has no good box (e = {e}, {conv:?})"
        )));
    }
    let i = choose(&candidates);
    let cell = good_box(lambda, e, i, conv).ok_or_else(|| {
        Error::Convention(format!("residue {i} offered for {lambda} has no good box"))
    })?;
    Ok((i, cell))
}

/// Uncached good-box recursion with a caller-chosen residue at every level.
/// Used to check that the result does not depend on the choice.
pub fn mullineux_regular_by(
    lambda: &Partition,
    e: usize,
    conv: SignatureConvention,
    choose: &mut dyn FnMut(&[Residue]) -> Residue,
) -> Result<Partition> {
    if lambda.is_empty() {
        return Ok(Partition::empty());
    }
    let (i, cell) = peel(lambda, e, conv, choose)?;
    let image = mullineux_regular_by(&remove_cell(lambda, cell), e, conv, choose)?;
    let back = cogood_box(&image, e, i.negate(e), conv)?;
    Ok(add_cell(&image, back))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> Partition {
        text.parse().unwrap()
    }

    #[test]
    fn boundary_cells() {
        assert_eq!(
            addable_cells(&p("3,1")),
            vec![Cell::new(1, 4), Cell::new(2, 2), Cell::new(3, 1)]
        );
        assert_eq!(
            removable_cells(&p("3,1")),
            vec![Cell::new(1, 3), Cell::new(2, 1)]
        );
        assert_eq!(addable_cells(&Partition::empty()), vec![Cell::new(1, 1)]);
    }

    #[test]
    fn residues() {
        assert_eq!(Residue::of(Cell::new(1, 1), 3).value(), 0);
        assert_eq!(Residue::of(Cell::new(2, 1), 3).value(), 2);
        assert_eq!(Residue::of(Cell::new(1, 3), 3).value(), 2);
        assert_eq!(Residue::new(1, 3).negate(3).value(), 2);
        assert_eq!(Residue::new(0, 3).negate(3).value(), 0);
    }

    #[test]
    fn single_row_good_box() {
        // (3) with e = 3: the only removable box (1,3) has residue 2.
        let conv = SignatureConvention::CALIBRATED;
        assert_eq!(good_residues(&p("3"), 3, conv), vec![Residue::new(2, 3)]);
        assert_eq!(
            good_box(&p("3"), 3, Residue::new(2, 3), conv),
            Some(Cell::new(1, 3))
        );
    }

    #[test]
    fn recursion_small_cases() {
        let conv = SignatureConvention::CALIBRATED;
        let mut first = |r: &[Residue]| r[0];
        assert_eq!(
            mullineux_regular_by(&p("3"), 3, conv, &mut first).unwrap(),
            p("2,1")
        );
        assert_eq!(
            mullineux_regular_by(&p("1"), 3, conv, &mut first).unwrap(),
            p("1")
        );
        assert_eq!(
            mullineux_regular_by(&p("3,2"), 7, conv, &mut first).unwrap(),
            p("2,2,1")
        );
    }
}
