use alloc::vec::Vec;

use crate::model::{CardsState, WagonId};

/// Total displacement between two orderings of the same wagons: the sum over
/// wagons of the difference between their positions. `None` when the
/// sequences are not orderings of one set.
pub fn displacement_distance(x: &[WagonId], y: &[WagonId]) -> Option<usize> {
    if x.len() != y.len() {
        return None;
    }
    let mut total = 0;
    for (i, w) in x.iter().enumerate() {
        let j = y.iter().position(|v| v == w)?;
        total += i.abs_diff(j);
    }
    let mut seen: Vec<WagonId> = x.to_vec();
    seen.sort_unstable();
    seen.dedup();
    (seen.len() == x.len()).then_some(total)
}

/// Reads a three-pile state whose last pile is empty as one ordering: pile 0
/// bottom to top, then pile 1 top to bottom.
pub fn pile_ordering(c: &CardsState) -> Option<Vec<WagonId>> {
    let piles = c.piles();
    if piles.len() != 3 || !piles[2].is_empty() {
        return None;
    }
    let mut out = piles[0].clone();
    out.extend(piles[1].iter().rev());
    Some(out)
}
