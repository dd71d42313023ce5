//! Exact "can always be solved" criteria.
//!
//! For inglenook puzzles the answer assumes natural starting and finishing
//! sets: starts are closed under relabelling wagons and every finishing
//! position puts the same wagon against the buffer stop of some fixed siding.
//! For any other finishing set, use the explicit searches in [`crate::search`].

use core::fmt;

use crate::model::{CardsSpec, PuzzleSpec};

/// The clause of the criterion that decided a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    /// One wagon (or card) can always be moved anywhere.
    SingleItem,
    /// One siding (two piles): the engine-to-buffer reading order never changes.
    SingleSiding,
    /// Headshunt of length 1 with two sidings: the reading order from the
    /// buffer of siding 1 to the buffer of siding 2 never changes.
    UnitHeadshuntTwoSidings,
    /// Only one pile: no move exists at all.
    SinglePile,
    /// The space inequality holds.
    InequalityHolds,
    /// The space inequality fails: the bottom item of the largest track can
    /// never leave it.
    InequalityFails,
}

impl Branch {
    pub fn is_affirmative(self) -> bool {
        matches!(self, Branch::SingleItem | Branch::InequalityHolds)
    }

    pub fn describe(self) -> &'static str {
        match self {
            Branch::SingleItem => "a single wagon can always be placed anywhere",
            Branch::SingleSiding => "with one siding the order of wagons never changes",
            Branch::UnitHeadshuntTwoSidings => "a one-wagon headshunt with two sidings preserves wagon order",
            Branch::SinglePile => "a single pile admits no moves",
            Branch::InequalityHolds => "the free space covers every wagon beyond the largest track",
            Branch::InequalityFails => "the wagon at the bottom of the largest track can never be moved away",
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Branch::SingleItem => "single-wagon",
            Branch::SingleSiding => "single-siding",
            Branch::UnitHeadshuntTwoSidings => "unit-headshunt-two-sidings",
            Branch::SinglePile => "single-pile",
            Branch::InequalityHolds => "inequality-holds",
            Branch::InequalityFails => "inequality-fails",
        };
        f.write_str(name)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FeasibilityVerdict {
    pub solvable: bool,
    pub branch: Branch,
    /// Free space beyond what the inequality requires; negative when it fails.
    ///
    /// Inglenook: `(h-1 + sum m) - (w + max{h-1, m_1..m_s})`.
    /// Cards: `sum m - (w + max m)`.
    pub slack: i64,
}

fn verdict(branch: Branch, slack: i64) -> FeasibilityVerdict {
    FeasibilityVerdict { solvable: branch.is_affirmative(), branch, slack }
}

/// Decides whether a natural inglenook puzzle with these capacities can always
/// be solved.
pub fn inglenook_solvable(spec: &PuzzleSpec) -> FeasibilityVerdict {
    let w = spec.wagons() as i64;
    let s = spec.siding_count();
    let h = spec.headshunt();
    let total = (h - 1 + spec.sidings().iter().sum::<usize>()) as i64;
    let largest = spec.sidings().iter().copied().fold(h - 1, usize::max) as i64;
    let slack = total - (w + largest);

    let branch = if w == 1 {
        Branch::SingleItem
    } else if s == 1 {
        Branch::SingleSiding
    } else if h == 1 && s == 2 {
        Branch::UnitHeadshuntTwoSidings
    } else if slack >= 0 {
        Branch::InequalityHolds
    } else {
        Branch::InequalityFails
    };
    verdict(branch, slack)
}

/// Decides whether the cards-in-piles graph is connected.
pub fn cards_connected(spec: &CardsSpec) -> FeasibilityVerdict {
    let caps = spec.capacities();
    let w = spec.cards() as i64;
    let total = caps.iter().sum::<usize>() as i64;
    let largest = caps.iter().copied().max().unwrap_or(0) as i64;
    let slack = total - (w + largest);

    let branch = if w == 1 {
        Branch::SingleItem
    } else if caps.len() == 1 {
        Branch::SinglePile
    } else if caps.len() == 2 {
        Branch::SingleSiding
    } else if slack >= 0 {
        Branch::InequalityHolds
    } else {
        Branch::InequalityFails
    };
    verdict(branch, slack)
}

/// The largest wagon count for which a natural puzzle on this track layout can
/// always be solved. Layouts where only a single wagon works return 1.
pub fn max_wagons(headshunt: usize, sidings: &[usize]) -> usize {
    let s = sidings.len();
    if headshunt == 0 || s == 0 || s == 1 || (headshunt == 1 && s == 2) {
        return 1;
    }
    let total = headshunt - 1 + sidings.iter().sum::<usize>();
    let largest = sidings.iter().copied().fold(headshunt - 1, usize::max);
    (total - largest).max(1)
}

/// True when the bottom card of pile `j` can never move: the other piles
/// cannot hold all remaining cards once it leaves.
pub fn immovable_bottom(spec: &CardsSpec, j: usize) -> bool {
    let others: usize = spec.capacities().iter().enumerate().filter(|&(i, _)| i != j).map(|(_, &m)| m).sum();
    others + 1 <= spec.cards()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn spec(w: usize, h: usize, m: &[usize]) -> PuzzleSpec {
        PuzzleSpec::new(w, h, m.to_vec()).unwrap()
    }

    #[test]
    fn classic_capacity_limits() {
        let v = inglenook_solvable(&spec(8, 3, &[3, 3, 5]));
        assert!(v.solvable);
        assert_eq!(v.slack, 0);
        assert_eq!(v.branch, Branch::InequalityHolds);
        let v = inglenook_solvable(&spec(9, 3, &[3, 3, 5]));
        assert!(!v.solvable);
        assert_eq!(v.branch, Branch::InequalityFails);
        assert_eq!(v.slack, -1);
    }

    #[test]
    fn larger_layout() {
        assert!(inglenook_solvable(&spec(12, 4, &[4, 5, 6])).solvable);
        assert!(!inglenook_solvable(&spec(13, 4, &[4, 5, 6])).solvable);
        assert_eq!(max_wagons(4, &[4, 5, 6]), 12);
        assert_eq!(max_wagons(3, &[3, 3, 5]), 8);
    }

    #[test]
    fn degenerate_branches() {
        let v = inglenook_solvable(&spec(1, 1, &[1]));
        assert_eq!((v.solvable, v.branch), (true, Branch::SingleItem));
        let v = inglenook_solvable(&spec(2, 5, &[5]));
        assert_eq!((v.solvable, v.branch), (false, Branch::SingleSiding));
        let v = inglenook_solvable(&spec(3, 1, &[2, 2]));
        assert_eq!((v.solvable, v.branch), (false, Branch::UnitHeadshuntTwoSidings));
        assert_eq!(max_wagons(1, &[1, 1]), 1);
        assert_eq!(max_wagons(5, &[9]), 1);
    }

    #[test]
    fn headshunt_dominates_the_maximum() {
        // max{h-1, m} = h-1 = 4; 4 + 3 >= w + 4 allows w = 3.
        assert_eq!(max_wagons(5, &[1, 2]), 3);
        assert!(inglenook_solvable(&spec(3, 5, &[1, 2])).solvable);
        assert!(!inglenook_solvable(&spec(4, 5, &[1, 2])).solvable);
    }

    #[test]
    fn cards_branches() {
        let c = |w, m: &[usize]| CardsSpec::new(w, m.to_vec()).unwrap();
        assert_eq!(cards_connected(&c(2, &[2, 2])).branch, Branch::SingleSiding);
        assert!(!cards_connected(&c(2, &[2, 2])).solvable);
        assert!(cards_connected(&c(1, &[1, 1])).solvable);
        assert!(cards_connected(&c(1, &[3])).solvable);
        assert!(!cards_connected(&c(2, &[3])).solvable);
        let v = cards_connected(&c(8, &[2, 3, 3, 5]));
        assert!(v.solvable);
        assert_eq!(v.slack, 0);
        assert!(!cards_connected(&c(9, &[2, 3, 3, 5])).solvable);
    }

    #[test]
    fn immovable_bottom_card() {
        let c = CardsSpec::new(9, vec![2, 3, 3, 5]).unwrap();
        assert!(immovable_bottom(&c, 3));
        let c = CardsSpec::new(8, vec![2, 3, 3, 5]).unwrap();
        assert!(!immovable_bottom(&c, 3));
        let c = CardsSpec::new(1, vec![1, 1]).unwrap();
        assert!(!immovable_bottom(&c, 0));
    }

    #[test]
    fn slack_formula() {
        for h in 1..5 {
            for a in 1..5 {
                for b in 1..5 {
                    for w in 1..(h + a + b) {
                        let v = inglenook_solvable(&spec(w, h, &[a, b]));
                        let expected = (h - 1 + a + b) as i64 - (w + (h - 1).max(a).max(b)) as i64;
                        assert_eq!(v.slack, expected);
                    }
                }
            }
        }
    }
}
