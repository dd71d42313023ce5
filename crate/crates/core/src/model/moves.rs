use alloc::vec::Vec;
use core::fmt;

use super::{Position, PositionError, PuzzleSpec, TrackName};

/// Direction of a shunting move, ordered so that pulls sort before pushes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    /// Siding to headshunt.
    Pull,
    /// Headshunt to siding.
    Push,
}

/// One edge of the inglenook graph: the engine enters siding `siding`
/// (1-based) and either collects or leaves `count` wagons at the points end.
///
/// The derived ordering is `(siding, direction, count)`, which is the
/// tie-break used wherever one move has to be preferred over another.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ShuntMove {
    pub siding: usize,
    pub direction: Direction,
    pub count: usize,
}

impl ShuntMove {
    pub const fn pull(count: usize, siding: usize) -> Self {
        ShuntMove { siding, direction: Direction::Pull, count }
    }

    pub const fn push(count: usize, siding: usize) -> Self {
        ShuntMove { siding, direction: Direction::Push, count }
    }

    /// The move that undoes this one.
    pub const fn inverse(self) -> Self {
        let direction = match self.direction {
            Direction::Pull => Direction::Push,
            Direction::Push => Direction::Pull,
        };
        ShuntMove { direction, ..self }
    }
}

impl fmt::Display for ShuntMove {
    /// `PULL <k> S<r>` / `PUSH <k> S<r>`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verb = match self.direction {
            Direction::Pull => "PULL",
            Direction::Push => "PUSH",
        };
        write!(f, "{verb} {} S{}", self.count, self.siding)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum MoveError {
    #[error("invalid source position: {0}")]
    Position(#[from] PositionError),
    #[error("siding S{siding} does not exist ({sidings} sidings)")]
    NoSuchSiding { siding: usize, sidings: usize },
    #[error("a move must transfer at least one wagon")]
    ZeroCount,
    #[error("{track} holds {available} wagons, cannot transfer {requested}")]
    NotEnoughWagons { track: TrackName, available: usize, requested: usize },
    #[error("{track} has room for {free} more wagons, cannot receive {requested}")]
    NoRoom { track: TrackName, free: usize, requested: usize },
}

/// Every legal move from `p`, sorted by `(siding, direction, count)`.
pub fn legal_moves(spec: &PuzzleSpec, p: &Position) -> Result<Vec<ShuntMove>, PositionError> {
    spec.check_position(p)?;
    let head = p.headshunt().len();
    let head_free = spec.headshunt() - head;
    let mut out = Vec::new();
    for (i, &cap) in spec.sidings().iter().enumerate() {
        let r = i + 1;
        let len = p.siding(r).len();
        for k in 1..=head_free.min(len) {
            out.push(ShuntMove::pull(k, r));
        }
        for k in 1..=head.min(cap - len) {
            out.push(ShuntMove::push(k, r));
        }
    }
    Ok(out)
}

/// Applies `mv` to `p`.
///
/// The concatenation of the headshunt (engine to points) and the siding
/// (points to buffer) is unchanged; only the split point moves.
pub fn apply_move(spec: &PuzzleSpec, p: &Position, mv: ShuntMove) -> Result<Position, MoveError> {
    spec.check_position(p)?;
    check_move(spec, p, mv)?;
    let mut next = p.clone();
    apply_unchecked(next.tracks_mut(), mv);
    Ok(next)
}

pub(crate) fn check_move(spec: &PuzzleSpec, p: &Position, mv: ShuntMove) -> Result<(), MoveError> {
    let s = spec.siding_count();
    if mv.siding == 0 || mv.siding > s {
        return Err(MoveError::NoSuchSiding { siding: mv.siding, sidings: s });
    }
    if mv.count == 0 {
        return Err(MoveError::ZeroCount);
    }
    let r = mv.siding;
    let (src, dst) = match mv.direction {
        Direction::Pull => (r, 0),
        Direction::Push => (0, r),
    };
    let available = p.tracks()[src].len();
    if available < mv.count {
        return Err(MoveError::NotEnoughWagons { track: TrackName(src), available, requested: mv.count });
    }
    let free = spec.capacity(dst) - p.tracks()[dst].len();
    if free < mv.count {
        return Err(MoveError::NoRoom { track: TrackName(dst), free, requested: mv.count });
    }
    Ok(())
}

pub(crate) fn apply_unchecked(tracks: &mut [Vec<super::WagonId>], mv: ShuntMove) {
    let r = mv.siding;
    let k = mv.count;
    match mv.direction {
        Direction::Pull => {
            let block: Vec<_> = tracks[r].drain(..k).collect();
            tracks[0].extend(block);
        }
        Direction::Push => {
            let at = tracks[0].len() - k;
            let block: Vec<_> = tracks[0].drain(at..).collect();
            tracks[r].splice(0..0, block);
        }
    }
}

/// A position is convertible when its headshunt has at least one free space.
pub fn is_convertible(spec: &PuzzleSpec, p: &Position) -> bool {
    p.headshunt().len() < spec.headshunt()
}
