//! Domain types for inglenook and cards-in-piles puzzles.

use alloc::vec::Vec;
use core::fmt;

mod cards;
mod encoding;
mod moves;

pub(crate) use cards::check_card_move;
pub use cards::{
    apply_card_move, from_cards, legal_card_moves, to_cards, CardMove, CardMoveError, CardsSpec, CardsState,
    ConvertError,
};
pub use encoding::{canonical_encoding, decode_encoding, EncodingError};
pub use moves::{apply_move, is_convertible, legal_moves, Direction, MoveError, ShuntMove};

/// Largest wagon count supported; labels are stored in a byte and 0 is reserved.
pub const MAX_WAGONS: usize = 255;

/// A wagon (or card) label. Canonical labels run from 1 to the wagon count.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WagonId(u8);

impl WagonId {
    /// Returns `None` for 0, which is reserved as a track separator in encodings.
    pub const fn new(label: u8) -> Option<Self> {
        if label == 0 {
            None
        } else {
            Some(WagonId(label))
        }
    }

    pub const fn get(self) -> u8 {
        self.0
    }

    pub(crate) const fn index(self) -> usize {
        self.0 as usize - 1
    }

    pub(crate) const fn from_index(i: usize) -> Self {
        WagonId(i as u8 + 1)
    }
}

impl fmt::Display for WagonId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Shorthand for building a track from small integers in tests and fixtures.
///
/// Panics on a zero label.
pub fn wagons(labels: &[u8]) -> Vec<WagonId> {
    labels.iter().map(|&l| WagonId::new(l).expect("wagon labels start at 1")).collect()
}

/// Human-readable track name: `H` for the headshunt, `S<i>` for siding `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrackName(pub usize);

impl fmt::Display for TrackName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 == 0 {
            f.write_str("H")
        } else {
            write!(f, "S{}", self.0)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SpecError {
    #[error("wagon count must be positive")]
    NoWagons,
    #[error("wagon count {0} exceeds the supported maximum of {MAX_WAGONS}")]
    TooManyWagons(usize),
    #[error("headshunt capacity must be positive")]
    ZeroHeadshunt,
    #[error("at least one siding is required")]
    NoSidings,
    #[error("siding S{siding} has zero capacity")]
    ZeroSiding { siding: usize },
    #[error("{wagons} wagons do not leave a free space: headshunt and sidings hold {room}")]
    NoFreeSpace { wagons: usize, room: usize },
    #[error("at least one pile is required")]
    NoPiles,
    #[error("pile {pile} has zero capacity")]
    ZeroPile { pile: usize },
    #[error("{cards} cards exceed the total pile capacity {room}")]
    CardsOverflow { cards: usize, room: usize },
}

/// Capacities of one inglenook instance: `w` wagons, a headshunt holding `h`
/// wagons (the engine is not counted) and `s` sidings.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PuzzleSpec {
    wagons: usize,
    headshunt: usize,
    sidings: Vec<usize>,
}

impl PuzzleSpec {
    pub fn new(wagons: usize, headshunt: usize, sidings: Vec<usize>) -> Result<Self, SpecError> {
        if wagons == 0 {
            return Err(SpecError::NoWagons);
        }
        if wagons > MAX_WAGONS {
            return Err(SpecError::TooManyWagons(wagons));
        }
        if headshunt == 0 {
            return Err(SpecError::ZeroHeadshunt);
        }
        if sidings.is_empty() {
            return Err(SpecError::NoSidings);
        }
        if let Some(i) = sidings.iter().position(|&m| m == 0) {
            return Err(SpecError::ZeroSiding { siding: i + 1 });
        }
        let room = headshunt + sidings.iter().sum::<usize>();
        if wagons >= room {
            return Err(SpecError::NoFreeSpace { wagons, room });
        }
        Ok(PuzzleSpec { wagons, headshunt, sidings })
    }

    /// The classic layout: 8 wagons, headshunt 3, sidings 3, 3 and 5.
    pub fn classic() -> Self {
        PuzzleSpec::new(8, 3, alloc::vec![3, 3, 5]).unwrap()
    }

    pub fn wagons(&self) -> usize {
        self.wagons
    }

    pub fn headshunt(&self) -> usize {
        self.headshunt
    }

    pub fn sidings(&self) -> &[usize] {
        &self.sidings
    }

    pub fn siding_count(&self) -> usize {
        self.sidings.len()
    }

    /// Number of tracks, headshunt included.
    pub fn track_count(&self) -> usize {
        self.sidings.len() + 1
    }

    /// Capacity of track `t` (0 is the headshunt).
    pub fn capacity(&self, track: usize) -> usize {
        if track == 0 {
            self.headshunt
        } else {
            self.sidings[track - 1]
        }
    }

    pub(crate) fn capacities(&self) -> Vec<usize> {
        core::iter::once(self.headshunt).chain(self.sidings.iter().copied()).collect()
    }

    /// Validates every position invariant against this spec.
    pub fn check_position(&self, p: &Position) -> Result<(), PositionError> {
        if p.tracks.len() != self.track_count() {
            return Err(PositionError::TrackCount { expected: self.track_count(), found: p.tracks.len() });
        }
        for (t, track) in p.tracks.iter().enumerate() {
            let cap = self.capacity(t);
            if track.len() > cap {
                return Err(PositionError::Overfull { track: TrackName(t), len: track.len(), capacity: cap });
            }
        }
        check_partition(self.wagons, p.tracks.iter())
    }
}

/// Checks that `tracks` hold each label 1..=w exactly once.
pub(crate) fn check_partition<'a>(
    w: usize,
    tracks: impl Iterator<Item = &'a Vec<WagonId>>,
) -> Result<(), PositionError> {
    let mut seen = alloc::vec![false; w];
    for &id in tracks.flatten() {
        let i = id.index();
        if i >= w {
            return Err(PositionError::UnknownWagon(id));
        }
        if seen[i] {
            return Err(PositionError::DuplicateWagon(id));
        }
        seen[i] = true;
    }
    match seen.iter().position(|s| !s) {
        Some(i) => Err(PositionError::MissingWagon(WagonId::from_index(i))),
        None => Ok(()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PositionError {
    #[error("expected {expected} tracks, found {found}")]
    TrackCount { expected: usize, found: usize },
    #[error("track {track} holds {len} wagons but its capacity is {capacity}")]
    Overfull { track: TrackName, len: usize, capacity: usize },
    #[error("wagon {0} is not part of this puzzle")]
    UnknownWagon(WagonId),
    #[error("wagon {0} appears more than once")]
    DuplicateWagon(WagonId),
    #[error("wagon {0} is missing")]
    MissingWagon(WagonId),
}

/// A vertex of the inglenook graph.
///
/// `tracks[0]` is the headshunt read from the engine towards the points;
/// `tracks[i]` is siding `i` read from the points towards the buffer stop.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Position {
    tracks: Vec<Vec<WagonId>>,
}

impl Position {
    pub fn new(tracks: Vec<Vec<WagonId>>) -> Self {
        Position { tracks }
    }

    /// Builds a position from small integer labels, headshunt first.
    pub fn from_labels(tracks: &[&[u8]]) -> Self {
        Position { tracks: tracks.iter().map(|t| wagons(t)).collect() }
    }

    pub fn tracks(&self) -> &[Vec<WagonId>] {
        &self.tracks
    }

    pub fn headshunt(&self) -> &[WagonId] {
        &self.tracks[0]
    }

    /// Siding `i`, 1-based.
    pub fn siding(&self, i: usize) -> &[WagonId] {
        &self.tracks[i]
    }

    pub fn into_tracks(self) -> Vec<Vec<WagonId>> {
        self.tracks
    }

    pub(crate) fn tracks_mut(&mut self) -> &mut [Vec<WagonId>] {
        &mut self.tracks
    }
}

impl fmt::Display for Position {
    /// Renders in the one-line text format, e.g. `H:[1,6]|S1:[]|S2:[4,7,8]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (t, track) in self.tracks.iter().enumerate() {
            if t > 0 {
                f.write_str("|")?;
            }
            write!(f, "{}:[", TrackName(t))?;
            for (i, w) in track.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{w}")?;
            }
            f.write_str("]")?;
        }
        Ok(())
    }
}
