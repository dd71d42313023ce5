use alloc::vec::Vec;
use core::fmt;

use super::{check_partition, Position, PositionError, PuzzleSpec, SpecError, WagonId};

/// Capacities of a cards-in-piles instance: `cards` cards over piles
/// `0..capacities.len()`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CardsSpec {
    cards: usize,
    capacities: Vec<usize>,
}

impl CardsSpec {
    pub fn new(cards: usize, capacities: Vec<usize>) -> Result<Self, SpecError> {
        if cards == 0 {
            return Err(SpecError::NoWagons);
        }
        if cards > super::MAX_WAGONS {
            return Err(SpecError::TooManyWagons(cards));
        }
        if capacities.is_empty() {
            return Err(SpecError::NoPiles);
        }
        if let Some(pile) = capacities.iter().position(|&m| m == 0) {
            return Err(SpecError::ZeroPile { pile });
        }
        let room = capacities.iter().sum::<usize>();
        if cards > room {
            return Err(SpecError::CardsOverflow { cards, room });
        }
        Ok(CardsSpec { cards, capacities })
    }

    pub fn cards(&self) -> usize {
        self.cards
    }

    pub fn capacities(&self) -> &[usize] {
        &self.capacities
    }

    pub fn pile_count(&self) -> usize {
        self.capacities.len()
    }

    /// Free spaces summed over all piles; the same in every state.
    pub fn total_space(&self) -> usize {
        self.capacities.iter().sum::<usize>() - self.cards
    }

    pub fn check_state(&self, c: &CardsState) -> Result<(), PositionError> {
        if c.piles.len() != self.capacities.len() {
            return Err(PositionError::TrackCount { expected: self.capacities.len(), found: c.piles.len() });
        }
        for (i, (pile, &cap)) in c.piles.iter().zip(&self.capacities).enumerate() {
            if pile.len() > cap {
                return Err(PositionError::Overfull { track: super::TrackName(i), len: pile.len(), capacity: cap });
            }
        }
        check_partition(self.cards, c.piles.iter())
    }
}

/// A vertex of the cards-in-piles graph; each pile is listed bottom to top.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CardsState {
    piles: Vec<Vec<WagonId>>,
}

impl CardsState {
    pub fn new(piles: Vec<Vec<WagonId>>) -> Self {
        CardsState { piles }
    }

    pub fn from_labels(piles: &[&[u8]]) -> Self {
        CardsState { piles: piles.iter().map(|p| super::wagons(p)).collect() }
    }

    pub fn piles(&self) -> &[Vec<WagonId>] {
        &self.piles
    }

    pub fn into_piles(self) -> Vec<Vec<WagonId>> {
        self.piles
    }
}

impl fmt::Display for CardsState {
    /// `P0:[..]|P1:[..]`, each pile bottom to top.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, pile) in self.piles.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            write!(f, "P{i}:[")?;
            for (j, c) in pile.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{c}")?;
            }
            f.write_str("]")?;
        }
        Ok(())
    }
}

/// Moves the top card of pile `from` onto pile `to`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CardMove {
    pub from: usize,
    pub to: usize,
}

impl CardMove {
    pub const fn new(from: usize, to: usize) -> Self {
        CardMove { from, to }
    }

    pub const fn inverse(self) -> Self {
        CardMove { from: self.to, to: self.from }
    }
}

impl fmt::Display for CardMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CARD {} -> {}", self.from, self.to)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CardMoveError {
    #[error("invalid source state: {0}")]
    State(#[from] PositionError),
    #[error("pile {pile} does not exist ({piles} piles)")]
    NoSuchPile { pile: usize, piles: usize },
    #[error("a card move needs distinct piles, got {0} -> {0}")]
    SamePile(usize),
    #[error("pile {0} is empty")]
    EmptyPile(usize),
    #[error("pile {0} is full")]
    FullPile(usize),
}

/// All single-card moves from `c`, sorted by `(from, to)`.
pub fn legal_card_moves(spec: &CardsSpec, c: &CardsState) -> Result<Vec<CardMove>, PositionError> {
    spec.check_state(c)?;
    let caps = spec.capacities();
    let mut out = Vec::new();
    for from in 0..caps.len() {
        if c.piles[from].is_empty() {
            continue;
        }
        for to in 0..caps.len() {
            if to != from && c.piles[to].len() < caps[to] {
                out.push(CardMove::new(from, to));
            }
        }
    }
    Ok(out)
}

pub fn apply_card_move(spec: &CardsSpec, c: &CardsState, mv: CardMove) -> Result<CardsState, CardMoveError> {
    spec.check_state(c)?;
    check_card_move(spec.capacities(), &c.piles, mv)?;
    let mut next = c.clone();
    let card = next.piles[mv.from].pop().unwrap();
    next.piles[mv.to].push(card);
    Ok(next)
}

pub(crate) fn check_card_move(caps: &[usize], piles: &[Vec<WagonId>], mv: CardMove) -> Result<(), CardMoveError> {
    let n = caps.len();
    for pile in [mv.from, mv.to] {
        if pile >= n {
            return Err(CardMoveError::NoSuchPile { pile, piles: n });
        }
    }
    if mv.from == mv.to {
        return Err(CardMoveError::SamePile(mv.from));
    }
    if piles[mv.from].is_empty() {
        return Err(CardMoveError::EmptyPile(mv.from));
    }
    if piles[mv.to].len() >= caps[mv.to] {
        return Err(CardMoveError::FullPile(mv.to));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ConvertError {
    #[error("position is not convertible: the headshunt is full")]
    NotConvertible,
    #[error(transparent)]
    Invalid(#[from] PositionError),
}

impl PuzzleSpec {
    /// The cards-in-piles instance whose states mirror convertible positions.
    ///
    /// With `h > 1` pile 0 stands for the headshunt with capacity `h - 1`
    /// and pile `i` for siding `i`. With `h = 1` a convertible position has an
    /// empty headshunt, so pile `i - 1` stands for siding `i`.
    pub fn cards_spec(&self) -> CardsSpec {
        let mut caps = Vec::with_capacity(self.track_count());
        if self.headshunt() > 1 {
            caps.push(self.headshunt() - 1);
        }
        caps.extend_from_slice(self.sidings());
        CardsSpec { cards: self.wagons(), capacities: caps }
    }

    /// Track index of the first card pile (1 when the headshunt is dropped).
    pub(crate) fn pile_offset(&self) -> usize {
        usize::from(self.headshunt() == 1)
    }
}

/// Maps a convertible position to its card state.
///
/// Siding wagons are stacked with the wagon at the buffer stop on the bottom;
/// headshunt wagons with the wagon next to the engine on the bottom.
pub fn to_cards(spec: &PuzzleSpec, p: &Position) -> Result<CardsState, ConvertError> {
    spec.check_position(p)?;
    if !super::is_convertible(spec, p) {
        return Err(ConvertError::NotConvertible);
    }
    let offset = spec.pile_offset();
    let piles = p
        .tracks()
        .iter()
        .enumerate()
        .skip(offset)
        .map(|(t, track)| {
            let mut pile = track.clone();
            if t > 0 {
                pile.reverse();
            }
            pile
        })
        .collect();
    Ok(CardsState { piles })
}

/// Inverse of [`to_cards`]; the result is always convertible.
pub fn from_cards(spec: &PuzzleSpec, c: &CardsState) -> Result<Position, PositionError> {
    spec.cards_spec().check_state(c)?;
    let offset = spec.pile_offset();
    let mut tracks = Vec::with_capacity(spec.track_count());
    if offset == 1 {
        tracks.push(Vec::new());
    }
    for (i, pile) in c.piles.iter().enumerate() {
        let mut track = pile.clone();
        if i + offset > 0 {
            track.reverse();
        }
        tracks.push(track);
    }
    Ok(Position::new(tracks))
}
