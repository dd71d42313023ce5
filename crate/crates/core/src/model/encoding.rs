use alloc::vec::Vec;

use super::{Position, PositionError, PuzzleSpec, WagonId};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum EncodingError {
    #[error("expected {expected} bytes, found {found}")]
    Length { expected: usize, found: usize },
    #[error("expected {expected} track separators, found {found}")]
    Separators { expected: usize, found: usize },
    #[error("decoded position is invalid: {0}")]
    Invalid(#[from] PositionError),
}

/// Fixed-width byte encoding of a position: the wagon labels of every track in
/// track order, with a 0 byte between consecutive tracks.
///
/// The length is always `w + s`. Byte-wise comparison of encodings is the
/// canonical order on positions used for tie-breaks.
pub fn canonical_encoding(spec: &PuzzleSpec, p: &Position) -> Vec<u8> {
    let mut out = Vec::with_capacity(spec.wagons() + spec.siding_count());
    for (t, track) in p.tracks().iter().enumerate() {
        if t > 0 {
            out.push(0);
        }
        out.extend(track.iter().map(|w| w.get()));
    }
    out
}

pub fn decode_encoding(spec: &PuzzleSpec, bytes: &[u8]) -> Result<Position, EncodingError> {
    let expected = spec.wagons() + spec.siding_count();
    if bytes.len() != expected {
        return Err(EncodingError::Length { expected, found: bytes.len() });
    }
    let tracks: Vec<Vec<WagonId>> =
        bytes.split(|&b| b == 0).map(|t| t.iter().map(|&b| WagonId::new(b).unwrap()).collect()).collect();
    if tracks.len() != spec.track_count() {
        return Err(EncodingError::Separators { expected: spec.siding_count(), found: tracks.len() - 1 });
    }
    let p = Position::new(tracks);
    spec.check_position(&p)?;
    Ok(p)
}
