//! Declarative sets of positions: finishing sets, starting sets and
//! generator inputs.
//!
//! A [`GoalPattern`] is a list of alternatives; a position matches when some
//! alternative accepts every track. Each track constraint is an exact
//! sequence, a set in any order, empty, or unconstrained.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::layout::Layout;
use crate::model::{Position, PuzzleSpec, TrackName, WagonId};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TrackConstraint {
    Exact(Vec<WagonId>),
    /// The track holds exactly this set of wagons, in any order.
    AnyOrder(Vec<WagonId>),
    Empty,
    Any,
}

impl TrackConstraint {
    pub fn accepts(&self, track: &[WagonId]) -> bool {
        match self {
            TrackConstraint::Exact(seq) => seq.as_slice() == track,
            TrackConstraint::AnyOrder(set) => set.len() == track.len() && track.iter().all(|w| set.contains(w)),
            TrackConstraint::Empty => track.is_empty(),
            TrackConstraint::Any => true,
        }
    }

    pub(crate) fn accepts_bytes(&self, track: &[u8]) -> bool {
        match self {
            TrackConstraint::Exact(seq) => {
                seq.len() == track.len() && seq.iter().zip(track).all(|(w, &b)| w.get() == b)
            }
            TrackConstraint::AnyOrder(set) => {
                set.len() == track.len() && track.iter().all(|&b| set.iter().any(|w| w.get() == b))
            }
            TrackConstraint::Empty => track.is_empty(),
            TrackConstraint::Any => true,
        }
    }

    fn named(&self) -> &[WagonId] {
        match self {
            TrackConstraint::Exact(v) | TrackConstraint::AnyOrder(v) => v,
            _ => &[],
        }
    }

    fn is_any(&self) -> bool {
        matches!(self, TrackConstraint::Any)
    }
}

impl fmt::Display for TrackConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, v: &[WagonId]| -> fmt::Result {
            for (i, w) in v.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{w}")?;
            }
            Ok(())
        };
        match self {
            TrackConstraint::Exact(v) => {
                f.write_str("= [")?;
                list(f, v)?;
                f.write_str("]")
            }
            TrackConstraint::AnyOrder(v) => {
                f.write_str("~ {")?;
                list(f, v)?;
                f.write_str("}")
            }
            TrackConstraint::Empty => f.write_str("= []"),
            TrackConstraint::Any => f.write_str("= *"),
        }
    }
}

/// One constraint per track, headshunt first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alternative {
    tracks: Vec<TrackConstraint>,
}

impl Alternative {
    pub fn new(tracks: Vec<TrackConstraint>) -> Self {
        Alternative { tracks }
    }

    /// Every track unconstrained.
    pub fn any(track_count: usize) -> Self {
        Alternative { tracks: vec![TrackConstraint::Any; track_count] }
    }

    /// Sets the constraint on one track; returns `self` for chaining.
    pub fn with(mut self, track: usize, c: TrackConstraint) -> Self {
        self.tracks[track] = c;
        self
    }

    pub fn tracks(&self) -> &[TrackConstraint] {
        &self.tracks
    }

    pub fn matches(&self, p: &Position) -> bool {
        self.tracks.len() == p.tracks().len() && self.tracks.iter().zip(p.tracks()).all(|(c, t)| c.accepts(t))
    }

    /// Wagons not named by any constraint, ascending.
    pub fn free_wagons(&self, spec: &PuzzleSpec) -> Vec<WagonId> {
        let mut named = vec![false; spec.wagons()];
        for w in self.tracks.iter().flat_map(|c| c.named()) {
            if let Some(slot) = named.get_mut(w.index()) {
                *slot = true;
            }
        }
        (0..spec.wagons()).filter(|&i| !named[i]).map(WagonId::from_index).collect()
    }

    /// Indices of the unconstrained tracks.
    pub fn open_tracks(&self) -> Vec<usize> {
        (0..self.tracks.len()).filter(|&t| self.tracks[t].is_any()).collect()
    }

    /// Every reason this alternative cannot match a valid position of `spec`.
    pub fn conflicts(&self, spec: &PuzzleSpec) -> Vec<Conflict> {
        let mut out = Vec::new();
        if self.tracks.len() != spec.track_count() {
            out.push(Conflict::TrackCount { expected: spec.track_count(), found: self.tracks.len() });
            return out;
        }
        let mut owner: Vec<Option<usize>> = vec![None; spec.wagons()];
        for (t, c) in self.tracks.iter().enumerate() {
            let named = c.named();
            if named.len() > spec.capacity(t) {
                out.push(Conflict::OverCapacity {
                    track: TrackName(t),
                    needed: named.len(),
                    capacity: spec.capacity(t),
                });
            }
            for &w in named {
                match owner.get_mut(w.index()) {
                    None => out.push(Conflict::UnknownWagon(w)),
                    Some(Some(first)) => {
                        out.push(Conflict::Repeated { wagon: w, first: TrackName(*first), second: TrackName(t) })
                    }
                    Some(slot) => *slot = Some(t),
                }
            }
        }
        let free = self.free_wagons(spec).len();
        let room: usize = self.open_tracks().iter().map(|&t| spec.capacity(t)).sum();
        if free > room {
            out.push(Conflict::NoRoomForRest { free, room });
        }
        out
    }

    /// Number of valid positions matching this alternative.
    pub fn count(&self, spec: &PuzzleSpec) -> u128 {
        if !self.conflicts(spec).is_empty() {
            return 0;
        }
        let mut total = 1u128;
        for c in &self.tracks {
            if let TrackConstraint::AnyOrder(set) = c {
                total *= factorial(set.len());
            }
        }
        let free = self.free_wagons(spec).len();
        let caps: Vec<usize> = self.open_tracks().iter().map(|&t| spec.capacity(t)).collect();
        total * factorial(free) * compositions(&caps, free).len() as u128
    }

    /// The matching position with the smallest canonical encoding, if any.
    pub fn least_match(&self, spec: &PuzzleSpec) -> Option<Position> {
        if !self.conflicts(spec).is_empty() {
            return None;
        }
        let mut free = self.free_wagons(spec).into_iter().peekable();
        let mut remaining = free.len();
        let open = self.open_tracks();
        let mut tracks = Vec::with_capacity(self.tracks.len());
        for (t, c) in self.tracks.iter().enumerate() {
            let track = match c {
                TrackConstraint::Exact(seq) => seq.clone(),
                TrackConstraint::AnyOrder(set) => {
                    let mut v = set.clone();
                    v.sort_unstable();
                    v
                }
                TrackConstraint::Empty => Vec::new(),
                TrackConstraint::Any => {
                    // Ending the track (a 0 separator) beats any label, so take
                    // only as many wagons as later open tracks cannot absorb.
                    let later: usize = open.iter().filter(|&&o| o > t).map(|&o| spec.capacity(o)).sum();
                    let take = remaining.saturating_sub(later);
                    remaining -= take;
                    (0..take).map(|_| free.next().unwrap()).collect()
                }
            };
            tracks.push(track);
        }
        Some(Position::new(tracks))
    }

    /// Calls `f` on every matching position.
    pub fn for_each_match(&self, spec: &PuzzleSpec, mut f: impl FnMut(&Position)) {
        if !self.conflicts(spec).is_empty() {
            return;
        }
        let free = self.free_wagons(spec);
        let open = self.open_tracks();
        let caps: Vec<usize> = open.iter().map(|&t| spec.capacity(t)).collect();
        let set_tracks: Vec<usize> =
            (0..self.tracks.len()).filter(|&t| matches!(self.tracks[t], TrackConstraint::AnyOrder(_))).collect();

        let mut base: Vec<Vec<WagonId>> = self
            .tracks
            .iter()
            .map(|c| match c {
                TrackConstraint::Exact(seq) => seq.clone(),
                TrackConstraint::AnyOrder(set) => {
                    let mut v = set.clone();
                    v.sort_unstable();
                    v
                }
                _ => Vec::new(),
            })
            .collect();
        let splits = compositions(&caps, free.len());
        let mut pos = Position::new(base.clone());
        loop {
            let mut order = free.clone();
            loop {
                for split in &splits {
                    let mut at = 0;
                    for (&t, &n) in open.iter().zip(split) {
                        let track = &mut pos.tracks_mut()[t];
                        track.clear();
                        track.extend_from_slice(&order[at..at + n]);
                        at += n;
                    }
                    for &t in &set_tracks {
                        pos.tracks_mut()[t].clone_from(&base[t]);
                    }
                    f(&pos);
                }
                if !next_permutation(&mut order) {
                    break;
                }
            }
            // Advance the any-order tracks like an odometer of permutations.
            let mut advanced = false;
            for &t in &set_tracks {
                if next_permutation(&mut base[t]) {
                    advanced = true;
                    break;
                }
            }
            if !advanced {
                break;
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Conflict {
    TrackCount { expected: usize, found: usize },
    OverCapacity { track: TrackName, needed: usize, capacity: usize },
    UnknownWagon(WagonId),
    Repeated { wagon: WagonId, first: TrackName, second: TrackName },
    NoRoomForRest { free: usize, room: usize },
}

impl fmt::Display for Conflict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Conflict::TrackCount { expected, found } => write!(f, "{found} track clauses for {expected} tracks"),
            Conflict::OverCapacity { track, needed, capacity } => {
                write!(f, "{track} must hold {needed} wagons but its capacity is {capacity}")
            }
            Conflict::UnknownWagon(w) => write!(f, "wagon {w} is not part of this puzzle"),
            Conflict::Repeated { wagon, first, second } => {
                write!(f, "wagon {wagon} is required on both {first} and {second}")
            }
            Conflict::NoRoomForRest { free, room } => {
                write!(f, "{free} unconstrained wagons but only {room} spaces on unconstrained tracks")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum PatternError {
    #[error("a pattern needs at least one alternative")]
    NoAlternatives,
    #[error("no alternative can be satisfied: {}", describe(.0))]
    Unsatisfiable(Vec<(usize, Conflict)>),
}

fn describe(conflicts: &[(usize, Conflict)]) -> String {
    use core::fmt::Write;
    let mut s = String::new();
    for (i, (alt, c)) in conflicts.iter().enumerate() {
        if i > 0 {
            s.push_str("; ");
        }
        let _ = write!(s, "alternative {}: {c}", alt + 1);
    }
    s
}

/// A set of positions described by alternatives.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GoalPattern {
    alternatives: Vec<Alternative>,
}

impl GoalPattern {
    pub fn new(alternatives: Vec<Alternative>) -> Result<Self, PatternError> {
        if alternatives.is_empty() {
            return Err(PatternError::NoAlternatives);
        }
        Ok(GoalPattern { alternatives })
    }

    /// The single position `p`.
    pub fn exact(p: &Position) -> Self {
        let tracks = p
            .tracks()
            .iter()
            .map(|t| if t.is_empty() { TrackConstraint::Empty } else { TrackConstraint::Exact(t.clone()) })
            .collect();
        GoalPattern { alternatives: vec![Alternative::new(tracks)] }
    }

    /// Every position.
    pub fn any(spec: &PuzzleSpec) -> Self {
        GoalPattern { alternatives: vec![Alternative::any(spec.track_count())] }
    }

    pub fn alternatives(&self) -> &[Alternative] {
        &self.alternatives
    }

    pub fn matches(&self, p: &Position) -> bool {
        self.alternatives.iter().any(|a| a.matches(p))
    }

    pub(crate) fn matches_layout(&self, l: &Layout) -> bool {
        self.alternatives.iter().any(|a| {
            a.tracks.len() == l.track_count() && a.tracks.iter().enumerate().all(|(t, c)| c.accepts_bytes(l.track(t)))
        })
    }

    /// Ok when at least one alternative is satisfiable; otherwise lists the
    /// conflicts of every alternative.
    pub fn check(&self, spec: &PuzzleSpec) -> Result<(), PatternError> {
        let mut all = Vec::new();
        for (i, a) in self.alternatives.iter().enumerate() {
            let c = a.conflicts(spec);
            if c.is_empty() {
                return Ok(());
            }
            all.extend(c.into_iter().map(|c| (i, c)));
        }
        Err(PatternError::Unsatisfiable(all))
    }

    /// The matching position with the smallest canonical encoding.
    pub fn least_match(&self, spec: &PuzzleSpec) -> Result<Position, PatternError> {
        self.check(spec)?;
        let best = self
            .alternatives
            .iter()
            .filter_map(|a| a.least_match(spec))
            .min_by_key(|p| crate::model::canonical_encoding(spec, p));
        Ok(best.expect("a satisfiable alternative has a least match"))
    }

    /// Calls `f` once for every matching position (positions matched by
    /// several alternatives are reported once).
    pub fn for_each_match(&self, spec: &PuzzleSpec, mut f: impl FnMut(&Position)) {
        for (i, a) in self.alternatives.iter().enumerate() {
            let earlier = &self.alternatives[..i];
            a.for_each_match(spec, |p| {
                if !earlier.iter().any(|e| e.matches(p)) {
                    f(p);
                }
            });
        }
    }

    /// True when relabelling wagons maps the pattern onto itself, i.e. it
    /// names no wagon at all.
    pub fn is_label_free(&self) -> bool {
        self.alternatives.iter().all(|a| a.tracks.iter().all(|c| c.named().is_empty()))
    }
}

/// All ways to split `total` items over bins with capacities `caps`, in
/// lexicographic order of the bin sizes.
pub fn compositions(caps: &[usize], total: usize) -> Vec<Vec<usize>> {
    fn rec(caps: &[usize], left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if caps.is_empty() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let rest: usize = caps[1..].iter().sum();
        let lo = left.saturating_sub(rest);
        for n in lo..=caps[0].min(left) {
            cur.push(n);
            rec(&caps[1..], left - n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(caps, total, &mut Vec::new(), &mut out);
    out
}

pub(crate) fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Rearranges `v` into the next permutation in lexicographic order; returns
/// false (leaving `v` sorted ascending) after the last one.
pub(crate) fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        v.reverse();
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}
