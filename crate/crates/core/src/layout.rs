//! Fixed-size state scratch used by the search engines.
//!
//! A [`Layout`] stores the tracks (or piles) of one state back to back with
//! their lengths, so successor generation never allocates. [`KeyCodec`] packs a
//! layout into a `u128` that is the canonical byte encoding compressed to a
//! fixed number of bits per symbol, most significant symbol first, so numeric
//! order on keys equals lexicographic order on encodings.

use alloc::vec::Vec;

use crate::model::{CardMove, ShuntMove, WagonId};

pub(crate) const MAX_SYMBOLS: usize = 64;
pub(crate) const MAX_TRACKS: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Layout {
    syms: [u8; MAX_SYMBOLS],
    lens: [u8; MAX_TRACKS],
    tracks: usize,
}

impl Layout {
    pub(crate) fn empty(tracks: usize) -> Self {
        debug_assert!(tracks <= MAX_TRACKS);
        Layout { syms: [0; MAX_SYMBOLS], lens: [0; MAX_TRACKS], tracks }
    }

    pub(crate) fn from_tracks(tracks: &[Vec<WagonId>]) -> Self {
        let mut l = Layout::empty(tracks.len());
        let mut at = 0;
        for (t, track) in tracks.iter().enumerate() {
            for w in track {
                l.syms[at] = w.get();
                at += 1;
            }
            l.lens[t] = track.len() as u8;
        }
        l
    }

    pub(crate) fn to_tracks(&self) -> Vec<Vec<WagonId>> {
        (0..self.tracks).map(|t| self.track(t).iter().map(|&b| WagonId::new(b).unwrap()).collect()).collect()
    }

    pub(crate) fn track_count(&self) -> usize {
        self.tracks
    }

    pub(crate) fn len(&self, t: usize) -> usize {
        self.lens[t] as usize
    }

    fn start(&self, t: usize) -> usize {
        self.lens[..t].iter().map(|&l| l as usize).sum()
    }

    pub(crate) fn track(&self, t: usize) -> &[u8] {
        let s = self.start(t);
        &self.syms[s..s + self.len(t)]
    }

    /// All labels in track order, without separators.
    pub(crate) fn symbols(&self) -> &[u8] {
        let n = self.start(self.tracks);
        &self.syms[..n]
    }

    pub(crate) fn lens(&self) -> &[u8] {
        &self.lens[..self.tracks]
    }

    pub(crate) fn from_parts(lens: &[u8], symbols: &[u8]) -> Self {
        let mut l = Layout::empty(lens.len());
        l.lens[..lens.len()].copy_from_slice(lens);
        l.syms[..symbols.len()].copy_from_slice(symbols);
        l
    }

    /// Rebuilds the layout with every track produced by `f`.
    fn rebuild(&self, mut f: impl FnMut(usize, &mut Builder)) -> Layout {
        let mut b = Builder { out: Layout::empty(self.tracks), at: 0 };
        for t in 0..self.tracks {
            let before = b.at;
            f(t, &mut b);
            b.out.lens[t] = (b.at - before) as u8;
        }
        b.out
    }
}

struct Builder {
    out: Layout,
    at: usize,
}

impl Builder {
    fn put(&mut self, s: &[u8]) {
        self.out.syms[self.at..self.at + s.len()].copy_from_slice(s);
        self.at += s.len();
    }
}

/// Calls `f` for every legal shunting move from an inglenook layout, in
/// `(siding, direction, count)` order. Track 0 is the headshunt read engine to
/// points, track `r` is siding `r` read points to buffer stop.
pub(crate) fn shunt_successors(l: &Layout, caps: &[usize], mut f: impl FnMut(ShuntMove, &Layout)) {
    let head = l.len(0);
    let head_free = caps[0] - head;
    for r in 1..l.track_count() {
        let len = l.len(r);
        for k in 1..=head_free.min(len) {
            let next = l.rebuild(|t, b| {
                if t == 0 {
                    b.put(l.track(0));
                    b.put(&l.track(r)[..k]);
                } else if t == r {
                    b.put(&l.track(r)[k..]);
                } else {
                    b.put(l.track(t));
                }
            });
            f(ShuntMove::pull(k, r), &next);
        }
        for k in 1..=head.min(caps[r] - len) {
            let next = l.rebuild(|t, b| {
                if t == 0 {
                    b.put(&l.track(0)[..head - k]);
                } else if t == r {
                    b.put(&l.track(0)[head - k..]);
                    b.put(l.track(r));
                } else {
                    b.put(l.track(t));
                }
            });
            f(ShuntMove::push(k, r), &next);
        }
    }
}

/// Calls `f` for every legal card move from a cards layout (piles bottom to
/// top), in `(from, to)` order.
pub(crate) fn card_successors(l: &Layout, caps: &[usize], mut f: impl FnMut(CardMove, &Layout)) {
    let n = l.track_count();
    for from in 0..n {
        if l.len(from) == 0 {
            continue;
        }
        let card = *l.track(from).last().unwrap();
        for to in 0..n {
            if to == from || l.len(to) >= caps[to] {
                continue;
            }
            let next = l.rebuild(|t, b| {
                let track = l.track(t);
                if t == from {
                    b.put(&track[..track.len() - 1]);
                } else {
                    b.put(track);
                    if t == to {
                        b.put(&[card]);
                    }
                }
            });
            f(CardMove::new(from, to), &next);
        }
    }
}

/// Packs layouts into `u128` keys.
#[derive(Clone, Copy, Debug)]
pub(crate) struct KeyCodec {
    bits: u32,
    symbols: usize,
    tracks: usize,
}

impl KeyCodec {
    /// `None` when the encoding does not fit into 128 bits.
    pub(crate) fn new(items: usize, tracks: usize) -> Option<Self> {
        let bits = usize::BITS - items.leading_zeros();
        let symbols = items + tracks - 1;
        if tracks > MAX_TRACKS || items > MAX_SYMBOLS || symbols * bits as usize > 128 {
            return None;
        }
        Some(KeyCodec { bits, symbols, tracks })
    }

    pub(crate) fn pack(&self, l: &Layout) -> u128 {
        let mut key = 0u128;
        for t in 0..self.tracks {
            if t > 0 {
                key <<= self.bits;
            }
            for &s in l.track(t) {
                key = (key << self.bits) | s as u128;
            }
        }
        key
    }

    pub(crate) fn unpack(&self, key: u128) -> Layout {
        let mut l = Layout::empty(self.tracks);
        let mask = (1u128 << self.bits) - 1;
        let mut t = 0;
        let mut at = 0;
        for i in (0..self.symbols).rev() {
            let s = ((key >> (i as u32 * self.bits)) & mask) as u8;
            if s == 0 {
                t += 1;
            } else {
                l.syms[at] = s;
                at += 1;
                l.lens[t] += 1;
            }
        }
        l
    }
}
