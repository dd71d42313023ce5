//! Dense numbering of every state of a fixed instance: the track-length
//! composition times the Lehmer rank of the labels read in track order.
//! Sweeps over whole graphs (censuses, eccentricities, multi-source
//! distances) use flat arrays indexed by these numbers.

use alloc::vec;
use alloc::vec::Vec;

use super::workers::Workers;
use crate::layout::{card_successors, shunt_successors, Layout, MAX_TRACKS};
use crate::pattern::compositions;

/// Largest item count the rank arithmetic supports.
const MAX_ITEMS: usize = 20;
const TABLE_LIMIT: usize = 1 << 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Kind {
    Shunt,
    Cards,
}

pub(crate) struct Dense {
    caps: Vec<usize>,
    items: usize,
    kind: Kind,
    comps: Vec<Vec<u8>>,
    comp_of: Vec<u32>,
    stride: Vec<usize>,
    fact: Vec<u64>,
    total: u64,
}

pub(crate) const UNSEEN: u16 = u16::MAX;

impl Dense {
    pub(crate) fn new(caps: &[usize], items: usize, kind: Kind) -> Option<Dense> {
        if items > MAX_ITEMS || caps.len() > MAX_TRACKS {
            return None;
        }
        let mut stride = Vec::with_capacity(caps.len());
        let mut size = 1usize;
        for &c in caps {
            stride.push(size);
            size = size.checked_mul(c.min(items) + 1)?;
            if size > TABLE_LIMIT {
                return None;
            }
        }
        let comps: Vec<Vec<u8>> =
            compositions(caps, items).into_iter().map(|c| c.into_iter().map(|x| x as u8).collect()).collect();
        let mut comp_of = vec![u32::MAX; size];
        for (i, c) in comps.iter().enumerate() {
            let slot: usize = c.iter().zip(&stride).map(|(&l, &s)| l as usize * s).sum();
            comp_of[slot] = i as u32;
        }
        let mut fact = vec![1u64; items + 1];
        for i in 1..=items {
            fact[i] = fact[i - 1] * i as u64;
        }
        let total = (comps.len() as u64).checked_mul(fact[items])?;
        Some(Dense { caps: caps.to_vec(), items, kind, comps, comp_of, stride, fact, total })
    }

    pub(crate) fn total(&self) -> u64 {
        self.total
    }

    pub(crate) fn index(&self, l: &Layout) -> u64 {
        let slot: usize = l.lens().iter().zip(&self.stride).map(|(&n, &s)| n as usize * s).sum();
        let comp = self.comp_of[slot] as u64;
        let mut mask = 0u32;
        let mut rank = 0u64;
        let n = self.items;
        for (i, &sym) in l.symbols().iter().enumerate() {
            let s = sym as u32 - 1;
            let below = (mask & ((1u32 << s) - 1)).count_ones();
            rank += (s - below) as u64 * self.fact[n - 1 - i];
            mask |= 1 << s;
        }
        comp * self.fact[n] + rank
    }

    pub(crate) fn layout(&self, idx: u64) -> Layout {
        let n = self.items;
        let comp = (idx / self.fact[n]) as usize;
        let mut rank = idx % self.fact[n];
        let mut avail: Vec<u8> = (1..=n as u8).collect();
        let mut syms = [0u8; MAX_ITEMS];
        for (i, slot) in syms.iter_mut().enumerate().take(n) {
            let f = self.fact[n - 1 - i];
            let d = (rank / f) as usize;
            rank %= f;
            *slot = avail.remove(d);
        }
        Layout::from_parts(&self.comps[comp], &syms[..n])
    }

    pub(crate) fn neighbors(&self, idx: u64, out: &mut Vec<u64>) {
        let l = self.layout(idx);
        match self.kind {
            Kind::Shunt => shunt_successors(&l, &self.caps, |_, next| out.push(self.index(next))),
            Kind::Cards => card_successors(&l, &self.caps, |_, next| out.push(self.index(next))),
        }
    }

    /// Breadth-first distances from `sources` to every state; [`UNSEEN`]
    /// marks unreachable states. Stops early once `stop` returns true for a
    /// newly reached state, after finishing that level.
    pub(crate) fn distances(&self, sources: &[u64], workers: &Workers, stop: impl Fn(u64) -> bool) -> Vec<u16> {
        let mut dist = vec![UNSEEN; self.total as usize];
        let mut frontier = Vec::new();
        for &s in sources {
            if dist[s as usize] == UNSEEN {
                dist[s as usize] = 0;
                frontier.push(s);
            }
        }
        if frontier.iter().any(|&s| stop(s)) {
            return dist;
        }
        let mut level = 0u16;
        while !frontier.is_empty() {
            assert!(level < UNSEEN - 1, "distance exceeds the supported range");
            level += 1;
            let seen = &dist;
            let candidates = workers.flat_map(&frontier, |chunk| {
                let mut out = Vec::new();
                let mut buf = Vec::new();
                for &idx in chunk {
                    buf.clear();
                    self.neighbors(idx, &mut buf);
                    out.extend(buf.iter().copied().filter(|&n| seen[n as usize] == UNSEEN));
                }
                out
            });
            let mut next = Vec::new();
            let mut done = false;
            for c in candidates {
                if dist[c as usize] == UNSEEN {
                    dist[c as usize] = level;
                    next.push(c);
                    done |= stop(c);
                }
            }
            if done {
                break;
            }
            frontier = next;
        }
        dist
    }

    /// Component sizes, listed in order of each component's smallest index.
    pub(crate) fn components(&self, workers: &Workers) -> Vec<u64> {
        let mut seen = vec![false; self.total as usize];
        let mut sizes = Vec::new();
        let mut buf = Vec::new();
        for seed in 0..self.total {
            if seen[seed as usize] {
                continue;
            }
            seen[seed as usize] = true;
            let mut size = 1u64;
            let mut frontier = vec![seed];
            while !frontier.is_empty() {
                let mark = &seen;
                let candidates = workers.flat_map(&frontier, |chunk| {
                    let mut out = Vec::new();
                    let mut buf = Vec::new();
                    for &idx in chunk {
                        buf.clear();
                        self.neighbors(idx, &mut buf);
                        out.extend(buf.iter().copied().filter(|&n| !mark[n as usize]));
                    }
                    out
                });
                buf.clear();
                for c in candidates {
                    if !seen[c as usize] {
                        seen[c as usize] = true;
                        buf.push(c);
                    }
                }
                size += buf.len() as u64;
                core::mem::swap(&mut frontier, &mut buf);
            }
            sizes.push(size);
        }
        sizes
    }
}
