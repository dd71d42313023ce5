//! Seeded uniform sampling of positions matching a pattern.
//!
//! The generator is ChaCha8 (`rand_chacha`) seeded with
//! `ChaCha8Rng::seed_from_u64(seed)`, which is portable across platforms.
//! One draw picks an alternative with probability proportional to its
//! number of matching positions, then a uniform position within it: a
//! uniform split of the unnamed wagons over the open tracks, a uniform
//! ordering of those wagons and a uniform shuffle of every any-order set.
//! A draw is kept only when no earlier alternative also matches, which
//! makes the result uniform over the union.

use inglenook_core::pattern::{compositions, Alternative, GoalPattern, PatternError, TrackConstraint};
use inglenook_core::{Position, PuzzleSpec};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub struct Generator {
    rng: ChaCha8Rng,
}

impl Generator {
    pub fn new(seed: u64) -> Self {
        Generator { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    pub fn sample(&mut self, spec: &PuzzleSpec, pattern: &GoalPattern) -> Result<Position, PatternError> {
        pattern.check(spec)?;
        let alts = pattern.alternatives();
        let counts: Vec<u128> = alts.iter().map(|a| a.count(spec)).collect();
        let total: u128 = counts.iter().sum();
        loop {
            let mut pick = self.rng.gen_range(0..total);
            let mut i = 0;
            while pick >= counts[i] {
                pick -= counts[i];
                i += 1;
            }
            let p = self.sample_alternative(spec, &alts[i]);
            if !alts[..i].iter().any(|a| a.matches(&p)) {
                return Ok(p);
            }
        }
    }

    fn sample_alternative(&mut self, spec: &PuzzleSpec, alt: &Alternative) -> Position {
        let open = alt.open_tracks();
        let mut free = alt.free_wagons(spec);
        let caps: Vec<usize> = open.iter().map(|&t| spec.capacity(t)).collect();
        let splits = compositions(&caps, free.len());
        let split = &splits[self.rng.gen_range(0..splits.len())];
        free.shuffle(&mut self.rng);

        let mut tracks: Vec<Vec<_>> = alt
            .tracks()
            .iter()
            .map(|c| match c {
                TrackConstraint::Exact(seq) => seq.clone(),
                TrackConstraint::AnyOrder(set) => {
                    let mut v = set.clone();
                    v.shuffle(&mut self.rng);
                    v
                }
                _ => Vec::new(),
            })
            .collect();
        let mut at = 0;
        for (&t, &n) in open.iter().zip(split) {
            tracks[t] = free[at..at + n].to_vec();
            at += n;
        }
        Position::new(tracks)
    }
}
