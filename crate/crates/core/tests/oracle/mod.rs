//! Brute-force reference implementations, written without the library's
//! move generators, enumerators or encodings.
//!
//! States are `Vec<Vec<u8>>` over labels `1..=w`. Inglenook states list the
//! headshunt engine-to-points (points end last) and each siding
//! points-to-buffer (points end first). Card piles are listed bottom to top.

#![allow(dead_code)]

use std::collections::HashMap;

pub type Tracks = Vec<Vec<u8>>;

/// Every ordering of the labels `1..=n`.
pub fn permutations(n: usize) -> Vec<Vec<u8>> {
    fn go(rest: &mut Vec<u8>, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            cur.push(x);
            go(rest, cur, out);
            cur.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    go(&mut (1..=n as u8).collect(), &mut Vec::new(), &mut out);
    out
}

/// Every way to write `total` as an ordered sum with part `i` at most `caps[i]`.
pub fn splits(caps: &[usize], total: usize) -> Vec<Vec<usize>> {
    if caps.is_empty() {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=caps[0].min(total) {
        for mut tail in splits(&caps[1..], total - first) {
            tail.insert(0, first);
            out.push(tail);
        }
    }
    out
}

/// Every placement of `w` labelled items on tracks with these capacities.
pub fn all_states(caps: &[usize], w: usize) -> Vec<Tracks> {
    let perms = permutations(w);
    let mut out = Vec::new();
    for split in splits(caps, w) {
        for p in &perms {
            let mut at = 0;
            let t: Tracks = split
                .iter()
                .map(|&n| {
                    at += n;
                    p[at - n..at].to_vec()
                })
                .collect();
            out.push(t);
        }
    }
    out
}

/// Injective 64-bit key: four bits per label, `0xF` between tracks.
pub fn key(t: &Tracks) -> u64 {
    let mut k = 0u64;
    for (i, track) in t.iter().enumerate() {
        if i > 0 {
            k = (k << 4) | 0xF;
        }
        for &x in track {
            k = (k << 4) | x as u64;
        }
    }
    k
}

/// Inglenook neighbours. `caps[0]` is the headshunt capacity.
pub fn shunt_neighbors(caps: &[usize], t: &Tracks) -> Vec<Tracks> {
    let mut out = Vec::new();
    for r in 1..t.len() {
        let room = caps[0] - t[0].len();
        for k in 1..=room.min(t[r].len()) {
            let mut n = t.clone();
            let block: Vec<u8> = n[r].drain(..k).collect();
            n[0].extend(block);
            out.push(n);
        }
        let room = caps[r] - t[r].len();
        for k in 1..=room.min(t[0].len()) {
            let mut n = t.clone();
            let at = n[0].len() - k;
            let mut block = n[0].split_off(at);
            block.extend(n[r].iter().copied());
            n[r] = block;
            out.push(n);
        }
    }
    out
}

/// Cards-in-piles neighbours: the top card of one pile onto another.
pub fn card_neighbors(caps: &[usize], t: &Tracks) -> Vec<Tracks> {
    let mut out = Vec::new();
    for i in 0..t.len() {
        if t[i].is_empty() {
            continue;
        }
        for j in 0..t.len() {
            if i != j && t[j].len() < caps[j] {
                let mut n = t.clone();
                let c = n[i].pop().unwrap();
                n[j].push(c);
                out.push(n);
            }
        }
    }
    out
}

fn find(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        parent[x as usize] = parent[parent[x as usize] as usize];
        x = parent[x as usize];
    }
    x
}

/// Number of connected components, by union-find over every edge.
pub fn component_count(states: &[Tracks], neighbors: impl Fn(&Tracks) -> Vec<Tracks>) -> usize {
    let index: HashMap<u64, u32> = states.iter().enumerate().map(|(i, s)| (key(s), i as u32)).collect();
    let mut parent: Vec<u32> = (0..states.len() as u32).collect();
    let mut components = states.len();
    for (i, s) in states.iter().enumerate() {
        for n in neighbors(s) {
            let j = index[&key(&n)];
            let (a, b) = (find(&mut parent, i as u32), find(&mut parent, j));
            if a != b {
                parent[a as usize] = b;
                components -= 1;
            }
        }
    }
    components
}

/// Breadth-first distances from `start` to every reachable state.
pub fn distances(start: &Tracks, neighbors: impl Fn(&Tracks) -> Vec<Tracks>) -> HashMap<u64, usize> {
    let mut dist = HashMap::from([(key(start), 0)]);
    let mut frontier = vec![start.clone()];
    let mut d = 0;
    while !frontier.is_empty() {
        d += 1;
        let mut next = Vec::new();
        for s in &frontier {
            for n in neighbors(s) {
                dist.entry(key(&n)).or_insert_with(|| {
                    next.push(n.clone());
                    d
                });
            }
        }
        frontier = next;
    }
    dist
}

/// Inglenook capacity vector: headshunt first.
pub fn shunt_caps(h: usize, sidings: &[usize]) -> Vec<usize> {
    let mut caps = vec![h];
    caps.extend_from_slice(sidings);
    caps
}

/// Every capacity vector of the given length with entries in `1..=max`.
pub fn capacity_vectors(len: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                (1..=max).map(move |m| {
                    let mut v = v.clone();
                    v.push(m);
                    v
                })
            })
            .collect();
    }
    out
}
