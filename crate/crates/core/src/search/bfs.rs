//! Level-synchronous breadth-first search over packed keys, keeping one
//! parent edge per state for trace reconstruction.

use alloc::vec::Vec;

use hashbrown::HashMap;

use super::workers::Workers;
use crate::layout::{KeyCodec, Layout};

pub(crate) struct Tree<M> {
    keys: Vec<u128>,
    parent: Vec<u32>,
    moves: Vec<Option<M>>,
}

impl<M: Copy> Tree<M> {
    /// Moves from the root to `node`.
    pub(crate) fn path(&self, mut node: u32) -> Vec<M> {
        let mut out = Vec::new();
        while let Some(mv) = self.moves[node as usize] {
            out.push(mv);
            node = self.parent[node as usize];
        }
        out.reverse();
        out
    }

    pub(crate) fn key(&self, node: u32) -> u128 {
        self.keys[node as usize]
    }
}

pub(crate) struct Outcome<M> {
    pub(crate) tree: Tree<M>,
    /// Goal node and its depth.
    pub(crate) found: Option<(u32, usize)>,
    pub(crate) explored: u64,
    pub(crate) peak_frontier: u64,
}

pub(crate) struct OverBudget;

/// Searches from `start` until a level contains a goal state. Among new
/// states of a level each keeps the parent edge with the smallest move;
/// among goal states of the first level containing one, the smallest key
/// wins.
pub(crate) fn shortest<M, S, G>(
    codec: KeyCodec,
    start: &Layout,
    successors: S,
    is_goal: G,
    budget: u64,
    workers: &Workers,
) -> Result<Outcome<M>, OverBudget>
where
    M: Copy + Ord + Send + Sync,
    S: Fn(&Layout, &mut dyn FnMut(M, &Layout)) + Sync + Send,
    G: Fn(&Layout) -> bool,
{
    let mut tree = Tree { keys: Vec::new(), parent: Vec::new(), moves: Vec::new() };
    let mut index: HashMap<u128, u32> = HashMap::new();
    let root = codec.pack(start);
    tree.keys.push(root);
    tree.parent.push(0);
    tree.moves.push(None);
    index.insert(root, 0);
    let mut frontier: Vec<u32> = alloc::vec![0];
    let mut peak = 1u64;
    let mut depth = 0usize;

    if is_goal(start) {
        return Ok(Outcome { tree, found: Some((0, 0)), explored: 1, peak_frontier: 1 });
    }

    while !frontier.is_empty() {
        let keys = &tree.keys;
        let seen = &index;
        let mut candidates: Vec<(u128, M, u32)> = workers.flat_map(&frontier, |chunk| {
            let mut out = Vec::new();
            for &node in chunk {
                let here = codec.unpack(keys[node as usize]);
                successors(&here, &mut |mv, next| {
                    let k = codec.pack(next);
                    if !seen.contains_key(&k) {
                        out.push((k, mv, node));
                    }
                });
            }
            out
        });
        candidates.sort_unstable_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        candidates.dedup_by_key(|c| c.0);

        depth += 1;
        let mut next = Vec::with_capacity(candidates.len());
        let mut found = None;
        for (key, mv, parent) in candidates {
            let node = tree.keys.len() as u32;
            tree.keys.push(key);
            tree.parent.push(parent);
            tree.moves.push(Some(mv));
            index.insert(key, node);
            next.push(node);
            if found.is_none() && is_goal(&codec.unpack(key)) {
                found = Some((node, depth));
            }
        }
        peak = peak.max(next.len() as u64);
        if tree.keys.len() as u64 > budget {
            return Err(OverBudget);
        }
        if found.is_some() {
            let explored = tree.keys.len() as u64;
            return Ok(Outcome { tree, found, explored, peak_frontier: peak });
        }
        frontier = next;
    }
    let explored = tree.keys.len() as u64;
    Ok(Outcome { tree, found: None, explored, peak_frontier: peak })
}
