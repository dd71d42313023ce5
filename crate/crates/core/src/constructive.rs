//! Constructive solutions with guaranteed move bounds.
//!
//! [`solve_cards`] connects any two card states of a connected
//! cards-in-piles graph by working from the bottom card of one pile upwards:
//! it seats the right card at the bottom of a pile with room for two, then
//! solves the smaller instance that never touches that card. Every level costs
//! at most `2w + 5` moves, so a trace never exceeds `w² + 6w - 6` moves.
//!
//! [`solve_inglenook`] maps convertible positions to card states, solves
//! there, and turns each card move into one or two shunting moves, which
//! bounds traces by `2w² + 12w - 10`.
//!
//! Traces are deterministic but implementation-defined: wherever the
//! construction leaves a free choice, the smallest eligible pile index wins.

use alloc::vec::Vec;

use crate::feasibility::{cards_connected, inglenook_solvable, FeasibilityVerdict};
use crate::model::{
    apply_move, check_card_move, is_convertible, to_cards, CardMove, CardMoveError, CardsSpec, CardsState, MoveError,
    Position, PositionError, PuzzleSpec, ShuntMove, WagonId,
};
use crate::pattern::{GoalPattern, PatternError};

/// A move sequence together with its endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolutionTrace<S, M> {
    pub start: S,
    pub finish: S,
    pub moves: Vec<M>,
}

impl<S, M> SolutionTrace<S, M> {
    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }
}

pub type CardTrace = SolutionTrace<CardsState, CardMove>;
pub type ShuntTrace = SolutionTrace<Position, ShuntMove>;

impl CardTrace {
    /// Replays the moves from `start`; every step must be legal and the last
    /// state must equal `finish`.
    pub fn verify(&self, spec: &CardsSpec) -> Result<(), TraceError> {
        spec.check_state(&self.start).map_err(TraceError::Endpoint)?;
        let mut piles = self.start.clone().into_piles();
        for (i, &mv) in self.moves.iter().enumerate() {
            check_card_move(spec.capacities(), &piles, mv).map_err(|e| TraceError::Card(i, e))?;
            let c = piles[mv.from].pop().unwrap();
            piles[mv.to].push(c);
        }
        if piles != self.finish.piles() {
            return Err(TraceError::FinishMismatch);
        }
        Ok(())
    }
}

impl ShuntTrace {
    pub fn verify(&self, spec: &PuzzleSpec) -> Result<(), TraceError> {
        let mut p = self.start.clone();
        spec.check_position(&p).map_err(TraceError::Endpoint)?;
        for (i, &mv) in self.moves.iter().enumerate() {
            p = apply_move(spec, &p, mv).map_err(|e| TraceError::Shunt(i, e))?;
        }
        if p != self.finish {
            return Err(TraceError::FinishMismatch);
        }
        Ok(())
    }

    /// Every position along the trace, `start` and `finish` included.
    pub fn positions(&self, spec: &PuzzleSpec) -> Result<Vec<Position>, TraceError> {
        let mut out = Vec::with_capacity(self.moves.len() + 1);
        out.push(self.start.clone());
        for (i, &mv) in self.moves.iter().enumerate() {
            let next = apply_move(spec, out.last().unwrap(), mv).map_err(|e| TraceError::Shunt(i, e))?;
            out.push(next);
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum TraceError {
    #[error("invalid endpoint: {0}")]
    Endpoint(PositionError),
    #[error("move {} is illegal: {}", .0 + 1, .1)]
    Card(usize, CardMoveError),
    #[error("move {} is illegal: {}", .0 + 1, .1)]
    Shunt(usize, MoveError),
    #[error("replay does not end at the recorded finish")]
    FinishMismatch,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("invalid {which}: {error}")]
    Invalid { which: &'static str, error: PositionError },
    #[error("the cards-in-piles graph is disconnected ({}): {}", .0.branch, .0.branch.describe())]
    Disconnected(FeasibilityVerdict),
    #[error("the puzzle cannot always be solved ({}): {}", .0.branch, .0.branch.describe())]
    Unsolvable(FeasibilityVerdict),
    #[error(transparent)]
    Pattern(#[from] PatternError),
}

/// Upper bound on constructive card traces with `w` cards: `w² + 6w - 6`.
pub fn card_move_bound(w: usize) -> usize {
    w * w + 6 * w - 6
}

/// Upper bound on constructive shunting traces with `w` wagons:
/// `2w² + 12w - 10`.
pub fn shunt_move_bound(w: usize) -> usize {
    2 * w * w + 12 * w - 10
}

/// Finds a path from `start` to `goal` in a connected cards-in-piles graph.
pub fn solve_cards(spec: &CardsSpec, start: &CardsState, goal: &CardsState) -> Result<CardTrace, SolveError> {
    spec.check_state(start).map_err(|error| SolveError::Invalid { which: "start state", error })?;
    spec.check_state(goal).map_err(|error| SolveError::Invalid { which: "goal state", error })?;
    let verdict = cards_connected(spec);
    if !verdict.solvable && start != goal {
        return Err(SolveError::Disconnected(verdict));
    }
    let mut moves = Vec::new();
    solve_level(spec.capacities().to_vec(), start.clone().into_piles(), goal.clone().into_piles(), &mut moves);
    let trace = SolutionTrace { start: start.clone(), finish: goal.clone(), moves };
    if let Err(e) = trace.verify(spec) {
        panic!("constructive card trace failed to replay: {e}");
    }
    assert!(
        trace.len() <= card_move_bound(spec.cards()),
        "card trace of {} moves exceeds the bound {} for {} cards",
        trace.len(),
        card_move_bound(spec.cards()),
        spec.cards()
    );
    Ok(trace)
}

/// Finds a shunting solution from `start` to `goal` for a puzzle that can
/// always be solved.
pub fn solve_inglenook(spec: &PuzzleSpec, start: &Position, goal: &Position) -> Result<ShuntTrace, SolveError> {
    spec.check_position(start).map_err(|error| SolveError::Invalid { which: "start position", error })?;
    spec.check_position(goal).map_err(|error| SolveError::Invalid { which: "goal position", error })?;
    if start == goal {
        return Ok(SolutionTrace { start: start.clone(), finish: goal.clone(), moves: Vec::new() });
    }
    let verdict = inglenook_solvable(spec);
    if !verdict.solvable {
        return Err(SolveError::Unsolvable(verdict));
    }

    let mut moves = Vec::new();
    let mut from = start.clone();
    if !is_convertible(spec, &from) {
        let mv = relieve_headshunt(spec, &from);
        from = apply_move(spec, &from, mv).expect("relieving push is legal");
        moves.push(mv);
    }
    let (to, tail) = if is_convertible(spec, goal) {
        (goal.clone(), None)
    } else {
        let mv = relieve_headshunt(spec, goal);
        (apply_move(spec, goal, mv).expect("relieving push is legal"), Some(mv.inverse()))
    };

    let cards = spec.cards_spec();
    let a = to_cards(spec, &from).expect("convertible by construction");
    let b = to_cards(spec, &to).expect("convertible by construction");
    let card_trace = solve_cards(&cards, &a, &b)?;
    moves.extend(lift_card_moves(spec, &card_trace.moves));
    moves.extend(tail);

    let trace = SolutionTrace { start: start.clone(), finish: goal.clone(), moves };
    if let Err(e) = trace.verify(spec) {
        panic!("constructive shunting trace failed to replay: {e}");
    }
    assert!(
        trace.len() <= shunt_move_bound(spec.wagons()),
        "shunting trace of {} moves exceeds the bound {} for {} wagons",
        trace.len(),
        shunt_move_bound(spec.wagons()),
        spec.wagons()
    );
    Ok(trace)
}

/// Solves towards the canonically least position matching `goal`; an empty
/// trace when `start` already matches.
pub fn solve_to_pattern(spec: &PuzzleSpec, start: &Position, goal: &GoalPattern) -> Result<ShuntTrace, SolveError> {
    spec.check_position(start).map_err(|error| SolveError::Invalid { which: "start position", error })?;
    goal.check(spec)?;
    if goal.matches(start) {
        return Ok(SolutionTrace { start: start.clone(), finish: start.clone(), moves: Vec::new() });
    }
    let target = goal.least_match(spec)?;
    solve_inglenook(spec, start, &target)
}

/// Translates card moves between convertible positions into shunting moves:
/// one move when the headshunt pile is involved, otherwise a pull of one
/// wagon followed by a push of one wagon.
pub fn lift_card_moves(spec: &PuzzleSpec, moves: &[CardMove]) -> Vec<ShuntMove> {
    let offset = spec.pile_offset();
    let mut out = Vec::with_capacity(moves.len() * 2);
    for mv in moves {
        let (from, to) = (mv.from + offset, mv.to + offset);
        if from == 0 {
            out.push(ShuntMove::push(1, to));
        } else if to == 0 {
            out.push(ShuntMove::pull(1, from));
        } else {
            out.push(ShuntMove::pull(1, from));
            out.push(ShuntMove::push(1, to));
        }
    }
    out
}

/// Push of one wagon into the lowest-numbered siding with room.
fn relieve_headshunt(spec: &PuzzleSpec, p: &Position) -> ShuntMove {
    let r = (1..=spec.siding_count())
        .find(|&r| p.siding(r).len() < spec.capacity(r))
        .expect("w < h + sum m leaves a free siding space");
    ShuntMove::push(1, r)
}

/// Mutable card state that records every move it makes.
struct Board<'a> {
    caps: &'a [usize],
    piles: Vec<Vec<WagonId>>,
    out: &'a mut Vec<CardMove>,
}

impl Board<'_> {
    fn n(&self) -> usize {
        self.caps.len()
    }

    fn space(&self, i: usize) -> usize {
        self.caps[i] - self.piles[i].len()
    }

    fn top(&self, i: usize) -> Option<WagonId> {
        self.piles[i].last().copied()
    }

    fn pile_of(&self, card: WagonId) -> usize {
        self.piles.iter().position(|p| p.contains(&card)).expect("card is on the board")
    }

    /// Total space over all piles except those in `skip`.
    fn space_except(&self, skip: &[usize]) -> usize {
        (0..self.n()).filter(|i| !skip.contains(i)).map(|i| self.space(i)).sum()
    }

    fn first(&self, pred: impl Fn(usize) -> bool) -> Option<usize> {
        (0..self.n()).find(|&i| pred(i))
    }

    fn shift(&mut self, from: usize, to: usize) {
        let mv = CardMove::new(from, to);
        if let Err(e) = check_card_move(self.caps, &self.piles, mv) {
            panic!("constructive step {mv} is illegal: {e}");
        }
        let c = self.piles[from].pop().unwrap();
        self.piles[to].push(c);
        self.out.push(mv);
    }
}

fn solve_level(caps: Vec<usize>, piles: Vec<Vec<WagonId>>, goal: Vec<Vec<WagonId>>, out: &mut Vec<CardMove>) {
    if piles == goal {
        return;
    }
    let w: usize = piles.iter().map(Vec::len).sum();
    if w == 1 {
        let from = piles.iter().position(|p| !p.is_empty()).unwrap();
        let to = goal.iter().position(|p| !p.is_empty()).unwrap();
        out.push(CardMove::new(from, to));
        return;
    }
    if caps.iter().all(|&m| m == 1) {
        let mut board = Board { caps: &caps, piles, out };
        unit_piles(&mut board, &goal);
        return;
    }

    let level_start = out.len();
    let k = caps.iter().position(|&m| m >= 2).unwrap();

    // A neighbour of the goal with pile k occupied; the final move restores it.
    let mut near_goal = goal;
    let mut last = None;
    if near_goal[k].is_empty() {
        let src = (0..caps.len()).find(|&i| i != k && !near_goal[i].is_empty()).unwrap();
        let c = near_goal[src].pop().unwrap();
        near_goal[k].push(c);
        last = Some(CardMove::new(k, src));
    }
    let bottom = near_goal[k][0];

    let mut board = Board { caps: &caps, piles, out };
    seat_bottom(&mut board, k, bottom);
    let seated = board.piles;
    let seat_moves = out.len() - level_start;

    // The smaller instance: pile k loses one slot and the seated card.
    let mut sub_caps = caps.clone();
    sub_caps[k] -= 1;
    let mut sub_piles = seated.clone();
    sub_piles[k].remove(0);
    near_goal[k].remove(0);
    let sub_start = out.len();
    solve_level(sub_caps, sub_piles, near_goal, out);

    // The seated card stays put while the smaller instance is solved.
    let mut replay = seated;
    for mv in &out[sub_start..] {
        let c = replay[mv.from].pop().unwrap();
        replay[mv.to].push(c);
        assert_eq!(replay[k].first(), Some(&bottom), "seated card {bottom} left the bottom of pile {k}");
    }

    out.extend(last);
    debug_assert!(
        seat_moves + usize::from(last.is_some()) <= 2 * w + 5,
        "level with {w} cards used {} moves",
        seat_moves + usize::from(last.is_some())
    );
}

/// Brings card `b` to the bottom of pile `k`. Pile `k` has capacity at least 2
/// and the total space is at least 2.
fn seat_bottom(board: &mut Board<'_>, k: usize, b: WagonId) {
    if board.piles[k].first() == Some(&b) {
        return;
    }
    let n = board.n();

    // Step 1: move b into pile k.
    let l = board.pile_of(b);
    if l != k {
        if board.space(k) == 0 {
            let dest = board.first(|i| i != k && i != l && board.space(i) > 0).unwrap_or(l);
            board.shift(k, dest);
        }
        let above_room = board.space_except(&[l]);
        let height = board.piles[l].len();
        assert!(above_room >= height, "space outside pile {l} is {above_room}, below its height {height}");
        while board.top(l) != Some(b) {
            let dest = board.first(|i| i != l && i != k && board.space(i) > 0).unwrap_or(k);
            board.shift(l, dest);
        }
        board.shift(l, k);
        if board.piles[k][0] == b {
            return;
        }
    }

    // Step 2: at least two other piles with space.
    while board.space_except(&[k]) < 2 {
        let src = board.first(|i| i != k && !board.piles[i].is_empty()).unwrap();
        board.shift(src, k);
    }
    let open: Vec<usize> = (0..n).filter(|&i| i != k && board.space(i) > 0).collect();
    if open.len() < 2 {
        let d = open[0];
        let src = board.first(|i| i != k && i != d && !board.piles[i].is_empty()).unwrap();
        board.shift(src, d);
    }
    let mut open = (0..n).filter(|&i| i != k && board.space(i) > 0);
    let u = open.next().unwrap();
    let v = open.next().unwrap();

    // Step 3: uncover b, keeping u and v open.
    while board.top(k) != Some(b) {
        let dest = board.first(|i| i != k && board.space(i) >= if i == u || i == v { 2 } else { 1 }).unwrap();
        board.shift(k, dest);
    }

    // Step 4: park b on u, drain pile k, seat b. When the only room left
    // outside pile k and b's host is a single space and more than one card
    // remains, b hops into that space so its old host can take the rest.
    board.shift(k, u);
    let mut host = u;
    while !board.piles[k].is_empty() {
        if board.space_except(&[k, host]) == 1 && board.piles[k].len() >= 2 {
            let hop = board.first(|i| i != k && i != host && board.space(i) == 1).unwrap();
            board.shift(host, hop);
            host = hop;
        }
        let dest = board.first(|i| i != k && i != host && board.space(i) > 0).unwrap();
        board.shift(k, dest);
    }
    board.shift(host, k);
}

/// All capacities are 1: align occupied piles, then fix the arrangement one
/// transposition at a time through an empty pile.
fn unit_piles(board: &mut Board<'_>, goal: &[Vec<WagonId>]) {
    let n = board.n();
    loop {
        let Some(p) = (0..n).find(|&i| !board.piles[i].is_empty() && goal[i].is_empty()) else {
            break;
        };
        let c = board.piles[p][0];
        let home = goal.iter().position(|g| g.first() == Some(&c)).unwrap();
        let to = if board.piles[home].is_empty() {
            home
        } else {
            (0..n).find(|&i| board.piles[i].is_empty() && !goal[i].is_empty()).unwrap()
        };
        board.shift(p, to);
    }
    let Some(empty) = (0..n).find(|&i| board.piles[i].is_empty()) else {
        return;
    };
    for p in 0..n {
        let Some(&want) = goal[p].first() else { continue };
        if board.piles[p][0] == want {
            continue;
        }
        let q = board.pile_of(want);
        board.shift(p, empty);
        board.shift(q, p);
        board.shift(empty, q);
    }
}
