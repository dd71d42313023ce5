//! Exhaustive and optimal analysis of inglenook and cards-in-piles graphs.
//!
//! Shortest solutions come from a level-synchronous breadth-first search over
//! packed state keys. Whole-graph sweeps (worst cases, censuses, diameters)
//! number every state densely and keep flat distance arrays. Every search
//! is bounded by [`SearchConfig::budget`] visited states and refuses cleanly
//! beyond it.
//!
//! With the `parallel` feature each level is expanded on a thread pool and
//! merged in a fixed order, so results never depend on the thread count.

mod bfs;
mod dense;
mod metric;
mod workers;

use alloc::vec::Vec;

use crate::constructive::{CardTrace, ShuntTrace, SolutionTrace};
use crate::layout::{card_successors, shunt_successors, KeyCodec, Layout};
use crate::model::{from_cards, CardsSpec, CardsState, Position, PositionError, PuzzleSpec, SpecError};
use crate::pattern::{compositions, factorial, GoalPattern, PatternError};

pub use metric::{displacement_distance, pile_ordering};

use dense::{Dense, Kind, UNSEEN};
use workers::Workers;

pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Cap on visited states (for all-sources sweeps, on states times sources).
    pub budget: u64,
    /// Worker threads; 1 runs inline and 0 uses every core. Only honoured
    /// with the `parallel` feature.
    pub threads: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { budget: DEFAULT_BUDGET, threads: 1 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("search needs up to {estimate} states, over the budget of {budget}")]
    BudgetExceeded { budget: u64, estimate: u128 },
    #[error("instance too large for exhaustive search: {0}")]
    TooLarge(&'static str),
    #[error("invalid {which}: {error}")]
    Invalid { which: &'static str, error: PositionError },
    #[error("invalid instance: {0}")]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error("graph is disconnected ({} components)", .0.components())]
    Disconnected(Census),
}

/// Outcome of a shortest-path search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    /// Optimal move count; `None` when no matching position is reachable.
    pub distance: Option<usize>,
    pub trace: Option<ShuntTrace>,
    pub explored: u64,
    pub peak_frontier: u64,
}

/// Largest optimal distance over a set of starts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WorstCase {
    /// `None` when some start cannot reach the goal at all.
    pub moves: Option<usize>,
    /// A start attaining the maximum (canonically least among them).
    pub witness: Position,
    pub starts: u64,
    pub explored: u64,
}

/// Connected components of a whole graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    /// Component sizes, in order of each component's first state.
    pub sizes: Vec<u64>,
}

impl Census {
    pub fn components(&self) -> usize {
        self.sizes.len()
    }

    pub fn states(&self) -> u64 {
        self.sizes.iter().sum()
    }

    pub fn is_connected(&self) -> bool {
        self.sizes.len() == 1
    }
}

/// Exact distance between the sorted and reversed states of the lower-bound
/// family, in both graphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reversal {
    pub wagons: usize,
    pub shunt_moves: usize,
    pub card_moves: usize,
    /// `⌈(w² - 1) / 2⌉`.
    pub lower_bound: usize,
}

/// Number of positions of `spec`.
pub fn position_count(spec: &PuzzleSpec) -> u128 {
    compositions(&spec.capacities(), spec.wagons()).len() as u128 * factorial(spec.wagons())
}

/// Number of states of a cards-in-piles instance.
pub fn cards_state_count(spec: &CardsSpec) -> u128 {
    compositions(spec.capacities(), spec.cards()).len() as u128 * factorial(spec.cards())
}

/// Shortest solution from `start` to any position matching `goal`.
///
/// Among optimal traces the one returned ends at the canonically least goal
/// position of the first level reaching the goal, and each step uses the
/// smallest `(siding, direction, count)` move into its state.
pub fn optimal_solve(
    spec: &PuzzleSpec,
    start: &Position,
    goal: &GoalPattern,
    config: &SearchConfig,
) -> Result<SearchReport, SearchError> {
    spec.check_position(start).map_err(|error| SearchError::Invalid { which: "start position", error })?;
    goal.check(spec)?;
    let codec =
        KeyCodec::new(spec.wagons(), spec.track_count()).ok_or(SearchError::TooLarge("state keys exceed 128 bits"))?;
    let caps = spec.capacities();
    let workers = Workers::new(config.threads);
    let outcome = bfs::shortest(
        codec,
        &Layout::from_tracks(start.tracks()),
        |l, f| shunt_successors(l, &caps, |mv, next| f(mv, next)),
        |l| goal.matches_layout(l),
        config.budget,
        &workers,
    )
    .map_err(|_| SearchError::BudgetExceeded { budget: config.budget, estimate: position_count(spec) })?;

    let (distance, trace) = match outcome.found {
        Some((node, depth)) => {
            let finish = Position::new(codec.unpack(outcome.tree.key(node)).to_tracks());
            let moves = outcome.tree.path(node);
            debug_assert_eq!(moves.len(), depth);
            (Some(depth), Some(SolutionTrace { start: start.clone(), finish, moves }))
        }
        None => (None, None),
    };
    Ok(SearchReport { distance, trace, explored: outcome.explored, peak_frontier: outcome.peak_frontier })
}

/// Largest optimal distance to `goal` over all positions matching `starts`,
/// by one multi-source search outward from every goal position.
///
/// When both patterns name no wagons, every relabelling of the goal gives
/// the same answer, so the result is also the maximum over the goal's orbit.
pub fn worst_case_moves(
    spec: &PuzzleSpec,
    starts: &GoalPattern,
    goal: &GoalPattern,
    config: &SearchConfig,
) -> Result<WorstCase, SearchError> {
    starts.check(spec)?;
    goal.check(spec)?;
    let dense = dense_for(&spec.capacities(), spec.wagons(), Kind::Shunt, config, position_count(spec))?;
    let workers = Workers::new(config.threads);
    let sources: Vec<u64> = (0..dense.total()).filter(|&i| goal.matches_layout(&dense.layout(i))).collect();
    let dist = dense.distances(&sources, &workers, |_| false);
    let explored = dist.iter().filter(|&&d| d != UNSEEN).count() as u64;

    let mut count = 0u64;
    let mut best: Option<(u16, Vec<u8>)> = None;
    for i in 0..dense.total() {
        let l = dense.layout(i);
        if !starts.matches_layout(&l) {
            continue;
        }
        count += 1;
        let d = dist[i as usize];
        let better = match &best {
            None => true,
            Some((b, _)) if d != *b => d > *b,
            Some((_, enc)) => encode(&l) < *enc,
        };
        if better {
            best = Some((d, encode(&l)));
        }
    }
    let (d, enc) = best.expect("a satisfiable start pattern has a match");
    let witness = crate::model::decode_encoding(spec, &enc).expect("encoding of a valid layout");
    Ok(WorstCase { moves: (d != UNSEEN).then_some(d as usize), witness, starts: count, explored })
}

/// Components of the inglenook graph of `spec`.
pub fn inglenook_census(spec: &PuzzleSpec, config: &SearchConfig) -> Result<Census, SearchError> {
    let dense = dense_for(&spec.capacities(), spec.wagons(), Kind::Shunt, config, position_count(spec))?;
    Ok(Census { sizes: dense.components(&Workers::new(config.threads)) })
}

/// Components of the cards-in-piles graph of `spec`.
pub fn cards_component_census(spec: &CardsSpec, config: &SearchConfig) -> Result<Census, SearchError> {
    let dense = dense_for(spec.capacities(), spec.cards(), Kind::Cards, config, cards_state_count(spec))?;
    Ok(Census { sizes: dense.components(&Workers::new(config.threads)) })
}

/// Exact diameter of a connected cards-in-piles graph by a search from every
/// state. For the family with capacities `(w-1, w-1, 1)` the result is
/// checked against the `⌈(w² - 1) / 4⌉` lower bound.
pub fn cards_diameter(spec: &CardsSpec, config: &SearchConfig) -> Result<usize, SearchError> {
    let n = cards_state_count(spec);
    if n.saturating_mul(n) > config.budget as u128 {
        return Err(SearchError::BudgetExceeded { budget: config.budget, estimate: n.saturating_mul(n) });
    }
    let dense = dense_for(spec.capacities(), spec.cards(), Kind::Cards, config, n)?;
    let diameter = all_sources_diameter(&dense, &Workers::new(config.threads))?;
    let w = spec.cards();
    if w >= 2 && spec.capacities() == [w - 1, w - 1, 1] {
        assert!(diameter >= (w * w - 1).div_ceil(4), "diameter {diameter} below the lower bound for {w} cards");
    }
    Ok(diameter)
}

/// Exact diameter of a connected inglenook graph by a search from every
/// position.
pub fn inglenook_diameter(spec: &PuzzleSpec, config: &SearchConfig) -> Result<usize, SearchError> {
    let n = position_count(spec);
    if n.saturating_mul(n) > config.budget as u128 {
        return Err(SearchError::BudgetExceeded { budget: config.budget, estimate: n.saturating_mul(n) });
    }
    let dense = dense_for(&spec.capacities(), spec.wagons(), Kind::Shunt, config, n)?;
    all_sources_diameter(&dense, &Workers::new(config.threads))
}

fn all_sources_diameter(dense: &Dense, workers: &Workers) -> Result<usize, SearchError> {
    let census = Census { sizes: dense.components(workers) };
    if !census.is_connected() {
        return Err(SearchError::Disconnected(census));
    }
    let mut diameter = 0u16;
    for s in 0..dense.total() {
        let dist = dense.distances(&[s], workers, |_| false);
        diameter = diameter.max(*dist.iter().max().unwrap());
    }
    Ok(diameter as usize)
}

/// Exact distance between two card states; `None` when unreachable.
pub fn cards_distance(
    spec: &CardsSpec,
    from: &CardsState,
    to: &CardsState,
    config: &SearchConfig,
) -> Result<Option<usize>, SearchError> {
    spec.check_state(from).map_err(|error| SearchError::Invalid { which: "start state", error })?;
    spec.check_state(to).map_err(|error| SearchError::Invalid { which: "goal state", error })?;
    let dense = dense_for(spec.capacities(), spec.cards(), Kind::Cards, config, cards_state_count(spec))?;
    let a = dense.index(&Layout::from_tracks(from.piles()));
    let b = dense.index(&Layout::from_tracks(to.piles()));
    let dist = dense.distances(&[a], &Workers::new(config.threads), |i| i == b);
    let d = dist[b as usize];
    Ok((d != UNSEEN).then_some(d as usize))
}

/// Shortest card trace between two states, with the smallest `(from, to)`
/// move preferred at every step.
pub fn optimal_cards(
    spec: &CardsSpec,
    from: &CardsState,
    to: &CardsState,
    config: &SearchConfig,
) -> Result<Option<CardTrace>, SearchError> {
    spec.check_state(from).map_err(|error| SearchError::Invalid { which: "start state", error })?;
    spec.check_state(to).map_err(|error| SearchError::Invalid { which: "goal state", error })?;
    let codec =
        KeyCodec::new(spec.cards(), spec.pile_count()).ok_or(SearchError::TooLarge("state keys exceed 128 bits"))?;
    let caps = spec.capacities();
    let target = Layout::from_tracks(to.piles());
    let outcome = bfs::shortest(
        codec,
        &Layout::from_tracks(from.piles()),
        |l, f| card_successors(l, caps, |mv, next| f(mv, next)),
        |l| *l == target,
        config.budget,
        &Workers::new(config.threads),
    )
    .map_err(|_| SearchError::BudgetExceeded { budget: config.budget, estimate: cards_state_count(spec) })?;
    Ok(outcome.found.map(|(node, _)| SolutionTrace {
        start: from.clone(),
        finish: to.clone(),
        moves: outcome.tree.path(node),
    }))
}

/// Distance between the in-order and reversed convertible positions on the
/// layout with headshunt 1 and sidings `(w-1, w-1, 1)`, checked against
/// twice the card distance and the `⌈(w² - 1) / 2⌉` lower bound.
pub fn reversal_distance(w: usize, config: &SearchConfig) -> Result<Reversal, SearchError> {
    if w < 2 {
        return Err(SearchError::TooLarge("the reversal family needs at least two wagons"));
    }
    let spec = PuzzleSpec::new(w, 1, alloc::vec![w - 1, w - 1, 1])?;
    let (z, z_rev) = reversal_states(w);
    let x = from_cards(&spec, &z).expect("valid card state");
    let x_rev = from_cards(&spec, &z_rev).expect("valid card state");

    let report = optimal_solve(&spec, &x, &GoalPattern::exact(&x_rev), config)?;
    let shunt_moves = report.distance.expect("the reversal family is connected");
    let card_moves = cards_distance(&spec.cards_spec(), &z, &z_rev, config)?.expect("connected");
    let lower_bound = (w * w - 1).div_ceil(2);
    assert_eq!(shunt_moves, 2 * card_moves, "shunting distance is not twice the card distance");
    assert!(shunt_moves >= lower_bound, "distance {shunt_moves} below the lower bound {lower_bound}");
    Ok(Reversal { wagons: w, shunt_moves, card_moves, lower_bound })
}

/// Card states `(1..w-1 | w | -)` and `(w..2 | 1 | -)`, whose pile orderings
/// are `1..w` and its reverse.
pub fn reversal_states(w: usize) -> (CardsState, CardsState) {
    let w8 = w as u8;
    let up: Vec<u8> = (1..w8).collect();
    let down: Vec<u8> = (2..=w8).rev().collect();
    (CardsState::from_labels(&[&up, &[w8], &[]]), CardsState::from_labels(&[&down, &[1], &[]]))
}

fn dense_for(
    caps: &[usize],
    items: usize,
    kind: Kind,
    config: &SearchConfig,
    estimate: u128,
) -> Result<Dense, SearchError> {
    if estimate > config.budget as u128 {
        return Err(SearchError::BudgetExceeded { budget: config.budget, estimate });
    }
    Dense::new(caps, items, kind).ok_or(SearchError::TooLarge("too many wagons for dense state numbering"))
}

fn encode(l: &Layout) -> Vec<u8> {
    let mut out = Vec::new();
    for t in 0..l.track_count() {
        if t > 0 {
            out.push(0);
        }
        out.extend_from_slice(l.track(t));
    }
    out
}
