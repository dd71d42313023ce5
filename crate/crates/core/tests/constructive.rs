use inglenook_core::constructive::{card_move_bound, lift_card_moves, shunt_move_bound, CardTrace, ShuntTrace};
use inglenook_core::model::{apply_card_move, apply_move, is_convertible, to_cards};
use inglenook_core::pattern::PatternError;
use inglenook_core::{
    cards_connected, inglenook_solvable, solve_cards, solve_inglenook, solve_to_pattern, Alternative, CardMove,
    CardsSpec, CardsState, GoalPattern, Position, PuzzleSpec, SolveError, TrackConstraint,
};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

fn deal(caps: &[usize], order: &[u8], picks: &[usize]) -> Vec<Vec<u8>> {
    let mut tracks = vec![Vec::new(); caps.len()];
    for (&x, &p) in order.iter().zip(picks) {
        let open: Vec<usize> = (0..caps.len()).filter(|&t| tracks[t].len() < caps[t]).collect();
        tracks[open[p % open.len()]].push(x);
    }
    tracks
}

fn refs(t: &[Vec<u8>]) -> Vec<&[u8]> {
    t.iter().map(|v| v.as_slice()).collect()
}

/// Two random placements of `w` items on tracks with capacities `caps`.
fn endpoints(caps: Vec<usize>, w: usize) -> impl Strategy<Value = (Vec<Vec<u8>>, Vec<Vec<u8>>)> {
    let order = || Just((1..=w as u8).collect::<Vec<_>>()).prop_shuffle();
    let picks = || prop::collection::vec(any::<usize>(), w);
    (order(), picks(), order(), picks())
        .prop_map(move |(o1, p1, o2, p2)| (deal(&caps, &o1, &p1), deal(&caps, &o2, &p2)))
}

fn solvable_instance() -> impl Strategy<Value = (PuzzleSpec, Position, Position)> {
    (1usize..=4, prop::collection::vec(1usize..=5, 2..=4), 1usize..=8)
        .prop_filter_map("unsolvable", |(h, m, w)| {
            let spec = PuzzleSpec::new(w, h, m).ok()?;
            inglenook_solvable(&spec).solvable.then_some(spec)
        })
        .prop_flat_map(|spec| {
            let mut caps = vec![spec.headshunt()];
            caps.extend_from_slice(spec.sidings());
            (Just(spec.clone()), endpoints(caps, spec.wagons()))
        })
        .prop_map(|(spec, (a, b))| (spec, Position::from_labels(&refs(&a)), Position::from_labels(&refs(&b))))
}

fn connected_cards() -> impl Strategy<Value = (CardsSpec, CardsState, CardsState)> {
    (prop::collection::vec(1usize..=4, 2..=5), 1usize..=8)
        .prop_filter_map("disconnected", |(caps, w)| {
            let spec = CardsSpec::new(w, caps).ok()?;
            cards_connected(&spec).solvable.then_some(spec)
        })
        .prop_flat_map(|spec| (Just(spec.clone()), endpoints(spec.capacities().to_vec(), spec.cards())))
        .prop_map(|(spec, (a, b))| (spec, CardsState::from_labels(&refs(&a)), CardsState::from_labels(&refs(&b))))
}

fn seeded(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(Config { cases, ..Config::default() }, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

/// Replays a shunting trace step by step, checking every intermediate position.
fn replay(spec: &PuzzleSpec, t: &ShuntTrace) -> Position {
    let mut p = t.start.clone();
    for &mv in &t.moves {
        p = apply_move(spec, &p, mv).unwrap();
        spec.check_position(&p).unwrap();
    }
    p
}

fn replay_cards(spec: &CardsSpec, t: &CardTrace) -> CardsState {
    let mut c = t.start.clone();
    for &mv in &t.moves {
        c = apply_card_move(spec, &c, mv).unwrap();
        spec.check_state(&c).unwrap();
    }
    c
}

#[test]
fn thousand_seeded_shunting_instances() {
    seeded(1000)
        .run(&solvable_instance(), |(spec, start, goal)| {
            let t = solve_inglenook(&spec, &start, &goal).unwrap();
            prop_assert_eq!(&t.start, &start);
            prop_assert_eq!(&t.finish, &goal);
            prop_assert_eq!(replay(&spec, &t), goal);
            prop_assert!(t.len() <= shunt_move_bound(spec.wagons()));
            Ok(())
        })
        .unwrap();
}

#[test]
fn thousand_seeded_card_instances() {
    seeded(1000)
        .run(&connected_cards(), |(spec, start, goal)| {
            let t = solve_cards(&spec, &start, &goal).unwrap();
            prop_assert_eq!(replay_cards(&spec, &t), goal);
            prop_assert!(t.len() <= card_move_bound(spec.cards()));
            Ok(())
        })
        .unwrap();
}

#[test]
fn lifted_trace_projects_onto_the_card_trace() {
    seeded(300)
        .run(&solvable_instance(), |(spec, start, goal)| {
            prop_assume!(start != goal && is_convertible(&spec, &start) && is_convertible(&spec, &goal));
            let cards = spec.cards_spec();
            let a = to_cards(&spec, &start).unwrap();
            let b = to_cards(&spec, &goal).unwrap();
            let card_trace = solve_cards(&cards, &a, &b).unwrap();
            let shunt_trace = solve_inglenook(&spec, &start, &goal).unwrap();
            prop_assert_eq!(&shunt_trace.moves, &lift_card_moves(&spec, &card_trace.moves));

            // The positions closing each card move's group of shunting moves
            // map back to the card states along the card trace.
            let positions = shunt_trace.positions(&spec).unwrap();
            let mut at = 0;
            let mut state = a;
            for &mv in &card_trace.moves {
                at += lift_card_moves(&spec, &[mv]).len();
                state = apply_card_move(&cards, &state, mv).unwrap();
                prop_assert!(is_convertible(&spec, &positions[at]));
                prop_assert_eq!(to_cards(&spec, &positions[at]).unwrap(), state.clone());
            }
            prop_assert_eq!(at, shunt_trace.len());
            Ok(())
        })
        .unwrap();
}

#[test]
fn classic_traces_within_214() {
    let spec = PuzzleSpec::classic();
    assert_eq!(shunt_move_bound(8), 214);
    let caps = vec![3, 3, 3, 5];
    seeded(300)
        .run(&endpoints(caps, 8), |(a, b)| {
            let (start, goal) = (Position::from_labels(&refs(&a)), Position::from_labels(&refs(&b)));
            let t = solve_inglenook(&spec, &start, &goal).unwrap();
            prop_assert_eq!(replay(&spec, &t), goal);
            prop_assert!(t.len() <= 214);
            Ok(())
        })
        .unwrap();

    let start = Position::from_labels(&[&[], &[], &[4, 7, 8], &[1, 6, 2, 3, 5]]);
    let finish = Position::from_labels(&[&[], &[], &[1, 3, 2], &[4, 5, 6, 7, 8]]);
    let t = solve_inglenook(&spec, &start, &finish).unwrap();
    assert_eq!(replay(&spec, &t), finish);
    assert!(t.len() <= 214);
}

#[test]
fn unit_headshunt_doubles_every_card_move() {
    for w in 2..=5 {
        let spec = PuzzleSpec::new(w, 1, vec![w - 1, w - 1, 1]).unwrap();
        seeded(50)
            .run(&endpoints(vec![0, w - 1, w - 1, 1], w), |(a, b)| {
                let (start, goal) = (Position::from_labels(&refs(&a)), Position::from_labels(&refs(&b)));
                let cards = solve_cards(
                    &spec.cards_spec(),
                    &to_cards(&spec, &start).unwrap(),
                    &to_cards(&spec, &goal).unwrap(),
                )
                .unwrap();
                let t = solve_inglenook(&spec, &start, &goal).unwrap();
                prop_assert_eq!(t.len(), 2 * cards.len());
                Ok(())
            })
            .unwrap();
    }
}

#[test]
fn identity_and_transposition() {
    let spec = PuzzleSpec::classic();
    let p = Position::from_labels(&[&[1, 6], &[], &[4, 7, 8], &[2, 3, 5]]);
    assert!(solve_inglenook(&spec, &p, &p).unwrap().is_empty());

    let cards = CardsSpec::new(3, vec![1, 1, 1, 1]).unwrap();
    let a = CardsState::from_labels(&[&[1], &[2], &[3], &[]]);
    let b = CardsState::from_labels(&[&[2], &[1], &[3], &[]]);
    let t = solve_cards(&cards, &a, &b).unwrap();
    assert_eq!(t.len(), 3);
    assert!(solve_cards(&cards, &a, &a).unwrap().is_empty());

    let one = CardsSpec::new(1, vec![1, 1]).unwrap();
    let t = solve_cards(&one, &CardsState::from_labels(&[&[1], &[]]), &CardsState::from_labels(&[&[], &[1]])).unwrap();
    assert_eq!(t.moves, vec![CardMove::new(0, 1)]);
}

#[test]
fn refusals_carry_the_verdict() {
    let spec = PuzzleSpec::new(9, 3, vec![3, 3, 5]).unwrap();
    let a = Position::from_labels(&[&[], &[1], &[2, 3, 4], &[5, 6, 7, 8, 9]]);
    let b = Position::from_labels(&[&[], &[2], &[1, 3, 4], &[5, 6, 7, 8, 9]]);
    match solve_inglenook(&spec, &a, &b) {
        Err(SolveError::Unsolvable(v)) => assert!(!v.solvable && v.slack < 0),
        other => panic!("{other:?}"),
    }

    let two = CardsSpec::new(2, vec![2, 2]).unwrap();
    let r = solve_cards(&two, &CardsState::from_labels(&[&[1, 2], &[]]), &CardsState::from_labels(&[&[2, 1], &[]]));
    assert!(matches!(r, Err(SolveError::Disconnected(_))));
}

#[test]
fn pattern_goals() {
    let spec = PuzzleSpec::classic();
    let start = Position::from_labels(&[&[], &[], &[4, 7, 8], &[1, 6, 2, 3, 5]]);
    let ordered = TrackConstraint::Exact(inglenook_core::model::wagons(&[4, 5, 6, 7, 8]));
    let short = TrackConstraint::AnyOrder(inglenook_core::model::wagons(&[1, 2, 3]));
    let either = GoalPattern::new(vec![
        Alternative::any(4).with(0, TrackConstraint::Empty).with(1, short.clone()).with(3, ordered.clone()),
        Alternative::any(4).with(0, TrackConstraint::Empty).with(2, short).with(3, ordered),
    ])
    .unwrap();
    let t = solve_to_pattern(&spec, &start, &either).unwrap();
    assert!(either.matches(&replay(&spec, &t)));
    assert!(t.len() <= 214);

    let here = GoalPattern::exact(&start);
    assert!(solve_to_pattern(&spec, &start, &here).unwrap().is_empty());

    let crowded = GoalPattern::new(vec![
        Alternative::any(4).with(1, TrackConstraint::AnyOrder(inglenook_core::model::wagons(&[1, 2, 3, 4])))
    ])
    .unwrap();
    match solve_to_pattern(&spec, &start, &crowded) {
        Err(SolveError::Pattern(PatternError::Unsatisfiable(conflicts))) => assert!(!conflicts.is_empty()),
        other => panic!("{other:?}"),
    }
}

#[test]
fn non_convertible_endpoints() {
    let spec = PuzzleSpec::classic();
    let start = Position::from_labels(&[&[1, 2, 3], &[], &[4, 5, 6], &[7, 8]]);
    let goal = Position::from_labels(&[&[8, 7, 6], &[3, 2], &[1], &[5, 4]]);
    let t = solve_inglenook(&spec, &start, &goal).unwrap();
    assert_eq!(replay(&spec, &t), goal);
    assert!(t.len() <= 214);
}
