mod oracle;

use std::collections::HashSet;

use inglenook_core::model::{
    apply_card_move, apply_move, canonical_encoding, decode_encoding, from_cards, is_convertible, legal_card_moves,
    legal_moves, to_cards, ConvertError, Direction, MoveError,
};
use inglenook_core::{CardsState, Position, PuzzleSpec, ShuntMove, WagonId};
use proptest::prelude::*;

fn spec_strategy(max_wagons: usize) -> impl Strategy<Value = PuzzleSpec> {
    (1usize..=4, prop::collection::vec(1usize..=5, 1..=4))
        .prop_flat_map(move |(h, m)| {
            let room = h + m.iter().sum::<usize>();
            (Just(h), Just(m), 1..room.min(max_wagons + 1))
        })
        .prop_map(|(h, m, w)| PuzzleSpec::new(w, h, m).unwrap())
}

fn capacities(spec: &PuzzleSpec) -> Vec<usize> {
    std::iter::once(spec.headshunt()).chain(spec.sidings().iter().copied()).collect()
}

/// Deals the wagons in order onto tracks chosen by `picks`, skipping full ones.
fn deal(caps: &[usize], order: &[u8], picks: &[usize]) -> Vec<Vec<u8>> {
    let mut tracks = vec![Vec::new(); caps.len()];
    for (&x, &p) in order.iter().zip(picks) {
        let open: Vec<usize> = (0..caps.len()).filter(|&t| tracks[t].len() < caps[t]).collect();
        tracks[open[p % open.len()]].push(x);
    }
    tracks
}

fn to_position(tracks: &[Vec<u8>]) -> Position {
    let refs: Vec<&[u8]> = tracks.iter().map(|t| t.as_slice()).collect();
    Position::from_labels(&refs)
}

fn position_strategy(spec: PuzzleSpec) -> impl Strategy<Value = (PuzzleSpec, Position)> {
    let w = spec.wagons();
    let order = Just((1..=w as u8).collect::<Vec<_>>()).prop_shuffle();
    (Just(spec), order, prop::collection::vec(any::<usize>(), w)).prop_map(|(spec, order, picks)| {
        let p = to_position(&deal(&capacities(&spec), &order, &picks));
        (spec, p)
    })
}

fn instance() -> impl Strategy<Value = (PuzzleSpec, Position)> {
    spec_strategy(9).prop_flat_map(position_strategy)
}

fn labels(p: &Position) -> Vec<u8> {
    let mut v: Vec<u8> = p.tracks().iter().flatten().map(|w| w.get()).collect();
    v.sort_unstable();
    v
}

fn concat(a: &[WagonId], b: &[WagonId]) -> Vec<WagonId> {
    a.iter().chain(b).copied().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn every_move_has_an_inverse((spec, p) in instance()) {
        for mv in legal_moves(&spec, &p).unwrap() {
            let q = apply_move(&spec, &p, mv).unwrap();
            prop_assert_ne!(&q, &p);
            prop_assert!(legal_moves(&spec, &q).unwrap().contains(&mv.inverse()));
            prop_assert_eq!(apply_move(&spec, &q, mv.inverse()).unwrap(), p.clone());
        }
    }

    #[test]
    fn moves_conserve_wagons_and_respect_capacity((spec, p) in instance()) {
        for mv in legal_moves(&spec, &p).unwrap() {
            let q = apply_move(&spec, &p, mv).unwrap();
            prop_assert_eq!(labels(&q), labels(&p));
            prop_assert!(q.headshunt().len() <= spec.headshunt());
            for r in 1..=spec.siding_count() {
                prop_assert!(q.siding(r).len() <= spec.capacity(r));
            }
            prop_assert!(spec.check_position(&q).is_ok());
        }
    }

    #[test]
    fn moves_keep_headshunt_and_siding_concatenation((spec, p) in instance()) {
        for mv in legal_moves(&spec, &p).unwrap() {
            let q = apply_move(&spec, &p, mv).unwrap();
            let r = mv.siding;
            prop_assert_eq!(concat(p.headshunt(), p.siding(r)), concat(q.headshunt(), q.siding(r)));
            for t in 1..=spec.siding_count() {
                if t != r {
                    prop_assert_eq!(p.siding(t), q.siding(t));
                }
            }
        }
    }

    #[test]
    fn legal_moves_are_exactly_the_fitting_transfers((spec, p) in instance()) {
        let moves: HashSet<ShuntMove> = legal_moves(&spec, &p).unwrap().into_iter().collect();
        let room = spec.headshunt() - p.headshunt().len();
        for r in 1..=spec.siding_count() {
            for k in 1..=spec.wagons() {
                let pull = ShuntMove::pull(k, r);
                let fits = k <= room && k <= p.siding(r).len();
                prop_assert_eq!(moves.contains(&pull), fits);
                prop_assert_eq!(apply_move(&spec, &p, pull).is_ok(), fits);
                let push = ShuntMove::push(k, r);
                let fits = k <= p.headshunt().len() && k <= spec.capacity(r) - p.siding(r).len();
                prop_assert_eq!(moves.contains(&push), fits);
                prop_assert_eq!(apply_move(&spec, &p, push).is_ok(), fits);
            }
        }
    }

    #[test]
    fn one_siding_never_reorders(
        (spec, p) in (1usize..=4, 1usize..=6)
            .prop_flat_map(|(h, m)| (Just(h), Just(m), 1..h + m))
            .prop_map(|(h, m, w)| PuzzleSpec::new(w, h, vec![m]).unwrap())
            .prop_flat_map(position_strategy),
        picks in prop::collection::vec(any::<usize>(), 0..40),
    ) {
        let reading = concat(p.headshunt(), p.siding(1));
        let mut cur = p;
        for pick in picks {
            let moves = legal_moves(&spec, &cur).unwrap();
            if moves.is_empty() {
                break;
            }
            cur = apply_move(&spec, &cur, moves[pick % moves.len()]).unwrap();
            prop_assert_eq!(concat(cur.headshunt(), cur.siding(1)), reading.clone());
        }
    }

    #[test]
    fn card_correspondence_round_trips((spec, p) in instance()) {
        match to_cards(&spec, &p) {
            Ok(c) => {
                prop_assert!(is_convertible(&spec, &p));
                prop_assert!(spec.cards_spec().check_state(&c).is_ok());
                prop_assert_eq!(from_cards(&spec, &c).unwrap(), p.clone());
            }
            Err(e) => {
                prop_assert_eq!(e, ConvertError::NotConvertible);
                prop_assert_eq!(p.headshunt().len(), spec.headshunt());
            }
        }
    }

    #[test]
    fn card_states_round_trip(
        (spec, order, picks) in spec_strategy(9).prop_flat_map(|spec| {
            let w = spec.wagons();
            (Just(spec), Just((1..=w as u8).collect::<Vec<_>>()).prop_shuffle(), prop::collection::vec(any::<usize>(), w))
        }),
    ) {
        let cards = spec.cards_spec();
        let c = deal(cards.capacities(), &order, &picks);
        let refs: Vec<&[u8]> = c.iter().map(|t| t.as_slice()).collect();
        let c = CardsState::from_labels(&refs);
        let p = from_cards(&spec, &c).unwrap();
        prop_assert!(is_convertible(&spec, &p));
        prop_assert_eq!(to_cards(&spec, &p).unwrap(), c.clone());
        let expected_piles = spec.siding_count() + usize::from(spec.headshunt() > 1);
        prop_assert_eq!(c.piles().len(), expected_piles);
        // A card move is a single shunting move exactly when it involves the headshunt pile.
        for mv in legal_card_moves(&cards, &c).unwrap() {
            let next = from_cards(&spec, &apply_card_move(&cards, &c, mv).unwrap()).unwrap();
            let direct = legal_moves(&spec, &p).unwrap().into_iter().any(|s| apply_move(&spec, &p, s).unwrap() == next);
            let touches_headshunt = spec.headshunt() > 1 && (mv.from == 0 || mv.to == 0);
            prop_assert_eq!(direct, touches_headshunt);
        }
    }

    #[test]
    fn encoding_round_trips_with_fixed_width((spec, p) in instance(), (_, q) in instance()) {
        let e = canonical_encoding(&spec, &p);
        prop_assert_eq!(e.len(), spec.wagons() + spec.siding_count());
        prop_assert_eq!(decode_encoding(&spec, &e).unwrap(), p.clone());
        if spec.check_position(&q).is_ok() {
            prop_assert_eq!(canonical_encoding(&spec, &q).len(), e.len());
            prop_assert_eq!(canonical_encoding(&spec, &q) == e, q == p);
        }
    }
}

#[test]
fn encoding_injective_over_every_position() {
    for (w, h, m) in [(4, 2, vec![2, 3]), (5, 3, vec![1, 2, 2]), (3, 1, vec![1, 1, 1])] {
        let spec = PuzzleSpec::new(w, h, m.clone()).unwrap();
        let all = oracle::all_states(&oracle::shunt_caps(h, &m), w);
        let codes: HashSet<Vec<u8>> = all
            .iter()
            .map(|t| {
                let p = to_position(t);
                let e = canonical_encoding(&spec, &p);
                assert_eq!(decode_encoding(&spec, &e).unwrap(), p);
                e
            })
            .collect();
        assert_eq!(codes.len(), all.len());
    }
}

#[test]
fn worked_move_examples() {
    let spec = PuzzleSpec::classic();
    let p = Position::from_labels(&[&[], &[], &[4, 7, 8], &[1, 6, 2, 3, 5]]);
    let mut moves = legal_moves(&spec, &p).unwrap();
    moves.sort();
    let expected: Vec<ShuntMove> = [2, 3].iter().flat_map(|&r| (1..=3).map(move |k| ShuntMove::pull(k, r))).collect();
    assert_eq!(moves, expected);

    let q = apply_move(&spec, &p, ShuntMove::pull(2, 3)).unwrap();
    assert_eq!(q, Position::from_labels(&[&[1, 6], &[], &[4, 7, 8], &[2, 3, 5]]));
    assert_eq!(apply_move(&spec, &q, ShuntMove::push(2, 3)).unwrap(), p);

    let fig4 = Position::from_labels(&[&[], &[], &[6, 1, 8], &[5, 4, 7, 2, 3]]);
    assert_eq!(
        apply_move(&spec, &fig4, ShuntMove::pull(2, 2)).unwrap(),
        Position::from_labels(&[&[6, 1], &[], &[8], &[5, 4, 7, 2, 3]])
    );

    let full = PuzzleSpec::new(3, 3, vec![2, 2]).unwrap();
    let p = Position::from_labels(&[&[1, 2, 3], &[], &[]]);
    assert!(legal_moves(&full, &p).unwrap().iter().all(|m| m.direction == Direction::Push));

    let single = PuzzleSpec::new(1, 1, vec![1]).unwrap();
    let p = Position::from_labels(&[&[], &[1]]);
    assert_eq!(legal_moves(&single, &p).unwrap(), vec![ShuntMove::pull(1, 1)]);
}

#[test]
fn illegal_moves_name_the_constraint() {
    let spec = PuzzleSpec::classic();
    let p = Position::from_labels(&[&[1, 6], &[], &[4, 7, 8], &[2, 3, 5]]);
    assert!(matches!(
        apply_move(&spec, &p, ShuntMove::pull(2, 3)),
        Err(MoveError::NoRoom { free: 1, requested: 2, .. })
    ));
    assert!(matches!(
        apply_move(&spec, &p, ShuntMove::pull(1, 1)),
        Err(MoveError::NotEnoughWagons { available: 0, .. })
    ));
    assert!(matches!(
        apply_move(&spec, &p, ShuntMove::push(3, 1)),
        Err(MoveError::NotEnoughWagons { available: 2, requested: 3, .. })
    ));
    assert!(matches!(apply_move(&spec, &p, ShuntMove::push(1, 2)), Err(MoveError::NoRoom { free: 0, .. })));
    assert!(matches!(apply_move(&spec, &p, ShuntMove::push(1, 4)), Err(MoveError::NoSuchSiding { .. })));
    assert_eq!(apply_move(&spec, &p, ShuntMove::push(0, 1)), Err(MoveError::ZeroCount));
}

#[test]
fn convertibility_and_card_images() {
    let spec = PuzzleSpec::classic();
    let p = Position::from_labels(&[&[1, 6], &[], &[4, 7, 8], &[2, 3, 5]]);
    assert!(is_convertible(&spec, &p));
    assert!(!is_convertible(&spec, &Position::from_labels(&[&[1, 6, 4], &[], &[7, 8], &[2, 3, 5]])));
    let c = to_cards(&spec, &p).unwrap();
    assert_eq!(c, CardsState::from_labels(&[&[1, 6], &[], &[8, 7, 4], &[5, 3, 2]]));
    assert_eq!(from_cards(&spec, &c).unwrap(), p);

    let empty = PuzzleSpec::new(1, 3, vec![2, 2]).unwrap();
    let lone = Position::from_labels(&[&[], &[1], &[]]);
    assert_eq!(to_cards(&empty, &lone).unwrap(), CardsState::from_labels(&[&[], &[1], &[]]));

    let full_pile = CardsState::from_labels(&[&[3, 1], &[], &[2], &[]]);
    let spec = PuzzleSpec::new(3, 3, vec![1, 1, 1]).unwrap();
    let q = from_cards(&spec, &full_pile).unwrap();
    assert_eq!(q.headshunt().len(), 2);
    assert!(is_convertible(&spec, &q));

    let unit = PuzzleSpec::new(2, 1, vec![1, 1, 1]).unwrap();
    assert!(is_convertible(&unit, &Position::from_labels(&[&[], &[1], &[2], &[]])));
    assert_eq!(unit.cards_spec().capacities(), &[1, 1, 1]);
}
