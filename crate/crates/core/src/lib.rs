//! Inglenook shunting puzzles: exact solvability, constructive solutions with
//! guaranteed move bounds, and exhaustive optimal search.
//!
//! The crate is `no_std` and only needs `alloc`. The optional `parallel`
//! feature links `std` and `rayon` to expand breadth-first levels on a thread
//! pool; results are identical to the single-threaded run.
//!
//! Two puzzles are modelled side by side:
//!
//! * the inglenook puzzle ([`model::PuzzleSpec`], [`model::Position`],
//!   [`model::ShuntMove`]), where an engine pulls and pushes blocks of wagons
//!   between a headshunt and a fan of sidings;
//! * the cards-in-piles puzzle ([`model::CardsSpec`], [`model::CardsState`],
//!   [`model::CardMove`]), where single cards move between bounded piles.
//!
//! Positions whose headshunt is not full correspond one-to-one with card
//! states, which is how [`constructive::solve_inglenook`] lifts card solutions
//! to shunting solutions.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(any(test, feature = "parallel"))]
extern crate std;

pub mod constructive;
pub mod feasibility;
mod layout;
pub mod model;
pub mod pattern;
pub mod search;

pub use constructive::{solve_cards, solve_inglenook, solve_to_pattern, SolutionTrace, SolveError};
pub use feasibility::{cards_connected, inglenook_solvable, max_wagons, Branch, FeasibilityVerdict};
pub use model::{CardMove, CardsSpec, CardsState, Direction, Position, PuzzleSpec, ShuntMove, WagonId};
pub use pattern::{Alternative, GoalPattern, TrackConstraint};
pub use search::{SearchConfig, SearchError, SearchReport};
