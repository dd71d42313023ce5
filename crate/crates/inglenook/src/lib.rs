//! File formats, seeded instance generation and the command-line front end
//! for inglenook shunting puzzles. The solvers live in `inglenook-core`.

pub mod cli;
pub mod format;
pub mod gen;
pub mod labels;

pub use labels::LabelTable;
