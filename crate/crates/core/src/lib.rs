//! Enumeration of standard puzzles: rows of 2×2 pieces labelled by a
//! permutation, counted by support.

pub mod counting;
pub mod error;
pub mod pieces;
pub mod sequences;
pub mod skeleton;
pub mod theorems;
pub mod transforms;

pub use counting::{
    corner_table, count_bruteforce, count_dp, enumerate_puzzles, BruteForce, CornerTable,
};
pub use error::{Error, Result};
pub use pieces::{minimal_support, pieces_of, reduce, PieceClass, Puzzle, StandardPiece, Support};
pub use transforms::SupportMap;
