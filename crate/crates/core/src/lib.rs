//! Solvers for mathematical UNO.
//!
//! Cards are `(color, number)` pairs and two cards match when they share a
//! coordinate. The crate decides solitaire play (`Uno1`), cooperative
//! two-player play (`Coop2`) and uncooperative two-player play (`Uncoop2`), and
//! ships the brute-force oracles and hardness reductions used to cross-check
//! every algorithm.

pub mod cli;
pub mod dp;
pub mod game;
pub mod geography;
pub mod oracles;
pub mod reductions;
pub mod solver;
pub mod unograph;

pub use game::{Card, GameMode, Instance, Move, PlayingSequence};
