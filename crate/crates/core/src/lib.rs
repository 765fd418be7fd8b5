//! Biased (a:b) Maker-Breaker games on the complete graph K_n.
//!
//! The crate plays minimum-degree-k, connectivity and Hamiltonicity games
//! with the Min-Deg and three-stage Maker strategies and the isolation and
//! clique/box Breaker strategies, and checks the average-danger inequalities
//! of the Min-Deg analysis on recorded traces.

pub mod audit;
pub mod board;
pub mod boxgame;
pub mod breaker;
pub mod engine;
pub mod error;
pub mod harness;
pub mod maker;
pub mod numeric;
pub mod oracles;

pub use board::{Board, Edge, GameParams, Goal, Player};
pub use engine::{play_game, GameOutcome, GameTrace, Strategy};
pub use error::{Error, Result};
