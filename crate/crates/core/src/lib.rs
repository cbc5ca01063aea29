//! Exact engine, solver and verification suite for the generalized matcher
//! game.
//!
//! In each move one player (always the same one, the *initiator*) names an
//! available vertex `v`, and the other player (the *responder*) removes a
//! copy of a fixed pattern `F` that contains `v` (at the root, for rooted
//! patterns). The game ends when no copy of `F` survives. Maximizer wants
//! many moves, Minimizer few; the value is the number of moves under
//! optimal play.
//!
//! ```
//! use matchgame::{families::gen_path, solve, GameSpec, Pattern, Player};
//!
//! let p7 = gen_path(7).unwrap();
//! let spec = GameSpec::new(Pattern::Stripe, Player::Min);
//! assert_eq!(solve(&p7.graph, &spec).unwrap().value, 2);
//! ```

pub mod engine;
pub mod error;
pub mod families;
pub mod graph;
pub mod packing;
pub mod random;
pub mod solver;
pub mod strategies;
pub mod tree;
pub mod verify;

pub use engine::{GameSpec, GameState, Move, Pattern, Player, Role};
pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
pub use packing::{has_k3_partition, min_maximal, mu, PackingResult};
pub use solver::{is_perfect, solve, solve_with, SolveOptions, SolveResult, Solver};
pub use tree::{enumerate_free_trees, tree_code, TreeCode};
