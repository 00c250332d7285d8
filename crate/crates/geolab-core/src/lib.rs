//! Generalized Geography in all its rule variants.
//!
//! * [`graph`]: boards with stacked vertices and structural queries.
//! * [`game`]: move generation and application for every variant.
//! * [`solver`]: exact search and the matching characterization.
//! * [`matching`]: blossom maximum matching and related checks.
//! * [`qbf`]: quantified 3-CNF formulas, the source of the hardness reductions.
//! * [`dot`]: Graphviz export.

pub mod dot;
pub mod game;
pub mod graph;
pub mod matching;
pub mod qbf;
pub mod solver;

pub use game::{encode_position, Deletion, IllegalMove, Move, Partisanship, Player, Position, PositionError, Tokens, Variant};
pub use graph::{check_bipartite, max_degree, Bipartition, DegreeStats, Direction, GameGraph, GraphBuilder, GraphError, OddCycle, Orientation, VertexId};
pub use solver::{best_move, solve, solve_brute, solve_by_matching, GameResult, SearchMode, SolveError, SolveReport, Value};
