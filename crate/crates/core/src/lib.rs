//! Exact tools for finite perfect-information zero-sum stochastic games.
//!
//! The crate evaluates positional strategy pairs under the discounted and
//! mean payoff criteria with rational arithmetic, builds the beta-recurrent
//! and mirror constructions, and checks the identities linking them:
//!
//! * the mean payoff of the beta-recurrent game reset at `s0` equals the
//!   discounted payoff of the original game from `s0`, pair by pair;
//! * the mirror of a beta-recurrent game has value 0 everywhere, and its
//!   optimal strategies restrict to optimal strategies of the source.
//!
//! Together these solve mean payoff games strategically through any oracle
//! for strategy recovery ([`solvers::strategic_via_recovery`]).

pub mod chain;
pub mod error;
pub mod eval;
pub mod game;
pub mod generate;
pub mod io;
pub mod linalg;
pub mod rational;
pub mod solvers;
pub mod transforms;

pub use chain::{induced_chain, InducedChain};
pub use error::{Error, Result};
pub use eval::{
    discounted_values, mean_values, recurrent_stationary, simulate_mean_payoff,
    verify_stationary_recursion, Distribution, ValueVector,
};
pub use game::{
    enumerate_strategies, validate_game, Game, Player, PositionalStrategy, RawGame, StrategyFile,
    StrategyPair, DEFAULT_CAP,
};
pub use rational::Rational;
pub use solvers::{
    brute_force_solve, greedy_recovery_discounted, reference_recovery_oracle,
    strategic_via_recovery, strategy_iteration_discounted, verify_star, verify_star2, Criterion,
    RecoveryOracle, ReferenceOracle, Solution,
};
pub use transforms::{
    beta_recurrent, decompose_mirror_strategies, mirror, TransformKind, TransformMap,
};
