//! The Markov chain a fixed strategy pair induces on a game.

use num_traits::{One, Zero};

use crate::error::Result;
use crate::game::{Game, StrategyPair};
use crate::linalg::Matrix;
use crate::rational::Rational;

/// Transition matrix (row = source state) and per-state reward of the
/// action played there, both in the game's state declaration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedChain {
    pub state_order: Vec<String>,
    pub matrix: Matrix,
    pub rewards: Vec<Rational>,
}

impl InducedChain {
    pub fn len(&self) -> usize {
        self.state_order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.state_order.is_empty()
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.state_order.iter().position(|s| s == id)
    }

    /// Every row is a probability vector summing to exactly one.
    pub fn is_stochastic(&self) -> bool {
        self.matrix.iter().all(|row| {
            row.iter().all(|p| p >= &Rational::zero()) && row.iter().sum::<Rational>().is_one()
        })
    }
}

pub fn induced_chain(game: &Game, pair: &StrategyPair) -> Result<InducedChain> {
    pair.check(game)?;
    Ok(induced_chain_unchecked(game, pair))
}

/// As [`induced_chain`], for pairs already known to be valid for `game`.
pub(crate) fn induced_chain_unchecked(game: &Game, pair: &StrategyPair) -> InducedChain {
    let n = game.num_states();
    let mut matrix = vec![vec![Rational::zero(); n]; n];
    let mut rewards = Vec::with_capacity(n);
    for (s, row) in matrix.iter_mut().enumerate() {
        let mv = &game.moves(s)[pair.move_at(s)];
        for (t, p) in &mv.successors {
            row[*t] += p;
        }
        rewards.push(game.reward(mv.action).clone());
    }
    InducedChain {
        state_order: game.state_ids(),
        matrix,
        rewards,
    }
}
