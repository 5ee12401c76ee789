#![allow(dead_code)]

use smpg::generate::{generate_game, GeneratorConfig};
use smpg::rational::{ratio, Rational};
use smpg::Game;

/// Random game with `states` states, 1-2 actions per state and 1-3
/// successors per action.
pub fn small_game(states: usize, seed: u64) -> Game {
    generate_game(&GeneratorConfig {
        states,
        actions_per_state: (1, 2),
        transitions_per_action: (1, 3),
        reward_bound: 5,
        denominator_bound: 4,
        max_states_fraction: ratio(1, 2),
        seed,
    })
    .expect("generator output is valid")
}

pub fn game_with(
    states: usize,
    actions: (usize, usize),
    transitions: (usize, usize),
    seed: u64,
) -> Game {
    generate_game(&GeneratorConfig {
        states,
        actions_per_state: actions,
        transitions_per_action: transitions,
        reward_bound: 5,
        denominator_bound: 4,
        max_states_fraction: ratio(1, 2),
        seed,
    })
    .expect("generator output is valid")
}

pub fn betas() -> [Rational; 3] {
    [ratio(1, 3), ratio(1, 2), ratio(9, 10)]
}
