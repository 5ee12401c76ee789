//! Seeded random games for property tests and the verification suites.

use num_bigint::BigInt;
use num_integer::Integer;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{ActionDecl, Game, Player, StateDecl, TransitionDecl};
use crate::rational::{self, Rational};

/// Shape of a random game. Ranges are inclusive `[low, high]` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorConfig {
    pub states: usize,
    pub actions_per_state: (usize, usize),
    /// Distinct successors per action, capped at the number of states.
    pub transitions_per_action: (usize, usize),
    /// Rewards are drawn from `[-reward_bound, reward_bound]`.
    pub reward_bound: i64,
    /// Bounds reward denominators and the integer weights behind probabilities.
    pub denominator_bound: i64,
    #[serde(
        serialize_with = "rational::serialize",
        deserialize_with = "rational::deserialize"
    )]
    pub max_states_fraction: Rational,
    pub seed: u64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            states: 4,
            actions_per_state: (1, 2),
            transitions_per_action: (1, 3),
            reward_bound: 5,
            denominator_bound: 4,
            max_states_fraction: rational::ratio(1, 2),
            seed: 0,
        }
    }
}

impl GeneratorConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidConfig(msg.to_owned()));
        let range_ok = |(lo, hi): (usize, usize)| lo >= 1 && lo <= hi;
        if self.states == 0 {
            return bad("states must be at least 1");
        }
        if !range_ok(self.actions_per_state) {
            return bad("actions_per_state must be a range [lo, hi] with 1 <= lo <= hi");
        }
        if !range_ok(self.transitions_per_action) {
            return bad("transitions_per_action must be a range [lo, hi] with 1 <= lo <= hi");
        }
        if self.reward_bound < 0 {
            return bad("reward_bound must be nonnegative");
        }
        if self.denominator_bound < 1 {
            return bad("denominator_bound must be at least 1");
        }
        if self.max_states_fraction < rational::int(0)
            || self.max_states_fraction > rational::int(1)
        {
            return bad("max_states_fraction must lie in [0, 1]");
        }
        Ok(())
    }
}

/// Draws a game from `cfg`. The same config always yields the same game.
///
/// States are `s0, s1, ...`; the actions of state `i` are `a{i}_{j}`. A
/// `max_states_fraction` share of the states (rounded half up) goes to MAX,
/// chosen at random. Per action, successor probabilities are random positive
/// integer weights normalized to sum to exactly one.
pub fn generate_game(cfg: &GeneratorConfig) -> Result<Game> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let n = cfg.states;

    let scaled =
        &cfg.max_states_fraction * Rational::from_integer(BigInt::from(2 * n)) + rational::int(1);
    let max_count = scaled
        .numer()
        .div_floor(&(scaled.denom() * BigInt::from(2)));
    let max_count: usize = max_count.try_into().expect("at most n");
    let mut owners = vec![Player::Min; n];
    for s in sample(&mut rng, n, max_count) {
        owners[s] = Player::Max;
    }

    let states: Vec<StateDecl> = (0..n)
        .map(|i| StateDecl {
            id: format!("s{i}"),
            owner: owners[i],
        })
        .collect();
    let mut actions = Vec::new();
    let mut transitions = Vec::new();
    let d = cfg.denominator_bound;
    for i in 0..n {
        let k = rng.gen_range(cfg.actions_per_state.0..=cfg.actions_per_state.1);
        for j in 0..k {
            let id = format!("a{i}_{j}");
            let den = rng.gen_range(1..=d);
            let num = rng.gen_range(-cfg.reward_bound * den..=cfg.reward_bound * den);
            actions.push(ActionDecl {
                id: id.clone(),
                reward: rational::ratio(num, den),
            });

            let (lo, hi) = cfg.transitions_per_action;
            let t = rng.gen_range(lo..=hi).min(n);
            let targets = sample(&mut rng, n, t);
            let weights: Vec<i64> = (0..t).map(|_| rng.gen_range(1..=d)).collect();
            let total: i64 = weights.iter().sum();
            for (target, w) in targets.iter().zip(weights) {
                transitions.push(TransitionDecl::new(
                    &states[i].id,
                    &id,
                    &states[target].id,
                    rational::ratio(w, total),
                ));
            }
        }
    }
    Game::build(states, actions, transitions)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn single_state_is_a_self_loop() {
        let cfg = GeneratorConfig {
            states: 1,
            actions_per_state: (1, 1),
            transitions_per_action: (1, 1),
            ..GeneratorConfig::default()
        };
        let g = generate_game(&cfg).unwrap();
        assert_eq!(g.num_states(), 1);
        assert_eq!(g.transitions().len(), 1);
        let t = &g.transitions()[0];
        assert_eq!((t.from, t.to), (0, 0));
        assert!(t.prob.is_one());
    }

    #[test]
    fn deterministic_for_a_seed() {
        let cfg = GeneratorConfig {
            seed: 42,
            ..GeneratorConfig::default()
        };
        assert_eq!(generate_game(&cfg).unwrap(), generate_game(&cfg).unwrap());
    }

    #[test]
    fn rows_are_normalized() {
        let cfg = GeneratorConfig {
            states: 4,
            actions_per_state: (2, 2),
            seed: 7,
            ..GeneratorConfig::default()
        };
        let g = generate_game(&cfg).unwrap();
        for s in 0..g.num_states() {
            assert_eq!(g.moves(s).len(), 2);
            for mv in g.moves(s) {
                let total: Rational = mv.successors.iter().map(|(_, p)| p).sum();
                assert!(total.is_one());
            }
        }
        assert_eq!(crate::game::validate_game(&g.to_raw()).unwrap(), g);
    }

    #[test]
    fn owner_share_is_rounded_half_up() {
        for (n, frac, expected) in [
            (1, rational::ratio(1, 2), 1),
            (4, rational::ratio(1, 2), 2),
            (3, rational::int(0), 0),
            (3, rational::int(1), 3),
        ] {
            let cfg = GeneratorConfig {
                states: n,
                max_states_fraction: frac,
                ..GeneratorConfig::default()
            };
            let g = generate_game(&cfg).unwrap();
            assert_eq!(g.owned_by(Player::Max).count(), expected);
        }
    }

    #[test]
    fn rejects_bad_config() {
        let cfg = GeneratorConfig {
            actions_per_state: (2, 1),
            ..GeneratorConfig::default()
        };
        assert_eq!(generate_game(&cfg).unwrap_err().kind(), "InvalidConfig");
        let cfg = GeneratorConfig {
            denominator_bound: 0,
            ..GeneratorConfig::default()
        };
        assert_eq!(generate_game(&cfg).unwrap_err().kind(), "InvalidConfig");
    }

    #[test]
    fn config_json() {
        let json = r#"{"states":3,"actions_per_state":[1,2],"transitions_per_action":[1,3],"reward_bound":5,"denominator_bound":4,"max_states_fraction":"1/3","seed":9}"#;
        let cfg: GeneratorConfig = serde_json::from_str(json).unwrap();
        assert_eq!(cfg.max_states_fraction, rational::ratio(1, 3));
        assert_eq!(serde_json::to_string(&cfg).unwrap(), json);
    }
}
