//! Stochastic games: states owned by MAX or MIN, actions carrying rewards,
//! and probabilistic transitions labelled by actions.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Default cap on the number of strategies or strategy pairs any brute-force
/// enumeration may visit.
pub const DEFAULT_CAP: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Player {
    Max,
    Min,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Max => Player::Min,
            Player::Min => Player::Max,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::Max => "max",
            Player::Min => "min",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateDecl {
    pub id: String,
    pub owner: Player,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionDecl {
    pub id: String,
    pub reward: Rational,
}

/// A transition before validation, referring to states and actions by id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionDecl {
    pub from: String,
    pub action: String,
    pub to: String,
    pub prob: Rational,
}

impl TransitionDecl {
    pub fn new(from: &str, action: &str, to: &str, prob: Rational) -> Self {
        TransitionDecl {
            from: from.to_owned(),
            action: action.to_owned(),
            to: to.to_owned(),
            prob,
        }
    }
}

/// A validated transition; endpoints and action are indices into the game.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transition {
    pub from: usize,
    pub action: usize,
    pub to: usize,
    pub prob: Rational,
}

/// An action available at some state together with its successor distribution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Move {
    pub action: usize,
    pub successors: Vec<(usize, Rational)>,
}

/// A validated stochastic game.
///
/// States and actions keep their declaration order, which is the canonical
/// order for every matrix and vector built from the game. Transitions that
/// share `(from, action, to)` are merged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Game {
    states: Vec<StateDecl>,
    actions: Vec<ActionDecl>,
    transitions: Vec<Transition>,
    state_index: HashMap<String, usize>,
    action_index: HashMap<String, usize>,
    /// Per state, the available actions sorted by action id.
    moves: Vec<Vec<Move>>,
}

impl Game {
    pub fn build(
        states: Vec<StateDecl>,
        actions: Vec<ActionDecl>,
        transitions: Vec<TransitionDecl>,
    ) -> Result<Game> {
        if states.is_empty() {
            return Err(Error::EmptyGame);
        }
        let state_index = index_ids(states.iter().map(|s| s.id.as_str()), "state")?;
        let action_index = index_ids(actions.iter().map(|a| a.id.as_str()), "action")?;

        let lookup = |map: &HashMap<String, usize>, kind: &'static str, id: &str| {
            map.get(id).copied().ok_or_else(|| Error::UnknownReference {
                kind,
                id: id.to_owned(),
            })
        };

        let mut merged: Vec<Transition> = Vec::with_capacity(transitions.len());
        let mut position: HashMap<(usize, usize, usize), usize> = HashMap::new();
        for (index, t) in transitions.into_iter().enumerate() {
            let from = lookup(&state_index, "state", &t.from)?;
            let action = lookup(&action_index, "action", &t.action)?;
            let to = lookup(&state_index, "state", &t.to)?;
            if t.prob <= Rational::zero() || t.prob > Rational::one() {
                return Err(Error::ProbabilityOutOfRange {
                    index,
                    from: t.from,
                    action: t.action,
                    to: t.to,
                    prob: t.prob,
                });
            }
            match position.get(&(from, action, to)) {
                Some(&k) => merged[k].prob += t.prob,
                None => {
                    position.insert((from, action, to), merged.len());
                    merged.push(Transition {
                        from,
                        action,
                        to,
                        prob: t.prob,
                    });
                }
            }
        }

        let mut moves: Vec<Vec<Move>> = vec![Vec::new(); states.len()];
        for t in &merged {
            let list = &mut moves[t.from];
            match list.iter_mut().find(|m| m.action == t.action) {
                Some(m) => m.successors.push((t.to, t.prob.clone())),
                None => list.push(Move {
                    action: t.action,
                    successors: vec![(t.to, t.prob.clone())],
                }),
            }
        }
        for (s, list) in moves.iter_mut().enumerate() {
            if list.is_empty() {
                return Err(Error::SinkState(states[s].id.clone()));
            }
            list.sort_by(|a, b| actions[a.action].id.cmp(&actions[b.action].id));
            for m in list.iter() {
                let sum: Rational = m.successors.iter().map(|(_, p)| p).sum();
                if !sum.is_one() {
                    return Err(Error::ProbabilitySumMismatch {
                        state: states[s].id.clone(),
                        action: actions[m.action].id.clone(),
                        sum,
                    });
                }
            }
        }

        Ok(Game {
            states,
            actions,
            transitions: merged,
            state_index,
            action_index,
            moves,
        })
    }

    pub fn num_states(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[StateDecl] {
        &self.states
    }

    pub fn actions(&self) -> &[ActionDecl] {
        &self.actions
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn state_id(&self, state: usize) -> &str {
        &self.states[state].id
    }

    pub fn state_ids(&self) -> Vec<String> {
        self.states.iter().map(|s| s.id.clone()).collect()
    }

    pub fn owner(&self, state: usize) -> Player {
        self.states[state].owner
    }

    pub fn action_id(&self, action: usize) -> &str {
        &self.actions[action].id
    }

    pub fn reward(&self, action: usize) -> &Rational {
        &self.actions[action].reward
    }

    pub fn state(&self, id: &str) -> Option<usize> {
        self.state_index.get(id).copied()
    }

    pub fn require_state(&self, id: &str) -> Result<usize> {
        self.state(id)
            .ok_or_else(|| Error::UnknownState(id.to_owned()))
    }

    pub fn action(&self, id: &str) -> Option<usize> {
        self.action_index.get(id).copied()
    }

    /// Available actions at `state`, sorted by action id.
    pub fn moves(&self, state: usize) -> &[Move] {
        &self.moves[state]
    }

    pub fn owned_by(&self, player: Player) -> impl Iterator<Item = usize> + '_ {
        (0..self.states.len()).filter(move |&s| self.states[s].owner == player)
    }

    pub fn to_raw(&self) -> RawGame {
        RawGame {
            states: self
                .states
                .iter()
                .map(|s| RawState {
                    id: s.id.clone(),
                    owner: s.owner,
                })
                .collect(),
            actions: self
                .actions
                .iter()
                .map(|a| RawAction {
                    id: a.id.clone(),
                    reward: rational::format(&a.reward),
                })
                .collect(),
            transitions: self
                .transitions
                .iter()
                .map(|t| RawTransition {
                    from: self.states[t.from].id.clone(),
                    action: self.actions[t.action].id.clone(),
                    to: self.states[t.to].id.clone(),
                    prob: rational::format(&t.prob),
                })
                .collect(),
        }
    }
}

fn index_ids<'a>(
    ids: impl Iterator<Item = &'a str>,
    kind: &'static str,
) -> Result<HashMap<String, usize>> {
    let mut map = HashMap::new();
    for (i, id) in ids.enumerate() {
        if map.insert(id.to_owned(), i).is_some() {
            return Err(Error::DuplicateId {
                kind,
                id: id.to_owned(),
            });
        }
    }
    Ok(map)
}

/// The JSON shape of a game file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawGame {
    pub states: Vec<RawState>,
    pub actions: Vec<RawAction>,
    pub transitions: Vec<RawTransition>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawState {
    pub id: String,
    pub owner: Player,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawAction {
    pub id: String,
    pub reward: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawTransition {
    pub from: String,
    pub action: String,
    pub to: String,
    pub prob: String,
}

/// Checks a structurally parsed game description and builds a [`Game`].
pub fn validate_game(raw: &RawGame) -> Result<Game> {
    let states = raw
        .states
        .iter()
        .map(|s| StateDecl {
            id: s.id.clone(),
            owner: s.owner,
        })
        .collect();
    let actions = raw
        .actions
        .iter()
        .map(|a| {
            Ok(ActionDecl {
                id: a.id.clone(),
                reward: rational::parse(&a.reward)?,
            })
        })
        .collect::<Result<_>>()?;
    let transitions = raw
        .transitions
        .iter()
        .map(|t| {
            Ok(TransitionDecl {
                from: t.from.clone(),
                action: t.action.clone(),
                to: t.to.clone(),
                prob: rational::parse(&t.prob)?,
            })
        })
        .collect::<Result<_>>()?;
    Game::build(states, actions, transitions)
}

/// A positional strategy for one player: one available action per owned state.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PositionalStrategy {
    player: Player,
    /// Index into `Game::moves(state)`; `None` exactly on the opponent's states.
    choices: Vec<Option<usize>>,
}

impl PositionalStrategy {
    pub fn player(&self) -> Player {
        self.player
    }

    /// Index of the chosen move at `state`, if `state` belongs to this player.
    pub fn choice(&self, state: usize) -> Option<usize> {
        self.choices.get(state).copied().flatten()
    }

    /// Builds a strategy from move indices, one entry per game state.
    pub fn from_choices(
        game: &Game,
        player: Player,
        choices: Vec<Option<usize>>,
    ) -> Result<PositionalStrategy> {
        let strategy = PositionalStrategy { player, choices };
        strategy.check(game)?;
        Ok(strategy)
    }

    pub fn from_names(
        game: &Game,
        player: Player,
        names: &BTreeMap<String, String>,
    ) -> Result<PositionalStrategy> {
        let mut choices = vec![None; game.num_states()];
        for (state_id, action_id) in names {
            let s = game.state(state_id).ok_or_else(|| {
                Error::StrategyDomainMismatch(format!("unknown state `{state_id}`"))
            })?;
            if game.owner(s) != player {
                return Err(Error::StrategyDomainMismatch(format!(
                    "state `{state_id}` is not owned by {player}"
                )));
            }
            let k = game
                .moves(s)
                .iter()
                .position(|m| game.action_id(m.action) == action_id)
                .ok_or_else(|| {
                    Error::StrategyDomainMismatch(format!(
                        "action `{action_id}` is not available at `{state_id}`"
                    ))
                })?;
            choices[s] = Some(k);
        }
        Self::from_choices(game, player, choices)
    }

    pub fn to_names(&self, game: &Game) -> BTreeMap<String, String> {
        self.choices
            .iter()
            .enumerate()
            .filter_map(|(s, c)| {
                c.map(|k| {
                    let action = game.moves(s)[k].action;
                    (
                        game.state_id(s).to_owned(),
                        game.action_id(action).to_owned(),
                    )
                })
            })
            .collect()
    }

    fn check(&self, game: &Game) -> Result<()> {
        if self.choices.len() != game.num_states() {
            return Err(Error::StrategyDomainMismatch(format!(
                "strategy covers {} states, game has {}",
                self.choices.len(),
                game.num_states()
            )));
        }
        for (s, c) in self.choices.iter().enumerate() {
            let owned = game.owner(s) == self.player;
            match c {
                None if owned => {
                    return Err(Error::StrategyDomainMismatch(format!(
                        "no choice for {} state `{}`",
                        self.player,
                        game.state_id(s)
                    )))
                }
                Some(_) if !owned => {
                    return Err(Error::StrategyDomainMismatch(format!(
                        "choice at `{}`, which {} does not own",
                        game.state_id(s),
                        self.player
                    )))
                }
                Some(k) if *k >= game.moves(s).len() => {
                    return Err(Error::StrategyDomainMismatch(format!(
                        "move index {k} out of range at `{}`",
                        game.state_id(s)
                    )))
                }
                _ => {}
            }
        }
        Ok(())
    }
}

/// One positional strategy per player.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StrategyPair {
    pub max: PositionalStrategy,
    pub min: PositionalStrategy,
}

impl StrategyPair {
    pub fn new(
        game: &Game,
        max: PositionalStrategy,
        min: PositionalStrategy,
    ) -> Result<StrategyPair> {
        let pair = StrategyPair { max, min };
        pair.check(game)?;
        Ok(pair)
    }

    pub fn check(&self, game: &Game) -> Result<()> {
        if self.max.player != Player::Max || self.min.player != Player::Min {
            return Err(Error::StrategyDomainMismatch(
                "strategies are assigned to the wrong players".into(),
            ));
        }
        self.max.check(game)?;
        self.min.check(game)
    }

    /// The move played at `state`, as an index into `Game::moves(state)`.
    pub fn move_at(&self, state: usize) -> usize {
        self.max
            .choice(state)
            .or_else(|| self.min.choice(state))
            .expect("validated pair covers every state")
    }

    pub fn from_names(game: &Game, names: &StrategyFile) -> Result<StrategyPair> {
        let max = PositionalStrategy::from_names(game, Player::Max, &names.max)?;
        let min = PositionalStrategy::from_names(game, Player::Min, &names.min)?;
        StrategyPair::new(game, max, min)
    }

    pub fn to_names(&self, game: &Game) -> StrategyFile {
        StrategyFile {
            max: self.max.to_names(game),
            min: self.min.to_names(game),
        }
    }
}

/// JSON shape of a strategy file: `{"max": {"a": "X"}, "min": {"b": "Y"}}`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StrategyFile {
    #[serde(default)]
    pub max: BTreeMap<String, String>,
    #[serde(default)]
    pub min: BTreeMap<String, String>,
}

/// Number of positional strategies `player` has in `game`.
pub fn strategy_count(game: &Game, player: Player) -> u128 {
    game.owned_by(player)
        .map(|s| game.moves(s).len() as u128)
        .fold(1u128, |acc, n| acc.saturating_mul(n))
}

/// Every positional strategy of `player`, each exactly once.
///
/// Owned states are ordered by id and the first of them is the most
/// significant digit; actions at a state follow action-id order. The first
/// strategy is therefore the one picking the smallest action id everywhere.
pub fn enumerate_strategies(
    game: &Game,
    player: Player,
    cap: u64,
) -> Result<Vec<PositionalStrategy>> {
    let count = strategy_count(game, player);
    if count > cap as u128 {
        return Err(Error::CombinatorialLimitExceeded {
            what: "strategy",
            count,
            cap,
        });
    }
    let mut owned: Vec<usize> = game.owned_by(player).collect();
    owned.sort_by(|&a, &b| game.state_id(a).cmp(game.state_id(b)));

    let mut digits = vec![0usize; owned.len()];
    let mut out = Vec::with_capacity(count as usize);
    loop {
        let mut choices = vec![None; game.num_states()];
        for (&s, &d) in owned.iter().zip(&digits) {
            choices[s] = Some(d);
        }
        out.push(PositionalStrategy { player, choices });

        // Odometer increment, least significant digit last.
        let mut pos = owned.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            digits[pos] += 1;
            if digits[pos] < game.moves(owned[pos]).len() {
                break;
            }
            digits[pos] = 0;
        }
    }
}

/// All strategy pairs, MAX-major, after checking the pair count against `cap`.
pub fn enumerate_pairs(
    game: &Game,
    cap: u64,
) -> Result<(Vec<PositionalStrategy>, Vec<PositionalStrategy>)> {
    let count = strategy_count(game, Player::Max).saturating_mul(strategy_count(game, Player::Min));
    if count > cap as u128 {
        return Err(Error::CombinatorialLimitExceeded {
            what: "strategy pair",
            count,
            cap,
        });
    }
    Ok((
        enumerate_strategies(game, Player::Max, cap)?,
        enumerate_strategies(game, Player::Min, cap)?,
    ))
}
