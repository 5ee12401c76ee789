//! Optimal strategies: exhaustive search, strategy iteration, one-step
//! recovery for discounted games, the recovery-oracle interface, and the
//! pipeline that solves mean payoff games strategically through an oracle
//! that is only ever asked about value-zero mirror games.

use num_traits::One;
use rayon::prelude::*;

use crate::chain::induced_chain_unchecked;
use crate::error::{Error, Result};
use crate::eval::{discounted_values, mean_values, ValueVector};
use crate::game::{enumerate_pairs, Game, Player, PositionalStrategy, StrategyPair};
use crate::rational::{self, Rational};
use crate::transforms::{beta_recurrent, mirror, MirrorLayout, TransformMap};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Criterion {
    Discounted(Rational),
    Mean,
}

impl Criterion {
    fn check(&self) -> Result<()> {
        match self {
            Criterion::Discounted(beta) => rational::check_discount(beta),
            Criterion::Mean => Ok(()),
        }
    }
}

/// Per-state bounds proving a pair optimal: `lower` is what MAX can
/// guarantee, `upper` what MIN can hold MAX to. They coincide with the
/// values exactly when the pair is a saddle point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub lower: Vec<Rational>,
    pub upper: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub values: ValueVector,
    pub optimal_pair: StrategyPair,
    /// `None` when the solver does not establish optimality itself, as in
    /// [`strategic_via_recovery`].
    pub certificate: Option<Certificate>,
}

/// Exact per-state payoff of a pair under `criterion`.
pub fn evaluate(game: &Game, pair: &StrategyPair, criterion: &Criterion) -> Result<ValueVector> {
    pair.check(game)?;
    evaluate_unchecked(game, pair, criterion)
}

fn evaluate_unchecked(
    game: &Game,
    pair: &StrategyPair,
    criterion: &Criterion,
) -> Result<ValueVector> {
    let chain = induced_chain_unchecked(game, pair);
    match criterion {
        Criterion::Discounted(beta) => discounted_values(&chain, beta),
        Criterion::Mean => mean_values(&chain),
    }
}

/// Payoffs of every positional pair: `values[i][j][s]` for MAX strategy `i`
/// and MIN strategy `j` from state `s`. Strategies are in enumeration order.
#[derive(Debug, Clone)]
pub struct PayoffTable {
    pub max_strategies: Vec<PositionalStrategy>,
    pub min_strategies: Vec<PositionalStrategy>,
    pub values: Vec<Vec<Vec<Rational>>>,
}

impl PayoffTable {
    pub fn build(game: &Game, criterion: &Criterion, cap: u64) -> Result<PayoffTable> {
        criterion.check()?;
        let (max_strategies, min_strategies) = enumerate_pairs(game, cap)?;
        let values = max_strategies
            .par_iter()
            .map(|max| {
                min_strategies
                    .iter()
                    .map(|min| {
                        let pair = StrategyPair {
                            max: max.clone(),
                            min: min.clone(),
                        };
                        evaluate_unchecked(game, &pair, criterion).map(|v| v.values)
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(PayoffTable {
            max_strategies,
            min_strategies,
            values,
        })
    }

    pub fn pair(&self, i: usize, j: usize) -> StrategyPair {
        StrategyPair {
            max: self.max_strategies[i].clone(),
            min: self.min_strategies[j].clone(),
        }
    }

    pub fn num_pairs(&self) -> usize {
        self.max_strategies.len() * self.min_strategies.len()
    }

    /// Per state, the payoff MAX strategy `i` guarantees: the minimum over MIN.
    pub fn guarantee_of_max(&self, i: usize) -> Vec<Rational> {
        fold_states(self.values[i].iter(), |a, b| a.min(b))
    }

    /// Per state, the payoff MIN strategy `j` concedes: the maximum over MAX.
    pub fn guarantee_of_min(&self, j: usize) -> Vec<Rational> {
        fold_states(self.values.iter().map(|row| &row[j]), |a, b| a.max(b))
    }

    /// `max_i min_j` per state.
    pub fn lower(&self) -> Vec<Rational> {
        let guarantees: Vec<_> = (0..self.max_strategies.len())
            .map(|i| self.guarantee_of_max(i))
            .collect();
        fold_states(guarantees.iter(), |a, b| a.max(b))
    }

    /// `min_j max_i` per state.
    pub fn upper(&self) -> Vec<Rational> {
        let guarantees: Vec<_> = (0..self.min_strategies.len())
            .map(|j| self.guarantee_of_min(j))
            .collect();
        fold_states(guarantees.iter(), |a, b| a.min(b))
    }

    /// Neither player gains from a unilateral positional deviation, at any state.
    pub fn is_saddle(&self, i: usize, j: usize) -> bool {
        let v = &self.values[i][j];
        &self.guarantee_of_max(i) == v && &self.guarantee_of_min(j) == v
    }

    /// All saddle points, MAX-major.
    pub fn saddle_points(&self) -> Vec<(usize, usize)> {
        let by_max: Vec<_> = (0..self.max_strategies.len())
            .map(|i| self.guarantee_of_max(i))
            .collect();
        let by_min: Vec<_> = (0..self.min_strategies.len())
            .map(|j| self.guarantee_of_min(j))
            .collect();
        let mut out = Vec::new();
        for (i, gi) in by_max.iter().enumerate() {
            for (j, gj) in by_min.iter().enumerate() {
                if gi == &self.values[i][j] && gj == &self.values[i][j] {
                    out.push((i, j));
                }
            }
        }
        out
    }
}

fn fold_states<'a>(
    mut rows: impl Iterator<Item = &'a Vec<Rational>>,
    pick: impl Fn(Rational, Rational) -> Rational,
) -> Vec<Rational> {
    let first = rows.next().expect("at least one strategy").clone();
    rows.fold(first, |acc, row| {
        acc.into_iter()
            .zip(row)
            .map(|(a, b)| pick(a, b.clone()))
            .collect()
    })
}

/// Solves `game` by evaluating every positional pair.
///
/// Lower and upper values are computed separately and must agree at every
/// state. The returned pair is the first (MAX-major, enumeration order) made
/// of strategies that are optimal from every state simultaneously.
pub fn brute_force_solve(game: &Game, criterion: &Criterion, cap: u64) -> Result<Solution> {
    let table = PayoffTable::build(game, criterion, cap)?;
    solve_table(game, &table)
}

pub fn solve_table(game: &Game, table: &PayoffTable) -> Result<Solution> {
    let lower = table.lower();
    let upper = table.upper();
    for (s, (lo, up)) in lower.iter().zip(&upper).enumerate() {
        if lo != up {
            return Err(Error::DeterminacyViolation {
                state: game.state_id(s).to_owned(),
                lower: lo.clone(),
                upper: up.clone(),
            });
        }
    }
    let violation = |s: usize| Error::DeterminacyViolation {
        state: game.state_id(s).to_owned(),
        lower: lower[s].clone(),
        upper: upper[s].clone(),
    };
    let i = (0..table.max_strategies.len())
        .find(|&i| table.guarantee_of_max(i) == lower)
        .ok_or_else(|| violation(0))?;
    let j = (0..table.min_strategies.len())
        .find(|&j| table.guarantee_of_min(j) == upper)
        .ok_or_else(|| violation(0))?;
    debug_assert_eq!(table.values[i][j], lower);
    Ok(Solution {
        values: ValueVector::new(game.state_ids(), lower.clone()),
        optimal_pair: table.pair(i, j),
        certificate: Some(Certificate { lower, upper }),
    })
}

/// One-step lookahead score `(1 - beta) r(A) + beta sum_t p(t) v(t)`.
fn lookahead(
    game: &Game,
    beta: &Rational,
    state: usize,
    k: usize,
    values: &[Rational],
) -> Rational {
    let mv = &game.moves(state)[k];
    let future: Rational = mv.successors.iter().map(|(t, p)| p * &values[*t]).sum();
    (Rational::one() - beta) * game.reward(mv.action) + beta * future
}

/// Index of the best move for the owner of `state` under `values`; ties go
/// to the smallest action id.
fn best_move(game: &Game, beta: &Rational, state: usize, values: &[Rational]) -> (usize, Rational) {
    let maximize = game.owner(state) == Player::Max;
    let mut best: Option<(usize, Rational)> = None;
    for k in 0..game.moves(state).len() {
        let score = lookahead(game, beta, state, k, values);
        let better = match &best {
            None => true,
            Some((_, b)) => {
                if maximize {
                    &score > b
                } else {
                    &score < b
                }
            }
        };
        if better {
            best = Some((k, score));
        }
    }
    best.expect("no sink states")
}

/// Switches `player` to strictly better moves wherever one exists. Returns
/// whether anything changed.
fn improve(
    game: &Game,
    beta: &Rational,
    strategy: &mut Vec<Option<usize>>,
    player: Player,
    values: &[Rational],
) -> bool {
    let mut changed = false;
    for s in game.owned_by(player) {
        let (k, score) = best_move(game, beta, s, values);
        let strictly_better = match player {
            Player::Max => score > values[s],
            Player::Min => score < values[s],
        };
        if strictly_better && strategy[s] != Some(k) {
            strategy[s] = Some(k);
            changed = true;
        }
    }
    changed
}

fn make_pair(game: &Game, max: &[Option<usize>], min: &[Option<usize>]) -> StrategyPair {
    StrategyPair {
        max: PositionalStrategy::from_choices(game, Player::Max, max.to_vec())
            .expect("well-formed"),
        min: PositionalStrategy::from_choices(game, Player::Min, min.to_vec())
            .expect("well-formed"),
    }
}

/// Policy iteration for `player` against the opponent's fixed choices.
/// Returns the best response and its values.
fn best_response(
    game: &Game,
    beta: &Rational,
    player: Player,
    own: &mut Vec<Option<usize>>,
    other: &[Option<usize>],
) -> Result<Vec<Rational>> {
    let criterion = Criterion::Discounted(beta.clone());
    loop {
        let pair = match player {
            Player::Max => make_pair(game, own, other),
            Player::Min => make_pair(game, other, own),
        };
        let values = evaluate_unchecked(game, &pair, &criterion)?.values;
        if !improve(game, beta, own, player, &values) {
            return Ok(values);
        }
    }
}

fn initial_choices(game: &Game, player: Player) -> Vec<Option<usize>> {
    (0..game.num_states())
        .map(|s| (game.owner(s) == player).then_some(0))
        .collect()
}

/// Hoffman-Karp strategy iteration for the discounted criterion.
///
/// MAX answers each MIN strategy with an exact best response (single-player
/// policy iteration); MIN then switches every state where a strictly better
/// action exists. Stops when MIN has no improving switch. All comparisons are
/// exact, so improvement is strict and the loop terminates.
pub fn strategy_iteration_discounted(game: &Game, beta: &Rational) -> Result<Solution> {
    rational::check_discount(beta)?;
    let mut max = initial_choices(game, Player::Max);
    let mut min = initial_choices(game, Player::Min);
    let values = loop {
        let values = best_response(game, beta, Player::Max, &mut max, &min)?;
        if !improve(game, beta, &mut min, Player::Min, &values) {
            break values;
        }
    };

    // Certificate: what each side's strategy guarantees against a best reply.
    let lower = best_response(game, beta, Player::Min, &mut min.clone(), &max)?;
    let upper = best_response(game, beta, Player::Max, &mut max.clone(), &min)?;
    for s in 0..game.num_states() {
        if lower[s] != values[s] || upper[s] != values[s] {
            return Err(Error::DeterminacyViolation {
                state: game.state_id(s).to_owned(),
                lower: lower[s].clone(),
                upper: upper[s].clone(),
            });
        }
    }
    Ok(Solution {
        values: ValueVector::new(game.state_ids(), values),
        optimal_pair: make_pair(game, &max, &min),
        certificate: Some(Certificate { lower, upper }),
    })
}

fn check_state_order(game: &Game, values: &ValueVector) -> Result<()> {
    if values.state_order != game.state_ids() {
        return Err(Error::InconsistentValues(
            "value vector does not list the game's states in order".into(),
        ));
    }
    Ok(())
}

/// Reads optimal strategies off the exact discounted values: every state
/// plays an action with the best one-step lookahead. The pair is
/// re-evaluated and must reproduce `values` exactly.
pub fn greedy_recovery_discounted(
    game: &Game,
    beta: &Rational,
    values: &ValueVector,
) -> Result<StrategyPair> {
    rational::check_discount(beta)?;
    check_state_order(game, values)?;
    let mut max = vec![None; game.num_states()];
    let mut min = vec![None; game.num_states()];
    for s in 0..game.num_states() {
        let (k, _) = best_move(game, beta, s, &values.values);
        match game.owner(s) {
            Player::Max => max[s] = Some(k),
            Player::Min => min[s] = Some(k),
        }
    }
    let pair = make_pair(game, &max, &min);
    let achieved = evaluate_unchecked(game, &pair, &Criterion::Discounted(beta.clone()))?;
    if achieved.values != values.values {
        let s = (0..game.num_states())
            .find(|&s| achieved.values[s] != values.values[s])
            .expect("vectors differ");
        return Err(Error::InconsistentValues(format!(
            "greedy pair earns {} at `{}`, supplied value is {}",
            achieved.values[s],
            game.state_id(s),
            values.values[s]
        )));
    }
    Ok(pair)
}

/// Something that turns the exact mean-payoff values of a game into a pair
/// of optimal positional strategies.
pub trait RecoveryOracle {
    fn recover(&self, game: &Game, claimed: &ValueVector) -> Result<StrategyPair>;
}

impl<F> RecoveryOracle for F
where
    F: Fn(&Game, &ValueVector) -> Result<StrategyPair>,
{
    fn recover(&self, game: &Game, claimed: &ValueVector) -> Result<StrategyPair> {
        self(game, claimed)
    }
}

/// Exhaustive stand-in for a recovery algorithm.
#[derive(Debug, Clone, Copy)]
pub struct ReferenceOracle {
    pub cap: u64,
}

impl RecoveryOracle for ReferenceOracle {
    fn recover(&self, game: &Game, claimed: &ValueVector) -> Result<StrategyPair> {
        reference_recovery_oracle(game, claimed, self.cap)
    }
}

/// First pair (MAX-major) that earns `claimed` under the mean criterion at
/// every state and is a saddle point.
pub fn reference_recovery_oracle(
    game: &Game,
    claimed: &ValueVector,
    cap: u64,
) -> Result<StrategyPair> {
    check_state_order(game, claimed).map_err(|_| Error::NoConsistentStrategy)?;
    let table = PayoffTable::build(game, &Criterion::Mean, cap)?;
    let by_min: Vec<_> = (0..table.min_strategies.len())
        .map(|j| table.guarantee_of_min(j))
        .collect();
    for i in 0..table.max_strategies.len() {
        if table.guarantee_of_max(i) != claimed.values {
            continue;
        }
        for (j, gj) in by_min.iter().enumerate() {
            if table.values[i][j] == claimed.values && gj == &claimed.values {
                return Ok(table.pair(i, j));
            }
        }
    }
    Err(Error::NoConsistentStrategy)
}

/// Artifacts produced for one start state of the pipeline.
#[derive(Debug, Clone)]
pub struct PipelineStage {
    pub start: String,
    pub recurrent: Game,
    pub recurrent_map: TransformMap,
    pub mirror: Game,
    pub mirror_map: TransformMap,
    /// What the oracle returned for the mirror game.
    pub oracle_pair: StrategyPair,
    /// Its copy-1 restriction, optimal for the beta-recurrent game.
    pub restricted: StrategyPair,
    /// Mean payoff of `restricted` at `start`, which is the discounted value
    /// of the original game there.
    pub value: Rational,
}

#[derive(Debug, Clone)]
pub struct PipelineOutcome {
    pub stages: Vec<PipelineStage>,
    pub discounted_values: ValueVector,
    pub solution: Solution,
}

/// Solves `game` strategically for the mean criterion using only an oracle
/// for strategy recovery.
///
/// For every state `s`: build the beta-recurrent game reset at `s` and its
/// mirror, ask the oracle for optimal strategies of the mirror given the
/// all-zero value vector, and read `v_beta(s)` as the mean payoff at `s` of the
/// copy-1 restriction. The discounted values then give optimal strategies by
/// greedy recovery; for `beta` close enough to 1 those are mean-optimal.
pub fn strategic_via_recovery(
    game: &Game,
    beta: &Rational,
    oracle: &dyn RecoveryOracle,
) -> Result<PipelineOutcome> {
    rational::check_discount(beta)?;
    let mut stages = Vec::with_capacity(game.num_states());
    for s in 0..game.num_states() {
        let start = game.state_id(s).to_owned();
        let (recurrent, recurrent_map) = beta_recurrent(game, beta, &start)?;
        let (gprime, mirror_map) = mirror(&recurrent, &recurrent_map)?;
        let zero = ValueVector::zeros(gprime.state_ids());
        let oracle_pair = oracle.recover(&gprime, &zero)?;
        oracle_pair
            .check(&gprime)
            .map_err(|e| Error::OracleContractViolation(e.to_string()))?;
        let achieved = evaluate_unchecked(&gprime, &oracle_pair, &Criterion::Mean)?;
        if achieved.values != zero.values {
            return Err(Error::OracleContractViolation(
                "returned pair does not earn 0 everywhere in the mirror game".into(),
            ));
        }
        let layout = MirrorLayout::new(&recurrent, &gprime, &mirror_map)?;
        let (restricted, _) = layout.decompose(&recurrent, &gprime, &oracle_pair)?;
        let value =
            evaluate_unchecked(&recurrent, &restricted, &Criterion::Mean)?.values[s].clone();
        stages.push(PipelineStage {
            start,
            recurrent,
            recurrent_map,
            mirror: gprime,
            mirror_map,
            oracle_pair,
            restricted,
            value,
        });
    }

    let discounted_values = ValueVector::new(
        game.state_ids(),
        stages.iter().map(|st| st.value.clone()).collect(),
    );
    let pair = greedy_recovery_discounted(game, beta, &discounted_values)?;
    let values = evaluate_unchecked(game, &pair, &Criterion::Mean)?;
    Ok(PipelineOutcome {
        stages,
        discounted_values,
        solution: Solution {
            values,
            optimal_pair: pair,
            certificate: None,
        },
    })
}

/// Pipeline outputs for `beta = 1 - 2^-k`, one per `k`.
#[derive(Debug, Clone)]
pub struct Sweep {
    pub runs: Vec<(u32, Solution)>,
}

impl Sweep {
    /// Smallest `k` from which every later run returns the same pair and values.
    pub fn stabilized_at(&self) -> Option<u32> {
        let (_, last) = self.runs.last()?;
        let mut k = self.runs.last()?.0;
        for (kk, sol) in self.runs.iter().rev() {
            if sol.optimal_pair != last.optimal_pair || sol.values != last.values {
                break;
            }
            k = *kk;
        }
        Some(k)
    }

    pub fn last(&self) -> Option<&Solution> {
        self.runs.last().map(|(_, s)| s)
    }
}

pub fn blackwell_sweep(
    game: &Game,
    ks: impl IntoIterator<Item = u32>,
    oracle: &dyn RecoveryOracle,
) -> Result<Sweep> {
    let runs = ks
        .into_iter()
        .map(|k| {
            let beta = rational::one_minus_pow2(k);
            strategic_via_recovery(game, &beta, oracle).map(|out| (k, out.solution))
        })
        .collect::<Result<_>>()?;
    Ok(Sweep { runs })
}

/// One failed identity in a verification run.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Violation {
    pub check: &'static str,
    pub pair: Option<crate::game::StrategyFile>,
    pub state: Option<String>,
    pub expected: String,
    pub found: String,
}

#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Report {
    pub pairs_checked: usize,
    pub violations: Vec<Violation>,
    #[serde(serialize_with = "rational::serialize")]
    pub value: Rational,
}

/// Max-min of a per-pair scalar laid out MAX-major over `rows x cols`.
fn max_min(scalars: &[Rational], cols: usize) -> Rational {
    scalars
        .chunks(cols)
        .map(|row| row.iter().min().expect("nonempty").clone())
        .max()
        .expect("nonempty")
}

/// Checks, for every positional pair, that the mean payoff at `s0` of the
/// beta-recurrent game equals the discounted payoff at `s0` of `game`. Also
/// checks the induced recurrent chain is unichain with `s0` recurrent and
/// that its stationary law solves the reset recursion.
///
/// `value` is the discounted value of `game` at `s0`.
pub fn verify_star(game: &Game, beta: &Rational, s0: &str, cap: u64) -> Result<Report> {
    use crate::eval::{recurrent_stationary, stationary_by_recursion, unichain_stationary};

    rational::check_discount(beta)?;
    let start = game.require_state(s0)?;
    let (recurrent, _) = beta_recurrent(game, beta, s0)?;
    let (maxs, mins) = enumerate_pairs(game, cap)?;
    let pairs: Vec<StrategyPair> = maxs
        .iter()
        .flat_map(|max| {
            mins.iter().map(move |min| StrategyPair {
                max: max.clone(),
                min: min.clone(),
            })
        })
        .collect();

    let checked: Vec<(Rational, Vec<Violation>)> = pairs
        .par_iter()
        .map(|pair| {
            let names = || Some(pair.to_names(game));
            let mut violations = Vec::new();
            let plain = induced_chain_unchecked(game, pair);
            let reset = induced_chain_unchecked(&recurrent, pair);
            let discounted = discounted_values(&plain, beta)?.values[start].clone();
            let mean = mean_values(&reset)?.values[start].clone();
            if discounted != mean {
                violations.push(Violation {
                    check: "star",
                    pair: names(),
                    state: Some(s0.to_owned()),
                    expected: rational::format(&discounted),
                    found: rational::format(&mean),
                });
            }
            let classes = recurrent_stationary(&reset)?;
            if classes.len() != 1 || !classes[0].members.contains(&start) {
                violations.push(Violation {
                    check: "unichain",
                    pair: names(),
                    state: Some(s0.to_owned()),
                    expected: "one recurrent class containing the reset state".into(),
                    found: format!("{} recurrent classes", classes.len()),
                });
            } else {
                let recursion = stationary_by_recursion(&plain, beta, s0)?;
                let stationary = unichain_stationary(&reset)?;
                if recursion != stationary {
                    violations.push(Violation {
                        check: "stationary-recursion",
                        pair: names(),
                        state: None,
                        expected: format_mass(&stationary.mass),
                        found: format_mass(&recursion.mass),
                    });
                }
            }
            Ok((discounted, violations))
        })
        .collect::<Result<_>>()?;

    let scalars: Vec<Rational> = checked.iter().map(|(v, _)| v.clone()).collect();
    Ok(Report {
        pairs_checked: pairs.len(),
        value: max_min(&scalars, mins.len()),
        violations: checked.into_iter().flat_map(|(_, v)| v).collect(),
    })
}

fn format_mass(mass: &[Rational]) -> String {
    let parts: Vec<String> = mass.iter().map(rational::format).collect();
    format!("[{}]", parts.join(", "))
}

/// Builds the mirror of a beta-recurrent game and checks, for every pair of
/// the mirror: the mean payoff at every state is half the copy-1 payoff minus
/// half the copy-2 payoff; the stationary law puts mass 1/2 on each copy; and
/// twice its restriction to a copy is the stationary law that copy's pair
/// induces on the beta-recurrent game. Also checks that every action of the
/// mirror sends exactly `1 - beta` into the other copy.
///
/// `value` is the mean-payoff value of the mirror game.
pub fn verify_star2(gb: &Game, map: &TransformMap, cap: u64) -> Result<Report> {
    use crate::eval::unichain_stationary;

    let (gprime, mirror_map) = mirror(gb, map)?;
    let layout = MirrorLayout::new(gb, &gprime, &mirror_map)?;
    let s0 = gb.require_state(&map.s0)?;
    let half = rational::ratio(1, 2);
    let two = rational::int(2);

    let mut copy_of = vec![0usize; gprime.num_states()];
    for &x in &layout.copies[1] {
        copy_of[x] = 1;
    }
    let mut violations = Vec::new();
    let reset = Rational::one() - &map.beta;
    for x in 0..gprime.num_states() {
        for mv in gprime.moves(x) {
            let across: Rational = mv
                .successors
                .iter()
                .filter(|(t, _)| copy_of[*t] != copy_of[x])
                .map(|(_, p)| p)
                .sum();
            if across != reset {
                violations.push(Violation {
                    check: "cross-copy-mass",
                    pair: None,
                    state: Some(format!(
                        "{} / {}",
                        gprime.state_id(x),
                        gprime.action_id(mv.action)
                    )),
                    expected: rational::format(&reset),
                    found: rational::format(&across),
                });
            }
        }
    }

    let (maxs, mins) = enumerate_pairs(&gprime, cap)?;
    let pairs: Vec<StrategyPair> = maxs
        .iter()
        .flat_map(|max| {
            mins.iter().map(move |min| StrategyPair {
                max: max.clone(),
                min: min.clone(),
            })
        })
        .collect();

    let checked: Vec<(Rational, Vec<Violation>)> = pairs
        .par_iter()
        .map(|pair| {
            let names = || Some(pair.to_names(&gprime));
            let mut found = Vec::new();
            let chain = induced_chain_unchecked(&gprime, pair);
            let values = mean_values(&chain)?.values;
            let (first, second) = layout.decompose(gb, &gprime, pair)?;
            let first_chain = induced_chain_unchecked(gb, &first);
            let second_chain = induced_chain_unchecked(gb, &second);
            let m1 = mean_values(&first_chain)?.values;
            let m2 = mean_values(&second_chain)?.values;
            for (label, m) in [("copy-1", &m1), ("copy-2", &m2)] {
                if m.iter().any(|v| v != &m[s0]) {
                    found.push(Violation {
                        check: "constant-gain",
                        pair: names(),
                        state: None,
                        expected: format!("{label} gain constant across states"),
                        found: format_mass(m),
                    });
                }
            }
            let predicted = &half * (&m1[s0] - &m2[s0]);
            for (x, v) in values.iter().enumerate() {
                if v != &predicted {
                    found.push(Violation {
                        check: "star2",
                        pair: names(),
                        state: Some(gprime.state_id(x).to_owned()),
                        expected: rational::format(&predicted),
                        found: rational::format(v),
                    });
                }
            }

            match unichain_stationary(&chain) {
                Err(Error::NotUnichain(k)) => found.push(Violation {
                    check: "unichain",
                    pair: names(),
                    state: None,
                    expected: "1 recurrent class".into(),
                    found: format!("{k} recurrent classes"),
                }),
                Err(e) => return Err(e),
                Ok(mu) => {
                    for (c, copy_chain) in [&first_chain, &second_chain].into_iter().enumerate() {
                        let mass: Rational = layout.copies[c].iter().map(|&x| &mu.mass[x]).sum();
                        if mass != half {
                            found.push(Violation {
                                check: "component-mass",
                                pair: names(),
                                state: None,
                                expected: "1/2".into(),
                                found: rational::format(&mass),
                            });
                        }
                        let scaled: Vec<Rational> = layout.copies[c]
                            .iter()
                            .map(|&x| &two * &mu.mass[x])
                            .collect();
                        let induced = unichain_stationary(copy_chain);
                        let matches = induced.as_ref().map(|d| d.mass == scaled).unwrap_or(false);
                        if !matches {
                            found.push(Violation {
                                check: if c == 0 {
                                    "copy-1-stationary"
                                } else {
                                    "copy-2-stationary"
                                },
                                pair: names(),
                                state: None,
                                expected: induced
                                    .map(|d| format_mass(&d.mass))
                                    .unwrap_or_else(|e| e.to_string()),
                                found: format_mass(&scaled),
                            });
                        }
                    }
                }
            }
            Ok((values[0].clone(), found))
        })
        .collect::<Result<_>>()?;

    let scalars: Vec<Rational> = checked.iter().map(|(v, _)| v.clone()).collect();
    violations.extend(checked.into_iter().flat_map(|(_, v)| v));
    Ok(Report {
        pairs_checked: pairs.len(),
        value: max_min(&scalars, mins.len()),
        violations,
    })
}

/// Whether `pair` is optimal for `criterion`, judged against the full table.
pub fn is_optimal_pair(table: &PayoffTable, pair: &StrategyPair) -> bool {
    let i = table.max_strategies.iter().position(|s| s == &pair.max);
    let j = table.min_strategies.iter().position(|s| s == &pair.min);
    match (i, j) {
        (Some(i), Some(j)) => table.is_saddle(i, j),
        _ => false,
    }
}
