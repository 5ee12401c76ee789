//! Exact evaluation of an induced chain: discounted values, long-run
//! averages, stationary distributions. Also a floating-point Monte Carlo
//! simulator, kept apart from everything exact.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::chain::{induced_chain, InducedChain};
use crate::error::{Error, Result};
use crate::game::{Game, StrategyPair};
use crate::linalg::{self, Matrix};
use crate::rational::{self, Rational};

/// Exact per-state values, in the chain's state order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueVector {
    pub state_order: Vec<String>,
    pub values: Vec<Rational>,
}

impl ValueVector {
    pub fn new(state_order: Vec<String>, values: Vec<Rational>) -> Self {
        assert_eq!(state_order.len(), values.len());
        ValueVector {
            state_order,
            values,
        }
    }

    pub fn zeros(state_order: Vec<String>) -> Self {
        let values = vec![Rational::zero(); state_order.len()];
        ValueVector {
            state_order,
            values,
        }
    }

    pub fn get(&self, id: &str) -> Option<&Rational> {
        let i = self.state_order.iter().position(|s| s == id)?;
        Some(&self.values[i])
    }

    /// `{"state": "p/q"}` with keys sorted.
    pub fn to_map(&self) -> BTreeMap<String, String> {
        self.state_order
            .iter()
            .cloned()
            .zip(self.values.iter().map(rational::format))
            .collect()
    }

    /// Reads a value file, which must name every state of `game` exactly once.
    pub fn from_map(game: &Game, map: &BTreeMap<String, String>) -> Result<ValueVector> {
        let mut values = vec![None; game.num_states()];
        for (id, text) in map {
            let s = game.require_state(id)?;
            values[s] = Some(rational::parse(text)?);
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(s, v)| {
                v.ok_or_else(|| Error::Parse(format!("no value for state `{}`", game.state_id(s))))
            })
            .collect::<Result<_>>()?;
        Ok(ValueVector::new(game.state_ids(), values))
    }
}

/// An exact probability distribution over `state_order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Distribution {
    pub state_order: Vec<String>,
    pub mass: Vec<Rational>,
}

impl Distribution {
    pub fn is_probability(&self) -> bool {
        self.mass
            .iter()
            .all(|m| m >= &Rational::zero() && m <= &Rational::one())
            && self.mass.iter().sum::<Rational>().is_one()
    }
}

/// A closed communicating class of the chain and its stationary law.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrentClass {
    /// Member state indices, ascending.
    pub members: Vec<usize>,
    /// Stationary distribution over the members, in the same order.
    pub stationary: Distribution,
}

/// Solves `v = (1 - beta) r + beta P v` exactly.
pub fn discounted_values(chain: &InducedChain, beta: &Rational) -> Result<ValueVector> {
    rational::check_discount(beta)?;
    let n = chain.len();
    let mut a = linalg::identity(n);
    for (i, row) in a.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            *entry -= beta * &chain.matrix[i][j];
        }
    }
    let keep = Rational::one() - beta;
    let b: Vec<Rational> = chain.rewards.iter().map(|r| &keep * r).collect();
    let values = linalg::solve(&a, &b)?;
    Ok(ValueVector::new(chain.state_order.clone(), values))
}

fn support_graph(chain: &InducedChain) -> DiGraph<(), ()> {
    let n = chain.len();
    let mut graph = DiGraph::with_capacity(n, n * n);
    let nodes: Vec<_> = (0..n).map(|_| graph.add_node(())).collect();
    for i in 0..n {
        for j in 0..n {
            if !chain.matrix[i][j].is_zero() {
                graph.add_edge(nodes[i], nodes[j], ());
            }
        }
    }
    graph
}

/// Recurrent classes (closed strongly connected components of the support
/// digraph), ordered by smallest member, each with its stationary law.
pub fn recurrent_stationary(chain: &InducedChain) -> Result<Vec<RecurrentClass>> {
    let graph = support_graph(chain);
    let mut component = vec![usize::MAX; chain.len()];
    let sccs = tarjan_scc(&graph);
    for (c, scc) in sccs.iter().enumerate() {
        for node in scc {
            component[node.index()] = c;
        }
    }
    let mut classes = Vec::new();
    for (c, scc) in sccs.iter().enumerate() {
        let closed = scc
            .iter()
            .all(|&u| graph.neighbors(u).all(|v| component[v.index()] == c));
        if !closed {
            continue;
        }
        let mut members: Vec<usize> = scc.iter().map(|u| u.index()).collect();
        members.sort_unstable();
        let mass = class_stationary(chain, &members)?;
        classes.push(RecurrentClass {
            stationary: Distribution {
                state_order: members
                    .iter()
                    .map(|&s| chain.state_order[s].clone())
                    .collect(),
                mass,
            },
            members,
        });
    }
    classes.sort_by_key(|c| c.members[0]);
    Ok(classes)
}

/// Solves `pi P_CC = pi`, `sum pi = 1` on an irreducible class `members`.
fn class_stationary(chain: &InducedChain, members: &[usize]) -> Result<Vec<Rational>> {
    let m = members.len();
    let mut a: Matrix = vec![vec![Rational::zero(); m]; m];
    let mut b = vec![Rational::zero(); m];
    for j in 0..m - 1 {
        for i in 0..m {
            a[j][i] = chain.matrix[members[i]][members[j]].clone();
        }
        a[j][j] -= Rational::one();
    }
    a[m - 1] = vec![Rational::one(); m];
    b[m - 1] = Rational::one();
    linalg::solve(&a, &b)
}

/// The stationary distribution over all states of a unichain, zero on
/// transient states.
pub fn unichain_stationary(chain: &InducedChain) -> Result<Distribution> {
    let classes = recurrent_stationary(chain)?;
    if classes.len() != 1 {
        return Err(Error::NotUnichain(classes.len()));
    }
    let class = &classes[0];
    let mut mass = vec![Rational::zero(); chain.len()];
    for (k, &s) in class.members.iter().enumerate() {
        mass[s] = class.stationary.mass[k].clone();
    }
    Ok(Distribution {
        state_order: chain.state_order.clone(),
        mass,
    })
}

/// Long-run average reward from every state.
///
/// Each recurrent class earns its stationary average; a transient state earns
/// the class gains weighted by its absorption probabilities.
pub fn mean_values(chain: &InducedChain) -> Result<ValueVector> {
    let n = chain.len();
    let classes = recurrent_stationary(chain)?;
    let mut gain: Vec<Option<Rational>> = vec![None; n];
    let mut class_gain = Vec::with_capacity(classes.len());
    for class in &classes {
        let rewards: Vec<Rational> = class
            .members
            .iter()
            .map(|&s| chain.rewards[s].clone())
            .collect();
        let g = linalg::dot(&class.stationary.mass, &rewards);
        for &s in &class.members {
            gain[s] = Some(g.clone());
        }
        class_gain.push(g);
    }

    let transient: Vec<usize> = (0..n).filter(|&s| gain[s].is_none()).collect();
    if !transient.is_empty() {
        let absorption = absorption_probabilities(chain, &transient, &classes)?;
        for (k, &s) in transient.iter().enumerate() {
            let g = absorption[k]
                .iter()
                .zip(&class_gain)
                .map(|(p, g)| p * g)
                .sum();
            gain[s] = Some(g);
        }
    }

    Ok(ValueVector::new(
        chain.state_order.clone(),
        gain.into_iter()
            .map(|g| g.expect("every state classified"))
            .collect(),
    ))
}

/// Row `k` holds, for transient state `transient[k]`, the probability of
/// eventually entering each recurrent class.
pub fn absorption_probabilities(
    chain: &InducedChain,
    transient: &[usize],
    classes: &[RecurrentClass],
) -> Result<Matrix> {
    let t = transient.len();
    let mut a: Matrix = vec![vec![Rational::zero(); t]; t];
    let mut b: Matrix = vec![vec![Rational::zero(); classes.len()]; t];
    for (i, &s) in transient.iter().enumerate() {
        for (j, &u) in transient.iter().enumerate() {
            a[i][j] = -chain.matrix[s][u].clone();
        }
        a[i][i] += Rational::one();
        for (c, class) in classes.iter().enumerate() {
            b[i][c] = class.members.iter().map(|&u| &chain.matrix[s][u]).sum();
        }
    }
    linalg::solve_many(&a, &b)
}

/// Solves `mu = (1 - beta) e_s0 + beta P^T mu` for the chain `P` of the
/// untransformed game.
pub fn stationary_by_recursion(
    chain: &InducedChain,
    beta: &Rational,
    s0: &str,
) -> Result<Distribution> {
    rational::check_discount(beta)?;
    let start = chain
        .index_of(s0)
        .ok_or_else(|| Error::UnknownState(s0.to_owned()))?;
    let n = chain.len();
    let mut a = linalg::identity(n);
    for (i, row) in a.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            *entry -= beta * &chain.matrix[j][i];
        }
    }
    let mut b = vec![Rational::zero(); n];
    b[start] = Rational::one() - beta;
    Ok(Distribution {
        state_order: chain.state_order.clone(),
        mass: linalg::solve(&a, &b)?,
    })
}

/// Takes the chain of a beta-recurrent game with reset state `s0`, solves
/// the reset recursion for it, and checks the result against the chain's
/// unique stationary distribution.
///
/// The recursion is written in terms of the untransformed chain `P`, which is
/// recovered as `(P' - (1 - beta) 1 e_s0^T) / beta`.
pub fn verify_stationary_recursion(
    chain: &InducedChain,
    beta: &Rational,
    s0: &str,
) -> Result<Distribution> {
    rational::check_discount(beta)?;
    let start = chain
        .index_of(s0)
        .ok_or_else(|| Error::UnknownState(s0.to_owned()))?;
    let stationary = unichain_stationary(chain)?;

    let reset = Rational::one() - beta;
    let mu = if beta.is_zero() {
        for (i, row) in chain.matrix.iter().enumerate() {
            if row
                .iter()
                .enumerate()
                .any(|(j, p)| p != &indicator(j == start))
            {
                return Err(Error::NotBetaRecurrent(format!(
                    "with beta = 0 row `{}` must send all mass to `{s0}`",
                    chain.state_order[i]
                )));
            }
        }
        let mut mass = vec![Rational::zero(); chain.len()];
        mass[start] = Rational::one();
        Distribution {
            state_order: chain.state_order.clone(),
            mass,
        }
    } else {
        let mut original = chain.clone();
        for (i, row) in original.matrix.iter_mut().enumerate() {
            row[start] -= &reset;
            for p in row.iter_mut() {
                *p /= beta;
            }
            if row.iter().any(|p| p < &Rational::zero()) {
                return Err(Error::NotBetaRecurrent(format!(
                    "row `{}` carries less than 1 - beta into `{s0}`",
                    chain.state_order[i]
                )));
            }
        }
        stationary_by_recursion(&original, beta, s0)?
    };

    if mu != stationary {
        return Err(Error::StationaryMismatch(format!(
            "recursion gives {:?}, chain has {:?}",
            mu.mass.iter().map(rational::format).collect::<Vec<_>>(),
            stationary
                .mass
                .iter()
                .map(rational::format)
                .collect::<Vec<_>>()
        )));
    }
    Ok(mu)
}

fn indicator(hit: bool) -> Rational {
    if hit {
        Rational::one()
    } else {
        Rational::zero()
    }
}

/// Result of a Monte Carlo run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Estimate {
    pub estimate: f64,
    pub stderr: f64,
}

/// Estimates the mean payoff from `start` by simulating `plays` independent
/// trajectories of `horizon` moves.
///
/// The generator is ChaCha8 seeded with `seed`, so runs are reproducible.
/// The returned standard error is the sample standard deviation of the
/// per-play averages divided by `sqrt(plays)`.
pub fn simulate_mean_payoff(
    game: &Game,
    pair: &StrategyPair,
    start: &str,
    horizon: u64,
    plays: u64,
    seed: u64,
) -> Result<Estimate> {
    let start = game.require_state(start)?;
    if horizon == 0 || plays == 0 {
        return Err(Error::InvalidConfig(
            "horizon and plays must be positive".into(),
        ));
    }
    let chain = induced_chain(game, pair)?;
    let rewards: Vec<f64> = chain.rewards.iter().map(rational::to_f64).collect();
    let steps: Vec<Vec<(usize, f64)>> = chain
        .matrix
        .iter()
        .map(|row| {
            let mut acc = 0.0;
            row.iter()
                .enumerate()
                .filter(|(_, p)| !p.is_zero())
                .map(|(t, p)| {
                    acc += rational::to_f64(p);
                    (t, acc)
                })
                .collect()
        })
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut averages = Vec::with_capacity(plays as usize);
    for _ in 0..plays {
        let mut state = start;
        let mut total = 0.0;
        for _ in 0..horizon {
            total += rewards[state];
            let u: f64 = rng.gen();
            let row = &steps[state];
            state = row
                .iter()
                .find(|(_, cum)| u < *cum)
                .unwrap_or(&row[row.len() - 1])
                .0;
        }
        averages.push(total / horizon as f64);
    }

    let n = averages.len() as f64;
    let mean = averages.iter().sum::<f64>() / n;
    let stderr = if averages.len() > 1 {
        let var = averages.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
        (var / n).sqrt()
    } else {
        0.0
    };
    Ok(Estimate {
        estimate: mean,
        stderr,
    })
}
