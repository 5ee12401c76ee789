//! Game constructions: the beta-recurrent transform, which resets play to a
//! fixed state with probability `1 - beta` after every move, and the mirror,
//! which chains two copies of a beta-recurrent game so that every reset
//! lands in the other copy, whose owners are swapped and rewards negated.

use std::collections::{BTreeMap, HashMap, HashSet};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::{
    ActionDecl, Game, Player, PositionalStrategy, StateDecl, StrategyPair, TransitionDecl,
};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TransformKind {
    BetaRecurrent,
    Mirror,
}

impl TransformKind {
    fn name(self) -> &'static str {
        match self {
            TransformKind::BetaRecurrent => "beta-recurrent",
            TransformKind::Mirror => "mirror",
        }
    }
}

/// How one source transition `from -action-> to` with probability `p` was
/// split: `first = beta p` stays on `to`, `second = (1 - beta) p` goes to the
/// reset state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KindSplit {
    pub from: String,
    pub action: String,
    pub to: String,
    pub first: Rational,
    pub second: Rational,
}

/// Correspondence between a transformed game and its source.
///
/// `state_map` and `action_map` send each source id to its images: one image
/// for the beta-recurrent transform, `[copy 1, copy 2]` for the mirror.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformMap {
    pub kind: TransformKind,
    pub state_map: BTreeMap<String, Vec<String>>,
    pub action_map: BTreeMap<String, Vec<String>>,
    pub beta: Rational,
    pub s0: String,
    /// Per source transition, for the beta-recurrent transform only. Merging
    /// parallel edges in the output game loses which mass is a reset, so the
    /// mirror reads it from here.
    pub splits: Vec<KindSplit>,
}

impl TransformMap {
    fn expect_kind(&self, expected: TransformKind) -> Result<()> {
        if self.kind == expected {
            Ok(())
        } else {
            Err(Error::WrongTransformKind {
                expected: expected.name(),
                found: self.kind.name(),
            })
        }
    }

    pub fn to_file(&self) -> MapFile {
        MapFile {
            kind: self.kind,
            state_map: self.state_map.clone(),
            action_map: self.action_map.clone(),
            beta: rational::format(&self.beta),
            s0: self.s0.clone(),
            splits: self
                .splits
                .iter()
                .map(|s| RawSplit {
                    from: s.from.clone(),
                    action: s.action.clone(),
                    to: s.to.clone(),
                    first: rational::format(&s.first),
                    second: rational::format(&s.second),
                })
                .collect(),
        }
    }

    pub fn from_file(file: &MapFile) -> Result<TransformMap> {
        let beta = rational::parse(&file.beta)?;
        rational::check_discount(&beta)?;
        let splits = file
            .splits
            .iter()
            .map(|s| {
                Ok(KindSplit {
                    from: s.from.clone(),
                    action: s.action.clone(),
                    to: s.to.clone(),
                    first: rational::parse(&s.first)?,
                    second: rational::parse(&s.second)?,
                })
            })
            .collect::<Result<_>>()?;
        let arity = match file.kind {
            TransformKind::BetaRecurrent => 1,
            TransformKind::Mirror => 2,
        };
        for (source, images) in file.state_map.iter().chain(&file.action_map) {
            if images.len() != arity {
                return Err(Error::Parse(format!(
                    "`{source}` maps to {} images, a {} map needs {arity}",
                    images.len(),
                    file.kind.name()
                )));
            }
        }
        Ok(TransformMap {
            kind: file.kind,
            state_map: file.state_map.clone(),
            action_map: file.action_map.clone(),
            beta,
            s0: file.s0.clone(),
            splits,
        })
    }
}

/// Sidecar file written next to every transformed game.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapFile {
    pub kind: TransformKind,
    pub state_map: BTreeMap<String, Vec<String>>,
    pub action_map: BTreeMap<String, Vec<String>>,
    pub beta: String,
    pub s0: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub splits: Vec<RawSplit>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSplit {
    pub from: String,
    pub action: String,
    pub to: String,
    pub first: String,
    pub second: String,
}

/// Builds the beta-recurrent game of `game` with reset state `s0`.
///
/// Every transition `a -A,p-> b` becomes `a -A,beta p-> b` (first kind) and
/// `a -A,(1-beta) p-> s0` (second kind). States, owners, actions and rewards
/// are unchanged, so strategies carry over verbatim.
pub fn beta_recurrent(game: &Game, beta: &Rational, s0: &str) -> Result<(Game, TransformMap)> {
    rational::check_discount(beta)?;
    let reset = game.require_state(s0)?;
    let keep = Rational::one() - beta;

    let mut transitions = Vec::with_capacity(2 * game.transitions().len());
    let mut splits = Vec::with_capacity(game.transitions().len());
    for t in game.transitions() {
        let split = KindSplit {
            from: game.state_id(t.from).to_owned(),
            action: game.action_id(t.action).to_owned(),
            to: game.state_id(t.to).to_owned(),
            first: beta * &t.prob,
            second: &keep * &t.prob,
        };
        if !split.first.is_zero() {
            transitions.push(TransitionDecl::new(
                &split.from,
                &split.action,
                &split.to,
                split.first.clone(),
            ));
        }
        if !split.second.is_zero() {
            transitions.push(TransitionDecl::new(
                &split.from,
                &split.action,
                game.state_id(reset),
                split.second.clone(),
            ));
        }
        splits.push(split);
    }

    let out = Game::build(game.states().to_vec(), game.actions().to_vec(), transitions)?;
    let identity = |ids: Vec<String>| ids.into_iter().map(|id| (id.clone(), vec![id])).collect();
    let map = TransformMap {
        kind: TransformKind::BetaRecurrent,
        state_map: identity(game.state_ids()),
        action_map: identity(game.actions().iter().map(|a| a.id.clone()).collect()),
        beta: beta.clone(),
        s0: s0.to_owned(),
        splits,
    };
    Ok((out, map))
}

fn check_splits(game: &Game, map: &TransformMap) -> Result<()> {
    let missing = |msg: String| Error::MissingKindAnnotation(msg);
    if map.splits.is_empty() {
        return Err(missing("the map carries no transition annotations".into()));
    }
    let s0 = game
        .state(&map.s0)
        .ok_or_else(|| missing(format!("reset state `{}` is not in the game", map.s0)))?;
    let mut expected: HashMap<(usize, usize, usize), Rational> = HashMap::new();
    for split in &map.splits {
        let from = game.state(&split.from);
        let action = game.action(&split.action);
        let to = game.state(&split.to);
        let (Some(from), Some(action), Some(to)) = (from, action, to) else {
            return Err(missing(format!(
                "annotation {} -{}-> {} names unknown ids",
                split.from, split.action, split.to
            )));
        };
        let total = &split.first + &split.second;
        if split.first < Rational::zero() || split.second != (Rational::one() - &map.beta) * &total
        {
            return Err(missing(format!(
                "annotation {} -{}-> {} is not a beta split",
                split.from, split.action, split.to
            )));
        }
        if !split.first.is_zero() {
            *expected
                .entry((from, action, to))
                .or_insert_with(Rational::zero) += &split.first;
        }
        if !split.second.is_zero() {
            *expected
                .entry((from, action, s0))
                .or_insert_with(Rational::zero) += &split.second;
        }
    }
    let actual: HashMap<(usize, usize, usize), Rational> = game
        .transitions()
        .iter()
        .map(|t| ((t.from, t.action, t.to), t.prob.clone()))
        .collect();
    if expected != actual {
        return Err(missing(
            "annotations do not reproduce the game's transitions".into(),
        ));
    }
    Ok(())
}

fn fresh(used: &mut HashSet<String>, mut candidate: String, pad: char) -> String {
    while used.contains(&candidate) {
        candidate.push(pad);
    }
    used.insert(candidate.clone());
    candidate
}

/// Builds the mirror game of a beta-recurrent game.
///
/// State `s` becomes `s1` (copy 1, same owner) and `s2` (copy 2, owner
/// switched). Action `A` keeps its id in copy 1 and becomes `A'` with reward
/// `-r(A)` in copy 2; a prime is appended again on collisions. First-kind
/// transitions stay in their copy, second-kind ones go to the reset state of
/// the other copy.
pub fn mirror(gb: &Game, map: &TransformMap) -> Result<(Game, TransformMap)> {
    map.expect_kind(TransformKind::BetaRecurrent)?;
    check_splits(gb, map)?;

    let mut used = HashSet::new();
    let state_copies: Vec<[String; 2]> = gb
        .states()
        .iter()
        .map(|s| {
            [
                fresh(&mut used, format!("{}1", s.id), '_'),
                fresh(&mut used, format!("{}2", s.id), '_'),
            ]
        })
        .collect();
    let mut used: HashSet<String> = gb.actions().iter().map(|a| a.id.clone()).collect();
    let primed: Vec<String> = gb
        .actions()
        .iter()
        .map(|a| fresh(&mut used, format!("{}'", a.id), '\''))
        .collect();

    let mut states = Vec::with_capacity(2 * gb.num_states());
    for copy in 0..2 {
        for (s, decl) in gb.states().iter().enumerate() {
            states.push(StateDecl {
                id: state_copies[s][copy].clone(),
                owner: if copy == 0 {
                    decl.owner
                } else {
                    decl.owner.opponent()
                },
            });
        }
    }
    let mut actions: Vec<ActionDecl> = gb.actions().to_vec();
    actions.extend(gb.actions().iter().zip(&primed).map(|(a, id)| ActionDecl {
        id: id.clone(),
        reward: -a.reward.clone(),
    }));

    let s0 = gb.require_state(&map.s0)?;
    let mut transitions = Vec::with_capacity(4 * map.splits.len());
    for copy in 0..2 {
        let other = 1 - copy;
        for split in &map.splits {
            let from = gb.state(&split.from).expect("checked");
            let to = gb.state(&split.to).expect("checked");
            let action = gb.action(&split.action).expect("checked");
            let action_id = if copy == 0 {
                &gb.actions()[action].id
            } else {
                &primed[action]
            };
            let from_id = &state_copies[from][copy];
            if !split.first.is_zero() {
                transitions.push(TransitionDecl::new(
                    from_id,
                    action_id,
                    &state_copies[to][copy],
                    split.first.clone(),
                ));
            }
            if !split.second.is_zero() {
                transitions.push(TransitionDecl::new(
                    from_id,
                    action_id,
                    &state_copies[s0][other],
                    split.second.clone(),
                ));
            }
        }
    }

    let gprime = Game::build(states, actions, transitions)?;
    let out = TransformMap {
        kind: TransformKind::Mirror,
        state_map: gb
            .states()
            .iter()
            .zip(&state_copies)
            .map(|(s, copies)| (s.id.clone(), copies.to_vec()))
            .collect(),
        action_map: gb
            .actions()
            .iter()
            .zip(&primed)
            .map(|(a, p)| (a.id.clone(), vec![a.id.clone(), p.clone()]))
            .collect(),
        beta: map.beta.clone(),
        s0: map.s0.clone(),
        splits: Vec::new(),
    };
    Ok((gprime, out))
}

/// Index-level view of a mirror map, for moving strategies between a
/// beta-recurrent game and its mirror.
#[derive(Debug, Clone)]
pub struct MirrorLayout {
    /// `copies[c][s]`: index in the mirror of copy `c` of base state `s`.
    pub copies: [Vec<usize>; 2],
    /// `moves[c][s][k]`: move index at `copies[c][s]` for base move `k` at `s`.
    moves: [Vec<Vec<usize>>; 2],
    /// Inverse of `moves`, indexed by mirror state.
    base_move: Vec<Vec<usize>>,
}

impl MirrorLayout {
    pub fn new(gb: &Game, gprime: &Game, map: &TransformMap) -> Result<MirrorLayout> {
        map.expect_kind(TransformKind::Mirror)?;
        let mismatch = |msg: String| Error::StrategyDomainMismatch(msg);
        let mut copies = [Vec::new(), Vec::new()];
        let mut moves = [Vec::new(), Vec::new()];
        let mut base_move = vec![Vec::new(); gprime.num_states()];
        for s in 0..gb.num_states() {
            let images = map
                .state_map
                .get(gb.state_id(s))
                .ok_or_else(|| mismatch(format!("state `{}` missing from map", gb.state_id(s))))?;
            for c in 0..2 {
                let image = gprime
                    .state(&images[c])
                    .ok_or_else(|| mismatch(format!("mirror has no state `{}`", images[c])))?;
                let expected_owner = if c == 0 {
                    gb.owner(s)
                } else {
                    gb.owner(s).opponent()
                };
                if gprime.owner(image) != expected_owner {
                    return Err(mismatch(format!(
                        "owner of `{}` does not match the map",
                        images[c]
                    )));
                }
                let mut forward = Vec::with_capacity(gb.moves(s).len());
                let mut backward = vec![usize::MAX; gprime.moves(image).len()];
                for (k, mv) in gb.moves(s).iter().enumerate() {
                    let name = &map.action_map.get(gb.action_id(mv.action)).ok_or_else(|| {
                        mismatch(format!(
                            "action `{}` missing from map",
                            gb.action_id(mv.action)
                        ))
                    })?[c];
                    let j = gprime
                        .moves(image)
                        .iter()
                        .position(|m| gprime.action_id(m.action) == name)
                        .ok_or_else(|| {
                            mismatch(format!("action `{name}` unavailable at `{}`", images[c]))
                        })?;
                    forward.push(j);
                    backward[j] = k;
                }
                if backward.contains(&usize::MAX) {
                    return Err(mismatch(format!(
                        "`{}` has actions outside the map",
                        images[c]
                    )));
                }
                copies[c].push(image);
                moves[c].push(forward);
                base_move[image] = backward;
            }
        }
        Ok(MirrorLayout {
            copies,
            moves,
            base_move,
        })
    }

    /// Splits a mirror pair `(sigma, tau)` into `((sigma1, tau1), (tau2, sigma2))`,
    /// both strategy pairs of the base game. In copy 2 the players are
    /// switched, so MIN's copy-2 choices become the MAX side of the second pair.
    pub fn decompose(
        &self,
        gb: &Game,
        gprime: &Game,
        pair: &StrategyPair,
    ) -> Result<(StrategyPair, StrategyPair)> {
        pair.check(gprime)?;
        let restrict = |c: usize| -> Result<StrategyPair> {
            let mut max = vec![None; gb.num_states()];
            let mut min = vec![None; gb.num_states()];
            for s in 0..gb.num_states() {
                let image = self.copies[c][s];
                let k = self.base_move[image][pair.move_at(image)];
                match gb.owner(s) {
                    Player::Max => max[s] = Some(k),
                    Player::Min => min[s] = Some(k),
                }
            }
            StrategyPair::new(
                gb,
                PositionalStrategy::from_choices(gb, Player::Max, max)?,
                PositionalStrategy::from_choices(gb, Player::Min, min)?,
            )
        };
        Ok((restrict(0)?, restrict(1)?))
    }

    /// Inverse of [`MirrorLayout::decompose`].
    pub fn compose(
        &self,
        gb: &Game,
        gprime: &Game,
        first: &StrategyPair,
        second: &StrategyPair,
    ) -> Result<StrategyPair> {
        first.check(gb)?;
        second.check(gb)?;
        let mut max = vec![None; gprime.num_states()];
        let mut min = vec![None; gprime.num_states()];
        for (c, pair) in [first, second].into_iter().enumerate() {
            for s in 0..gb.num_states() {
                let image = self.copies[c][s];
                let j = self.moves[c][s][pair.move_at(s)];
                match gprime.owner(image) {
                    Player::Max => max[image] = Some(j),
                    Player::Min => min[image] = Some(j),
                }
            }
        }
        StrategyPair::new(
            gprime,
            PositionalStrategy::from_choices(gprime, Player::Max, max)?,
            PositionalStrategy::from_choices(gprime, Player::Min, min)?,
        )
    }
}

/// See [`MirrorLayout::decompose`].
pub fn decompose_mirror_strategies(
    gb: &Game,
    gprime: &Game,
    map: &TransformMap,
    pair: &StrategyPair,
) -> Result<(StrategyPair, StrategyPair)> {
    MirrorLayout::new(gb, gprime, map)?.decompose(gb, gprime, pair)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::induced_chain;
    use crate::game::fixtures::*;
    use crate::game::{enumerate_pairs, DEFAULT_CAP};
    use crate::rational::{int, ratio};

    fn transitions_of(g: &Game) -> Vec<(String, String, String, Rational)> {
        g.transitions()
            .iter()
            .map(|t| {
                (
                    g.state_id(t.from).to_owned(),
                    g.action_id(t.action).to_owned(),
                    g.state_id(t.to).to_owned(),
                    t.prob.clone(),
                )
            })
            .collect()
    }

    fn t(from: &str, action: &str, to: &str, p: Rational) -> (String, String, String, Rational) {
        (from.into(), action.into(), to.into(), p)
    }

    #[test]
    fn beta_recurrent_of_g2() {
        let (gb, map) = beta_recurrent(&g2(), &ratio(1, 2), "a").unwrap();
        assert_eq!(
            transitions_of(&gb),
            vec![
                t("a", "X", "b", ratio(1, 2)),
                t("a", "X", "a", ratio(1, 2)),
                t("b", "Y", "a", int(1)),
            ]
        );
        let chain = induced_chain(&gb, &only_pair(&gb)).unwrap();
        assert_eq!(
            chain.matrix,
            vec![vec![ratio(1, 2), ratio(1, 2)], vec![int(1), int(0)]]
        );
        assert_eq!(chain.rewards, vec![int(1), int(-1)]);
        assert_eq!(map.kind, TransformKind::BetaRecurrent);
        assert_eq!(map.splits.len(), 2);
        assert_eq!(map.splits[1].first, ratio(1, 2));
        assert_eq!(map.splits[1].second, ratio(1, 2));
    }

    #[test]
    fn zero_beta_sends_everything_to_reset() {
        let (gb, _) = beta_recurrent(&g2(), &int(0), "b").unwrap();
        let chain = induced_chain(&gb, &only_pair(&gb)).unwrap();
        assert_eq!(
            chain.matrix,
            vec![vec![int(0), int(1)], vec![int(0), int(1)]]
        );
    }

    #[test]
    fn self_loop_game_is_unchanged() {
        for beta in [int(0), ratio(1, 3), ratio(9, 10)] {
            let (gb, _) = beta_recurrent(&g1(), &beta, "s0").unwrap();
            assert_eq!(gb, g1());
        }
    }

    #[test]
    fn beta_recurrent_errors() {
        assert_eq!(
            beta_recurrent(&g2(), &int(1), "a").unwrap_err().kind(),
            "InvalidBeta"
        );
        assert_eq!(
            beta_recurrent(&g2(), &ratio(1, 2), "zz"),
            Err(Error::UnknownState("zz".into()))
        );
    }

    #[test]
    fn mirror_of_g2() {
        let (gb, map) = beta_recurrent(&g2(), &ratio(1, 2), "a").unwrap();
        let (gp, mmap) = mirror(&gb, &map).unwrap();
        let owners: Vec<_> = gp
            .states()
            .iter()
            .map(|s| (s.id.as_str(), s.owner))
            .collect();
        assert_eq!(
            owners,
            [
                ("a1", Player::Max),
                ("b1", Player::Min),
                ("a2", Player::Min),
                ("b2", Player::Max)
            ]
        );
        let rewards: Vec<_> = gp
            .actions()
            .iter()
            .map(|a| (a.id.as_str(), a.reward.clone()))
            .collect();
        assert_eq!(
            rewards,
            [
                ("X", int(1)),
                ("Y", int(-1)),
                ("X'", int(-1)),
                ("Y'", int(1))
            ]
        );
        assert_eq!(
            transitions_of(&gp),
            vec![
                t("a1", "X", "b1", ratio(1, 2)),
                t("a1", "X", "a2", ratio(1, 2)),
                t("b1", "Y", "a1", ratio(1, 2)),
                t("b1", "Y", "a2", ratio(1, 2)),
                t("a2", "X'", "b2", ratio(1, 2)),
                t("a2", "X'", "a1", ratio(1, 2)),
                t("b2", "Y'", "a2", ratio(1, 2)),
                t("b2", "Y'", "a1", ratio(1, 2)),
            ]
        );
        assert_eq!(mmap.state_map["a"], ["a1", "a2"]);
        assert_eq!(mmap.action_map["X"], ["X", "X'"]);
    }

    #[test]
    fn mirror_of_single_state_game_is_two_state_switch_chain() {
        for beta in [int(0), ratio(1, 3), ratio(9, 10)] {
            let (gb, map) = beta_recurrent(&g1(), &beta, "s0").unwrap();
            let (gp, _) = mirror(&gb, &map).unwrap();
            assert_eq!(gp.num_states(), 2);
            let chain = induced_chain(&gp, &only_pair(&gp)).unwrap();
            let keep = int(1) - &beta;
            assert_eq!(
                chain.matrix,
                vec![vec![beta.clone(), keep.clone()], vec![keep, beta.clone()]]
            );
        }
    }

    #[test]
    fn mirror_needs_annotated_beta_recurrent_input() {
        let (gb, map) = beta_recurrent(&g2(), &ratio(1, 2), "a").unwrap();
        let (gp, mmap) = mirror(&gb, &map).unwrap();
        assert_eq!(mirror(&gp, &mmap).unwrap_err().kind(), "WrongTransformKind");

        let mut bare = map.clone();
        bare.splits.clear();
        assert_eq!(
            mirror(&gb, &bare).unwrap_err().kind(),
            "MissingKindAnnotation"
        );

        let mut tampered = map.clone();
        tampered.splits[0].first = ratio(1, 4);
        tampered.splits[0].second = ratio(1, 4);
        assert_eq!(
            mirror(&gb, &tampered).unwrap_err().kind(),
            "MissingKindAnnotation"
        );

        // The map of one game does not describe another.
        assert_eq!(
            mirror(&g2(), &map).unwrap_err().kind(),
            "MissingKindAnnotation"
        );
    }

    #[test]
    fn primed_names_escape_collisions() {
        let g = crate::game::validate_game(&raw_game(
            &[("x", "max")],
            &[("A", "1"), ("A'", "2")],
            &[("x", "A", "x", "1"), ("x", "A'", "x", "1")],
        ))
        .unwrap();
        let (gb, map) = beta_recurrent(&g, &ratio(1, 2), "x").unwrap();
        let (gp, mmap) = mirror(&gb, &map).unwrap();
        assert_eq!(mmap.action_map["A"], ["A", "A''"]);
        assert_eq!(mmap.action_map["A'"], ["A'", "A'''"]);
        assert_eq!(gp.actions().len(), 4);
    }

    #[test]
    fn decompose_g2_mirror() {
        let (gb, map) = beta_recurrent(&g2(), &ratio(1, 2), "a").unwrap();
        let (gp, mmap) = mirror(&gb, &map).unwrap();
        let file = crate::game::StrategyFile {
            max: [("a1".into(), "X".into()), ("b2".into(), "Y'".into())].into(),
            min: [("b1".into(), "Y".into()), ("a2".into(), "X'".into())].into(),
        };
        let pair = StrategyPair::from_names(&gp, &file).unwrap();
        let (first, second) = decompose_mirror_strategies(&gb, &gp, &mmap, &pair).unwrap();
        let expected = crate::game::StrategyFile {
            max: [("a".into(), "X".into())].into(),
            min: [("b".into(), "Y".into())].into(),
        };
        assert_eq!(first.to_names(&gb), expected);
        assert_eq!(second.to_names(&gb), expected);
    }

    #[test]
    fn compose_inverts_decompose() {
        let g = g1b();
        let (gb, map) = beta_recurrent(&g, &ratio(1, 2), "s0").unwrap();
        let (gp, mmap) = mirror(&gb, &map).unwrap();
        let layout = MirrorLayout::new(&gb, &gp, &mmap).unwrap();
        let (maxs, mins) = enumerate_pairs(&gp, DEFAULT_CAP).unwrap();
        assert_eq!(maxs.len() * mins.len(), 4);
        for max in &maxs {
            for min in &mins {
                let pair = StrategyPair::new(&gp, max.clone(), min.clone()).unwrap();
                let (first, second) = layout.decompose(&gb, &gp, &pair).unwrap();
                assert_eq!(layout.compose(&gb, &gp, &first, &second).unwrap(), pair);
            }
        }
    }

    #[test]
    fn map_file_round_trip() {
        let (gb, map) = beta_recurrent(&g2(), &ratio(1, 2), "a").unwrap();
        assert_eq!(TransformMap::from_file(&map.to_file()).unwrap(), map);
        let (_, mmap) = mirror(&gb, &map).unwrap();
        let json = serde_json::to_string(&mmap.to_file()).unwrap();
        assert_eq!(
            json,
            r#"{"kind":"mirror","state_map":{"a":["a1","a2"],"b":["b1","b2"]},"action_map":{"X":["X","X'"],"Y":["Y","Y'"]},"beta":"1/2","s0":"a"}"#
        );
    }
}
