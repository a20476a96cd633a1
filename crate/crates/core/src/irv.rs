// Copyright 2026 The irvlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

//! Instant-runoff tabulation.
//!
//! Every round eliminates a candidate with the fewest first-place votes
//! among non-exhausted ballots and removes it from all ballots. Counting
//! continues until a single candidate is left, so candidates that appear on
//! no ballot are still eliminated (at a tally of zero) and every trace has a
//! complete elimination order.

use crate::profile::{Ballot, CandidateId, Profile, WeightedProfile};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::fmt::Debug;
use std::ops::{AddAssign, SubAssign};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IrvError {
    #[error("profile has no voters, so there is no winner")]
    NoVoters,
    #[error("profile has no candidates")]
    NoCandidates,
    #[error("scripted tie-break list exhausted after {used} choices")]
    ScriptExhausted { used: usize },
    #[error("scripted choice {choice} is out of range for a {size}-way tie")]
    ScriptOutOfRange { choice: usize, size: usize },
}

/// A vote weight. Integer counts for ordinary profiles, scaled exact weights
/// for weighted ones.
pub trait Tally:
    Clone + Ord + Default + Debug + Send + Sync + for<'a> AddAssign<&'a Self> + for<'a> SubAssign<&'a Self>
{
}

impl Tally for u64 {}
impl Tally for u128 {}
impl Tally for BigInt {}

/// How to choose among candidates tied for last place.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum TieBreakPolicy {
    /// Eliminate the lowest-numbered tied candidate.
    #[default]
    LexicographicMin,
    /// Eliminate the highest-numbered tied candidate.
    LexicographicMax,
    /// Pick uniformly at random from a generator seeded at the start of
    /// each count.
    SeededRandom(u64),
    /// The `i`-th tie event eliminates the `choices[i]`-th tied candidate
    /// (zero-based, candidates in ascending order).
    Scripted(Vec<usize>),
}

impl TieBreakPolicy {
    pub(crate) fn breaker(&self) -> TieBreaker<'_> {
        match self {
            TieBreakPolicy::LexicographicMin => TieBreaker::Min,
            TieBreakPolicy::LexicographicMax => TieBreaker::Max,
            TieBreakPolicy::SeededRandom(seed) => TieBreaker::Random(Box::new(ChaCha8Rng::seed_from_u64(*seed))),
            TieBreakPolicy::Scripted(choices) => TieBreaker::Scripted { choices, used: 0 },
        }
    }
}

pub(crate) enum TieBreaker<'a> {
    Min,
    Max,
    Random(Box<ChaCha8Rng>),
    Scripted { choices: &'a [usize], used: usize },
}

impl TieBreaker<'_> {
    /// Index into `tied` (ascending, at least two entries).
    fn choose(&mut self, size: usize) -> Result<usize, IrvError> {
        match self {
            TieBreaker::Min => Ok(0),
            TieBreaker::Max => Ok(size - 1),
            TieBreaker::Random(rng) => Ok(rng.random_range(0..size)),
            TieBreaker::Scripted { choices, used } => {
                let choice = *choices.get(*used).ok_or(IrvError::ScriptExhausted { used: *used })?;
                *used += 1;
                if choice >= size {
                    return Err(IrvError::ScriptOutOfRange { choice, size });
                }
                Ok(choice)
            }
        }
    }
}

/// One round of a count.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundRecord<W = u64> {
    pub round: usize,
    /// First-place tallies of every candidate still standing.
    pub tallies: Vec<(CandidateId, W)>,
    pub eliminated: CandidateId,
    /// Candidates tied for last place; a singleton when there was no tie.
    pub tie_among: Vec<CandidateId>,
    /// Total weight of exhausted ballots once this round's elimination is
    /// applied.
    pub exhausted_after: W,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EliminationTrace<W = u64> {
    pub winner: CandidateId,
    pub rounds: Vec<RoundRecord<W>>,
    pub elimination_order: Vec<CandidateId>,
    /// Two standing candidates had equal tallies in some round.
    pub any_tally_tie: bool,
    /// Some round had more than one candidate tied for last.
    pub any_elim_tie: bool,
}

/// Ballots in tabulation form: zero-based rankings with weights.
#[derive(Clone, Debug)]
pub struct Electorate<W> {
    k: usize,
    rankings: Vec<Vec<u32>>,
    weights: Vec<W>,
}

impl<W: Tally> Electorate<W> {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn num_types(&self) -> usize {
        self.rankings.len()
    }

    pub fn total(&self) -> W {
        let mut t = W::default();
        for w in &self.weights {
            t += w;
        }
        t
    }

    fn from_parts(k: usize, parts: impl IntoIterator<Item = (Vec<u32>, W)>) -> Self {
        let (rankings, weights) = parts.into_iter().unzip();
        Electorate { k, rankings, weights }
    }
}

impl Electorate<u64> {
    pub fn from_profile(p: &Profile) -> Self {
        Electorate::from_parts(p.k(), p.types().iter().map(|t| (zero_based(&t.ballot), t.count)))
    }
}

fn zero_based(b: &Ballot) -> Vec<u32> {
    b.ranking().iter().map(|c| c.index() as u32).collect()
}

/// Weighted profiles scaled to integers by the common denominator of their
/// weights. Scaling preserves every comparison between tallies.
pub enum ScaledElectorate {
    Small(Electorate<u128>),
    Big(Electorate<BigInt>),
}

impl ScaledElectorate {
    pub fn from_weighted(p: &WeightedProfile) -> Self {
        let denom = p.types().iter().fold(BigInt::from(1), |acc, (_, w)| acc.lcm(w.denom()));
        let scaled: Vec<(Vec<u32>, BigInt)> =
            p.types().iter().map(|(b, w)| (zero_based(b), w.numer() * (&denom / w.denom()))).collect();
        let total: BigInt = scaled.iter().map(|(_, w)| w).sum();
        if total.to_u128().is_some() {
            ScaledElectorate::Small(Electorate::from_parts(
                p.k(),
                scaled.into_iter().map(|(r, w)| (r, w.to_u128().expect("bounded by total"))),
            ))
        } else {
            ScaledElectorate::Big(Electorate::from_parts(p.k(), scaled))
        }
    }
}

/// The mutable state of one count at one ballot length.
#[derive(Clone, Debug)]
pub(crate) struct CountState<'e, W> {
    electorate: &'e Electorate<W>,
    max_len: usize,
    /// Position of the candidate each ballot type currently counts for, or
    /// `None` once exhausted.
    pos: Vec<Option<u32>>,
    holders: Vec<Vec<u32>>,
    tallies: Vec<W>,
    eliminated: Vec<bool>,
    remaining: usize,
    exhausted: W,
}

impl<'e, W: Tally> CountState<'e, W> {
    pub(crate) fn new(electorate: &'e Electorate<W>, max_len: usize) -> Self {
        let k = electorate.k;
        let mut state = CountState {
            electorate,
            max_len,
            pos: vec![None; electorate.rankings.len()],
            holders: vec![Vec::new(); k],
            tallies: vec![W::default(); k],
            eliminated: vec![false; k],
            remaining: k,
            exhausted: W::default(),
        };
        for (t, ranking) in electorate.rankings.iter().enumerate() {
            if max_len == 0 || ranking.is_empty() {
                state.exhausted += &electorate.weights[t];
                continue;
            }
            let c = ranking[0] as usize;
            state.pos[t] = Some(0);
            state.holders[c].push(t as u32);
            state.tallies[c] += &electorate.weights[t];
        }
        state
    }

    pub(crate) fn remaining(&self) -> usize {
        self.remaining
    }

    pub(crate) fn eliminated_mask(&self) -> Vec<u64> {
        let mut mask = vec![0u64; self.eliminated.len().div_ceil(64)];
        for (c, &e) in self.eliminated.iter().enumerate() {
            if e {
                mask[c / 64] |= 1 << (c % 64);
            }
        }
        mask
    }

    pub(crate) fn standing(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.eliminated.len()).filter(|&c| !self.eliminated[c])
    }

    /// Standing candidates with the minimum tally, ascending.
    pub(crate) fn last_place(&self) -> Vec<usize> {
        let mut min: Option<&W> = None;
        let mut tied = Vec::new();
        for c in self.standing() {
            let t = &self.tallies[c];
            match min {
                Some(m) if t > m => {}
                Some(m) if t == m => tied.push(c),
                _ => {
                    min = Some(t);
                    tied.clear();
                    tied.push(c);
                }
            }
        }
        tied
    }

    fn has_tally_tie(&self) -> bool {
        let mut standing: Vec<&W> = self.standing().map(|c| &self.tallies[c]).collect();
        standing.sort_unstable();
        standing.windows(2).any(|w| w[0] == w[1])
    }

    /// True if no ballot held by `c` would move to another candidate were
    /// `c` eliminated now.
    pub(crate) fn holds_only_dead_ballots(&self, c: usize) -> bool {
        self.holders[c].iter().all(|&t| self.next_standing(t as usize, c).is_none())
    }

    /// Next standing candidate on ballot type `t` after its current
    /// position, ignoring `skip`.
    fn next_standing(&self, t: usize, skip: usize) -> Option<(u32, usize)> {
        let ranking = &self.electorate.rankings[t];
        let start = self.pos[t]? as usize + 1;
        let end = ranking.len().min(self.max_len);
        (start..end).map(|p| (p as u32, ranking[p] as usize)).find(|&(_, c)| c != skip && !self.eliminated[c])
    }

    pub(crate) fn eliminate(&mut self, c: usize) {
        debug_assert!(!self.eliminated[c]);
        self.eliminated[c] = true;
        self.remaining -= 1;
        let held = std::mem::take(&mut self.holders[c]);
        for &t in &held {
            let t = t as usize;
            let weight = &self.electorate.weights[t];
            match self.next_standing(t, c) {
                Some((p, next)) => {
                    self.pos[t] = Some(p);
                    self.holders[next].push(t as u32);
                    self.tallies[next] += weight;
                }
                None => {
                    self.pos[t] = None;
                    self.exhausted += weight;
                }
            }
        }
        self.tallies[c] = W::default();
    }

    pub(crate) fn sole_survivor(&self) -> Option<usize> {
        if self.remaining == 1 {
            self.standing().next()
        } else {
            None
        }
    }
}

/// Result of a count, with or without per-round detail.
#[derive(Clone, Debug)]
pub(crate) struct Outcome<W> {
    pub winner: usize,
    pub order: Vec<usize>,
    pub rounds: Vec<RoundRecord<W>>,
    pub any_tally_tie: bool,
    pub any_elim_tie: bool,
}

pub(crate) fn tabulate<W: Tally>(
    electorate: &Electorate<W>,
    max_len: usize,
    policy: &TieBreakPolicy,
    record: bool,
) -> Result<Outcome<W>, IrvError> {
    let k = electorate.k;
    if k == 0 {
        return Err(IrvError::NoCandidates);
    }
    if electorate.total() == W::default() {
        return Err(IrvError::NoVoters);
    }
    let mut breaker = policy.breaker();
    let mut state = CountState::new(electorate, max_len);
    let mut order = Vec::with_capacity(k - 1);
    let mut rounds = Vec::new();
    let mut any_tally_tie = false;
    let mut any_elim_tie = false;
    while state.remaining > 1 {
        let tied = state.last_place();
        if record && !any_tally_tie {
            any_tally_tie = state.has_tally_tie();
        }
        let loser = if tied.len() > 1 {
            any_elim_tie = true;
            tied[breaker.choose(tied.len())?]
        } else {
            tied[0]
        };
        let tallies = if record {
            state.standing().map(|c| (CandidateId::from_index(c), state.tallies[c].clone())).collect()
        } else {
            Vec::new()
        };
        state.eliminate(loser);
        order.push(loser);
        if record {
            rounds.push(RoundRecord {
                round: order.len(),
                tallies,
                eliminated: CandidateId::from_index(loser),
                tie_among: tied.iter().map(|&c| CandidateId::from_index(c)).collect(),
                exhausted_after: state.exhausted.clone(),
            });
        }
    }
    let winner = state.sole_survivor().expect("loop ends with one candidate");
    Ok(Outcome { winner, order, rounds, any_tally_tie, any_elim_tie })
}

impl<W: Clone> Outcome<W> {
    pub(crate) fn into_trace(self) -> EliminationTrace<W> {
        EliminationTrace {
            winner: CandidateId::from_index(self.winner),
            rounds: self.rounds,
            elimination_order: self.order.into_iter().map(CandidateId::from_index).collect(),
            any_tally_tie: self.any_tally_tie,
            any_elim_tie: self.any_elim_tie,
        }
    }
}

/// Runs IRV on `p` and records every round.
pub fn run_irv(p: &Profile, policy: &TieBreakPolicy) -> Result<EliminationTrace, IrvError> {
    let e = Electorate::from_profile(p);
    Ok(tabulate(&e, p.k(), policy, true)?.into_trace())
}

/// Runs IRV on `p` as if every ballot were cut to its first `h` entries.
pub fn run_irv_truncated(p: &Profile, h: usize, policy: &TieBreakPolicy) -> Result<EliminationTrace, IrvError> {
    let e = Electorate::from_profile(p);
    Ok(tabulate(&e, h, policy, true)?.into_trace())
}

/// Winner of a count over prepared ballots, without per-round records.
pub fn winner_of<W: Tally>(e: &Electorate<W>, h: usize, policy: &TieBreakPolicy) -> Result<CandidateId, IrvError> {
    Ok(CandidateId::from_index(tabulate(e, h, policy, false)?.winner))
}

/// Like [`winner_of`], also reporting whether any elimination tie occurred.
pub fn winner_and_tie<W: Tally>(
    e: &Electorate<W>,
    h: usize,
    policy: &TieBreakPolicy,
) -> Result<(CandidateId, bool), IrvError> {
    let out = tabulate(e, h, policy, false)?;
    Ok((CandidateId::from_index(out.winner), out.any_elim_tie))
}

/// Runs IRV on a weighted profile with exact tallies.
///
/// Tallies in the returned trace are integers: the weights multiplied by
/// their least common denominator.
pub fn run_irv_weighted(p: &WeightedProfile, policy: &TieBreakPolicy) -> Result<EliminationTrace<BigInt>, IrvError> {
    let outcome = match ScaledElectorate::from_weighted(p) {
        ScaledElectorate::Small(e) => {
            let out = tabulate(&e, p.k(), policy, true)?;
            Outcome {
                winner: out.winner,
                order: out.order,
                rounds: out
                    .rounds
                    .into_iter()
                    .map(|r| RoundRecord {
                        round: r.round,
                        tallies: r.tallies.into_iter().map(|(c, w)| (c, BigInt::from(w))).collect(),
                        eliminated: r.eliminated,
                        tie_among: r.tie_among,
                        exhausted_after: BigInt::from(r.exhausted_after),
                    })
                    .collect(),
                any_tally_tie: out.any_tally_tie,
                any_elim_tie: out.any_elim_tie,
            }
        }
        ScaledElectorate::Big(e) => tabulate(&e, p.k(), policy, true)?,
    };
    Ok(outcome.into_trace())
}

impl<W: Tally> EliminationTrace<W> {
    /// Sum of first-place tallies in each round.
    pub fn round_totals(&self) -> Vec<W> {
        self.rounds
            .iter()
            .map(|r| {
                let mut s = W::default();
                for (_, w) in &r.tallies {
                    s += w;
                }
                s
            })
            .collect()
    }
}

impl ScaledElectorate {
    pub fn winner(&self, h: usize, policy: &TieBreakPolicy) -> Result<(CandidateId, bool), IrvError> {
        match self {
            ScaledElectorate::Small(e) => winner_and_tie(e, h, policy),
            ScaledElectorate::Big(e) => winner_and_tie(e, h, policy),
        }
    }
}
