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

//! Tie classification across ballot lengths and elimination-order labels.

use crate::irv::{tabulate, CountState, Electorate, IrvError, Tally, TieBreakPolicy};
use crate::profile::{CandidateId, Profile, ProfileError};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashSet};
use std::ops::RangeInclusive;

/// Default cap on tie-break branches explored by [`classify_ties`].
pub const DEFAULT_BRANCH_BUDGET: u64 = 1_000_000;

/// How ties behave over every ballot length `h = 1..k-1`, strongest first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TieLevel {
    /// No two standing candidates ever have equal tallies.
    TieFree,
    /// No round ever has a tie for last place.
    EliminationTieFree,
    /// Ties for last occur but never change the winner.
    ConsequentialTieFree,
    /// Some tie-break changes the winner at some ballot length.
    HasConsequentialTies,
    /// The branch budget ran out before a verdict.
    Unknown,
}

impl TieLevel {
    fn rank(self) -> Option<u8> {
        match self {
            TieLevel::TieFree => Some(3),
            TieLevel::EliminationTieFree => Some(2),
            TieLevel::ConsequentialTieFree => Some(1),
            TieLevel::HasConsequentialTies => Some(0),
            TieLevel::Unknown => None,
        }
    }

    /// Whether this level implies `other`. `Unknown` implies nothing.
    pub fn at_least(self, other: TieLevel) -> bool {
        match (self.rank(), other.rank()) {
            (Some(a), Some(b)) => a >= b,
            _ => false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TieClass {
    pub value: TieLevel,
    pub branches_explored: u64,
}

/// Classifies `p` by running IRV at every ballot length below `k`.
///
/// Lengths with a tie for last are searched over every tie-break. Search
/// states are keyed by the set of eliminated candidates, which fully
/// determines the rest of the count at a fixed length. A group of candidates
/// tied for last whose ballots would all exhaust is eliminated as a block,
/// since any order of those eliminations reaches the same state.
pub fn classify_ties(p: &Profile, branch_budget: u64) -> TieClass {
    classify_electorate(&Electorate::from_profile(p), branch_budget)
}

/// Like [`classify_ties`] but only over the given ballot lengths.
pub fn classify_ties_for_lengths(p: &Profile, lengths: RangeInclusive<usize>, branch_budget: u64) -> TieClass {
    classify_lengths(&Electorate::from_profile(p), lengths, branch_budget)
}

pub fn classify_electorate<W: Tally>(e: &Electorate<W>, branch_budget: u64) -> TieClass {
    classify_lengths(e, 1..=e.k().saturating_sub(1), branch_budget)
}

fn classify_lengths<W: Tally>(e: &Electorate<W>, lengths: RangeInclusive<usize>, branch_budget: u64) -> TieClass {
    let mut tally_tie = false;
    let mut tied_lengths = Vec::new();
    for h in lengths {
        match tabulate(e, h, &TieBreakPolicy::LexicographicMin, true) {
            Ok(out) => {
                tally_tie |= out.any_tally_tie;
                if out.any_elim_tie {
                    tied_lengths.push(h);
                }
            }
            Err(IrvError::NoVoters) => return TieClass { value: TieLevel::HasConsequentialTies, branches_explored: 0 },
            Err(e) => unreachable!("lexicographic policy cannot fail: {e}"),
        }
    }
    if tied_lengths.is_empty() {
        let value = if tally_tie { TieLevel::EliminationTieFree } else { TieLevel::TieFree };
        return TieClass { value, branches_explored: 0 };
    }
    let mut explored = 0;
    for h in tied_lengths {
        match possible_winners(e, h, branch_budget, &mut explored) {
            None => return TieClass { value: TieLevel::Unknown, branches_explored: explored },
            Some(w) if w.len() > 1 => {
                return TieClass { value: TieLevel::HasConsequentialTies, branches_explored: explored }
            }
            Some(_) => {}
        }
    }
    TieClass { value: TieLevel::ConsequentialTieFree, branches_explored: explored }
}

/// Every candidate that can win at length `h` under some tie-break
/// sequence, stopping early once two are found. `None` if the budget ran
/// out.
pub(crate) fn possible_winners<W: Tally>(
    e: &Electorate<W>,
    h: usize,
    budget: u64,
    explored: &mut u64,
) -> Option<BTreeSet<usize>> {
    let mut seen = HashSet::new();
    let mut winners = BTreeSet::new();
    explore(CountState::new(e, h), &mut seen, &mut winners, explored, budget).ok()?;
    Some(winners)
}

struct BudgetExceeded;

fn explore<W: Tally>(
    mut state: CountState<'_, W>,
    seen: &mut HashSet<Vec<u64>>,
    winners: &mut BTreeSet<usize>,
    explored: &mut u64,
    budget: u64,
) -> Result<(), BudgetExceeded> {
    loop {
        if let Some(w) = state.sole_survivor() {
            winners.insert(w);
            return Ok(());
        }
        let tied = state.last_place();
        if tied.len() == 1 {
            state.eliminate(tied[0]);
            continue;
        }
        if tied.len() < state.remaining() && tied.iter().all(|&c| state.holds_only_dead_ballots(c)) {
            for c in tied {
                state.eliminate(c);
            }
            continue;
        }
        for &c in &tied {
            *explored += 1;
            if *explored > budget {
                return Err(BudgetExceeded);
            }
            let mut child = state.clone();
            child.eliminate(c);
            if !seen.insert(child.eliminated_mask()) {
                continue;
            }
            explore(child, seen, winners, explored, budget)?;
            if winners.len() > 1 {
                return Ok(());
            }
        }
        return Ok(());
    }
}

/// A profile renamed so that candidate `i` is the `i`-th eliminated under
/// full ballots and the winner is `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relabeling {
    pub profile: Profile,
    /// `mapping[c.index()]` is the new name of old candidate `c`.
    pub mapping: Vec<CandidateId>,
    /// The full-ballot count had a tie for last, so the order depends on
    /// the lexicographic tie-break used here.
    pub ambiguous: bool,
}

pub fn relabel_by_elimination(p: &Profile) -> Result<Relabeling, RelabelError> {
    let e = Electorate::from_profile(p);
    let out = tabulate(&e, p.k(), &TieBreakPolicy::LexicographicMin, false)?;
    let mut mapping = vec![CandidateId(0); p.k()];
    for (pos, &c) in out.order.iter().enumerate() {
        mapping[c] = CandidateId::from_index(pos);
    }
    mapping[out.winner] = CandidateId::from_index(p.k() - 1);
    let profile = p.relabel(&mapping)?;
    Ok(Relabeling { profile, mapping, ambiguous: out.any_elim_tie })
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum RelabelError {
    #[error(transparent)]
    Irv(#[from] IrvError),
    #[error(transparent)]
    Profile(#[from] ProfileError),
}
