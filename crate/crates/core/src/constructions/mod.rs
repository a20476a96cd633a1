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

//! Explicit profiles with prescribed winners at each ballot length, and the
//! matching lower bounds on voter counts.
//!
//! Constructors label candidates in elimination order: candidate `i` is the
//! `i`-th eliminated when ballots are not truncated, and candidate `k` wins.
//! Every constructor checks its output with the IRV engine before returning
//! it and fails with [`ConstructionError::Verification`] on any mismatch.

mod ctf;
mod extensions;
mod k_types;
mod single_peaked;
mod tie_free;

pub use ctf::build_ctf;
pub use extensions::{build_full_ballot, build_min_length, Variant};
pub use k_types::build_k_types;
pub use single_peaked::build_single_peaked;
pub use tie_free::{build_tie_free, f_sequence, FSequence};

use crate::irv::TieBreakPolicy;
use crate::profile::{Ballot, BallotType, CandidateId, Profile, ProfileError};
use crate::ties::{classify_ties_for_lengths, TieLevel, DEFAULT_BRANCH_BUDGET};
use crate::truncation::winner_sequence;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("winner sequence has length {got}, expected {expected}")]
    Length { expected: usize, got: usize },
    #[error("winner sequence is infeasible: the winner at h = {h} is {winner}, outside {lo}..={hi}")]
    Infeasible { h: usize, winner: u32, lo: u32, hi: u32 },
    #[error("{0}")]
    Domain(String),
    #[error("construction failed verification: {0}")]
    Verification(String),
    #[error(transparent)]
    Profile(#[from] ProfileError),
}

/// Winners wanted at ballot lengths `1..k-1`, in elimination-order labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TargetSequence {
    pub k: usize,
    pub w: Vec<CandidateId>,
}

impl TargetSequence {
    pub fn new(k: usize, w: &[u32]) -> Self {
        TargetSequence { k, w: w.iter().map(|&c| CandidateId(c)).collect() }
    }

    /// Winner at ballot length `h` (1-based).
    pub fn at(&self, h: usize) -> u32 {
        self.w[h - 1].0
    }

    fn check_length(&self) -> Result<(), ConstructionError> {
        let expected = self.k.saturating_sub(1);
        if self.w.len() != expected {
            return Err(ConstructionError::Length { expected, got: self.w.len() });
        }
        Ok(())
    }

    fn check_feasible(&self) -> Result<(), ConstructionError> {
        self.check_length()?;
        check_window(&self.w, self.k as u32, 0)
    }
}

/// Requires `w[h-1]` in `h + offset + 1 ..= k` for every `h`.
fn check_window(w: &[CandidateId], k: u32, offset: u32) -> Result<(), ConstructionError> {
    for (i, c) in w.iter().enumerate() {
        let h = i as u32 + 1;
        let lo = h + offset + 1;
        if c.0 < lo || c.0 > k {
            return Err(ConstructionError::Infeasible { h: h as usize, winner: c.0, lo, hi: k });
        }
    }
    Ok(())
}

/// Whether some consequential-tie-free profile has `t` as its winner
/// sequence: the winner at length `h` must be eliminated after round `h`
/// under full ballots.
pub fn is_feasible(t: &TargetSequence) -> Result<bool, ConstructionError> {
    t.check_length()?;
    Ok(t.w.iter().enumerate().all(|(i, c)| c.0 as usize >= i + 2 && c.0 as usize <= t.k))
}

/// Tie conditions for which voter lower bounds are known.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TieRegime {
    ConsequentialTieFree,
    EliminationTieFree,
    TieFree,
}

impl TieRegime {
    pub const ALL: [TieRegime; 3] =
        [TieRegime::ConsequentialTieFree, TieRegime::EliminationTieFree, TieRegime::TieFree];

    pub fn name(self) -> &'static str {
        match self {
            TieRegime::ConsequentialTieFree => "consequential-tie-free",
            TieRegime::EliminationTieFree => "elimination-tie-free",
            TieRegime::TieFree => "tie-free",
        }
    }
}

/// Fewest voters a profile in `regime` needs for `k - 1` truncation
/// winners.
pub fn voter_lower_bound(k: usize, regime: TieRegime) -> Result<u64, ConstructionError> {
    if k < 3 {
        return Err(ConstructionError::Domain(format!("voter bounds need k >= 3, got {k}")));
    }
    let k = k as u64;
    Ok(match regime {
        TieRegime::ConsequentialTieFree if k == 3 => 9,
        TieRegime::ConsequentialTieFree => 2 * k * k - 2 * k,
        TieRegime::EliminationTieFree => (k * k * k - 3 * k) / 2,
        TieRegime::TieFree => (2 * k * k * k - 5 * k * k + 3 * k) / 2,
    })
}

/// Accumulates ballots as raw candidate numbers.
#[derive(Default)]
pub(crate) struct Ballots {
    counts: BTreeMap<Vec<u32>, u64>,
}

impl Ballots {
    pub(crate) fn add(&mut self, ranking: Vec<u32>, count: u64) {
        if count > 0 {
            *self.counts.entry(ranking).or_insert(0) += count;
        }
    }

    pub(crate) fn into_profile(self, k: usize) -> Result<Profile, ConstructionError> {
        let types = self
            .counts
            .into_iter()
            .map(|(r, count)| Ok(BallotType { ballot: Ballot::from_ids(&r)?, count }))
            .collect::<Result<Vec<_>, ProfileError>>()?;
        Ok(Profile::new(k, types)?)
    }
}

/// Checks the winners at lengths `1..=expected.len()` under the default
/// policy, the tie level over those lengths, and the voter count.
pub(crate) fn verify(
    p: &Profile,
    expected: &[u32],
    level: TieLevel,
    voters: Option<u64>,
) -> Result<(), ConstructionError> {
    let fail = |msg: String| Err(ConstructionError::Verification(msg));
    if let Some(n) = voters {
        if p.total_voters() != n {
            return fail(format!("expected {n} voters, built {}", p.total_voters()));
        }
    }
    let seq = winner_sequence(p, &TieBreakPolicy::LexicographicMin)
        .map_err(|e| ConstructionError::Verification(e.to_string()))?;
    let got = &seq.as_ids()[..expected.len()];
    if got != expected {
        return fail(format!("winners {got:?}, wanted {expected:?}"));
    }
    let class = classify_ties_for_lengths(p, 1..=expected.len(), DEFAULT_BRANCH_BUDGET);
    if !class.value.at_least(level) {
        return fail(format!("tie class {:?}, wanted at least {level:?}", class.value));
    }
    Ok(())
}

/// `(i, 1, 2, ..., i-1)`: the shared head of every ballot ranking `i` first.
pub(crate) fn head(i: u32) -> Vec<u32> {
    std::iter::once(i).chain(1..i).collect()
}
