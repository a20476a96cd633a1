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

//! Winners across ballot lengths and bootstrap resampling of profiles.

use crate::irv::{winner_of, Electorate, IrvError, ScaledElectorate, Tally, TieBreakPolicy};
use crate::profile::{BallotType, CandidateId, Profile, WeightedProfile};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

/// Default number of bootstrap trials.
pub const DEFAULT_TRIALS: u64 = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("need at least two candidates, got {0}")]
    TooFewCandidates(usize),
    #[error("need at least one trial")]
    NoTrials,
    #[error(transparent)]
    Irv(#[from] IrvError),
}

/// Winner at each ballot length `h = 1..k-1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WinnerSequence {
    pub winners: Vec<CandidateId>,
    pub distinct_count: usize,
}

impl WinnerSequence {
    pub fn from_winners(winners: Vec<CandidateId>) -> Self {
        let distinct_count = winners.iter().collect::<BTreeSet<_>>().len();
        WinnerSequence { winners, distinct_count }
    }

    /// Winner at ballot length `h` (1-based).
    pub fn at(&self, h: usize) -> CandidateId {
        self.winners[h - 1]
    }

    pub fn as_ids(&self) -> Vec<u32> {
        self.winners.iter().map(|c| c.0).collect()
    }
}

pub(crate) fn sequence_of<W: Tally>(
    e: &Electorate<W>,
    policy: &TieBreakPolicy,
) -> Result<WinnerSequence, AnalysisError> {
    if e.k() < 2 {
        return Err(AnalysisError::TooFewCandidates(e.k()));
    }
    let winners = (1..e.k()).map(|h| winner_of(e, h, policy)).collect::<Result<Vec<_>, _>>()?;
    Ok(WinnerSequence::from_winners(winners))
}

pub fn winner_sequence(p: &Profile, policy: &TieBreakPolicy) -> Result<WinnerSequence, AnalysisError> {
    sequence_of(&Electorate::from_profile(p), policy)
}

pub fn winner_sequence_weighted(p: &WeightedProfile, policy: &TieBreakPolicy) -> Result<WinnerSequence, AnalysisError> {
    match ScaledElectorate::from_weighted(p) {
        ScaledElectorate::Small(e) => sequence_of(&e, policy),
        ScaledElectorate::Big(e) => sequence_of(&e, policy),
    }
}

pub fn num_truncation_winners(p: &Profile, policy: &TieBreakPolicy) -> Result<usize, AnalysisError> {
    Ok(winner_sequence(p, policy)?.distinct_count)
}

/// Win frequencies under bootstrap resampling.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResampleReport {
    pub trials: u64,
    pub seed: u64,
    /// `wins[h - 1][c.index()]` counts trials won by `c` at length `h`.
    pub wins: Vec<Vec<u64>>,
    /// `win_prob[h - 1][c.index()]`, equal to `wins / trials`.
    pub win_prob: Vec<Vec<f64>>,
    /// `distinct_histogram[d]` counts trials with `d` truncation winners.
    pub distinct_histogram: Vec<u64>,
    pub actual: WinnerSequence,
}

impl ResampleReport {
    pub fn mean_distinct(&self) -> f64 {
        let total: u64 = self.distinct_histogram.iter().enumerate().map(|(d, &n)| d as u64 * n).sum();
        total as f64 / self.trials as f64
    }

    pub fn max_distinct(&self) -> usize {
        self.distinct_histogram.iter().rposition(|&n| n > 0).unwrap_or(0)
    }
}

/// The generator for trial `trial` of a run seeded with `seed`.
///
/// Each trial gets its own ChaCha stream, so results do not depend on how
/// trials are scheduled across threads.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// Draws `n` ballots with replacement from `p`'s empirical distribution,
/// where `n` is the number of voters in `p`.
pub fn bootstrap_sample(p: &Profile, rng: &mut ChaCha8Rng) -> Profile {
    let n = p.total_voters();
    let mut left = n;
    let mut mass = n;
    let mut types = Vec::with_capacity(p.types().len());
    for t in p.types() {
        if left == 0 {
            break;
        }
        let drawn = if t.count == mass {
            left
        } else {
            let prob = t.count as f64 / mass as f64;
            Binomial::new(left, prob).expect("probability in [0, 1]").sample(rng)
        };
        mass -= t.count;
        left -= drawn;
        if drawn > 0 {
            types.push(BallotType { ballot: t.ballot.clone(), count: drawn });
        }
    }
    Profile::new(p.k(), types).expect("resampled ballots come from a valid profile")
}

/// Resamples `p` `trials` times and tallies the winner at every length.
pub fn resample(p: &Profile, trials: u64, seed: u64, policy: &TieBreakPolicy) -> Result<ResampleReport, AnalysisError> {
    if trials == 0 {
        return Err(AnalysisError::NoTrials);
    }
    let actual = winner_sequence(p, policy)?;
    let k = p.k();
    let sequences: Vec<WinnerSequence> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let sample = bootstrap_sample(p, &mut trial_rng(seed, trial));
            winner_sequence(&sample, policy)
        })
        .collect::<Result<_, _>>()?;
    let mut wins = vec![vec![0u64; k]; k - 1];
    let mut distinct_histogram = vec![0u64; k];
    for s in &sequences {
        for (h, w) in s.winners.iter().enumerate() {
            wins[h][w.index()] += 1;
        }
        distinct_histogram[s.distinct_count] += 1;
    }
    let win_prob = wins.iter().map(|row| row.iter().map(|&n| n as f64 / trials as f64).collect()).collect();
    Ok(ResampleReport { trials, seed, wins, win_prob, distinct_histogram, actual })
}
