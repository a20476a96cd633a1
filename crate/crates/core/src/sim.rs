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

//! Simulation of truncation effects on random general and 1-Euclidean
//! profiles: per-length agreement with the full-ballot winner, and counts
//! of distinct truncation winners.

use crate::irv::{winner_and_tie, Electorate, IrvError, ScaledElectorate, TieBreakPolicy};
use crate::profile::{Ballot, BallotType, CandidateId, Profile, WeightedProfile};
use crate::restrictions::{euclidean_profile, EuclideanSpec};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::ops::RangeInclusive;
use thiserror::Error;

pub const DEFAULT_VOTERS: u64 = 1000;
pub const DEFAULT_HEATMAP_TRIALS: u64 = 1000;
pub const DEFAULT_WINNER_TRIALS: u64 = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SimError {
    #[error("need at least one trial")]
    NoTrials,
    #[error("general profiles need at least one voter")]
    NoVoters,
    #[error("candidate counts must start at 2 or more, got {0:?}")]
    BadRange(RangeInclusive<usize>),
    #[error(transparent)]
    Irv(#[from] IrvError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PreferenceKind {
    /// Full rankings drawn uniformly at random.
    UniformGeneral,
    /// Candidates uniform on `[0, 1]` with a continuum of voters spread
    /// uniformly over the same interval.
    Euclidean1D,
}

impl PreferenceKind {
    pub fn name(self) -> &'static str {
        match self {
            PreferenceKind::UniformGeneral => "general",
            PreferenceKind::Euclidean1D => "euclidean",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BallotKind {
    Full,
    /// Each voter (or, for Euclidean profiles, each ranking) stops at a
    /// uniform random length before the ballot-length cap applies.
    VoluntarilyTruncated,
}

impl BallotKind {
    pub fn name(self) -> &'static str {
        match self {
            BallotKind::Full => "full",
            BallotKind::VoluntarilyTruncated => "partial",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimConfig {
    pub k_range: RangeInclusive<usize>,
    pub trials: u64,
    pub n_voters: u64,
    pub seed: u64,
    pub preference_kind: PreferenceKind,
    pub ballots: BallotKind,
}

impl Default for SimConfig {
    fn default() -> Self {
        SimConfig {
            k_range: 2..=40,
            trials: DEFAULT_HEATMAP_TRIALS,
            n_voters: DEFAULT_VOTERS,
            seed: 0,
            preference_kind: PreferenceKind::UniformGeneral,
            ballots: BallotKind::Full,
        }
    }
}

impl SimConfig {
    fn validate(&self) -> Result<(), SimError> {
        if self.trials == 0 {
            return Err(SimError::NoTrials);
        }
        if self.preference_kind == PreferenceKind::UniformGeneral && self.n_voters == 0 {
            return Err(SimError::NoVoters);
        }
        if *self.k_range.start() < 2 || self.k_range.is_empty() {
            return Err(SimError::BadRange(self.k_range.clone()));
        }
        Ok(())
    }
}

/// Generator for trial `trial` at candidate count `k`.
pub fn trial_rng(seed: u64, k: usize, trial: u64) -> ChaCha8Rng {
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&(k as u64).to_le_bytes());
    let mut rng = ChaCha8Rng::from_seed(key);
    rng.set_stream(trial);
    rng
}

/// `n` full rankings drawn independently and uniformly.
pub fn uniform_profile(k: usize, n: u64, seed: u64) -> Profile {
    uniform_profile_with(k, n, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn uniform_profile_with<R: Rng>(k: usize, n: u64, rng: &mut R) -> Profile {
    let mut counts: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
    let mut r: Vec<u32> = (1..=k as u32).collect();
    for _ in 0..n {
        r.shuffle(rng);
        *counts.entry(r.clone()).or_insert(0) += 1;
    }
    from_counts(k, counts)
}

fn from_counts(k: usize, counts: BTreeMap<Vec<u32>, u64>) -> Profile {
    let types = counts
        .into_iter()
        .map(|(r, count)| BallotType { ballot: Ballot::from_ids(&r).expect("valid ranking"), count })
        .collect();
    Profile::new(k, types).expect("valid profile")
}

/// Cuts every voter's ballot at an independent uniform length in `1..=k`.
pub fn voluntary_truncate(p: &Profile, seed: u64) -> Profile {
    voluntary_truncate_with(p, &mut ChaCha8Rng::seed_from_u64(seed))
}

pub fn voluntary_truncate_with<R: Rng>(p: &Profile, rng: &mut R) -> Profile {
    let k = p.k();
    let mut counts: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
    for t in p.types() {
        for _ in 0..t.count {
            let len = rng.random_range(1..=k.max(1));
            let r: Vec<u32> = t.ballot.prefix(len).ranking().iter().map(|c| c.0).collect();
            *counts.entry(r).or_insert(0) += 1;
        }
    }
    from_counts(k, counts)
}

/// Cuts each ranking of a weighted profile at an independent uniform
/// length in `1..=k`.
pub fn voluntary_truncate_weighted<R: Rng>(p: &WeightedProfile, rng: &mut R) -> WeightedProfile {
    let k = p.k();
    let types = p.types().iter().map(|(b, w)| (b.prefix(rng.random_range(1..=k.max(1))), w.clone())).collect();
    WeightedProfile::new(k, types).expect("prefixes of valid ballots")
}

/// `k` distinct positions `m / 2^53` with `m` uniform.
pub fn random_positions<R: Rng>(k: usize, rng: &mut R) -> EuclideanSpec {
    let denom = BigInt::from(1u64 << 53);
    let mut ms: Vec<u64> = Vec::with_capacity(k);
    while ms.len() < k {
        let m = rng.random_range(0..(1u64 << 53));
        if !ms.contains(&m) {
            ms.push(m);
        }
    }
    let pos = ms.into_iter().map(|m| BigRational::new(BigInt::from(m), denom.clone())).collect();
    EuclideanSpec::new(pos).expect("distinct positions in [0, 1)")
}

/// One simulated profile: winners at `h = 1..k-1`, the full-length winner,
/// and whether any run hit an elimination tie.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrialOutcome {
    pub winners: Vec<CandidateId>,
    pub full: CandidateId,
    pub elim_tie: bool,
}

impl TrialOutcome {
    pub fn distinct(&self) -> usize {
        let mut w = self.winners.clone();
        w.sort();
        w.dedup();
        w.len()
    }
}

fn run_lengths(
    k: usize,
    mut winner: impl FnMut(usize) -> Result<(CandidateId, bool), IrvError>,
) -> Result<TrialOutcome, IrvError> {
    let mut winners = Vec::with_capacity(k - 1);
    let mut elim_tie = false;
    for h in 1..k {
        let (w, t) = winner(h)?;
        winners.push(w);
        elim_tie |= t;
    }
    let (full, t) = winner(k)?;
    Ok(TrialOutcome { winners, full, elim_tie: elim_tie || t })
}

/// Simulates one trial of `cfg` at candidate count `k`.
pub fn simulate_trial(cfg: &SimConfig, k: usize, trial: u64) -> Result<TrialOutcome, IrvError> {
    let mut rng = trial_rng(cfg.seed, k, trial);
    let policy = TieBreakPolicy::LexicographicMin;
    match cfg.preference_kind {
        PreferenceKind::UniformGeneral => {
            let mut p = uniform_profile_with(k, cfg.n_voters, &mut rng);
            if cfg.ballots == BallotKind::VoluntarilyTruncated {
                p = voluntary_truncate_with(&p, &mut rng);
            }
            let e = Electorate::from_profile(&p);
            run_lengths(k, |h| winner_and_tie(&e, h, &policy))
        }
        PreferenceKind::Euclidean1D => {
            let spec = random_positions(k, &mut rng);
            let mut p = euclidean_profile(&spec).expect("cells have positive width");
            if cfg.ballots == BallotKind::VoluntarilyTruncated {
                p = voluntary_truncate_weighted(&p, &mut rng);
            }
            let e = ScaledElectorate::from_weighted(&p);
            run_lengths(k, |h| e.winner(h, &policy))
        }
    }
}

/// All trials for one `k`, in trial order.
pub fn simulate_k(cfg: &SimConfig, k: usize) -> Result<Vec<TrialOutcome>, SimError> {
    cfg.validate()?;
    (0..cfg.trials).into_par_iter().map(|t| simulate_trial(cfg, k, t).map_err(SimError::from)).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HeatmapCell {
    pub k: usize,
    pub h: usize,
    pub matches: u64,
    pub trials: u64,
    pub probability: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HeatmapResult {
    pub cells: Vec<HeatmapCell>,
    /// Trials per `k` that met an elimination tie at some length.
    pub tie_trials: BTreeMap<usize, u64>,
}

impl HeatmapResult {
    pub fn get(&self, k: usize, h: usize) -> Option<&HeatmapCell> {
        self.cells.iter().find(|c| c.k == k && c.h == h)
    }
}

/// Fraction of trials in which the winner at length `h` equals the
/// full-length winner, for every `k` in range and `h = 1..k-1`.
pub fn heatmap(cfg: &SimConfig) -> Result<HeatmapResult, SimError> {
    cfg.validate()?;
    let mut cells = Vec::new();
    let mut tie_trials = BTreeMap::new();
    for k in cfg.k_range.clone() {
        let outcomes = simulate_k(cfg, k)?;
        tie_trials.insert(k, outcomes.iter().filter(|o| o.elim_tie).count() as u64);
        for h in 1..k {
            let matches = outcomes.iter().filter(|o| o.winners[h - 1] == o.full).count() as u64;
            cells.push(HeatmapCell {
                k,
                h,
                matches,
                trials: cfg.trials,
                probability: matches as f64 / cfg.trials as f64,
            });
        }
    }
    Ok(HeatmapResult { cells, tie_trials })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WinnerCountStats {
    pub k: usize,
    pub mean: f64,
    /// Population standard deviation.
    pub std: f64,
    pub max: usize,
    pub trials: u64,
    pub tie_trials: u64,
    pub kind: PreferenceKind,
    pub ballots: BallotKind,
}

/// Mean, spread and maximum of the number of distinct truncation winners
/// per `k`.
pub fn winner_count_stats(cfg: &SimConfig) -> Result<Vec<WinnerCountStats>, SimError> {
    cfg.validate()?;
    cfg.k_range
        .clone()
        .map(|k| {
            let outcomes = simulate_k(cfg, k)?;
            let counts: Vec<f64> = outcomes.iter().map(|o| o.distinct() as f64).collect();
            let n = counts.len() as f64;
            let mean = counts.iter().sum::<f64>() / n;
            let var = counts.iter().map(|c| (c - mean).powi(2)).sum::<f64>() / n;
            Ok(WinnerCountStats {
                k,
                mean,
                std: var.sqrt(),
                max: outcomes.iter().map(TrialOutcome::distinct).max().unwrap_or(0),
                trials: cfg.trials,
                tie_trials: outcomes.iter().filter(|o| o.elim_tie).count() as u64,
                kind: cfg.preference_kind,
                ballots: cfg.ballots,
            })
        })
        .collect()
}
