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

//! Instant-runoff voting under restricted ballot lengths.
//!
//! The crate tabulates IRV with explicit tie handling, measures how the
//! winner changes as ballots are cut to their first `h` entries, builds
//! profiles that realize prescribed winner sequences, searches for
//! full-ballot profiles with a linear program, and runs the simulations and
//! real-data audits built on top of those pieces.

pub mod constructions;
pub mod irv;
pub mod lp;
pub mod preflib;
pub mod profile;
pub mod restrictions;
pub mod sim;
pub mod ties;
pub mod truncation;

pub use irv::{run_irv, run_irv_truncated, run_irv_weighted, EliminationTrace, IrvError, RoundRecord, TieBreakPolicy};
pub use profile::{
    normalize, total_voters, truncate_profile, Ballot, BallotType, CandidateId, Profile, ProfileError, WeightedProfile,
};
pub use ties::{
    classify_ties, classify_ties_for_lengths, relabel_by_elimination, TieClass, TieLevel, DEFAULT_BRANCH_BUDGET,
};
pub use truncation::{num_truncation_winners, resample, winner_sequence, ResampleReport, WinnerSequence};
