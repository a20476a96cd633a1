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

//! Linear-programming search for full-ballot profiles with `k - 1`
//! truncation winners.
//!
//! Fix an [`EliminationMatrix`]. Every full ranking `π` gets a count
//! variable `x_π`. At each length `h` and round `i` the ballots credited
//! to each standing candidate are known, so "the eliminated candidate
//! trails every survivor by at least `C`" is linear in `x`. Minimizing the
//! total count, rounding up and re-running IRV gives a candidate profile.

mod matrix;
mod simplex;

pub use matrix::{
    canonical_matrix, count_elimination_matrices, enumerate_elimination_matrices, EliminationMatrix, MAX_K, MIN_K,
};
pub use simplex::{Constraint, LinearProgram, LpSolution};

use crate::irv::{run_irv_truncated, TieBreakPolicy};
use crate::profile::{Ballot, BallotType, CandidateId, Profile};
use crate::ties::{classify_ties, TieLevel, DEFAULT_BRANCH_BUDGET};
use crate::truncation::num_truncation_winners;
use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use std::time::{Duration, Instant};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LpError {
    #[error("LP search supports {min} <= k <= {max}, got {k}")]
    UnsupportedK { k: usize, min: usize, max: usize },
    #[error("gap must be at least 1")]
    ZeroGap,
    #[error("no ranking is credited to candidate {candidate} at h = {h}, round {round}")]
    InfeasibleStructure { h: usize, round: usize, candidate: CandidateId },
    #[error("matrix is for k = {matrix}, instance asked for k = {k}")]
    MatrixMismatch { matrix: usize, k: usize },
}

/// One gap inequality: `C + Σ x[loser_set] <= Σ x[winner_set]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapConstraint {
    pub h: usize,
    pub round: usize,
    pub eliminated: CandidateId,
    pub survivor: CandidateId,
    pub loser_set: Vec<usize>,
    pub winner_set: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct LpInstance {
    pub k: usize,
    pub gap: u64,
    /// All full rankings in lexicographic order; variable `v` counts
    /// ballots with ranking `rankings[v]`.
    pub rankings: Vec<Vec<CandidateId>>,
    pub constraints: Vec<GapConstraint>,
}

impl LpInstance {
    pub fn num_variables(&self) -> usize {
        self.rankings.len()
    }

    /// Minimize the ballot total subject to the gap constraints.
    pub fn to_program(&self) -> LinearProgram {
        let one = BigRational::one();
        let constraints = self
            .constraints
            .iter()
            .map(|g| Constraint {
                coeffs: g
                    .winner_set
                    .iter()
                    .map(|&v| (v, one.clone()))
                    .chain(g.loser_set.iter().map(|&v| (v, -one.clone())))
                    .collect(),
                rhs: BigRational::from_integer(BigInt::from(self.gap)),
            })
            .collect();
        LinearProgram { num_vars: self.num_variables(), objective: vec![one; self.num_variables()], constraints }
    }

    /// Whether integer counts `x` satisfy every gap constraint.
    pub fn satisfied_by(&self, x: &[u64]) -> bool {
        self.constraints.iter().all(|g| {
            let sum = |s: &[usize]| s.iter().map(|&v| x[v] as u128).sum::<u128>();
            sum(&g.loser_set) + self.gap as u128 <= sum(&g.winner_set)
        })
    }
}

/// Builds the LP for `matrix` with elimination gap `gap`.
pub fn build_lp(matrix: &EliminationMatrix, k: usize, gap: u64) -> Result<LpInstance, LpError> {
    if gap == 0 {
        return Err(LpError::ZeroGap);
    }
    if matrix.k != k {
        return Err(LpError::MatrixMismatch { matrix: matrix.k, k });
    }
    if !(MIN_K..=MAX_K).contains(&k) {
        return Err(LpError::UnsupportedK { k, min: MIN_K, max: MAX_K });
    }
    let rankings: Vec<Vec<CandidateId>> =
        (1..=k as u32).permutations(k).map(|p| p.into_iter().map(CandidateId).collect()).collect();
    let mut constraints = Vec::new();
    let mut holder: Vec<Option<usize>> = vec![None; rankings.len()];
    for h in 1..k {
        let row = matrix.row(h);
        let mut out = vec![false; k];
        for (i, &loser) in row.iter().enumerate() {
            // Credit each ranking to its top surviving entry among the first h.
            for (v, r) in rankings.iter().enumerate() {
                holder[v] = r[..h].iter().find(|c| !out[c.index()]).map(|c| c.index());
            }
            let mut sets: Vec<Vec<usize>> = vec![Vec::new(); k];
            for (v, hold) in holder.iter().enumerate() {
                if let Some(c) = hold {
                    sets[*c].push(v);
                }
            }
            for j in (0..k).filter(|&j| !out[j] && j != loser.index()) {
                if sets[j].is_empty() {
                    return Err(LpError::InfeasibleStructure {
                        h,
                        round: i + 1,
                        candidate: CandidateId::from_index(j),
                    });
                }
                constraints.push(GapConstraint {
                    h,
                    round: i + 1,
                    eliminated: loser,
                    survivor: CandidateId::from_index(j),
                    loser_set: sets[loser.index()].clone(),
                    winner_set: sets[j].clone(),
                });
            }
            out[loser.index()] = true;
        }
    }
    Ok(LpInstance { k, gap, rankings, constraints })
}

/// An optimal point and its objective value.
pub type Optimum = (Vec<BigRational>, BigRational);

/// Exact optimum of an instance, or `None` if infeasible.
pub fn solve_lp(lp: &LpInstance) -> Option<Optimum> {
    match lp.to_program().solve() {
        LpSolution::Optimal { x, objective } => Some((x, objective)),
        LpSolution::Infeasible | LpSolution::Unbounded => None,
    }
}

/// Limits on a search; `None` means unlimited.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_attempts: Option<u64>,
    pub time_limit: Option<Duration>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchOptions {
    pub c_max: u64,
    /// Try every matrix even for `k >= 8`, where only the canonical one is
    /// tried by default.
    pub all_orders: bool,
    pub budget: SearchBudget,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { c_max: 64, all_orders: false, budget: SearchBudget::default() }
    }
}

#[derive(Clone, Debug)]
pub struct SearchResult {
    pub profile: Option<Profile>,
    /// `(matrix, C)` pairs attempted.
    pub eliminations_tried: u64,
    pub c_used: u64,
    pub lp_objective: Option<BigRational>,
    pub verified: bool,
    pub matrix_index: Option<usize>,
    pub matrix: Option<EliminationMatrix>,
}

impl SearchResult {
    fn empty(tried: u64) -> Self {
        SearchResult {
            profile: None,
            eliminations_tried: tried,
            c_used: 0,
            lp_objective: None,
            verified: false,
            matrix_index: None,
            matrix: None,
        }
    }
}

/// Tries `(matrix, C)` pairs with `C = 1, 2, 4, ...` up to `c_max`,
/// matrices in canonical order within each `C`, and returns the first
/// rounded solution that the engine confirms.
///
/// The LP is homogeneous in `(x, C)`, so each matrix is solved once at
/// `C = 1` and the optimum scaled for larger gaps.
pub fn search(k: usize, options: &SearchOptions) -> Result<SearchResult, LpError> {
    let count = count_elimination_matrices(k)?;
    let restricted = k >= 8 && !options.all_orders;
    let num_matrices = if restricted { 1 } else { count };
    let start = Instant::now();
    let mut tried = 0u64;
    // Per matrix: not yet solved, infeasible, or the optimum at C = 1.
    let mut cache: Vec<Option<Option<Optimum>>> = Vec::new();
    let mut gap = 1u64;
    while gap <= options.c_max {
        for (idx, m) in
            enumerate_elimination_matrices(k)?.take(num_matrices.min(usize::MAX as u128) as usize).enumerate()
        {
            let over_attempts = options.budget.max_attempts.is_some_and(|a| tried >= a);
            let over_time = options.budget.time_limit.is_some_and(|t| start.elapsed() >= t);
            if over_attempts || over_time {
                return Ok(SearchResult::empty(tried));
            }
            tried += 1;
            if cache.len() <= idx {
                cache.resize(idx + 1, None);
            }
            if cache[idx].is_none() {
                let lp = build_lp(&m, k, 1)?;
                cache[idx] = Some(solve_lp(&lp));
            }
            let Some(Some((x, objective))) = &cache[idx] else { continue };
            let scale = BigRational::from_integer(BigInt::from(gap));
            let counts: Vec<u64> =
                x.iter().map(|v| (v * &scale).ceil().to_integer().to_u64().unwrap_or(u64::MAX)).collect();
            let profile = assemble(k, &counts);
            if verify(&profile, &m) {
                log::info!("k = {k}: matrix {idx} verified at C = {gap}");
                return Ok(SearchResult {
                    profile: Some(profile),
                    eliminations_tried: tried,
                    c_used: gap,
                    lp_objective: Some(objective * scale),
                    verified: true,
                    matrix_index: Some(idx),
                    matrix: Some(m),
                });
            }
            log::debug!("k = {k}: matrix {idx} failed verification at C = {gap}");
        }
        gap = gap.saturating_mul(2);
    }
    Ok(SearchResult::empty(tried))
}

fn assemble(k: usize, counts: &[u64]) -> Profile {
    let types = (1..=k as u32)
        .permutations(k)
        .zip(counts)
        .filter(|(_, &n)| n > 0)
        .map(|(r, &count)| BallotType { ballot: Ballot::from_ids(&r).expect("permutation"), count })
        .collect();
    Profile::new(k, types).expect("valid full rankings")
}

/// The rounded profile reproduces every row of `m` without elimination
/// ties and has `k - 1` truncation winners.
pub fn verify(p: &Profile, m: &EliminationMatrix) -> bool {
    if p.total_voters() == 0 || p.min_ballot_len() != m.k {
        return false;
    }
    let policy = TieBreakPolicy::LexicographicMin;
    for h in 1..m.k {
        match run_irv_truncated(p, h, &policy) {
            Ok(t) if !t.any_elim_tie && t.elimination_order == m.row(h) => {}
            _ => return false,
        }
    }
    classify_ties(p, DEFAULT_BRANCH_BUDGET).value.at_least(TieLevel::EliminationTieFree)
        && num_truncation_winners(p, &policy).is_ok_and(|n| n == m.k - 1)
}
