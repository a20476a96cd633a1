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

use super::LpError;
use crate::profile::CandidateId;
use itertools::Itertools;
use serde::{Deserialize, Serialize};

/// Smallest and largest candidate counts the search supports.
pub const MIN_K: usize = 4;
pub const MAX_K: usize = 10;

/// Elimination orders at every ballot length: `rows[h-1][i-1]` is the
/// candidate eliminated in round `i` at length `h`. The one candidate
/// missing from a row wins at that length.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EliminationMatrix {
    pub k: usize,
    pub rows: Vec<Vec<CandidateId>>,
}

impl EliminationMatrix {
    pub fn row(&self, h: usize) -> &[CandidateId] {
        &self.rows[h - 1]
    }

    pub fn winner(&self, h: usize) -> CandidateId {
        let row = self.row(h);
        (1..=self.k as u32).map(CandidateId).find(|c| !row.contains(c)).expect("row has k-1 entries")
    }
}

fn check_k(k: usize) -> Result<(), LpError> {
    if !(MIN_K..=MAX_K).contains(&k) {
        return Err(LpError::UnsupportedK { k, min: MIN_K, max: MAX_K });
    }
    Ok(())
}

/// Every elimination matrix under which candidate `h + 1` wins at length
/// `h`, with candidates labelled in full-length elimination order.
///
/// At length `h` candidates `1..=h` go out first in order; the other
/// losers `h+2..=k` follow in any order. Matrices come out in
/// lexicographic order, so the first one has every free segment
/// ascending.
pub fn enumerate_elimination_matrices(k: usize) -> Result<impl Iterator<Item = EliminationMatrix>, LpError> {
    check_k(k)?;
    let per_row: Vec<Vec<Vec<CandidateId>>> = (1..k)
        .map(|h| {
            let fixed: Vec<u32> = (1..=h as u32).collect();
            let free: Vec<u32> = (h as u32 + 2..=k as u32).collect();
            let n = free.len();
            free.into_iter()
                .permutations(n)
                .map(|tail| fixed.iter().chain(&tail).map(|&c| CandidateId(c)).collect())
                .collect()
        })
        .collect();
    Ok(per_row.into_iter().multi_cartesian_product().map(move |rows| EliminationMatrix { k, rows }))
}

/// The first matrix in canonical order.
pub fn canonical_matrix(k: usize) -> Result<EliminationMatrix, LpError> {
    Ok(enumerate_elimination_matrices(k)?.next().expect("at least one matrix"))
}

/// Number of matrices [`enumerate_elimination_matrices`] yields.
pub fn count_elimination_matrices(k: usize) -> Result<u128, LpError> {
    check_k(k)?;
    Ok((1..k).map(|h| (1..=(k - h - 1) as u128).product::<u128>()).product())
}
