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

use super::{verify, Ballots, ConstructionError};
use crate::profile::Profile;
use crate::ties::TieLevel;

/// A tie-free profile where candidate `h` wins at every length
/// `h = 1..k-1`, using only `3k - 4` distinct ballots: `k - 2` for candidate `k` and two
/// for each other candidate.
///
/// Here candidate `k` is eliminated first at every length. Candidate `k-1`
/// trails `2` by one vote, overtakes each `i` in turn as `i - 1`'s two long
/// ballots reach it, and once it falls at length `h` its `2k` long ballots
/// land on `h`.
pub fn build_k_types(k: usize) -> Result<Profile, ConstructionError> {
    if k <= 3 {
        return Err(ConstructionError::Domain(format!("build_k_types needs k > 3, got {k}")));
    }
    let kk = k as u32;
    let x = (2 * k as u64 - 4) * (k as u64 - 2);
    let mut ballots = Ballots::default();

    // Candidate k: 2k - 4 ballots to each of 2..k-1, which uses all x.
    for c in 2..kk {
        ballots.add(vec![kk, c], 2 * k as u64 - 4);
    }
    // Candidate k-1: 2k long ballots through 2..k-2.
    ballots.add((std::iter::once(kk - 1)).chain(2..kk - 1).collect(), 2 * k as u64);
    ballots.add(vec![kk - 1], x + 3 - 2 * k as u64);
    // Candidates 1..k-2: two ballots (i, k, 1, ..., i-1, k-1).
    for i in 1..kk - 1 {
        let first = if i == 1 { x + 2 * (k as u64 - 1) } else { x + 2 * i as u64 };
        let mut long = vec![i, kk];
        long.extend(1..i);
        long.push(kk - 1);
        ballots.add(long, 2);
        ballots.add(vec![i], first - 2);
    }

    let p = ballots.into_profile(k)?;
    if p.types().len() != 3 * k - 4 {
        return Err(ConstructionError::Verification(format!("{} ballot types, wanted {}", p.types().len(), 3 * k - 4)));
    }
    let expected: Vec<u32> = (1..kk).collect();
    verify(&p, &expected, TieLevel::TieFree, None)?;
    Ok(p)
}
