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
use crate::profile::{CandidateId, Profile};
use crate::restrictions::{is_single_peaked_on_axis, Axis};
use crate::ties::TieLevel;

/// A single-peaked consequential-tie-free profile with `κ(κ+1)/2`
/// candidates and `3κ(κ+1)/2` voters in which candidate `h` wins at length
/// `h` for `h = 1..κ`.
///
/// Candidates `1..κ` are the winners. Winner `i > 1` gets `i - 1` fillers,
/// numbered from `κ + 1` upward in axis order and placed between `i - 1`
/// and `i` on the axis. Each winner has `κ + 1` one-candidate ballots
/// (winner `1` one extra); the first filler of `i` has `i` ballots walking
/// right through its fillers to `i`.
pub fn build_single_peaked(kappa: usize) -> Result<(Profile, Axis), ConstructionError> {
    if kappa < 3 {
        return Err(ConstructionError::Domain(format!("build_single_peaked needs kappa >= 3, got {kappa}")));
    }
    let kp = kappa as u32;
    let k = kappa * (kappa + 1) / 2;
    let mut ballots = Ballots::default();
    let mut axis = vec![1u32];
    let mut next_filler = kp + 1;
    ballots.add(vec![1], kappa as u64 + 2);
    for i in 2..=kp {
        let fillers: Vec<u32> = (next_filler..next_filler + i - 1).collect();
        next_filler += i - 1;
        axis.extend(&fillers);
        axis.push(i);
        ballots.add(vec![i], kappa as u64 + 1);
        let mut walk = fillers.clone();
        walk.push(i);
        ballots.add(walk, i as u64);
    }

    let p = ballots.into_profile(k)?;
    let axis = Axis(axis.into_iter().map(CandidateId).collect());
    let fail = |m: String| Err(ConstructionError::Verification(m));
    if !is_single_peaked_on_axis(&p, &axis).map_err(|e| ConstructionError::Verification(e.to_string()))? {
        return fail("profile is not single-peaked on its axis".into());
    }
    let expected: Vec<u32> = (1..k as u32).map(|h| h.min(kp)).collect();
    verify(&p, &expected, TieLevel::ConsequentialTieFree, Some(3 * k as u64))?;
    Ok((p, axis))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::truncation::num_truncation_winners;
    use crate::TieBreakPolicy;

    #[test]
    fn sizes_and_winners() {
        for (kappa, k, n) in [(3, 6, 18), (4, 10, 30), (5, 15, 45)] {
            let (p, axis) = build_single_peaked(kappa).unwrap();
            assert_eq!(p.k(), k);
            assert_eq!(p.total_voters(), n);
            assert_eq!(axis.0.len(), k);
            assert_eq!(num_truncation_winners(&p, &TieBreakPolicy::LexicographicMin).unwrap(), kappa);
        }
    }

    #[test]
    fn axis_layout() {
        let (_, axis) = build_single_peaked(3).unwrap();
        let ids: Vec<u32> = axis.0.iter().map(|c| c.0).collect();
        assert_eq!(ids, vec![1, 4, 2, 5, 6, 3]);
    }

    #[test]
    fn rejects_small_kappa() {
        assert!(build_single_peaked(2).is_err());
    }
}
