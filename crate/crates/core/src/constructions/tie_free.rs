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

use super::{head, verify, voter_lower_bound, Ballots, ConstructionError, TargetSequence, TieRegime};
use crate::profile::{CandidateId, Profile};
use crate::ties::TieLevel;
use serde::{Deserialize, Serialize};

/// Initial first-place order of a tie-free construction: the distinct
/// winners in order of first appearance, then every other candidate in
/// decreasing label order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FSequence {
    pub order: Vec<CandidateId>,
    /// Number of distinct winners at the front of `order`.
    pub winner_prefix_len: usize,
}

pub fn f_sequence(t: &TargetSequence) -> Result<FSequence, ConstructionError> {
    t.check_feasible()?;
    let mut seen = vec![false; t.k + 1];
    let mut out = Vec::with_capacity(t.k);
    for c in &t.w {
        if !std::mem::replace(&mut seen[c.0 as usize], true) {
            out.push(*c);
        }
    }
    let winner_prefix_len = out.len();
    for c in (1..=t.k as u32).rev() {
        if !seen[c as usize] {
            out.push(CandidateId(c));
        }
    }
    Ok(FSequence { order: out, winner_prefix_len })
}

/// A tie-free profile with the fewest possible voters whose winner at each
/// length `h` is `t.w[h-1]`.
///
/// Candidate `f_j` starts with `(k-2)(k-1) + k - j` first-place ballots, so
/// all adjacent gaps are one vote. At each elimination `i` the transfers to
/// position `i+1` re-sort the survivors so that `w_{i+1}` leads at length
/// `i+1` while `w_i` keeps its lead when ballots stop at position `i`.
pub fn build_tie_free(t: &TargetSequence) -> Result<Profile, ConstructionError> {
    if t.k < 3 {
        return Err(ConstructionError::Domain(format!("build_tie_free needs k >= 3, got {}", t.k)));
    }
    let f = f_sequence(t)?;
    let k = t.k as u32;
    let base = (k as i64 - 2) * (k as i64 - 1);
    // Tallies at full length, index by candidate label; `None` once eliminated.
    let mut tally: Vec<Option<i64>> = vec![None; t.k + 1];
    for (j, c) in f.order.iter().enumerate() {
        tally[c.0 as usize] = Some(base + k as i64 - (j as i64 + 1));
    }
    let initial: Vec<i64> = tally.iter().map(|x| x.unwrap_or(0)).collect();
    let mut ballots = Ballots::default();

    for i in 1..=k {
        let mut alloc: Vec<(u32, i64)> = Vec::new();
        if i + 1 < k {
            let wi = t.at(i as usize);
            let next = t.at(i as usize + 1);
            let t_of = |c: u32| tally[c as usize].expect("candidate still standing");
            let others: Vec<u32> = (i + 1..=k).filter(|&c| c != wi).collect();
            if wi == next {
                // Leader unchanged: nothing to transfer.
            } else if wi == i + 1 {
                // `w_i` goes out next anyway, so raise everyone else evenly.
                alloc.extend(others.iter().map(|&c| (c, (k - i) as i64)));
            } else if let Some(back) = t.w[i as usize + 1..].iter().position(|c| c.0 == wi) {
                // `w_i` wins again later: lift the run of winners before its
                // return to just above it, the rest stays below.
                let run = &t.w[i as usize..i as usize + 1 + back];
                let mut firsts: Vec<u32> = Vec::new();
                for c in run {
                    if !firsts.contains(&c.0) {
                        firsts.push(c.0);
                    }
                }
                let wj = *firsts.last().expect("run is non-empty");
                let gap = t_of(wi) - t_of(wj);
                for &c in &others {
                    alloc.push((c, if t_of(c) >= t_of(wj) { gap + 1 } else { gap }));
                }
            } else {
                // `w_i` never wins again: hand the lead to the best candidate
                // not among the remaining winners that sits below `w_i`.
                let later: Vec<u32> = t.w[i as usize..].iter().map(|c| c.0).collect();
                let j = (i + 1..wi).filter(|c| !later.contains(c)).max().ok_or_else(|| {
                    ConstructionError::Verification(format!("no pivot candidate below {wi} at step {i}"))
                })?;
                let gap = t_of(wi) - t_of(j);
                for &c in &others {
                    alloc.push((c, if t_of(c) > t_of(j) { gap } else { gap - 1 }));
                }
            }
        }
        let own = initial[i as usize];
        let mut used = 0;
        for &(c, n) in &alloc {
            if n < 0 {
                return Err(ConstructionError::Verification(format!("negative transfer {n} to {c} at step {i}")));
            }
            let mut r = head(i);
            r.push(c);
            ballots.add(r, n as u64);
            used += n;
            *tally[c as usize].as_mut().expect("recipient standing") += n;
        }
        if used > own {
            return Err(ConstructionError::Verification(format!(
                "candidate {i} needs {used} transfer ballots but has {own}"
            )));
        }
        ballots.add(head(i), (own - used) as u64);
        tally[i as usize] = None;
    }

    let p = ballots.into_profile(t.k)?;
    let expected: Vec<u32> = t.w.iter().map(|c| c.0).collect();
    let n = voter_lower_bound(t.k, TieRegime::TieFree)?;
    verify(&p, &expected, TieLevel::TieFree, Some(n))?;
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    #[test]
    fn f_sequence_example() {
        let ids = |k, w: &[u32]| {
            let f = f_sequence(&TargetSequence::new(k, w)).unwrap();
            (f.order.iter().map(|c| c.0).collect::<Vec<_>>(), f.winner_prefix_len)
        };
        assert_eq!(ids(5, &[4, 3, 4, 5]), (vec![4, 3, 5, 2, 1], 3));
        assert_eq!(ids(4, &[2, 3, 4]), (vec![2, 3, 4, 1], 3));
        assert_eq!(ids(4, &[4, 4, 4]), (vec![4, 3, 2, 1], 1));
        assert!(f_sequence(&TargetSequence::new(4, &[1, 3, 4])).is_err());
    }

    #[test]
    fn five_candidate_example() {
        let p = build_tie_free(&TargetSequence::new(5, &[4, 3, 4, 5])).unwrap();
        assert_eq!(p.total_voters(), 70);
        assert_eq!(build_tie_free(&TargetSequence::new(4, &[2, 3, 4])).unwrap().total_voters(), 30);
        assert_eq!(build_tie_free(&TargetSequence::new(3, &[2, 3])).unwrap().total_voters(), 9);
    }

    #[test]
    fn every_feasible_sequence_up_to_six() {
        for k in 3..=6usize {
            let choices = (1..k).map(|h| (h as u32 + 1)..=(k as u32));
            for w in choices.multi_cartesian_product() {
                let t = TargetSequence::new(k, &w);
                if let Err(e) = build_tie_free(&t) {
                    panic!("k = {k}, w = {w:?}: {e}");
                }
            }
        }
    }
}
