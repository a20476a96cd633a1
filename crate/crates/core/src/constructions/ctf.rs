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
use crate::profile::Profile;
use crate::ties::TieLevel;

/// A consequential-tie-free profile with the fewest possible voters whose
/// winner at each length `h` is `t.w[h-1]`.
///
/// Every candidate starts from `2(k-2)+1` first-place ballots; `w_1` gets
/// two more and candidates `2..k` one more. Ballots ranking `i` first list
/// `1..i-1` next, then at position `i+1` two each for `i+2..k` other than
/// `w_i`, one for `w_i` unless `w_i = i+1`, and one for `w_{i+1}`. Each
/// elimination then puts `w_{i+1}` one vote ahead of a tie for second and
/// `i+1` one vote behind it.
pub fn build_ctf(t: &TargetSequence) -> Result<Profile, ConstructionError> {
    if t.k < 3 {
        return Err(ConstructionError::Domain(format!("build_ctf needs k >= 3, got {}", t.k)));
    }
    t.check_feasible()?;
    let k = t.k as u32;
    let mut ballots = Ballots::default();
    if k == 3 {
        // Smallest case: 2, 3 and 4 first-place ballots.
        let w1 = t.at(1);
        let other = if w1 == 2 { 3 } else { 2 };
        ballots.add(vec![w1], 4);
        ballots.add(head(other), 3);
        if w1 == 2 {
            ballots.add(vec![1, 3], 2);
        } else {
            ballots.add(vec![1], 2);
        }
    } else {
        let base = 2 * (k as u64 - 2) + 1;
        for i in 1..=k {
            let total = base
                + if i == t.at(1) {
                    2
                } else if i != 1 {
                    1
                } else {
                    0
                };
            let mut used = 0;
            if i + 1 < k {
                let wi = t.at(i as usize);
                let next = t.at(i as usize + 1);
                let mut transfer = |c: u32, n: u64| {
                    let mut r = head(i);
                    r.push(c);
                    ballots.add(r, n);
                    used += n;
                };
                for l in (i + 2..=k).filter(|&l| l != wi) {
                    transfer(l, 2);
                }
                if wi != i + 1 {
                    transfer(wi, 1);
                }
                transfer(next, 1);
            }
            if used > total {
                return Err(ConstructionError::Verification(format!(
                    "candidate {i} needs {used} transfer ballots but has {total}"
                )));
            }
            ballots.add(head(i), total - used);
        }
    }
    let p = ballots.into_profile(t.k)?;
    let expected: Vec<u32> = t.w.iter().map(|c| c.0).collect();
    let n = voter_lower_bound(t.k, TieRegime::ConsequentialTieFree)?;
    verify(&p, &expected, TieLevel::ConsequentialTieFree, Some(n))?;
    Ok(p)
}
