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

use super::Axis;
use crate::profile::{Ballot, BallotType, CandidateId, Profile};
use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;
use std::collections::BTreeMap;

fn collect(k: usize, ballots: &[Ballot]) -> Profile {
    let mut counts: BTreeMap<&Ballot, u64> = BTreeMap::new();
    for b in ballots {
        *counts.entry(b).or_insert(0) += 1;
    }
    let types = counts.into_iter().map(|(b, count)| BallotType { ballot: b.clone(), count }).collect();
    Profile::new(k, types).expect("generated ballots are valid")
}

/// `n` ballots single-peaked on `axis`: each voter picks a uniform peak and
/// grows an interval around it, stepping left or right with equal
/// probability. With `partial`, each ballot stops at a uniform length.
pub fn random_single_peaked<R: Rng>(axis: &Axis, n: u64, partial: bool, rng: &mut R) -> Profile {
    let k = axis.0.len();
    let ballots: Vec<Ballot> = (0..n)
        .map(|_| {
            let len = if partial { rng.random_range(1..=k) } else { k };
            let peak = rng.random_range(0..k);
            let (mut lo, mut hi) = (peak, peak);
            let mut r = vec![axis.0[peak]];
            while r.len() < len {
                let left = lo > 0 && (hi + 1 == k || rng.random_bool(0.5));
                if left {
                    lo -= 1;
                    r.push(axis.0[lo]);
                } else {
                    hi += 1;
                    r.push(axis.0[hi]);
                }
            }
            Ballot::new(r).expect("distinct candidates")
        })
        .collect();
    collect(k, &ballots)
}

/// `n` ballots that are single-crossing in the returned order.
///
/// A chain of rankings is built from a random start by swapping adjacent
/// pairs that have not yet swapped, so each pair flips at most once along
/// the chain. Voters pick chain positions uniformly and are sorted by
/// position. With `partial`, each ballot stops at a uniform length.
pub fn random_single_crossing<R: Rng>(k: usize, n: u64, partial: bool, rng: &mut R) -> (Profile, Vec<Ballot>) {
    let mut current: Vec<u32> = (1..=k as u32).collect();
    current.shuffle(rng);
    let start_pos: Vec<usize> = {
        let mut p = vec![0; k];
        for (i, &c) in current.iter().enumerate() {
            p[c as usize - 1] = i;
        }
        p
    };
    let steps = rng.random_range(0..=k * (k - 1) / 2);
    let mut chain = vec![current.clone()];
    for _ in 0..steps {
        // Adjacent pairs still in their starting order.
        let open: Vec<usize> = (0..k.saturating_sub(1))
            .filter(|&i| start_pos[current[i] as usize - 1] < start_pos[current[i + 1] as usize - 1])
            .collect();
        let Some(&i) = open.choose(rng) else { break };
        current.swap(i, i + 1);
        chain.push(current.clone());
    }
    let mut picks: Vec<usize> = (0..n).map(|_| rng.random_range(0..chain.len())).collect();
    picks.sort_unstable();
    let ballots: Vec<Ballot> = picks
        .into_iter()
        .map(|i| {
            let len = if partial { rng.random_range(1..=k) } else { k };
            let ids: Vec<CandidateId> = chain[i][..len].iter().map(|&c| CandidateId(c)).collect();
            Ballot::new(ids).expect("distinct candidates")
        })
        .collect();
    (collect(k, &ballots), ballots)
}
