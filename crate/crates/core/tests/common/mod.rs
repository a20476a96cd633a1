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

//! A deliberately naive IRV counter used as an independent oracle.
#![allow(dead_code)]

use irvlab::{Profile, TieLevel};
use std::collections::BTreeSet;

/// `(count, ranking)` pairs with 1-based candidate numbers.
pub type Ballots = Vec<(u64, Vec<u32>)>;

pub fn ballots_of(p: &Profile) -> Ballots {
    p.types().iter().map(|t| (t.count, t.ballot.ranking().iter().map(|c| c.0).collect())).collect()
}

/// Tallies of standing candidates with every ballot cut to length `h`.
fn tallies(b: &Ballots, k: usize, h: usize, out: &[bool]) -> Vec<u64> {
    let mut t = vec![0u64; k + 1];
    for (n, r) in b {
        if let Some(&c) = r.iter().take(h).find(|&&c| !out[c as usize]) {
            t[c as usize] += n;
        }
    }
    t
}

#[derive(Clone, Copy, Debug, Default)]
pub struct PathFlags {
    pub tally_tie: bool,
    pub elim_tie: bool,
}

/// Every (winner, flags) reachable at length `h` over all tie-breaks,
/// without memoisation or shortcuts.
pub fn all_paths(b: &Ballots, k: usize, h: usize) -> Vec<(u32, PathFlags)> {
    let mut out = Vec::new();
    walk(b, k, h, &mut vec![false; k + 1], PathFlags::default(), &mut out);
    out
}

fn walk(b: &Ballots, k: usize, h: usize, dead: &mut Vec<bool>, f: PathFlags, out: &mut Vec<(u32, PathFlags)>) {
    let standing: Vec<usize> = (1..=k).filter(|&c| !dead[c]).collect();
    if standing.len() == 1 {
        out.push((standing[0] as u32, f));
        return;
    }
    let t = tallies(b, k, h, dead);
    let vals: Vec<u64> = standing.iter().map(|&c| t[c]).collect();
    let tally_tie = (0..vals.len()).any(|i| (i + 1..vals.len()).any(|j| vals[i] == vals[j]));
    let min = *vals.iter().min().unwrap();
    let losers: Vec<usize> = standing.iter().copied().filter(|&c| t[c] == min).collect();
    let f = PathFlags { tally_tie: f.tally_tie || tally_tie, elim_tie: f.elim_tie || losers.len() > 1 };
    for c in losers {
        dead[c] = true;
        walk(b, k, h, dead, f, out);
        dead[c] = false;
    }
}

/// Winner at length `h` when the lowest-numbered tied candidate goes out.
pub fn lexmin_winner(b: &Ballots, k: usize, h: usize) -> u32 {
    let mut dead = vec![false; k + 1];
    loop {
        let standing: Vec<usize> = (1..=k).filter(|&c| !dead[c]).collect();
        if standing.len() == 1 {
            return standing[0] as u32;
        }
        let t = tallies(b, k, h, &dead);
        let loser = *standing.iter().min_by_key(|&&c| (t[c], c)).unwrap();
        dead[loser] = true;
    }
}

pub fn lexmin_sequence(b: &Ballots, k: usize) -> Vec<u32> {
    (1..k).map(|h| lexmin_winner(b, k, h)).collect()
}

/// Tie class over lengths `1..k-1` by brute force.
pub fn oracle_class(b: &Ballots, k: usize) -> TieLevel {
    let (mut tally, mut elim, mut consequential) = (false, false, false);
    for h in 1..k {
        let paths = all_paths(b, k, h);
        let winners: BTreeSet<u32> = paths.iter().map(|p| p.0).collect();
        consequential |= winners.len() > 1;
        for (_, f) in &paths {
            tally |= f.tally_tie;
            elim |= f.elim_tie;
        }
    }
    match (consequential, elim, tally) {
        (true, _, _) => TieLevel::HasConsequentialTies,
        (false, true, _) => TieLevel::ConsequentialTieFree,
        (false, false, true) => TieLevel::EliminationTieFree,
        _ => TieLevel::TieFree,
    }
}

/// Random small profiles: `k` in `2..=k_max`, up to `max_types` ballot
/// lines with counts in `1..=max_count`, each a random prefix of a random
/// ranking.
pub fn profiles(
    k_max: usize,
    max_types: usize,
    max_count: u64,
) -> impl proptest::strategy::Strategy<Value = (usize, Ballots)> {
    use proptest::prelude::*;
    (2..=k_max).prop_flat_map(move |k| {
        let line = (1..=max_count, Just((1..=k as u32).collect::<Vec<_>>()).prop_shuffle(), 1..=k)
            .prop_map(|(n, r, len)| (n, r[..len].to_vec()));
        (Just(k), proptest::collection::vec(line, 1..=max_types))
    })
}

pub fn to_profile(k: usize, b: &Ballots) -> Profile {
    Profile::from_counts(k, b.iter().map(|(n, r)| (*n, &r[..]))).unwrap()
}
