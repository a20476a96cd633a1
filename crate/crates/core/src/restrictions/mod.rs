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

//! Single-peaked, single-crossing and 1-Euclidean preference restrictions.

mod euclidean;
mod generators;

pub use euclidean::{euclidean_cells, euclidean_profile, parse_rational, EuclideanCell, EuclideanSpec};

pub use generators::{random_single_crossing, random_single_peaked};

use crate::profile::{Ballot, CandidateId, Profile};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default candidate limit for [`find_axis`].
pub const DEFAULT_AXIS_LIMIT: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RestrictionError {
    #[error("axis must list each of the {k} candidates exactly once")]
    AxisMismatch { k: usize },
    #[error("ballot order must be a permutation of the {n} ballots")]
    OrderMismatch { n: usize },
    #[error("axis search is limited to {limit} candidates, profile has {k}")]
    TooManyCandidates { k: usize, limit: usize },
    #[error("invalid position {0:?}")]
    BadPosition(String),
    #[error("candidate positions must be distinct; {0} repeats")]
    DuplicatePosition(String),
    #[error("need at least one candidate position")]
    NoPositions,
}

/// A left-to-right ordering of all candidates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Axis(pub Vec<CandidateId>);

impl Axis {
    pub fn new(order: Vec<CandidateId>, k: usize) -> Result<Self, RestrictionError> {
        let a = Axis(order);
        a.positions(k)?;
        Ok(a)
    }

    /// Position of each candidate (by index) on the axis.
    fn positions(&self, k: usize) -> Result<Vec<usize>, RestrictionError> {
        let err = RestrictionError::AxisMismatch { k };
        if self.0.len() != k {
            return Err(err);
        }
        let mut pos = vec![usize::MAX; k];
        for (i, c) in self.0.iter().enumerate() {
            match pos.get_mut(c.index()) {
                Some(slot) if *slot == usize::MAX => *slot = i,
                _ => return Err(err),
            }
        }
        Ok(pos)
    }
}

/// Whether every prefix of `ballot` occupies a contiguous stretch of the
/// axis. Equivalent to: no ranked candidate sits above a candidate lying
/// between it and the top choice, with unranked candidates counting as
/// ranked last.
fn ballot_single_peaked(ballot: &Ballot, pos: &[usize]) -> bool {
    let top = pos[ballot.first().index()];
    let (mut lo, mut hi) = (top, top);
    for c in &ballot.ranking()[1..] {
        let p = pos[c.index()];
        if p + 1 == lo {
            lo = p;
        } else if p == hi + 1 {
            hi = p;
        } else {
            return false;
        }
    }
    true
}

pub fn is_single_peaked_on_axis(p: &Profile, axis: &Axis) -> Result<bool, RestrictionError> {
    let pos = axis.positions(p.k())?;
    Ok(p.types().iter().all(|t| ballot_single_peaked(&t.ballot, &pos)))
}

/// Finds an axis on which `p` is single-peaked by depth-first search over
/// axes, pruning as soon as a placed prefix already breaks some ballot.
/// An axis and its reverse are equivalent, so only axes whose first
/// candidate has a lower index than the last are returned.
pub fn find_axis(p: &Profile, k_limit: usize) -> Result<Option<Axis>, RestrictionError> {
    let k = p.k();
    if k > k_limit {
        return Err(RestrictionError::TooManyCandidates { k, limit: k_limit });
    }
    if k == 0 {
        return Ok(Some(Axis(Vec::new())));
    }
    let ballots: Vec<&Ballot> = p.types().iter().map(|t| &t.ballot).collect();
    let mut order = Vec::with_capacity(k);
    let mut used = vec![false; k];
    Ok(extend_axis(&ballots, k, &mut order, &mut used)
        .map(|o| Axis(o.into_iter().map(CandidateId::from_index).collect())))
}

fn extend_axis(ballots: &[&Ballot], k: usize, order: &mut Vec<usize>, used: &mut [bool]) -> Option<Vec<usize>> {
    if order.len() == k {
        return (order[0] <= order[k - 1]).then(|| order.clone());
    }
    for c in 0..k {
        if used[c] {
            continue;
        }
        order.push(c);
        used[c] = true;
        if prefix_consistent(ballots, order, used) {
            if let Some(found) = extend_axis(ballots, k, order, used) {
                return Some(found);
            }
        }
        used[c] = false;
        order.pop();
    }
    None
}

/// Checks each ballot against the partial axis. For a ballot whose
/// candidates are all placed, the full test applies. Otherwise the placed
/// candidates of any prefix must still be contiguous and, unless the
/// prefix extends past the placed region, must reach its right end.
fn prefix_consistent(ballots: &[&Ballot], order: &[usize], used: &[bool]) -> bool {
    let mut pos = vec![usize::MAX; used.len()];
    for (i, &c) in order.iter().enumerate() {
        pos[c] = i;
    }
    let end = order.len();
    ballots.iter().all(|b| {
        // Walk the ballot; placed candidates must form a growing interval
        // among placed positions for as long as no unplaced candidate has
        // appeared, and after that may only extend to the right end.
        let mut lo = usize::MAX;
        let mut hi = 0;
        let mut count = 0;
        let mut seen_unplaced = false;
        for c in b.ranking() {
            let p = pos[c.index()];
            if p == usize::MAX {
                if count > 0 && hi + 1 != end {
                    // The interval would have to cross a placed candidate
                    // ranked later or not at all.
                    return false;
                }
                seen_unplaced = true;
                continue;
            }
            if count == 0 {
                if seen_unplaced {
                    // Top region lies right of the placed prefix, so placed
                    // candidates join from the right end leftwards.
                    if p + 1 != end {
                        return false;
                    }
                }
                lo = p;
                hi = p;
            } else if p + 1 == lo {
                lo = p;
            } else if p == hi + 1 && !seen_unplaced {
                hi = p;
            } else {
                return false;
            }
            count += 1;
        }
        true
    })
}

/// Whether, in the given order of the expanded ballots, the ballots that
/// rank `i` above `j` are contiguous for every pair. A ballot ranks a
/// listed candidate above an unlisted one; ballots listing neither are
/// skipped for that pair.
pub fn is_single_crossing_in_order(p: &Profile, order: &[usize]) -> Result<bool, RestrictionError> {
    let ballots: Vec<&Ballot> = p.expanded().collect();
    let n = ballots.len();
    let mut seen = vec![false; n];
    if order.len() != n || order.iter().any(|&i| i >= n || std::mem::replace(&mut seen[i], true)) {
        return Err(RestrictionError::OrderMismatch { n });
    }
    let ordered: Vec<&Ballot> = order.iter().map(|&i| ballots[i]).collect();
    Ok(single_crossing(p.k(), &ordered))
}

/// Single-crossing test for ballots already in order.
pub fn is_single_crossing_sequence(k: usize, ballots: &[Ballot]) -> bool {
    single_crossing(k, &ballots.iter().collect::<Vec<_>>())
}

pub(crate) fn single_crossing(k: usize, ordered: &[&Ballot]) -> bool {
    let ranks: Vec<Vec<usize>> = ordered
        .iter()
        .map(|b| {
            let mut r = vec![usize::MAX; k];
            for (pos, c) in b.ranking().iter().enumerate() {
                r[c.index()] = pos;
            }
            r
        })
        .collect();
    for i in 0..k {
        for j in i + 1..k {
            // Along the order, the comparison may switch at most once.
            let mut last: Option<bool> = None;
            let mut switches = 0;
            for r in &ranks {
                if r[i] == usize::MAX && r[j] == usize::MAX {
                    continue;
                }
                let above = r[i] < r[j];
                if last.is_some_and(|l| l != above) {
                    switches += 1;
                }
                last = Some(above);
            }
            if switches > 1 {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    fn axis(ids: &[u32]) -> Axis {
        Axis(ids.iter().map(|&c| CandidateId(c)).collect())
    }

    fn brute_single_peaked(p: &Profile, a: &Axis) -> bool {
        let pos = a.positions(p.k()).unwrap();
        p.types().iter().all(|t| {
            let r = t.ballot.ranking();
            let rank = |c: usize| r.iter().position(|x| x.index() == c).unwrap_or(usize::MAX);
            let top = pos[r[0].index()];
            r.iter().all(|j| {
                let pj = pos[j.index()];
                let (a, b) = if pj < top { (pj, top) } else { (top, pj) };
                (a + 1..b).all(|q| rank(a_at(&pos, q)) < rank(j.index()))
            })
        })
    }

    fn a_at(pos: &[usize], q: usize) -> usize {
        pos.iter().position(|&p| p == q).unwrap()
    }

    #[test]
    fn definition_examples() {
        let p = Profile::from_counts(3, [(1, &[1, 2][..])]).unwrap();
        assert!(is_single_peaked_on_axis(&p, &axis(&[1, 2, 3])).unwrap());
        // Skipping over 2 ranks 3 above it.
        let p = Profile::from_counts(3, [(1, &[1, 3][..])]).unwrap();
        assert!(!is_single_peaked_on_axis(&p, &axis(&[1, 2, 3])).unwrap());
        let p = Profile::from_counts(3, [(1, &[3, 1][..])]).unwrap();
        assert!(!is_single_peaked_on_axis(&p, &axis(&[1, 2, 3])).unwrap());
        let p = Profile::from_counts(3, [(1, &[3][..]), (2, &[1][..])]).unwrap();
        for a in (1..=3).permutations(3) {
            assert!(is_single_peaked_on_axis(&p, &axis(&a)).unwrap());
        }
        assert!(is_single_peaked_on_axis(&p, &axis(&[1, 2])).is_err());
    }

    #[test]
    fn matches_brute_force_definition() {
        let rankings: Vec<Vec<u32>> = (1..=4u32).flat_map(|len| (1..=4u32).permutations(len as usize)).collect();
        for r in &rankings {
            let p = Profile::from_counts(4, [(1, &r[..])]).unwrap();
            for a in (1..=4).permutations(4) {
                let a = axis(&a);
                assert_eq!(is_single_peaked_on_axis(&p, &a).unwrap(), brute_single_peaked(&p, &a), "{r:?} on {a:?}");
            }
        }
    }

    #[test]
    fn find_axis_agrees_with_exhaustive_search() {
        let rankings: Vec<Vec<u32>> = (1..=4u32).flat_map(|len| (1..=4u32).permutations(len as usize)).collect();
        // Pairs of ballots cover enough structure to exercise the pruning.
        for (x, y) in rankings.iter().tuple_combinations() {
            let p = Profile::from_counts(4, [(1, &x[..]), (1, &y[..])]).unwrap();
            let exists = (1..=4).permutations(4).any(|a| is_single_peaked_on_axis(&p, &axis(&a)).unwrap());
            let found = find_axis(&p, DEFAULT_AXIS_LIMIT).unwrap();
            assert_eq!(found.is_some(), exists, "{x:?} {y:?}");
            if let Some(a) = found {
                assert!(is_single_peaked_on_axis(&p, &a).unwrap());
            }
        }
    }

    #[test]
    fn cyclic_profile_has_no_axis() {
        let p = Profile::from_counts(3, [(1, &[1, 2, 3][..]), (1, &[2, 3, 1][..]), (1, &[3, 1, 2][..])]).unwrap();
        assert_eq!(find_axis(&p, DEFAULT_AXIS_LIMIT).unwrap(), None);
        let q = Profile::from_counts(3, [(1, &[1, 2][..]), (1, &[2, 3][..]), (1, &[3, 1][..])]).unwrap();
        let exists = (1..=3).permutations(3).any(|a| is_single_peaked_on_axis(&q, &axis(&a)).unwrap());
        assert_eq!(find_axis(&q, DEFAULT_AXIS_LIMIT).unwrap().is_some(), exists);
    }

    #[test]
    fn axis_search_limit() {
        let p = Profile::from_counts(11, [(1, &[1][..])]).unwrap();
        assert_eq!(find_axis(&p, DEFAULT_AXIS_LIMIT), Err(RestrictionError::TooManyCandidates { k: 11, limit: 10 }));
    }

    #[test]
    fn single_crossing_examples() {
        let p = Profile::from_counts(3, [(1, &[1, 2, 3][..])]).unwrap();
        assert!(is_single_crossing_in_order(&p, &[0]).unwrap());
        let p = Profile::from_counts(3, [(1, &[1, 2, 3][..]), (1, &[3, 2, 1][..])]).unwrap();
        assert!(is_single_crossing_in_order(&p, &[0, 1]).unwrap());
        assert!(is_single_crossing_in_order(&p, &[1, 0]).unwrap());
        assert!(is_single_crossing_in_order(&p, &[0, 0]).is_err());

        let b = |r: &[u32]| Ballot::from_ids(r).unwrap();
        let (x, y, z) = (b(&[1, 2, 3]), b(&[2, 3, 1]), b(&[1, 3, 2]));
        assert!(!single_crossing(3, &[&x, &y, &z]));
    }
}
