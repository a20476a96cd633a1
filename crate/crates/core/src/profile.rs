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

//! Candidates, ballots and count-compressed preference profiles.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// A candidate, numbered from 1 to `k` within its profile.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CandidateId(pub u32);

impl CandidateId {
    /// Builds a candidate from a zero-based index.
    pub const fn from_index(index: usize) -> Self {
        CandidateId(index as u32 + 1)
    }

    /// Zero-based index of the candidate.
    pub const fn index(self) -> usize {
        self.0 as usize - 1
    }
}

impl fmt::Display for CandidateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProfileError {
    #[error("ballot is empty")]
    EmptyBallot,
    #[error("candidate {0} appears more than once on a ballot")]
    DuplicateCandidate(CandidateId),
    #[error("candidate {candidate} is out of range for k = {k}")]
    CandidateOutOfRange { candidate: CandidateId, k: usize },
    #[error("ballot length {h} is outside 1..={k}")]
    InvalidLength { h: usize, k: usize },
    #[error("expected {expected} candidate labels, got {got}")]
    LabelCount { expected: usize, got: usize },
    #[error("ballot weight must be positive")]
    NonPositiveWeight,
}

/// A strict ranking over a subset of the candidates, most preferred first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<CandidateId>", into = "Vec<CandidateId>")]
pub struct Ballot(Vec<CandidateId>);

impl Ballot {
    pub fn new(ranking: Vec<CandidateId>) -> Result<Self, ProfileError> {
        if ranking.is_empty() {
            return Err(ProfileError::EmptyBallot);
        }
        for (i, c) in ranking.iter().enumerate() {
            if c.0 == 0 {
                return Err(ProfileError::CandidateOutOfRange { candidate: *c, k: 0 });
            }
            if ranking[..i].contains(c) {
                return Err(ProfileError::DuplicateCandidate(*c));
            }
        }
        Ok(Ballot(ranking))
    }

    /// Shorthand for tests and constructions working on raw labels.
    pub fn from_ids(ids: &[u32]) -> Result<Self, ProfileError> {
        Ballot::new(ids.iter().map(|&i| CandidateId(i)).collect())
    }

    pub fn ranking(&self) -> &[CandidateId] {
        &self.0
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn first(&self) -> CandidateId {
        self.0[0]
    }

    /// The first `min(h, len)` entries. `h` must be at least 1.
    pub fn prefix(&self, h: usize) -> Ballot {
        debug_assert!(h >= 1);
        Ballot(self.0[..h.min(self.0.len())].to_vec())
    }
}

impl TryFrom<Vec<CandidateId>> for Ballot {
    type Error = ProfileError;
    fn try_from(v: Vec<CandidateId>) -> Result<Self, Self::Error> {
        Ballot::new(v)
    }
}

impl From<Ballot> for Vec<CandidateId> {
    fn from(b: Ballot) -> Self {
        b.0
    }
}

impl fmt::Display for Ballot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

/// All voters who cast the same ballot.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallotType {
    pub ballot: Ballot,
    pub count: u64,
}

/// A multiset of ballots over `k` candidates, stored as ballot types.
///
/// Profiles built through [`Profile::new`] are normalized: types are
/// distinct, have positive counts, and are sorted by ranking.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Profile {
    k: usize,
    types: Vec<BallotType>,
    labels: Option<Vec<String>>,
}

impl Profile {
    pub fn new(k: usize, types: Vec<BallotType>) -> Result<Self, ProfileError> {
        normalize(k, types)
    }

    /// Builds a profile from `(count, ranking)` pairs.
    pub fn from_counts<'a>(
        k: usize,
        entries: impl IntoIterator<Item = (u64, &'a [u32])>,
    ) -> Result<Self, ProfileError> {
        let types = entries
            .into_iter()
            .map(|(count, ids)| Ok(BallotType { ballot: Ballot::from_ids(ids)?, count }))
            .collect::<Result<Vec<_>, ProfileError>>()?;
        Profile::new(k, types)
    }

    pub fn empty(k: usize) -> Self {
        Profile { k, types: Vec::new(), labels: None }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, ProfileError> {
        if labels.len() != self.k {
            return Err(ProfileError::LabelCount { expected: self.k, got: labels.len() });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn types(&self) -> &[BallotType] {
        &self.types
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of a candidate: its label if present, else its number.
    pub fn label(&self, c: CandidateId) -> String {
        match &self.labels {
            Some(l) => l[c.index()].clone(),
            None => c.to_string(),
        }
    }

    /// Looks a candidate up by label, falling back to its number.
    pub fn candidate_by_label(&self, name: &str) -> Option<CandidateId> {
        if let Some(labels) = &self.labels {
            if let Some(i) = labels.iter().position(|l| l == name) {
                return Some(CandidateId::from_index(i));
            }
        }
        name.parse::<u32>().ok().filter(|&i| i >= 1 && i as usize <= self.k).map(CandidateId)
    }

    pub fn total_voters(&self) -> u64 {
        total_voters(self)
    }

    pub fn max_ballot_len(&self) -> usize {
        self.types.iter().map(|t| t.ballot.len()).max().unwrap_or(0)
    }

    pub fn min_ballot_len(&self) -> usize {
        self.types.iter().map(|t| t.ballot.len()).min().unwrap_or(0)
    }

    pub fn truncate(&self, h: usize) -> Result<Profile, ProfileError> {
        truncate_profile(self, h)
    }

    /// Renames every candidate `c` to `mapping[c.index()]`.
    ///
    /// `mapping` must be a permutation of `1..=k`; labels follow their
    /// candidates.
    pub fn relabel(&self, mapping: &[CandidateId]) -> Result<Profile, ProfileError> {
        assert_eq!(mapping.len(), self.k, "mapping must cover every candidate");
        let types = self
            .types
            .iter()
            .map(|t| {
                let ranking = t.ballot.ranking().iter().map(|c| mapping[c.index()]).collect();
                Ok(BallotType { ballot: Ballot::new(ranking)?, count: t.count })
            })
            .collect::<Result<Vec<_>, ProfileError>>()?;
        let mut out = normalize(self.k, types)?;
        if let Some(labels) = &self.labels {
            let mut relabeled = vec![String::new(); self.k];
            for (old, new) in mapping.iter().enumerate() {
                relabeled[new.index()] = labels[old].clone();
            }
            out.labels = Some(relabeled);
        }
        Ok(out)
    }

    /// Every voter's ballot, expanded by count, in type order.
    pub fn expanded(&self) -> impl Iterator<Item = &Ballot> + '_ {
        self.types.iter().flat_map(|t| std::iter::repeat_n(&t.ballot, t.count as usize))
    }
}

/// Merges identical ballot types, drops zero counts and sorts by ranking.
pub fn normalize(k: usize, types: Vec<BallotType>) -> Result<Profile, ProfileError> {
    let mut merged: BTreeMap<Ballot, u64> = BTreeMap::new();
    for t in types {
        // Re-validate in case the ballot was assembled without `Ballot::new`.
        let ballot = Ballot::new(t.ballot.0)?;
        if let Some(c) = ballot.ranking().iter().find(|c| c.index() >= k) {
            return Err(ProfileError::CandidateOutOfRange { candidate: *c, k });
        }
        if t.count > 0 {
            *merged.entry(ballot).or_insert(0) += t.count;
        }
    }
    Ok(Profile {
        k,
        types: merged.into_iter().map(|(ballot, count)| BallotType { ballot, count }).collect(),
        labels: None,
    })
}

/// Replaces every ballot by its length-`h` prefix and re-normalizes.
pub fn truncate_profile(p: &Profile, h: usize) -> Result<Profile, ProfileError> {
    if h < 1 || h > p.k {
        return Err(ProfileError::InvalidLength { h, k: p.k });
    }
    let types = p.types.iter().map(|t| BallotType { ballot: t.ballot.prefix(h), count: t.count }).collect();
    let mut out = normalize(p.k, types)?;
    out.labels = p.labels.clone();
    Ok(out)
}

pub fn total_voters(p: &Profile) -> u64 {
    p.types.iter().map(|t| t.count).sum()
}

/// A profile whose ballot types carry exact rational weights, used for
/// infinite voter populations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedProfile {
    k: usize,
    types: Vec<(Ballot, BigRational)>,
}

impl WeightedProfile {
    pub fn new(k: usize, types: Vec<(Ballot, BigRational)>) -> Result<Self, ProfileError> {
        let mut merged: BTreeMap<Ballot, BigRational> = BTreeMap::new();
        for (ballot, w) in types {
            if let Some(c) = ballot.ranking().iter().find(|c| c.index() >= k) {
                return Err(ProfileError::CandidateOutOfRange { candidate: *c, k });
            }
            if w <= BigRational::zero() {
                return Err(ProfileError::NonPositiveWeight);
            }
            *merged.entry(ballot).or_insert_with(BigRational::zero) += w;
        }
        Ok(WeightedProfile { k, types: merged.into_iter().collect() })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn types(&self) -> &[(Ballot, BigRational)] {
        &self.types
    }

    pub fn total_weight(&self) -> BigRational {
        self.types.iter().fold(BigRational::zero(), |acc, (_, w)| acc + w)
    }

    pub fn is_normalized(&self) -> bool {
        self.total_weight().is_one()
    }

    pub fn truncate(&self, h: usize) -> Result<WeightedProfile, ProfileError> {
        if h < 1 || h > self.k {
            return Err(ProfileError::InvalidLength { h, k: self.k });
        }
        WeightedProfile::new(self.k, self.types.iter().map(|(b, w)| (b.prefix(h), w.clone())).collect())
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn worked_example() -> Profile {
        // A=1, B=2, C=3, D=4.
        Profile::from_counts(
            4,
            [
                (2, &[1, 4, 3, 2][..]),
                (5, &[1][..]),
                (6, &[2, 4, 1][..]),
                (6, &[3][..]),
                (3, &[4, 2][..]),
                (2, &[4, 3][..]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn worked_example_truncated_to_two() {
        let t = worked_example().truncate(2).unwrap();
        let expected = Profile::from_counts(
            4,
            [(2, &[1, 4][..]), (5, &[1][..]), (6, &[2, 4][..]), (6, &[3][..]), (3, &[4, 2][..]), (2, &[4, 3][..])],
        )
        .unwrap();
        assert_eq!(t, expected);
        assert_eq!(t.total_voters(), 24);
    }

    #[test]
    fn truncate_to_k_is_identity() {
        assert_eq!(worked_example().truncate(4).unwrap(), worked_example());
    }

    #[test]
    fn truncate_to_one() {
        let p = Profile::from_counts(3, [(3, &[1, 2, 3][..]), (2, &[2, 1, 3][..])]).unwrap();
        let q = Profile::from_counts(3, [(3, &[1][..]), (2, &[2][..])]).unwrap();
        assert_eq!(p.truncate(1).unwrap(), q);
    }

    #[test]
    fn truncate_rejects_bad_length() {
        assert_eq!(worked_example().truncate(0), Err(ProfileError::InvalidLength { h: 0, k: 4 }));
        assert_eq!(worked_example().truncate(5), Err(ProfileError::InvalidLength { h: 5, k: 4 }));
    }

    #[test]
    fn normalize_merges_drops_and_rejects() {
        let p = Profile::from_counts(2, [(1, &[1, 2][..]), (2, &[1, 2][..])]).unwrap();
        assert_eq!(p.types(), &[BallotType { ballot: Ballot::from_ids(&[1, 2]).unwrap(), count: 3 }]);
        let empty = Profile::from_counts(1, [(0, &[1][..])]).unwrap();
        assert!(empty.types().is_empty());
        assert_eq!(Profile::from_counts(2, [(1, &[1, 1][..])]), Err(ProfileError::DuplicateCandidate(CandidateId(1))));
    }

    #[test]
    fn out_of_range_and_empty_ballots_rejected() {
        assert!(matches!(Profile::from_counts(2, [(1, &[3][..])]), Err(ProfileError::CandidateOutOfRange { .. })));
        assert_eq!(Ballot::from_ids(&[]), Err(ProfileError::EmptyBallot));
    }

    #[test]
    fn voter_totals() {
        assert_eq!(worked_example().total_voters(), 24);
        assert_eq!(Profile::empty(3).total_voters(), 0);
        assert_eq!(Profile::from_counts(1, [(5, &[1][..])]).unwrap().total_voters(), 5);
    }

    #[test]
    fn relabel_moves_labels_with_candidates() {
        let p = Profile::from_counts(2, [(3, &[1][..]), (2, &[2, 1][..])])
            .unwrap()
            .with_labels(vec!["x".into(), "y".into()])
            .unwrap();
        let q = p.relabel(&[CandidateId(2), CandidateId(1)]).unwrap();
        assert_eq!(q.labels().unwrap(), &["y".to_string(), "x".to_string()]);
        assert_eq!(q.label(CandidateId(2)), "x");
        assert_eq!(q.types()[0].ballot, Ballot::from_ids(&[1, 2]).unwrap());
    }
}
