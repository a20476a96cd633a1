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

use super::RestrictionError;
use crate::profile::{Ballot, CandidateId, ProfileError, WeightedProfile};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::str::FromStr;

/// Candidate positions on `[0, 1]`; candidate `i` sits at `positions[i-1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EuclideanSpec {
    positions: Vec<BigRational>,
}

impl EuclideanSpec {
    pub fn new(positions: Vec<BigRational>) -> Result<Self, RestrictionError> {
        if positions.is_empty() {
            return Err(RestrictionError::NoPositions);
        }
        for (i, x) in positions.iter().enumerate() {
            if x < &BigRational::zero() || x > &BigRational::one() {
                return Err(RestrictionError::BadPosition(x.to_string()));
            }
            if positions[..i].contains(x) {
                return Err(RestrictionError::DuplicatePosition(x.to_string()));
            }
        }
        Ok(EuclideanSpec { positions })
    }

    pub fn positions(&self) -> &[BigRational] {
        &self.positions
    }

    pub fn k(&self) -> usize {
        self.positions.len()
    }

    /// Candidates sorted left to right.
    pub fn axis(&self) -> super::Axis {
        let mut ids: Vec<usize> = (0..self.k()).collect();
        ids.sort_by(|&a, &b| self.positions[a].cmp(&self.positions[b]));
        super::Axis(ids.into_iter().map(CandidateId::from_index).collect())
    }

    /// Full ranking of a voter at `x` by distance, nearer first; equal
    /// distances fall back to candidate order.
    pub fn ranking_at(&self, x: &BigRational) -> Vec<CandidateId> {
        let mut ids: Vec<usize> = (0..self.k()).collect();
        ids.sort_by_cached_key(|&i| ((&self.positions[i] - x).abs(), i));
        ids.into_iter().map(CandidateId::from_index).collect()
    }
}

impl FromStr for EuclideanSpec {
    type Err = RestrictionError;

    /// Comma-separated rationals such as `0, 1/3, 0.75`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let positions = s.split(',').map(|t| parse_rational(t.trim())).collect::<Result<Vec<_>, _>>()?;
        EuclideanSpec::new(positions)
    }
}

/// Parses `p/q`, a decimal like `0.125`, or an integer, exactly.
pub fn parse_rational(s: &str) -> Result<BigRational, RestrictionError> {
    let bad = || RestrictionError::BadPosition(s.to_string());
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if (int.is_empty() && frac.is_empty())
        || !int.bytes().all(|b| b.is_ascii_digit())
        || !frac.bytes().all(|b| b.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    let n = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).map_err(|_| bad())?;
    let d = num_traits::pow(BigInt::from(10), frac.len());
    let r = BigRational::new(n, d);
    Ok(if neg { -r } else { r })
}

/// An open interval of voter positions sharing one ranking.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EuclideanCell {
    pub left: BigRational,
    pub right: BigRational,
    pub ballot: Ballot,
}

impl EuclideanCell {
    pub fn width(&self) -> BigRational {
        &self.right - &self.left
    }
}

/// Splits `[0, 1]` at every pairwise midpoint and ranks each open cell by
/// the distances from its centre. Cells come out left to right.
pub fn euclidean_cells(spec: &EuclideanSpec) -> Vec<EuclideanCell> {
    let two = BigRational::from_integer(BigInt::from(2));
    let mut cuts = vec![BigRational::zero(), BigRational::one()];
    let xs = spec.positions();
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            let m = (&xs[i] + &xs[j]) / &two;
            if m > BigRational::zero() && m < BigRational::one() {
                cuts.push(m);
            }
        }
    }
    cuts.sort();
    cuts.dedup();
    cuts.windows(2)
        .map(|w| {
            let centre = (&w[0] + &w[1]) / &two;
            let ballot = Ballot::new(spec.ranking_at(&centre)).expect("ranking is a permutation");
            EuclideanCell { left: w[0].clone(), right: w[1].clone(), ballot }
        })
        .collect()
}

/// The profile of a population spread uniformly over `[0, 1]`: each
/// ranking weighs the total length of the cells that produce it.
pub fn euclidean_profile(spec: &EuclideanSpec) -> Result<WeightedProfile, ProfileError> {
    let types = euclidean_cells(spec).into_iter().map(|c| {
        let w = c.width();
        (c.ballot, w)
    });
    WeightedProfile::new(spec.k(), types.collect())
}
