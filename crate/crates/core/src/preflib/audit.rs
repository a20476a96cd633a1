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

use super::Election;
use crate::irv::TieBreakPolicy;
use crate::truncation::AnalysisError;
use crate::{winner_sequence, CandidateId};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// `(family, elections, k range, ballot length range, ballot count range)`.
pub type ReferenceFamily = (&'static str, usize, (usize, usize), (usize, usize), (u64, u64));

/// Reference per-family figures for the IRV elections on PrefLib.
pub const REFERENCE_FAMILIES: [ReferenceFamily; 15] = [
    ("apa", 12, (5, 5), (5, 5), (13318, 20239)),
    ("aspen", 2, (5, 11), (4, 9), (2468, 2520)),
    ("berkley", 1, (4, 4), (3, 3), (4171, 4171)),
    ("burlington", 2, (6, 6), (5, 5), (8974, 9756)),
    ("debian", 8, (4, 9), (4, 9), (143, 504)),
    ("ers", 87, (3, 29), (3, 29), (9, 3419)),
    ("glasgow", 21, (8, 13), (8, 13), (5199, 12744)),
    ("irish", 3, (9, 14), (9, 14), (29988, 64081)),
    ("minneapolis", 2, (7, 9), (3, 3), (32086, 36655)),
    ("oakland", 7, (4, 11), (3, 3), (11235, 143860)),
    ("pierce", 4, (4, 7), (3, 3), (39974, 298438)),
    ("sf", 14, (4, 25), (3, 3), (17675, 193854)),
    ("sl", 3, (4, 7), (3, 3), (22360, 25316)),
    ("takomapark", 1, (4, 4), (4, 4), (202, 202)),
    ("uklabor", 1, (5, 5), (5, 5), (266, 266)),
];

/// Reference corpus-level counts: elections, elections with exactly two
/// truncation winners, with three, and the split at ballot length 5.
pub const REFERENCE_ELECTIONS: usize = 168;
pub const REFERENCE_TWO_WINNERS: usize = 41;
pub const REFERENCE_THREE_WINNERS: usize = 1;
pub const REFERENCE_SHORT: (usize, usize) = (12, 85);
pub const REFERENCE_LONG: (usize, usize) = (29, 83);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub source_tag: String,
    pub elections: usize,
    pub k: (usize, usize),
    pub h: (usize, usize),
    pub ballots: (u64, u64),
}

fn widen<T: Ord + Copy>(r: &mut (T, T), v: T) {
    r.0 = r.0.min(v);
    r.1 = r.1.max(v);
}

/// Per-family election counts and ranges of `k`, ballot length and ballot
/// count, sorted by family.
pub fn summarize(elections: &[Election]) -> Vec<SummaryRow> {
    let mut rows: BTreeMap<&str, SummaryRow> = BTreeMap::new();
    for e in elections {
        let k = e.profile.k();
        let h = e.declared_ballot_length.unwrap_or(0);
        let n = e.declared_total();
        let row = rows.entry(&e.source_tag).or_insert_with(|| SummaryRow {
            source_tag: e.source_tag.clone(),
            elections: 0,
            k: (k, k),
            h: (h, h),
            ballots: (n, n),
        });
        row.elections += 1;
        widen(&mut row.k, k);
        widen(&mut row.h, h);
        widen(&mut row.ballots, n);
    }
    rows.into_values().collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditRow {
    pub name: String,
    pub source_tag: String,
    pub k: usize,
    pub h: usize,
    pub ballots: u64,
    /// Winner labels at lengths `1..=h`.
    pub winners: Vec<String>,
    pub distinct: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AuditSummary {
    pub elections: usize,
    /// Elections by number of distinct truncation winners.
    pub by_distinct: BTreeMap<usize, usize>,
    pub sensitive: usize,
    /// `(sensitive, total)` among elections with ballot length at most 5.
    pub short: (usize, usize),
    /// `(sensitive, total)` among elections with ballot length above 5.
    pub long: (usize, usize),
}

impl AuditSummary {
    pub fn sensitive_fraction(&self) -> f64 {
        if self.elections == 0 {
            0.0
        } else {
            self.sensitive as f64 / self.elections as f64
        }
    }
}

/// Runs each election at every length up to the one it used and tallies
/// how many distinct winners appear.
pub fn audit(elections: &[Election], policy: &TieBreakPolicy) -> Result<(Vec<AuditRow>, AuditSummary), AnalysisError> {
    let mut rows = Vec::with_capacity(elections.len());
    let mut s = AuditSummary::default();
    for e in elections {
        let p = &e.profile;
        let k = p.k();
        let h = e.declared_ballot_length.unwrap_or(k).clamp(1, k.max(1));
        let winners: Vec<CandidateId> = if k < 2 {
            vec![CandidateId(1)]
        } else {
            let seq = winner_sequence(p, policy)?;
            // Lengths past k - 1 repeat the full-length winner.
            (1..=h).map(|l| seq.winners[l.min(k - 1) - 1]).collect()
        };
        let mut distinct = winners.clone();
        distinct.sort();
        distinct.dedup();
        let row = AuditRow {
            name: e.name.clone(),
            source_tag: e.source_tag.clone(),
            k,
            h,
            ballots: e.declared_total(),
            winners: winners.iter().map(|&c| p.label(c)).collect(),
            distinct: distinct.len(),
        };
        s.elections += 1;
        *s.by_distinct.entry(row.distinct).or_insert(0) += 1;
        let sensitive = row.distinct > 1;
        s.sensitive += sensitive as usize;
        let bucket = if h <= 5 { &mut s.short } else { &mut s.long };
        bucket.0 += sensitive as usize;
        bucket.1 += 1;
        rows.push(row);
    }
    Ok((rows, s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::preflib::parse_election;

    fn election(text: &str, name: &str) -> Election {
        parse_election(text.as_bytes(), name).unwrap()
    }

    #[test]
    fn summary_ranges() {
        assert!(summarize(&[]).is_empty());
        let a = election("2\n1,A\n2,B\n3,3,2\n2,1,2\n1,2\n", "fam-1.soi");
        let b = election("3\n1,A\n2,B\n3,C\n4,4,1\n4,1\n", "fam-2.soi");
        let rows = summarize(std::slice::from_ref(&a));
        assert_eq!(rows[0].k, (2, 2));
        assert_eq!(rows[0].ballots, (3, 3));
        let rows = summarize(&[a, b]);
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].elections, 2);
        assert_eq!(rows[0].k, (2, 3));
        assert_eq!(rows[0].h, (1, 2));
        assert_eq!(rows[0].ballots, (3, 4));
    }

    #[test]
    fn audit_counts_sensitive_elections() {
        // Plurality winner A (5) loses once C's ballots move to B.
        let text = "3\n1,A\n2,B\n3,C\n12,12,3\n5,1\n4,2\n3,3,2\n";
        let e = election(text, "x-1.soi");
        let (rows, s) = audit(&[e], &TieBreakPolicy::LexicographicMin).unwrap();
        assert_eq!(rows[0].winners, vec!["A", "B"]);
        assert_eq!(s.sensitive, 1);
        assert_eq!(s.by_distinct[&2], 1);
        assert_eq!(s.short, (1, 1));
    }
}
