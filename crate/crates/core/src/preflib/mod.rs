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

//! PrefLib election files: parsing (classic and 2023 layouts), emission in
//! the classic layout, corpus summaries and downloads.
//!
//! Ballot lines that place several candidates at one rank are not strict
//! orders. They are left out of the profile, counted, and kept verbatim so
//! that re-emitting an election preserves them.

mod audit;
mod fetch;

pub use audit::{
    audit, summarize, AuditRow, AuditSummary, SummaryRow, REFERENCE_ELECTIONS, REFERENCE_FAMILIES, REFERENCE_LONG,
    REFERENCE_SHORT, REFERENCE_THREE_WINNERS, REFERENCE_TWO_WINNERS,
};
pub use fetch::{fetch, read_manifest, FetchError, FetchReport};

use crate::profile::{Ballot, BallotType, CandidateId, Profile, ProfileError};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PreflibErrorKind {
    #[error("file is empty")]
    Empty,
    #[error("expected {0}")]
    Expected(&'static str),
    #[error("not an integer: {0:?}")]
    NotInteger(String),
    #[error("candidate {candidate} out of range 1..={k}")]
    CandidateOutOfRange { candidate: u64, k: usize },
    #[error("candidate {0} listed twice")]
    DuplicateCandidate(u64),
    #[error("malformed tie group")]
    BadTieGroup,
    #[error("declared {declared} voters but ballot lines sum to {found}")]
    TotalMismatch { declared: u64, found: u64 },
    #[error(transparent)]
    Profile(#[from] ProfileError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {kind}")]
pub struct PreflibError {
    pub line: usize,
    pub kind: PreflibErrorKind,
}

fn at(line: usize) -> impl Fn(PreflibErrorKind) -> PreflibError {
    move |kind| PreflibError { line, kind }
}

/// A ballot line that ranks several candidates equally somewhere.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TieLine {
    pub count: u64,
    /// The ranking as written, e.g. `{1,2},3`.
    pub ranking: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Election {
    pub profile: Profile,
    pub name: String,
    pub source_tag: String,
    pub omitted_tie_ballots: u64,
    /// Longest ranking in the file: the ballot length the election used.
    pub declared_ballot_length: Option<usize>,
    pub tie_lines: Vec<TieLine>,
}

impl Election {
    pub fn with_source_tag(mut self, tag: impl Into<String>) -> Self {
        self.source_tag = tag.into();
        self
    }

    /// Voters on all ballot lines, including omitted ones.
    pub fn declared_total(&self) -> u64 {
        self.profile.total_voters() + self.omitted_tie_ballots
    }
}

/// Dataset tag guessed from a file name: the leading numeric block of
/// `00005-00000001.soi` style names, otherwise the stem up to the first
/// `-` or `_`.
pub fn source_tag_for(name: &str) -> String {
    let base = name.rsplit(['/', '\\']).next().unwrap_or(name);
    let base = base.strip_prefix("ED-").unwrap_or(base);
    let stem = base.split('.').next().unwrap_or(base);
    stem.split(['-', '_']).next().unwrap_or(stem).to_string()
}

enum Rank {
    Single(u64),
    Group(Vec<u64>),
}

/// Splits `1,{2,3},4` into rank positions.
fn parse_ranking(text: &str) -> Result<Vec<Rank>, PreflibErrorKind> {
    let mut ranks = Vec::new();
    let mut rest = text.trim();
    while !rest.is_empty() {
        if let Some(inner) = rest.strip_prefix('{') {
            let end = inner.find('}').ok_or(PreflibErrorKind::BadTieGroup)?;
            let members = inner[..end]
                .split(',')
                .map(|t| t.trim())
                .filter(|t| !t.is_empty())
                .map(parse_int)
                .collect::<Result<Vec<_>, _>>()?;
            if !members.is_empty() {
                ranks.push(if members.len() == 1 { Rank::Single(members[0]) } else { Rank::Group(members) });
            }
            rest = inner[end + 1..].trim_start();
        } else {
            let end = rest.find(',').unwrap_or(rest.len());
            let token = rest[..end].trim();
            if token.contains('}') {
                return Err(PreflibErrorKind::BadTieGroup);
            }
            ranks.push(Rank::Single(parse_int(token)?));
            rest = &rest[end..];
        }
        rest = rest.trim_start();
        if let Some(r) = rest.strip_prefix(',') {
            rest = r.trim_start();
            if rest.is_empty() {
                return Err(PreflibErrorKind::Expected("candidate after ','"));
            }
        } else if !rest.is_empty() {
            return Err(PreflibErrorKind::Expected("',' between ranks"));
        }
    }
    Ok(ranks)
}

fn parse_int(s: &str) -> Result<u64, PreflibErrorKind> {
    s.trim().parse::<u64>().map_err(|_| PreflibErrorKind::NotInteger(s.trim().to_string()))
}

struct Builder {
    k: usize,
    types: Vec<BallotType>,
    ties: Vec<TieLine>,
    omitted: u64,
    longest: usize,
}

impl Builder {
    fn add(&mut self, count: u64, ranking: &str) -> Result<(), PreflibErrorKind> {
        let ranks = parse_ranking(ranking)?;
        let mut seen = vec![false; self.k];
        for r in &ranks {
            let members: &[u64] = match r {
                Rank::Single(c) => std::slice::from_ref(c),
                Rank::Group(g) => g,
            };
            for &c in members {
                if c == 0 || c as usize > self.k {
                    return Err(PreflibErrorKind::CandidateOutOfRange { candidate: c, k: self.k });
                }
                if std::mem::replace(&mut seen[c as usize - 1], true) {
                    return Err(PreflibErrorKind::DuplicateCandidate(c));
                }
            }
        }
        if ranks.iter().any(|r| matches!(r, Rank::Group(_))) {
            self.omitted += count;
            self.ties.push(TieLine { count, ranking: ranking.trim().to_string() });
            return Ok(());
        }
        if ranks.is_empty() {
            return Err(PreflibErrorKind::Expected("at least one ranked candidate"));
        }
        let ids: Vec<CandidateId> = ranks
            .iter()
            .map(|r| match r {
                Rank::Single(c) => CandidateId(*c as u32),
                Rank::Group(_) => unreachable!(),
            })
            .collect();
        self.longest = self.longest.max(ids.len());
        self.types.push(BallotType { ballot: Ballot::new(ids)?, count });
        Ok(())
    }
}

/// Parses a PrefLib `.soc`, `.soi`, `.toc` or `.toi` file. Files whose
/// first non-blank line starts with `#` use the 2023 layout.
pub fn parse_election(bytes: &[u8], name: &str) -> Result<Election, PreflibError> {
    let text = String::from_utf8_lossy(bytes);
    let first = text.lines().find(|l| !l.trim().is_empty());
    match first {
        None => Err(PreflibError { line: 1, kind: PreflibErrorKind::Empty }),
        Some(l) if l.trim_start().starts_with('#') => parse_2023(&text, name),
        Some(_) => parse_classic(&text, name),
    }
}

fn finish(
    b: Builder,
    labels: Vec<String>,
    declared: Option<(u64, usize)>,
    name: &str,
) -> Result<Election, PreflibError> {
    let found: u64 = b.types.iter().map(|t| t.count).sum::<u64>() + b.omitted;
    if let Some((declared, line)) = declared {
        if declared != found {
            return Err(PreflibError { line, kind: PreflibErrorKind::TotalMismatch { declared, found } });
        }
    }
    let err = at(0);
    let profile = Profile::new(b.k, b.types).and_then(|p| p.with_labels(labels)).map_err(|e| err(e.into()))?;
    Ok(Election {
        profile,
        name: name.to_string(),
        source_tag: source_tag_for(name),
        omitted_tie_ballots: b.omitted,
        declared_ballot_length: (b.longest > 0).then_some(b.longest),
        tie_lines: b.ties,
    })
}

fn parse_classic(text: &str, name: &str) -> Result<Election, PreflibError> {
    let mut lines =
        text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (ln, first) = lines.next().ok_or(PreflibError { line: 1, kind: PreflibErrorKind::Empty })?;
    let k = parse_int(first).map_err(at(ln))? as usize;
    let mut labels = vec![String::new(); k];
    let mut filled = vec![false; k];
    for _ in 0..k {
        let (ln, l) =
            lines.next().ok_or(PreflibError { line: ln, kind: PreflibErrorKind::Expected("candidate line") })?;
        let (idx, label) =
            l.split_once(',').ok_or(PreflibError { line: ln, kind: PreflibErrorKind::Expected("index,name") })?;
        let idx = parse_int(idx).map_err(at(ln))?;
        if idx == 0 || idx as usize > k {
            return Err(PreflibError { line: ln, kind: PreflibErrorKind::CandidateOutOfRange { candidate: idx, k } });
        }
        if std::mem::replace(&mut filled[idx as usize - 1], true) {
            return Err(PreflibError { line: ln, kind: PreflibErrorKind::DuplicateCandidate(idx) });
        }
        labels[idx as usize - 1] = label.trim().to_string();
    }
    let (hl, header) =
        lines.next().ok_or(PreflibError { line: ln, kind: PreflibErrorKind::Expected("voter count line") })?;
    let fields: Vec<&str> = header.split(',').collect();
    if fields.len() != 3 {
        return Err(PreflibError { line: hl, kind: PreflibErrorKind::Expected("n_voters,n_sum,n_unique") });
    }
    let declared = parse_int(fields[0]).map_err(at(hl))?;
    for f in &fields[1..] {
        parse_int(f).map_err(at(hl))?;
    }
    let mut b = Builder { k, types: Vec::new(), ties: Vec::new(), omitted: 0, longest: 0 };
    for (ln, l) in lines {
        let (count, ranking) =
            l.split_once(',').ok_or(PreflibError { line: ln, kind: PreflibErrorKind::Expected("count,ranking") })?;
        let count = parse_int(count).map_err(at(ln))?;
        b.add(count, ranking).map_err(at(ln))?;
    }
    finish(b, labels, Some((declared, hl)), name)
}

fn parse_2023(text: &str, name: &str) -> Result<Election, PreflibError> {
    let mut k: Option<usize> = None;
    let mut declared: Option<(u64, usize)> = None;
    let mut names: Vec<(u64, String, usize)> = Vec::new();
    let mut data: Vec<(usize, &str)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let l = raw.trim();
        if l.is_empty() {
            continue;
        }
        if let Some(meta) = l.strip_prefix('#') {
            let Some((key, value)) = meta.split_once(':') else { continue };
            let key = key.trim().to_ascii_uppercase();
            let value = value.trim();
            if key == "NUMBER ALTERNATIVES" {
                k = Some(parse_int(value).map_err(at(ln))? as usize);
            } else if key == "NUMBER VOTERS" {
                declared = Some((parse_int(value).map_err(at(ln))?, ln));
            } else if let Some(idx) = key.strip_prefix("ALTERNATIVE NAME") {
                names.push((parse_int(idx).map_err(at(ln))?, value.to_string(), ln));
            }
            continue;
        }
        data.push((ln, l));
    }
    let first_data = data.first().map_or(1, |d| d.0);
    let k = k.ok_or(PreflibError {
        line: first_data,
        kind: PreflibErrorKind::Expected("'# NUMBER ALTERNATIVES' before ballot lines"),
    })?;
    let mut labels: Vec<String> = (1..=k).map(|i| i.to_string()).collect();
    for (idx, label, ln) in names {
        if idx == 0 || idx as usize > k {
            return Err(PreflibError { line: ln, kind: PreflibErrorKind::CandidateOutOfRange { candidate: idx, k } });
        }
        labels[idx as usize - 1] = label;
    }
    let mut b = Builder { k, types: Vec::new(), ties: Vec::new(), omitted: 0, longest: 0 };
    for (ln, l) in data {
        let (count, ranking) =
            l.split_once(':').ok_or(PreflibError { line: ln, kind: PreflibErrorKind::Expected("count: ranking") })?;
        let count = parse_int(count).map_err(at(ln))?;
        b.add(count, ranking).map_err(at(ln))?;
    }
    finish(b, labels, declared, name)
}

/// Writes `e` in the classic layout; tie lines follow the strict ones.
pub fn emit_election(e: &Election) -> String {
    emit_parts(&e.profile, &e.tie_lines)
}

/// Writes a bare profile in the classic layout.
pub fn emit_profile(p: &Profile) -> String {
    emit_parts(p, &[])
}

fn emit_parts(p: &Profile, ties: &[TieLine]) -> String {
    let mut out = String::new();
    let k = p.k();
    writeln!(out, "{k}").unwrap();
    for i in 0..k {
        writeln!(out, "{},{}", i + 1, p.label(CandidateId::from_index(i))).unwrap();
    }
    let n = p.total_voters() + ties.iter().map(|t| t.count).sum::<u64>();
    writeln!(out, "{n},{n},{}", p.types().len() + ties.len()).unwrap();
    for t in p.types() {
        let r: Vec<String> = t.ballot.ranking().iter().map(|c| c.0.to_string()).collect();
        writeln!(out, "{},{}", t.count, r.join(",")).unwrap();
    }
    for t in ties {
        writeln!(out, "{},{}", t.count, t.ranking).unwrap();
    }
    out
}
