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

use super::{build_ctf, build_tie_free, check_window, verify, Ballots, ConstructionError, TargetSequence};
use crate::profile::{CandidateId, Profile};
use crate::ties::TieLevel;
use serde::{Deserialize, Serialize};

/// Which base construction to pad.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Variant {
    #[default]
    ConsequentialTieFree,
    TieFree,
}

impl Variant {
    fn level(self) -> TieLevel {
        match self {
            Variant::ConsequentialTieFree => TieLevel::ConsequentialTieFree,
            Variant::TieFree => TieLevel::TieFree,
        }
    }
}

/// A full-ballot profile on `2κ` candidates whose winner at each length
/// `h = 1..κ-1` is `w[h-1]`. Nothing is promised for longer lengths.
///
/// The base construction on the top `κ` candidates is padded to length `κ`
/// with `κ` filler candidates that are always eliminated first, then
/// completed in ascending candidate order.
pub fn build_full_ballot(kappa: usize, w: &[u32], variant: Variant) -> Result<Profile, ConstructionError> {
    if kappa <= 3 {
        return Err(ConstructionError::Domain(format!("build_full_ballot needs kappa > 3, got {kappa}")));
    }
    pad(kappa, 0, w, variant, true)
}

/// A profile on `2κ` candidates with every ballot of length at least
/// `κ - c` whose winner at each length `h = 1..κ+c-1` is `w[h-1]`.
pub fn build_min_length(kappa: usize, c: usize, w: &[u32], variant: Variant) -> Result<Profile, ConstructionError> {
    if kappa <= 3 || c >= kappa {
        return Err(ConstructionError::Domain(format!(
            "build_min_length needs kappa > 3 and c < kappa, got kappa = {kappa}, c = {c}"
        )));
    }
    pad(kappa, c, w, variant, false)
}

fn pad(kappa: usize, c: usize, w: &[u32], variant: Variant, full: bool) -> Result<Profile, ConstructionError> {
    let k = 2 * kappa;
    let inner_k = kappa + c;
    let m = (kappa - c) as u32;
    let expected_len = inner_k - 1;
    if w.len() != expected_len {
        return Err(ConstructionError::Length { expected: expected_len, got: w.len() });
    }
    let ids: Vec<CandidateId> = w.iter().map(|&x| CandidateId(x)).collect();
    check_window(&ids, k as u32, m)?;

    let inner_t = TargetSequence::new(inner_k, &w.iter().map(|&x| x - m).collect::<Vec<_>>());
    let inner = match variant {
        Variant::ConsequentialTieFree => build_ctf(&inner_t)?,
        Variant::TieFree => build_tie_free(&inner_t)?,
    };

    let complete = |r: &mut Vec<u32>| {
        if full {
            let rest: Vec<u32> = (1..=k as u32).filter(|x| !r.contains(x)).collect();
            r.extend(rest);
        }
    };
    let mut ballots = Ballots::default();
    for t in inner.types() {
        let mut r: Vec<u32> = t.ballot.ranking().iter().map(|x| x.0 + m).collect();
        let short = (m as usize).saturating_sub(r.len()) as u32;
        r.extend(1..=short);
        complete(&mut r);
        ballots.add(r, t.count);
    }
    if variant == Variant::TieFree {
        // Filler j gets j - 1 first-place ballots so fillers never tie.
        for j in 2..=m {
            let mut r: Vec<u32> = (1..=j).rev().collect();
            r.extend((j + 1..=m).rev());
            complete(&mut r);
            ballots.add(r, (j - 1) as u64);
        }
    }

    let p = ballots.into_profile(k)?;
    let extra = match variant {
        Variant::ConsequentialTieFree => 0,
        Variant::TieFree => (m as u64) * (m as u64 - 1) / 2,
    };
    verify(&p, w, variant.level(), Some(inner.total_voters() + extra))?;
    let shortest = if full { k } else { m as usize };
    if p.min_ballot_len() < shortest {
        return Err(ConstructionError::Verification(format!(
            "shortest ballot has length {}, wanted at least {shortest}",
            p.min_ballot_len()
        )));
    }
    Ok(p)
}
