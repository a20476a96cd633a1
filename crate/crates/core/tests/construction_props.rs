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

mod common;

use common::{ballots_of, lexmin_sequence, oracle_class};
use irvlab::constructions::{
    build_ctf, build_full_ballot, build_min_length, build_tie_free, is_feasible, voter_lower_bound, TargetSequence,
    TieRegime, Variant,
};
use irvlab::{classify_ties, TieLevel, DEFAULT_BRANCH_BUDGET};
use proptest::prelude::*;

fn feasible(k_min: usize, k_max: usize) -> impl Strategy<Value = (usize, Vec<u32>)> {
    (k_min..=k_max).prop_flat_map(|k| {
        let parts: Vec<_> = (1..k).map(|h| (h as u32 + 1)..=(k as u32)).collect();
        (Just(k), parts)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn ctf_realizes_its_target((k, w) in feasible(3, 10)) {
        let p = build_ctf(&TargetSequence::new(k, &w)).unwrap();
        prop_assert_eq!(lexmin_sequence(&ballots_of(&p), k), w);
        prop_assert_eq!(p.total_voters(), voter_lower_bound(k, TieRegime::ConsequentialTieFree).unwrap());
    }

    #[test]
    fn tie_free_realizes_its_target((k, w) in feasible(3, 9)) {
        let p = build_tie_free(&TargetSequence::new(k, &w)).unwrap();
        prop_assert_eq!(lexmin_sequence(&ballots_of(&p), k), w);
        prop_assert_eq!(p.total_voters(), voter_lower_bound(k, TieRegime::TieFree).unwrap());
    }

    #[test]
    fn full_ballot_padding((kappa, w) in feasible(4, 6), tf in any::<bool>()) {
        let m = kappa as u32;
        let shifted: Vec<u32> = w.iter().map(|x| x + m).collect();
        let variant = if tf { Variant::TieFree } else { Variant::ConsequentialTieFree };
        let p = build_full_ballot(kappa, &shifted, variant).unwrap();
        prop_assert!(p.types().iter().all(|t| t.ballot.len() == 2 * kappa));
        prop_assert_eq!(&lexmin_sequence(&ballots_of(&p), 2 * kappa)[..kappa - 1], &shifted[..]);
    }
}

#[test]
fn small_constructions_match_the_oracle_class() {
    // The naive counter explores every tie-break, so keep k small.
    for (k, w) in [(3, vec![2, 3]), (3, vec![3, 3]), (4, vec![2, 3, 4]), (4, vec![4, 4, 4]), (4, vec![3, 3, 4])] {
        let t = TargetSequence::new(k, &w);
        let ctf = build_ctf(&t).unwrap();
        assert!(oracle_class(&ballots_of(&ctf), k).at_least(TieLevel::ConsequentialTieFree), "{w:?}");
        let tf = build_tie_free(&t).unwrap();
        assert_eq!(oracle_class(&ballots_of(&tf), k), TieLevel::TieFree, "{w:?}");
    }
}

#[test]
fn infeasible_targets_are_rejected() {
    for (k, w) in [(4, vec![1, 3, 4]), (4, vec![2, 2, 4]), (5, vec![2, 3, 4, 4])] {
        let t = TargetSequence::new(k, &w);
        assert!(!is_feasible(&t).unwrap());
        assert!(build_ctf(&t).is_err());
        assert!(build_tie_free(&t).is_err());
    }
    assert!(build_ctf(&TargetSequence::new(4, &[2, 3])).is_err());
}

#[test]
fn min_length_profile() {
    let p = build_min_length(5, 2, &[5, 6, 7, 8, 9, 10], Variant::ConsequentialTieFree).unwrap();
    assert!(p.min_ballot_len() >= 3);
    assert_eq!(lexmin_sequence(&ballots_of(&p), 10)[..6], [5, 6, 7, 8, 9, 10]);
    assert!(classify_ties(&p, DEFAULT_BRANCH_BUDGET).value.at_least(TieLevel::ConsequentialTieFree));
}
