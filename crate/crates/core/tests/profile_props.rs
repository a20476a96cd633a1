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

use common::{profiles, to_profile};
use irvlab::{normalize, total_voters, truncate_profile, BallotType};
use proptest::prelude::*;

proptest! {
    #[test]
    fn truncation_composes((k, b) in profiles(7, 10, 9), h1 in 1usize..8, h2 in 1usize..8) {
        let p = to_profile(k, &b);
        let (h1, h2) = (h1.min(k), h2.min(k));
        let twice = truncate_profile(&truncate_profile(&p, h1).unwrap(), h2).unwrap();
        prop_assert_eq!(twice, truncate_profile(&p, h1.min(h2)).unwrap());
    }

    #[test]
    fn voters_survive_truncation_and_normalization((k, b) in profiles(7, 10, 9), h in 1usize..8) {
        let p = to_profile(k, &b);
        let n = total_voters(&p);
        prop_assert_eq!(total_voters(&truncate_profile(&p, h.min(k)).unwrap()), n);
        let again = normalize(k, p.types().to_vec()).unwrap();
        prop_assert_eq!(total_voters(&again), n);
    }

    #[test]
    fn normalize_is_idempotent((k, b) in profiles(6, 12, 5)) {
        // Split every line in two so normalization has merging to do.
        let mut types: Vec<BallotType> = Vec::new();
        for t in to_profile(k, &b).types() {
            types.push(BallotType { ballot: t.ballot.clone(), count: 1 });
            if t.count > 1 {
                types.push(BallotType { ballot: t.ballot.clone(), count: t.count - 1 });
            }
        }
        let once = normalize(k, types).unwrap();
        let twice = normalize(k, once.types().to_vec()).unwrap();
        prop_assert_eq!(&once, &twice);
        prop_assert_eq!(once, to_profile(k, &b));
    }
}

#[test]
fn empty_ballots_are_rejected() {
    assert!(irvlab::Ballot::from_ids(&[]).is_err());
    assert!(irvlab::Ballot::from_ids(&[1, 1]).is_err());
}
