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

use irvlab::restrictions::{
    euclidean_cells, euclidean_profile, find_axis, is_single_crossing_sequence, is_single_peaked_on_axis,
    parse_rational, random_single_crossing, random_single_peaked, Axis, EuclideanSpec,
};
use irvlab::{Ballot, CandidateId, Profile};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn spec(nums: &[u32]) -> EuclideanSpec {
    let pos = nums.iter().map(|&n| BigRational::new(BigInt::from(n), BigInt::from(1000))).collect();
    EuclideanSpec::new(pos).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn euclidean_profiles_are_restricted(nums in proptest::collection::btree_set(0u32..=1000, 2..=12), shuffle in any::<u64>()) {
        let mut nums: Vec<u32> = nums.into_iter().collect();
        // Input order must not matter beyond naming.
        use rand::seq::SliceRandom;
        nums.shuffle(&mut ChaCha8Rng::seed_from_u64(shuffle));
        let s = spec(&nums);
        let k = s.k();
        let wp = euclidean_profile(&s).unwrap();
        prop_assert!(wp.types().len() <= k * (k - 1) / 2 + 1);
        prop_assert!(wp.total_weight() == BigRational::one());

        let cells = euclidean_cells(&s);
        let ordered: Vec<Ballot> = cells.iter().map(|c| c.ballot.clone()).collect();
        prop_assert!(is_single_crossing_sequence(k, &ordered));
        // One voter per cell is enough to test the axis.
        let p = Profile::new(k, cells.iter().map(|c| irvlab::BallotType { ballot: c.ballot.clone(), count: 1 }).collect());
        let p = irvlab::normalize(k, p.unwrap().types().to_vec()).unwrap();
        prop_assert!(is_single_peaked_on_axis(&p, &s.axis()).unwrap());
        for w in cells.windows(2) {
            prop_assert!(w[0].right == w[1].left);
        }
        prop_assert!(cells[0].left.is_zero() && cells.last().unwrap().right.is_one());
    }

    #[test]
    fn generators_produce_restricted_profiles(k in 2usize..=7, n in 1u64..40, partial in any::<bool>(), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let axis = Axis((1..=k as u32).rev().map(CandidateId).collect());
        let p = random_single_peaked(&axis, n, partial, &mut rng);
        prop_assert_eq!(p.total_voters(), n);
        prop_assert!(is_single_peaked_on_axis(&p, &axis).unwrap());
        let found = find_axis(&p, 10).unwrap().expect("an axis exists");
        prop_assert!(is_single_peaked_on_axis(&p, &found).unwrap());

        let (q, order) = random_single_crossing(k, n, partial, &mut rng);
        prop_assert_eq!(q.total_voters(), n);
        prop_assert!(is_single_crossing_sequence(k, &order));
    }
}

#[test]
fn cyclic_profile_has_no_axis() {
    let p = Profile::from_counts(3, [(1, &[1, 2, 3][..]), (1, &[2, 3, 1][..]), (1, &[3, 1, 2][..])]).unwrap();
    assert_eq!(find_axis(&p, 10).unwrap(), None);
    assert!(find_axis(&Profile::empty(11), 10).is_err());
}

#[test]
fn exact_parsing() {
    assert_eq!(parse_rational("0.1").unwrap(), BigRational::new(1.into(), 10.into()));
    assert_eq!(parse_rational("3/6").unwrap(), BigRational::new(1.into(), 2.into()));
    assert!(parse_rational("1/0").is_err());
    assert!("0.2,1/5".parse::<EuclideanSpec>().is_err());
}
