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
use irvlab::preflib::{emit_election, emit_profile, parse_election, summarize, Election, PreflibErrorKind};
use proptest::prelude::*;

proptest! {
    #[test]
    fn emitted_profiles_parse_back((k, b) in profiles(9, 12, 50), named in any::<bool>()) {
        let mut p = to_profile(k, &b);
        if named {
            p = p.with_labels((1..=k).map(|i| format!("Cand {i}")).collect()).unwrap();
        }
        let e = parse_election(emit_profile(&p).as_bytes(), "00042-00000001.soi").unwrap();
        prop_assert_eq!(e.profile.types(), p.types());
        prop_assert_eq!(e.profile.k(), k);
        prop_assert_eq!(e.declared_total(), p.total_voters());
        let again = parse_election(emit_election(&e).as_bytes(), "00042-00000001.soi").unwrap();
        prop_assert_eq!(again, e);
    }
}

fn fixture(name: &str) -> Election {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name);
    parse_election(&std::fs::read(path).unwrap(), name).unwrap()
}

#[test]
fn counts_match_declared_totals() {
    for (name, declared) in [
        ("00001-00000001.soc", 6),
        ("00002-00000001.soi", 24),
        ("00003-00000001.toc", 7),
        ("00004-00000001.toi", 11),
        ("00005-00000001.soi", 6),
    ] {
        let e = fixture(name);
        assert_eq!(e.declared_total(), declared, "{name}");
        assert!(e.profile.types().iter().all(|t| t.count > 0));
    }
    let toi = fixture("00004-00000001.toi");
    assert_eq!(toi.tie_lines.len(), 2);
    assert_eq!(toi.tie_lines[0].ranking, "{1,2},3");
}

#[test]
fn summary_spans_families() {
    let es: Vec<Election> =
        ["00001-00000001.soc", "00002-00000001.soi", "00005-00000001.soi"].into_iter().map(fixture).collect();
    let rows = summarize(&es);
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[1].source_tag, "00002");
    assert_eq!(rows[1].ballots, (24, 24));
}

#[test]
fn bad_lines_are_reported_not_dropped() {
    // A count that disagrees with the header.
    let err = parse_election(b"2\n1,A\n2,B\n5,5,1\n4,1,2\n", "x.soc").unwrap_err();
    assert_eq!(err.line, 4);
    // An unknown candidate.
    let err = parse_election(b"2\n1,A\n2,B\n1,1,1\n1,3\n", "x.soi").unwrap_err();
    assert_eq!(err.line, 5);
    assert!(!matches!(err.kind, PreflibErrorKind::Empty));
}
