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

//! One adapter per subcommand: parse inputs, call the library, serialize.

use crate::output::{
    csv_string, domain_err, emit, usage_err, write_atomic, write_sidecar, Classify, CmdResult, Provenance,
};
use crate::{
    BallotsArg, Command, ConstructArgs, ConstructKind, KindArg, PreflibCommand, RestrictArgs, SimArgs, SimulateCommand,
    VariantArg,
};
use clap::ValueEnum;
use irvlab::constructions::{self as cons, TargetSequence, TieRegime, Variant};
use irvlab::lp::{self, SearchBudget, SearchOptions};
use irvlab::preflib::{self, Election};
use irvlab::restrictions::{self, Axis, EuclideanSpec};
use irvlab::sim::{self, BallotKind, PreferenceKind, SimConfig};
use irvlab::{CandidateId, Profile, TieBreakPolicy, TieLevel};
use serde::Serialize;
use std::path::{Path, PathBuf};
use std::time::Duration;

pub fn run(cmd: Command) -> CmdResult {
    match cmd {
        Command::Tabulate { input, length, tie, out } => tabulate(&input.input, length, &tie.policy, out.as_deref()),
        Command::Sequence { input, tie } => sequence(&input.input, &tie.policy),
        Command::Classify { input, budget } => classify(&input.input, budget),
        Command::Construct(args) => construct(&args),
        Command::Bounds { k } => bounds(k),
        Command::Restrict(args) => restrict(&args),
        Command::Euclid { positions, out } => euclid(&positions, out.as_deref()),
        Command::LpSearch { k, all_orders, cmax, max_attempts, time_limit, out } => {
            let budget = SearchBudget { max_attempts, time_limit: time_limit.map(Duration::from_secs) };
            lp_search(k, SearchOptions { c_max: cmax, all_orders, budget }, &out)
        }
        Command::Preflib(p) => match p {
            PreflibCommand::Parse { input, out } => preflib_parse(&input.input, out.as_deref()),
            PreflibCommand::Summarize { paths, out } => preflib_summarize(&paths, out.as_deref()),
            PreflibCommand::Fetch { base_url, manifest, cache } => preflib_fetch(&base_url, &manifest, &cache),
            PreflibCommand::Audit { paths, tie, out } => preflib_audit(&paths, &tie.policy, out.as_deref()),
        },
        Command::Simulate(s) => match s {
            SimulateCommand::Heatmap(a) => heatmap(&a),
            SimulateCommand::Winners(a) => winners(&a),
        },
        Command::Resample { input, trials, seed, tie, out } => {
            resample(&input.input, trials, seed, &tie.policy, out.as_deref())
        }
    }
}

fn read_input(path: &Path) -> CmdResult<Vec<u8>> {
    if !path.is_file() {
        return Err(usage_err(format!("input file {} not found", path.display())));
    }
    std::fs::read(path).usage()
}

fn load(path: &Path) -> CmdResult<Election> {
    let bytes = read_input(path)?;
    let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
    let e = preflib::parse_election(&bytes, &name).map_err(|err| domain_err(format!("{}: {err}", path.display())))?;
    if e.omitted_tie_ballots > 0 {
        log::warn!(
            "{}: {} ballots with tied ranks on {} lines were left out",
            path.display(),
            e.omitted_tie_ballots,
            e.tie_lines.len()
        );
    }
    Ok(e)
}

fn level_name(l: TieLevel) -> &'static str {
    match l {
        TieLevel::TieFree => "tie-free",
        TieLevel::EliminationTieFree => "elimination-tie-free",
        TieLevel::ConsequentialTieFree => "consequential-tie-free",
        TieLevel::HasConsequentialTies => "has-consequential-ties",
        TieLevel::Unknown => "unknown",
    }
}

fn tabulate(path: &Path, length: Option<usize>, policy: &TieBreakPolicy, out: Option<&Path>) -> CmdResult {
    let p = load(path)?.profile;
    let lengths = match length {
        Some(0) => return Err(usage_err("--length must be at least 1")),
        Some(h) => h..=h,
        None => 1..=p.k(),
    };
    let mut rows = Vec::new();
    for h in lengths {
        let trace = irvlab::run_irv_truncated(&p, h, policy).domain()?;
        for r in &trace.rounds {
            for (c, t) in &r.tallies {
                rows.push([
                    h.to_string(),
                    r.round.to_string(),
                    p.label(*c),
                    t.to_string(),
                    u8::from(*c == r.eliminated).to_string(),
                    r.exhausted_after.to_string(),
                ]);
            }
        }
    }
    let text = csv_string(&["h", "round", "candidate", "tally", "eliminated_flag", "exhausted_after"], rows)?;
    emit(out, &text)
}

fn sequence(path: &Path, policy: &TieBreakPolicy) -> CmdResult {
    let p = load(path)?.profile;
    let seq = irvlab::winner_sequence(&p, policy).domain()?;
    let rows = seq.winners.iter().enumerate().map(|(i, w)| [(i + 1).to_string(), p.label(*w)]);
    emit(None, &csv_string(&["h", "winner"], rows)?)
}

fn classify(path: &Path, budget: u64) -> CmdResult {
    let p = load(path)?.profile;
    let c = irvlab::classify_ties(&p, budget);
    emit(None, &format!("tie_class,{}\nbranches_explored,{}\n", level_name(c.value), c.branches_explored))
}

#[derive(Serialize)]
struct ConstructReport {
    kind: String,
    k: usize,
    requested: Vec<u32>,
    sequence: Vec<u32>,
    voters: u64,
    ballot_types: usize,
    tie_class: &'static str,
    verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    axis: Option<Vec<u32>>,
}

fn construct(a: &ConstructArgs) -> CmdResult {
    let variant = match a.variant {
        VariantArg::Ctf => Variant::ConsequentialTieFree,
        VariantArg::TieFree => Variant::TieFree,
    };
    let needs_sequence = matches!(
        a.kind,
        ConstructKind::Ctf | ConstructKind::TieFree | ConstructKind::FullBallot | ConstructKind::MinLength
    );
    if needs_sequence && a.sequence.is_empty() {
        return Err(usage_err("--sequence is required for this kind"));
    }
    let mut axis = None;
    let (p, requested): (Profile, Vec<u32>) = match a.kind {
        ConstructKind::Ctf => (cons::build_ctf(&TargetSequence::new(a.k, &a.sequence)).domain()?, a.sequence.clone()),
        ConstructKind::TieFree => {
            (cons::build_tie_free(&TargetSequence::new(a.k, &a.sequence)).domain()?, a.sequence.clone())
        }
        ConstructKind::SinglePeaked => {
            let (p, ax) = cons::build_single_peaked(a.k).domain()?;
            axis = Some(ax.0.iter().map(|c| c.0).collect());
            let len = p.k() - 1;
            (p, (1..=len as u32).map(|h| h.min(a.k as u32)).collect())
        }
        ConstructKind::KTypes => {
            let p = cons::build_k_types(a.k).domain()?;
            (p, (1..a.k as u32).collect())
        }
        ConstructKind::FullBallot => (cons::build_full_ballot(a.k, &a.sequence, variant).domain()?, a.sequence.clone()),
        ConstructKind::MinLength => {
            (cons::build_min_length(a.k, a.c, &a.sequence, variant).domain()?, a.sequence.clone())
        }
    };
    let achieved = irvlab::winner_sequence(&p, &TieBreakPolicy::LexicographicMin).domain()?;
    let sequence: Vec<u32> = achieved.as_ids().into_iter().take(requested.len()).collect();
    let class = irvlab::classify_ties_for_lengths(&p, 1..=requested.len(), irvlab::DEFAULT_BRANCH_BUDGET);
    let report = ConstructReport {
        kind: a.kind.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default(),
        k: p.k(),
        verified: sequence == requested && class.value.at_least(TieLevel::ConsequentialTieFree),
        requested,
        sequence,
        voters: p.total_voters(),
        ballot_types: p.types().len(),
        tie_class: level_name(class.value),
        axis,
    };
    write_atomic(&a.out, preflib::emit_profile(&p).as_bytes())?;
    write_sidecar(&a.out, &Provenance::new(None), &report)
}

fn bounds(k: usize) -> CmdResult {
    let mut text = String::from("tie_class,voters\n");
    for regime in TieRegime::ALL {
        text.push_str(&format!("{},{}\n", regime.name(), cons::voter_lower_bound(k, regime).domain()?));
    }
    emit(None, &text)
}

fn parse_ids(ids: &[u32], k: usize) -> CmdResult<Vec<CandidateId>> {
    ids.iter()
        .map(|&i| {
            if i == 0 || i as usize > k {
                Err(usage_err(format!("candidate {i} is outside 1..={k}")))
            } else {
                Ok(CandidateId(i))
            }
        })
        .collect()
}

fn restrict(a: &RestrictArgs) -> CmdResult {
    if a.axis.is_empty() && !a.find_axis && a.crossing_order.is_empty() {
        return Err(usage_err("give at least one of --axis, --find-axis, --crossing-order"));
    }
    let p = load(&a.input.input)?.profile;
    let mut text = String::new();
    if !a.axis.is_empty() {
        let axis = Axis::new(parse_ids(&a.axis, p.k())?, p.k()).usage()?;
        let ok = restrictions::is_single_peaked_on_axis(&p, &axis).domain()?;
        text.push_str(&format!("single_peaked_on_axis,{ok}\n"));
    }
    if a.find_axis {
        let found = restrictions::find_axis(&p, a.k_limit).domain()?;
        let shown = match found {
            Some(ax) => ax.0.iter().map(|c| p.label(*c)).collect::<Vec<_>>().join(" "),
            None => "none".into(),
        };
        text.push_str(&format!("axis,{shown}\n"));
    }
    if !a.crossing_order.is_empty() {
        let ok = restrictions::is_single_crossing_in_order(&p, &a.crossing_order).usage()?;
        text.push_str(&format!("single_crossing_in_order,{ok}\n"));
    }
    emit(None, &text)
}

fn euclid(positions: &str, out: Option<&Path>) -> CmdResult {
    let spec: EuclideanSpec = positions.parse().usage()?;
    let cells = restrictions::euclidean_cells(&spec);
    let wp = restrictions::euclidean_profile(&spec).domain()?;
    let seq = irvlab::truncation::winner_sequence_weighted(&wp, &TieBreakPolicy::LexicographicMin).domain()?;
    if let Some(out) = out {
        let rows = cells
            .iter()
            .map(|c| [c.left.to_string(), c.right.to_string(), c.width().to_string(), c.ballot.to_string()]);
        write_atomic(out, csv_string(&["left", "right", "weight", "ranking"], rows)?.as_bytes())?;
    }
    let rows = seq.winners.iter().enumerate().map(|(i, w)| [(i + 1).to_string(), w.to_string()]);
    emit(None, &csv_string(&["h", "winner"], rows)?)
}

#[derive(Serialize)]
struct LpReport {
    k: usize,
    found: bool,
    verified: bool,
    voters: Option<u64>,
    ballot_types: Option<usize>,
    c: u64,
    matrix_index: Option<usize>,
    matrix: Option<Vec<Vec<u32>>>,
    lp_objective: Option<String>,
    attempts: u64,
    sequence: Option<Vec<u32>>,
}

fn lp_search(k: usize, opts: SearchOptions, out: &Path) -> CmdResult {
    let r = lp::search(k, &opts).domain()?;
    let sequence = match &r.profile {
        Some(p) => Some(irvlab::winner_sequence(p, &TieBreakPolicy::LexicographicMin).domain()?.as_ids()),
        None => None,
    };
    let report = LpReport {
        k,
        found: r.profile.is_some(),
        verified: r.verified,
        voters: r.profile.as_ref().map(Profile::total_voters),
        ballot_types: r.profile.as_ref().map(|p| p.types().len()),
        c: r.c_used,
        matrix_index: r.matrix_index,
        matrix: r.matrix.as_ref().map(|m| (1..k).map(|h| m.row(h).iter().map(|c| c.0).collect()).collect()),
        lp_objective: r.lp_objective.as_ref().map(ToString::to_string),
        attempts: r.eliminations_tried,
        sequence,
    };
    if let Some(p) = &r.profile {
        write_atomic(out, preflib::emit_profile(p).as_bytes())?;
    }
    write_sidecar(out, &Provenance::new(None), &report)?;
    match &r.profile {
        Some(p) => {
            emit(None, &format!("voters,{}\nballot_types,{}\nc,{}\n", p.total_voters(), p.types().len(), r.c_used))
        }
        None => Err(domain_err(format!("no verified profile found after {} attempts", r.eliminations_tried))),
    }
}

fn preflib_parse(path: &Path, out: Option<&Path>) -> CmdResult {
    let e = load(path)?;
    let text = format!(
        "name,{}\nsource_tag,{}\nk,{}\nvoters,{}\nballot_types,{}\nballot_length,{}\nomitted_tie_ballots,{}\n",
        e.name,
        e.source_tag,
        e.profile.k(),
        e.profile.total_voters(),
        e.profile.types().len(),
        e.declared_ballot_length.unwrap_or(0),
        e.omitted_tie_ballots
    );
    if let Some(out) = out {
        write_atomic(out, preflib::emit_election(&e).as_bytes())?;
    }
    emit(None, &text)
}

const EXTENSIONS: [&str; 4] = ["soc", "soi", "toc", "toi"];

/// Files named directly, plus PrefLib files found under directories, sorted.
fn collect(paths: &[PathBuf]) -> CmdResult<Vec<PathBuf>> {
    let mut files = Vec::new();
    let mut stack: Vec<PathBuf> = Vec::new();
    for p in paths {
        if p.is_dir() {
            stack.push(p.clone());
        } else if p.is_file() {
            files.push(p.clone());
        } else {
            return Err(usage_err(format!("input {} not found", p.display())));
        }
    }
    while let Some(dir) = stack.pop() {
        for entry in std::fs::read_dir(&dir).usage()? {
            let path = entry.usage()?.path();
            if path.is_dir() {
                stack.push(path);
            } else if path.extension().and_then(|x| x.to_str()).is_some_and(|x| EXTENSIONS.contains(&x)) {
                files.push(path);
            }
        }
    }
    files.sort();
    Ok(files)
}

fn load_all(paths: &[PathBuf]) -> CmdResult<Vec<Election>> {
    collect(paths)?.iter().map(|p| load(p)).collect()
}

fn preflib_summarize(paths: &[PathBuf], out: Option<&Path>) -> CmdResult {
    let elections = load_all(paths)?;
    let rows = preflib::summarize(&elections).into_iter().map(|r| {
        [
            r.source_tag,
            r.elections.to_string(),
            r.k.0.to_string(),
            r.k.1.to_string(),
            r.h.0.to_string(),
            r.h.1.to_string(),
            r.ballots.0.to_string(),
            r.ballots.1.to_string(),
        ]
    });
    let header = ["source_tag", "elections", "k_min", "k_max", "h_min", "h_max", "ballots_min", "ballots_max"];
    emit(out, &csv_string(&header, rows)?)
}

fn preflib_fetch(base_url: &str, manifest: &Path, cache: &Path) -> CmdResult {
    let text = String::from_utf8(read_input(manifest)?).usage()?;
    let files = preflib::read_manifest(&text).domain()?;
    let report = preflib::fetch(base_url, &files, cache).domain()?;
    emit(
        None,
        &format!(
            "downloaded,{}\ncached,{}\ncache_dir,{}\n",
            report.downloaded.len(),
            report.cached.len(),
            cache.display()
        ),
    )
}

fn preflib_audit(paths: &[PathBuf], policy: &TieBreakPolicy, out: Option<&Path>) -> CmdResult {
    let elections = load_all(paths)?;
    let (rows, s) = preflib::audit(&elections, policy).domain()?;
    if let Some(out) = out {
        let csv_rows = rows.into_iter().map(|r| {
            [
                r.name,
                r.source_tag,
                r.k.to_string(),
                r.h.to_string(),
                r.ballots.to_string(),
                r.distinct.to_string(),
                r.winners.join("|"),
            ]
        });
        let header = ["name", "source_tag", "k", "h", "ballots", "distinct", "winners"];
        write_atomic(out, csv_string(&header, csv_rows)?.as_bytes())?;
    }
    let count = |d: usize| s.by_distinct.get(&d).copied().unwrap_or(0);
    let table = [
        ["elections".to_string(), s.elections.to_string(), preflib::REFERENCE_ELECTIONS.to_string()],
        ["two_winners".into(), count(2).to_string(), preflib::REFERENCE_TWO_WINNERS.to_string()],
        ["three_winners".into(), count(3).to_string(), preflib::REFERENCE_THREE_WINNERS.to_string()],
        [
            "sensitive".into(),
            s.sensitive.to_string(),
            (preflib::REFERENCE_TWO_WINNERS + preflib::REFERENCE_THREE_WINNERS).to_string(),
        ],
        [
            "sensitive_short".into(),
            format!("{}/{}", s.short.0, s.short.1),
            format!("{}/{}", preflib::REFERENCE_SHORT.0, preflib::REFERENCE_SHORT.1),
        ],
        [
            "sensitive_long".into(),
            format!("{}/{}", s.long.0, s.long.1),
            format!("{}/{}", preflib::REFERENCE_LONG.0, preflib::REFERENCE_LONG.1),
        ],
        ["sensitive_fraction".into(), format!("{:.4}", s.sensitive_fraction()), format!("{:.4}", 42.0 / 168.0)],
    ];
    emit(None, &csv_string(&["statistic", "observed", "reference"], table)?)
}

fn sim_config(a: &SimArgs, default_trials: u64) -> CmdResult<SimConfig> {
    if a.k_min < 2 || a.k_min > a.k_max {
        return Err(usage_err(format!("need 2 <= k-min <= k-max, got {}..={}", a.k_min, a.k_max)));
    }
    Ok(SimConfig {
        k_range: a.k_min..=a.k_max,
        trials: a.trials.unwrap_or(default_trials),
        n_voters: a.voters,
        seed: a.seed,
        preference_kind: match a.kind {
            KindArg::General => PreferenceKind::UniformGeneral,
            KindArg::Euclidean => PreferenceKind::Euclidean1D,
        },
        ballots: match a.ballots {
            BallotsArg::Full => BallotKind::Full,
            BallotsArg::Partial => BallotKind::VoluntarilyTruncated,
        },
    })
}

#[derive(Serialize)]
struct SimReport<'a> {
    kind: &'static str,
    ballots: &'static str,
    k_min: usize,
    k_max: usize,
    trials: u64,
    n_voters: u64,
    /// Trials per k in which some count needed a tie-break.
    tie_trials: &'a [(usize, u64)],
}

fn sim_sidecar(out: Option<&Path>, cfg: &SimConfig, tie_trials: &[(usize, u64)]) -> CmdResult {
    let Some(out) = out else { return Ok(()) };
    let report = SimReport {
        kind: cfg.preference_kind.name(),
        ballots: cfg.ballots.name(),
        k_min: *cfg.k_range.start(),
        k_max: *cfg.k_range.end(),
        trials: cfg.trials,
        n_voters: cfg.n_voters,
        tie_trials,
    };
    write_sidecar(out, &Provenance::new(Some(cfg.seed)), &report)
}

fn heatmap(a: &SimArgs) -> CmdResult {
    let cfg = sim_config(a, sim::DEFAULT_HEATMAP_TRIALS)?;
    let r = sim::heatmap(&cfg).domain()?;
    let rows = r
        .cells
        .iter()
        .map(|c| [c.k.to_string(), c.h.to_string(), format!("{:.6}", c.probability), c.trials.to_string()]);
    emit(a.out.as_deref(), &csv_string(&["k", "h", "probability", "trials"], rows)?)?;
    let ties: Vec<(usize, u64)> = r.tie_trials.iter().map(|(&k, &n)| (k, n)).collect();
    sim_sidecar(a.out.as_deref(), &cfg, &ties)
}

fn winners(a: &SimArgs) -> CmdResult {
    let cfg = sim_config(a, sim::DEFAULT_WINNER_TRIALS)?;
    let stats = sim::winner_count_stats(&cfg).domain()?;
    let rows = stats.iter().map(|s| {
        [
            s.k.to_string(),
            format!("{:.6}", s.mean),
            format!("{:.6}", s.std),
            s.max.to_string(),
            s.trials.to_string(),
            s.kind.name().to_string(),
            s.ballots.name().to_string(),
        ]
    });
    emit(a.out.as_deref(), &csv_string(&["k", "mean", "std", "max", "trials", "kind", "ballots"], rows)?)?;
    let ties: Vec<(usize, u64)> = stats.iter().map(|s| (s.k, s.tie_trials)).collect();
    sim_sidecar(a.out.as_deref(), &cfg, &ties)
}

fn resample(path: &Path, trials: u64, seed: u64, policy: &TieBreakPolicy, out: Option<&Path>) -> CmdResult {
    let p = load(path)?.profile;
    let r = irvlab::resample(&p, trials, seed, policy).domain()?;
    let mut rows = Vec::new();
    // Length k needs no row of its own: the count at k - 1 always agrees with it.
    for (hi, probs) in r.win_prob.iter().enumerate() {
        let actual = r.actual.winners[hi];
        for (ci, prob) in probs.iter().enumerate() {
            let c = CandidateId::from_index(ci);
            rows.push([(hi + 1).to_string(), p.label(c), format!("{prob:.6}"), u8::from(c == actual).to_string()]);
        }
    }
    emit(out, &csv_string(&["h", "candidate", "frequency", "actual_winner_flag"], rows)?)?;
    if let Some(out) = out {
        #[derive(Serialize)]
        struct Body {
            trials: u64,
            mean_distinct: f64,
            max_distinct: usize,
            distinct_histogram: Vec<u64>,
        }
        let body = Body {
            trials,
            mean_distinct: r.mean_distinct(),
            max_distinct: r.max_distinct(),
            distinct_histogram: r.distinct_histogram.clone(),
        };
        write_sidecar(out, &Provenance::new(Some(seed)), &body)?;
    }
    Ok(())
}
