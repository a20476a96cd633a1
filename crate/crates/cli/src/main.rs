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

//! `irvlab`: ballot-length analysis for instant-runoff elections.

mod commands;
mod output;

use clap::{Args, Parser, Subcommand, ValueEnum};
use irvlab::TieBreakPolicy;
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "irvlab", version, about = "How ballot length changes instant-runoff outcomes")]
pub struct Cli {
    /// Cap on worker threads (default: all cores). Results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

/// Input profile in PrefLib layout (soc/soi/toc/toi, classic or 2023 style).
#[derive(Args, Debug)]
pub struct Input {
    #[arg(long = "in", value_name = "FILE")]
    pub input: PathBuf,
}

#[derive(Args, Debug)]
pub struct TieBreakArg {
    /// Tie-break for last place: lexmin, lexmax, random:<seed> or script:<i,j,...>.
    #[arg(long = "tie-break", default_value = "lexmin", value_parser = parse_policy)]
    pub policy: TieBreakPolicy,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Round-by-round count as CSV (h,round,candidate,tally,eliminated_flag,exhausted_after).
    Tabulate {
        #[command(flatten)]
        input: Input,
        /// Only this ballot length; default is every length 1..=k.
        #[arg(long)]
        length: Option<usize>,
        #[command(flatten)]
        tie: TieBreakArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Winner at every ballot length 1..k-1 as "h,winner" rows.
    Sequence {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        tie: TieBreakArg,
    },
    /// Tie class of a profile across all ballot lengths.
    Classify {
        #[command(flatten)]
        input: Input,
        /// Maximum tie-break branches explored before answering "unknown".
        #[arg(long, default_value_t = irvlab::DEFAULT_BRANCH_BUDGET)]
        budget: u64,
    },
    /// Build a profile with a prescribed winner sequence.
    Construct(ConstructArgs),
    /// Voter lower bounds for k-1 truncation winners under each tie class.
    Bounds {
        #[arg(long)]
        k: usize,
    },
    /// Single-peaked and single-crossing checks.
    Restrict(RestrictArgs),
    /// Exact 1-Euclidean profile from candidate positions.
    Euclid {
        /// Comma-separated positions; "p/q", decimals and integers are exact.
        #[arg(long)]
        positions: String,
        /// Cell table CSV (left,right,weight,ranking).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// LP search for a full-ballot profile with k-1 truncation winners.
    LpSearch {
        #[arg(long)]
        k: usize,
        /// Try every elimination matrix, including for k >= 8.
        #[arg(long)]
        all_orders: bool,
        /// Largest gap constant C tried (powers of two from 1).
        #[arg(long, default_value_t = 64)]
        cmax: u64,
        #[arg(long)]
        max_attempts: Option<u64>,
        #[arg(long, value_name = "SECONDS")]
        time_limit: Option<u64>,
        /// Profile output; the report goes to <out>.json.
        #[arg(long)]
        out: PathBuf,
    },
    /// PrefLib ingestion and corpus analysis.
    #[command(subcommand)]
    Preflib(PreflibCommand),
    /// Simulation experiments.
    #[command(subcommand)]
    Simulate(SimulateCommand),
    /// Bootstrap win frequencies per ballot length (h,candidate,frequency,actual_winner_flag).
    Resample {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = irvlab::truncation::DEFAULT_TRIALS)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        tie: TieBreakArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConstructKind {
    Ctf,
    TieFree,
    SinglePeaked,
    KTypes,
    FullBallot,
    MinLength,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Ctf,
    TieFree,
}

#[derive(Args, Debug)]
pub struct ConstructArgs {
    #[arg(long, value_enum)]
    pub kind: ConstructKind,
    /// Candidates (ctf, tie-free, k-types) or distinct winners κ (single-peaked, full-ballot, min-length).
    #[arg(long)]
    pub k: usize,
    /// Target winners w_1..w_{k-1} in elimination-order labels, comma-separated.
    #[arg(long, value_delimiter = ',')]
    pub sequence: Vec<u32>,
    /// For min-length: every ballot has length at least κ − c.
    #[arg(long = "c", default_value_t = 0)]
    pub c: usize,
    /// Base construction padded by full-ballot and min-length.
    #[arg(long, value_enum, default_value = "ctf")]
    pub variant: VariantArg,
    /// Profile output; the sidecar goes to <out>.json.
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Args, Debug)]
pub struct RestrictArgs {
    #[command(flatten)]
    pub input: Input,
    /// Check single-peakedness on this axis (comma-separated candidate numbers).
    #[arg(long, value_delimiter = ',')]
    pub axis: Vec<u32>,
    /// Search for an axis the profile is single-peaked on.
    #[arg(long)]
    pub find_axis: bool,
    /// Refuse the axis search above this many candidates.
    #[arg(long, default_value_t = irvlab::restrictions::DEFAULT_AXIS_LIMIT)]
    pub k_limit: usize,
    /// Check single-crossing with voters in this order (zero-based indices into the expanded ballots).
    #[arg(long, value_delimiter = ',')]
    pub crossing_order: Vec<usize>,
}

#[derive(Subcommand, Debug)]
pub enum PreflibCommand {
    /// Parse one file, report its shape and optionally re-emit it.
    Parse {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Per-family summary table of a set of files or directories.
    Summarize {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Download the files named in a manifest into the cache.
    Fetch {
        #[arg(long)]
        base_url: String,
        /// One relative path per line.
        #[arg(long)]
        manifest: PathBuf,
        /// Cache directory; defaults to $IRVLAB_CACHE, then ./preflib-cache.
        #[arg(long, env = "IRVLAB_CACHE", default_value = "preflib-cache")]
        cache: PathBuf,
    },
    /// Winners at every ballot length up to the one used, per election.
    Audit {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        #[command(flatten)]
        tie: TieBreakArg,
        /// Per-election CSV; the comparison table goes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    General,
    Euclidean,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum BallotsArg {
    Full,
    Partial,
}

#[derive(Args, Debug)]
pub struct SimArgs {
    #[arg(long, default_value_t = 2)]
    pub k_min: usize,
    #[arg(long, default_value_t = 40)]
    pub k_max: usize,
    #[arg(long)]
    pub trials: Option<u64>,
    #[arg(long, default_value_t = irvlab::sim::DEFAULT_VOTERS)]
    pub voters: u64,
    #[arg(long, value_enum, default_value = "general")]
    pub kind: KindArg,
    #[arg(long, value_enum, default_value = "full")]
    pub ballots: BallotsArg,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum SimulateCommand {
    /// P[winner at length h = full winner] per (k, h): CSV k,h,probability,trials.
    Heatmap(SimArgs),
    /// Distinct truncation winners per k: CSV k,mean,std,max,trials,kind,ballots.
    Winners(SimArgs),
}

fn parse_policy(s: &str) -> Result<TieBreakPolicy, String> {
    match s {
        "lexmin" => return Ok(TieBreakPolicy::LexicographicMin),
        "lexmax" => return Ok(TieBreakPolicy::LexicographicMax),
        _ => {}
    }
    if let Some(seed) = s.strip_prefix("random:") {
        return seed.parse().map(TieBreakPolicy::SeededRandom).map_err(|e| format!("bad seed: {e}"));
    }
    if let Some(list) = s.strip_prefix("script:") {
        return list
            .split(',')
            .filter(|t| !t.is_empty())
            .map(|t| t.trim().parse::<usize>().map_err(|e| format!("bad script entry {t:?}: {e}")))
            .collect::<Result<_, _>>()
            .map(TieBreakPolicy::Scripted);
    }
    Err(format!("unknown tie-break {s:?}; expected lexmin, lexmax, random:<seed> or script:<list>"))
}

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("error: --threads must be at least 1");
            std::process::exit(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            log::warn!("could not size thread pool: {e}");
        }
    }
    if let Err(f) = commands::run(cli.command) {
        eprintln!("error: {f}");
        std::process::exit(f.code());
    }
}
