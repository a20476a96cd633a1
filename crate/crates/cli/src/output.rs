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

//! Exit-code classification, atomic file output and provenance sidecars.

use serde::Serialize;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

/// Why a command failed; decides the exit code.
#[derive(Debug)]
pub enum Failure {
    /// Bad flags or a missing input file (exit 2).
    Usage(anyhow::Error),
    /// Valid request the data or mathematics rejects (exit 1).
    Domain(anyhow::Error),
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Domain(_) => 1,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(e) | Failure::Domain(e) => write!(f, "{e:#}"),
        }
    }
}

pub type CmdResult<T = ()> = Result<T, Failure>;

pub trait Classify<T> {
    fn domain(self) -> CmdResult<T>;
    fn usage(self) -> CmdResult<T>;
}

impl<T, E: Into<anyhow::Error>> Classify<T> for Result<T, E> {
    fn domain(self) -> CmdResult<T> {
        self.map_err(|e| Failure::Domain(e.into()))
    }
    fn usage(self) -> CmdResult<T> {
        self.map_err(|e| Failure::Usage(e.into()))
    }
}

pub fn usage_err(msg: impl fmt::Display) -> Failure {
    Failure::Usage(anyhow::anyhow!("{msg}"))
}

pub fn domain_err(msg: impl fmt::Display) -> Failure {
    Failure::Domain(anyhow::anyhow!("{msg}"))
}

/// Writes `bytes` to a temporary file beside `path`, then renames it into
/// place, so readers never see a half-written file.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> CmdResult {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d.to_path_buf(),
        _ => PathBuf::from("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(&dir)
        .map_err(|e| usage_err(format!("cannot write to {}: {e}", dir.display())))?;
    tmp.write_all(bytes).domain()?;
    tmp.flush().domain()?;
    tmp.persist(path).map_err(|e| domain_err(format!("cannot write {}: {}", path.display(), e.error)))?;
    Ok(())
}

/// Where to send a textual artifact: a file when given, else stdout.
pub fn emit(out: Option<&Path>, text: &str) -> CmdResult {
    match out {
        Some(p) => write_atomic(p, text.as_bytes()),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).domain()?;
            stdout.flush().domain()
        }
    }
}

/// The provenance block every sidecar carries.
#[derive(Clone, Debug, Serialize)]
pub struct Provenance {
    pub command: Vec<String>,
    pub version: &'static str,
    pub seed: Option<u64>,
}

impl Provenance {
    pub fn new(seed: Option<u64>) -> Self {
        Provenance { command: std::env::args().collect(), version: env!("CARGO_PKG_VERSION"), seed }
    }
}

#[derive(Serialize)]
struct Sidecar<'a, T: Serialize> {
    provenance: &'a Provenance,
    #[serde(flatten)]
    body: &'a T,
}

/// `<out>.json` next to an artifact.
pub fn sidecar_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".json");
    PathBuf::from(s)
}

pub fn write_sidecar<T: Serialize>(out: &Path, prov: &Provenance, body: &T) -> CmdResult {
    let mut json = serde_json::to_string_pretty(&Sidecar { provenance: prov, body }).domain()?;
    json.push('\n');
    write_atomic(&sidecar_path(out), json.as_bytes())
}

/// Renders rows as CSV with the given header.
pub fn csv_string<R, I>(header: &[&str], rows: I) -> CmdResult<String>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator,
    R::Item: AsRef<[u8]>,
{
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).domain()?;
    for r in rows {
        w.write_record(r).domain()?;
    }
    let bytes = w.into_inner().map_err(|e| domain_err(e.to_string()))?;
    String::from_utf8(bytes).domain()
}
