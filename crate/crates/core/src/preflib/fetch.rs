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

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FetchError {
    #[error("manifest line {line}: {reason}")]
    Manifest { line: usize, reason: String },
    #[error("download of {url} failed: {reason}")]
    Http { url: String, reason: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FetchReport {
    pub downloaded: Vec<PathBuf>,
    pub cached: Vec<PathBuf>,
}

/// Reads a manifest of relative file paths, one per line; blank lines and
/// `#` comments are skipped.
pub fn read_manifest(text: &str) -> Result<Vec<String>, FetchError> {
    let mut out = Vec::new();
    for (i, l) in text.lines().enumerate() {
        let l = l.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        if l.starts_with('/') || l.split('/').any(|part| part == "..") {
            return Err(FetchError::Manifest { line: i + 1, reason: format!("path {l:?} escapes the cache") });
        }
        out.push(l.to_string());
    }
    Ok(out)
}

/// Downloads `base_url/<file>` into `cache/<file>` for each file not yet
/// cached. Files are written to a temporary name and renamed into place.
pub fn fetch(base_url: &str, files: &[String], cache: &Path) -> Result<FetchReport, FetchError> {
    let mut report = FetchReport::default();
    let base = base_url.trim_end_matches('/');
    for f in files {
        let target = cache.join(f);
        if target.exists() {
            report.cached.push(target);
            continue;
        }
        let url = format!("{base}/{f}");
        let http = |reason: String| FetchError::Http { url: url.clone(), reason };
        let bytes = ureq::get(&url)
            .call()
            .map_err(|e| http(e.to_string()))?
            .body_mut()
            .read_to_vec()
            .map_err(|e| http(e.to_string()))?;
        let dir = target.parent().unwrap_or(cache);
        fs::create_dir_all(dir)?;
        let tmp = dir.join(format!(".{}.part", target.file_name().and_then(|s| s.to_str()).unwrap_or("download")));
        {
            let mut out = fs::File::create(&tmp)?;
            out.write_all(&bytes)?;
            out.sync_all()?;
        }
        fs::rename(&tmp, &target)?;
        log::info!("fetched {url}");
        report.downloaded.push(target);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn manifest_parsing() {
        let m = read_manifest("# comment\n\nburlington/a.toi\n sf/b.soi \n").unwrap();
        assert_eq!(m, vec!["burlington/a.toi", "sf/b.soi"]);
        assert!(read_manifest("../etc/passwd").is_err());
        assert!(read_manifest("/abs").is_err());
    }

    #[test]
    fn cached_files_are_not_downloaded() {
        let dir = std::env::temp_dir().join(format!("irvlab-fetch-{}", std::process::id()));
        fs::create_dir_all(dir.join("x")).unwrap();
        fs::write(dir.join("x/a.soi"), "1\n1,A\n1,1,1\n1,1\n").unwrap();
        let r = fetch("http://invalid.invalid", &["x/a.soi".to_string()], &dir).unwrap();
        assert_eq!(r.cached.len(), 1);
        assert!(r.downloaded.is_empty());
        fs::remove_dir_all(dir).unwrap();
    }
}
