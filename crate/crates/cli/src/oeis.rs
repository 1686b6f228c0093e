//! Opt-in OEIS search client with an on-disk response cache.
//!
//! Lookups never fail the caller: network trouble and malformed responses
//! log a warning and yield no entries. Only successful responses are cached.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::Duration;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{CliError, Result};

pub const CACHE_DIR_ENV: &str = "PUZZLES_OEIS_CACHE";
pub const BASE_URL_ENV: &str = "PUZZLES_OEIS_URL";
pub const DEFAULT_BASE_URL: &str = "https://oeis.org/search";
pub const MIN_TERMS: usize = 5;
pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(10);

// One request in flight per process.
static IN_FLIGHT: Mutex<()> = Mutex::new(());

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OeisEntry {
    pub id: String,
    pub name: String,
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    query: String,
    entries: Vec<OeisEntry>,
}

#[derive(Debug, Clone)]
pub struct OeisClient {
    base_url: String,
    cache_dir: Option<PathBuf>,
    timeout: Duration,
}

impl OeisClient {
    pub fn new(base_url: impl Into<String>, cache_dir: Option<PathBuf>) -> OeisClient {
        OeisClient {
            base_url: base_url.into(),
            cache_dir,
            timeout: DEFAULT_TIMEOUT,
        }
    }

    /// Base URL from `PUZZLES_OEIS_URL`; cache directory from the argument,
    /// then `PUZZLES_OEIS_CACHE`, then `$HOME/.cache/puzzles/oeis`.
    pub fn from_env(cache_dir: Option<PathBuf>) -> OeisClient {
        let base = std::env::var(BASE_URL_ENV).unwrap_or_else(|_| DEFAULT_BASE_URL.to_string());
        let dir = cache_dir
            .or_else(|| std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from))
            .or_else(|| {
                std::env::var_os("HOME").map(|h| Path::new(&h).join(".cache/puzzles/oeis"))
            });
        OeisClient::new(base, dir)
    }

    pub fn with_timeout(mut self, timeout: Duration) -> OeisClient {
        self.timeout = timeout;
        self
    }

    pub fn cache_dir(&self) -> Option<&Path> {
        self.cache_dir.as_deref()
    }

    /// Entries whose data contain `prefix`, from the cache if present.
    pub fn lookup(&self, prefix: &[BigUint]) -> Result<Vec<OeisEntry>> {
        if prefix.len() < MIN_TERMS {
            return Err(CliError::Usage(format!(
                "an OEIS lookup needs at least {MIN_TERMS} terms, got {}",
                prefix.len()
            )));
        }
        let query = query_string(prefix);
        if let Some(hit) = self.read_cache(&query) {
            log::debug!("OEIS cache hit for {query}");
            return Ok(hit);
        }
        let body = {
            let _guard = IN_FLIGHT.lock().unwrap_or_else(|e| e.into_inner());
            self.fetch(&query)
        };
        let body = match body {
            Ok(b) => b,
            Err(e) => {
                log::warn!("OEIS lookup failed, continuing without it: {e}");
                return Ok(Vec::new());
            }
        };
        match parse_response(&body) {
            Some(entries) => {
                self.write_cache(&query, &entries);
                Ok(entries)
            }
            None => {
                log::warn!("OEIS returned a malformed response, continuing without it");
                Ok(Vec::new())
            }
        }
    }

    fn fetch(&self, query: &str) -> std::result::Result<String, ureq::Error> {
        let agent: ureq::Agent = ureq::Agent::config_builder()
            .timeout_global(Some(self.timeout))
            .build()
            .into();
        agent
            .get(&self.base_url)
            .query("q", query)
            .query("fmt", "json")
            .call()?
            .body_mut()
            .read_to_string()
    }

    fn cache_path(&self, query: &str) -> Option<PathBuf> {
        let digest = Sha256::digest(query.as_bytes());
        self.cache_dir
            .as_ref()
            .map(|d| d.join(format!("{digest:x}.json")))
    }

    fn read_cache(&self, query: &str) -> Option<Vec<OeisEntry>> {
        let text = fs::read_to_string(self.cache_path(query)?).ok()?;
        let file: CacheFile = serde_json::from_str(&text).ok()?;
        (file.query == query).then_some(file.entries)
    }

    fn write_cache(&self, query: &str, entries: &[OeisEntry]) {
        let Some(path) = self.cache_path(query) else {
            return;
        };
        let file = CacheFile {
            query: query.to_string(),
            entries: entries.to_vec(),
        };
        let written = path
            .parent()
            .map_or(Ok(()), fs::create_dir_all)
            .and_then(|()| {
                fs::write(
                    &path,
                    serde_json::to_vec_pretty(&file).expect("serializable"),
                )
            });
        if let Err(e) = written {
            log::warn!("could not write OEIS cache {}: {e}", path.display());
        }
    }
}

pub fn query_string(prefix: &[BigUint]) -> String {
    prefix
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",")
}

/// Accepts both the bare-array and the `{"results": [...]}` response shapes;
/// `null` means no hits.
pub fn parse_response(body: &str) -> Option<Vec<OeisEntry>> {
    let v: Value = serde_json::from_str(body).ok()?;
    let results = match &v {
        Value::Object(o) => o.get("results")?,
        other => other,
    };
    match results {
        Value::Null => Some(Vec::new()),
        Value::Array(items) => items
            .iter()
            .map(|item| {
                let number = item.get("number")?.as_u64()?;
                let name = item.get("name")?.as_str()?;
                Some(OeisEntry {
                    id: format!("A{number:06}"),
                    name: name.to_string(),
                })
            })
            .collect(),
        _ => None,
    }
}
