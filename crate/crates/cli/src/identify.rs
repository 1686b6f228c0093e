use std::fmt;

use num_bigint::BigUint;
use puzzle_core::sequences::registry;
use serde::Serialize;

use crate::error::{CliError, Result};
use crate::oeis::OeisEntry;

/// Fewest terms worth identifying.
pub const MIN_TERMS: usize = 4;

/// Index shifts tried against each registry sequence.
pub const MAX_OFFSET: usize = 3;

/// A rational prefactor `num / den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Factor {
    pub num: u32,
    pub den: u32,
}

/// Prefactors tried, simplest first.
pub const FACTORS: [Factor; 4] = [
    Factor { num: 1, den: 1 },
    Factor { num: 2, den: 1 },
    Factor { num: 4, den: 3 },
    Factor { num: 3, den: 2 },
];

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatchSource {
    Registry,
    Oeis,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SequenceMatch {
    pub source: MatchSource,
    /// "registry match: catalan, offset +1" or "candidate match: A000108 ...".
    pub label: String,
    pub name: String,
    pub oeis: Option<String>,
    pub offset: Option<usize>,
    pub factor: Option<String>,
}

/// Registry sequences `a` with `s_n = factor * a(n + offset)` for every
/// `n` in `1..=prefix.len()`, where `prefix[0] = s_1`.
pub fn registry_matches(prefix: &[BigUint]) -> Vec<SequenceMatch> {
    let mut ranked = Vec::new();
    for (rank, seq) in registry().iter().enumerate() {
        for offset in 0..=MAX_OFFSET {
            let Some(terms) = (1..=prefix.len())
                .map(|n| seq.term(n + offset))
                .collect::<Option<Vec<_>>>()
            else {
                continue;
            };
            for (fi, factor) in FACTORS.iter().enumerate() {
                let hit = prefix
                    .iter()
                    .zip(&terms)
                    .all(|(s, a)| s * factor.den == a * factor.num);
                if hit {
                    ranked.push(((fi, offset, rank), seq, offset, *factor));
                }
            }
        }
    }
    ranked.sort_by_key(|r| r.0);
    ranked
        .into_iter()
        .map(|(_, seq, offset, factor)| {
            let scale = if factor.num == 1 && factor.den == 1 {
                String::new()
            } else {
                format!(", factor {factor}")
            };
            SequenceMatch {
                source: MatchSource::Registry,
                label: format!("registry match: {}, offset +{offset}{scale}", seq.name),
                name: seq.name.to_string(),
                oeis: seq.oeis.map(str::to_string),
                offset: Some(offset),
                factor: Some(factor.to_string()),
            }
        })
        .collect()
}

pub fn oeis_matches(entries: &[OeisEntry]) -> Vec<SequenceMatch> {
    entries
        .iter()
        .map(|e| SequenceMatch {
            source: MatchSource::Oeis,
            label: format!("candidate match: {} {}", e.id, e.name),
            name: e.name.clone(),
            oeis: Some(e.id.clone()),
            offset: None,
            factor: None,
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct Identification {
    pub support: String,
    pub nmax: usize,
    pub prefix: Vec<String>,
    pub matches: Vec<SequenceMatch>,
    pub note: Option<String>,
}

pub fn check_prefix_len(nmax: usize) -> Result<()> {
    if nmax < MIN_TERMS {
        return Err(CliError::Usage(format!(
            "identification needs nmax >= {MIN_TERMS}, got {nmax}"
        )));
    }
    Ok(())
}

pub fn identification(
    support: String,
    prefix: &[BigUint],
    oeis: Option<&[OeisEntry]>,
) -> Identification {
    let mut matches = registry_matches(prefix);
    let note = matches.is_empty().then(|| "no registry match".to_string());
    if let Some(entries) = oeis {
        matches.extend(oeis_matches(entries));
    }
    Identification {
        support,
        nmax: prefix.len(),
        prefix: prefix.iter().map(ToString::to_string).collect(),
        matches,
        note,
    }
}
