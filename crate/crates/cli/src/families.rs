//! The two families of supports built from simple pieces and converters:
//!
//! 1. a simple piece (or its row swap) with a set of `B_i` or of `C_i`;
//! 2. a simple piece, a set of `B_i` or of `C_i`, and a half-turned simple piece.

use std::collections::{BTreeSet, HashMap};

use num_bigint::BigUint;
use puzzle_core::counting::count_prefix;
use puzzle_core::theorems::{ConverterKind, SimplePieceId, UNSOLVED_SIMPLE_PIECE};
use puzzle_core::transforms::{f2, rotate_half_turn};
use puzzle_core::{PieceClass, Support};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::identify::registry_matches;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, clap::ValueEnum)]
pub enum FamilyKind {
    /// Simple piece with converters.
    #[value(name = "1")]
    #[serde(rename = "1")]
    SimpleWithConverters,
    /// Simple piece, converters, rotated simple piece.
    #[value(name = "2")]
    #[serde(rename = "2")]
    SimplePair,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub x: SimplePieceId,
    /// Kind 1 only: use the row swap of `P_x` instead of `P_x`.
    pub row_swapped: bool,
    pub converter: ConverterKind,
    /// Bit `i - 1` set when converter `i` is present.
    pub subset: u8,
    pub z: Option<SimplePieceId>,
}

impl FamilySpec {
    pub fn converter_indices(&self) -> impl Iterator<Item = u8> + '_ {
        (1..=6u8).filter(|i| self.subset >> (i - 1) & 1 == 1)
    }

    pub fn support(&self) -> Support {
        let class = match self.converter {
            ConverterKind::B => PieceClass::B,
            ConverterKind::C => PieceClass::C,
        };
        let left = if self.row_swapped {
            f2(self.x.support())
        } else {
            self.x.support()
        };
        let mut s = left.union(Support::of_class(class, self.converter_indices()));
        if let Some(z) = self.z {
            s = s.union(rotate_half_turn(z.support()));
        }
        s
    }

    /// For example `P4+B{1,3}`, `F2(P4)+C{}` or `P4+B{1}+F1F2(P7)`.
    pub fn descriptor(&self) -> String {
        let idx: Vec<String> = self.converter_indices().map(|i| i.to_string()).collect();
        let left = if self.row_swapped {
            format!("F2(P{})", self.x)
        } else {
            format!("P{}", self.x)
        };
        let mut d = format!("{left}+{}{{{}}}", self.converter, idx.join(","));
        if let Some(z) = self.z {
            d.push_str(&format!("+F1F2(P{z})"));
        }
        d
    }

    /// Whether a constituent simple piece has no known corner refinement.
    pub fn formula_free(&self) -> bool {
        !self.x.has_refinement() || self.z.is_some_and(|z| !z.has_refinement())
    }
}

/// Every spec of `kind`; the unsolved simple piece is left out unless asked for.
pub fn family_specs(kind: FamilyKind, include_unsolved: bool) -> Vec<FamilySpec> {
    let pieces: Vec<SimplePieceId> = SimplePieceId::all()
        .filter(|p| include_unsolved || p.x() != UNSOLVED_SIMPLE_PIECE)
        .collect();
    let mut out = Vec::new();
    for &x in &pieces {
        let (lefts, rights): (&[bool], Vec<Option<SimplePieceId>>) = match kind {
            FamilyKind::SimpleWithConverters => (&[false, true], vec![None]),
            FamilyKind::SimplePair => (&[false], pieces.iter().copied().map(Some).collect()),
        };
        for &row_swapped in lefts {
            for &z in &rights {
                for converter in [ConverterKind::B, ConverterKind::C] {
                    for subset in 0..64u8 {
                        out.push(FamilySpec {
                            kind,
                            x,
                            row_swapped,
                            converter,
                            subset,
                            z,
                        });
                    }
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyRow {
    pub descriptor: String,
    pub kind: FamilyKind,
    pub support: String,
    pub prefix: Vec<String>,
    pub registry_match: Option<String>,
    pub formula_free: bool,
}

/// Flat form of [`FamilyRow`] for CSV, with the prefix joined by `;`.
#[derive(Debug, Clone, Serialize)]
pub struct FamilyCsvRow<'a> {
    pub descriptor: &'a str,
    pub kind: FamilyKind,
    pub support: &'a str,
    pub prefix: String,
    pub registry_match: &'a str,
    pub formula_free: bool,
}

impl FamilyRow {
    pub fn csv(&self) -> FamilyCsvRow<'_> {
        FamilyCsvRow {
            descriptor: &self.descriptor,
            kind: self.kind,
            support: &self.support,
            prefix: self.prefix.join(";"),
            registry_match: self.registry_match.as_deref().unwrap_or(""),
            formula_free: self.formula_free,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SweepSummary {
    pub families: usize,
    pub distinct_supports: usize,
}

struct Computed {
    prefix: Vec<String>,
    registry_match: Option<String>,
}

/// Counts each distinct support once, in parallel, then hands the rows to
/// `sink` in spec order.
pub fn sweep(
    specs: &[FamilySpec],
    nmax: usize,
    mut sink: impl FnMut(FamilyRow) -> Result<()>,
) -> Result<SweepSummary> {
    let distinct: Vec<Support> = specs
        .iter()
        .map(FamilySpec::support)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let computed: HashMap<Support, Computed> = distinct
        .par_iter()
        .map(|&s| {
            let prefix: Vec<BigUint> = count_prefix(s, nmax);
            let registry_match = registry_matches(&prefix)
                .into_iter()
                .next()
                .map(|m| m.label);
            let prefix = prefix.iter().map(ToString::to_string).collect();
            (
                s,
                Computed {
                    prefix,
                    registry_match,
                },
            )
        })
        .collect();
    for spec in specs {
        let support = spec.support();
        let c = &computed[&support];
        sink(FamilyRow {
            descriptor: spec.descriptor(),
            kind: spec.kind,
            support: support.codes().join(","),
            prefix: c.prefix.clone(),
            registry_match: c.registry_match.clone(),
            formula_free: spec.formula_free(),
        })?;
    }
    Ok(SweepSummary {
        families: specs.len(),
        distinct_supports: distinct.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptor_counts() {
        assert_eq!(
            family_specs(FamilyKind::SimpleWithConverters, false).len(),
            19 * 64 * 2 * 2
        );
        assert_eq!(
            family_specs(FamilyKind::SimplePair, false).len(),
            19 * 19 * 64 * 2
        );
        assert_eq!(
            family_specs(FamilyKind::SimpleWithConverters, true).len(),
            20 * 64 * 2 * 2
        );
    }

    #[test]
    fn descriptors_are_unique() {
        for kind in [FamilyKind::SimpleWithConverters, FamilyKind::SimplePair] {
            let specs = family_specs(kind, true);
            let set: BTreeSet<String> = specs.iter().map(FamilySpec::descriptor).collect();
            assert_eq!(set.len(), specs.len());
        }
    }

    #[test]
    fn descriptor_format() {
        let spec = FamilySpec {
            kind: FamilyKind::SimplePair,
            x: SimplePieceId::new(4).unwrap(),
            row_swapped: false,
            converter: ConverterKind::B,
            subset: 0b101,
            z: Some(SimplePieceId::new(7).unwrap()),
        };
        assert_eq!(spec.descriptor(), "P4+B{1,3}+F1F2(P7)");
        assert!(!spec.formula_free());
    }

    #[test]
    fn unsolved_piece_is_flagged() {
        let specs = family_specs(FamilyKind::SimpleWithConverters, true);
        assert!(specs
            .iter()
            .filter(|s| s.x.x() == 10)
            .all(FamilySpec::formula_free));
    }

    #[test]
    fn single_family_support() {
        let spec = FamilySpec {
            kind: FamilyKind::SimpleWithConverters,
            x: SimplePieceId::new(4).unwrap(),
            row_swapped: false,
            converter: ConverterKind::B,
            subset: 1,
            z: None,
        };
        assert_eq!(spec.support(), "A1,A2,A3,B1".parse().unwrap());
    }
}
