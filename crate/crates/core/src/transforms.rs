//! Puzzle transformations (column mirror, row swap, label complement) and the
//! matching piece maps on supports.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::counting::BruteForce;
use crate::error::{Error, Result};
use crate::pieces::{Puzzle, StandardPiece, Support};

/// Mirror left to right: reverse both rows.
pub fn t1(p: &Puzzle) -> Puzzle {
    let mut top = p.top().to_vec();
    let mut bottom = p.bottom().to_vec();
    top.reverse();
    bottom.reverse();
    Puzzle::new_unchecked(top, bottom)
}

/// Swap the top and bottom rows.
pub fn t2(p: &Puzzle) -> Puzzle {
    Puzzle::new_unchecked(p.bottom().to_vec(), p.top().to_vec())
}

/// Replace each label `a` by `m + 1 - a` where `m = 2n + 2`.
pub fn t3(p: &Puzzle) -> Puzzle {
    let m = 2 * p.columns() as u32;
    let flip = |row: &[u32]| row.iter().map(|&a| m + 1 - a).collect();
    Puzzle::new_unchecked(flip(p.top()), flip(p.bottom()))
}

const fn class_of(id: u8) -> u8 {
    id / 6
}

const fn make(class: u8, index0: u8) -> u8 {
    class * 6 + index0
}

// class ordinals: A=0, B=1, C=2, D=3
const F1_TABLE: [u8; 24] = {
    let mut t = [0u8; 24];
    let mut id = 0u8;
    while id < 24 {
        let c = class_of(id);
        let target_class = match c {
            1 => 2,
            2 => 1,
            other => other,
        };
        t[id as usize] = make(target_class, (id % 6 + 3) % 6);
        id += 1;
    }
    t
};

const F2_TABLE: [u8; 24] = {
    let mut t = [0u8; 24];
    let mut id = 0u8;
    while id < 24 {
        t[id as usize] = make(3 - class_of(id), id % 6);
        id += 1;
    }
    t
};

// zero-based index image: 1->1, 2->5, 3->6, 4->4, 5->2, 6->3
const F3_INDEX: [u8; 6] = [0, 4, 5, 3, 1, 2];

const F3_TABLE: [u8; 24] = {
    let mut t = [0u8; 24];
    let mut id = 0u8;
    while id < 24 {
        t[id as usize] = make(3 - class_of(id), F3_INDEX[(id % 6) as usize]);
        id += 1;
    }
    t
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SupportMap {
    F1,
    F2,
    F3,
}

impl SupportMap {
    pub const ALL: [SupportMap; 3] = [SupportMap::F1, SupportMap::F2, SupportMap::F3];

    pub fn apply_piece(self, p: StandardPiece) -> StandardPiece {
        let table = match self {
            SupportMap::F1 => &F1_TABLE,
            SupportMap::F2 => &F2_TABLE,
            SupportMap::F3 => &F3_TABLE,
        };
        StandardPiece::from_id(table[usize::from(p.id())]).expect("table entries are valid ids")
    }

    pub fn apply(self, s: Support) -> Support {
        s.map(|p| self.apply_piece(p))
    }
}

impl fmt::Display for SupportMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SupportMap::F1 => "f1",
            SupportMap::F2 => "f2",
            SupportMap::F3 => "f3",
        };
        f.write_str(s)
    }
}

impl FromStr for SupportMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "f1" => Ok(SupportMap::F1),
            "f2" => Ok(SupportMap::F2),
            "f3" => Ok(SupportMap::F3),
            _ => Err(Error::Parse {
                what: "support map",
                input: s.to_string(),
            }),
        }
    }
}

pub fn f1(s: Support) -> Support {
    SupportMap::F1.apply(s)
}

pub fn f2(s: Support) -> Support {
    SupportMap::F2.apply(s)
}

pub fn f3(s: Support) -> Support {
    SupportMap::F3.apply(s)
}

/// Applies `maps` right to left, so `compose(&[F1, F2, F3], s)` is `F1(F2(F3(s)))`.
pub fn compose(maps: &[SupportMap], s: Support) -> Support {
    maps.iter().rev().fold(s, |acc, m| m.apply(acc))
}

/// `F1 ∘ F2`: sends a class-A family to its 180° rotation in class D.
pub fn rotate_half_turn(s: Support) -> Support {
    compose(&[SupportMap::F1, SupportMap::F2], s)
}

/// Turns a C-converter family into a B-converter family with equal counts.
pub fn converter_swap(s: Support) -> Support {
    compose(&[SupportMap::F1, SupportMap::F2, SupportMap::F3], s)
}

/// Default bound on `n` for [`check_invariance`].
pub const INVARIANCE_MAX_N: usize = 4;

/// Compares two independent brute-force counts of `support` and its image.
pub fn check_invariance(support: Support, n: usize, map: SupportMap) -> Result<bool> {
    check_invariance_bounded(support, n, map, INVARIANCE_MAX_N)
}

pub fn check_invariance_bounded(
    support: Support,
    n: usize,
    map: SupportMap,
    max_n: usize,
) -> Result<bool> {
    let engine = BruteForce::with_max_n(max_n);
    let lhs = engine.count(support, n)?;
    let rhs = engine.count(map.apply(support), n)?;
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pieces::reduce;

    fn sup(s: &str) -> Support {
        s.parse().unwrap()
    }

    fn puzzle(s: &str) -> Puzzle {
        s.parse().unwrap()
    }

    fn grid_puzzle(p: StandardPiece) -> Puzzle {
        let g = p.grid().map(u32::from);
        Puzzle::new(vec![g[0], g[1]], vec![g[2], g[3]]).unwrap()
    }

    #[test]
    fn puzzle_transform_examples() {
        assert_eq!(t2(&puzzle("3 4 / 1 2")), puzzle("1 2 / 3 4"));
        assert_eq!(t3(&puzzle("3 4 / 1 2")), puzzle("2 1 / 4 3"));
        assert_eq!(
            t1(&puzzle("3 6 8 7 / 1 2 4 5")),
            puzzle("7 8 6 3 / 5 4 2 1")
        );
    }

    #[test]
    fn support_map_examples() {
        assert_eq!(f2(sup("A1,A2,A3")), sup("D1,D2,D3"));
        assert_eq!(f1(sup("A1")), sup("A4"));
        assert_eq!(f3(sup("A2")), sup("D5"));
        assert_eq!(f1(sup("B1")), sup("C4"));
        assert_eq!(f3(sup("C3")), sup("B6"));
    }

    #[test]
    fn maps_are_bijections_of_finite_order() {
        for m in SupportMap::ALL {
            let image: Support = StandardPiece::all().map(|p| m.apply_piece(p)).collect();
            assert_eq!(image, Support::FULL);
            for p in StandardPiece::all() {
                assert_eq!(m.apply_piece(m.apply_piece(p)), p, "{m} is an involution");
            }
        }
    }

    // Each support map is the piece-level shadow of one puzzle transformation.
    #[test]
    fn maps_match_puzzle_transformations() {
        for p in StandardPiece::all() {
            let single = grid_puzzle(p);
            let via = |t: fn(&Puzzle) -> Puzzle| reduce(t(&single).window(0)).unwrap();
            assert_eq!(via(t1), SupportMap::F1.apply_piece(p), "{p}");
            assert_eq!(via(t2), SupportMap::F2.apply_piece(p), "{p}");
            assert_eq!(via(t3), SupportMap::F3.apply_piece(p), "{p}");
        }
    }

    #[test]
    fn row_swap_commutes_with_window_reduction() {
        let p = puzzle("3 6 8 7 / 1 2 4 5");
        let swapped = t2(&p);
        for k in 0..p.n() {
            let lhs = reduce(swapped.window(k)).unwrap();
            let rhs = SupportMap::F2.apply_piece(reduce(p.window(k)).unwrap());
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn invariance_examples() {
        assert!(check_invariance(sup("A1,A2"), 2, SupportMap::F2).unwrap());
        for m in SupportMap::ALL {
            assert!(check_invariance(Support::empty(), 3, m).unwrap());
        }
        assert!(check_invariance(sup("A2,A3"), 3, SupportMap::F1).unwrap());
        assert!(check_invariance(sup("A2,A3"), 5, SupportMap::F1).is_err());
    }

    #[test]
    fn composite_maps() {
        assert_eq!(rotate_half_turn(sup("A1,A2,A3")), sup("D4,D5,D6"));
        assert_eq!(converter_swap(sup("A2,A3")), sup("A2,A3"));
        assert_eq!(compose(&[], sup("B2")), sup("B2"));
    }
}
