//! The 24 standard pieces, row puzzles built from them, and supports.
//!
//! A piece grid is stored as `[top_left, top_right, bottom_left, bottom_right]`
//! holding a permutation of `1..=4`. Puzzles are two rows of equal length
//! `n + 1` labelled bijectively by `1..=2n+2`; the `k`-th piece of a puzzle is
//! the reduction of the 2x2 window on columns `k` and `k + 1`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PieceClass {
    A,
    B,
    C,
    D,
}

impl PieceClass {
    pub const ALL: [PieceClass; 4] = [PieceClass::A, PieceClass::B, PieceClass::C, PieceClass::D];

    /// Column orientations `(left_increases, right_increases)`, where a column
    /// "increases" when its top label exceeds its bottom label.
    pub fn orientation(self) -> (bool, bool) {
        match self {
            PieceClass::A => (true, true),
            PieceClass::B => (true, false),
            PieceClass::C => (false, true),
            PieceClass::D => (false, false),
        }
    }

    pub fn from_orientation(left_up: bool, right_up: bool) -> PieceClass {
        match (left_up, right_up) {
            (true, true) => PieceClass::A,
            (true, false) => PieceClass::B,
            (false, true) => PieceClass::C,
            (false, false) => PieceClass::D,
        }
    }

    fn ordinal(self) -> u8 {
        self as u8
    }

    pub fn letter(self) -> char {
        (b'A' + self.ordinal()) as char
    }

    pub fn from_letter(c: char) -> Option<PieceClass> {
        match c.to_ascii_uppercase() {
            'A' => Some(PieceClass::A),
            'B' => Some(PieceClass::B),
            'C' => Some(PieceClass::C),
            'D' => Some(PieceClass::D),
            _ => None,
        }
    }
}

impl fmt::Display for PieceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

// Canonical order A1..A6, B1..B6, C1..C6, D1..D6 with Han's letter codes.
const TABLE: [([u8; 4], char); 24] = [
    ([4, 3, 1, 2], 'A'),
    ([3, 4, 1, 2], 'B'),
    ([2, 4, 1, 3], 'D'),
    ([3, 4, 2, 1], 'H'),
    ([4, 3, 2, 1], 'G'),
    ([4, 2, 3, 1], 'N'),
    ([4, 2, 1, 3], 'C'),
    ([3, 2, 1, 4], 'E'),
    ([2, 3, 1, 4], 'F'),
    ([3, 1, 2, 4], 'L'),
    ([4, 1, 2, 3], 'J'),
    ([4, 1, 3, 2], 'Q'),
    ([1, 3, 4, 2], 'X'),
    ([1, 4, 3, 2], 'R'),
    ([1, 4, 2, 3], 'K'),
    ([2, 4, 3, 1], 'P'),
    ([2, 3, 4, 1], 'V'),
    ([3, 2, 4, 1], 'U'),
    ([1, 2, 4, 3], 'Z'),
    ([1, 2, 3, 4], 'T'),
    ([1, 3, 2, 4], 'M'),
    ([2, 1, 3, 4], 'S'),
    ([2, 1, 4, 3], 'Y'),
    ([3, 1, 4, 2], 'W'),
];

const fn pattern_key(ranks: [u8; 4]) -> usize {
    (ranks[0] as usize) << 6
        | (ranks[1] as usize) << 4
        | (ranks[2] as usize) << 2
        | ranks[3] as usize
}

const NO_PIECE: u8 = u8::MAX;

// Maps the zero-based rank pattern of a window to its piece id.
const PATTERN_TO_PIECE: [u8; 256] = {
    let mut lut = [NO_PIECE; 256];
    let mut id = 0;
    while id < 24 {
        let g = TABLE[id].0;
        lut[pattern_key([g[0] - 1, g[1] - 1, g[2] - 1, g[3] - 1])] = id as u8;
        id += 1;
    }
    lut
};

/// One of the 24 standard pieces, identified by its canonical position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StandardPiece(u8);

impl StandardPiece {
    pub const COUNT: usize = 24;

    pub fn from_id(id: u8) -> Option<StandardPiece> {
        (usize::from(id) < Self::COUNT).then_some(StandardPiece(id))
    }

    /// `index` is 1-based, as in `A1`..`A6`.
    pub fn new(class: PieceClass, index: u8) -> Option<StandardPiece> {
        (1..=6)
            .contains(&index)
            .then(|| StandardPiece(class.ordinal() * 6 + index - 1))
    }

    pub fn id(self) -> u8 {
        self.0
    }

    pub fn class(self) -> PieceClass {
        PieceClass::ALL[usize::from(self.0 / 6)]
    }

    pub fn index(self) -> u8 {
        self.0 % 6 + 1
    }

    pub fn han_letter(self) -> char {
        TABLE[usize::from(self.0)].1
    }

    /// `[top_left, top_right, bottom_left, bottom_right]`.
    pub fn grid(self) -> [u8; 4] {
        TABLE[usize::from(self.0)].0
    }

    pub fn code(self) -> String {
        format!("{}{}", self.class(), self.index())
    }

    pub fn all() -> impl Iterator<Item = StandardPiece> + Clone {
        (0..Self::COUNT as u8).map(StandardPiece)
    }

    pub fn from_han_letter(c: char) -> Option<StandardPiece> {
        let c = c.to_ascii_uppercase();
        TABLE
            .iter()
            .position(|&(_, letter)| letter == c)
            .map(|p| StandardPiece(p as u8))
    }
}

impl fmt::Display for StandardPiece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.class(), self.index())
    }
}

impl FromStr for StandardPiece {
    type Err = Error;

    /// Accepts `A1`..`D6` or a single Han letter.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let err = || Error::Parse {
            what: "standard piece",
            input: s.to_string(),
        };
        let mut chars = s.chars();
        let first = chars.next().ok_or_else(err)?;
        let rest = chars.as_str();
        if rest.is_empty() {
            return StandardPiece::from_han_letter(first).ok_or_else(err);
        }
        let class = PieceClass::from_letter(first).ok_or_else(err)?;
        let index: u8 = rest.parse().map_err(|_| err())?;
        StandardPiece::new(class, index).ok_or_else(err)
    }
}

pub fn piece_table() -> Vec<StandardPiece> {
    StandardPiece::all().collect()
}

#[inline]
pub(crate) fn reduce_distinct(q: [u32; 4]) -> StandardPiece {
    let rank = |i: usize| q.iter().filter(|&&x| x < q[i]).count() as u8;
    let id = PATTERN_TO_PIECE[pattern_key([rank(0), rank(1), rank(2), rank(3)])];
    debug_assert_ne!(id, NO_PIECE);
    StandardPiece(id)
}

/// Reduces a window `[top_left, top_right, bottom_left, bottom_right]` of
/// pairwise distinct labels to the standard piece with the same relative order.
pub fn reduce(quad: [u32; 4]) -> Result<StandardPiece> {
    for i in 0..4 {
        for j in i + 1..4 {
            if quad[i] == quad[j] {
                return Err(Error::InvalidWindow(quad));
            }
        }
    }
    Ok(reduce_distinct(quad))
}

/// A set of standard pieces. Iteration is in canonical (class, index) order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Support(u32);

impl Support {
    pub const FULL: Support = Support((1 << 24) - 1);

    pub fn empty() -> Support {
        Support(0)
    }

    pub fn from_bits(bits: u32) -> Support {
        Support(bits & Self::FULL.0)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn contains(self, piece: StandardPiece) -> bool {
        self.0 >> piece.0 & 1 == 1
    }

    pub fn insert(&mut self, piece: StandardPiece) {
        self.0 |= 1 << piece.0;
    }

    pub fn with(mut self, piece: StandardPiece) -> Support {
        self.insert(piece);
        self
    }

    pub fn union(self, other: Support) -> Support {
        Support(self.0 | other.0)
    }

    pub fn is_subset(self, other: Support) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = StandardPiece> {
        StandardPiece::all().filter(move |&p| self.contains(p))
    }

    pub fn map(self, f: impl Fn(StandardPiece) -> StandardPiece) -> Support {
        self.iter().map(f).collect()
    }

    /// Pieces of one class with the given 1-based indices, e.g. `A_{1,2,3}`.
    pub fn of_class(class: PieceClass, indices: impl IntoIterator<Item = u8>) -> Support {
        indices
            .into_iter()
            .filter_map(|i| StandardPiece::new(class, i))
            .collect()
    }

    pub fn codes(self) -> Vec<String> {
        self.iter().map(|p| p.code()).collect()
    }
}

impl FromIterator<StandardPiece> for Support {
    fn from_iter<I: IntoIterator<Item = StandardPiece>>(iter: I) -> Self {
        let mut s = Support::empty();
        for p in iter {
            s.insert(p);
        }
        s
    }
}

impl fmt::Display for Support {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.codes().join(","))
    }
}

impl FromStr for Support {
    type Err = Error;

    /// Comma separated codes; `A1,A2,A3` and `A,B,D` denote the same support.
    /// An empty string (or `{}`) is the empty support.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('{').trim_end_matches('}');
        s.split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(StandardPiece::from_str)
            .collect()
    }
}

impl Serialize for Support {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.codes().join(","))
    }
}

impl<'de> Deserialize<'de> for Support {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A standard n-puzzle: two rows of `n + 1` labels holding `1..=2n+2`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Puzzle {
    top: Vec<u32>,
    bottom: Vec<u32>,
}

impl Puzzle {
    pub fn new(top: Vec<u32>, bottom: Vec<u32>) -> Result<Puzzle> {
        if top.len() != bottom.len() {
            return Err(Error::InvalidPuzzle(format!(
                "rows have different lengths {} and {}",
                top.len(),
                bottom.len()
            )));
        }
        if top.len() < 2 {
            return Err(Error::InvalidPuzzle(
                "a puzzle needs at least two columns".into(),
            ));
        }
        let m = 2 * top.len();
        let mut seen = vec![false; m + 1];
        for &x in top.iter().chain(&bottom) {
            let x = x as usize;
            if x == 0 || x > m || seen[x] {
                return Err(Error::InvalidPuzzle(format!(
                    "labels must be exactly 1..={m}, each once"
                )));
            }
            seen[x] = true;
        }
        Ok(Puzzle { top, bottom })
    }

    pub(crate) fn new_unchecked(top: Vec<u32>, bottom: Vec<u32>) -> Puzzle {
        Puzzle { top, bottom }
    }

    /// Number of pieces.
    pub fn n(&self) -> usize {
        self.top.len() - 1
    }

    pub fn columns(&self) -> usize {
        self.top.len()
    }

    pub fn top(&self) -> &[u32] {
        &self.top
    }

    pub fn bottom(&self) -> &[u32] {
        &self.bottom
    }

    pub fn window(&self, k: usize) -> [u32; 4] {
        [
            self.top[k],
            self.top[k + 1],
            self.bottom[k],
            self.bottom[k + 1],
        ]
    }

    pub fn pieces(&self) -> Vec<StandardPiece> {
        (0..self.n())
            .map(|k| reduce_distinct(self.window(k)))
            .collect()
    }

    pub fn minimal_support(&self) -> Support {
        self.pieces().into_iter().collect()
    }

    pub fn is_supported(&self, support: Support) -> bool {
        (0..self.n()).all(|k| support.contains(reduce_distinct(self.window(k))))
    }
}

pub fn pieces_of(puzzle: &Puzzle) -> Vec<StandardPiece> {
    puzzle.pieces()
}

pub fn minimal_support(puzzle: &Puzzle) -> Support {
    puzzle.minimal_support()
}

pub fn is_supported(puzzle: &Puzzle, support: Support) -> bool {
    puzzle.is_supported(support)
}

fn join(row: &[u32]) -> String {
    row.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")
}

impl fmt::Display for Puzzle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} / {}]", join(&self.top), join(&self.bottom))
    }
}

impl FromStr for Puzzle {
    type Err = Error;

    /// Two rows separated by `/` or a newline, e.g. `3 6 8 7 / 1 2 4 5`.
    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse {
            what: "puzzle",
            input: s.to_string(),
        };
        let body = s.trim().trim_start_matches('[').trim_end_matches(']');
        let rows: Vec<&str> = if body.contains('/') {
            body.split('/').collect()
        } else {
            body.lines().filter(|l| !l.trim().is_empty()).collect()
        };
        if rows.len() != 2 {
            return Err(err());
        }
        let parse_row = |r: &str| -> Result<Vec<u32>> {
            r.split_whitespace()
                .map(|t| t.parse().map_err(|_| err()))
                .collect()
        };
        Puzzle::new(parse_row(rows[0])?, parse_row(rows[1])?)
    }
}
