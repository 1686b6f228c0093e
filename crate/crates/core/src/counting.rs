//! Two independent ways of counting standard puzzles over a support.
//!
//! [`BruteForce`] places actual labels column by column and checks every
//! window. [`corner_table`] runs a transfer over the merged ranks of the
//! rightmost column: after `m` columns the state `(u, v)` records the ranks of
//! the rightmost bottom and top labels among all `2m` labels placed so far.
//! Appending a column chooses target ranks `(u', v')` among `2m + 2`; whether
//! the new window is allowed depends only on how the two new labels interleave
//! with the old pair, so each target collects sums over at most nine
//! rectangles of old states, read off 2D prefix sums.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::pieces::{reduce_distinct, Puzzle, StandardPiece, Support};

/// Default bound on `n` for explicit enumeration.
pub const BRUTE_FORCE_MAX_N: usize = 5;

/// Explicit enumerator over labelled puzzles.
#[derive(Debug, Clone, Copy)]
pub struct BruteForce {
    max_n: usize,
}

impl Default for BruteForce {
    fn default() -> Self {
        BruteForce {
            max_n: BRUTE_FORCE_MAX_N,
        }
    }
}

struct Search<'a> {
    support: Support,
    columns: usize,
    top: Vec<u32>,
    bottom: Vec<u32>,
    on_leaf: &'a mut dyn FnMut(&[u32], &[u32]),
}

impl Search<'_> {
    fn fits(&self, col: usize, bottom: u32, top: u32) -> bool {
        col == 0
            || self.support.contains(reduce_distinct([
                self.top[col - 1],
                top,
                self.bottom[col - 1],
                bottom,
            ]))
    }

    fn run(&mut self, col: usize, used: u32) {
        if col == self.columns {
            (self.on_leaf)(&self.top, &self.bottom);
            return;
        }
        let labels = 2 * self.columns as u32;
        for b in 1..=labels {
            if used >> b & 1 == 1 {
                continue;
            }
            for t in 1..=labels {
                if t == b || used >> t & 1 == 1 || !self.fits(col, b, t) {
                    continue;
                }
                self.bottom.push(b);
                self.top.push(t);
                self.run(col + 1, used | 1 << b | 1 << t);
                self.bottom.pop();
                self.top.pop();
            }
        }
    }
}

impl BruteForce {
    pub fn with_max_n(max_n: usize) -> Self {
        BruteForce { max_n }
    }

    fn check(&self, n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::OutOfRange("a puzzle has at least one piece".into()));
        }
        if n > self.max_n {
            return Err(Error::BoundExceeded {
                what: "n",
                value: n,
                bound: self.max_n,
            });
        }
        Ok(())
    }

    fn search(
        support: Support,
        n: usize,
        first: Option<(u32, u32)>,
        on_leaf: &mut dyn FnMut(&[u32], &[u32]),
    ) {
        let columns = n + 1;
        let mut s = Search {
            support,
            columns,
            top: Vec::with_capacity(columns),
            bottom: Vec::with_capacity(columns),
            on_leaf,
        };
        match first {
            None => s.run(0, 0),
            Some((b, t)) => {
                s.bottom.push(b);
                s.top.push(t);
                s.run(1, 1 << b | 1 << t);
            }
        }
    }

    /// All puzzles supported by `support`, ordered by (bottom row, top row).
    pub fn enumerate(&self, support: Support, n: usize) -> Result<Vec<Puzzle>> {
        self.check(n)?;
        let mut out = Vec::new();
        Self::search(support, n, None, &mut |top, bottom| {
            out.push(Puzzle::new_unchecked(top.to_vec(), bottom.to_vec()));
        });
        out.sort_by(|a, b| (a.bottom(), a.top()).cmp(&(b.bottom(), b.top())));
        Ok(out)
    }

    /// Counts by enumeration, sharded over the first column.
    pub fn count(&self, support: Support, n: usize) -> Result<BigUint> {
        self.check(n)?;
        let labels = 2 * (n as u32 + 1);
        let firsts: Vec<(u32, u32)> = (1..=labels)
            .flat_map(|b| (1..=labels).filter(move |&t| t != b).map(move |t| (b, t)))
            .collect();
        let total: u64 = firsts
            .par_iter()
            .map(|&first| {
                let mut c = 0u64;
                Self::search(support, n, Some(first), &mut |_, _| c += 1);
                c
            })
            .sum();
        Ok(BigUint::from(total))
    }
}

pub fn enumerate_puzzles(support: Support, n: usize) -> Result<Vec<Puzzle>> {
    BruteForce::default().enumerate(support, n)
}

pub fn count_bruteforce(support: Support, n: usize) -> Result<BigUint> {
    BruteForce::default().count(support, n)
}

/// Counts refined by the ranks of the rightmost column: entry `(u, v)` is the
/// number of `(m - 1)`-piece puzzles whose bottom-right label is `u` and
/// top-right label is `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CornerTable {
    columns: usize,
    cells: Vec<BigUint>,
}

#[derive(Debug, Serialize)]
struct CornerEntry {
    bottom: usize,
    top: usize,
    count: String,
}

impl Serialize for CornerTable {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let entries: Vec<CornerEntry> = self
            .entries()
            .map(|((bottom, top), c)| CornerEntry {
                bottom,
                top,
                count: c.to_string(),
            })
            .collect();
        let mut st = serializer.serialize_struct("CornerTable", 3)?;
        st.serialize_field("columns", &self.columns)?;
        st.serialize_field("total", &self.total().to_string())?;
        st.serialize_field("entries", &entries)?;
        st.end()
    }
}

impl CornerTable {
    fn single_column() -> CornerTable {
        let mut t = CornerTable {
            columns: 1,
            cells: vec![BigUint::zero(); 4],
        };
        *t.cell_mut(1, 2) = BigUint::from(1u32);
        *t.cell_mut(2, 1) = BigUint::from(1u32);
        t
    }

    pub fn columns(&self) -> usize {
        self.columns
    }

    /// Number of labels, `2m`.
    pub fn labels(&self) -> usize {
        2 * self.columns
    }

    fn idx(&self, bottom: usize, top: usize) -> usize {
        (bottom - 1) * self.labels() + (top - 1)
    }

    fn cell_mut(&mut self, bottom: usize, top: usize) -> &mut BigUint {
        let i = self.idx(bottom, top);
        &mut self.cells[i]
    }

    /// Zero for out-of-range or equal ranks.
    pub fn get(&self, bottom: usize, top: usize) -> BigUint {
        let n = self.labels();
        if bottom == 0 || top == 0 || bottom > n || top > n {
            return BigUint::zero();
        }
        self.cells[self.idx(bottom, top)].clone()
    }

    /// Nonzero entries keyed by `(bottom, top)`.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &BigUint)> {
        let n = self.labels();
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| ((i / n + 1, i % n + 1), c))
    }

    pub fn to_map(&self) -> BTreeMap<(usize, usize), BigUint> {
        self.entries().map(|(k, v)| (k, v.clone())).collect()
    }

    pub fn total(&self) -> BigUint {
        self.cells.iter().sum()
    }

    pub fn bottom_marginal(&self, bottom: usize) -> BigUint {
        (1..=self.labels()).map(|top| self.get(bottom, top)).sum()
    }

    pub fn top_marginal(&self, top: usize) -> BigUint {
        (1..=self.labels())
            .map(|bottom| self.get(bottom, top))
            .sum()
    }

    fn step(&self, support: Support) -> CornerTable {
        let old = self.labels();
        let new = old + 2;
        let rising = PrefixSums::build(self, true);
        let falling = PrefixSums::build(self, false);

        let rows: Vec<Vec<BigUint>> = (1..=new)
            .into_par_iter()
            .map(|u2| {
                (1..=new)
                    .map(|v2| {
                        if u2 == v2 {
                            BigUint::zero()
                        } else {
                            target_sum(support, old, u2, v2, &rising, &falling)
                        }
                    })
                    .collect()
            })
            .collect();
        CornerTable {
            columns: self.columns + 1,
            cells: rows.into_iter().flatten().collect(),
        }
    }
}

/// Prefix sums over old states with a fixed column orientation.
struct PrefixSums {
    side: usize,
    sums: Vec<BigUint>,
}

impl PrefixSums {
    fn build(t: &CornerTable, rising: bool) -> PrefixSums {
        let n = t.labels();
        let side = n + 1;
        let mut sums = vec![BigUint::zero(); side * side];
        for u in 1..=n {
            for v in 1..=n {
                let mut acc = if (u < v) == rising && u != v {
                    t.cells[t.idx(u, v)].clone()
                } else {
                    BigUint::zero()
                };
                acc += &sums[(u - 1) * side + v];
                acc += &sums[u * side + v - 1];
                acc -= &sums[(u - 1) * side + v - 1];
                sums[u * side + v] = acc;
            }
        }
        PrefixSums { side, sums }
    }

    fn at(&self, u: usize, v: usize) -> &BigUint {
        &self.sums[u * self.side + v]
    }

    /// Sum over `u in u_lo..=u_hi`, `v in v_lo..=v_hi`; ranges are 1-based.
    fn rect(&self, (u_lo, u_hi): (usize, usize), (v_lo, v_hi): (usize, usize)) -> BigUint {
        if u_lo > u_hi || v_lo > v_hi {
            return BigUint::zero();
        }
        let plus = self.at(u_hi, v_hi) + self.at(u_lo - 1, v_lo - 1);
        let minus = self.at(u_lo - 1, v_hi) + self.at(u_hi, v_lo - 1);
        plus - minus
    }
}

/// Sum of old states that may precede a new column with ranks `(u2, v2)`.
fn target_sum(
    support: Support,
    old: usize,
    u2: usize,
    v2: usize,
    rising: &PrefixSums,
    falling: &PrefixSums,
) -> BigUint {
    // Gaps: how many old labels lie below each new label.
    let new_rising = u2 < v2;
    let (gap_b, gap_t) = if new_rising {
        (u2 - 1, v2 - 2)
    } else {
        (u2 - 2, v2 - 1)
    };
    let lo = gap_b.min(gap_t);
    let hi = gap_b.max(gap_t);
    // Old ranks split into: below both new labels, between them, above both.
    let bands = [(1, lo), (lo + 1, hi), (hi + 1, old)];
    let below_new_bottom = |band: usize| match band {
        0 => true,
        2 => false,
        _ => gap_b == hi,
    };
    let below_new_top = |band: usize| match band {
        0 => true,
        2 => false,
        _ => gap_t == hi,
    };

    let mut total = BigUint::zero();
    for (bu, &u_band) in bands.iter().enumerate() {
        if u_band.0 > u_band.1 {
            continue;
        }
        for (bv, &v_band) in bands.iter().enumerate() {
            if v_band.0 > v_band.1 {
                continue;
            }
            for old_rising in [true, false] {
                // Different bands already fix the old column's orientation.
                if bu != bv && old_rising != (bu < bv) {
                    continue;
                }
                // Items: 0 old top, 1 new top, 2 old bottom, 3 new bottom.
                let mut less = [[false; 4]; 4];
                let mut set = |a: usize, b: usize, a_lt_b: bool| {
                    less[a][b] = a_lt_b;
                    less[b][a] = !a_lt_b;
                };
                set(2, 0, old_rising);
                set(3, 1, new_rising);
                set(2, 3, below_new_bottom(bu));
                set(2, 1, below_new_top(bu));
                set(0, 3, below_new_bottom(bv));
                set(0, 1, below_new_top(bv));
                let rank = |x: usize| (0..4).filter(|&y| less[y][x]).count() as u32;
                let piece = reduce_distinct([rank(0), rank(1), rank(2), rank(3)]);
                if !support.contains(piece) {
                    continue;
                }
                let sums = if old_rising { rising } else { falling };
                total += sums.rect(u_band, v_band);
            }
        }
    }
    total
}

/// The transfer table after `m` columns (`m - 1` pieces).
pub fn corner_table(support: Support, m: usize) -> Result<CornerTable> {
    if m == 0 {
        return Err(Error::OutOfRange(
            "a corner table needs at least one column".into(),
        ));
    }
    let mut t = CornerTable::single_column();
    for _ in 1..m {
        t = t.step(support);
    }
    Ok(t)
}

/// All tables for `1..=m` columns, sharing the work of the transfer.
pub fn corner_tables(support: Support, m: usize) -> Vec<CornerTable> {
    let mut out = Vec::with_capacity(m);
    if m == 0 {
        return out;
    }
    out.push(CornerTable::single_column());
    for _ in 1..m {
        let next = out.last().expect("non-empty").step(support);
        out.push(next);
    }
    out
}

pub fn count_dp(support: Support, n: usize) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::OutOfRange("a puzzle has at least one piece".into()));
    }
    Ok(corner_table(support, n + 1)?.total())
}

/// `s_1 .. s_nmax` in one pass.
pub fn count_prefix(support: Support, nmax: usize) -> Vec<BigUint> {
    corner_tables(support, nmax + 1)
        .iter()
        .skip(1)
        .map(CornerTable::total)
        .collect()
}

fn check_corner(n: usize, x: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::OutOfRange("a puzzle has at least one piece".into()));
    }
    if x == 0 || x > 2 * n + 2 {
        return Err(Error::OutOfRange(format!(
            "corner label {x} not in 1..={}",
            2 * n + 2
        )));
    }
    Ok(())
}

/// Puzzles with label `x` in the bottom-right corner.
pub fn count_corner_bottom(support: Support, n: usize, x: usize) -> Result<BigUint> {
    check_corner(n, x)?;
    Ok(corner_table(support, n + 1)?.bottom_marginal(x))
}

/// Puzzles with label `x` in the top-right corner.
pub fn count_corner_top(support: Support, n: usize, x: usize) -> Result<BigUint> {
    check_corner(n, x)?;
    Ok(corner_table(support, n + 1)?.top_marginal(x))
}

/// Pieces that can follow `p` in a row, i.e. whose left column orientation
/// matches the right column orientation of `p`.
pub fn can_follow(p: StandardPiece, q: StandardPiece) -> bool {
    p.class().orientation().1 == q.class().orientation().0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sup(s: &str) -> Support {
        s.parse().unwrap()
    }

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn puzzles(list: &[&str]) -> Vec<Puzzle> {
        list.iter().map(|s| s.parse().unwrap()).collect()
    }

    #[test]
    fn enumerate_small_catalan_case() {
        let got = enumerate_puzzles(sup("A2,A3"), 2).unwrap();
        let want = puzzles(&[
            "4 5 6 / 1 2 3",
            "3 5 6 / 1 2 4",
            "3 4 6 / 1 2 5",
            "2 5 6 / 1 3 4",
            "2 4 6 / 1 3 5",
        ]);
        assert_eq!(got, want);
        assert!(enumerate_puzzles(Support::empty(), 1).unwrap().is_empty());
        assert!(enumerate_puzzles(sup("A1"), 6).is_err());
    }

    #[test]
    fn brute_force_counts() {
        let catalan: Vec<_> = (1..=5)
            .map(|n| count_bruteforce(sup("A2,A3"), n).unwrap())
            .collect();
        assert_eq!(catalan, [2u64, 5, 14, 42, 132].map(big));
        assert_eq!(count_bruteforce(Support::FULL, 1).unwrap(), big(24));
        assert_eq!(
            count_bruteforce(sup("A1,A2,A3,A4,A5,A6"), 2).unwrap(),
            big(90)
        );
    }

    #[test]
    fn dp_counts() {
        let odd: Vec<_> = (1..=4)
            .map(|n| count_dp(sup("A1,A2,A3"), n).unwrap())
            .collect();
        assert_eq!(odd, [3u64, 15, 105, 945].map(big));
        let secant: Vec<_> = (1..=3)
            .map(|n| count_dp(sup("A1,A2,A3,A4,A5"), n).unwrap())
            .collect();
        assert_eq!(secant, [5u64, 61, 1385].map(big));
        assert_eq!(count_dp(sup("B1"), 2).unwrap(), big(0));
        assert!(count_dp(sup("B1"), 0).is_err());
        assert_eq!(
            count_prefix(sup("A2,A3"), 6),
            [2u64, 5, 14, 42, 132, 429].map(big)
        );
    }

    #[test]
    fn corner_table_two_columns() {
        let t = corner_table(sup("A1,A2,A3"), 2).unwrap();
        let map = t.to_map();
        assert_eq!(map.len(), 3);
        assert_eq!(map[&(2, 3)], big(1));
        assert_eq!(map[&(2, 4)], big(1));
        assert_eq!(map[&(3, 4)], big(1));
        assert_eq!(t.total(), big(3));

        let one = corner_table(Support::empty(), 1).unwrap();
        assert_eq!(
            one.to_map(),
            BTreeMap::from([((1, 2), big(1)), ((2, 1), big(1))])
        );
        assert!(corner_table(Support::FULL, 0).is_err());
    }

    #[test]
    fn corner_counts() {
        let p = sup("A1,A2,A3");
        assert_eq!(count_corner_bottom(p, 1, 3).unwrap(), big(1));
        assert_eq!(count_corner_bottom(p, 1, 2).unwrap(), big(2));
        assert_eq!(count_corner_bottom(p, 1, 1).unwrap(), big(0));
        assert!(count_corner_bottom(p, 1, 5).is_err());
        assert!(count_corner_top(p, 1, 0).is_err());
    }

    #[test]
    fn corner_table_matches_enumeration() {
        for s in [
            "A1,A2,A3",
            "A2,A3,B1,C4",
            "B1,B2,C3,D1,D4",
            "A1,A2,A3,A4,A5,A6,D5",
        ] {
            let s = sup(s);
            for n in 1..=3 {
                let mut by_corner: BTreeMap<(usize, usize), BigUint> = BTreeMap::new();
                for p in enumerate_puzzles(s, n).unwrap() {
                    let key = (p.bottom()[n] as usize, p.top()[n] as usize);
                    *by_corner.entry(key).or_default() += 1u32;
                }
                assert_eq!(
                    corner_table(s, n + 1).unwrap().to_map(),
                    by_corner,
                    "{s} n={n}"
                );
            }
        }
    }

    #[test]
    fn adjacency_by_orientation() {
        let a1: StandardPiece = "A1".parse().unwrap();
        let b1: StandardPiece = "B1".parse().unwrap();
        let c1: StandardPiece = "C1".parse().unwrap();
        assert!(can_follow(a1, b1));
        assert!(!can_follow(b1, a1));
        assert!(can_follow(b1, c1));
    }
}
