//! Slow, direct oracles shared by the integration tests. None of them call the
//! counting engines under test.
#![allow(dead_code)]

use std::collections::HashMap;

use num_bigint::BigUint;
use puzzle_core::pieces::{reduce, Support};

/// Visits every permutation of `1..=len` in lexicographic order.
pub fn for_each_permutation(len: usize, mut f: impl FnMut(&[u32])) {
    let mut p: Vec<u32> = (1..=len as u32).collect();
    loop {
        f(&p);
        let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
            return;
        };
        let j = (i..p.len())
            .rev()
            .find(|&j| p[j] > p[i - 1])
            .expect("successor exists");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

/// Counts puzzles by trying every labelling; columns are read as
/// `(top, bottom)` pairs from the permutation.
pub fn count_all_labellings(support: Support, n: usize) -> u64 {
    let cols = n + 1;
    let mut count = 0;
    for_each_permutation(2 * cols, |p| {
        let top = |k: usize| p[2 * k];
        let bottom = |k: usize| p[2 * k + 1];
        let ok = (0..n).all(|k| {
            support.contains(reduce([top(k), top(k + 1), bottom(k), bottom(k + 1)]).unwrap())
        });
        if ok {
            count += 1;
        }
    });
    count
}

/// The rank-pair transfer exactly as described: remap old ranks into the
/// complement of the new pair and test the window.
pub fn rank_pair_transfer(support: Support, n: usize) -> BigUint {
    let mut table: HashMap<(u32, u32), BigUint> =
        HashMap::from([((1, 2), 1u32.into()), ((2, 1), 1u32.into())]);
    for m in 1..=n as u32 {
        let labels = 2 * m + 2;
        let mut next: HashMap<(u32, u32), BigUint> = HashMap::new();
        for u2 in 1..=labels {
            for v2 in 1..=labels {
                if u2 == v2 {
                    continue;
                }
                let rest: Vec<u32> = (1..=labels).filter(|&r| r != u2 && r != v2).collect();
                for (&(u, v), c) in &table {
                    let (ou, ov) = (rest[u as usize - 1], rest[v as usize - 1]);
                    if support.contains(reduce([ov, v2, ou, u2]).unwrap()) {
                        *next.entry((u2, v2)).or_default() += c;
                    }
                }
            }
        }
        table = next;
    }
    table.values().sum()
}

/// Down-up permutations `p1 > p2 < p3 > ...` of `1..=len` starting with `first`.
pub fn down_up_count(len: usize, first: u32) -> u64 {
    fn go(last: u32, pos: usize, used: u32, len: usize) -> u64 {
        if pos == len {
            return 1;
        }
        // pos is 0-based; the step into pos goes down when pos is odd.
        let down = pos % 2 == 1;
        (1..=len as u32)
            .filter(|&v| used >> v & 1 == 0 && (if down { v < last } else { v > last }))
            .map(|v| go(v, pos + 1, used | 1 << v, len))
            .sum()
    }
    if len == 0 {
        return 1;
    }
    go(first, 1, 1 << first, len)
}

/// All down-up permutations of `1..=len`.
pub fn down_up_total(len: usize) -> u64 {
    if len == 0 {
        return 1;
    }
    (1..=len as u32).map(|f| down_up_count(len, f)).sum()
}

/// Splits of `{1..2m+2p}` into a `2m`-set `a` and `2p`-set `b`, tallied by the
/// relative order of `a_i, a_{i+j}, b_k, b_{k+l}`:
/// `[a_i<b_k<b_{k+l}<a_{i+j}, a_i<b_k<a_{i+j}<b_{k+l}, a_{i+j}<b_k]`.
pub fn split_orders(i: usize, j: usize, k: usize, l: usize, m: usize, p: usize) -> [u64; 3] {
    let total = 2 * (m + p);
    let mut out = [0u64; 3];
    for mask in 0u32..1 << total {
        if mask.count_ones() as usize != 2 * m {
            continue;
        }
        let a: Vec<usize> = (0..total).filter(|&v| mask >> v & 1 == 1).collect();
        let b: Vec<usize> = (0..total).filter(|&v| mask >> v & 1 == 0).collect();
        let (ai, aij, bk, bkl) = (a[i - 1], a[i + j - 1], b[k - 1], b[k + l - 1]);
        out[0] += u64::from(ai < bk && bkl < aij);
        out[1] += u64::from(ai < bk && bk < aij && aij < bkl);
        out[2] += u64::from(aij < bk);
    }
    out
}

/// Paths from `(2,..,2)` to `(0,..,0)` by plain depth-first search.
pub fn lattice_paths_dfs(n: usize) -> u64 {
    fn go(state: &mut Vec<u8>) -> u64 {
        if state.iter().all(|&x| x == 0) {
            return 1;
        }
        let mut total = 0;
        for i in 0..state.len() {
            if state[i] == 0 {
                continue;
            }
            state[i] -= 1;
            if state.windows(2).all(|w| w[0].abs_diff(w[1]) <= 1) {
                total += go(state);
            }
            state[i] += 1;
        }
        total
    }
    go(&mut vec![2; n])
}

/// Whirlpool permutations of `1..=2n` by filtering every permutation.
pub fn whirlpool_by_filter(n: usize) -> u64 {
    let mut count = 0;
    for_each_permutation(2 * n, |p| {
        if (1..n).all(|k| (p[2 * k - 2] < p[2 * k - 1]) == (p[2 * k - 1] < p[2 * k])) {
            count += 1;
        }
    });
    count
}

pub fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

pub fn support(s: &str) -> Support {
    s.parse().unwrap()
}
