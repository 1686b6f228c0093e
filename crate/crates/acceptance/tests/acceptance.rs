//! Acceptance criteria, run by a plain `main` so every criterion prints its
//! PASS/FAIL line. The process exits nonzero if any criterion failed.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::panic;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{
    big, count_all_labellings, down_up_total, lattice_paths_dfs, split_orders, support,
    whirlpool_by_filter,
};
use num_bigint::BigUint;
use proptest::prelude::*;
use proptest::test_runner::TestRunner;
use puzzle_core::counting::{corner_table, count_corner_bottom, BruteForce};
use puzzle_core::sequences::{
    catalan_triangle, entringer, lattice_l, triangle_t, triangle_t_recurrence,
};
use puzzle_core::skeleton::{
    all_simple_pieces, edge_count_distribution, simple_piece, BasicSkeleton, EdgeCounting,
};
use puzzle_core::theorems::{
    class_product, class_swap_doubling, compose, corner_sum_even, corner_sum_last,
    corner_sum_middle, px, q1, q2, q3, ClassPairing, CompositionQuery, ConverterFamily,
    ConverterKind, SimplePieceId, SplitRanks,
};
use puzzle_core::transforms::compose as compose_maps;
use puzzle_core::{count_bruteforce, count_dp, enumerate_puzzles, PieceClass, Support, SupportMap};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

#[derive(Default)]
struct Checks {
    failures: Vec<String>,
    passed: usize,
}

impl Checks {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if ok {
            self.passed += 1;
        } else {
            self.failures.push(what());
        }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(
        &mut self,
        got: T,
        want: T,
        what: impl FnOnce() -> String,
    ) {
        let ok = got == want;
        self.check(ok, || format!("{}: got {got:?}, want {want:?}", what()));
    }

    fn within(&mut self, elapsed: Duration, limit: Duration, what: &str) {
        self.check(elapsed < limit, || {
            format!("{what} took {elapsed:?}, limit {limit:?}")
        });
    }

    fn finish(self, criterion: &str) -> bool {
        if self.failures.is_empty() {
            println!("PASS {criterion} ({} checks)", self.passed);
            return true;
        }
        println!(
            "FAIL {criterion} ({} passed, {} failed)",
            self.passed,
            self.failures.len()
        );
        for f in &self.failures {
            println!("  {f}");
        }
        false
    }
}

fn odd_double_factorial(n: u64) -> BigUint {
    (1..=n).filter(|k| k % 2 == 1).map(BigUint::from).product()
}

fn even_double_factorial(n: u64) -> BigUint {
    (1..=n).filter(|k| k % 2 == 0).map(BigUint::from).product()
}

fn fib(k: usize) -> u64 {
    let (mut a, mut b) = (0u64, 1u64);
    for _ in 0..k {
        (a, b) = (b, a + b);
    }
    a
}

/// `T(n,k) = k * sum_{i=k-1}^{n} T(n-1, i)` with `T(0,1) = 1`, `T(m,0) = 0`.
fn t_by_recurrence(nmax: usize) -> Vec<Vec<BigUint>> {
    let mut rows = vec![vec![big(0), big(1)]];
    for n in 1..=nmax {
        let prev = &rows[n - 1];
        let at = |i: usize| prev.get(i).cloned().unwrap_or_default();
        let mut row = vec![big(0)];
        for k in 1..=n + 1 {
            let s: BigUint = (k - 1..=n).map(at).sum();
            row.push(s * k as u64);
        }
        rows.push(row);
    }
    rows
}

/// Ballot numbers by `t(n,k) = t(n,k-1) + t(n-1,k)`, `t(n,0) = 1`, zero above the diagonal.
fn ballot(nmax: usize) -> Vec<Vec<u64>> {
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for n in 0..=nmax {
        let mut row = vec![1u64];
        for k in 1..=n {
            let up = if k < n { rows[n - 1][k] } else { 0 };
            row.push(row[k - 1] + up);
        }
        rows.push(row);
    }
    rows
}

/// Counts of `m`-column puzzles by `(bottom, top)` ranks of the last column, by brute force.
fn brute_corner(s: Support, m: usize, bottom: u32, top: u32) -> u64 {
    enumerate_puzzles(s, m - 1)
        .unwrap()
        .iter()
        .filter(|p| p.bottom()[m - 1] == bottom && p.top()[m - 1] == top)
        .count() as u64
}

fn criterion_01_catalan_counts_and_golden_enumeration() -> bool {
    let mut c = Checks::default();
    let start = Instant::now();
    let got: Vec<BigUint> = (1..=6)
        .map(|n| count_dp(support("A2,A3"), n).unwrap())
        .collect();
    c.within(start.elapsed(), Duration::from_secs(1), "Catalan DP");
    c.eq(got, [2u64, 5, 14, 42, 132, 429].map(big).to_vec(), || {
        "s_n({A2,A3}), n=1..6".into()
    });

    let golden: Vec<String> = include_str!("../../core/tests/golden/catalan_support_n3.txt")
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(str::to_string)
        .collect();
    let row = |r: &[u32]| r.iter().map(u32::to_string).collect::<Vec<_>>().join(" ");
    let listed: Vec<String> = enumerate_puzzles(support("A2,A3"), 3)
        .unwrap()
        .iter()
        .map(|p| format!("{} / {}", row(p.top()), row(p.bottom())))
        .collect();
    c.eq(listed.len(), 14, || "number of listed puzzles".into());
    c.eq(listed, golden, || "enumeration against golden file".into());
    c.finish("catalan")
}

fn criterion_02_double_factorials() -> bool {
    let mut c = Checks::default();
    let start = Instant::now();
    for n in 1..=6u64 {
        let odd = count_dp(support("A1,A2,A3"), n as usize).unwrap();
        let even = count_dp(support("A1,A2"), n as usize).unwrap();
        c.eq(odd, odd_double_factorial(2 * n + 1), || {
            format!("{{A1,A2,A3}} n={n}")
        });
        c.eq(even, even_double_factorial(2 * n), || {
            format!("{{A1,A2}} n={n}")
        });
    }
    c.within(
        start.elapsed(),
        Duration::from_secs(1),
        "double factorial DP",
    );
    c.finish("double factorials")
}

fn criterion_03_secant_numbers() -> bool {
    let mut c = Checks::default();
    let start = Instant::now();
    for n in 1..=4usize {
        let len = 2 * n + 2;
        let oracle = big(down_up_total(len));
        let e = entringer(len, len).unwrap();
        c.eq(e.clone(), oracle, || {
            format!("E({len},{len}) against down-up permutations")
        });
        c.eq(count_dp(support("A1,A2,A3,A4,A5"), n).unwrap(), e, || {
            format!("s_{n}({{A1..A5}})")
        });
    }
    c.within(start.elapsed(), Duration::from_secs(30), "secant check");
    c.finish("secant")
}

fn criterion_04_lattice_paths() -> bool {
    let mut c = Checks::default();
    for n in 1..=4usize {
        let oracle = big(lattice_paths_dfs(n + 1));
        c.eq(lattice_l(n + 1).unwrap(), oracle.clone(), || {
            format!("L({}) against path search", n + 1)
        });
        c.eq(count_dp(support("A1,A2,A4,A5"), n).unwrap(), oracle, || {
            format!("s_{n}({{A1,A2,A4,A5}})")
        });
    }
    c.finish("lattice")
}

fn criterion_05_fibonacci() -> bool {
    let mut c = Checks::default();
    let s = support("A1,B1,C1");
    let mut shifted_mismatch = 0;
    for n in 1..=8usize {
        let got = count_dp(s, n).unwrap();
        c.eq(got.clone(), big(fib(n + 3)), || {
            format!("s_{n}({{A1,B1,C1}}) = F(n+3)")
        });
        if n <= 3 {
            c.eq(count_bruteforce(s, n).unwrap(), got.clone(), || {
                format!("brute force n={n}")
            });
        }
        if got != big(fib(n + 2)) {
            shifted_mismatch += 1;
        }
    }
    println!("note: F(n+2) disagrees with the count for {shifted_mismatch} of 8 values (paper-inconsistency)");
    c.finish("fibonacci")
}

fn criterion_06_corner_refinements() -> bool {
    let mut c = Checks::default();
    let t = t_by_recurrence(30);
    for n in 1..=5usize {
        for k in 1..=n + 1 {
            let got = count_corner_bottom(support("A1,A2,A3"), n, 2 * n - k + 2).unwrap();
            c.eq(got, t[n][k].clone(), || format!("{{A1,A2,A3}} n={n} k={k}"));
        }
    }
    for n in 1..=30usize {
        for k in 1..=n + 1 {
            c.eq(triangle_t(n, k).unwrap(), t[n][k].clone(), || {
                format!("T closed form n={n} k={k}")
            });
            c.eq(
                triangle_t_recurrence(n, k).unwrap(),
                t[n][k].clone(),
                || format!("T recurrence n={n} k={k}"),
            );
        }
    }
    let b = ballot(5);
    for n in 1..=5usize {
        for k in 0..=n {
            let got = count_corner_bottom(support("A2,A3"), n, n + k + 1).unwrap();
            c.eq(got, big(b[n][k]), || format!("{{A2,A3}} n={n} k={k}"));
            c.eq(catalan_triangle(n, k).unwrap(), big(b[n][k]), || {
                format!("t({n},{k})")
            });
        }
    }
    c.finish("corner refinements")
}

fn criterion_07_corner_sum_identities() -> bool {
    let mut c = Checks::default();
    for n in 1..=20usize {
        let (l, r) = corner_sum_even(n).unwrap();
        c.eq(r.clone(), even_double_factorial(2 * n as u64), || {
            format!("(2n)!! n={n}")
        });
        c.eq(l, r, || format!("sum (k+1)T(n-1,k) n={n}"));
        let (l, r) = corner_sum_middle(n, n).unwrap();
        c.eq(l, r, || format!("middle identity n={n}"));
        let (l, r) = corner_sum_last(n, n).unwrap();
        c.eq(l, r, || format!("last identity n={n}"));
    }
    c.finish("corner sum identities")
}

fn criterion_08_converter_family_closed_forms() -> bool {
    let mut c = Checks::default();
    let start = Instant::now();
    for family in ConverterFamily::ALL {
        for i in 1..=6u8 {
            let s = family.support(i).unwrap();
            let hi = if s.len() <= 5 { 4 } else { 3 };
            for n in family.min_n(i)..=hi {
                let dp = count_dp(s, n).unwrap();
                c.eq(family.value(i, n).unwrap(), dp.clone(), || {
                    format!("{family} i={i} n={n}")
                });
                if n <= 2 {
                    c.eq(big(count_all_labellings(s, n)), dp, || {
                        format!("{family} i={i} n={n} by labellings")
                    });
                }
            }
        }
    }
    for n in 1..=3usize {
        let (l, r) = corner_sum_even(n).unwrap();
        c.eq(l, r, || format!("corner sum n={n}"));
    }
    c.within(
        start.elapsed(),
        Duration::from_secs(120),
        "closed-form sweep",
    );
    c.finish("converter family closed forms")
}

fn criterion_09_split_counts() -> bool {
    let mut c = Checks::default();
    for m in 1..4usize {
        for p in 1..=4 - m {
            for i in 1..2 * m {
                for j in 1..=2 * m - i {
                    for k in 1..2 * p {
                        for l in 1..=2 * p - k {
                            let r = SplitRanks::new(i, j, k, l, m, p).unwrap();
                            let want = split_orders(i, j, k, l, m, p).map(big);
                            c.eq([q1(r), q2(r), q3(r)], want, || {
                                format!("Q at ({i},{j},{k},{l},{m},{p})")
                            });
                        }
                    }
                }
            }
        }
    }
    c.finish("split counts")
}

fn composition_samples(kind: ConverterKind, count: usize, seed: u64) -> Vec<CompositionQuery> {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let x = rng.gen_range(1..=20);
        let z = rng.gen_range(1..=20);
        if x == 10 || z == 10 {
            continue;
        }
        let q =
            CompositionQuery::new(x, rng.gen_range(1..=6), kind, z, rng.gen_range(1..=3)).unwrap();
        out.push(q);
    }
    out
}

fn criterion_10_composition() -> bool {
    let mut c = Checks::default();
    for (kind, count) in [(ConverterKind::B, 30), (ConverterKind::C, 12)] {
        for q in composition_samples(kind, count, 17) {
            let direct = count_dp(q.support(), q.n).unwrap();
            if q.n <= 2 {
                c.eq(
                    count_bruteforce(q.support(), q.n).unwrap(),
                    direct.clone(),
                    || format!("{q:?} brute"),
                );
            }
            c.eq(compose(&q).unwrap(), direct, || format!("{q:?}"));
        }
    }
    c.finish("composition")
}

fn criterion_11_corner_refinement_table() -> bool {
    let mut c = Checks::default();
    for x in SimplePieceId::all().filter(|x| x.has_refinement()) {
        for m in 1..=4usize {
            let table = corner_table(x.support(), m).unwrap();
            for i in 1..2 * m {
                for j in 1..=2 * m - i {
                    let entry = table.get(i, i + j);
                    if (2..=3).contains(&m) {
                        let brute = big(brute_corner(x.support(), m, i as u32, (i + j) as u32));
                        c.eq(entry.clone(), brute, || {
                            format!("x={x} m={m} ({i},{j}) brute")
                        });
                    }
                    c.eq(px(x.x(), i, j, m).unwrap(), entry, || {
                        format!("x={x} m={m} i={i} j={j}")
                    });
                }
            }
        }
    }
    c.finish("corner refinement table")
}

fn index_subsets(max: usize) -> Vec<Vec<u8>> {
    (1u8..64)
        .map(|m| {
            (1..=6)
                .filter(|i| m >> (i - 1) & 1 == 1)
                .collect::<Vec<u8>>()
        })
        .filter(|a| a.len() <= max)
        .collect()
}

fn criterion_12_class_identities() -> bool {
    use PieceClass::*;
    let mut c = Checks::default();
    let pairings = [
        (ClassPairing::AbWithCd, [A, B], [C, D]),
        (ClassPairing::AcWithBd, [A, C], [B, D]),
    ];
    let run = |c: &mut Checks,
               pairing,
               fa: [PieceClass; 2],
               sa: [PieceClass; 2],
               alpha: &[u8],
               choice: u32,
               n| {
        let len = alpha.len();
        let first: Vec<PieceClass> = (0..len).map(|t| fa[(choice >> t & 1) as usize]).collect();
        let second: Vec<PieceClass> = (0..len)
            .map(|t| sa[(choice >> (len + t) & 1) as usize])
            .collect();
        let (l, r) = class_swap_doubling(pairing, alpha, &first, &second, n).unwrap();
        c.eq(l, r, || {
            format!("{pairing:?} {alpha:?} {first:?}/{second:?} n={n}")
        });
    };
    for (pairing, fa, sa) in pairings {
        for alpha in index_subsets(2) {
            for choice in 0..1u32 << (2 * alpha.len()) {
                for n in 1..=3 {
                    run(&mut c, pairing, fa, sa, &alpha, choice, n);
                }
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(5);
    let larger: Vec<Vec<u8>> = index_subsets(6)
        .into_iter()
        .filter(|a| a.len() > 2)
        .collect();
    for _ in 0..20 {
        let (pairing, fa, sa) = pairings[rng.gen_range(0..2)];
        let alpha = &larger[rng.gen_range(0..larger.len())];
        let choice = rng.gen_range(0..1u32 << (2 * alpha.len()));
        run(&mut c, pairing, fa, sa, alpha, choice, rng.gen_range(1..=3));
    }
    let whirl = support("A1,A4,B3,B6,C3,C6,D1,D4");
    for n in 1..=3 {
        c.eq(
            count_dp(whirl, n).unwrap(),
            big(whirlpool_by_filter(n + 1)),
            || format!("whirlpool n={n}"),
        );
    }
    let class_sets: Vec<Vec<PieceClass>> = (1u8..16)
        .map(|m| {
            PieceClass::ALL
                .into_iter()
                .enumerate()
                .filter(|(i, _)| m >> i & 1 == 1)
                .map(|(_, c)| c)
                .collect()
        })
        .collect();
    let union_over = |classes: &[PieceClass], idx: &[u8]| -> Support {
        classes
            .iter()
            .map(|&k| Support::of_class(k, idx.iter().copied()))
            .fold(Support::empty(), Support::union)
    };
    for classes in &class_sets {
        for alpha in index_subsets(2) {
            for n in 1..=3 {
                let lhs = count_dp(union_over(classes, &alpha), n).unwrap();
                let rhs = count_dp(union_over(&[A], &alpha), n).unwrap()
                    * count_dp(union_over(classes, &[1]), n).unwrap();
                c.eq(lhs.clone(), rhs.clone(), || {
                    format!("{classes:?} {alpha:?} n={n} direct counts")
                });
                c.eq(
                    class_product(classes, &alpha, n).unwrap(),
                    (lhs, rhs),
                    || format!("{classes:?} {alpha:?} n={n}"),
                );
            }
        }
    }
    c.finish("class identities")
}

fn criterion_13_skeleton_model() -> bool {
    let mut c = Checks::default();
    let class_one = all_simple_pieces(1).unwrap();
    c.eq(class_one.len(), 20, || "class-1 simple pieces".into());
    let total: usize = (1..=4).map(|k| all_simple_pieces(k).unwrap().len()).sum();
    c.eq(total, 80, || "simple pieces over four classes".into());
    let fig: BasicSkeleton = "b->a,d->c,b->c".parse().unwrap();
    c.eq(simple_piece(&fig), support("A1,A2,A3,A4,A5"), || {
        "skeleton b->a,d->c,b->c".into()
    });
    for x in SimplePieceId::all() {
        c.check(class_one.contains(&x.support()), || {
            format!("row {x} is a generated simple piece")
        });
        for n in 1..=4 {
            c.eq(
                x.count(n).unwrap(),
                count_dp(x.support(), n).unwrap(),
                || format!("row {x} n={n}"),
            );
        }
    }
    let dist = edge_count_distribution(1, EdgeCounting::ColumnsPlusCrossCovers).unwrap();
    let got: Vec<(usize, usize)> = dist.into_iter().collect();
    c.eq(got, vec![(2, 1), (3, 9), (4, 8), (5, 2)], || {
        "edge-count distribution 1+9+8+2".into()
    });
    c.finish("skeleton model")
}

const ALL_MAPS: [&[SupportMap]; 7] = [
    &[SupportMap::F1],
    &[SupportMap::F2],
    &[SupportMap::F3],
    &[SupportMap::F1, SupportMap::F2],
    &[SupportMap::F1, SupportMap::F3],
    &[SupportMap::F2, SupportMap::F3],
    &[SupportMap::F1, SupportMap::F2, SupportMap::F3],
];

fn criterion_14_engines_and_symmetry() -> bool {
    let mut c = Checks::default();
    let mut runner = TestRunner::new(ProptestConfig {
        cases: 200,
        failure_persistence: None,
        ..ProptestConfig::default()
    });
    let sampled = runner.run(&(0u32..1 << 24, 1usize..=4), |(bits, n)| {
        let s = Support::from_bits(bits);
        let dp = count_dp(s, n).unwrap();
        prop_assert_eq!(&BruteForce::with_max_n(4).count(s, n).unwrap(), &dp);
        for maps in ALL_MAPS {
            prop_assert_eq!(count_dp(compose_maps(maps, s), n).unwrap(), dp.clone());
        }
        Ok(())
    });
    c.check(sampled.is_ok(), || format!("sampled supports: {sampled:?}"));

    // Same invariance, counted by trying every labelling.
    for maps in ALL_MAPS {
        for s in ["A1,B2,C3", "A2,A3", "B1,C1,D5", "A1,A2,A3,A4,A5,A6"] {
            let s = support(s);
            c.eq(
                count_all_labellings(compose_maps(maps, s), 2),
                count_all_labellings(s, 2),
                || format!("{maps:?} {s}"),
            );
        }
    }
    c.finish("engines and symmetry")
}

fn main() -> ExitCode {
    let criteria: [fn() -> bool; 14] = [
        criterion_01_catalan_counts_and_golden_enumeration,
        criterion_02_double_factorials,
        criterion_03_secant_numbers,
        criterion_04_lattice_paths,
        criterion_05_fibonacci,
        criterion_06_corner_refinements,
        criterion_07_corner_sum_identities,
        criterion_08_converter_family_closed_forms,
        criterion_09_split_counts,
        criterion_10_composition,
        criterion_11_corner_refinement_table,
        criterion_12_class_identities,
        criterion_13_skeleton_model,
        criterion_14_engines_and_symmetry,
    ];
    let mut failed = 0;
    for (i, run) in criteria.into_iter().enumerate() {
        let ok = panic::catch_unwind(run).unwrap_or_else(|_| {
            println!("FAIL criterion {} (panicked)", i + 1);
            false
        });
        failed += usize::from(!ok);
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
