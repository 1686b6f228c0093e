//! Classical integer sequences that puzzle counts are compared against.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Largest `n` accepted by [`lattice_l`].
pub const LATTICE_MAX_N: usize = 12;
/// Largest `n` accepted by [`whirlpool_w`].
pub const WHIRLPOOL_BRUTE_MAX_N: usize = 5;

/// `C(n, k)`, zero unless `0 <= k <= n`.
pub fn binomial(n: i64, k: i64) -> BigUint {
    if n < 0 || k < 0 || k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// `k!! = k (k-2) (k-4) ...`, with `(-1)!! = 0!! = 1`.
pub fn double_factorial(k: i64) -> Result<BigUint> {
    if k < -1 {
        return Err(Error::OutOfRange(format!("({k})!! is undefined")));
    }
    let mut acc = BigUint::one();
    let mut i = k;
    while i > 1 {
        acc *= i as u64;
        i -= 2;
    }
    Ok(acc)
}

pub fn catalan(k: u64) -> BigUint {
    binomial(2 * k as i64, k as i64) / (k + 1)
}

/// `F(0) = 0`, `F(1) = 1`.
pub fn fibonacci(k: u64) -> BigUint {
    let (mut a, mut b) = (BigUint::zero(), BigUint::one());
    for _ in 0..k {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

/// Rows `0..=n` of the Entringer triangle, by the boustrophedon rule.
pub fn entringer_rows(n: usize) -> Vec<Vec<BigUint>> {
    let mut rows: Vec<Vec<BigUint>> = vec![vec![BigUint::one()]];
    for r in 1..=n {
        let prev = &rows[r - 1];
        let mut row = vec![BigUint::zero(); r + 1];
        for k in 1..=r {
            row[k] = &row[k - 1] + &prev[r - k];
        }
        rows.push(row);
    }
    rows
}

/// Number of down-up permutations of `n + 1` starting with `k + 1`.
pub fn entringer(n: usize, k: usize) -> Result<BigUint> {
    if k > n {
        return Err(Error::OutOfRange(format!("E({n}, {k}) needs k <= n")));
    }
    Ok(entringer_rows(n).swap_remove(n).swap_remove(k))
}

/// Euler's zigzag number of even index, `E(2k, 2k)`.
pub fn secant(k: usize) -> BigUint {
    entringer_rows(2 * k).swap_remove(2 * k).swap_remove(2 * k)
}

/// `k (2n-k+1)! / ((n-k+1)! 2^(n-k+1))` for `1 <= k <= n + 1`, and `T(n, 0) = 0`.
pub fn triangle_t(n: usize, k: usize) -> Result<BigUint> {
    if k > n + 1 {
        return Err(Error::OutOfRange(format!("T({n}, {k}) needs k <= n + 1")));
    }
    if k == 0 {
        return Ok(BigUint::zero());
    }
    let num = factorial((2 * n + 1 - k) as u64) * k;
    let den = factorial((n + 1 - k) as u64) << (n + 1 - k);
    Ok(exact_div(num, den))
}

/// Rows `0..=n` of `T` built from `T(n, k) = k * sum_{i=k-1}^{n} T(n-1, i)`.
pub fn triangle_t_rows(n: usize) -> Vec<Vec<BigUint>> {
    let mut rows = vec![vec![BigUint::zero(), BigUint::one()]];
    for r in 1..=n {
        let prev = &rows[r - 1];
        // suffix[i] = sum of prev[i..]
        let mut suffix = vec![BigUint::zero(); prev.len() + 1];
        for i in (0..prev.len()).rev() {
            suffix[i] = &suffix[i + 1] + &prev[i];
        }
        let row = (0..=r + 1)
            .map(|k| {
                if k == 0 {
                    BigUint::zero()
                } else {
                    &suffix[k - 1] * k
                }
            })
            .collect();
        rows.push(row);
    }
    rows
}

pub fn triangle_t_recurrence(n: usize, k: usize) -> Result<BigUint> {
    if k > n + 1 {
        return Err(Error::OutOfRange(format!("T({n}, {k}) needs k <= n + 1")));
    }
    Ok(triangle_t_rows(n).swap_remove(n).swap_remove(k))
}

/// Ballot numbers `(n-k+1)/(n+1) * C(n+k, n)` for `0 <= k <= n`.
pub fn catalan_triangle(n: usize, k: usize) -> Result<BigUint> {
    if k > n {
        return Err(Error::OutOfRange(format!("t({n}, {k}) needs k <= n")));
    }
    let num = binomial((n + k) as i64, n as i64) * (n - k + 1);
    Ok(exact_div(num, BigUint::from(n + 1)))
}

/// Rows `0..=n` from `t(n, k) = sum_{j<=k} t(n-1, j)`, with `t(n-1, n) = 0`.
pub fn catalan_triangle_rows(n: usize) -> Vec<Vec<BigUint>> {
    let mut rows = vec![vec![BigUint::one()]];
    for r in 1..=n {
        let prev = &rows[r - 1];
        let mut row = Vec::with_capacity(r + 1);
        let mut acc = BigUint::zero();
        for k in 0..=r {
            if let Some(v) = prev.get(k) {
                acc += v;
            }
            row.push(acc.clone());
        }
        rows.push(row);
    }
    rows
}

pub fn catalan_triangle_recurrence(n: usize, k: usize) -> Result<BigUint> {
    if k > n {
        return Err(Error::OutOfRange(format!("t({n}, {k}) needs k <= n")));
    }
    Ok(catalan_triangle_rows(n).swap_remove(n).swap_remove(k))
}

/// Lattice paths from `(2, ..., 2)` to `(0, ..., 0)` in `n` coordinates that
/// decrement one coordinate per step and keep neighbours within distance 1.
pub fn lattice_l(n: usize) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::OutOfRange("L(n) needs n >= 1".into()));
    }
    if n > LATTICE_MAX_N {
        return Err(Error::BoundExceeded {
            what: "n",
            value: n,
            bound: LATTICE_MAX_N,
        });
    }
    // State encoded in base 3; memo[code] = paths from that state to zero.
    let states = 3usize.pow(n as u32);
    let mut memo: Vec<Option<BigUint>> = vec![None; states];
    let start = vec![2u8; n];
    Ok(lattice_paths(&start, &mut memo))
}

fn lattice_paths(state: &[u8], memo: &mut [Option<BigUint>]) -> BigUint {
    let code = state
        .iter()
        .rev()
        .fold(0usize, |acc, &d| acc * 3 + d as usize);
    if code == 0 {
        return BigUint::one();
    }
    if let Some(v) = &memo[code] {
        return v.clone();
    }
    let mut total = BigUint::zero();
    let mut next = state.to_vec();
    for i in 0..state.len() {
        if state[i] == 0 {
            continue;
        }
        next[i] -= 1;
        if next.windows(2).all(|w| w[0].abs_diff(w[1]) <= 1) {
            total += lattice_paths(&next, memo);
        }
        next[i] += 1;
    }
    memo[code] = Some(total.clone());
    total
}

/// Permutations `p` of `{1..2n}` with `p[2k-1] < p[2k]` iff `p[2k] < p[2k+1]`,
/// counted by explicit search.
pub fn whirlpool_w(n: usize) -> Result<BigUint> {
    if n > WHIRLPOOL_BRUTE_MAX_N {
        return Err(Error::BoundExceeded {
            what: "n",
            value: n,
            bound: WHIRLPOOL_BRUTE_MAX_N,
        });
    }
    fn go(perm: &mut Vec<u8>, used: u32, len: usize) -> u64 {
        let i = perm.len();
        // 1-based position i+1 just placed closes the triple (i-1, i, i+1) when i+1 is odd.
        if i >= 3 && i % 2 == 1 {
            let (a, b, c) = (perm[i - 3], perm[i - 2], perm[i - 1]);
            if (a < b) != (b < c) {
                return 0;
            }
        }
        if i == len {
            return 1;
        }
        let mut count = 0;
        for v in 0..len as u8 {
            if used >> v & 1 == 0 {
                perm.push(v);
                count += go(perm, used | 1 << v, len);
                perm.pop();
            }
        }
        count
    }
    if n == 0 {
        return Ok(BigUint::one());
    }
    Ok(BigUint::from(go(&mut Vec::with_capacity(2 * n), 0, 2 * n)))
}

/// Same count as [`whirlpool_w`], by a transfer over the rank of the last
/// element and the direction the next step is forced to take.
pub fn whirlpool_w_fast(n: usize) -> BigUint {
    if n == 0 {
        return BigUint::one();
    }
    let len = 2 * n;
    // free[j], up[j], down[j]: prefixes ending at rank j (0-based) whose next
    // step is unconstrained, forced up, or forced down.
    let mut free = vec![BigUint::one()];
    let mut up = vec![BigUint::zero()];
    let mut down = vec![BigUint::zero()];
    for i in 1..len {
        // Step from position i to i+1 (1-based); odd steps open a tied pair.
        let opens_pair = i % 2 == 1 && i + 1 < len;
        let rising: Vec<BigUint> = (0..=i)
            .map(|j| free[..j].iter().chain(&up[..j]).sum())
            .collect();
        let falling: Vec<BigUint> = (0..=i)
            .map(|j| free[j..].iter().chain(&down[j..]).sum())
            .collect();
        if opens_pair {
            free = vec![BigUint::zero(); i + 1];
            up = rising;
            down = falling;
        } else {
            free = rising.iter().zip(&falling).map(|(a, b)| a + b).collect();
            up = vec![BigUint::zero(); i + 1];
            down = vec![BigUint::zero(); i + 1];
        }
    }
    free.iter().chain(&up).chain(&down).sum()
}

/// `(2m)! / 2^m`, the number of ways to fill `m` columns with unordered pairs.
pub fn multinomial_all_pairs(m: usize) -> BigUint {
    factorial(2 * m as u64) >> m
}

fn exact_div(num: BigUint, den: BigUint) -> BigUint {
    let (q, r) = num.div_rem(&den);
    debug_assert!(r.is_zero(), "inexact division");
    q
}

/// A named sequence with its index convention.
#[derive(Clone, Copy)]
pub struct SequenceId {
    pub name: &'static str,
    pub oeis: Option<&'static str>,
    /// Index of the first term.
    pub offset: usize,
    generator: fn(usize) -> Option<BigUint>,
}

impl fmt::Debug for SequenceId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SequenceId")
            .field("name", &self.name)
            .field("oeis", &self.oeis)
            .field("offset", &self.offset)
            .finish()
    }
}

impl Serialize for SequenceId {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("SequenceId", 3)?;
        st.serialize_field("name", self.name)?;
        st.serialize_field("oeis", &self.oeis)?;
        st.serialize_field("offset", &self.offset)?;
        st.end()
    }
}

impl SequenceId {
    /// Term `a(k)`; `None` below the offset or beyond a generator's bound.
    pub fn term(&self, k: usize) -> Option<BigUint> {
        if k < self.offset {
            return None;
        }
        (self.generator)(k)
    }

    /// Terms `a(offset) ..= a(upto)`.
    pub fn prefix(&self, upto: usize) -> Vec<BigUint> {
        (self.offset..=upto).map_while(|k| self.term(k)).collect()
    }
}

pub fn registry() -> &'static [SequenceId] {
    const REGISTRY: &[SequenceId] = &[
        SequenceId {
            name: "catalan",
            oeis: Some("A000108"),
            offset: 0,
            generator: |k| Some(catalan(k as u64)),
        },
        SequenceId {
            name: "double_factorial_odd",
            oeis: Some("A001147"),
            offset: 0,
            generator: |k| double_factorial(2 * k as i64 - 1).ok(),
        },
        SequenceId {
            name: "double_factorial_even",
            oeis: Some("A000165"),
            offset: 0,
            generator: |k| double_factorial(2 * k as i64).ok(),
        },
        SequenceId {
            name: "secant",
            oeis: Some("A000364"),
            offset: 0,
            generator: |k| Some(secant(k)),
        },
        SequenceId {
            name: "fibonacci",
            oeis: Some("A000045"),
            offset: 0,
            generator: |k| Some(fibonacci(k as u64)),
        },
        SequenceId {
            name: "lattice_L",
            oeis: Some("A227656"),
            offset: 1,
            generator: |k| lattice_l(k).ok(),
        },
        SequenceId {
            name: "whirlpool_W",
            oeis: Some("A261683"),
            offset: 0,
            generator: |k| Some(whirlpool_w_fast(k)),
        },
        SequenceId {
            name: "multinomial_all_pairs",
            oeis: Some("A000680"),
            offset: 0,
            generator: |k| Some(multinomial_all_pairs(k)),
        },
        SequenceId {
            name: "factorial",
            oeis: Some("A000142"),
            offset: 0,
            generator: |k| Some(factorial(k as u64)),
        },
        SequenceId {
            name: "central_binomial",
            oeis: Some("A000984"),
            offset: 0,
            generator: |k| Some(binomial(2 * k as i64, k as i64)),
        },
        SequenceId {
            name: "powers_of_two",
            oeis: Some("A000079"),
            offset: 0,
            generator: |k| Some(BigUint::one() << k),
        },
        SequenceId {
            name: "natural_numbers",
            oeis: Some("A000027"),
            offset: 1,
            generator: |k| Some(BigUint::from(k)),
        },
        SequenceId {
            name: "ones",
            oeis: Some("A000012"),
            offset: 0,
            generator: |_| Some(BigUint::one()),
        },
    ];
    REGISTRY
}

pub fn lookup(name: &str) -> Result<SequenceId> {
    registry()
        .iter()
        .find(|s| s.name.eq_ignore_ascii_case(name))
        .copied()
        .ok_or_else(|| Error::Parse {
            what: "sequence name",
            input: name.to_string(),
        })
}
