//! Permutation statistics, plus closed forms for the MEA family.
//!
//! The generic operations (`inversion_count`, `descent_set`,
//! `classify_alternation`, `sign`, `inverse`, `cycle_structure`) work on any
//! [`Permutation`]. The `*_formula` / `predicted_*` / `inverse_recursive`
//! functions evaluate the known results for `π_n` without generating it.

use std::collections::VecDeque;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::generation::generate_fast;
use crate::permutation::Permutation;

/// Number of pairs `i < j` with `p(i) > p(j)`, by merge sort in `O(n log n)`.
pub fn inversion_count(p: &Permutation) -> u64 {
    let mut buf = p.values().to_vec();
    let mut scratch = vec![0; buf.len()];
    sort_counting(&mut buf, &mut scratch)
}

fn sort_counting(xs: &mut [usize], scratch: &mut [usize]) -> u64 {
    let len = xs.len();
    if len < 2 {
        return 0;
    }
    let mid = len / 2;
    let mut count = {
        let (left, right) = xs.split_at_mut(mid);
        let (sl, sr) = scratch.split_at_mut(mid);
        sort_counting(left, sl) + sort_counting(right, sr)
    };

    let (mut i, mut j, mut k) = (0, mid, 0);
    while i < mid && j < len {
        if xs[i] <= xs[j] {
            scratch[k] = xs[i];
            i += 1;
        } else {
            // xs[j] is smaller than every remaining left element.
            scratch[k] = xs[j];
            count += (mid - i) as u64;
            j += 1;
        }
        k += 1;
    }
    scratch[k..k + mid - i].copy_from_slice(&xs[i..mid]);
    k += mid - i;
    scratch[k..k + len - j].copy_from_slice(&xs[j..len]);
    xs.copy_from_slice(&scratch[..len]);
    count
}

/// `⌊(n−1)²/4⌋`, written as `m²` for `n = 2m + 1` and `m(m−1)` for `n = 2m`.
///
/// Returns 0 for `n = 0` (the empty permutation has no inversions).
pub fn inversion_formula(n: usize) -> u64 {
    let m = (n / 2) as u64;
    if n % 2 == 1 {
        m * m
    } else {
        m.saturating_sub(1) * m
    }
}

/// Positions `i` in `1..n` with `p(i) > p(i+1)`.
pub fn descent_set(p: &Permutation) -> Vec<usize> {
    p.values()
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[0] > w[1])
        .map(|(i, _)| i + 1)
        .collect()
}

/// `{1,3,…,n−2}` for odd `n`, `{2,4,…,n−2}` for even `n`.
pub fn predicted_descent_set(n: usize) -> Vec<usize> {
    let start = if n % 2 == 1 { 1 } else { 2 };
    (start..n.saturating_sub(1)).step_by(2).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlternationType {
    /// `p(1) > p(2) < p(3) > …`
    DownUp,
    /// `p(1) < p(2) > p(3) < …`
    UpDown,
    NotAlternating,
    /// Size 0 or 1: no adjacent pair to compare.
    Trivial,
}

impl AlternationType {
    pub fn as_str(self) -> &'static str {
        match self {
            AlternationType::DownUp => "down_up",
            AlternationType::UpDown => "up_down",
            AlternationType::NotAlternating => "not_alternating",
            AlternationType::Trivial => "trivial",
        }
    }

    /// Type the MEA results predict for `π_n`.
    pub fn predicted(n: usize) -> Self {
        match n {
            0 | 1 => AlternationType::Trivial,
            _ if n % 2 == 1 => AlternationType::DownUp,
            _ => AlternationType::UpDown,
        }
    }
}

impl fmt::Display for AlternationType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Alternation type together with the first 1-based position `i` at which
/// the pair `(p(i), p(i+1))` breaks the pattern fixed by the first pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlternationDiagnosis {
    pub kind: AlternationType,
    pub first_violation: Option<usize>,
}

pub fn diagnose_alternation(p: &Permutation) -> AlternationDiagnosis {
    let v = p.values();
    if v.len() < 2 {
        return AlternationDiagnosis {
            kind: AlternationType::Trivial,
            first_violation: None,
        };
    }
    let starts_down = v[0] > v[1];
    let first_violation = v
        .windows(2)
        .enumerate()
        .skip(1)
        .find(|(i, w)| {
            let want_down = starts_down == (i % 2 == 0);
            (w[0] > w[1]) != want_down
        })
        .map(|(i, _)| i + 1);
    let kind = match (first_violation, starts_down) {
        (Some(_), _) => AlternationType::NotAlternating,
        (None, true) => AlternationType::DownUp,
        (None, false) => AlternationType::UpDown,
    };
    AlternationDiagnosis {
        kind,
        first_violation,
    }
}

pub fn classify_alternation(p: &Permutation) -> AlternationType {
    diagnose_alternation(p).kind
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "i8", try_from = "i8")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_parity(count: u64) -> Self {
        if count.is_multiple_of(2) {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn value(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl From<Sign> for i8 {
    fn from(s: Sign) -> i8 {
        s.value()
    }
}

impl TryFrom<i8> for Sign {
    type Error = String;

    fn try_from(v: i8) -> Result<Self, String> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(format!("sign must be 1 or -1, got {other}")),
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

pub fn sign(p: &Permutation) -> Sign {
    Sign::from_parity(inversion_count(p))
}

/// `−1` exactly when `n ≡ 3 (mod 4)`.
pub fn sign_formula(n: usize) -> Sign {
    if n % 4 == 3 {
        Sign::Minus
    } else {
        Sign::Plus
    }
}

/// `q` with `q(p(i)) = i`.
pub fn inverse(p: &Permutation) -> Permutation {
    let mut q = vec![0; p.len()];
    for (i, &v) in p.values().iter().enumerate() {
        q[v - 1] = i + 1;
    }
    Permutation::from_vec_unchecked(q)
}

/// Builds `π_n⁻¹` from the recursive inverse description, without
/// generating `π_n`.
///
/// Base cases are `n ≤ 4`. For `n = 2m` the inverse reads
///
/// ```text
/// [3] ‖ (left half of π_{2m−4}⁻¹) + 4 ‖ [1, 2] ‖ (right half of π_{2m−4}⁻¹) + 4 ‖ [4]
/// ```
///
/// and for `n = 2m + 1`
///
/// ```text
/// [2] ‖ (left half of π_{2m−2}⁻¹) + 3 ‖ [1] ‖ (right half of π_{2m−2}⁻¹) + 3 ‖ [3]
/// ```
///
/// Children are always even, so only the outermost level can be odd. The
/// halves are grown outward in two deques; entries store their value minus
/// the offset accumulated at insertion time, so each level's `+4` costs
/// `O(1)` and the whole construction is `O(n)`.
pub fn inverse_recursive(n: usize) -> Permutation {
    if n <= 4 {
        return Permutation::from_vec_unchecked(base_inverse(n).to_vec());
    }

    let top_odd = n % 2 == 1;
    let mut even_n = if top_odd { n - 3 } else { n };
    let mut levels = 0;
    while even_n > 4 {
        levels += 1;
        even_n -= 4;
    }

    // even_n is now the base size: 2 or 4 (0 only when n = 3, handled above).
    let base = base_inverse(even_n);
    let half = even_n / 2;
    let mut left: VecDeque<i64> = base[..half].iter().map(|&v| v as i64).collect();
    let mut right: VecDeque<i64> = base[half..].iter().map(|&v| v as i64).collect();
    let mut added: i64 = 0;

    for _ in 0..levels {
        added += 4;
        left.push_front(3 - added);
        left.push_back(1 - added);
        right.push_front(2 - added);
        right.push_back(4 - added);
    }

    let restore = |stored: i64, extra: i64| (stored + added + extra) as usize;
    let mut out = Vec::with_capacity(n);
    if top_odd {
        out.push(2);
        out.extend(left.iter().map(|&s| restore(s, 3)));
        out.push(1);
        out.extend(right.iter().map(|&s| restore(s, 3)));
        out.push(3);
    } else {
        out.extend(left.iter().map(|&s| restore(s, 0)));
        out.extend(right.iter().map(|&s| restore(s, 0)));
    }
    debug_assert_eq!(out.len(), n);
    Permutation::from_vec_unchecked(out)
}

fn base_inverse(n: usize) -> &'static [usize] {
    match n {
        0 => &[],
        1 => &[1],
        2 => &[1, 2],
        3 => &[2, 1, 3],
        4 => &[3, 1, 2, 4],
        _ => unreachable!("no base inverse for n = {n}"),
    }
}

/// Cycle lengths of `i ↦ p(i)`, sorted in decreasing order.
pub fn cycle_structure(p: &Permutation) -> Vec<usize> {
    let v = p.values();
    let mut visited = vec![false; v.len()];
    let mut lengths = Vec::new();
    for start in 0..v.len() {
        if visited[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !visited[i] {
            visited[i] = true;
            i = v[i] - 1;
            len += 1;
        }
        lengths.push(len);
    }
    lengths.sort_unstable_by(|a, b| b.cmp(a));
    lengths
}

/// Least common multiple of the cycle lengths; 1 for an empty list.
pub fn order_from_cycle_type(cycle_type: &[usize]) -> BigUint {
    cycle_type.iter().fold(BigUint::from(1u32), |acc, &len| {
        acc.lcm(&BigUint::from(len))
    })
}

pub fn order(p: &Permutation) -> BigUint {
    order_from_cycle_type(&cycle_structure(p))
}

/// Every statistic of one permutation, as rendered by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatsReport {
    pub n: usize,
    pub values: Vec<usize>,
    pub inversions: u64,
    pub descents: Vec<usize>,
    pub sign: Sign,
    pub alternation: AlternationType,
    pub cycle_type: Vec<usize>,
    #[serde(with = "decimal")]
    pub order: BigUint,
}

impl StatsReport {
    pub fn of(p: &Permutation) -> Self {
        let inversions = inversion_count(p);
        let cycle_type = cycle_structure(p);
        StatsReport {
            n: p.len(),
            values: p.values().to_vec(),
            inversions,
            descents: descent_set(p),
            sign: Sign::from_parity(inversions),
            alternation: classify_alternation(p),
            order: order_from_cycle_type(&cycle_type),
            cycle_type,
        }
    }

    /// Report for `π_n`.
    pub fn for_mea(n: usize) -> Self {
        StatsReport::of(&generate_fast(n))
    }
}

/// Arbitrary-precision integers travel as decimal strings in JSON.
mod decimal {
    use num_bigint::BigUint;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_str_radix(10))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigUint, D::Error> {
        let s = String::deserialize(d)?;
        BigUint::parse_bytes(s.as_bytes(), 10)
            .ok_or_else(|| D::Error::custom(format!("invalid decimal integer {s:?}")))
    }
}
