//! Construction of median-extremes alternation (MEA) permutations.
//!
//! The process starts from the ordered list `1..=n` and alternates two
//! steps until the list is empty, beginning with a median step:
//!
//! * median step: take the middle element (odd length) or the two middle
//!   elements left to right (even length);
//! * extreme step: take the minimum, then the maximum.
//!
//! The values taken, in order, form `π_n`. [`generate_naive`] simulates the
//! process literally and serves as the oracle. [`generate_fast`] produces
//! the same output in linear time, and [`decompose`] / [`recompose`] expose
//! the parity-dependent prefix-plus-shifted-tail structure of the family.

use serde::{Deserialize, Serialize};

use crate::error::{MeaError, Result};
use crate::permutation::Permutation;

/// Builds `π_n` by simulating the process on an explicit ordered list.
///
/// Quadratic in `n` because of the element removals. `n = 0` yields the
/// empty permutation.
pub fn generate_naive(n: usize) -> Permutation {
    let mut remaining: Vec<usize> = (1..=n).collect();
    let mut out = Vec::with_capacity(n);
    let mut median_step = true;

    while !remaining.is_empty() {
        let len = remaining.len();
        if median_step {
            if len % 2 == 1 {
                out.push(remaining.remove(len / 2));
            } else {
                let left = remaining.remove(len / 2 - 1);
                let right = remaining.remove(len / 2 - 1);
                out.push(left);
                out.push(right);
            }
        } else {
            // An extreme step always follows a median step, which leaves an
            // even number of values behind.
            assert!(
                len.is_multiple_of(2),
                "extreme step reached an odd-length list of {len} values"
            );
            let min = remaining.remove(0);
            let max = remaining.pop().expect("list has at least two values");
            out.push(min);
            out.push(max);
        }
        median_step = !median_step;
    }

    Permutation::from_vec_unchecked(out)
}

/// Builds `π_n` in `O(n)` time.
///
/// After the first median step the remaining values always form two runs of
/// equal length, `lo..=a` and `b..=hi`. A median step then takes `a` and
/// `b`; an extreme step takes `lo` and `hi`. Four boundaries are enough to
/// track the whole state.
pub fn generate_fast(n: usize) -> Permutation {
    match n {
        0 => return Permutation::empty(),
        1 => return Permutation::from_vec_unchecked(vec![1]),
        2 => return Permutation::from_vec_unchecked(vec![1, 2]),
        _ => {}
    }

    let mut out = Vec::with_capacity(n);
    let m = n / 2;
    // Left run is lo..=a and right run is b..=hi; `per_run` values remain in each.
    let (mut a, mut b);
    if n % 2 == 1 {
        out.push(m + 1);
        a = m;
        b = m + 2;
    } else {
        out.push(m);
        out.push(m + 1);
        a = m - 1;
        b = m + 2;
    }
    let mut lo = 1;
    let mut hi = n;
    let mut per_run = a;
    let mut median_step = false;

    while per_run > 0 {
        if median_step {
            out.push(a);
            out.push(b);
            a -= 1;
            b += 1;
        } else {
            out.push(lo);
            out.push(hi);
            lo += 1;
            hi -= 1;
        }
        per_run -= 1;
        median_step = !median_step;
    }

    debug_assert_eq!(out.len(), n);
    Permutation::from_vec_unchecked(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Parity {
    Odd,
    Even,
}

impl Parity {
    pub fn of(n: usize) -> Self {
        if n % 2 == 1 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }
}

/// Order-preserving relabeling `r ↦ r + low_offset` for `r <= threshold`,
/// `r ↦ r + high_offset` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ShiftMap {
    pub threshold: usize,
    pub low_offset: usize,
    pub high_offset: usize,
}

impl ShiftMap {
    pub fn apply(&self, r: usize) -> usize {
        if r <= self.threshold {
            r + self.low_offset
        } else {
            r + self.high_offset
        }
    }
}

/// `π_n` split as `prefix ‖ shift_map(π_child_n)`.
///
/// For `n = 2m + 1` the prefix is `[m+1, 1, 2m+1]` and the child has size
/// `2m - 2`. For `n = 2m` the prefix is `[m, m+1, 1, 2m]` and the child has
/// size `2m - 4`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecursionDecomposition {
    pub n: usize,
    pub parity: Parity,
    pub prefix: Vec<usize>,
    pub child_n: usize,
    pub shift_map: ShiftMap,
}

pub fn decompose(n: usize) -> Result<RecursionDecomposition> {
    if n < 3 {
        return Err(MeaError::SizeTooSmall { n, min: 3 });
    }
    let m = n / 2;
    let d = match Parity::of(n) {
        Parity::Odd => RecursionDecomposition {
            n,
            parity: Parity::Odd,
            prefix: vec![m + 1, 1, n],
            child_n: n - 3,
            shift_map: ShiftMap {
                threshold: m - 1,
                low_offset: 1,
                high_offset: 2,
            },
        },
        Parity::Even => RecursionDecomposition {
            n,
            parity: Parity::Even,
            prefix: vec![m, m + 1, 1, n],
            child_n: n - 4,
            shift_map: ShiftMap {
                threshold: m - 2,
                low_offset: 1,
                high_offset: 3,
            },
        },
    };
    Ok(d)
}

impl RecursionDecomposition {
    /// The child permutation with every entry relabeled through the shift map.
    pub fn shifted_tail(&self, child: &Permutation) -> Result<Vec<usize>> {
        if child.len() != self.child_n {
            return Err(MeaError::SizeMismatch {
                expected: self.child_n,
                found: child.len(),
            });
        }
        Ok(child
            .values()
            .iter()
            .map(|&r| self.shift_map.apply(r))
            .collect())
    }
}

/// Concatenates the prefix with the shifted child.
pub fn recompose(d: &RecursionDecomposition, child: &Permutation) -> Result<Permutation> {
    let tail = d.shifted_tail(child)?;
    let mut values = Vec::with_capacity(d.n);
    values.extend_from_slice(&d.prefix);
    values.extend(tail);
    // A hand-built decomposition may not describe a bijection.
    Permutation::new(values)
}
