//! The [`Permutation`] value type.
//!
//! Values are stored in one-line notation and are 1-based: a permutation of
//! size `n` holds every integer in `1..=n` exactly once. Position `i` in the
//! public API is also 1-based, so `p.get(1)` is the first entry.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{MeaError, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawPermutation", into = "RawPermutation")]
pub struct Permutation {
    values: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct RawPermutation {
    n: usize,
    values: Vec<usize>,
}

impl TryFrom<RawPermutation> for Permutation {
    type Error = MeaError;

    fn try_from(raw: RawPermutation) -> Result<Self> {
        if raw.n != raw.values.len() {
            return Err(MeaError::SizeMismatch {
                expected: raw.n,
                found: raw.values.len(),
            });
        }
        Permutation::new(raw.values)
    }
}

impl From<Permutation> for RawPermutation {
    fn from(p: Permutation) -> Self {
        RawPermutation {
            n: p.len(),
            values: p.values,
        }
    }
}

impl Permutation {
    /// Validates that `values` is a bijection on `1..=values.len()`.
    pub fn new(values: Vec<usize>) -> Result<Self> {
        let n = values.len();
        let mut seen = vec![false; n];
        for (i, &v) in values.iter().enumerate() {
            if v == 0 || v > n {
                return Err(MeaError::NotAPermutation(format!(
                    "value {v} at position {} is outside 1..={n}",
                    i + 1
                )));
            }
            if std::mem::replace(&mut seen[v - 1], true) {
                return Err(MeaError::NotAPermutation(format!(
                    "value {v} repeated at position {}",
                    i + 1
                )));
            }
        }
        Ok(Permutation { values })
    }

    /// Callers guarantee `values` is a bijection on `1..=len`.
    pub(crate) fn from_vec_unchecked(values: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(values.clone()).is_ok());
        Permutation { values }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            values: (1..=n).collect(),
        }
    }

    pub fn empty() -> Self {
        Permutation { values: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn into_values(self) -> Vec<usize> {
        self.values
    }

    /// Entry at 1-based `position`, or `None` when out of range.
    pub fn get(&self, position: usize) -> Option<usize> {
        position
            .checked_sub(1)
            .and_then(|i| self.values.get(i).copied())
    }

    pub fn is_identity(&self) -> bool {
        self.values.iter().enumerate().all(|(i, &v)| v == i + 1)
    }

    /// `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.len() != other.len() {
            return Err(MeaError::SizeMismatch {
                expected: self.len(),
                found: other.len(),
            });
        }
        let values = other.values.iter().map(|&v| self.values[v - 1]).collect();
        Ok(Permutation::from_vec_unchecked(values))
    }

    /// Space-separated values, as used in CSV cells.
    pub fn to_spaced_string(&self) -> String {
        let mut out = String::with_capacity(self.values.len() * 4);
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(&v.to_string());
        }
        out
    }
}

/// Bracketed one-line notation: `[3,1,5,2,4]`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, v) in self.values.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = MeaError;

    fn try_from(values: Vec<usize>) -> Result<Self> {
        Permutation::new(values)
    }
}
