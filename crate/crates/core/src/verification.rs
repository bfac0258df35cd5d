//! Range verification of every structural claim about `π_n`.
//!
//! [`verify_range`] runs each claim for every `n` in the range and returns a
//! [`VerificationReport`] with one [`Check`] per `(claim, n)`. Work for
//! different `n` is spread over a rayon pool; results are assembled in
//! ascending `n`, then claim order, so reports are deterministic.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{MeaError, Result};
use crate::generation::{decompose, generate_fast, generate_naive, recompose, Parity};
use crate::permutation::Permutation;
use crate::statistics::{
    classify_alternation, descent_set, diagnose_alternation, inverse, inverse_recursive,
    inversion_count, inversion_formula, predicted_descent_set, sign, sign_formula, AlternationType,
};

/// First twelve published terms of OEIS A002620, indexed from `n = 1`.
pub const A002620_FIXTURE: [u64; 12] = [0, 0, 1, 2, 4, 6, 9, 12, 16, 20, 25, 30];

/// Default upper bound for running the quadratic process simulator.
pub const DEFAULT_ORACLE_CAP: usize = 500;

/// Quarter-squares `⌊k²/4⌋` at `k = n − 1`.
pub fn quarter_squares(n: usize) -> u64 {
    let k = n.saturating_sub(1) as u128;
    (k * k / 4) as u64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ClaimId {
    OracleEq,
    Prefix,
    Recompose,
    Alternation,
    Descents,
    InvFormula,
    InvBuckets,
    Sign,
    Inverse,
    Oeis,
}

impl ClaimId {
    pub const ALL: [ClaimId; 10] = [
        ClaimId::OracleEq,
        ClaimId::Prefix,
        ClaimId::Recompose,
        ClaimId::Alternation,
        ClaimId::Descents,
        ClaimId::InvFormula,
        ClaimId::InvBuckets,
        ClaimId::Sign,
        ClaimId::Inverse,
        ClaimId::Oeis,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ClaimId::OracleEq => "ORACLE_EQ",
            ClaimId::Prefix => "PREFIX",
            ClaimId::Recompose => "RECOMPOSE",
            ClaimId::Alternation => "ALTERNATION",
            ClaimId::Descents => "DESCENTS",
            ClaimId::InvFormula => "INV_FORMULA",
            ClaimId::InvBuckets => "INV_BUCKETS",
            ClaimId::Sign => "SIGN",
            ClaimId::Inverse => "INVERSE",
            ClaimId::Oeis => "OEIS",
        }
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub claim: ClaimId,
    pub n: usize,
    pub status: Status,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimSummary {
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub n_min: usize,
    pub n_max: usize,
    pub oracle_cap: usize,
    pub status: Status,
    pub summary: BTreeMap<ClaimId, ClaimSummary>,
    pub checks: Vec<Check>,
}

impl VerificationReport {
    fn assemble(n_min: usize, n_max: usize, oracle_cap: usize, checks: Vec<Check>) -> Self {
        let mut summary: BTreeMap<ClaimId, ClaimSummary> = BTreeMap::new();
        for c in &checks {
            let entry = summary.entry(c.claim).or_default();
            match c.status {
                Status::Pass => entry.passed += 1,
                Status::Fail => entry.failed += 1,
            }
        }
        let status = Status::from_bool(checks.iter().all(|c| c.status == Status::Pass));
        VerificationReport {
            n_min,
            n_max,
            oracle_cap,
            status,
            summary,
            checks,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    pub fn checks_for(&self, claim: ClaimId) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(move |c| c.claim == claim)
    }
}

/// Runs every claim for each `n` in `n_min..=n_max`.
///
/// The process simulator only runs for `n <= oracle_cap`. When the cap lies
/// below `n_min` it still runs once, at `n_min`, so that every claim appears
/// in the report.
pub fn verify_range(n_min: usize, n_max: usize, oracle_cap: usize) -> Result<VerificationReport> {
    if n_min < 1 {
        return Err(MeaError::InvalidRange("n_min must be at least 1".into()));
    }
    if n_min > n_max {
        return Err(MeaError::InvalidRange(format!(
            "n_min {n_min} exceeds n_max {n_max}"
        )));
    }
    if oracle_cap > n_max {
        return Err(MeaError::InvalidRange(format!(
            "oracle cap {oracle_cap} exceeds n_max {n_max}"
        )));
    }

    let checks: Vec<Vec<Check>> = (n_min..=n_max)
        .into_par_iter()
        .map(|n| {
            let run_oracle = n <= oracle_cap || (oracle_cap < n_min && n == n_min);
            checks_for_n(n, run_oracle, oracle_cap)
        })
        .collect();

    Ok(VerificationReport::assemble(
        n_min,
        n_max,
        oracle_cap,
        checks.into_iter().flatten().collect(),
    ))
}

fn checks_for_n(n: usize, run_oracle: bool, oracle_cap: usize) -> Vec<Check> {
    let p = generate_fast(n);
    let inversions = inversion_count(&p);
    let mut out = Vec::with_capacity(ClaimId::ALL.len());
    let mut push = |claim, ok, detail: String| {
        out.push(Check {
            claim,
            n,
            status: Status::from_bool(ok),
            detail,
        })
    };

    if run_oracle {
        let naive = generate_naive(n);
        let ok = naive == p;
        let detail = if ok {
            format!("fast == naive (cap={oracle_cap})")
        } else {
            format!("fast {p} != naive {naive} (cap={oracle_cap})")
        };
        push(ClaimId::OracleEq, ok, detail);
    }

    let (ok, detail) = check_prefix(n, &p);
    push(ClaimId::Prefix, ok, detail);

    let (ok, detail) = check_recompose(n, &p);
    push(ClaimId::Recompose, ok, detail);

    let diagnosis = diagnose_alternation(&p);
    let expected = AlternationType::predicted(n);
    let detail = match diagnosis.first_violation {
        Some(pos) => format!("{} (expected {expected}, broken at {pos})", diagnosis.kind),
        None if diagnosis.kind == expected => diagnosis.kind.to_string(),
        None => format!("{} (expected {expected})", diagnosis.kind),
    };
    push(ClaimId::Alternation, diagnosis.kind == expected, detail);

    let descents = descent_set(&p);
    let predicted = predicted_descent_set(n);
    let ok = descents == predicted && descents.len() == n.saturating_sub(1) / 2;
    push(
        ClaimId::Descents,
        ok,
        format!("|Des|={} predicted={}", descents.len(), predicted.len()),
    );

    let formula = inversion_formula(n);
    push(
        ClaimId::InvFormula,
        inversions == formula,
        format!("inv={inversions} formula={formula}"),
    );

    let (ok, detail) = check_inversion_buckets(n, &p);
    push(ClaimId::InvBuckets, ok, detail);

    let s = sign(&p);
    let predicted = sign_formula(n);
    let ok = s == predicted && (s.value() == -1) == (n % 4 == 3);
    push(ClaimId::Sign, ok, format!("sign={s} formula={predicted}"));

    let positional = inverse(&p);
    let recursive = inverse_recursive(n);
    let composes_to_identity = p
        .compose(&recursive)
        .map(|c| c.is_identity())
        .unwrap_or(false);
    let ok = positional == recursive && composes_to_identity;
    let detail = if ok {
        "recursive == positional, pi * pi^-1 = id".to_string()
    } else {
        format!("recursive {recursive} vs positional {positional}")
    };
    push(ClaimId::Inverse, ok, detail);

    let qs = quarter_squares(n);
    let fixture = A002620_FIXTURE.get(n - 1).copied();
    let ok = inversions == qs && fixture.is_none_or(|f| f == inversions);
    let detail = match fixture {
        Some(f) => format!("inv={inversions} A002620={qs} fixture={f}"),
        None => format!("inv={inversions} A002620={qs}"),
    };
    push(ClaimId::Oeis, ok, detail);

    out
}

fn check_prefix(n: usize, p: &Permutation) -> (bool, String) {
    let m = n / 2;
    let (expected, len): (Vec<usize>, usize) = match n {
        1 => (vec![1], 1),
        2 => (vec![1, 2], 2),
        _ if n % 2 == 1 => (vec![m + 1, 1, 2 * m + 1], 3),
        _ => (vec![m, m + 1, 1, 2 * m], 4),
    };
    let actual = &p.values()[..len];
    let ok = actual == expected.as_slice();
    let kind = if n <= 2 { "base case " } else { "" };
    (ok, format!("{kind}prefix {actual:?} expected {expected:?}"))
}

fn check_recompose(n: usize, p: &Permutation) -> (bool, String) {
    let d = match decompose(n) {
        Ok(d) => d,
        Err(MeaError::SizeTooSmall { .. }) => {
            return (true, "base case: decompose rejects n < 3".into());
        }
        Err(e) => return (false, e.to_string()),
    };
    let child = generate_fast(d.child_n);
    match recompose(&d, &child) {
        Ok(r) if &r == p => (true, format!("child_n={}", d.child_n)),
        Ok(r) => (false, format!("recomposed {r} != {p}")),
        Err(e) => (false, e.to_string()),
    }
}

/// Inversions of `π_n` split into prefix / cross / tail buckets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InversionBuckets {
    pub prefix: u64,
    pub cross: u64,
    pub tail: u64,
}

impl InversionBuckets {
    /// Counts each bucket on `p`, treating its first `prefix_len` entries as the prefix.
    pub fn count(p: &Permutation, prefix_len: usize) -> Self {
        let (head, tail) = p.values().split_at(prefix_len);
        let prefix = head_inversions(head);
        let cross = head
            .iter()
            .map(|&h| tail.iter().filter(|&&t| h > t).count() as u64)
            .sum();
        let tail = inversion_count(&relative_order(tail));
        InversionBuckets {
            prefix,
            cross,
            tail,
        }
    }

    /// Bucket sizes predicted for `π_n`, `n >= 3`, given the child's inversion count.
    pub fn predicted(n: usize, child_inversions: u64) -> Self {
        let m = (n / 2) as u64;
        match Parity::of(n) {
            Parity::Odd => InversionBuckets {
                prefix: 1,
                cross: 3 * m - 3,
                tail: child_inversions,
            },
            Parity::Even => InversionBuckets {
                prefix: 2,
                cross: 4 * m - 8,
                tail: child_inversions,
            },
        }
    }
}

fn head_inversions(head: &[usize]) -> u64 {
    let mut count = 0;
    for i in 0..head.len() {
        for j in i + 1..head.len() {
            if head[i] > head[j] {
                count += 1;
            }
        }
    }
    count
}

/// Standardizes distinct values to a permutation of `1..=len` with the same relative order.
fn relative_order(values: &[usize]) -> Permutation {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_unstable_by_key(|&i| values[i]);
    let mut ranks = vec![0; values.len()];
    for (rank, i) in order.into_iter().enumerate() {
        ranks[i] = rank + 1;
    }
    Permutation::from_vec_unchecked(ranks)
}

fn check_inversion_buckets(n: usize, p: &Permutation) -> (bool, String) {
    let d = match decompose(n) {
        Ok(d) => d,
        Err(_) => {
            let inv = inversion_count(p);
            return (inv == 0, format!("base case: inv={inv}"));
        }
    };
    let child_inversions = inversion_count(&generate_fast(d.child_n));
    let actual = InversionBuckets::count(p, d.prefix.len());
    let expected = InversionBuckets::predicted(n, child_inversions);
    (
        actual == expected,
        format!(
            "prefix={} cross={} tail={} expected {}/{}/{}",
            actual.prefix,
            actual.cross,
            actual.tail,
            expected.prefix,
            expected.cross,
            expected.tail
        ),
    )
}

/// `true` when `classify_alternation` of the shifted tail equals that of the child.
pub fn shift_preserves_alternation(n: usize) -> Result<bool> {
    let d = decompose(n)?;
    let child = generate_fast(d.child_n);
    let tail = relative_order(&d.shifted_tail(&child)?);
    Ok(classify_alternation(&tail) == classify_alternation(&child))
}
