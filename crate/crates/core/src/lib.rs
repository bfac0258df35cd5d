//! Median-extremes alternation (MEA) permutations.
//!
//! Starting from `1, 2, …, n`, repeatedly take the middle element(s) of the
//! remaining ordered list, then its minimum and maximum, until nothing is
//! left. The values in the order taken form the permutation `π_n`.
//!
//! * [`generation`]: the process simulator, a linear-time builder, and the
//!   prefix/shifted-tail decomposition.
//! * [`statistics`]: inversions, descents, alternation type, sign, inverses
//!   and cycle structure, with closed forms for `π_n`.
//! * [`verification`]: range checks of every structural claim.
//! * [`cli`]: the `mea` command-line tool.

pub mod cli;
pub mod error;
pub mod generation;
pub mod permutation;
pub mod statistics;
pub mod verification;

pub use error::{MeaError, Result};
pub use generation::{
    decompose, generate_fast, generate_naive, recompose, Parity, RecursionDecomposition, ShiftMap,
};
pub use permutation::Permutation;
pub use statistics::{
    classify_alternation, cycle_structure, descent_set, inverse, inverse_recursive,
    inversion_count, inversion_formula, order, predicted_descent_set, sign, sign_formula,
    AlternationType, Sign, StatsReport,
};
pub use verification::{quarter_squares, verify_range, ClaimId, VerificationReport};
