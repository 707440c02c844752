//! End-to-end self-check of the conversion against determinization.

use thiserror::Error;

use crate::chrobak::{self, ConvertError};
use crate::nfa::UnaryNfa;
use crate::oracle::{self, OracleError};
use crate::semilinear::{EventuallyPeriodicSet, ProgressionSet, SemilinearError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Convert(#[from] ConvertError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Semilinear(#[from] SemilinearError),
}

/// Outcome of comparing a candidate description with the exact language.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Equal,
    /// Smallest length on which the two disagree.
    Differs(u64),
}

fn compare(
    candidate: &ProgressionSet,
    nfa: &UnaryNfa,
    det_limit: usize,
) -> Result<Verdict, VerifyError> {
    let expected = oracle::determinize_with_limit(nfa, det_limit)?;
    let got = EventuallyPeriodicSet::from_progressions(candidate)?;
    Ok(match got.first_difference(&expected) {
        None => Verdict::Equal,
        Some(x) => Verdict::Differs(x),
    })
}

/// Runs the conversion and compares its progression set with the
/// subset-construction language.
pub fn check_conversion(nfa: &UnaryNfa, det_limit: usize) -> Result<Verdict, VerifyError> {
    let conversion = chrobak::convert(nfa)?;
    compare(&conversion.progressions, nfa, det_limit)
}

/// Same comparison for the naive Diophantine over-approximation.
pub fn check_overapprox(
    nfa: &UnaryNfa,
    det_limit: usize,
    size_limit: usize,
) -> Result<Verdict, VerifyError> {
    let over = oracle::diophantine_overapprox(nfa, size_limit)?;
    compare(&over, nfa, det_limit)
}
