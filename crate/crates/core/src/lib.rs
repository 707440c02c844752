//! Unary NFAs to unions of arithmetic progressions and Chrobak normal form.
//!
//! The conversion ([`chrobak::convert`]) trims and normalizes the input,
//! splits it into strongly connected components, computes the cycle-length
//! gcd of each nontrivial component from boolean matrix powers, and then
//! assembles:
//!
//! * every accepted length up to `2n² + n` as a singleton, and
//! * for every nontrivial component `D`, progressions `a + gcd(D)·N` with
//!   `2n² + n < a < 2n² + 3n`, one per offset `a` realised by a path whose
//!   last nontrivial component is `D`.
//!
//! The [`oracle`] module holds an independent subset-construction
//! determinizer used to check every result.
//!
//! ```
//! use chrobak::{chrobak::convert, nfa::UnaryNfa, oracle, semilinear::EventuallyPeriodicSet};
//!
//! let nfa: UnaryNfa = "states 2\ninitial 0\nfinal 0\nedge 0 1\nedge 1 0\n".parse().unwrap();
//! let conversion = convert(&nfa).unwrap();
//! let denoted = EventuallyPeriodicSet::from_progressions(&conversion.progressions).unwrap();
//! assert_eq!(denoted, oracle::determinize(&nfa).unwrap());
//! ```

pub mod chrobak;
pub mod cycle_gcd;
pub mod fixtures;
pub mod generate;
pub mod nfa;
pub mod oracle;
pub mod scc;
pub mod semilinear;
pub mod verify;

pub use crate::chrobak::{convert, ChrobakNfa, Conversion};
pub use crate::nfa::{NormalizedNfa, UnaryNfa};
pub use crate::semilinear::{ArithmeticProgression, EventuallyPeriodicSet, ProgressionSet};
