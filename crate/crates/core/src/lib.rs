//! Exact arithmetic for negative-base numeration: (-b)-expansions of elements
//! of Q(b), admissibility in the alternate order, closed-form criteria for
//! quadratic Pisot units, and certificates of pure periodicity.

pub mod algebraic;
pub mod digits;
pub mod error;
pub mod expansion;
pub mod harness;
pub mod periodicity;
pub mod quadratic;
pub mod text;

pub use algebraic::{
    make_base, BaseContext, Family, FieldElement, IntPoly, QuadFamily, RootHint,
};
pub use error::{Error, Result};
pub use digits::{alt_compare, DigitWord, EventuallyPeriodicString, ReferenceStrings};
pub use expansion::{expand, expand_real, evaluate, Expansion};
