//! Arithmetic on fuzzy intervals.
//!
//! Values are stored as pairs of fuzzy endpoint functions of the level α;
//! membership functions are recovered through generalized inverses. The
//! four operations act level-wise, and every result can be checked against
//! a brute-force sup-min extension-principle oracle.

pub mod arith;
pub mod cli;
pub mod error;
pub mod expr;
pub mod fuzzy;
pub mod interval;
pub mod oracle;
pub mod piecewise;

pub use arith::Op;
pub use error::{Error, Result};
pub use fuzzy::{AlphaCut, CharView, FuzzyInterval};
pub use interval::Interval;
pub use piecewise::double_inverse_roundtrip;
