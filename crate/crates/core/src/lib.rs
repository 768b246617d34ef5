//! Ratliff-Rush filtrations of monomial ideals in numerical semigroup rings.
//!
//! A monomial ideal `I = (t^e : e ∈ E)` of `k[[S]]` is handled through its
//! value set `E`, a [`RelativeIdeal`] of the numerical semigroup `S`. Powers,
//! colons and intersections of monomial ideals become sums, differences and
//! intersections of value sets, so every ring-side invariant here (reduction
//! number, Ratliff-Rush closures, the asymptotic Ratliff-Rush number, Cohen-Macaulay
//! criteria for associated graded objects) is computed exactly from integer
//! data.

pub mod criteria;
pub mod error;
pub mod family;
pub mod filtration;
pub mod ideal;
pub mod limits;
pub mod notation;
pub mod oracle;
pub mod report;
pub mod semigroup;
pub mod sweep;

pub use criteria::{MicroKind, Microinvariants, PullbackData};
pub use error::{Error, Result};
pub use filtration::RRReport;
pub use ideal::RelativeIdeal;
pub use semigroup::{AperyTable, NumericalSemigroup};
