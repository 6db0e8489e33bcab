//! Schlesinger-Zudilin multiple q-zeta values as exact computer algebra.
//!
//! * [`word`]: words over `{u_0, u_1, ...}` and rational linear combinations;
//! * [`stuffle`]: the quasi-shuffle product, three ways, and its multiplicities;
//! * [`duality`]: the involution `tau`;
//! * [`qseries`]: truncated q-expansions `sz(W)`;
//! * [`partitions`]: marked partitions and their enumeration by type;
//! * [`phi`]: the gluing pairing, block decomposition and the exhaustive
//!   multiplicity check;
//! * [`relations`]: linear relations among truncated `sz` values.

pub mod duality;
pub mod error;
pub mod exec;
pub mod partitions;
pub mod phi;
pub mod qseries;
pub mod relations;
pub mod stuffle;
pub mod word;

pub use error::{Error, Result};
pub use exec::Exec;
pub use partitions::{MarkedPartition, Partition};
pub use qseries::TruncatedSeries;
pub use word::{Coeff, LinearCombination, Word};
