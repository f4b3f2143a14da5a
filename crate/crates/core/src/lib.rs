//! Exact combinatorics of A-parameters, component groups and theta-lift packet labels.

pub mod arith;
pub mod dsl;
pub mod error;
pub mod global;
pub mod group;
pub mod labels;
pub mod ledger;
pub mod moeglin;
pub mod packet;
pub mod param;
pub mod theta;

pub use arith::{HalfInt, Sign};
pub use error::{Error, Result};
