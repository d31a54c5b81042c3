//! Transfer systems, their change-of-group functors, admissible sets of
//! discrete operads, and rewriting presentations of operadic coproducts and
//! tensor products, all over small finite groups.

pub mod catalog;
pub mod error;
pub mod format;
pub mod functors;
pub mod grp;
pub mod indexing;
pub mod operad;
pub mod report;
pub mod rewrite;
pub mod transfer;
pub mod verify;

pub use error::{Error, Result};
pub use report::Report;
