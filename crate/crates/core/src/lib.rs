//! Exact computations in finitely generated algebras over the rationals.

pub mod derivation;
mod error;
pub mod graded;
pub mod jet;
mod limits;
pub mod linalg;
pub mod local;
pub mod poly;
mod report;
pub mod retract;
pub mod ring;
pub mod subalgebra;

pub use error::{Error, Result};
pub use limits::Limits;
pub use report::{Report, Status, Witness};
