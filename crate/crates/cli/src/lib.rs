//! Session files, task execution and reporting for `ralab`.

pub mod ast;
pub mod cli;
pub mod env;
mod error;
pub mod lexer;
pub mod parser;
pub mod registry;
pub mod report;
pub mod tasks;

pub use error::{Pos, SessionError};
pub use parser::parse_session;
