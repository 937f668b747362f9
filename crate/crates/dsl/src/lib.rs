//! A small language for declaring Lie algebroids, cocycles, bivectors,
//! Jacobi structures, pairs and morphisms, and the command layer that checks
//! them.

pub mod ast;
pub mod cli;
pub mod commands;
pub mod error;
pub mod emit;
pub mod lexer;
pub mod parser;
pub mod model;
pub mod render;
pub mod report;

pub use error::{DslError, ErrorKind, Pos};
pub use parser::{parse, parse_expr};
pub use commands::{run, Command, Outcome};
pub use report::Report;
