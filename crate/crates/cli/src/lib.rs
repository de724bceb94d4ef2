//! Argument grammar, dispatch and output documents of the `coxring` binary.

pub mod args;
mod commands;
mod input;
pub mod output;

pub use args::{Cli, Format};
pub use commands::{run, Output};
