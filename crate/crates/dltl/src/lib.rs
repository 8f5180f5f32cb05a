//! File formats, automaton dumps and the command-line front end for
//! [`dltl_core`].

pub mod cli;
pub mod dump;
pub mod format;

/// Problems with user input: files, arguments, formulas and models.
#[derive(Debug, thiserror::Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("{0}")]
    Argument(String),
    #[error(transparent)]
    Core(#[from] dltl_core::Error),
}
