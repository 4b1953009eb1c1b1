//! Session files, reports and the `tsv` command line driver on top of
//! `tsv-core`.

pub mod cli;
pub mod session;

pub use cli::run;
pub use session::{Session, SessionError};
