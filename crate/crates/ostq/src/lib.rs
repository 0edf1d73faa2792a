//! Text formats and command-line front end for the table algebra in
//! `ostq-core`.

pub mod format;
