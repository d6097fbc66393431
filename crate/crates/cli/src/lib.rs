//! Text formats, the named check suite and the command-line front end for
//! `virmod-core`.

pub mod suite;
pub mod text;
