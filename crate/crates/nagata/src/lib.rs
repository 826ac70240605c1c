//! File format, random generation, the corpus battery and the command line
//! front end for `nagata-core`.

pub mod check;
pub mod cli;
pub mod corpus_files;
pub mod format;
pub mod random;
pub mod suite;
