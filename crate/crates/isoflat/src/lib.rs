//! File formats, parallel enumeration and the command-line front end for
//! [`isoflat_core`].

pub mod bgf;
pub mod cli;
pub mod output;
pub mod parallel;
