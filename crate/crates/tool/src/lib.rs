//! `.mbs` files, reports, DOT export, parallel evaluation and the `mbs`
//! command line on top of [`mbs_core`].

pub mod cli;
pub mod dot;
pub mod format;
pub mod parallel;
pub mod report;
