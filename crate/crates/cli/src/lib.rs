//! Shell layer: expression parsing, group/scenario data files, verification
//! runners, and report emission.

pub mod groupdata;
pub mod report;
pub mod runners;
pub mod scenario;
pub mod parser;
