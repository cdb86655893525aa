//! Exact computations around fully packed loops and the completely packed loop model.

mod error;

pub mod apoly;
pub mod cpl;
pub mod fixtures;
pub mod fpl;
pub mod harness;
pub mod hook;
pub mod matching;
pub mod multiplicity;
pub mod poly;
pub mod qkz;
pub mod young;

pub use error::{Error, Result};
pub use matching::{enumerate_matchings, parse_matching, Matching};
pub use young::YoungDiagram;
