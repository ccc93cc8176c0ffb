//! Exact coefficients of pro-p-Iwahori test functions for `GL_n` and
//! `GSp_2n`, computed from Bruhat path combinatorics.

pub mod abelianlat;
pub mod affine;
pub mod bruhatpaths;
pub mod cli;
pub mod coeffengine;
pub mod error;
pub mod poly;
pub mod report;
pub mod rootdata;
pub mod rpoly;
pub mod weylgroup;

pub use error::{Error, Result};
