#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod cli;
pub mod coeffs;
mod dd;
pub mod error;
pub mod geometry;
pub mod means;
pub mod point;
pub mod quadrature;
pub mod report;
pub mod rng;
pub mod solutions;
pub mod specfun;
pub mod wos;

pub use error::{Error, Result};
pub use point::Point;
pub use report::CheckReport;
