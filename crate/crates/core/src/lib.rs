#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod accel;
pub mod catalog;
pub mod checks;
pub mod closed_form;
pub mod config;
pub mod error;
pub mod mellin;
pub mod oracles;
pub mod quadrature;
pub mod specfun;
pub mod summation;

pub use error::{Error, Result};
