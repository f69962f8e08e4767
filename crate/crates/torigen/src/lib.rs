//! Universal toric genus and complex cobordism classes of homogeneous spaces
//! with positive Euler characteristic, computed exactly by fixed-point
//! localization and cross-checked with divided-difference operators.

pub mod chern;
pub mod cli;
pub mod divdiff;
pub mod error;
pub mod fgl;
pub mod genus;
pub mod exactalg;
pub mod rootdata;
pub mod stablex;
pub mod symmfunc;

pub use error::{Error, Result};
