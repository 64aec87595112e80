pub mod dividedext;
pub mod domainkit;
pub mod elemset;
pub mod error;
pub mod finring;
pub mod idealcalc;
pub mod phiclass;
pub mod polycontent;
pub mod theoremlab;

pub use error::{Error, Result};
