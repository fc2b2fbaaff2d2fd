pub mod cli;
pub mod error;
pub mod exactalg;
pub mod fqlinalg;
pub mod lrb;
pub mod perm;
pub mod qnums;
pub mod spectra;
pub mod symfun;

pub use error::{Error, Result};
