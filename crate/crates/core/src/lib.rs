pub mod derived;
pub mod error;
pub mod exactlin;
pub mod homalg;
pub mod io;
pub mod orthopair;
pub mod perpalg;
pub mod quiverrep;
pub mod valuation;

pub use error::{Error, Result};
