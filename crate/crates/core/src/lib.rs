pub mod cli;
pub mod eigenfunction;
pub mod error;
pub mod optimizer;
pub mod scaled;
pub mod higherdim;
pub mod lowerbound;
pub mod quadrature;
pub mod signpatterns;
pub mod specfun;
pub mod verify;

pub use error::{Error, Result};
pub use scaled::ScaledValue;
