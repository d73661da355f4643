pub mod analysis;
pub mod cli;
pub mod dyck;
pub mod engine;
pub mod error;
pub mod network;
pub mod oracle;
pub mod qhit;
pub mod qpoly;
pub mod symfunc;

pub use error::{Error, Result};

pub type QPoly = qpoly::Poly<num_bigint::BigInt>;
pub type QRat = qpoly::RatFunc<num_bigint::BigInt>;
