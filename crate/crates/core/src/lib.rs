pub mod algorn;
pub mod container;
pub mod corpus;
pub mod derivative;
pub mod desc;
pub mod error;
pub mod finset;
pub mod frontend;
pub mod ornament;
pub mod pullback;
pub mod report;

pub use error::{Error, Result};
