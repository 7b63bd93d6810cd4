pub mod error;
pub mod gt;
pub mod lattice;
pub mod linalg;
pub mod nullcone;
pub mod poly;
pub mod straighten;
pub mod tableau;
pub mod verify;

pub use error::{Error, Result};
