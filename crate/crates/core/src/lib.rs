pub mod algebra;
pub mod catalog;
pub mod datum;
pub mod error;
pub mod monomial;
pub mod prepro;
pub mod quiver;
pub mod randmat;
pub mod series;

pub use error::{Error, Result};
