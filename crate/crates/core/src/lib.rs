//! Arithmetic in the Eisenstein integers, the cubic residue character, and
//! tooling for small cubic Diophantine equations.

pub mod catalog;
pub mod character;
pub mod eisenstein;
pub mod error;
pub mod factor;
pub mod par;
pub mod proof;
pub mod rational;
pub mod search;

pub use eisenstein::{CharValue, EisensteinInt, Unit};
pub use error::{Error, Result};
