pub mod arith;
pub mod burnside;
pub mod corpus;
pub mod error;
pub mod exactla;
pub mod grp;
pub mod json;
pub mod regfe;
pub mod suite;
pub mod zgmod;

pub use error::{Error, Result};
