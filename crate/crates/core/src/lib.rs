pub mod error;
pub mod grothendieck;
pub mod monoid;
pub mod nakayama;
pub mod regress;
pub mod repkit;
pub mod symgroup;
pub mod type_a;

pub use error::{Error, Result};
