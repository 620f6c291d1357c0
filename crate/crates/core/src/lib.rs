pub mod atlas;
pub mod automaton;
pub mod circle;
pub mod cli;
pub mod error;
pub mod exact;
pub mod system;
pub mod verify;

pub use error::{Error, Result};
