pub mod analysis;
pub mod assign;
pub mod channel;
pub mod convcode;
pub mod error;
pub mod harness;
pub mod modem;
pub mod permmap;
pub mod schemes;

pub use error::{Error, Result};
