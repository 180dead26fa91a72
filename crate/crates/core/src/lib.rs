pub mod dilog;
pub mod elliptic;
pub mod error;
pub mod oracle;
pub mod pentagram;
pub mod poncelet;
pub mod projection;
pub mod spectrum;
pub mod uniformization;
pub mod vec3;
pub mod verify;

pub use error::{Error, Result};
