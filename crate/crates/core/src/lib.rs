pub mod centerlat;
pub mod error;
pub mod exec;
pub mod fusion;
pub mod linalg;
pub mod phases;
pub mod rootdata;
pub mod verlinde;
pub mod weyl;

pub use error::{Error, Result};
pub use exec::Execution;
pub use rootdata::{Family, LieType, RootDatum};
pub use weyl::{WeylElement, WeylGroup};
