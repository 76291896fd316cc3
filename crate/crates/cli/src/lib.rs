//! File formats and the `soltrans` command line on top of `soltrans-core`.

pub mod cli;
pub mod error;
pub mod io;
pub mod oracles;
pub mod pipeline;
pub mod presets;
pub mod random;
pub mod report;
pub mod sweep;

pub use error::Error;
