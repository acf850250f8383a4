//! Front end for `qtop-core`: link descriptors, report rendering and the
//! verification sweeps behind the `qtop` binary.

pub mod app;
pub mod approx;
pub mod error;
pub mod families;
pub mod link;
pub mod orbitdata;
pub mod render;
pub mod suites;

pub use error::CliError;
