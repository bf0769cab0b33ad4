#[cfg(feature = "cli")]
pub mod cli;
pub mod cliquegeom;
pub mod exactnum;
pub mod graphlab;
pub mod replay;
pub mod srgcore;
