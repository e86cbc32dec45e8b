//! Output formats shared by the `gasym` binary and its tests.

pub mod doc;
pub mod plot;
