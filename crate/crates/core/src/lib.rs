//! Estimates of gate failure, gate rate and full-machine runtime for
//! trapped-ion processors using motional or cavity-photon coupling, with a
//! small dynamics integrator to cross-check the closed-form error models.

pub mod advisory;
pub mod architecture;
pub mod atom;
pub mod cavity;
pub mod config;
pub mod constants;
pub mod cqed;
pub mod error;
pub mod metrics;
pub mod motional;
pub mod optimize;
pub mod oracle;
pub mod report;
pub mod species;
pub mod trap;
pub mod units;

pub use advisory::{Advisory, Severity};
pub use error::{Error, Result};
