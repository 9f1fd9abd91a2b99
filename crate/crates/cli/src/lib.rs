//! Command-line front end for the `equidim` kernel: the system file format,
//! the benchmark generators and the JSON report.

pub mod gen;
pub mod run;
pub mod system;

pub use gen::{gen_ps, gen_sos};
pub use run::{run, Report, RunConfig, VerifyLevel};
pub use system::SystemFile;
