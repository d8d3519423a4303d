//! Expression language and command-line front end for `qcone`.
//!
//! ```
//! use qcone_cli::expr::parse;
//! use qcone_cli::value::{eval, Context};
//!
//! let v = eval(&parse("zs^2*z").unwrap(), Context::default()).unwrap();
//! assert_eq!(v.to_string(), "q^2*z*zs^2 + g*(1+q)*zs");
//! ```

pub mod commands;
pub mod expr;
pub mod numeric;
pub mod value;

pub use commands::{main_with, run_command, Cli, Command, Report};
