//! Command-line front end for `extform`.
//!
//! Every subcommand produces one JSON report document and a few lines of
//! human-readable summary. Exit codes:
//!
//! | code  | meaning                                        |
//! |-------|------------------------------------------------|
//! | 0     | success                                        |
//! | 1     | a check reported by the command failed         |
//! | 2     | the input could not be parsed                  |
//! | 3     | the input is well-formed but unsuitable        |
//! | 4     | a file could not be read or written            |
//! | 10-15 | `classify`: types a, b, c, d, e, zero          |

pub mod commands;
pub mod report;
pub mod verify;

pub use commands::{run, Cli, CliError, Command, Mode, Outcome};
