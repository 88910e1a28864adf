//! File formats and subcommands behind the `nanotop` binary.

mod commands;
mod error;
mod format;
mod report;

pub use commands::{run_command, Outcome};
pub use error::CliError;
pub use format::{
    format_space, load_map, load_space, parse_map_file, parse_map_header, parse_space_file,
    LoadedMap, MapFile,
};
pub use report::{FamilyReport, JsonReport};
