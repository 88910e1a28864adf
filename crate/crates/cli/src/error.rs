use std::path::{Path, PathBuf};

use nanotop_core::NanoError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    /// `line` is 1-based; 0 means the problem is not tied to one line.
    #[error("{}{message}", if *line > 0 { format!("line {line}: ") } else { String::new() })]
    Parse { line: usize, message: String },
    #[error("{path}: {source}", path = path.display())]
    InFile {
        path: PathBuf,
        #[source]
        source: Box<CliError>,
    },
    #[error("cannot read {path}: {source}", path = path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Nano(#[from] NanoError),
}

impl CliError {
    pub fn at(line: usize, error: NanoError) -> Self {
        CliError::Parse {
            line,
            message: error.to_string(),
        }
    }

    pub fn in_file(self, path: &Path) -> Self {
        CliError::InFile {
            path: path.to_path_buf(),
            source: Box::new(self),
        }
    }
}
