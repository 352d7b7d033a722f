use std::fmt;

/// Failure classes, each mapped to a distinct process exit code so scripts
/// can tell configuration mistakes from physics violations from I/O trouble.
#[derive(Debug)]
pub enum CliError {
    /// Scenario or argument text that does not parse or violates the schema.
    Parse(String),
    /// Parameters that parse fine but describe something unphysical; the
    /// message names the violated invariant.
    Domain(cvteleport_core::Error),
    /// Filesystem or stream failure, with the offending path for context.
    Io(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Io(_) => 4,
        }
    }

    /// Wrap an I/O error with the path it happened on.
    pub fn io(path: &std::path::Path, err: std::io::Error) -> Self {
        CliError::Io(format!("{}: {err}", path.display()))
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse(msg) => write!(f, "{msg}"),
            CliError::Domain(err) => write!(f, "{err}"),
            CliError::Io(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<cvteleport_core::Error> for CliError {
    fn from(err: cvteleport_core::Error) -> Self {
        CliError::Domain(err)
    }
}
