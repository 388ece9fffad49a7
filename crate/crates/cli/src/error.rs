use std::path::PathBuf;

/// Exit codes shared by every command.
pub mod exit {
    pub const OK: u8 = 0;
    pub const USAGE: u8 = 2;
    pub const MEMBERSHIP: u8 = 3;
    pub const AMBIGUOUS: u8 = 4;
    pub const MISMATCH: u8 = 5;
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Parse(String),
    #[error("{0}")]
    Argument(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Library(#[from] chiso::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use chiso::Error as E;
        match self {
            CliError::Parse(_) | CliError::Argument(_) | CliError::Io { .. } => exit::USAGE,
            CliError::Library(e) => match e {
                E::NotMember { .. } => exit::MEMBERSHIP,
                E::Ambiguous(_)
                | E::IllConditioned { .. }
                | E::NoConvergence { .. }
                | E::NotSemisimple
                | E::Singular => exit::AMBIGUOUS,
                E::DimensionMismatch { .. }
                | E::FormMismatch
                | E::NonFinite
                | E::InvalidParameter(_)
                | E::NotFixingInfinity
                | E::SpaceLike => exit::USAGE,
            },
        }
    }
}
