use std::fmt;
use std::path::{Path, PathBuf};

/// A failed command, classified for the process exit code.
#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Data(String),
    Io { path: PathBuf, source: std::io::Error },
    Core(lexlevel::Error),
}

impl Failure {
    pub fn io(path: impl AsRef<Path>, source: std::io::Error) -> Self {
        Failure::Io {
            path: path.as_ref().to_path_buf(),
            source,
        }
    }

    /// 1 usage, 2 data, 3 numerical.
    pub fn exit_code(&self) -> i32 {
        match self {
            Failure::Usage(_) => 1,
            Failure::Core(e) if e.is_numerical() => 3,
            Failure::Core(lexlevel::Error::InvalidParameter(_)) => 1,
            Failure::Data(_) | Failure::Io { .. } | Failure::Core(_) => 2,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(m) | Failure::Data(m) => f.write_str(m),
            Failure::Io { path, source } => write!(f, "{}: {source}", path.display()),
            Failure::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<lexlevel::Error> for Failure {
    fn from(e: lexlevel::Error) -> Self {
        Failure::Core(e)
    }
}
