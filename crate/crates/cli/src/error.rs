use serde::Serialize;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config: {0}")]
    Config(String),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Library(#[from] cstar_info::Error),
}

#[derive(Serialize)]
struct ErrorReport<'a> {
    error: &'a str,
    exit_code: i32,
    message: String,
}

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        Self::Config(msg.into())
    }

    /// 1 = config, 2 = guard exceeded, 3 = numeric failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Library(cstar_info::Error::GuardExceeded { .. }) => 2,
            Self::Library(cstar_info::Error::NoConvergence { .. }) => 3,
            _ => 1,
        }
    }

    fn kind(&self) -> &'static str {
        match self.exit_code() {
            2 => "guard_exceeded",
            3 => "numeric_failure",
            _ => match self {
                Self::Io(_) => "io",
                _ => "config",
            },
        }
    }

    /// Machine-readable form for standard error.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&ErrorReport {
            error: self.kind(),
            exit_code: self.exit_code(),
            message: self.to_string(),
        })
        .expect("error report serializes")
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
