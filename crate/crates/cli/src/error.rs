use serde_json::json;
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_GUARD: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;
pub const EXIT_DISAGREE: i32 = 5;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] widthone::Error),

    #[error("invalid argument: {0}")]
    Usage(String),

    #[error("methods disagree: {0}")]
    Disagreement(String),

    #[error("verification failed: {0}")]
    Verification(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if e.is_guard() => EXIT_GUARD,
            CliError::Core(_) | CliError::Usage(_) => EXIT_USAGE,
            CliError::Disagreement(_) => EXIT_DISAGREE,
            CliError::Verification(_) => EXIT_VERIFY,
            CliError::Io(_) => EXIT_IO,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Core(e) if e.is_guard() => "guard",
            CliError::Core(_) => "domain",
            CliError::Usage(_) => "usage",
            CliError::Disagreement(_) => "disagreement",
            CliError::Verification(_) => "verification",
            CliError::Io(_) => "io",
        }
    }

    /// Machine-readable error object, one line of JSON.
    pub fn to_json(&self) -> String {
        json!({
            "error": {
                "kind": self.kind(),
                "exit_code": self.exit_code(),
                "message": self.to_string(),
            }
        })
        .to_string()
    }
}
