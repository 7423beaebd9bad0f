//! Exit-code policy: 0 success, 2 schema or input problems, 3 evaluation
//! failures (budget or stability), 4 verification failures. Nothing else.

#[derive(Debug)]
pub enum CliError {
    /// Unreadable, unparsable or semantically invalid scenario input.
    Schema(String),
    /// The closed form (or a requested oracle) could not produce a value.
    Eval(String),
    /// The verification run found disagreements.
    VerifyFailed(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Schema(_) => 2,
            CliError::Eval(_) => 3,
            CliError::VerifyFailed(_) => 4,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Schema(m) | CliError::Eval(m) | CliError::VerifyFailed(m) => m,
        }
    }
}
