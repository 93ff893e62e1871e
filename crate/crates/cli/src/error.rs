use thiserror::Error;

use two_transit::crossed::CrossedModuleError;
use two_transit::diagram::DiagramError;
use two_transit::finset::FinSetError;
use two_transit::group::GroupError;
use two_transit::shape::ShapeError;
use two_transit::transition1::TransitionError;
use two_transit::transition2::Transition2Error;

/// A failed command: bad input (exit 2) or a violated law (exit 1).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("{kind}: {message}")]
    Input { kind: &'static str, message: String },
    #[error("{kind}: {message}")]
    Law { kind: &'static str, message: String },
}

impl CliError {
    pub fn input(message: impl Into<String>) -> Self {
        CliError::Input {
            kind: "InputError",
            message: message.into(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Input { kind, .. } | CliError::Law { kind, .. } => kind,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Input { message, .. } | CliError::Law { message, .. } => message,
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input { .. } => 2,
            CliError::Law { .. } => 1,
        }
    }
}

macro_rules! law_errors {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Law { kind: e.kind(), message: e.to_string() }
            }
        }
    )*};
}

law_errors!(CrossedModuleError, FinSetError, GroupError, ShapeError, TransitionError, Transition2Error);

impl From<DiagramError> for CliError {
    fn from(e: DiagramError) -> Self {
        match e {
            DiagramError::SyntaxError { .. } => CliError::Input {
                kind: e.kind(),
                message: e.to_string(),
            },
            e => CliError::Law {
                kind: e.kind(),
                message: e.to_string(),
            },
        }
    }
}
