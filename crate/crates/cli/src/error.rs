//! Error classification and exit codes.

use serde_json::{json, Value};

use edim::crossratio::CrossRatioError;
use edim::edengine::EngineError;
use edim::exactfield::FieldError;
use edim::fielddesc::FieldDescError;
use edim::groups::GroupError;
use edim::pgl2::Pgl2Error;
use edim::ratfunc::RatFnError;
use edim::tschirnhaus::TschirnhausError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    /// Text that does not match a grammar.
    Parse,
    /// Well-formed input with an invalid value, e.g. `E(4,2)`.
    Value,
    TooLarge,
    Unsupported,
    /// A derivation or verification contradicted itself.
    Inconsistent,
}

impl ErrorKind {
    fn name(self) -> &'static str {
        match self {
            ErrorKind::Parse => "parse",
            ErrorKind::Value => "value",
            ErrorKind::TooLarge => "too_large",
            ErrorKind::Unsupported => "unsupported",
            ErrorKind::Inconsistent => "inconsistent",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CliError {
    pub kind: ErrorKind,
    pub message: String,
}

impl CliError {
    pub fn new(kind: ErrorKind, message: String) -> CliError {
        CliError { kind, message }
    }

    pub fn exit_code(&self) -> u8 {
        match self.kind {
            ErrorKind::Parse | ErrorKind::Value => 2,
            ErrorKind::TooLarge | ErrorKind::Unsupported => 3,
            ErrorKind::Inconsistent => 4,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({ "kind": self.kind.name(), "message": self.message, "exit_code": self.exit_code() })
    }
}

fn err(kind: ErrorKind, e: impl std::fmt::Display) -> CliError {
    CliError::new(kind, e.to_string())
}

impl From<GroupError> for CliError {
    fn from(e: GroupError) -> Self {
        let kind = match e {
            GroupError::Parse(_) => ErrorKind::Parse,
            GroupError::TooLarge(_) => ErrorKind::TooLarge,
            GroupError::Invalid(_) | GroupError::NotPrimeOrder(_) => ErrorKind::Value,
        };
        err(kind, e)
    }
}

impl From<FieldDescError> for CliError {
    fn from(e: FieldDescError) -> Self {
        let kind = match e {
            FieldDescError::Parse(_) => ErrorKind::Parse,
            FieldDescError::CharZero => ErrorKind::Unsupported,
            FieldDescError::CharDividesM(..) | FieldDescError::Inconsistent(_) => ErrorKind::Value,
        };
        err(kind, e)
    }
}

impl From<FieldError> for CliError {
    fn from(e: FieldError) -> Self {
        let kind = match e {
            FieldError::NotPrime(_) | FieldError::ZeroElement | FieldError::DomainMismatch => ErrorKind::Value,
            FieldError::DegreeTooLarge(_) | FieldError::TooLarge(_) => ErrorKind::TooLarge,
        };
        err(kind, e)
    }
}

impl From<RatFnError> for CliError {
    fn from(e: RatFnError) -> Self {
        err(ErrorKind::Inconsistent, e)
    }
}

impl From<EngineError> for CliError {
    fn from(e: EngineError) -> Self {
        let kind = match e {
            EngineError::TooLarge(_) => ErrorKind::TooLarge,
            EngineError::Inconsistent { .. } => ErrorKind::Inconsistent,
            EngineError::NotCentral(_) | EngineError::NotPrimeOrder(_) | EngineError::Invalid(_) => ErrorKind::Value,
        };
        err(kind, e)
    }
}

impl From<Pgl2Error> for CliError {
    fn from(e: Pgl2Error) -> Self {
        match e {
            Pgl2Error::Field(f) => f.into(),
            Pgl2Error::TooLarge(_) => err(ErrorKind::TooLarge, e),
            Pgl2Error::Singular => err(ErrorKind::Inconsistent, e),
            Pgl2Error::Unsupported(_)
            | Pgl2Error::EvenChar
            | Pgl2Error::RealZetaAbsent(_)
            | Pgl2Error::DependentAlphas => err(ErrorKind::Unsupported, e),
        }
    }
}

impl From<TschirnhausError> for CliError {
    fn from(e: TschirnhausError) -> Self {
        match e {
            TschirnhausError::Field(f) => f.into(),
            TschirnhausError::CharDividesDegree | TschirnhausError::Unsupported(_) => err(ErrorKind::Unsupported, e),
            TschirnhausError::SplittingTooLarge(_) => err(ErrorKind::TooLarge, e),
            TschirnhausError::PoleAtAssignment => err(ErrorKind::Value, e),
            TschirnhausError::DegenerateTail | TschirnhausError::RatFn(_) => err(ErrorKind::Inconsistent, e),
        }
    }
}

impl From<CrossRatioError> for CliError {
    fn from(e: CrossRatioError) -> Self {
        let kind = match e {
            CrossRatioError::InvalidSymbol(_) | CrossRatioError::AmbientTooSmall(_) => ErrorKind::Value,
            CrossRatioError::AmbientOutOfRange(_) => ErrorKind::Unsupported,
            CrossRatioError::RatFn(_) => ErrorKind::Inconsistent,
        };
        err(kind, e)
    }
}
