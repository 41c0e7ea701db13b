use telebroadcast::bandwidth::BandwidthError;
use telebroadcast::oracle::OracleError;
use telebroadcast::reductions::ReductionError;

/// An error with the exit code it maps to.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

pub type Outcome<T> = Result<T, Failure>;

impl Failure {
    pub const INVALID: u8 = 1;
    pub const USAGE: u8 = 2;
    pub const CAP: u8 = 3;

    pub fn invalid(message: impl Into<String>) -> Self {
        Self {
            code: Self::INVALID,
            message: message.into(),
        }
    }

    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: Self::USAGE,
            message: message.into(),
        }
    }

    pub fn cap(message: impl Into<String>) -> Self {
        Self {
            code: Self::CAP,
            message: message.into(),
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::InstanceTooLarge { .. } | OracleError::CoverTooLarge { .. } => {
                Failure::cap(e.to_string())
            }
            _ => Failure::usage(e.to_string()),
        }
    }
}

impl From<BandwidthError> for Failure {
    fn from(e: BandwidthError) -> Self {
        match e {
            BandwidthError::BudgetExceeded { .. } => Failure::cap(e.to_string()),
            _ => Failure::usage(e.to_string()),
        }
    }
}

impl From<ReductionError> for Failure {
    fn from(e: ReductionError) -> Self {
        match e {
            ReductionError::InstanceTooLarge { .. } => Failure::cap(e.to_string()),
            _ => Failure::usage(e.to_string()),
        }
    }
}
