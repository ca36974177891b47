//! Command-level errors and their exit codes.

use thiserror::Error;

use crate::algebra::AlgebraError;
use crate::constructions::ConstructionError;
use crate::explorer::ExplorerError;
use crate::input::InputError;
use crate::structure::StructureError;
use crate::theorems::SuiteError;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_FIELD: i32 = 4;
pub const EXIT_VERIFICATION: i32 = 5;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("budget exceeded: {0}")]
    Budget(String),
    #[error("field precondition: {0}")]
    Field(String),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => EXIT_INPUT,
            CliError::Budget(_) => EXIT_BUDGET,
            CliError::Field(_) => EXIT_FIELD,
            CliError::Verification(_) => EXIT_VERIFICATION,
        }
    }
}

impl From<InputError> for CliError {
    fn from(e: InputError) -> Self {
        match e {
            InputError::Field { .. } => CliError::Field(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        match e {
            AlgebraError::Budget { .. } => CliError::Budget(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<ConstructionError> for CliError {
    fn from(e: ConstructionError) -> Self {
        match e {
            ConstructionError::CharacteristicTwo => CliError::Field(e.to_string()),
            ConstructionError::Algebra(a) => a.into(),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<StructureError> for CliError {
    fn from(e: StructureError) -> Self {
        match e {
            StructureError::SmallCharacteristic { .. } => CliError::Field(e.to_string()),
            StructureError::Algebra(a) => a.into(),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<SuiteError> for CliError {
    fn from(e: SuiteError) -> Self {
        match e {
            SuiteError::Algebra(a) => a.into(),
            SuiteError::Structure(s) => s.into(),
            SuiteError::Construction(c) => c.into(),
            SuiteError::InfiniteField => CliError::Field(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

impl From<ExplorerError> for CliError {
    fn from(e: ExplorerError) -> Self {
        match e {
            ExplorerError::Algebra(a) => a.into(),
            ExplorerError::Construction(c) => c.into(),
            ExplorerError::Verification(_) => CliError::Verification(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}
