pub mod algebra;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod explorer;
pub mod field;
pub mod input;
pub mod linalg;
pub mod report;
pub mod structure;
pub mod theorems;
