//! The worked model of the generic affine diagonal quadric and the pipeline
//! verifying that the Brauer class group `Br(U)/Br(F)` vanishes.

pub mod cases;
pub mod model;
pub mod params;
pub mod pipeline;
pub mod report;
pub mod tables;

pub use cases::{build_case, picard_h1, CaseId};
pub use model::QuadricModel;
pub use params::{normalize_coefficients, Coefficient, Coefficients, NormalizedParams, UnitValue};
pub use pipeline::{verify_theorem, Pipeline, StepSelection, THEOREM_VERIFIED};
pub use report::{CheckRecord, Section, Status, VerificationReport};
pub use tables::{paper_tables, Mutation, PaperTables, ValueSyntax};
