//! End-to-end verification pipelines and their reports.

mod case;
mod pipelines;
mod report;

pub use case::{lowdim_companion, VerificationCase};
pub use pipelines::{
    family_polygon_size, octahedron, tetrahedral_rotation, verify, verify_family, verify_lowdim,
    verify_theorem, VerifyOptions,
};
pub use report::{
    emit_report, emit_suite, ObstructionCertificate, ReportFormat, StageError, StageReport, SuiteReport,
    VerificationReport, SCHEMA_VERSION, TOOL_VERSION,
};
