//! Command-line companion to `regraph-core`: file formats, verification
//! pipeline, and output plumbing. The binary lives in `main.rs`; everything
//! testable is here.

pub mod document;
pub mod output;
pub mod verify;

pub use document::GraphDocument;
pub use verify::{run_verification, StageStatus, VerificationReport, VerifySettings};
