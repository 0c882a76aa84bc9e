pub mod bits;
pub mod certify;
pub mod detection;
pub mod error;
pub mod graph;
pub mod pcp;
pub mod thresholds;
pub mod trace;

pub use bits::VertexSet;
pub use detection::{ClassId, HoleCertificate, HoleKind, Parity, Verdict};
pub use error::{Error, Result};
pub use graph::{Graph, Path};
pub use thresholds::{thresholds, Exact, Scalar, Thresholds, ThresholdsExact, ThresholdsF64};
pub use pcp::{GrowthOutcome, Pcp, RootedPcp};
pub use trace::TraceStep;
pub use certify::{CertifyOptions, LemmaId, LemmaReport, Overrides, Status, Witness};
