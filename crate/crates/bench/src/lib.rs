//! Size benchmark over a corpus of JSON documents and their schemas.
//!
//! Each case is measured as minified JSON, gzip at maximum level, and the
//! two binary modes. A case only reports when both binary modes decode back
//! to a value equal to the original document.

pub mod corpus;
pub mod error;
pub mod measure;
pub mod report;
pub mod stats;

pub use corpus::{load_case, load_corpus, Case};
pub use error::BenchError;
pub use measure::{gzip_best, run_case, run_corpus, BinaryMode, CaseReport};
pub use report::{render_csv, render_markdown, render_svg, write_reports, Format};
pub use stats::{reduction, summarize, ModeSummary, Percent, Summary};
