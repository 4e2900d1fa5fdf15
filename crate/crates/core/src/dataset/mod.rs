//! Dispute dataset generation and the dataset file format.

mod format;
mod generate;

pub(crate) use format::{check_header, field_error, toml_error, CaseDoc};
pub use format::{content_hash, parse, serialize, DATASET_FORMAT, FORMAT_VERSION};
pub use generate::{generate_dataset, generate_dispute, Dataset, GenParams};
