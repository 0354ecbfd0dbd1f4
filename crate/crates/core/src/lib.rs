pub mod error;
pub mod fp_linalg;
pub mod guard;
pub mod oracle;
pub mod partition_complex;
pub mod sequences;
pub mod series;
pub mod words;
pub mod enhancements;
pub mod euler;
pub mod free;
pub mod verify;
pub mod cli;

pub use error::{Error, Result};
pub use fp_linalg::Prime;
pub use free::{dims, dims_via_hilton_milnor, PLieQuery, PLieResult};
pub use guard::Guard;
pub use sequences::{AdmissibleSeq, Variant};
pub use series::{DegreeWindow, GradedDims, WeightedDims};
