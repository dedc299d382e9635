pub mod analysis;
pub mod counting;
pub mod error;
pub mod labeling;
pub mod partition;
pub mod point;
pub mod semigroup;

pub use error::{Error, Result};
pub use partition::MultiPartition;
pub use point::Point;
pub use semigroup::{Gns, Multset};
pub use labeling::PartitionLabeling;

/// Root-finder output in double precision.
pub type RootResult = analysis::RootResult<f64>;
/// Truncated `r′` root in double precision.
pub type RPrime = analysis::RPrime<f64>;
