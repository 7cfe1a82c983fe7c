//! Gram matrices of symmetric diagrams for the partition, Z2-relation and
//! signed partition algebras, with exact reductions and semisimplicity tests.

pub mod determinant;
pub mod diagrams;
pub mod error;
pub mod fixtures;
pub mod gram;
pub mod partitions;
pub mod polynomials;
pub mod reduction;
pub mod semisimplicity;
pub mod stirling;
pub mod verify;
pub mod z2diagrams;

pub use diagrams::PartitionDiagram;
pub use error::{Error, Result};
pub use gram::{build_gram, enumerate_j, Algebra, Diagram, DiagramKey, GramMatrix, Params, PartitionTuple};
pub use partitions::SetPartition;
pub use polynomials::Poly;
pub use z2diagrams::Z2Diagram;
