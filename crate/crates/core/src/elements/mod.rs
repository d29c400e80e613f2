//! Concrete element types of the transformation, relation and partition families.

mod partial;
mod partition;
mod relation;
mod transformation;

pub use partial::PartialTransformation;
pub use partition::BlockPartition;
pub use relation::BinaryRelation;
pub use transformation::Transformation;
