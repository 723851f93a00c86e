use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex index {index} out of range for graph with {count} vertices")]
    InvalidVertex { index: usize, count: usize },
    #[error("edge index {index} out of range for graph with {count} edges")]
    InvalidEdge { index: usize, count: usize },
    #[error("base point inconsistent with graph: {0}")]
    InconsistentBasePoint(String),
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("map does not descend to the quotient: image of source relation column {column} is not in the target relation lattice")]
    Induction { column: usize },
    #[error("groups have different presentations")]
    DifferentParents,
    #[error("instance too large for enumeration: {0}")]
    SizeGuard(String),
    #[error("hypotheses not satisfied: {}", .0.join("; "))]
    Hypothesis(Vec<String>),
    #[error("generation failed: {0}")]
    Generation(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
