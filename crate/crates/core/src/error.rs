use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeomError {
    #[error("the two points coincide")]
    CoincidentPoints,
    #[error("the two lines are identical")]
    IdenticalLines,
    #[error("a line needs (a, b) != (0, 0)")]
    DegenerateLine,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArrangementError {
    #[error("an arrangement needs at least one line")]
    EmptyInput,
    #[error("lines {first} and {second} are the same line")]
    DuplicateLine { first: usize, second: usize },
    #[error("unknown line id {0}")]
    UnknownLineId(usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HypergraphError {
    #[error("unknown vertex id {0}")]
    UnknownVertexId(usize),
    #[error("exact solver cap exceeded: {vertices} vertices > cap {cap}")]
    CapExceeded { vertices: usize, cap: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error(transparent)]
    Arrangement(#[from] ArrangementError),
    #[error("coloring covers {got} lines but the arrangement has {expected}")]
    IncompleteColoring { expected: usize, got: usize },
    #[error("internal invariant violated: {count} monochromatic faces after certification")]
    CertificationFailed { count: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DualityError {
    #[error("the point set has four collinear points")]
    Not4Free,
    #[error("points {0} and {1} coincide")]
    DuplicatePoint(usize, usize),
    #[error("no valid perturbation found above the minimum epsilon")]
    PerturbationExhausted,
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error("internal invariant violated: returned subset contains a collinear triple")]
    CertificationFailed,
}
