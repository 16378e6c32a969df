//! Degree-truncated two-sided Gröbner bases for homogeneous ideals of the
//! free algebra, with normal forms, Hilbert functions and growth.

mod graph;
mod presentation;
mod system;

pub use graph::{
    classify_growth, hilbert_function, ufnarovski_graph, GrowthKind, GrowthReport, HilbertFunction,
    UfnarovskiGraph,
};
pub(crate) use graph::{exact_counts, recurrence_bound};
pub use presentation::Presentation;
pub use system::{complete_truncated, normal_form, RewriteSystem, Rule};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("truncation degree {degree} is below the largest relation degree {needed}")]
    TruncationTooLow { degree: usize, needed: usize },
    #[error("degree {degree} exceeds the truncation degree {truncation} of an uncertified system")]
    DegreeExceedsTruncation { degree: usize, truncation: usize },
    #[error("rewrite system is not certified complete")]
    NotComplete,
    #[error("relation {0} is not homogeneous")]
    Inhomogeneous(usize),
    #[error("relation {0} is zero")]
    ZeroRelation(usize),
    #[error("relation {index} has degree {degree}; at least {min} is required")]
    LowDegree {
        index: usize,
        degree: usize,
        min: usize,
    },
    #[error("relation {index} mentions generator {generator} but only {n} are declared")]
    GeneratorOutOfRange {
        index: usize,
        generator: usize,
        n: usize,
    },
    #[error("normal-word graph exceeds {0} vertices")]
    GraphTooLarge(usize),
    #[error("Hilbert function value overflows at degree {0}")]
    HilbertOverflow(usize),
}
