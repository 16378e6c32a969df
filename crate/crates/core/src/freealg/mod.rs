//! The free algebra on `n` degree-one generators.

mod expr;
mod multipoly;
mod ncpoly;
mod word;

pub use expr::{parse_expr, parse_homogeneous, parse_scalar, ExprError};
pub use multipoly::{
    evaluate_window, evaluate_window_at, multilinear_names, multilinearize, MultiPoly,
};
pub use ncpoly::{nc_multiply, NCPoly};
pub use word::{word_compare, MonomialOrder, Word};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreeAlgError {
    #[error("polynomial is not homogeneous")]
    Inhomogeneous,
    #[error("generator x{0} out of range for {1} generators")]
    GeneratorOutOfRange(usize, usize),
}
