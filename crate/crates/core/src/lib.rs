//! Exact noncommutative algebra for graded skew Clifford algebras and
//! complete intersections.
//!
//! The crate is layered bottom-up:
//!
//! * [`coeff`]: exact fields (rationals, rational functions in `q`) and
//!   prime-field probes.
//! * [`freealg`]: words, noncommutative polynomials, multilinearization and
//!   the expression syntax.
//! * [`rewrite`]: truncated two-sided Gröbner bases, normal forms, Hilbert
//!   functions and growth via the normal-word graph.
//! * [`skew`]: skew polynomial rings, mu-symmetric matrices, quadric
//!   systems, normality and base-point freeness.
//! * [`gsca`]: graded skew Clifford algebras and the regularity certificate.
//! * [`geometry`]: point-module families, annihilation and witness search.
//! * [`conditions`]: conditions I-IV and the complete-intersection verdict.

pub mod coeff;
pub mod conditions;
pub mod freealg;
pub mod geometry;
pub mod gsca;
pub mod linalg;
pub mod rewrite;
pub mod skew;
