//! Exact-arithmetic certificates for non-vanishing twisted cohomology on
//! complements of projective hypersurfaces.
//!
//! The crate verifies, entirely symbolically, the constructive chain behind
//! lower bounds for twisted (local-system) cohomology of complements of
//! divisors drawn from a linear system: hypothesis checks on the divisor
//! family, explicit logarithmic cocycles with closedness certificates,
//! independence certificates in a combinatorial local model (the
//! Orlik-Solomon/Aomoto complex of a hyperplane arrangement), and the
//! supporting arrangement combinatorics (intersection lattices, beta
//! invariants, chamber counts, dense edges).
//!
//! Everything runs over Q or a small number field Q[t]/(m(t)); there are no
//! floating-point code paths.

pub mod arrangement;
pub mod error;
pub mod forms;
pub mod linsys;
pub mod matrix;
pub mod oracles;
pub mod os;
pub mod parse;
pub mod poly;
pub mod random;
pub mod ratfun;
pub mod scalar;
pub mod util;

pub use error::{Error, Result};
pub use scalar::{Field, FieldSpec, Rat, Scalar};
