//! Exact polynomial algebra: sparse multivariate integer polynomials, dense
//! univariate helpers, rational functions in `q`, resultants and certified
//! positive root isolation.

mod multipoly;
mod ratfun;
mod resultant;
mod roots;
mod unipoly;

use thiserror::Error;

pub use multipoly::{Monomial, MultiPoly, Var, NVARS};
pub use ratfun::RationalQFunction;
pub use resultant::{
    bareiss_determinant, discriminant, mobius_substitute, normalized_discriminant, sylvester_matrix,
    sylvester_resultant, MobiusMap,
};
pub use roots::{
    isolate_positive_root, isolate_root_in, isolate_roots_in, positive_roots, rat, rat_from_f64, rat_to_f64, refine,
    tol_pow10, Interval, RootEnclosure,
};
pub use unipoly::UniPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgError {
    #[error("variable mismatch: {0}")]
    VariableMismatch(String),
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("polynomial has degree zero in {0}")]
    ZeroDegree(Var),
    #[error("degenerate Möbius map (alpha*delta - beta*gamma = 0)")]
    DegenerateMap,
    #[error("no positive real root")]
    NoPositiveRoot,
    #[error("cannot certify a unique positive root: {0} sign changes")]
    MultipleSignChanges(usize),
    #[error("internal algebra error: {0}")]
    Internal(String),
}
