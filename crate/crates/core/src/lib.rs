//! Exact combinatorics for `(k, ell)`-restricted Lukasiewicz adsorption models.
//!
//! * [`paths`]: validation, weights and brute-force enumeration of paths.
//! * [`exactalg`]: integer polynomials, resultants, root isolation.
//! * [`genfun`]: algebraic equations and truncated generating functions.
//! * [`phase`]: critical points, the adsorption phase boundary and `crit(a)`.
//! * [`bijections`]: rise-restricted Dyck, Motzkin and area bijections.
//! * [`qarea`]: area-weighted (`q`-deformed) generating functions.
//! * [`cli`]: the `luka` command-line front end.

pub mod bijections;
pub mod cli;
pub mod exactalg;
pub mod genfun;
pub mod paths;
pub mod phase;
pub mod qarea;
pub mod series;

pub use paths::{Ell, LukaPath, ModelParams, PathError, PathWeights};
