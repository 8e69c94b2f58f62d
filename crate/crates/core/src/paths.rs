//! Restricted Lukasiewicz paths: validation, weights and exhaustive enumeration.
//!
//! A `(k, ell)`-restricted Lukasiewicz path is a sequence of down steps (`-1`)
//! and jump steps `j` with `k <= j <= ell` whose running height never goes
//! negative and which ends back on the surface. Everything in this module is
//! brute force on purpose: it is the oracle the algebraic machinery is
//! checked against.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactalg::{Monomial, MultiPoly, Var};

/// Default cap on the number of paths a single enumeration may produce.
pub const DEFAULT_PATH_CAP: usize = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("step {step} at index {index} is outside the allowed jump range {range}")]
    StepOutOfRange { index: usize, step: i64, range: String },
    #[error("height becomes negative after step {index}")]
    NegativeHeight { index: usize },
    #[error("path ends at height {height}, not on the surface")]
    NonzeroFinalHeight { height: i64 },
    #[error("enumeration exceeded the cap of {cap} paths")]
    ResourceLimit { cap: usize },
    #[error("invalid model parameters: {0}")]
    InvalidParams(String),
}

/// Upper bound on the jump size: a finite integer or unbounded.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ell {
    Finite(u32),
    Infinity,
}

impl Ell {
    pub fn is_finite(self) -> bool {
        matches!(self, Ell::Finite(_))
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Ell::Finite(l) => Some(l),
            Ell::Infinity => None,
        }
    }

    /// Whether a jump of size `j` is allowed by this upper bound.
    pub fn admits(self, j: u32) -> bool {
        match self {
            Ell::Finite(l) => j <= l,
            Ell::Infinity => true,
        }
    }
}

impl fmt::Display for Ell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ell::Finite(l) => write!(f, "{l}"),
            Ell::Infinity => f.write_str("inf"),
        }
    }
}

impl FromStr for Ell {
    type Err = PathError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("inf") || t == "∞" {
            return Ok(Ell::Infinity);
        }
        t.parse::<u32>()
            .map(Ell::Finite)
            .map_err(|_| PathError::InvalidParams(format!("cannot parse ell value {s:?}")))
    }
}

/// The pair `(k, ell)` selecting the allowed jump sizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ModelParams {
    k: u32,
    ell: Ell,
}

impl ModelParams {
    pub fn new(k: u32, ell: Ell) -> Result<Self, PathError> {
        if let Ell::Finite(l) = ell {
            if k > l {
                return Err(PathError::InvalidParams(format!("k = {k} exceeds ell = {l}")));
            }
        }
        Ok(ModelParams { k, ell })
    }

    pub fn finite(k: u32, ell: u32) -> Result<Self, PathError> {
        Self::new(k, Ell::Finite(ell))
    }

    pub fn unbounded(k: u32) -> Self {
        ModelParams { k, ell: Ell::Infinity }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn ell(&self) -> Ell {
        self.ell
    }

    pub fn admits_jump(&self, j: u32) -> bool {
        j >= self.k && self.ell.admits(j)
    }

    /// Jump sizes usable in a path of length `n` (jumps of size `>= n` can never return).
    pub fn jumps_up_to(&self, n: usize) -> impl Iterator<Item = u32> + '_ {
        let cap = n.saturating_sub(1) as u64;
        let hi = match self.ell {
            Ell::Finite(l) => (l as u64).min(cap),
            Ell::Infinity => cap,
        };
        (self.k as u64..=hi).map(|j| j as u32)
    }
}

impl fmt::Display for ModelParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.k, self.ell)
    }
}

/// A validated restricted Lukasiewicz path.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LukaPath {
    steps: Vec<i64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PathWeights {
    pub length: usize,
    pub contacts: u32,
    pub area: u64,
}

impl LukaPath {
    /// Check `steps` against `params` and wrap them as a path.
    pub fn validate(params: &ModelParams, steps: &[i64]) -> Result<Self, PathError> {
        let mut height: i64 = 0;
        for (index, &step) in steps.iter().enumerate() {
            if step != -1 {
                let ok = step >= 0 && u32::try_from(step).is_ok_and(|j| params.admits_jump(j));
                if !ok {
                    return Err(PathError::StepOutOfRange {
                        index,
                        step,
                        range: format!("[{}, {}]", params.k(), params.ell()),
                    });
                }
            }
            height += step;
            if height < 0 {
                return Err(PathError::NegativeHeight { index });
            }
        }
        if height != 0 {
            return Err(PathError::NonzeroFinalHeight { height });
        }
        Ok(LukaPath { steps: steps.to_vec() })
    }

    /// Wrap steps that are already known to form a path (used by the bijections).
    pub(crate) fn from_steps_unchecked(steps: Vec<i64>) -> Self {
        LukaPath { steps }
    }

    pub fn steps(&self) -> &[i64] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Heights `y_0, ..., y_n` of all vertices.
    pub fn heights(&self) -> Vec<i64> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        let mut h = 0;
        out.push(h);
        for s in &self.steps {
            h += s;
            out.push(h);
        }
        out
    }

    pub fn weights(&self) -> PathWeights {
        let heights = self.heights();
        let contacts = heights[1..].iter().filter(|&&h| h == 0).count() as u32;
        let area = heights.iter().map(|&h| h as u64).sum();
        PathWeights { length: self.steps.len(), contacts, area }
    }

    /// Sizes of the jump steps, left to right.
    pub fn jump_sizes(&self) -> impl Iterator<Item = i64> + '_ {
        self.steps.iter().copied().filter(|&s| s >= 0)
    }
}

impl fmt::Display for LukaPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, s) in self.steps.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("]")
    }
}

/// All valid length-`n` paths, in lexicographic order of their step sequences.
pub fn enumerate(params: &ModelParams, n: usize) -> Result<Vec<LukaPath>, PathError> {
    enumerate_with_cap(params, n, DEFAULT_PATH_CAP)
}

pub fn enumerate_with_cap(
    params: &ModelParams,
    n: usize,
    cap: usize,
) -> Result<Vec<LukaPath>, PathError> {
    let mut out = Vec::new();
    let mut steps = Vec::with_capacity(n);
    visit_paths(params, n, cap, &mut steps, 0, &mut |s| out.push(LukaPath { steps: s.to_vec() }))?;
    Ok(out)
}

/// Depth-first walk over all paths calling `f` on each completed step sequence.
fn visit_paths(
    params: &ModelParams,
    n: usize,
    cap: usize,
    steps: &mut Vec<i64>,
    height: i64,
    f: &mut dyn FnMut(&[i64]),
) -> Result<usize, PathError> {
    fn go(
        params: &ModelParams,
        n: usize,
        cap: usize,
        steps: &mut Vec<i64>,
        height: i64,
        count: &mut usize,
        f: &mut dyn FnMut(&[i64]),
    ) -> Result<(), PathError> {
        let remaining = (n - steps.len()) as i64;
        if remaining == 0 {
            if height == 0 {
                *count += 1;
                if *count > cap {
                    return Err(PathError::ResourceLimit { cap });
                }
                f(steps);
            }
            return Ok(());
        }
        // down step first keeps the output in lexicographic order
        if height > 0 {
            steps.push(-1);
            go(params, n, cap, steps, height - 1, count, f)?;
            steps.pop();
        }
        for j in params.jumps_up_to(n) {
            let h = height + j as i64;
            // the remaining steps after this one must be able to come back down
            if h > remaining - 1 {
                break;
            }
            steps.push(j as i64);
            go(params, n, cap, steps, h, count, f)?;
            steps.pop();
        }
        Ok(())
    }
    let mut count = 0;
    go(params, n, cap, steps, height, &mut count, f)?;
    Ok(count)
}

/// Number of length-`n` paths.
pub fn count(params: &ModelParams, n: usize) -> Result<usize, PathError> {
    let mut steps = Vec::with_capacity(n);
    visit_paths(params, n, DEFAULT_PATH_CAP, &mut steps, 0, &mut |_| {})
}

/// Partition function `Z_n(a)` (or `Z_n(a, q)` with area) summed over all length-`n` paths.
///
/// The result is a polynomial in `a` (and `q`) with non-negative coefficients.
pub fn partition_polynomial(
    params: &ModelParams,
    n: usize,
    with_area: bool,
) -> Result<MultiPoly, PathError> {
    partition_polynomial_with_cap(params, n, with_area, DEFAULT_PATH_CAP)
}

pub fn partition_polynomial_with_cap(
    params: &ModelParams,
    n: usize,
    with_area: bool,
    cap: usize,
) -> Result<MultiPoly, PathError> {
    let mut tally: BTreeMap<(u32, u64), u64> = BTreeMap::new();
    let mut steps = Vec::with_capacity(n);
    visit_paths(params, n, cap, &mut steps, 0, &mut |s| {
        let w = LukaPath { steps: s.to_vec() }.weights();
        let area = if with_area { w.area } else { 0 };
        *tally.entry((w.contacts, area)).or_insert(0) += 1;
    })?;
    Ok(MultiPoly::from_terms(tally.into_iter().map(|((c, m), count)| {
        let mono = Monomial::one().with(Var::A, c).with(Var::Q, m as u32);
        (mono, BigInt::from(count))
    })))
}

/// Sparse JSON form of a weight polynomial: `"i,j"` (exponents of `a` then `q`) to integer coefficient.
pub fn weight_polynomial_json(p: &MultiPoly) -> serde_json::Value {
    let map = p
        .terms()
        .map(|(m, c)| {
            let key = format!("{},{}", m.exp(Var::A), m.exp(Var::Q));
            let num: serde_json::Number = c.to_string().parse().expect("integer literal");
            (key, serde_json::Value::Number(num))
        })
        .collect();
    serde_json::Value::Object(map)
}
