//! Bijections between Lukasiewicz paths and Dyck or Motzkin paths.
//!
//! * [`rise`]: `(k,ell)` paths to `(k+1,ell+1)`-rise-restricted Dyck paths, keeping contacts.
//! * [`motzkin`]: `(1,inf)` paths of length `n` or `n+1` to Motzkin paths of length `n`.
//! * [`area`]: `(0,inf)` paths of area `m` to Dyck paths of area `2m+n`, keeping contacts.
//! * [`verify`]: exhaustive checks of all three.

pub mod area;
pub mod motzkin;
pub mod rise;
pub mod verify;

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::paths::{Ell, PathError, DEFAULT_PATH_CAP};

pub use area::{area_dyck_to_luka, area_luka_to_dyck};
pub use motzkin::{motzkin_inverse, motzkin_map, right_visible};
pub use rise::{image_window, luka_to_rise_dyck, rise_decompose, rise_dyck_to_luka, Rise};
pub use verify::{motzkin_number, verify_bijection, BijectionKind, VerificationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BijectionError {
    #[error("rise of length {length} outside the window {window}")]
    RiseRestrictionViolated { length: usize, window: RiseRestriction },
    #[error("step {0} is not a jump step")]
    NotAJumpStep(usize),
    #[error("wrong model: {0}")]
    WrongModel(String),
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error(transparent)]
    Path(#[from] PathError),
}

/// Bounds `lo <= r <= hi` on maximal rise lengths.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RiseRestriction {
    pub lo: u32,
    pub hi: Ell,
}

impl RiseRestriction {
    pub fn admits(&self, r: usize) -> bool {
        u32::try_from(r).is_ok_and(|r| r >= self.lo && self.hi.admits(r))
    }
}

impl fmt::Display for RiseRestriction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DyckStep {
    U,
    D,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MotzkinStep {
    U,
    H,
    D,
}

/// A Dyck path of length `2n`: up and down steps, never below the surface.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DyckPath {
    steps: Vec<DyckStep>,
}

impl DyckPath {
    pub fn new(steps: Vec<DyckStep>) -> Result<Self, BijectionError> {
        let mut h: i64 = 0;
        for (i, s) in steps.iter().enumerate() {
            h += if *s == DyckStep::U { 1 } else { -1 };
            if h < 0 {
                return Err(BijectionError::InvalidPath(format!("Dyck path goes below the surface at step {i}")));
            }
        }
        if h != 0 {
            return Err(BijectionError::InvalidPath(format!("Dyck path ends at height {h}")));
        }
        Ok(DyckPath { steps })
    }

    pub fn steps(&self) -> &[DyckStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Heights `w_0, ..., w_{2n}`.
    pub fn heights(&self) -> Vec<i64> {
        let mut out = vec![0];
        let mut h = 0;
        for s in &self.steps {
            h += if *s == DyckStep::U { 1 } else { -1 };
            out.push(h);
        }
        out
    }

    /// Vertices after the first at height zero.
    pub fn contacts(&self) -> u32 {
        self.heights()[1..].iter().filter(|&&h| h == 0).count() as u32
    }

    pub fn area(&self) -> u64 {
        self.heights().iter().map(|&h| h as u64).sum()
    }
}

impl fmt::Display for DyckPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            f.write_str(if *s == DyckStep::U { "U" } else { "D" })?;
        }
        Ok(())
    }
}

impl FromStr for DyckPath {
    type Err = BijectionError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let steps = s
            .trim()
            .chars()
            .map(|c| match c {
                'U' | 'u' => Ok(DyckStep::U),
                'D' | 'd' => Ok(DyckStep::D),
                _ => Err(BijectionError::InvalidPath(format!("unexpected Dyck step {c:?}"))),
            })
            .collect::<Result<_, _>>()?;
        DyckPath::new(steps)
    }
}

impl Serialize for DyckPath {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A Motzkin path: up, horizontal and down steps, never below the surface.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MotzkinPath {
    steps: Vec<MotzkinStep>,
}

fn motzkin_delta(s: MotzkinStep) -> i64 {
    match s {
        MotzkinStep::U => 1,
        MotzkinStep::H => 0,
        MotzkinStep::D => -1,
    }
}

impl MotzkinPath {
    pub fn new(steps: Vec<MotzkinStep>) -> Result<Self, BijectionError> {
        let mut h: i64 = 0;
        for (i, s) in steps.iter().enumerate() {
            h += motzkin_delta(*s);
            if h < 0 {
                return Err(BijectionError::InvalidPath(format!("Motzkin path goes below the surface at step {i}")));
            }
        }
        if h != 0 {
            return Err(BijectionError::InvalidPath(format!("Motzkin path ends at height {h}")));
        }
        Ok(MotzkinPath { steps })
    }

    pub fn steps(&self) -> &[MotzkinStep] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Heights `w_0, ..., w_n`.
    pub fn heights(&self) -> Vec<i64> {
        let mut out = vec![0];
        let mut h = 0;
        for s in &self.steps {
            h += motzkin_delta(*s);
            out.push(h);
        }
        out
    }

    /// Horizontal steps lying on the surface.
    pub fn surface_horizontals(&self) -> usize {
        let h = self.heights();
        self.steps.iter().enumerate().filter(|(i, s)| **s == MotzkinStep::H && h[*i] == 0).count()
    }
}

impl fmt::Display for MotzkinPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            f.write_str(match s {
                MotzkinStep::U => "U",
                MotzkinStep::H => "H",
                MotzkinStep::D => "D",
            })?;
        }
        Ok(())
    }
}

impl FromStr for MotzkinPath {
    type Err = BijectionError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let steps = s
            .trim()
            .chars()
            .map(|c| match c {
                'U' | 'u' => Ok(MotzkinStep::U),
                'H' | 'h' => Ok(MotzkinStep::H),
                'D' | 'd' => Ok(MotzkinStep::D),
                _ => Err(BijectionError::InvalidPath(format!("unexpected Motzkin step {c:?}"))),
            })
            .collect::<Result<_, _>>()?;
        MotzkinPath::new(steps)
    }
}

impl Serialize for MotzkinPath {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// All Dyck paths of length `2 * half`.
pub fn enumerate_dyck(half: usize) -> Result<Vec<DyckPath>, BijectionError> {
    fn go(n: usize, up: usize, down: usize, cur: &mut Vec<DyckStep>, out: &mut Vec<DyckPath>) -> Result<(), PathError> {
        if up == n && down == n {
            if out.len() >= DEFAULT_PATH_CAP {
                return Err(PathError::ResourceLimit { cap: DEFAULT_PATH_CAP });
            }
            out.push(DyckPath { steps: cur.clone() });
            return Ok(());
        }
        if up < n {
            cur.push(DyckStep::U);
            go(n, up + 1, down, cur, out)?;
            cur.pop();
        }
        if down < up {
            cur.push(DyckStep::D);
            go(n, up, down + 1, cur, out)?;
            cur.pop();
        }
        Ok(())
    }
    let mut out = Vec::new();
    go(half, 0, 0, &mut Vec::with_capacity(2 * half), &mut out)?;
    Ok(out)
}

/// Dyck paths of length `2 * half` whose maximal rises all lie in `window`.
pub fn enumerate_rise_dyck(window: &RiseRestriction, half: usize) -> Result<Vec<DyckPath>, BijectionError> {
    Ok(enumerate_dyck(half)?
        .into_iter()
        .filter(|d| rise_decompose(d).iter().all(|r| window.admits(r.length)))
        .collect())
}

/// All Motzkin paths of length `n`.
pub fn enumerate_motzkin(n: usize) -> Result<Vec<MotzkinPath>, BijectionError> {
    fn go(n: usize, h: usize, cur: &mut Vec<MotzkinStep>, out: &mut Vec<MotzkinPath>) -> Result<(), PathError> {
        let rem = n - cur.len();
        if rem == 0 {
            if h == 0 {
                if out.len() >= DEFAULT_PATH_CAP {
                    return Err(PathError::ResourceLimit { cap: DEFAULT_PATH_CAP });
                }
                out.push(MotzkinPath { steps: cur.clone() });
            }
            return Ok(());
        }
        if h + 1 < rem {
            cur.push(MotzkinStep::U);
            go(n, h + 1, cur, out)?;
            cur.pop();
        }
        if h < rem {
            cur.push(MotzkinStep::H);
            go(n, h, cur, out)?;
            cur.pop();
        }
        if h > 0 {
            cur.push(MotzkinStep::D);
            go(n, h - 1, cur, out)?;
            cur.pop();
        }
        Ok(())
    }
    let mut out = Vec::new();
    go(n, 0, &mut Vec::with_capacity(n), &mut out)?;
    Ok(out)
}
