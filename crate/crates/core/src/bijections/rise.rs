use serde::Serialize;

use super::{BijectionError, DyckPath, DyckStep, RiseRestriction};
use crate::paths::{LukaPath, ModelParams};

/// A maximal run of up steps and the down step closing its hook.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Rise {
    pub start: usize,
    pub length: usize,
    /// Index of the down step after the rise.
    pub hook_end: usize,
}

impl Rise {
    pub fn hook_length(&self) -> usize {
        self.length + 1
    }
}

pub fn rise_decompose(d: &DyckPath) -> Vec<Rise> {
    let s = d.steps();
    let mut out = Vec::new();
    let mut i = 0;
    while i < s.len() {
        if s[i] == DyckStep::U {
            let start = i;
            while s[i] == DyckStep::U {
                i += 1;
            }
            out.push(Rise { start, length: i - start, hook_end: i });
        }
        i += 1;
    }
    out
}

/// Jump `j` becomes the hook `U^{j+1} D`; a down step stays a down step.
pub fn luka_to_rise_dyck(l: &LukaPath) -> DyckPath {
    let mut steps = Vec::with_capacity(2 * l.len());
    for &s in l.steps() {
        if s >= 0 {
            steps.extend(std::iter::repeat_n(DyckStep::U, s as usize + 1));
        }
        steps.push(DyckStep::D);
    }
    DyckPath::new(steps).expect("image of a valid path is a Dyck path")
}

pub fn rise_dyck_to_luka(d: &DyckPath, params: &ModelParams) -> Result<LukaPath, BijectionError> {
    let window = image_window(params);
    let rises = rise_decompose(d);
    let mut steps = Vec::with_capacity(d.len() / 2);
    let mut next = rises.iter().peekable();
    for (i, s) in d.steps().iter().enumerate() {
        if *s == DyckStep::U {
            continue;
        }
        match next.peek() {
            Some(r) if r.hook_end == i => {
                if !window.admits(r.length) {
                    return Err(BijectionError::RiseRestrictionViolated { length: r.length, window });
                }
                steps.push(r.length as i64 - 1);
                next.next();
            }
            _ => steps.push(-1),
        }
    }
    Ok(LukaPath::validate(params, &steps)?)
}

fn shift_ell(params: &ModelParams) -> crate::paths::Ell {
    use crate::paths::Ell;
    match params.ell() {
        Ell::Finite(l) => Ell::Finite(l + 1),
        Ell::Infinity => Ell::Infinity,
    }
}

/// Rise window of the image of `(k, ell)` paths.
pub fn image_window(params: &ModelParams) -> RiseRestriction {
    RiseRestriction { lo: params.k() + 1, hi: shift_ell(params) }
}
