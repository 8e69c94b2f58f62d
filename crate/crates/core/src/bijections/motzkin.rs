use super::{BijectionError, MotzkinPath, MotzkinStep};
use crate::paths::{Ell, LukaPath, ModelParams};

/// Down steps that first bring the path back to each level spanned by the jump at `i`,
/// highest level first.
pub fn right_visible(l: &LukaPath, i: usize) -> Result<Vec<usize>, BijectionError> {
    let steps = l.steps();
    let j = match steps.get(i) {
        Some(&s) if s >= 0 => s,
        _ => return Err(BijectionError::NotAJumpStep(i)),
    };
    let heights = l.heights();
    let base = heights[i];
    let mut target = base + j - 1;
    let mut out = Vec::with_capacity(j as usize);
    for (idx, &s) in steps.iter().enumerate().skip(i + 1) {
        if target < base {
            break;
        }
        if s == -1 && heights[idx + 1] == target {
            out.push(idx);
            target -= 1;
        }
    }
    Ok(out)
}

fn check_model(params: &ModelParams) -> Result<(), BijectionError> {
    if params.k() != 1 || params.ell() != Ell::Infinity {
        return Err(BijectionError::WrongModel(format!("the Motzkin map needs (1,inf), got {params}")));
    }
    Ok(())
}

/// Send a `(1,inf)` path of length `n` or `n+1` to a Motzkin path of length `n`.
///
/// Every jump becomes `U`; of its right-visible down steps the last becomes `D`
/// and the others `H`. For length `n+1` the first jump is deleted instead and
/// all its right-visible down steps become surface `H` steps.
pub fn motzkin_map(l: &LukaPath, params: &ModelParams, n: usize) -> Result<MotzkinPath, BijectionError> {
    check_model(params)?;
    LukaPath::validate(params, l.steps())?;
    let drop_first = match l.len() {
        m if m == n => false,
        m if m == n + 1 => true,
        m => return Err(BijectionError::InvalidPath(format!("length {m} is neither {n} nor {}", n + 1))),
    };
    let steps = l.steps();
    let mut out: Vec<Option<MotzkinStep>> = vec![None; steps.len()];
    for (i, &s) in steps.iter().enumerate() {
        if s < 0 {
            continue;
        }
        let vis = right_visible(l, i)?;
        if drop_first && i == 0 {
            for &d in &vis {
                out[d] = Some(MotzkinStep::H);
            }
            continue;
        }
        out[i] = Some(MotzkinStep::U);
        if let Some((&last, rest)) = vis.split_last() {
            for &d in rest {
                out[d] = Some(MotzkinStep::H);
            }
            out[last] = Some(MotzkinStep::D);
        }
    }
    let steps: Vec<MotzkinStep> = out.into_iter().skip(usize::from(drop_first)).map(|s| s.expect("every step is assigned")).collect();
    MotzkinPath::new(steps)
}

/// Inverse of [`motzkin_map`]: surface `H` steps signal a deleted first jump.
pub fn motzkin_inverse(m: &MotzkinPath) -> LukaPath {
    let mut steps = vec![0i64; m.len()];
    // open up steps with the number of horizontals seen directly under their arc
    let mut open: Vec<(usize, i64)> = Vec::new();
    let mut surface = 0i64;
    for (i, s) in m.steps().iter().enumerate() {
        match s {
            MotzkinStep::U => open.push((i, 0)),
            MotzkinStep::H => {
                steps[i] = -1;
                match open.last_mut() {
                    Some((_, c)) => *c += 1,
                    None => surface += 1,
                }
            }
            MotzkinStep::D => {
                let (u, c) = open.pop().expect("valid Motzkin path");
                steps[u] = c + 1;
                steps[i] = -1;
            }
        }
    }
    if surface > 0 {
        steps.insert(0, surface);
    }
    LukaPath::from_steps_unchecked(steps)
}
