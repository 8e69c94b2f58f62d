use super::{BijectionError, DyckPath, DyckStep};
use crate::paths::{Ell, LukaPath, ModelParams};

fn check_model(params: &ModelParams) -> Result<(), BijectionError> {
    if params.k() != 0 || params.ell() != Ell::Infinity {
        return Err(BijectionError::WrongModel(format!("the area map needs (0,inf), got {params}")));
    }
    Ok(())
}

/// Vertex `v_i = (i, h_i)` of the path becomes the down step leaving `w_{2i + h_i - 1}`.
pub fn area_luka_to_dyck(l: &LukaPath, params: &ModelParams) -> Result<DyckPath, BijectionError> {
    check_model(params)?;
    LukaPath::validate(params, l.steps())?;
    let n = l.len();
    let mut steps = vec![DyckStep::U; 2 * n];
    for (i, h) in l.heights().into_iter().enumerate().skip(1) {
        steps[2 * i + h as usize - 1] = DyckStep::D;
    }
    DyckPath::new(steps)
}

/// The `i`-th down step of `d` starts at height `h_i + 1`.
pub fn area_dyck_to_luka(d: &DyckPath) -> LukaPath {
    let heights = d.heights();
    let mut prev = 0;
    let mut steps = Vec::with_capacity(d.len() / 2);
    for (idx, s) in d.steps().iter().enumerate() {
        if *s == DyckStep::D {
            let h = heights[idx] - 1;
            steps.push(h - prev);
            prev = h;
        }
    }
    LukaPath::from_steps_unchecked(steps)
}
