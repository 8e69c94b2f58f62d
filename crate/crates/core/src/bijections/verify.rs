use std::collections::HashSet;
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::{
    area_dyck_to_luka, area_luka_to_dyck, enumerate_dyck, enumerate_motzkin, enumerate_rise_dyck, image_window,
    luka_to_rise_dyck, motzkin_inverse, motzkin_map, rise_decompose, rise_dyck_to_luka, BijectionError,
};
use crate::paths::{enumerate, Ell, LukaPath, ModelParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BijectionKind {
    Rise,
    Motzkin,
    Area,
}

impl fmt::Display for BijectionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BijectionKind::Rise => "rise",
            BijectionKind::Motzkin => "motzkin",
            BijectionKind::Area => "area",
        })
    }
}

impl FromStr for BijectionKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "rise" => Ok(BijectionKind::Rise),
            "motzkin" => Ok(BijectionKind::Motzkin),
            "area" => Ok(BijectionKind::Area),
            _ => Err(format!("unknown bijection {s:?} (expected rise, motzkin or area)")),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub kind: BijectionKind,
    pub params: String,
    pub n: usize,
    pub source_count: usize,
    pub target_count: usize,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

/// Motzkin numbers `1, 1, 2, 4, 9, 21, ...` from `M_n = M_{n-1} + sum_i M_i M_{n-2-i}`.
pub fn motzkin_number(n: usize) -> u128 {
    let mut m = vec![1u128; n + 1];
    for i in 2..=n {
        m[i] = m[i - 1] + (0..=i - 2).map(|t| m[t] * m[i - 2 - t]).sum::<u128>();
    }
    m[n]
}

/// Run `check` on every source in parallel and keep the images, or the first failure in source order.
fn map_all<T: Send>(
    sources: &[LukaPath],
    check: impl Fn(&LukaPath) -> Result<T, String> + Sync + Send,
) -> Result<Vec<T>, String> {
    sources.par_iter().map(&check).collect::<Vec<_>>().into_iter().collect()
}

/// Injective and onto `targets`.
fn bijective_onto<T: Eq + Hash + fmt::Display>(images: &[T], targets: &[T]) -> Result<(), String> {
    let mut seen = HashSet::with_capacity(images.len());
    for x in images {
        if !seen.insert(x) {
            return Err(format!("two sources map to {x}"));
        }
    }
    let target_set: HashSet<&T> = targets.iter().collect();
    if let Some(x) = seen.iter().find(|x| !target_set.contains(*x)) {
        return Err(format!("image {x} is outside the target set"));
    }
    if let Some(t) = targets.iter().find(|t| !seen.contains(t)) {
        return Err(format!("target {t} is not hit"));
    }
    Ok(())
}

fn report(
    kind: BijectionKind,
    params: &ModelParams,
    n: usize,
    source_count: usize,
    target_count: usize,
    outcome: Result<(), String>,
) -> VerificationReport {
    let counterexample = outcome.err();
    VerificationReport {
        kind,
        params: params.to_string(),
        n,
        source_count,
        target_count,
        pass: counterexample.is_none(),
        counterexample,
    }
}

/// Exhaustive check of one bijection on all sources of size `n`.
pub fn verify_bijection(kind: BijectionKind, params: &ModelParams, n: usize) -> Result<VerificationReport, BijectionError> {
    match kind {
        BijectionKind::Rise => verify_rise(params, n),
        BijectionKind::Motzkin => verify_motzkin(params, n),
        BijectionKind::Area => verify_area(params, n),
    }
}

fn verify_rise(params: &ModelParams, n: usize) -> Result<VerificationReport, BijectionError> {
    let sources = enumerate(params, n)?;
    let window = image_window(params);
    let targets = enumerate_rise_dyck(&window, n)?;
    let outcome = map_all(&sources, |l| {
        let d = luka_to_rise_dyck(l);
        if d.len() != 2 * n {
            return Err(format!("{l} -> {d}: length {} != {}", d.len(), 2 * n));
        }
        if let Some(r) = rise_decompose(&d).iter().find(|r| !window.admits(r.length)) {
            return Err(format!("{l} -> {d}: rise of length {} outside {window}", r.length));
        }
        if d.contacts() != l.weights().contacts {
            return Err(format!("{l} -> {d}: contacts {} != {}", d.contacts(), l.weights().contacts));
        }
        match rise_dyck_to_luka(&d, params) {
            Ok(back) if &back == l => Ok(d),
            Ok(back) => Err(format!("{l} -> {d} -> {back}: round trip fails")),
            Err(e) => Err(format!("{l} -> {d}: inverse fails: {e}")),
        }
    })
    .and_then(|images| bijective_onto(&images, &targets));
    Ok(report(BijectionKind::Rise, params, n, sources.len(), targets.len(), outcome))
}

fn verify_motzkin(params: &ModelParams, n: usize) -> Result<VerificationReport, BijectionError> {
    if params.k() != 1 || params.ell() != Ell::Infinity {
        return Err(BijectionError::WrongModel(format!("the Motzkin map needs (1,inf), got {params}")));
    }
    let mut sources = enumerate(params, n)?;
    sources.extend(enumerate(params, n + 1)?);
    let targets = enumerate_motzkin(n)?;
    let outcome = map_all(&sources, |l| {
        let m = motzkin_map(l, params, n).map_err(|e| format!("{l}: {e}"))?;
        if (m.surface_horizontals() > 0) != (l.len() == n + 1) {
            return Err(format!("{l} -> {m}: surface horizontals do not mark the longer source"));
        }
        let back = motzkin_inverse(&m);
        if &back != l {
            return Err(format!("{l} -> {m} -> {back}: round trip fails"));
        }
        Ok(m)
    })
    .and_then(|images| bijective_onto(&images, &targets))
    .and_then(|()| {
        let expected = motzkin_number(n);
        if sources.len() as u128 != expected {
            return Err(format!("|L_n| + |L_(n+1)| = {} but M_n = {expected}", sources.len()));
        }
        Ok(())
    });
    Ok(report(BijectionKind::Motzkin, params, n, sources.len(), targets.len(), outcome))
}

fn verify_area(params: &ModelParams, n: usize) -> Result<VerificationReport, BijectionError> {
    if params.k() != 0 || params.ell() != Ell::Infinity {
        return Err(BijectionError::WrongModel(format!("the area map needs (0,inf), got {params}")));
    }
    let sources = enumerate(params, n)?;
    let targets = enumerate_dyck(n)?;
    let outcome = map_all(&sources, |l| {
        let d = area_luka_to_dyck(l, params).map_err(|e| format!("{l}: {e}"))?;
        let w = l.weights();
        if d.area() != 2 * w.area + n as u64 {
            return Err(format!("{l} -> {d}: area {} != 2*{} + {n}", d.area(), w.area));
        }
        if d.contacts() != w.contacts {
            return Err(format!("{l} -> {d}: contacts {} != {}", d.contacts(), w.contacts));
        }
        let back = area_dyck_to_luka(&d);
        if &back != l {
            return Err(format!("{l} -> {d} -> {back}: round trip fails"));
        }
        Ok(d)
    })
    .and_then(|images| bijective_onto(&images, &targets));
    Ok(report(BijectionKind::Area, params, n, sources.len(), targets.len(), outcome))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn motzkin_numbers() {
        let known = [1u128, 1, 2, 4, 9, 21, 51, 127, 323, 835, 2188, 5798, 15511];
        for (n, &m) in known.iter().enumerate() {
            assert_eq!(motzkin_number(n), m);
        }
    }

    #[test]
    fn spec_examples() {
        let r = verify_bijection(BijectionKind::Rise, &ModelParams::finite(1, 2).unwrap(), 8).unwrap();
        assert!(r.pass, "{r:?}");
        let r = verify_bijection(BijectionKind::Motzkin, &ModelParams::unbounded(1), 6).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.source_count, 51);
        let r = verify_bijection(BijectionKind::Area, &ModelParams::unbounded(0), 8).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.target_count, 1430);
    }

    #[test]
    fn json_shape() {
        let r = verify_bijection(BijectionKind::Area, &ModelParams::unbounded(0), 2).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["kind"], "area");
        assert_eq!(v["params"], "(0,inf)");
        assert_eq!(v["pass"], true);
        assert!(v.get("counterexample").is_none());
    }

    #[test]
    fn wrong_model_is_rejected() {
        assert!(matches!(
            verify_bijection(BijectionKind::Area, &ModelParams::finite(0, 3).unwrap(), 3),
            Err(BijectionError::WrongModel(_))
        ));
    }
}
