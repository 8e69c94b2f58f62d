//! Algebraic equations for `L(z)` and `R(z; a)` and their exact series.
//!
//! `L` counts excursions ending anywhere without the contact weight, `R` weights
//! every return to the axis by `a`. They satisfy
//!
//! ```text
//! L = 1 + sum_{j=k}^{ell} (zL)^{j+1}
//! R = 1 + a z sum_{j=k}^{ell} (zL)^j R
//! L (1 + (a-1) R) = a R
//! ```

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::exactalg::{mobius_substitute, AlgError, Monomial, MultiPoly, MobiusMap, Var};
use crate::paths::{Ell, ModelParams};
use crate::series::Series;

/// Truncated series in `z` with polynomial coefficients (in `a`, possibly `q`).
pub type SeriesInZ = Series<MultiPoly>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenfunError {
    #[error("ell = inf has no polynomial equation")]
    InfiniteEll,
    #[error(transparent)]
    Alg(#[from] AlgError),
}

/// `Gamma(u) = sum_{j=k}^{ell} u^{j+1}`.
#[derive(Debug, Clone, PartialEq)]
pub enum GammaForm {
    Polynomial(MultiPoly),
    /// `numerator / (1 - u)`, meaningful for `|u| < 1`.
    Rational { numerator: MultiPoly, denominator: MultiPoly },
}

impl GammaForm {
    pub fn eval_f64(&self, u: f64) -> f64 {
        match self {
            GammaForm::Polynomial(p) => eval_u_f64(p, u),
            GammaForm::Rational { numerator, denominator } => eval_u_f64(numerator, u) / eval_u_f64(denominator, u),
        }
    }
}

fn eval_u_f64(p: &MultiPoly, u: f64) -> f64 {
    p.to_unipoly(Var::U).map(|up| up.eval_f64(u)).unwrap_or(f64::NAN)
}

impl fmt::Display for GammaForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GammaForm::Polynomial(p) => write!(f, "{p}"),
            GammaForm::Rational { numerator, denominator } => write!(f, "({numerator})/({denominator})"),
        }
    }
}

pub fn gamma_form(params: &ModelParams) -> GammaForm {
    let k = params.k();
    let u = MultiPoly::var(Var::U);
    match params.ell() {
        Ell::Finite(l) => {
            GammaForm::Polynomial((k..=l).fold(MultiPoly::zero(), |acc, j| &acc + &u.pow(j + 1)))
        }
        Ell::Infinity => GammaForm::Rational { numerator: u.pow(k + 1), denominator: &MultiPoly::one() - &u },
    }
}

fn finite_ell(params: &ModelParams) -> Result<u32, GenfunError> {
    params.ell().finite().ok_or(GenfunError::InfiniteEll)
}

/// `sum_{j=k}^{ell} z^{j+1} L^{j+1} - L + 1`.
pub fn build_p2(params: &ModelParams) -> Result<MultiPoly, GenfunError> {
    let l = finite_ell(params)?;
    let mut p = &MultiPoly::one() - &MultiPoly::var(Var::L);
    for j in params.k()..=l {
        p = &p + &MultiPoly::term(1, Monomial::one().with(Var::Z, j + 1).with(Var::L, j + 1));
    }
    Ok(p)
}

/// `L = a R / (1 + (a-1) R)`, as a map acting on the variable `R`.
pub fn contact_map() -> MobiusMap {
    let a = MultiPoly::var(Var::A);
    MobiusMap::new(a.clone(), MultiPoly::zero(), &a - &MultiPoly::one(), MultiPoly::one())
}

/// Polynomial equation for `R`, primitive with positive leading term.
pub fn build_p1(params: &ModelParams) -> Result<MultiPoly, GenfunError> {
    let p2 = build_p2(params)?.rename(Var::L, Var::R)?;
    Ok(mobius_substitute(&p2, Var::R, &contact_map())?.primitive_normalize()?)
}

/// `(a-1)^ell - sum_{j=k}^{ell} (az)^{j+1} (a-1)^{ell-j}`.
pub fn indicial_coefficient(params: &ModelParams) -> Result<MultiPoly, GenfunError> {
    let l = finite_ell(params)?;
    let am1 = &MultiPoly::var(Var::A) - &MultiPoly::one();
    let az = MultiPoly::term(1, Monomial::one().with(Var::A, 1).with(Var::Z, 1));
    let mut p = am1.pow(l);
    for j in params.k()..=l {
        p = &p - &(&az.pow(j + 1) * &am1.pow(l - j));
    }
    Ok(p)
}

/// `P2`, `P1` and the indicial coefficient of one model.
#[derive(Debug, Clone, Serialize)]
pub struct AlgebraicSystem {
    #[serde(serialize_with = "ser_display")]
    pub params: ModelParams,
    #[serde(serialize_with = "ser_display")]
    pub p2: MultiPoly,
    #[serde(serialize_with = "ser_display")]
    pub p1: MultiPoly,
    #[serde(serialize_with = "ser_display")]
    pub indicial: MultiPoly,
}

fn ser_display<T: fmt::Display, S: serde::Serializer>(x: &T, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

impl AlgebraicSystem {
    pub fn new(params: &ModelParams) -> Result<Self, GenfunError> {
        Ok(AlgebraicSystem {
            params: *params,
            p2: build_p2(params)?,
            p1: build_p1(params)?,
            indicial: indicial_coefficient(params)?,
        })
    }
}

/// `sum_j (zL)^j` over the allowed jumps, as a series: either a finite sum
/// or `(zL)^k / (1 - zL)` expanded formally.
fn jump_sum(params: &ModelParams, zl: &SeriesInZ) -> SeriesInZ {
    let n = zl.order();
    match params.ell() {
        Ell::Finite(l) => {
            let mut acc = SeriesInZ::zero(n);
            let mut p = zl.pow(params.k());
            for _ in params.k()..=l {
                if p.is_zero() {
                    break;
                }
                acc = acc.add(&p);
                p = p.mul(zl);
            }
            acc
        }
        Ell::Infinity => zl.pow(params.k()).mul(&zl.geometric()),
    }
}

/// `L` through `z^order`.
pub fn series_l(params: &ModelParams, order: usize) -> SeriesInZ {
    let one = SeriesInZ::one(order);
    let mut l = one.clone();
    for _ in 0..=order {
        let zl = l.shift(1);
        l = one.add(&jump_sum(params, &zl).mul(&zl));
    }
    l
}

/// `R` through `z^order`; the coefficient of `z^n` is the contact polynomial in `a`.
pub fn series_r(params: &ModelParams, order: usize) -> SeriesInZ {
    let l = series_l(params, order);
    let one = SeriesInZ::one(order);
    let az = SeriesInZ::monomial(MultiPoly::var(Var::A), 1, order);
    let kernel = az.mul(&jump_sum(params, &l.shift(1)));
    let mut r = one.clone();
    for _ in 0..=order {
        r = one.add(&kernel.mul(&r));
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::partition_polynomial;

    fn mp(k: u32, l: u32) -> ModelParams {
        ModelParams::finite(k, l).unwrap()
    }

    fn ints(c: &[i64], n: usize) -> SeriesInZ {
        Series::from_coeffs(c.iter().map(|&x| MultiPoly::constant(x)).collect(), n)
    }

    fn apoly(c: &[i64]) -> MultiPoly {
        MultiPoly::from_coeffs(Var::A, c)
    }

    const FAMILY: [(u32, u32); 6] = [(0, 0), (0, 1), (1, 1), (1, 2), (0, 2), (2, 4)];

    #[test]
    fn gamma_forms() {
        assert_eq!(gamma_form(&mp(1, 1)).to_string(), "u^2");
        assert_eq!(gamma_form(&mp(0, 1)).to_string(), "u^2 + u");
        assert_eq!(gamma_form(&ModelParams::unbounded(1)).to_string(), "(u^2)/(-u + 1)");
        assert!((gamma_form(&ModelParams::unbounded(1)).eval_f64(0.5) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn p2_examples() {
        assert_eq!(build_p2(&mp(1, 1)).unwrap().to_string(), "z^2*L^2 - L + 1");
        assert_eq!(build_p2(&mp(0, 1)).unwrap().to_string(), "z^2*L^2 + z*L - L + 1");
        assert_eq!(build_p2(&mp(0, 0)).unwrap().to_string(), "z*L - L + 1");
        assert_eq!(build_p2(&ModelParams::unbounded(0)), Err(GenfunError::InfiniteEll));
    }

    #[test]
    fn p1_examples() {
        let p1 = build_p1(&mp(1, 1)).unwrap();
        assert_eq!(p1.to_string(), "z^2*a^2*R^2 - a*R^2 + a*R + R^2 - 2*R + 1");
        assert_eq!(p1.eval_int(Var::A, &1.into()), build_p2(&mp(1, 1)).unwrap().rename(Var::L, Var::R).unwrap());
        // (0,0): (az - 1) R + 1
        assert_eq!(build_p1(&mp(0, 0)).unwrap().to_string(), "z*a*R - R + 1");
    }

    #[test]
    fn indicial_examples() {
        let z = MultiPoly::var(Var::Z);
        let a = MultiPoly::var(Var::A);
        let am1 = &a - &MultiPoly::one();
        let az = &a * &z;
        assert_eq!(indicial_coefficient(&mp(1, 1)).unwrap(), &am1 - &az.pow(2));
        assert_eq!(indicial_coefficient(&mp(0, 1)).unwrap(), &(&am1 - &(&az * &am1)) - &az.pow(2));
        assert_eq!(
            indicial_coefficient(&mp(1, 2)).unwrap(),
            &(&am1.pow(2) - &(&az.pow(2) * &am1)) - &az.pow(3)
        );
    }

    #[test]
    fn indicial_is_top_coefficient_of_p1() {
        for (k, l) in FAMILY {
            let p = mp(k, l);
            let top = build_p1(&p).unwrap().coeff(Var::R, l + 1);
            let ind = indicial_coefficient(&p).unwrap();
            assert!(top == ind || top == -&ind, "({k},{l}): {top} vs {ind}");
            assert_eq!(build_p1(&p).unwrap().degree(Var::R), Some(l + 1));
            assert_eq!(build_p2(&p).unwrap().degree(Var::L), Some(l + 1));
        }
    }

    #[test]
    fn series_examples() {
        assert_eq!(series_l(&mp(1, 1), 4), ints(&[1, 0, 1, 0, 2], 4));
        assert_eq!(series_l(&mp(0, 1), 3), ints(&[1, 1, 2, 4], 3));
        assert_eq!(series_l(&mp(2, 3), 0), ints(&[1], 0));
        let r = series_r(&mp(0, 1), 3);
        let want = vec![apoly(&[1]), apoly(&[0, 1]), apoly(&[0, 1, 1]), apoly(&[0, 1, 2, 1])];
        assert_eq!(r, Series::from_coeffs(want, 3));
        let r = series_r(&mp(1, 1), 4);
        let want = vec![apoly(&[1]), MultiPoly::zero(), apoly(&[0, 1]), MultiPoly::zero(), apoly(&[0, 1, 1])];
        assert_eq!(r, Series::from_coeffs(want, 4));
    }

    #[test]
    fn series_satisfy_their_equations() {
        let n = 12;
        for (k, l) in FAMILY {
            let p = mp(k, l);
            let ls = series_l(&p, n);
            let rs = series_r(&p, n);
            assert!(SeriesInZ::compose_into(&build_p2(&p).unwrap(), Var::L, &ls).is_zero(), "P2 ({k},{l})");
            assert!(SeriesInZ::compose_into(&build_p1(&p).unwrap(), Var::R, &rs).is_zero(), "P1 ({k},{l})");
            // L (1 + (a-1) R) = a R
            let am1 = SeriesInZ::constant(apoly(&[-1, 1]), n);
            let a = SeriesInZ::constant(apoly(&[0, 1]), n);
            let lhs = ls.mul(&SeriesInZ::one(n).add(&am1.mul(&rs)));
            assert_eq!(lhs, a.mul(&rs), "({k},{l})");
            assert_eq!(rs.eval_coeff_var(Var::A, 1), ls);
        }
    }

    #[test]
    fn series_match_enumeration() {
        let n = 10;
        let mut all: Vec<ModelParams> = FAMILY.iter().map(|&(k, l)| mp(k, l)).collect();
        all.push(ModelParams::unbounded(1));
        all.push(ModelParams::unbounded(0));
        for p in all {
            let rs = series_r(&p, n);
            for m in 0..=n {
                assert_eq!(rs.coeff(m), &partition_polynomial(&p, m, false).unwrap(), "{p} n={m}");
            }
        }
    }

    #[test]
    fn unbounded_is_limit_of_finite() {
        let n = 9;
        let inf = series_r(&ModelParams::unbounded(1), n);
        assert_eq!(series_r(&mp(1, n as u32), n), inf);
    }
}
