//! Critical points, the radius of convergence `z_c(a)`, the free energy and
//! the critical polynomial whose root is the adsorption point `a_c`.
//!
//! With `Gamma(u) = sum_{j=k}^{ell} u^{j+1}`:
//!
//! ```text
//! sum_j j u_c^{j+1} = 1,   z_c = u_c / (1 + Gamma(u_c)),   a_c = 1 + 1/Gamma(u_c)
//! z_c(a) = z_c                 for 1 <= a <= a_c
//! z_c(a) = w (a-1)/a           for a > a_c, where (a-1) Gamma(w) = 1
//! ```

use std::io::{self, Write};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exactalg::{
    isolate_positive_root, isolate_roots_in, normalized_discriminant, positive_roots, rat_to_f64, refine,
    sylvester_resultant, AlgError, Interval, Monomial, MultiPoly, RootEnclosure, UniPoly, Var,
};
use crate::genfun::{build_p1, build_p2, indicial_coefficient, series_r, GenfunError};
use crate::paths::{Ell, ModelParams};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PhaseError {
    #[error("model {0} is degenerate: (0,0) has no adsorption transition")]
    DegenerateModel(ModelParams),
    #[error("contact weight out of range: {0}")]
    DomainError(String),
    #[error("ell = inf has no polynomial equation")]
    InfiniteEll,
    #[error(transparent)]
    Alg(#[from] AlgError),
}

impl From<GenfunError> for PhaseError {
    fn from(e: GenfunError) -> Self {
        match e {
            GenfunError::InfiniteEll => PhaseError::InfiniteEll,
            GenfunError::Alg(a) => PhaseError::Alg(a),
        }
    }
}

fn ser_display<T: std::fmt::Display, S: serde::Serializer>(x: &T, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}


fn is_degenerate(params: &ModelParams) -> bool {
    params.k() == 0 && params.ell() == Ell::Finite(0)
}

/// `Gamma(u)` at a rational point (`u < 1` when `ell = inf`).
pub fn gamma_at(params: &ModelParams, u: &BigRational) -> BigRational {
    let k = params.k();
    match params.ell() {
        Ell::Finite(l) => (k..=l).map(|j| num_traits::pow(u.clone(), (j + 1) as usize)).sum(),
        Ell::Infinity => num_traits::pow(u.clone(), (k + 1) as usize) / (BigRational::one() - u),
    }
}

/// Polynomial in `u` whose unique positive root (in `(0,1)` for `ell = inf`) is `u_c`.
pub fn uc_polynomial(params: &ModelParams) -> MultiPoly {
    let k = params.k();
    let u = MultiPoly::var(Var::U);
    match params.ell() {
        Ell::Finite(l) => (k..=l).fold(-MultiPoly::one(), |acc, j| {
            &acc + &MultiPoly::term(j, Monomial::one().with(Var::U, j + 1))
        }),
        Ell::Infinity => {
            // u^{k+1} (k - (k-1) u) - (1-u)^2
            let lin = &MultiPoly::constant(k) - &u.scale(&BigInt::from(k as i64 - 1));
            &(&u.pow(k + 1) * &lin) - &(&MultiPoly::one() - &u).pow(2)
        }
    }
}

/// Certified location of the transition.
#[derive(Debug, Clone, Serialize)]
pub struct CriticalPoint {
    #[serde(serialize_with = "ser_display")]
    pub params: ModelParams,
    pub u_c: RootEnclosure,
    pub z_c: Interval,
    pub a_c: Interval,
    /// `1 + Gamma(u_c)`
    pub l_c: Interval,
}

impl CriticalPoint {
    pub fn z_c_f64(&self) -> f64 {
        self.z_c.mid_f64()
    }
    pub fn a_c_f64(&self) -> f64 {
        self.a_c.mid_f64()
    }
    pub fn u_c_f64(&self) -> f64 {
        self.u_c.mid_f64()
    }
    pub fn is_exact(&self) -> bool {
        self.u_c.exact
    }
}

/// Only root of `p` in `(lo, hi)`, refined to width `tol`.
fn sole_root_in(p: &MultiPoly, lo: &BigRational, hi: &BigRational, tol: &BigRational) -> Result<RootEnclosure, AlgError> {
    let up = p.to_unipoly(Var::U)?;
    let roots = isolate_roots_in(&up, lo, hi);
    match roots.len() {
        0 => Err(AlgError::NoPositiveRoot),
        1 => {
            let (interval, exact) = refine(&up, &roots[0], tol);
            Ok(RootEnclosure { poly: p.clone(), var: Var::U, interval, exact })
        }
        n => Err(AlgError::MultipleSignChanges(n)),
    }
}

pub fn critical_point(params: &ModelParams, tol: &BigRational) -> Result<CriticalPoint, PhaseError> {
    if is_degenerate(params) {
        return Err(PhaseError::DegenerateModel(*params));
    }
    let p = uc_polynomial(params);
    let u_c = match params.ell() {
        // one coefficient sign change: exactly one positive root, and it lies in (0, 1]
        Ell::Finite(_) => isolate_positive_root(&p, tol, true)?,
        Ell::Infinity => sole_root_in(&p, &BigRational::zero(), &BigRational::one(), tol)?,
    };
    let (lo, hi) = (&u_c.interval.lo, &u_c.interval.hi);
    let (g_lo, g_hi) = (gamma_at(params, lo), gamma_at(params, hi));
    let one = BigRational::one();
    let z_c = Interval::new(lo / (&one + &g_hi), hi / (&one + &g_lo));
    let a_c = Interval::new(&one + g_hi.recip(), &one + g_lo.recip());
    let l_c = Interval::new(&one + &g_lo, &one + &g_hi);
    Ok(CriticalPoint { params: *params, u_c, z_c, a_c, l_c })
}

/// Which analytic regime determines `z_c(a)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    /// Desorbed: `z_c(a) = z_c` does not depend on `a`.
    Desorbed,
    /// Adsorbed: the root of `(a-1) Gamma(az/(a-1)) = 1`.
    Adsorbed,
    /// The `(0,0)` model, `z_c(a) = 1/a`.
    Degenerate,
}

#[derive(Debug, Clone, Serialize)]
pub struct Radius {
    pub branch: Branch,
    pub interval: Interval,
    pub exact: bool,
}

impl Radius {
    pub fn mid_f64(&self) -> f64 {
        self.interval.mid_f64()
    }
}

/// `w` with `(a-1) Gamma(w) = 1`, cleared of denominators.
fn zplus_polynomial(params: &ModelParams, a: &BigRational) -> MultiPoly {
    let (num, den) = (a.numer().clone(), a.denom().clone());
    let am1 = MultiPoly::constant(&num - &den);
    let dd = MultiPoly::constant(den);
    let w = MultiPoly::var(Var::U);
    let k = params.k();
    match params.ell() {
        Ell::Finite(l) => {
            let g = (k..=l).fold(MultiPoly::zero(), |acc, j| &acc + &w.pow(j + 1));
            &(&am1 * &g) - &dd
        }
        // (a-1) w^{k+1} = 1 - w
        Ell::Infinity => &(&(&am1 * &w.pow(k + 1)) + &(&dd * &w)) - &dd,
    }
}

/// Radius of convergence of `R(z; a)` for `a >= 1`.
pub fn zc_of_a(params: &ModelParams, a: &BigRational, tol: &BigRational) -> Result<Radius, PhaseError> {
    if a < &BigRational::one() {
        return Err(PhaseError::DomainError(format!("a = {a} < 1")));
    }
    if is_degenerate(params) {
        return Ok(Radius { branch: Branch::Degenerate, interval: Interval::point(a.recip()), exact: true });
    }
    let mut cp_tol = tol.clone();
    let mut cp = critical_point(params, &cp_tol)?;
    // tighten the a_c enclosure until it no longer straddles a
    for _ in 0..200 {
        if cp.u_c.exact || a <= &cp.a_c.lo || a >= &cp.a_c.hi {
            break;
        }
        cp_tol = &cp_tol / BigRational::from_integer(BigInt::from(1u64 << 20));
        cp = critical_point(params, &cp_tol)?;
    }
    if a <= &cp.a_c.hi {
        let exact = cp.z_c.is_point();
        return Ok(Radius { branch: Branch::Desorbed, interval: cp.z_c, exact });
    }
    Ok(zplus(params, a, tol)?)
}

/// The adsorbed-branch root `z_c^+(a)` for `a > 1`, without comparing to `a_c`.
pub fn zplus(params: &ModelParams, a: &BigRational, tol: &BigRational) -> Result<Radius, PhaseError> {
    if a <= &BigRational::one() {
        return Err(PhaseError::DomainError(format!("a = {a} must exceed 1")));
    }
    let scale = (a - BigRational::one()) / a;
    let w = isolate_positive_root(&zplus_polynomial(params, a), &(tol / &scale), true)?;
    let interval = Interval::new(&w.interval.lo * &scale, &w.interval.hi * &scale);
    Ok(Radius { branch: Branch::Adsorbed, exact: w.exact, interval })
}

/// `kappa(a) = -log z_c(a)`.
pub fn free_energy(params: &ModelParams, a: &BigRational, tol: &BigRational) -> Result<f64, PhaseError> {
    Ok(-zc_of_a(params, a, tol)?.mid_f64().ln())
}

/// Three views of the polynomial in `a` vanishing at `a_c`.
#[derive(Debug, Clone, Serialize)]
pub struct CritPolynomial {
    #[serde(serialize_with = "ser_display")]
    pub params: ModelParams,
    /// Resultant in `z` of the `P1` discriminant (with its power of `z` removed) and
    /// the indicial coefficient. Carries extraneous factors.
    #[serde(serialize_with = "ser_display")]
    pub discriminant_route: MultiPoly,
    /// Resultant in `u` of the two critical-point equations.
    #[serde(serialize_with = "ser_display")]
    pub elimination_route: MultiPoly,
    /// Greatest common divisor of the two routes.
    #[serde(serialize_with = "ser_display")]
    pub critical_factor: MultiPoly,
    /// Positive root of `critical_factor` closest to the certified `a_c`.
    pub a_c: RootEnclosure,
}

fn require_polynomial_model(params: &ModelParams) -> Result<u32, PhaseError> {
    let l = params.ell().finite().ok_or(PhaseError::InfiniteEll)?;
    if l == 0 {
        return Err(PhaseError::DegenerateModel(*params));
    }
    Ok(l)
}

/// `p / z^m` with `m` the lowest power of `z` present.
fn strip_z_power(p: &MultiPoly) -> MultiPoly {
    let m = p.min_degree(Var::Z);
    if m == 0 {
        return p.clone();
    }
    p.exact_div(&MultiPoly::var(Var::Z).pow(m)).expect("monomial divides")
}

fn univariate_gcd(p: &MultiPoly, q: &MultiPoly, v: Var) -> Result<MultiPoly, AlgError> {
    let g = p.to_unipoly(v)?.gcd_primitive(&q.to_unipoly(v)?);
    MultiPoly::from_unipoly(&g, v).primitive_normalize()
}

/// Resultant in `u` of `sum_j j u^{j+1} - 1` and `(a-1) Gamma(u) - 1`.
pub fn elimination_resultant(params: &ModelParams) -> Result<MultiPoly, PhaseError> {
    let l = require_polynomial_model(params)?;
    let u = MultiPoly::var(Var::U);
    let am1 = &MultiPoly::var(Var::A) - &MultiPoly::one();
    let g = (params.k()..=l).fold(MultiPoly::zero(), |acc, j| &acc + &u.pow(j + 1));
    let second = &(&am1 * &g) - &MultiPoly::one();
    Ok(sylvester_resultant(&uc_polynomial(params), &second, Var::U)?.primitive_normalize()?)
}

/// Resultant in `z` of the `P1` discriminant and the indicial coefficient.
pub fn discriminant_resultant(params: &ModelParams) -> Result<MultiPoly, PhaseError> {
    require_polynomial_model(params)?;
    let disc = strip_z_power(&normalized_discriminant(&build_p1(params)?, Var::R)?);
    let ind = indicial_coefficient(params)?;
    Ok(sylvester_resultant(&disc, &ind, Var::Z)?.primitive_normalize()?)
}

pub fn crit_polynomial(params: &ModelParams, tol: &BigRational) -> Result<CritPolynomial, PhaseError> {
    let discriminant_route = discriminant_resultant(params)?;
    let elimination_route = elimination_resultant(params)?;
    let critical_factor = univariate_gcd(&discriminant_route, &elimination_route, Var::A)?;
    let cp = critical_point(params, tol)?;
    let target = cp.a_c.midpoint();
    let a_c = positive_roots(&critical_factor, tol)?
        .into_iter()
        .min_by_key(|r| (r.midpoint() - &target).abs())
        .ok_or(AlgError::NoPositiveRoot)?;
    Ok(CritPolynomial { params: *params, discriminant_route, elimination_route, critical_factor, a_c })
}

/// Result of comparing the two discriminants exactly.
#[derive(Debug, Clone, Serialize)]
pub struct FactorizationReport {
    #[serde(serialize_with = "ser_display")]
    pub params: ModelParams,
    #[serde(serialize_with = "ser_display")]
    pub disc_p1: MultiPoly,
    #[serde(serialize_with = "ser_display")]
    pub disc_p2: MultiPoly,
    /// `disc_p1 / disc_p2` when it is a polynomial times a rational constant.
    #[serde(serialize_with = "ser_opt_display")]
    pub ratio: Option<MultiPoly>,
    #[serde(serialize_with = "ser_display")]
    pub constant: BigRational,
    pub expected_exponent: u32,
    pub pass: bool,
}

fn ser_opt_display<T: std::fmt::Display, S: serde::Serializer>(x: &Option<T>, s: S) -> Result<S::Ok, S::Error> {
    match x {
        Some(v) => s.serialize_str(&v.to_string()),
        None => s.serialize_none(),
    }
}

/// Check `disc_R(P1) = c * a^{ell(ell+1)} * disc_L(P2)` exactly.
pub fn discriminant_factorization_check(params: &ModelParams) -> Result<FactorizationReport, PhaseError> {
    let l = params.ell().finite().ok_or(PhaseError::InfiniteEll)?;
    let expected_exponent = l * (l + 1);
    let disc_p1 = normalized_discriminant(&build_p1(params)?, Var::R)?;
    let disc_p2 = normalized_discriminant(&build_p2(params)?, Var::L)?;
    let lc2 = disc_p2.leading_term().map(|(_, c)| c.clone()).ok_or(AlgError::ZeroPolynomial)?;
    // disc_p1 * lc2 / disc_p2 is an integer polynomial whenever the ratio is a constant times a polynomial
    let quotient = disc_p1.scale(&lc2).exact_div(&disc_p2);
    let (ratio, constant, pass) = match quotient {
        Some(q) => {
            let c = q.leading_term().map(|(_, c)| c.clone()).unwrap_or_default();
            let constant = BigRational::new(c.clone(), lc2.clone());
            let expected = MultiPoly::term(c, Monomial::one().with(Var::A, expected_exponent));
            let pass = q == expected;
            let ratio = q.exact_div(&MultiPoly::constant(lc2.clone())).unwrap_or(q);
            (Some(ratio), constant, pass)
        }
        None => (None, BigRational::zero(), false),
    };
    Ok(FactorizationReport { params: *params, disc_p1, disc_p2, ratio, constant, expected_exponent, pass })
}

#[derive(Debug, Clone, Serialize)]
pub struct PhasePoint {
    #[serde(serialize_with = "ser_display")]
    pub a: BigRational,
    pub branch: Branch,
    pub z_c: f64,
    pub kappa: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct PhaseCurve {
    #[serde(serialize_with = "ser_display")]
    pub params: ModelParams,
    pub a_c: Option<Interval>,
    pub points: Vec<PhasePoint>,
}

/// `samples` equally spaced rational values from `1` to `a_max`.
pub fn a_grid(a_max: &BigRational, samples: usize) -> Vec<BigRational> {
    let one = BigRational::one();
    if samples <= 1 {
        return vec![one];
    }
    let step = (a_max - &one) / BigRational::from_integer(BigInt::from(samples - 1));
    (0..samples).map(|i| &one + &step * BigRational::from_integer(BigInt::from(i))).collect()
}

/// Sample `z_c(a)` and `kappa(a)` on the given grid, in parallel.
pub fn phase_curve(params: &ModelParams, grid: &[BigRational], tol: &BigRational) -> Result<PhaseCurve, PhaseError> {
    let a_c = if is_degenerate(params) { None } else { Some(critical_point(params, tol)?.a_c) };
    let points = grid
        .par_iter()
        .map(|a| {
            let r = zc_of_a(params, a, tol)?;
            let z = r.mid_f64();
            Ok(PhasePoint { a: a.clone(), branch: r.branch, z_c: z, kappa: -z.ln() })
        })
        .collect::<Result<Vec<_>, PhaseError>>()?;
    Ok(PhaseCurve { params: *params, a_c, points })
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    #[serde(serialize_with = "ser_display")]
    pub ell: Ell,
    pub a_c: Interval,
}

/// `a_c(k, ell)` for each `ell`, in parallel.
pub fn ac_sweep(k: u32, ells: &[Ell], tol: &BigRational) -> Result<Vec<SweepRow>, PhaseError> {
    ells.par_iter()
        .map(|&ell| {
            let p = ModelParams::new(k, ell).map_err(|e| PhaseError::DomainError(e.to_string()))?;
            Ok(SweepRow { ell, a_c: critical_point(&p, tol)?.a_c })
        })
        .collect()
}

/// Round to 12 significant digits for tabular output.
pub fn fmt12(x: f64) -> String {
    if !x.is_finite() || x == 0.0 {
        return x.to_string();
    }
    format!("{:.11e}", x).parse::<f64>().map(|r| r.to_string()).unwrap_or_else(|_| x.to_string())
}

pub fn write_phase_csv<W: Write>(curve: &PhaseCurve, mut w: W) -> io::Result<()> {
    writeln!(w, "a,z_c,kappa")?;
    for p in &curve.points {
        writeln!(w, "{},{},{}", fmt12(rat_to_f64(&p.a)), fmt12(p.z_c), fmt12(p.kappa))?;
    }
    Ok(())
}

pub fn write_sweep_csv<W: Write>(rows: &[SweepRow], mut w: W) -> io::Result<()> {
    writeln!(w, "ell,a_c")?;
    for r in rows {
        writeln!(w, "{},{}", r.ell, fmt12(r.a_c.mid_f64()))?;
    }
    Ok(())
}

/// `Z_{n+1}(a) / Z_n(a)` from the exact series; the growth rate tends to `1/z_c(a)`.
pub fn growth_ratio(params: &ModelParams, a: i64, n: usize) -> f64 {
    let s = series_r(params, n + 1).eval_coeff_var(Var::A, a);
    let zn = rat_to_f64(&BigRational::from_integer(s.coeff(n).constant_term()));
    let zn1 = rat_to_f64(&BigRational::from_integer(s.coeff(n + 1).constant_term()));
    zn1 / zn
}

/// Root in `z` of the indicial coefficient at a fixed `a`.
pub fn indicial_root(params: &ModelParams, a: &BigRational, tol: &BigRational) -> Result<RootEnclosure, PhaseError> {
    let ind = indicial_coefficient(params)?;
    // substitute a = p/q and clear the denominator q^{deg_a}
    let (num, den) = (a.numer().clone(), a.denom().clone());
    let deg = ind.degree(Var::A).unwrap_or(0);
    let mut acc = MultiPoly::zero();
    for (m, c) in ind.terms() {
        let e = m.exp(Var::A);
        let coef = c * num_traits::pow(num.clone(), e as usize) * num_traits::pow(den.clone(), (deg - e) as usize);
        acc = &acc + &MultiPoly::term(coef, Monomial::one().with(Var::Z, m.exp(Var::Z)));
    }
    let up: UniPoly = acc.to_unipoly(Var::Z)?;
    let roots = positive_roots(&MultiPoly::from_unipoly(&up, Var::Z), tol)?;
    roots.into_iter().next().ok_or(PhaseError::Alg(AlgError::NoPositiveRoot))
}
