//! Area-weighted generating functions.
//!
//! With `q` marking area, `L(z; q)` and `R(z; a, q)` satisfy
//!
//! ```text
//! L(z) = 1 + sum_j prod_{i=0}^{j} z q^i L(q^i z)
//! R(z) = 1 + a z sum_j prod_{i=1}^{j} z q^i L(q^i z) R(z)
//! ```
//!
//! and `L(z) = H(qz)/H(z)` for the solution `H = sum_n c_n(q) z^n` of the linear
//! q-difference equation `H(qz) = H(z) + sum_j z^{j+1} q^{C(j+1,2)} H(q^{j+1} z)`.
//! Then `R = 1 / (1 - a + a H(z)/H(qz))`.

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::exactalg::{Monomial, MultiPoly, RationalQFunction, UniPoly, Var};
use crate::genfun::SeriesInZ;
use crate::paths::{Ell, ModelParams};
use crate::series::Series;

/// Truncated series in `z` with coefficients rational in `q`.
pub type QSeries = Series<RationalQFunction>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QAreaError {
    #[error("coefficient of z^{0} is not a polynomial in q")]
    NonPolynomialCoefficient(usize),
}

fn binom2(n: u32) -> usize {
    (n as usize) * (n as usize).saturating_sub(1) / 2
}

/// Jump sizes contributing at order `n` of the recurrence: `k <= j <= min(ell, n-1)`.
fn jumps_below(params: &ModelParams, n: usize) -> impl Iterator<Item = u32> {
    let hi = match params.ell() {
        Ell::Finite(l) => (l as usize).min(n.saturating_sub(1)),
        Ell::Infinity => n.saturating_sub(1),
    };
    let k = params.k() as usize;
    let range = if n == 0 || k > hi { 1..=0 } else { k..=hi };
    range.map(|j| j as u32)
}

/// `c_0(q), ..., c_N(q)`.
#[derive(Debug, Clone, Serialize)]
pub struct QCoefficientTable {
    #[serde(serialize_with = "ser_display")]
    pub params: ModelParams,
    pub coeffs: Vec<RationalQFunction>,
}

fn ser_display<T: std::fmt::Display, S: serde::Serializer>(x: &T, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// `(q^n - 1) c_n = sum_j q^{C(j+1,2) + (j+1)(n-j-1)} c_{n-j-1}`, `c_0 = 1`.
pub fn c_table(params: &ModelParams, order: usize) -> QCoefficientTable {
    let mut c = vec![RationalQFunction::one()];
    for n in 1..=order {
        let mut acc = RationalQFunction::zero();
        for j in jumps_below(params, n) {
            let prev = n - j as usize - 1;
            let e = binom2(j + 1) + (j as usize + 1) * prev;
            acc = &acc + &c[prev].mul_q_pow(e);
        }
        let qn1 = RationalQFunction::from_poly(UniPoly::x_pow_minus_one(n));
        c.push(&acc / &qn1);
    }
    QCoefficientTable { params: *params, coeffs: c }
}

pub fn h_series(params: &ModelParams, order: usize) -> QSeries {
    Series::from_coeffs(c_table(params, order).coeffs, order)
}

/// The two families with a known product-free closed form for `H`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedForm {
    /// `(k,k)`: `sum_n q^{C((k+1)n,2)} (-z^{k+1})^n / (q^{k+1}; q^{k+1})_n`
    Diagonal(u32),
    /// `(0,inf)`: `sum_n q^{n^2-n} (-z)^n / (q;q)_n`
    ZeroInfinity,
}

/// `(t q^0; q^s)_n` with `t = q^t0`, as a polynomial in `q`: `prod_{i<n} (1 - q^{t0 + s i})`.
pub fn q_pochhammer(t0: usize, s: usize, n: usize) -> UniPoly {
    (0..n).fold(UniPoly::one(), |acc, i| &acc * &(&UniPoly::one() - &UniPoly::monomial(BigInt::from(1), t0 + s * i)))
}

fn signed_q_power(n: usize, e: usize) -> RationalQFunction {
    RationalQFunction::monomial(if n % 2 == 0 { 1 } else { -1 }, e)
}

pub fn closed_form_h(form: ClosedForm, order: usize) -> QSeries {
    let mut coeffs = QSeries::zero(order).into_coeffs();
    match form {
        ClosedForm::Diagonal(k) => {
            let s = k as usize + 1;
            for n in 0..=order / s {
                let num = signed_q_power(n, binom2((s * n) as u32));
                let den = RationalQFunction::from_poly(q_pochhammer(s, s, n));
                coeffs[s * n] = &num / &den;
            }
        }
        ClosedForm::ZeroInfinity => {
            for (n, c) in coeffs.iter_mut().enumerate() {
                let num = signed_q_power(n, n * n - n);
                *c = &num / &RationalQFunction::from_poly(q_pochhammer(1, 1, n));
            }
        }
    }
    Series::from_coeffs(coeffs, order)
}

/// `z -> q^e z` on a series with rational coefficients.
pub fn q_dilate(s: &QSeries, e: usize) -> QSeries {
    s.map_indexed(|n, c| c.mul_q_pow(e * n))
}

/// `H(qz) - H(z) - sum_j z^{j+1} q^{C(j+1,2)} H(q^{j+1} z)`; zero exactly when the equation holds.
pub fn h_equation_residual(params: &ModelParams, h: &QSeries) -> QSeries {
    let n = h.order();
    let mut rhs = h.clone();
    for j in jumps_below(params, n + 1) {
        let term = q_dilate(h, j as usize + 1).shift(j as usize + 1);
        let coef = RationalQFunction::monomial(1, binom2(j + 1));
        rhs = rhs.add(&term.scale(&coef));
    }
    q_dilate(h, 1).sub(&rhs)
}

/// `L(z; q)` by fixed-point iteration, coefficients polynomial in `q`.
pub fn series_l_q(params: &ModelParams, order: usize) -> SeriesInZ {
    let one = SeriesInZ::one(order);
    let mut l = one.clone();
    for _ in 0..=order {
        // factors z q^i L(q^i z) for i = 0, 1, ...
        let mut prod = SeriesInZ::one(order);
        let mut acc = one.clone();
        for i in 0..order as u32 {
            let f = l.dilate(i).shift(1).scale(&q_pow(i));
            prod = prod.mul(&f);
            if prod.is_zero() {
                break;
            }
            if params.admits_jump(i) {
                acc = acc.add(&prod);
            }
        }
        l = acc;
    }
    l
}

fn q_pow(e: u32) -> MultiPoly {
    MultiPoly::term(1, Monomial::one().with(Var::Q, e))
}

/// Which derivation of `R(z; a, q)` to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Route {
    /// Fixed-point iteration of the pair of functional equations.
    Iteration,
    /// `1 / (1 - a + a H(z)/H(qz))` from the coefficient table.
    HRatio,
}

pub fn series_r_q(params: &ModelParams, order: usize, route: Route) -> Result<SeriesInZ, QAreaError> {
    match route {
        Route::Iteration => Ok(r_by_iteration(params, order)),
        Route::HRatio => r_by_h_ratio(params, order),
    }
}

fn r_by_iteration(params: &ModelParams, order: usize) -> SeriesInZ {
    let l = series_l_q(params, order);
    let one = SeriesInZ::one(order);
    let az = SeriesInZ::monomial(MultiPoly::var(Var::A), 1, order);
    // sum_j prod_{i=1}^{j} z q^i L(q^i z)
    let mut kernel = SeriesInZ::zero(order);
    let mut prod = one.clone();
    for j in 0..order as u32 {
        if j > 0 {
            prod = prod.mul(&l.dilate(j).shift(1).scale(&q_pow(j)));
        }
        if prod.is_zero() {
            break;
        }
        if params.admits_jump(j) {
            kernel = kernel.add(&prod);
        }
    }
    let step = az.mul(&kernel);
    let mut r = one.clone();
    for _ in 0..=order {
        r = one.add(&step.mul(&r));
    }
    r
}

/// `[z^n a^m] R = (-1)^m [z^n] Y^m` with `Y = H(z)/H(qz) - 1`.
fn r_by_h_ratio(params: &ModelParams, order: usize) -> Result<SeriesInZ, QAreaError> {
    let h = h_series(params, order);
    let y = h.mul(&q_dilate(&h, 1).inverse_unit()).sub(&QSeries::one(order));
    let mut coeffs = vec![MultiPoly::zero(); order + 1];
    let mut ym = QSeries::one(order);
    for m in 0..=order as u32 {
        for (n, c) in ym.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let p = c.as_polynomial().ok_or(QAreaError::NonPolynomialCoefficient(n))?;
            let p = MultiPoly::from_unipoly(p, Var::Q).mul_monomial(&Monomial::one().with(Var::A, m));
            coeffs[n] = if m % 2 == 0 { &coeffs[n] + &p } else { &coeffs[n] - &p };
        }
        ym = ym.mul(&y);
    }
    Ok(Series::from_coeffs(coeffs, order))
}

/// `H(qz)/H(z)`.
pub fn l_from_h(params: &ModelParams, order: usize) -> QSeries {
    let h = h_series(params, order);
    q_dilate(&h, 1).mul(&h.inverse_unit())
}

/// Convert rational coefficients that are in fact polynomials in `q`.
pub fn to_polynomial_series(s: &QSeries) -> Result<SeriesInZ, QAreaError> {
    let coeffs = s
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, c)| c.as_polynomial().map(|p| MultiPoly::from_unipoly(p, Var::Q)).ok_or(QAreaError::NonPolynomialCoefficient(n)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Series::from_coeffs(coeffs, s.order()))
}

/// `sum_n c_n(q^{q_inflate}) q^{q_shift n} z^{z_pow n}`, truncated at `order`.
pub fn substitute_q_monomial(s: &QSeries, z_pow: usize, q_inflate: usize, q_shift: usize, order: usize) -> QSeries {
    let mut out = QSeries::zero(order).into_coeffs();
    for (n, c) in s.coeffs().iter().enumerate() {
        if z_pow * n <= order {
            out[z_pow * n] = c.inflate(q_inflate).mul_q_pow(q_shift * n);
        }
    }
    Series::from_coeffs(out, order)
}

/// Whether every denominator `den(c_n)` divides `prod_{m<=n} (q^m - 1)`.
pub fn denominators_divide_pochhammer(table: &QCoefficientTable) -> bool {
    let mut prod = UniPoly::one();
    table.coeffs.iter().enumerate().all(|(n, c)| {
        if n > 0 {
            prod = &prod * &UniPoly::x_pow_minus_one(n);
        }
        prod.exact_div(c.denominator()).is_some()
    })
}

/// Coefficients of `prod_{j<depth} (1 - z q^j)` through `z^order`, polynomials in `q`.
pub fn euler_product_truncated(depth: usize, order: usize) -> SeriesInZ {
    let mut acc = SeriesInZ::one(order);
    for j in 0..depth as u32 {
        let f = SeriesInZ::one(order).sub(&SeriesInZ::monomial(q_pow(j), 1, order));
        acc = acc.mul(&f);
    }
    acc
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub order: usize,
    pub checks: Vec<IdentityCheck>,
    pub pass: bool,
}

fn first_mismatch(x: &QSeries, y: &QSeries) -> Option<usize> {
    (0..=x.order().min(y.order())).find(|&n| x.coeff(n) != y.coeff(n))
}

fn check(name: &str, mismatch: Option<String>) -> IdentityCheck {
    IdentityCheck { name: name.into(), pass: mismatch.is_none(), detail: mismatch }
}

fn mp(k: u32, ell: Ell) -> ModelParams {
    ModelParams::new(k, ell).expect("valid parameters")
}

/// `H^{(1,1)}(z, q) = H^{(0,inf)}(q z^2, q^2)` through `z^order`.
pub fn diagonal_identity_mismatch(order: usize) -> Option<usize> {
    let h11 = h_series(&mp(1, Ell::Finite(1)), order);
    let h0inf = h_series(&mp(0, Ell::Infinity), order);
    first_mismatch(&h11, &substitute_q_monomial(&h0inf, 2, 2, 1, order))
}

/// The same substitution with the two models swapped: `H^{(0,inf)}(z, q)` against `H^{(1,1)}(q z^2, q^2)`.
pub fn swapped_identity_mismatch(order: usize) -> Option<usize> {
    let h11 = h_series(&mp(1, Ell::Finite(1)), order);
    let h0inf = h_series(&mp(0, Ell::Infinity), order);
    first_mismatch(&h0inf, &substitute_q_monomial(&h11, 2, 2, 1, order))
}

/// Exact identity checks through `z^order`.
pub fn identity_checks(order: usize) -> IdentityReport {
    let mut checks = Vec::new();

    checks.push(check(
        "H(1,1)(z,q) = H(0,inf)(q z^2, q^2)",
        diagonal_identity_mismatch(order).map(|n| format!("differs at z^{n}")),
    ));

    // Euler: the coefficients of (z;q)_inf agree with a product of depth D below q^D
    let depth = 4 * order + 8;
    let h00 = h_series(&mp(0, Ell::Finite(0)), order);
    let euler = euler_product_truncated(depth, order);
    let euler_bad = (0..=order).find(|&n| {
        let Some(t) = h00.coeff(n).taylor(depth) else { return true };
        let p = euler.coeff(n).to_unipoly(Var::Q).unwrap_or_else(|_| UniPoly::zero());
        (0..depth).any(|i| t[i] != p.coeff(i))
    });
    checks.push(check("H(0,0) = (z;q)_inf", euler_bad.map(|n| format!("differs at z^{n} below q^{depth}"))));

    for k in 0..=3 {
        let rec = h_series(&mp(k, Ell::Finite(k)), order);
        let closed = closed_form_h(ClosedForm::Diagonal(k), order);
        checks.push(check(
            &format!("recurrence = closed form for ({k},{k})"),
            first_mismatch(&rec, &closed).map(|n| format!("differs at z^{n}")),
        ));
    }
    let rec = h_series(&mp(0, Ell::Infinity), order);
    let closed = closed_form_h(ClosedForm::ZeroInfinity, order);
    checks.push(check(
        "recurrence = closed form for (0,inf)",
        first_mismatch(&rec, &closed).map(|n| format!("differs at z^{n}")),
    ));

    let geometric = |s: &SeriesInZ| {
        (0..=order).find(|&n| s.coeff(n) != &MultiPoly::term(1, Monomial::one().with(Var::A, n as u32)))
    };
    let p00 = mp(0, Ell::Finite(0));
    let it = geometric(&r_by_iteration(&p00, order));
    let hr = r_by_h_ratio(&p00, order).map(|s| geometric(&s)).unwrap_or(Some(0));
    checks.push(check(
        "R(0,0) = 1/(1 - a z)",
        it.or(hr).map(|n| format!("differs at z^{n}")),
    ));

    let pass = checks.iter().all(|c| c.pass);
    IdentityReport { order, checks, pass }
}
