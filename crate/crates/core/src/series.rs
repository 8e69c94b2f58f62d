//! Truncated power series in `z` over an exact coefficient ring.

use std::fmt;

use crate::exactalg::{MultiPoly, RationalQFunction, Var};

/// Exact coefficient ring for [`Series`].
pub trait Coefficient: Clone + PartialEq + fmt::Display {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
}

impl Coefficient for MultiPoly {
    fn zero() -> Self {
        MultiPoly::zero()
    }
    fn one() -> Self {
        MultiPoly::one()
    }
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
}

impl Coefficient for RationalQFunction {
    fn zero() -> Self {
        RationalQFunction::zero()
    }
    fn one() -> Self {
        RationalQFunction::one()
    }
    fn is_zero(&self) -> bool {
        RationalQFunction::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
}

/// `sum_{n <= order} c_n z^n`, all arithmetic truncated at `order`.
#[derive(Debug, Clone, PartialEq)]
pub struct Series<C> {
    coeffs: Vec<C>,
}

impl<C: Coefficient> Series<C> {
    pub fn zero(order: usize) -> Self {
        Series { coeffs: vec![C::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(C::one(), order)
    }

    pub fn constant(c: C, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `c z^e` (zero if `e > order`).
    pub fn monomial(c: C, e: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if e <= order {
            s.coeffs[e] = c;
        }
        s
    }

    /// Pads with zeros or truncates to `order`.
    pub fn from_coeffs(mut coeffs: Vec<C>, order: usize) -> Self {
        coeffs.resize(order + 1, C::zero());
        Series { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn coeff(&self, n: usize) -> &C {
        &self.coeffs[n]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(C::is_zero)
    }

    /// Smallest index with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        Series { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(x, y)| x.add(y)).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Series { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(x, y)| x.sub(y)).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        let mut out = vec![C::zero(); n + 1];
        for (i, x) in self.coeffs.iter().enumerate().take(n + 1) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in o.coeffs.iter().enumerate().take(n + 1 - i) {
                if !y.is_zero() {
                    out[i + j] = out[i + j].add(&x.mul(y));
                }
            }
        }
        Series { coeffs: out }
    }

    pub fn scale(&self, c: &C) -> Self {
        Series { coeffs: self.coeffs.iter().map(|x| x.mul(c)).collect() }
    }

    /// Multiply by `z^e`.
    pub fn shift(&self, e: usize) -> Self {
        let n = self.order();
        let mut out = vec![C::zero(); n + 1];
        for i in 0..=n.saturating_sub(e) {
            if i + e <= n {
                out[i + e] = self.coeffs[i].clone();
            }
        }
        Series { coeffs: out }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// `1 / (1 - s)` for a series without constant term, as `sum_m s^m`.
    pub fn geometric(&self) -> Self {
        assert!(self.coeffs[0].is_zero(), "geometric series needs zero constant term");
        let n = self.order();
        let mut acc = Self::one(n);
        let mut p = Self::one(n);
        for _ in 0..n {
            p = p.mul(self);
            if p.is_zero() {
                break;
            }
            acc = acc.add(&p);
        }
        acc
    }

    /// Multiplicative inverse of a series with constant term one.
    pub fn inverse_unit(&self) -> Self {
        assert!(self.coeffs[0] == C::one(), "inverse_unit needs constant term 1");
        Self::one(self.order()).sub(self).geometric()
    }

    /// Apply `f(n, c_n)` to every coefficient.
    pub fn map_indexed(&self, f: impl Fn(usize, &C) -> C) -> Self {
        Series { coeffs: self.coeffs.iter().enumerate().map(|(n, c)| f(n, c)).collect() }
    }

    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Series<D> {
        Series { coeffs: self.coeffs.iter().map(f).collect() }
    }
}

impl Series<MultiPoly> {
    /// Expand a polynomial that contains `z` into a series in `z`.
    pub fn from_poly(p: &MultiPoly, order: usize) -> Self {
        let mut cs = p.coeffs(Var::Z);
        cs.truncate(order + 1);
        Self::from_coeffs(cs, order)
    }

    /// Evaluate `p(var = s)` as a series; `p` may also contain `z` and other variables.
    pub fn compose_into(p: &MultiPoly, var: Var, s: &Series<MultiPoly>) -> Self {
        let n = s.order();
        let mut acc = Self::zero(n);
        for c in p.coeffs(var).iter().rev() {
            acc = acc.mul(s).add(&Self::from_poly(c, n));
        }
        acc
    }

    /// Substitute `z -> q^e z`.
    pub fn dilate(&self, e: u32) -> Self {
        Series {
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| c.mul_monomial(&crate::exactalg::Monomial::one().with(Var::Q, e * n as u32)))
                .collect(),
        }
    }

    /// Substitute a value for a coefficient variable (e.g. `a = 1`).
    pub fn eval_coeff_var(&self, v: Var, x: i64) -> Self {
        self.map(|c| c.eval_int(v, &x.into()))
    }
}

impl<C: Coefficient> fmt::Display for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (n, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match n {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*z")?,
                _ => write!(f, "({c})*z^{n}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(z^{})", self.order() + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(c: &[i64], n: usize) -> Series<MultiPoly> {
        Series::from_coeffs(c.iter().map(|&x| MultiPoly::constant(x)).collect(), n)
    }

    #[test]
    fn truncated_product_and_inverse() {
        let one_minus_z = ints(&[1, -1], 5);
        let inv = one_minus_z.inverse_unit();
        assert_eq!(inv, ints(&[1, 1, 1, 1, 1, 1], 5));
        assert_eq!(inv.mul(&one_minus_z), Series::one(5));
    }

    #[test]
    fn shift_truncates() {
        assert_eq!(ints(&[1, 2, 3], 3).shift(2), ints(&[0, 0, 1, 2], 3));
    }

    #[test]
    fn compose_catalan_kernel() {
        // C = 1 + z C^2 up to z^4: 1, 1, 2, 5, 14
        let c = ints(&[1, 1, 2, 5, 14], 4);
        let z = MultiPoly::var(Var::Z);
        let l = MultiPoly::var(Var::L);
        let kernel = &(&(&z * &l.pow(2)) - &l) + &MultiPoly::one();
        assert!(Series::compose_into(&kernel, Var::L, &c).is_zero());
    }
}
