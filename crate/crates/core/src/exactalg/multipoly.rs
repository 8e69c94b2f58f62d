use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use super::{AlgError, UniPoly};

/// Variables a polynomial may use. The declaration order is the lexicographic
/// order used for leading terms and printing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Z,
    A,
    Q,
    U,
    L,
    R,
}

pub const NVARS: usize = 6;

impl Var {
    pub const ALL: [Var; NVARS] = [Var::Z, Var::A, Var::Q, Var::U, Var::L, Var::R];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::Z => "z",
            Var::A => "a",
            Var::Q => "q",
            Var::U => "u",
            Var::L => "L",
            Var::R => "R",
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector over [`Var::ALL`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial([u32; NVARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; NVARS])
    }

    pub fn var(v: Var) -> Self {
        Self::one().with(v, 1)
    }

    pub fn with(mut self, v: Var, e: u32) -> Self {
        self.0[v.index()] = e;
        self
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.0[v.index()]
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = [0; NVARS];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.0[i] + other.0[i];
        }
        Monomial(out)
    }

    fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = [0; NVARS];
        for (i, o) in out.iter_mut().enumerate() {
            *o = self.0[i].checked_sub(other.0[i])?;
        }
        Some(Monomial(out))
    }

    fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

/// Sparse multivariate polynomial with arbitrary-precision integer coefficients.
///
/// Zero coefficients are never stored, so structural equality is polynomial equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn var(v: Var) -> Self {
        Self::term(1, Monomial::var(v))
    }

    pub fn term(c: impl Into<BigInt>, m: Monomial) -> Self {
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    /// Build from `(monomial, coefficient)` pairs; repeated monomials are summed.
    pub fn from_terms(it: impl IntoIterator<Item = (Monomial, BigInt)>) -> Self {
        let mut p = MultiPoly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    /// Univariate polynomial from coefficients listed lowest degree first.
    pub fn from_coeffs(v: Var, coeffs: &[i64]) -> Self {
        Self::from_terms(
            coeffs
                .iter()
                .enumerate()
                .map(|(i, &c)| (Monomial::one().with(v, i as u32), BigInt::from(c))),
        )
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn constant_term(&self) -> BigInt {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_default()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    /// Highest term in lexicographic order (`z > a > q > u > L > R`).
    pub fn leading_term(&self) -> Option<(&Monomial, &BigInt)> {
        self.terms.iter().next_back()
    }

    /// Variables that occur with a positive exponent, in canonical order.
    pub fn vars(&self) -> Vec<Var> {
        Var::ALL
            .into_iter()
            .filter(|&v| self.terms.keys().any(|m| m.exp(v) > 0))
            .collect()
    }

    pub fn degree(&self, v: Var) -> Option<u32> {
        self.terms.keys().map(|m| m.exp(v)).max()
    }

    /// Smallest exponent of `v` over all terms (0 for the zero polynomial).
    pub fn min_degree(&self, v: Var) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).min().unwrap_or(0)
    }

    /// Coefficient of `v^d`, as a polynomial in the other variables.
    pub fn coeff(&self, v: Var, d: u32) -> MultiPoly {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exp(v) == d)
                .map(|(m, c)| (m.with(v, 0), c.clone()))
                .collect(),
        }
    }

    /// All coefficients in `v`, lowest degree first.
    pub fn coeffs(&self, v: Var) -> Vec<MultiPoly> {
        let deg = self.degree(v).unwrap_or(0) as usize;
        let mut out = vec![MultiPoly::zero(); deg + 1];
        for (m, c) in &self.terms {
            out[m.exp(v) as usize].add_term(m.with(v, 0), c.clone());
        }
        out
    }

    /// Inverse of [`MultiPoly::coeffs`].
    pub fn from_var_coeffs(v: Var, coeffs: &[MultiPoly]) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (i, c) in coeffs.iter().enumerate() {
            for (m, x) in &c.terms {
                out.add_term(m.with(v, m.exp(v) + i as u32), x.clone());
            }
        }
        out
    }

    pub fn scale(&self, c: &BigInt) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero();
        }
        MultiPoly { terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> MultiPoly {
        MultiPoly { terms: self.terms.iter().map(|(k, x)| (k.mul(m), x.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut base = self.clone();
        let mut acc = MultiPoly::one();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self, v: Var) -> MultiPoly {
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e > 0 {
                out.add_term(m.with(v, e - 1), c * BigInt::from(e));
            }
        }
        out
    }

    /// Rename variable `from` to `to`; `to` must not already occur.
    pub fn rename(&self, from: Var, to: Var) -> Result<MultiPoly, AlgError> {
        if from == to {
            return Ok(self.clone());
        }
        if self.degree(to).unwrap_or(0) > 0 {
            return Err(AlgError::VariableMismatch(format!("{to} already occurs; cannot rename {from}")));
        }
        Ok(MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.with(to, m.exp(from)).with(from, 0), c.clone()))
                .collect(),
        })
    }

    /// Replace `v` by the polynomial `value`.
    pub fn substitute(&self, v: Var, value: &MultiPoly) -> MultiPoly {
        let coeffs = self.coeffs(v);
        // Horner
        let mut acc = MultiPoly::zero();
        for c in coeffs.iter().rev() {
            acc = &(&acc * value) + c;
        }
        acc
    }

    /// Replace `v` by an integer.
    pub fn eval_int(&self, v: Var, x: &BigInt) -> MultiPoly {
        self.substitute(v, &MultiPoly::constant(x.clone()))
    }

    /// Exact value at a rational point; every occurring variable must be assigned.
    pub fn evaluate(&self, point: &[(Var, BigRational)]) -> Result<BigRational, AlgError> {
        for v in self.vars() {
            if !point.iter().any(|(w, _)| *w == v) {
                return Err(AlgError::VariableMismatch(format!("no value given for {v}")));
            }
        }
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for (v, x) in point {
                let e = m.exp(*v);
                if e > 0 {
                    t *= Pow::pow(x, e);
                }
            }
            total += t;
        }
        Ok(total)
    }

    /// Gcd of the integer coefficients (positive; zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divide out the integer content and make the leading coefficient positive.
    pub fn primitive_normalize(&self) -> Result<MultiPoly, AlgError> {
        let content = self.content();
        if content.is_zero() {
            return Err(AlgError::ZeroPolynomial);
        }
        let lead_negative = self.leading_term().is_some_and(|(_, c)| c.is_negative());
        let divisor = if lead_negative { -content } else { content };
        Ok(MultiPoly { terms: self.terms.iter().map(|(m, c)| (*m, c / &divisor)).collect() })
    }

    /// Exact quotient `self / d` over the integers, or `None` if `d` does not divide.
    pub fn exact_div(&self, d: &MultiPoly) -> Option<MultiPoly> {
        let (dm, dc) = d.leading_term()?;
        let (dm, dc) = (*dm, dc.clone());
        if d.terms.len() == 1 {
            let mut out = BTreeMap::new();
            for (m, c) in &self.terms {
                let (q, r) = c.div_rem(&dc);
                if !r.is_zero() {
                    return None;
                }
                out.insert(m.div(&dm)?, q);
            }
            return Some(MultiPoly { terms: out });
        }
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero();
        while let Some((rm, rc)) = rem.leading_term() {
            let m = rm.div(&dm)?;
            let (c, r) = rc.div_rem(&dc);
            if !r.is_zero() {
                return None;
            }
            for (tm, tc) in &d.terms {
                rem.add_term(tm.mul(&m), -(tc * &c));
            }
            quot.add_term(m, c);
        }
        Some(quot)
    }

    /// View as a dense univariate polynomial in `v`.
    pub fn to_unipoly(&self, v: Var) -> Result<UniPoly, AlgError> {
        if self.vars().iter().any(|&w| w != v) {
            return Err(AlgError::VariableMismatch(format!("expected a polynomial in {v} only, got {self}")));
        }
        let deg = self.degree(v).unwrap_or(0) as usize;
        let mut c = vec![BigInt::zero(); deg + 1];
        for (m, x) in &self.terms {
            c[m.exp(v) as usize] = x.clone();
        }
        Ok(UniPoly::new(c))
    }

    pub fn from_unipoly(p: &UniPoly, v: Var) -> MultiPoly {
        MultiPoly::from_terms(
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::one().with(v, i as u32), c.clone())),
        )
    }

    /// Drop every term whose `v`-exponent exceeds `max`.
    pub fn truncate(&self, v: Var, max: u32) -> MultiPoly {
        MultiPoly {
            terms: self.terms.iter().filter(|(m, _)| m.exp(v) <= max).map(|(m, c)| (*m, c.clone())).collect(),
        }
    }

    /// Multiply every term by `q^(e * deg_z)`, i.e. substitute `z -> q^e z`.
    pub fn dilate(&self, z: Var, q: Var, e: u32) -> MultiPoly {
        MultiPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.with(q, m.exp(q) + e * m.exp(z)), c.clone()))
                .collect(),
        }
    }

    pub fn all_coeffs_nonnegative(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for v in Var::ALL {
                match m.exp(v) {
                    0 => {}
                    1 => factors.push(v.name().to_string()),
                    e => factors.push(format!("{}^{e}", v.name())),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}

impl Add<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Sub<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl Mul<&MultiPoly> for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        let mut acc: std::collections::HashMap<Monomial, BigInt> =
            std::collections::HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                *acc.entry(m1.mul(m2)).or_default() += c1 * c2;
            }
        }
        MultiPoly { terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect() }
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: MultiPoly) -> MultiPoly {
                (&self).$f(&rhs)
            }
        }
        impl $tr<&MultiPoly> for MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: &MultiPoly) -> MultiPoly {
                (&self).$f(rhs)
            }
        }
        impl $tr<MultiPoly> for &MultiPoly {
            type Output = MultiPoly;
            fn $f(self, rhs: MultiPoly) -> MultiPoly {
                self.$f(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

impl From<i64> for MultiPoly {
    fn from(c: i64) -> Self {
        MultiPoly::constant(c)
    }
}
