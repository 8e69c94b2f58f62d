use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Dense univariate polynomial over the integers, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    c: Vec<BigInt>,
}

impl UniPoly {
    pub fn new(mut c: Vec<BigInt>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        UniPoly { c }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^e`
    pub fn monomial(c: BigInt, e: usize) -> Self {
        let mut v = vec![BigInt::zero(); e + 1];
        v[e] = c;
        Self::new(v)
    }

    /// `x^e - 1`
    pub fn x_pow_minus_one(e: usize) -> Self {
        let mut v = vec![BigInt::zero(); e + 1];
        v[0] = -BigInt::one();
        v[e] += BigInt::one();
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.c.last().cloned().unwrap_or_default()
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.c.get(i).cloned().unwrap_or_default()
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.c.iter().map(|x| x * k).collect())
    }

    pub fn shift(&self, e: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![BigInt::zero(); e];
        v.extend(self.c.iter().cloned());
        UniPoly { c: v }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = UniPoly::one();
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

    pub fn derivative(&self) -> Self {
        Self::new(self.c.iter().enumerate().skip(1).map(|(i, x)| x * BigInt::from(i)).collect())
    }

    pub fn content(&self) -> BigInt {
        self.c.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
    }

    /// Content removed, leading coefficient positive.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.leading().is_negative() {
            g = -g;
        }
        Self::new(self.c.iter().map(|x| x / &g).collect())
    }

    /// Substitute `x -> x^e`.
    pub fn inflate(&self, e: usize) -> Self {
        if self.is_zero() || e == 1 {
            return self.clone();
        }
        let mut v = vec![BigInt::zero(); (self.c.len() - 1) * e + 1];
        for (i, x) in self.c.iter().enumerate() {
            v[i * e] = x.clone();
        }
        Self::new(v)
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.c.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.c.iter().rev().fold(0.0, |acc, c| acc * x + bigint_to_f64(c))
    }

    /// Sign of the value at `x`: -1, 0 or 1.
    pub fn sign_at(&self, x: &BigRational) -> i32 {
        let v = self.eval(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }

    /// Pseudo-remainder of `self` by `d` (scaled so the division stays integral).
    pub fn pseudo_rem(&self, d: &UniPoly) -> UniPoly {
        let dd = d.degree().expect("division by zero polynomial");
        let lc = d.leading();
        let mut r = self.clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let rl = r.leading();
            r = &r.scale(&lc) - &d.scale(&rl).shift(rd - dd);
        }
        r
    }

    /// Quotient and remainder over the integers when `d` divides exactly.
    pub fn exact_div(&self, d: &UniPoly) -> Option<UniPoly> {
        let dd = d.degree()?;
        let lc = d.leading();
        let mut r = self.clone();
        let mut q = vec![BigInt::zero(); self.c.len().saturating_sub(dd).max(1)];
        while let Some(rd) = r.degree() {
            if rd < dd {
                return None;
            }
            let (t, rem) = r.leading().div_rem(&lc);
            if !rem.is_zero() {
                return None;
            }
            q[rd - dd] = t.clone();
            r = &r - &d.scale(&t).shift(rd - dd);
        }
        Some(UniPoly::new(q))
    }

    /// Primitive gcd with positive leading coefficient (primitive remainder sequence).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.primitive(), other.primitive());
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        let cont = self.content().gcd(&other.content());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive();
            a = b;
            b = r;
        }
        a.primitive().scale(&cont)
    }

    /// Primitive gcd, ignoring integer contents.
    pub fn gcd_primitive(&self, other: &UniPoly) -> UniPoly {
        self.gcd(other).primitive()
    }

    /// `self / gcd(self, self')`, primitive.
    pub fn squarefree_part(&self) -> UniPoly {
        let g = self.gcd_primitive(&self.derivative());
        if g.is_constant() {
            return self.primitive();
        }
        self.primitive().exact_div(&g).expect("gcd divides").primitive()
    }

    /// Number of sign changes in the coefficient sequence (zeros skipped).
    pub fn sign_changes(&self) -> usize {
        sign_changes(self.c.iter().filter(|x| !x.is_zero()).map(|x| x.is_negative()))
    }

    /// Descartes bound for the number of roots in the open interval `(lo, hi)`:
    /// sign changes of `(1 + x)^d p((lo + hi x) / (1 + x))`.
    pub fn descartes_interval(&self, lo: &BigRational, hi: &BigRational) -> usize {
        let n = match self.degree() {
            Some(n) => n,
            None => return 0,
        };
        // p(lo + w y)
        let w = hi - lo;
        let mut shifted: Vec<BigRational> = self.c.iter().map(|c| BigRational::from_integer(c.clone())).collect();
        taylor_shift(&mut shifted, lo);
        let mut wp = BigRational::one();
        for c in shifted.iter_mut() {
            *c *= &wp;
            wp *= &w;
        }
        // y -> 1/(1+x), times (1+x)^n
        shifted.reverse();
        taylor_shift(&mut shifted, &BigRational::one());
        debug_assert_eq!(shifted.len(), n + 1);
        sign_changes(shifted.iter().filter(|x| !x.is_zero()).map(|x| x.is_negative()))
    }

    /// Cauchy bound: every root has absolute value below this integer.
    pub fn root_bound(&self) -> BigInt {
        let lc = self.leading().abs();
        let m = self.c.iter().rev().skip(1).map(|x| x.abs()).max().unwrap_or_default();
        BigInt::one() + m.div_ceil(&lc)
    }
}

fn sign_changes(signs: impl Iterator<Item = bool>) -> usize {
    let mut count = 0;
    let mut prev: Option<bool> = None;
    for s in signs {
        if prev.is_some_and(|p| p != s) {
            count += 1;
        }
        prev = Some(s);
    }
    count
}

/// In place `p(x) -> p(x + s)` on a coefficient vector.
fn taylor_shift(c: &mut [BigRational], s: &BigRational) {
    let n = c.len();
    for i in 0..n {
        for j in (i..n.saturating_sub(1)).rev() {
            let t = &c[j + 1] * s;
            c[j] += t;
        }
    }
}

pub(crate) fn bigint_to_f64(x: &BigInt) -> f64 {
    num_traits::ToPrimitive::to_f64(x).unwrap_or(f64::NAN)
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = super::MultiPoly::from_unipoly(self, super::Var::Q);
        write!(f, "{p}")
    }
}

impl Add<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.c.len().max(rhs.c.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.c.len().max(rhs.c.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul<&UniPoly> for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut v = vec![BigInt::zero(); self.c.len() + rhs.c.len() - 1];
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in rhs.c.iter().enumerate() {
                v[i + j] += x * y;
            }
        }
        UniPoly::new(v)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly { c: self.c.iter().map(|x| -x).collect() }
    }
}
