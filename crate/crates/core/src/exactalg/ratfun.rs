use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::UniPoly;

/// Reduced quotient of two integer polynomials in `q`.
///
/// Invariants: the denominator is nonzero with positive leading coefficient, and
/// numerator and denominator share no non-constant factor and no integer content.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RationalQFunction {
    num: UniPoly,
    den: UniPoly,
}

impl RationalQFunction {
    /// Panics if `den` is zero.
    pub fn new(num: UniPoly, den: UniPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let g = num.gcd_primitive(&den);
        let (mut num, mut den) = if g.is_constant() {
            (num, den)
        } else {
            (num.exact_div(&g).expect("gcd divides"), den.exact_div(&g).expect("gcd divides"))
        };
        let mut c = num.content().gcd(&den.content());
        if den.leading().is_negative() {
            c = -c;
        }
        if !c.is_one() {
            num = UniPoly::new(num.coeffs().iter().map(|x| x / &c).collect());
            den = UniPoly::new(den.coeffs().iter().map(|x| x / &c).collect());
        }
        RationalQFunction { num, den }
    }

    pub fn zero() -> Self {
        RationalQFunction { num: UniPoly::zero(), den: UniPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_poly(UniPoly::one())
    }

    pub fn from_poly(p: UniPoly) -> Self {
        RationalQFunction { num: p, den: UniPoly::one() }
    }

    pub fn from_int(c: impl Into<BigInt>) -> Self {
        Self::from_poly(UniPoly::constant(c.into()))
    }

    /// `c * q^e`
    pub fn monomial(c: impl Into<BigInt>, e: usize) -> Self {
        Self::from_poly(UniPoly::monomial(c.into(), e))
    }

    pub fn numerator(&self) -> &UniPoly {
        &self.num
    }

    pub fn denominator(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The numerator when the denominator is `1`.
    pub fn as_polynomial(&self) -> Option<&UniPoly> {
        (self.den == UniPoly::one()).then_some(&self.num)
    }

    pub fn recip(&self) -> Self {
        Self::new(self.den.clone(), self.num.clone())
    }

    /// Substitute `q -> q^e`.
    pub fn inflate(&self, e: usize) -> Self {
        Self::new(self.num.inflate(e), self.den.inflate(e))
    }

    /// Multiply by `q^e`.
    pub fn mul_q_pow(&self, e: usize) -> Self {
        Self::new(self.num.shift(e), self.den.clone())
    }

    /// First `m` power-series coefficients around `q = 0`; `None` if there is a pole at 0.
    pub fn taylor(&self, m: usize) -> Option<Vec<BigInt>> {
        let d0 = self.den.coeff(0);
        if d0.is_zero() {
            return None;
        }
        let mut out: Vec<BigInt> = Vec::with_capacity(m);
        for n in 0..m {
            let mut acc = self.num.coeff(n);
            for (i, o) in out.iter().enumerate() {
                acc -= self.den.coeff(n - i) * o;
            }
            let (qt, r) = acc.div_rem(&d0);
            if !r.is_zero() {
                // non-integral expansion; only integral ones are needed here
                return None;
            }
            out.push(qt);
        }
        Some(out)
    }
}

impl Default for RationalQFunction {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Display for RationalQFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == UniPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl Serialize for RationalQFunction {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let enc = |p: &UniPoly| -> Vec<serde_json::Number> {
            p.coeffs().iter().map(|c| c.to_string().parse().expect("integer literal")).collect()
        };
        let mut st = s.serialize_struct("RationalQFunction", 2)?;
        st.serialize_field("numerator", &enc(&self.num))?;
        st.serialize_field("denominator", &enc(&self.den))?;
        st.end()
    }
}

impl Add<&RationalQFunction> for &RationalQFunction {
    type Output = RationalQFunction;
    fn add(self, rhs: &RationalQFunction) -> RationalQFunction {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RationalQFunction::new(&self.num + &rhs.num, self.den.clone());
        }
        RationalQFunction::new(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Sub<&RationalQFunction> for &RationalQFunction {
    type Output = RationalQFunction;
    fn sub(self, rhs: &RationalQFunction) -> RationalQFunction {
        self + &(-rhs)
    }
}

impl Mul<&RationalQFunction> for &RationalQFunction {
    type Output = RationalQFunction;
    fn mul(self, rhs: &RationalQFunction) -> RationalQFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalQFunction::zero();
        }
        RationalQFunction::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div<&RationalQFunction> for &RationalQFunction {
    type Output = RationalQFunction;
    fn div(self, rhs: &RationalQFunction) -> RationalQFunction {
        assert!(!rhs.is_zero(), "division by zero");
        RationalQFunction::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Neg for &RationalQFunction {
    type Output = RationalQFunction;
    fn neg(self) -> RationalQFunction {
        RationalQFunction { num: -&self.num, den: self.den.clone() }
    }
}
