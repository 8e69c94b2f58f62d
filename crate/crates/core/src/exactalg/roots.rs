//! Certified real root isolation by exact rational bisection.
//!
//! Isolation uses Descartes' rule of signs on subintervals (Vincent–Collins–
//! Akritas style bisection) on the square-free part; refinement bisects on the
//! sign of the exact polynomial. No floating point enters a decision.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::{AlgError, MultiPoly, UniPoly, Var};

/// Closed rational interval `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn point(x: BigRational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))
    }

    pub fn mid_f64(&self) -> f64 {
        rat_to_f64(&self.midpoint())
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_f64(&self, x: f64, slack: f64) -> bool {
        rat_to_f64(&self.lo) - slack <= x && x <= rat_to_f64(&self.hi) + slack
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }
}

impl Serialize for Interval {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Interval", 3)?;
        st.serialize_field("lo", &self.lo.to_string())?;
        st.serialize_field("hi", &self.hi.to_string())?;
        st.serialize_field("mid", &self.mid_f64())?;
        st.end()
    }
}

pub fn rat_to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Exact rational for a finite float (e.g. a tolerance given on the command line).
pub fn rat_from_f64(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// A certified enclosure of a single real root of a univariate polynomial.
#[derive(Debug, Clone, Serialize)]
pub struct RootEnclosure {
    #[serde(serialize_with = "ser_display")]
    pub poly: MultiPoly,
    #[serde(serialize_with = "ser_display")]
    pub var: Var,
    pub interval: Interval,
    /// The root is exactly `interval.lo == interval.hi`.
    pub exact: bool,
}

fn ser_display<T: std::fmt::Display, S: serde::Serializer>(x: &T, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

impl RootEnclosure {
    pub fn midpoint(&self) -> BigRational {
        self.interval.midpoint()
    }

    pub fn mid_f64(&self) -> f64 {
        self.interval.mid_f64()
    }

    pub fn width(&self) -> BigRational {
        self.interval.width()
    }

    /// Re-check the certificate with exact arithmetic.
    pub fn verify(&self) -> bool {
        let Ok(p) = self.poly.to_unipoly(self.var) else {
            return false;
        };
        let p = p.squarefree_part();
        if self.exact {
            return self.interval.is_point() && p.sign_at(&self.interval.lo) == 0;
        }
        let s_lo = p.sign_at(&self.interval.lo);
        let s_hi = p.sign_at(&self.interval.hi);
        s_lo * s_hi < 0
    }
}

/// Disjoint isolating intervals for every root in the open interval `(lo, hi)`,
/// sorted ascending. Each interval is either an exact point or an open interval
/// with a sign change of the square-free part at its endpoints.
pub fn isolate_roots_in(p: &UniPoly, lo: &BigRational, hi: &BigRational) -> Vec<Interval> {
    let sf = p.squarefree_part();
    if sf.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut stack = vec![(lo.clone(), hi.clone())];
    while let Some((a, b)) = stack.pop() {
        match sf.descartes_interval(&a, &b) {
            0 => {}
            1 => out.push(Interval::new(a, b)),
            _ => {
                let m = (&a + &b) / BigRational::from_integer(BigInt::from(2));
                if sf.sign_at(&m) == 0 {
                    out.push(Interval::point(m.clone()));
                }
                stack.push((a, m.clone()));
                stack.push((m, b));
            }
        }
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    out.dedup();
    out
}

/// Bisect an isolating interval of `p` down to width `<= tol`.
pub fn refine(p: &UniPoly, iv: &Interval, tol: &BigRational) -> (Interval, bool) {
    if iv.is_point() {
        return (iv.clone(), true);
    }
    let sf = p.squarefree_part();
    let mut lo = iv.lo.clone();
    let mut hi = iv.hi.clone();
    let two = BigRational::from_integer(BigInt::from(2));
    // an endpoint may itself be a (different) root: shrink until both ends are nonzero
    while sf.sign_at(&lo) == 0 || sf.sign_at(&hi) == 0 {
        let m = (&lo + &hi) / &two;
        if sf.sign_at(&m) == 0 {
            return (Interval::point(m), true);
        }
        if sf.descartes_interval(&lo, &m) == 1 {
            hi = m;
        } else {
            lo = m;
        }
    }
    let s_lo = sf.sign_at(&lo);
    while &hi - &lo > *tol {
        let m = (&lo + &hi) / &two;
        let s = sf.sign_at(&m);
        if s == 0 {
            return (Interval::point(m), true);
        }
        if s == s_lo {
            lo = m;
        } else {
            hi = m;
        }
    }
    (Interval::new(lo, hi), false)
}

fn enclosure(poly: &MultiPoly, var: Var, p: &UniPoly, iv: &Interval, tol: &BigRational) -> RootEnclosure {
    let (interval, exact) = refine(p, iv, tol);
    RootEnclosure { poly: poly.clone(), var, interval, exact }
}

fn univariate(p: &MultiPoly) -> Result<(Var, UniPoly), AlgError> {
    let vars = p.vars();
    match vars.as_slice() {
        [v] => Ok((*v, p.to_unipoly(*v)?)),
        [] => Err(AlgError::NoPositiveRoot),
        _ => Err(AlgError::VariableMismatch(format!("expected a univariate polynomial, got {p}"))),
    }
}

/// Enclosure of the smallest positive root of `p`.
///
/// With `certify_unique`, Descartes' rule must show exactly one sign change in
/// the coefficients, which proves there is exactly one positive root.
pub fn isolate_positive_root(p: &MultiPoly, tol: &BigRational, certify_unique: bool) -> Result<RootEnclosure, AlgError> {
    let (var, up) = univariate(p)?;
    if certify_unique {
        let changes = up.squarefree_part().sign_changes();
        if changes == 0 {
            return Err(AlgError::NoPositiveRoot);
        }
        if changes > 1 {
            return Err(AlgError::MultipleSignChanges(changes));
        }
    }
    let bound = BigRational::from_integer(up.root_bound());
    let roots = isolate_roots_in(&up, &BigRational::zero(), &bound);
    let first = roots.first().ok_or(AlgError::NoPositiveRoot)?;
    Ok(enclosure(p, var, &up, first, tol))
}

/// Enclosure of the unique root of `p` in the open interval `(lo, hi)`.
///
/// Uniqueness is certified by Descartes' rule on the interval: exactly one sign change.
pub fn isolate_root_in(
    p: &MultiPoly,
    lo: &BigRational,
    hi: &BigRational,
    tol: &BigRational,
) -> Result<RootEnclosure, AlgError> {
    let (var, up) = univariate(p)?;
    let sf = up.squarefree_part();
    match sf.descartes_interval(lo, hi) {
        0 => Err(AlgError::NoPositiveRoot),
        1 => Ok(enclosure(p, var, &up, &Interval::new(lo.clone(), hi.clone()), tol)),
        n => Err(AlgError::MultipleSignChanges(n)),
    }
}

/// Enclosures of all positive real roots of `p`, ascending.
pub fn positive_roots(p: &MultiPoly, tol: &BigRational) -> Result<Vec<RootEnclosure>, AlgError> {
    let (var, up) = univariate(p)?;
    let bound = BigRational::from_integer(up.root_bound());
    Ok(isolate_roots_in(&up, &BigRational::zero(), &bound)
        .iter()
        .map(|iv| enclosure(p, var, &up, iv, tol))
        .collect())
}

/// `10^-digits` as an exact rational.
pub fn tol_pow10(digits: u32) -> BigRational {
    BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(10), digits as usize))
}
