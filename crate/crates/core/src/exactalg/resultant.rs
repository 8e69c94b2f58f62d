//! Sylvester resultants, discriminants and Möbius substitution.
//!
//! Sign convention: `resultant(P, Q; x)` is the determinant of the Sylvester
//! matrix whose first `deg Q` rows hold the coefficients of `P` (highest degree
//! first) and whose last `deg P` rows hold those of `Q`. This equals
//! `lc(P)^deg Q * prod Q(r)` over the roots `r` of `P`.

use num_traits::One;

use super::{AlgError, MultiPoly, Var};

/// Coefficients of `p` in `v`, highest degree first.
fn dense_desc(p: &MultiPoly, v: Var) -> Vec<MultiPoly> {
    let mut c = p.coeffs(v);
    c.reverse();
    c
}

pub fn sylvester_matrix(p: &MultiPoly, q: &MultiPoly, v: Var) -> Vec<Vec<MultiPoly>> {
    let m = p.degree(v).unwrap_or(0) as usize;
    let n = q.degree(v).unwrap_or(0) as usize;
    let size = m + n;
    let pc = dense_desc(p, v);
    let qc = dense_desc(q, v);
    let mut rows = vec![vec![MultiPoly::zero(); size]; size];
    for i in 0..n {
        for (j, c) in pc.iter().enumerate() {
            rows[i][i + j] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in qc.iter().enumerate() {
            rows[n + i][i + j] = c.clone();
        }
    }
    rows
}

/// Determinant by fraction-free (Bareiss) elimination; every division is exact.
pub fn bareiss_determinant(mut m: Vec<Vec<MultiPoly>>) -> MultiPoly {
    let n = m.len();
    if n == 0 {
        return MultiPoly::one();
    }
    let mut negate = false;
    let mut prev = MultiPoly::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            // prefer the sparsest available pivot
            let pick = (k + 1..n).filter(|&r| !m[r][k].is_zero()).min_by_key(|&r| m[r][k].num_terms());
            match pick {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return MultiPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = if prev.is_one_poly() {
                    t
                } else {
                    t.exact_div(&prev).expect("Bareiss step divides exactly")
                };
            }
            m[i][k] = MultiPoly::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

impl MultiPoly {
    fn is_one_poly(&self) -> bool {
        self.is_constant() && self.constant_term().is_one()
    }
}

/// Resultant of `p` and `q` with respect to `v`, eliminating `v`.
pub fn sylvester_resultant(p: &MultiPoly, q: &MultiPoly, v: Var) -> Result<MultiPoly, AlgError> {
    if p.is_zero() || q.is_zero() {
        return Err(AlgError::ZeroPolynomial);
    }
    let m = p.degree(v).unwrap_or(0);
    let n = q.degree(v).unwrap_or(0);
    match (m, n) {
        (0, 0) => Ok(MultiPoly::one()),
        (0, _) => Ok(p.pow(n)),
        (_, 0) => Ok(q.pow(m)),
        _ => Ok(bareiss_determinant(sylvester_matrix(p, q, v))),
    }
}

/// Raw discriminant: `resultant(P, dP/dv; v)`, including the leading-coefficient factor.
pub fn discriminant(p: &MultiPoly, v: Var) -> Result<MultiPoly, AlgError> {
    match p.degree(v) {
        None => Err(AlgError::ZeroPolynomial),
        Some(0) => Err(AlgError::ZeroDegree(v)),
        Some(_) => sylvester_resultant(p, &p.derivative(v), v),
    }
}

/// Classical discriminant `(-1)^(n(n-1)/2) resultant(P, P') / lc(P)`; for a
/// quadratic `A R^2 + B R + C` this is `B^2 - 4AC`.
pub fn normalized_discriminant(p: &MultiPoly, v: Var) -> Result<MultiPoly, AlgError> {
    let raw = discriminant(p, v)?;
    let n = p.degree(v).unwrap_or(0) as u64;
    let lc = p.coeff(v, n as u32);
    let d = raw.exact_div(&lc).ok_or_else(|| AlgError::Internal("leading coefficient does not divide the resultant".into()))?;
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -d } else { d })
}

/// Coefficients `(alpha, beta, gamma, delta)` of `x -> (alpha x + beta) / (gamma x + delta)`.
#[derive(Debug, Clone)]
pub struct MobiusMap {
    pub alpha: MultiPoly,
    pub beta: MultiPoly,
    pub gamma: MultiPoly,
    pub delta: MultiPoly,
}

impl MobiusMap {
    pub fn new(alpha: MultiPoly, beta: MultiPoly, gamma: MultiPoly, delta: MultiPoly) -> Self {
        MobiusMap { alpha, beta, gamma, delta }
    }

    pub fn identity() -> Self {
        Self::new(MultiPoly::one(), MultiPoly::zero(), MultiPoly::zero(), MultiPoly::one())
    }

    /// `alpha * delta - beta * gamma`
    pub fn determinant(&self) -> MultiPoly {
        &(&self.alpha * &self.delta) - &(&self.beta * &self.gamma)
    }
}

/// `(gamma v + delta)^n P((alpha v + beta)/(gamma v + delta))` with `n = deg_v P`.
pub fn mobius_substitute(p: &MultiPoly, v: Var, map: &MobiusMap) -> Result<MultiPoly, AlgError> {
    if map.determinant().is_zero() {
        return Err(AlgError::DegenerateMap);
    }
    let n = match p.degree(v) {
        None => return Err(AlgError::ZeroPolynomial),
        Some(n) => n,
    };
    let x = MultiPoly::var(v);
    let num = &(&map.alpha * &x) + &map.beta;
    let den = &(&map.gamma * &x) + &map.delta;
    let coeffs = p.coeffs(v);
    // powers of the denominator, computed once
    let mut den_pows = Vec::with_capacity(n as usize + 1);
    den_pows.push(MultiPoly::one());
    for i in 1..=n as usize {
        den_pows.push(&den_pows[i - 1] * &den);
    }
    let mut out = MultiPoly::zero();
    let mut num_pow = MultiPoly::one();
    for (i, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            out = &out + &(&(c * &num_pow) * &den_pows[n as usize - i]);
        }
        num_pow = &num_pow * &num;
    }
    Ok(out)
}
