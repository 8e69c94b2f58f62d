//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::One;

use luka_core::bijections::{motzkin_number, verify_bijection, BijectionKind};
use luka_core::exactalg::{rat, rat_to_f64, tol_pow10, MultiPoly, Var};
use luka_core::genfun::series_r;
use luka_core::paths::{count, partition_polynomial, Ell, ModelParams};
use luka_core::phase::{
    ac_sweep, crit_polynomial, critical_point, discriminant_factorization_check, growth_ratio, zc_of_a, zplus, Branch,
};
use luka_core::qarea::{diagonal_identity_mismatch, identity_checks, series_r_q, swapped_identity_mismatch, Route};

const VALUE_TOL: f64 = 1e-10;
const CONTINUITY_TOL: f64 = 1e-10;
const GROWTH_REL_TOL: f64 = 0.15;

const CRITICAL_BUDGET: Duration = Duration::from_secs(1);
const CRIT_24_BUDGET: Duration = Duration::from_secs(30);
const FACTORIZATION_BUDGET: Duration = Duration::from_secs(60);
const BIJECTION_BUDGET: Duration = Duration::from_secs(120);
const IDENTITY_BUDGET: Duration = Duration::from_secs(30);

fn p(k: u32, l: u32) -> ModelParams {
    ModelParams::finite(k, l).unwrap()
}

fn inf(k: u32) -> ModelParams {
    ModelParams::unbounded(k)
}

fn tol() -> BigRational {
    tol_pow10(12)
}

/// `(k,l)` pairs used by the oracle and bijection suites.
fn model_set() -> Vec<ModelParams> {
    vec![p(0, 0), p(0, 1), p(1, 1), p(1, 2), p(2, 4), inf(0), inf(1)]
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn ok(detail: impl Into<String>) -> Outcome {
    Outcome { pass: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { pass: false, detail: detail.into() }
}

fn within_budget(out: Outcome, elapsed: Duration, budget: Duration) -> Outcome {
    if out.pass && elapsed > budget {
        return fail(format!("{} but took {elapsed:.1?} > {budget:?}", out.detail));
    }
    out
}

fn poly_a(coeffs: &[i64]) -> MultiPoly {
    MultiPoly::from_coeffs(Var::A, coeffs)
}

/// Equal up to a nonzero rational constant after primitive normalization.
fn same_up_to_constant(x: &MultiPoly, y: &MultiPoly) -> bool {
    match (x.primitive_normalize(), y.primitive_normalize()) {
        (Ok(a), Ok(b)) => a == b,
        _ => false,
    }
}

fn criterion_1() -> Outcome {
    let cases: [(ModelParams, f64, Option<f64>); 3] =
        [(p(1, 1), 2.0, Some(0.5)), (p(0, 1), 1.5, Some(1.0 / 3.0)), (inf(1), 3.0, None)];
    let mut details = Vec::new();
    for (params, a_c, z_c) in cases {
        let t = Instant::now();
        let cp = match critical_point(&params, &tol()) {
            Ok(cp) => cp,
            Err(e) => return fail(format!("{params}: {e}")),
        };
        let elapsed = t.elapsed();
        let da = (cp.a_c_f64() - a_c).abs();
        let dz = z_c.map_or(0.0, |z| (cp.z_c_f64() - z).abs());
        if da > VALUE_TOL || dz > VALUE_TOL {
            return fail(format!("{params}: a_c = {}, z_c = {} (errors {da:.1e}, {dz:.1e})", cp.a_c_f64(), cp.z_c_f64()));
        }
        if elapsed > CRITICAL_BUDGET {
            return fail(format!("{params}: took {elapsed:.1?}"));
        }
        details.push(format!("{params} a_c={} [{elapsed:.0?}]", cp.a_c_f64()));
    }
    ok(details.join(", "))
}

fn criterion_2() -> Outcome {
    // a^4 (2a - 3)^2 and 7a^5 - 113a^4 + 770a^3 - 2756a^2 + 5180a - 4112
    let crit01 = &poly_a(&[0, 0, 0, 0, 1]) * &poly_a(&[-3, 2]).pow(2);
    let crit24 = poly_a(&[-4112, 5180, -2756, 770, -113, 7]);

    let c01 = match crit_polynomial(&p(0, 1), &tol()) {
        Ok(c) => c,
        Err(e) => return fail(format!("(0,1): {e}")),
    };
    if !same_up_to_constant(&c01.discriminant_route, &crit01) {
        return fail(format!("(0,1) discriminant route is {}", c01.discriminant_route));
    }
    let t = Instant::now();
    let c24 = match crit_polynomial(&p(2, 4), &tol()) {
        Ok(c) => c,
        Err(e) => return fail(format!("(2,4): {e}")),
    };
    let elapsed = t.elapsed();
    if !same_up_to_constant(&c24.critical_factor, &crit24) || !same_up_to_constant(&c24.elimination_route, &crit24) {
        return fail(format!("(2,4) critical factor is {}", c24.critical_factor));
    }
    let extra = c24.discriminant_route.degree(Var::A).unwrap_or(0);
    within_budget(
        ok(format!(
            "(0,1) matches; (2,4) critical factor matches, a_c={:.10} (discriminant route degree {extra} carries extra factors) [{elapsed:.1?}]",
            c24.a_c.mid_f64()
        )),
        elapsed,
        CRIT_24_BUDGET,
    )
}

fn criterion_3() -> Outcome {
    let t = Instant::now();
    let mut ratios = Vec::new();
    for params in [p(0, 1), p(1, 1), p(1, 2), p(0, 2), p(2, 4)] {
        let r = match discriminant_factorization_check(&params) {
            Ok(r) => r,
            Err(e) => return fail(format!("{params}: {e}")),
        };
        let ratio = r.ratio.as_ref().map_or("not a polynomial".to_string(), |x| x.to_string());
        if !r.pass {
            return fail(format!("{params}: ratio {ratio}, expected const*a^{}", r.expected_exponent));
        }
        ratios.push(format!("{params}:{}*a^{}", r.constant, r.expected_exponent));
    }
    let elapsed = t.elapsed();
    within_budget(ok(format!("{} [{elapsed:.1?}]", ratios.join(" "))), elapsed, FACTORIZATION_BUDGET)
}

fn criterion_4() -> Outcome {
    for params in model_set() {
        let s = series_r(&params, 12);
        for n in 0..=12 {
            let z = partition_polynomial(&params, n, false).unwrap();
            if s.coeff(n) != &z {
                return fail(format!("{params} n={n}: series {} vs enumeration {z}", s.coeff(n)));
            }
        }
        let sq = series_r_q(&params, 10, Route::Iteration).unwrap();
        let sh = match series_r_q(&params, 10, Route::HRatio) {
            Ok(s) => s,
            Err(e) => return fail(format!("{params}: H-ratio route: {e}")),
        };
        for n in 0..=10 {
            let z = partition_polynomial(&params, n, true).unwrap();
            if sq.coeff(n) != &z {
                return fail(format!("{params} n={n}: q-series {} vs enumeration {z}", sq.coeff(n)));
            }
            if sh.coeff(n) != &z {
                return fail(format!("{params} n={n}: H-ratio route {} vs enumeration {z}", sh.coeff(n)));
            }
        }
    }
    ok(format!("{} models, contacts n<=12, contacts+area n<=10", model_set().len()))
}

fn criterion_5() -> Outcome {
    let t = Instant::now();
    let mut checked = 0usize;
    for params in model_set() {
        for n in 0..=10 {
            let r = verify_bijection(BijectionKind::Rise, &params, n).unwrap();
            if !r.pass {
                return fail(format!("rise {params} n={n}: {:?}", r.counterexample));
            }
            checked += r.source_count;
        }
    }
    for n in 0..=10 {
        for (kind, params) in [(BijectionKind::Motzkin, inf(1)), (BijectionKind::Area, inf(0))] {
            let r = verify_bijection(kind, &params, n).unwrap();
            if !r.pass {
                return fail(format!("{kind} n={n}: {:?}", r.counterexample));
            }
            checked += r.source_count;
        }
    }
    for n in 0..=12 {
        let total = count(&inf(1), n).unwrap() + count(&inf(1), n + 1).unwrap();
        if total as u128 != motzkin_number(n) {
            return fail(format!("|L_{n}| + |L_{}| = {total} != M_{n} = {}", n + 1, motzkin_number(n)));
        }
    }
    let elapsed = t.elapsed();
    within_budget(
        ok(format!("{checked} sources mapped, Motzkin cardinalities n<=12 [{elapsed:.1?}]")),
        elapsed,
        BIJECTION_BUDGET,
    )
}

fn criterion_6() -> Outcome {
    let t = Instant::now();
    let r = identity_checks(12);
    let elapsed = t.elapsed();
    if let Some(c) = r.checks.iter().find(|c| !c.pass) {
        return fail(format!("{}: {:?}", c.name, c.detail));
    }
    // the substitution only holds in one direction; the other breaks at the z term
    if diagonal_identity_mismatch(12).is_some() || swapped_identity_mismatch(12) != Some(1) {
        return fail("identity orientation check");
    }
    within_budget(
        ok(format!("{} exact checks through z^12; swapped orientation fails at z^1 [{elapsed:.1?}]", r.checks.len())),
        elapsed,
        IDENTITY_BUDGET,
    )
}

fn phase_shape(params: &ModelParams) -> Result<String, String> {
    let tol = tol();
    let cp = critical_point(params, &tol).map_err(|e| e.to_string())?;
    let z_c = cp.z_c_f64();
    let a_lo = cp.a_c.lo.clone();
    // below a_c: flat
    for i in 0..=20 {
        let a = BigRational::one() + (&a_lo - BigRational::one()) * rat(i, 20);
        let r = zc_of_a(params, &a, &tol).map_err(|e| e.to_string())?;
        if r.branch != Branch::Desorbed || (r.mid_f64() - z_c).abs() > VALUE_TOL {
            return Err(format!("{params}: z_c({}) = {} not flat", rat_to_f64(&a), r.mid_f64()));
        }
    }
    // above a_c: strictly decreasing
    let mut prev = z_c;
    for i in 1..=20 {
        let a = &cp.a_c.hi + rat(i, 4);
        let r = zc_of_a(params, &a, &tol).map_err(|e| e.to_string())?;
        if r.branch != Branch::Adsorbed || r.mid_f64() >= prev {
            return Err(format!("{params}: z_c({}) = {} not below {prev}", rat_to_f64(&a), r.mid_f64()));
        }
        prev = r.mid_f64();
    }
    // the adsorbed branch meets the flat one at a_c
    let jump = (zplus(params, &cp.a_c.midpoint(), &tol).map_err(|e| e.to_string())?.mid_f64() - z_c).abs();
    if jump > CONTINUITY_TOL {
        return Err(format!("{params}: jump {jump:.1e} at a_c"));
    }
    Ok(format!("{params} jump={jump:.0e}"))
}

fn criterion_7() -> Outcome {
    let mut details = Vec::new();
    for params in [p(0, 1), p(1, 1), p(1, 2), p(2, 4), inf(1)] {
        match phase_shape(&params) {
            Ok(d) => details.push(d),
            Err(e) => return fail(e),
        }
    }
    let mut ells: Vec<Ell> = (1..=8).map(Ell::Finite).collect();
    ells.push(Ell::Infinity);
    let rows = match ac_sweep(1, &ells, &tol()) {
        Ok(r) => r,
        Err(e) => return fail(e.to_string()),
    };
    let vals: Vec<f64> = rows.iter().map(|r| r.a_c.mid_f64()).collect();
    let finite = &vals[..8];
    if finite.iter().any(|&a| !(2.0 - VALUE_TOL..=3.0 + VALUE_TOL).contains(&a)) {
        return fail(format!("a_c(1,l) outside [2,3]: {finite:?}"));
    }
    if (finite[0] - 2.0).abs() > VALUE_TOL || (vals[8] - 3.0).abs() > VALUE_TOL {
        return fail(format!("endpoints a_c(1,1) = {}, a_c(1,inf) = {}", finite[0], vals[8]));
    }
    // reported, not asserted: how the finite sweep approaches the l = inf value
    let sweep: Vec<String> = finite.iter().map(|a| format!("{a:.4}")).collect();
    details.push(format!("a_c(1,1..8) = [{}], a_c(1,inf) = {}, gap at l=8 {:.3}", sweep.join(" "), vals[8], 3.0 - finite[7]));
    ok(details.join(", "))
}

fn criterion_8() -> Outcome {
    let mut details = Vec::new();
    for params in [p(0, 1), p(1, 2), p(0, 2), inf(0), inf(1), p(2, 4)] {
        for a in [1i64, 4] {
            let ratio = growth_ratio(&params, a, 12);
            let z = zc_of_a(&params, &rat(a, 1), &tol()).unwrap().mid_f64();
            let rel = (ratio * z - 1.0).abs();
            if rel > GROWTH_REL_TOL || ratio.is_nan() {
                return fail(format!("{params} a={a}: Z_13/Z_12 = {ratio}, 1/z_c = {}", 1.0 / z));
            }
            if a == 1 {
                details.push(format!("{params}:{:.0}%", rel * 100.0));
            }
        }
    }
    ok(format!("growth ratio at n=12 within 15% of 1/z_c (a=1: {})", details.join(" ")))
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, fn() -> Outcome); 8] = [
        (1, "critical points", criterion_1),
        (2, "critical polynomials", criterion_2),
        (3, "discriminant factorization", criterion_3),
        (4, "series vs enumeration", criterion_4),
        (5, "bijections", criterion_5),
        (6, "q-series identities", criterion_6),
        (7, "phase curve shape", criterion_7),
        (8, "growth-ratio smoke test", criterion_8),
    ];
    let mut failures = 0;
    for (n, name, f) in criteria {
        let t = Instant::now();
        let out = f();
        let status = if out.pass { "PASS" } else { "FAIL" };
        println!("criterion {n} {status}  {name}: {} ({:.1?})", out.detail, t.elapsed());
        failures += usize::from(!out.pass);
    }
    if failures == 0 {
        println!("all 8 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("{failures} criteria failed");
        ExitCode::FAILURE
    }
}
