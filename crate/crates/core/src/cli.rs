//! The `luka` command line.
//!
//! Exit status: `0` on success, `1` when a verification fails or a computation
//! errors out, `2` on a usage error.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::Serialize;
use serde_json::json;

use crate::bijections::{
    area_luka_to_dyck, luka_to_rise_dyck, motzkin_map, verify_bijection, BijectionKind,
};
use crate::exactalg::{rat_from_f64, rat_to_f64};
use crate::genfun::{series_l, series_r, SeriesInZ};
use crate::paths::{
    enumerate_with_cap, partition_polynomial_with_cap, weight_polynomial_json, Ell, ModelParams, DEFAULT_PATH_CAP,
};
use crate::phase::{
    a_grid, ac_sweep, crit_polynomial, critical_point, discriminant_factorization_check, fmt12, phase_curve,
};
use crate::qarea::{c_table, identity_checks, series_l_q, series_r_q, Route};

#[derive(Debug, Parser)]
#[command(name = "luka", version, about = "Exact tools for (k,l)-restricted Lukasiewicz adsorption models")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format; each subcommand has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Args)]
pub struct ModelArgs {
    /// Smallest allowed jump.
    #[arg(long)]
    pub k: u32,
    /// Largest allowed jump, or `inf`.
    #[arg(long = "l", value_parser = parse_ell)]
    pub l: Ell,
}

#[derive(Debug, Args)]
pub struct TolArgs {
    /// Width of the certified root enclosures.
    #[arg(long, default_value_t = 1e-12, value_parser = parse_tol)]
    pub tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Rise,
    Motzkin,
    Area,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum QWhat {
    /// The coefficients `c_n(q)` of `H`.
    CTable,
    L,
    R,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RouteArg {
    Iteration,
    HRatio,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List or count the paths of length n.
    Enumerate {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long)]
        n: usize,
        /// Print only the number of paths.
        #[arg(long)]
        count: bool,
        #[arg(long, default_value_t = DEFAULT_PATH_CAP)]
        cap: usize,
    },
    /// Partition functions Z_n(a) (or Z_n(a,q) with --area) from the generating function.
    Series {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 10)]
        order: usize,
        /// Weight paths by area as well.
        #[arg(long)]
        area: bool,
        /// Print L instead of R.
        #[arg(long)]
        l_series: bool,
        /// Compare every coefficient with brute-force enumeration.
        #[arg(long)]
        verify: bool,
    },
    /// Critical point u_c, z_c, a_c.
    Critical {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// z_c(a) and kappa(a) = -log z_c(a) on a grid of contact weights.
    Phase {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 10.0)]
        a_max: f64,
        #[arg(long, default_value_t = 91)]
        samples: usize,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// a_c(k, l) for l from max(k,1) up to --l-max, plus l = inf.
    AcSweep {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 8)]
        l_max: u32,
        /// Leave out the l = inf row.
        #[arg(long)]
        no_inf: bool,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// The critical polynomial in a and its root a_c.
    CritPoly {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        tol: TolArgs,
    },
    /// Check disc(P1) = c a^(l(l+1)) disc(P2) exactly.
    DiscriminantCheck {
        #[command(flatten)]
        model: ModelArgs,
    },
    /// Apply or exhaustively verify one of the bijections.
    Bijection {
        #[arg(long, value_enum)]
        which: Which,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long = "l", value_parser = parse_ell)]
        l: Option<Ell>,
        #[arg(long)]
        n: usize,
        /// Run the exhaustive check instead of listing the map.
        #[arg(long)]
        verify: bool,
    },
    /// Area-weighted series: c_n(q), L(z;q) or R(z;a,q).
    Qseries {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 10)]
        order: usize,
        #[arg(long, value_enum, default_value_t = QWhat::CTable)]
        what: QWhat,
        #[arg(long, value_enum, default_value_t = RouteArg::Iteration)]
        route: RouteArg,
    },
    /// Exact q-series identities.
    IdentityCheck {
        #[arg(long, default_value_t = 12)]
        order: usize,
    },
}

fn parse_ell(s: &str) -> Result<Ell, String> {
    s.parse().map_err(|e: crate::paths::PathError| e.to_string())
}

fn parse_tol(s: &str) -> Result<f64, String> {
    let t: f64 = s.parse().map_err(|_| format!("cannot parse tolerance {s:?}"))?;
    if !(t > 0.0 && t.is_finite()) {
        return Err(format!("tolerance must be positive, got {s}"));
    }
    Ok(t)
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Compute(String),
}

struct Output {
    text: String,
    /// A verification was run and failed.
    failed: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, failed: false }
    }
}

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

fn compute(e: impl std::fmt::Display) -> Failure {
    Failure::Compute(e.to_string())
}

fn model(m: &ModelArgs) -> Result<ModelParams, Failure> {
    ModelParams::new(m.k, m.l).map_err(usage)
}

fn tol_rat(t: &TolArgs) -> BigRational {
    rat_from_f64(t.tol).expect("positive finite tolerance")
}

fn to_json<T: Serialize>(x: &T) -> String {
    let mut s = serde_json::to_string_pretty(x).expect("serializable");
    s.push('\n');
    s
}

/// Parse `args` (including the program name) and run; returns the exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(out) => {
            let written = match &cli.out {
                Some(p) => std::fs::write(p, &out.text).map_err(|e| format!("cannot write {}: {e}", p.display())),
                None => std::io::stdout().write_all(out.text.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                eprintln!("error: {e}");
                return 1;
            }
            i32::from(out.failed)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("usage error: {m}");
            2
        }
        Err(Failure::Compute(m)) => {
            eprintln!("error: {m}");
            1
        }
    }
}

fn execute(cli: &Cli) -> Result<Output, Failure> {
    let fmt = |default: Format| cli.format.unwrap_or(default);
    match &cli.command {
        Command::Enumerate { model: m, n, count, cap } => {
            let p = model(m)?;
            let paths = enumerate_with_cap(&p, *n, *cap).map_err(compute)?;
            cmd_enumerate(&paths, *count, fmt(Format::Text))
        }
        Command::Series { model: m, order, area, l_series, verify } => {
            cmd_series(&model(m)?, *order, *area, *l_series, *verify, fmt(Format::Text))
        }
        Command::Critical { model: m, tol } => cmd_critical(&model(m)?, &tol_rat(tol), fmt(Format::Text)),
        Command::Phase { model: m, a_max, samples, tol } => {
            let p = model(m)?;
            if !(a_max.is_finite() && *a_max >= 1.0) {
                return Err(usage(format!("--a-max must be at least 1, got {a_max}")));
            }
            let a_max = rat_from_f64(*a_max).ok_or_else(|| usage("--a-max"))?;
            cmd_phase(&p, &a_grid(&a_max, *samples), &tol_rat(tol), fmt(Format::Csv))
        }
        Command::AcSweep { k, l_max, no_inf, tol } => {
            let mut ells: Vec<Ell> = ((*k).max(1)..=*l_max).map(Ell::Finite).collect();
            if !no_inf {
                ells.push(Ell::Infinity);
            }
            let rows = ac_sweep(*k, &ells, &tol_rat(tol)).map_err(compute)?;
            let data: Vec<(String, f64)> = rows.iter().map(|r| (r.ell.to_string(), round12(r.a_c.mid_f64()))).collect();
            Ok(Output::ok(match fmt(Format::Csv) {
                Format::Json => to_json(&data.iter().map(|(l, a)| json!({"ell": l, "a_c": a})).collect::<Vec<_>>()),
                _ => {
                    let mut s = String::from("ell,a_c\n");
                    for (l, a) in &data {
                        let _ = writeln!(s, "{l},{}", fmt12(*a));
                    }
                    s
                }
            }))
        }
        Command::CritPoly { model: m, tol } => {
            let c = crit_polynomial(&model(m)?, &tol_rat(tol)).map_err(compute)?;
            Ok(Output::ok(match fmt(Format::Text) {
                Format::Json => to_json(&c),
                _ => format!(
                    "params              {}\ndiscriminant route  {}\nelimination route   {}\ncritical factor     {}\na_c                 {}\n",
                    c.params,
                    c.discriminant_route,
                    c.elimination_route,
                    c.critical_factor,
                    fmt12(c.a_c.mid_f64())
                ),
            }))
        }
        Command::DiscriminantCheck { model: m } => {
            let r = discriminant_factorization_check(&model(m)?).map_err(compute)?;
            let text = match fmt(Format::Text) {
                Format::Json => to_json(&r),
                _ => format!(
                    "params    {}\nratio     {}\nexpected  a^{}\n{}\n",
                    r.params,
                    r.ratio.as_ref().map(|x| x.to_string()).unwrap_or_else(|| "not a polynomial".into()),
                    r.expected_exponent,
                    if r.pass { "pass" } else { "fail" }
                ),
            };
            Ok(Output { text, failed: !r.pass })
        }
        Command::Bijection { which, k, l, n, verify } => cmd_bijection(*which, *k, *l, *n, *verify, fmt(Format::Text)),
        Command::Qseries { model: m, order, what, route } => cmd_qseries(&model(m)?, *order, *what, *route, fmt(Format::Text)),
        Command::IdentityCheck { order } => {
            let r = identity_checks(*order);
            let text = match fmt(Format::Text) {
                Format::Json => to_json(&r),
                _ => {
                    let mut s = String::new();
                    for c in &r.checks {
                        let _ = write!(s, "{}  {}", if c.pass { "pass" } else { "FAIL" }, c.name);
                        if let Some(d) = &c.detail {
                            let _ = write!(s, "  ({d})");
                        }
                        s.push('\n');
                    }
                    s
                }
            };
            Ok(Output { text, failed: !r.pass })
        }
    }
}

fn round12(x: f64) -> f64 {
    fmt12(x).parse().unwrap_or(x)
}

fn cmd_enumerate(paths: &[crate::paths::LukaPath], count: bool, format: Format) -> Result<Output, Failure> {
    if count {
        return Ok(Output::ok(match format {
            Format::Json => to_json(&json!({ "count": paths.len() })),
            _ => format!("{}\n", paths.len()),
        }));
    }
    Ok(Output::ok(match format {
        Format::Json => to_json(
            &paths
                .iter()
                .map(|p| {
                    let w = p.weights();
                    json!({"steps": p, "contacts": w.contacts, "area": w.area})
                })
                .collect::<Vec<_>>(),
        ),
        Format::Csv => {
            let mut s = String::from("path,contacts,area\n");
            for p in paths {
                let w = p.weights();
                let steps: Vec<String> = p.steps().iter().map(|x| x.to_string()).collect();
                let _ = writeln!(s, "{},{},{}", steps.join(" "), w.contacts, w.area);
            }
            s
        }
        Format::Text => paths.iter().map(|p| format!("{p}\n")).collect(),
    }))
}

fn series_output(s: &SeriesInZ, format: Format) -> String {
    match format {
        Format::Json => to_json(
            &s.coeffs()
                .iter()
                .enumerate()
                .map(|(n, c)| json!({"n": n, "weights": weight_polynomial_json(c)}))
                .collect::<Vec<_>>(),
        ),
        Format::Csv => {
            let mut out = String::from("n,coefficient\n");
            for (n, c) in s.coeffs().iter().enumerate() {
                let _ = writeln!(out, "{n},{c}");
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for (n, c) in s.coeffs().iter().enumerate() {
                let _ = writeln!(out, "{n:>3}  {c}");
            }
            out
        }
    }
}

fn cmd_series(p: &ModelParams, order: usize, area: bool, l_series: bool, verify: bool, format: Format) -> Result<Output, Failure> {
    let s = match (area, l_series) {
        (false, false) => series_r(p, order),
        (false, true) => series_l(p, order),
        (true, false) => series_r_q(p, order, Route::Iteration).map_err(compute)?,
        (true, true) => series_l_q(p, order),
    };
    let mut text = series_output(&s, format);
    let mut failed = false;
    if verify {
        if l_series {
            return Err(usage("--verify compares R with enumeration; drop --l-series"));
        }
        let bad = (0..=order).find(|&n| {
            partition_polynomial_with_cap(p, n, area, DEFAULT_PATH_CAP).map_or(true, |z| &z != s.coeff(n))
        });
        failed = bad.is_some();
        // keep machine-readable formats clean; the status is in the exit code
        if format == Format::Text {
            let _ = match bad {
                None => writeln!(text, "enumeration check through n = {order}: pass"),
                Some(n) => writeln!(text, "enumeration check: FAIL at n = {n}"),
            };
        }
    }
    Ok(Output { text, failed })
}

fn cmd_critical(p: &ModelParams, tol: &BigRational, format: Format) -> Result<Output, Failure> {
    let cp = critical_point(p, tol).map_err(compute)?;
    Ok(Output::ok(match format {
        Format::Json => to_json(&json!({
            "params": p.to_string(),
            "u_c": round12(cp.u_c_f64()),
            "z_c": round12(cp.z_c_f64()),
            "a_c": round12(cp.a_c_f64()),
            "exact": cp.is_exact(),
            "enclosures": cp,
        })),
        Format::Csv => format!(
            "k,l,u_c,z_c,a_c\n{},{},{},{},{}\n",
            p.k(),
            p.ell(),
            fmt12(cp.u_c_f64()),
            fmt12(cp.z_c_f64()),
            fmt12(cp.a_c_f64())
        ),
        Format::Text => {
            let line = |name: &str, iv: &crate::exactalg::Interval| {
                if iv.is_point() {
                    format!("{name} = {} (exact: {})\n", fmt12(iv.mid_f64()), iv.lo)
                } else {
                    format!("{name} = {} (+- {:.1e})\n", fmt12(iv.mid_f64()), rat_to_f64(&iv.width()) / 2.0)
                }
            };
            format!(
                "params {p}\n{}{}{}{}",
                line("u_c", &cp.u_c.interval),
                line("z_c", &cp.z_c),
                line("a_c", &cp.a_c),
                line("L_c", &cp.l_c)
            )
        }
    }))
}

fn cmd_phase(p: &ModelParams, grid: &[BigRational], tol: &BigRational, format: Format) -> Result<Output, Failure> {
    let curve = phase_curve(p, grid, tol).map_err(compute)?;
    let rows: Vec<(f64, f64, f64)> =
        curve.points.iter().map(|pt| (round12(rat_to_f64(&pt.a)), round12(pt.z_c), round12(pt.kappa))).collect();
    Ok(Output::ok(match format {
        Format::Json => to_json(&json!({
            "params": p.to_string(),
            "a_c": curve.a_c.as_ref().map(|iv| round12(iv.mid_f64())),
            "rows": rows.iter().map(|(a, z, k)| json!({"a": a, "z_c": z, "kappa": k})).collect::<Vec<_>>(),
        })),
        _ => {
            let mut s = String::from("a,z_c,kappa\n");
            for (a, z, k) in &rows {
                let _ = writeln!(s, "{},{},{}", fmt12(*a), fmt12(*z), fmt12(*k));
            }
            s
        }
    }))
}

fn cmd_bijection(which: Which, k: Option<u32>, l: Option<Ell>, n: usize, verify: bool, format: Format) -> Result<Output, Failure> {
    let (kind, default) = match which {
        Which::Rise => (BijectionKind::Rise, None),
        Which::Motzkin => (BijectionKind::Motzkin, Some(ModelParams::unbounded(1))),
        Which::Area => (BijectionKind::Area, Some(ModelParams::unbounded(0))),
    };
    let p = match (k, l, default) {
        (Some(k), Some(l), _) => ModelParams::new(k, l).map_err(usage)?,
        (None, None, Some(d)) => d,
        _ => return Err(usage("--k and --l are required for this bijection")),
    };
    if verify {
        let r = verify_bijection(kind, &p, n).map_err(|e| match e {
            crate::bijections::BijectionError::WrongModel(m) => usage(m),
            e => compute(e),
        })?;
        let text = match format {
            Format::Json => to_json(&r),
            _ => {
                let mut s = format!(
                    "{} {} n={}: {} sources, {} targets\n",
                    r.kind, r.params, r.n, r.source_count, r.target_count
                );
                match &r.counterexample {
                    None => s.push_str("pass\n"),
                    Some(c) => {
                        let _ = writeln!(s, "fail: {c}");
                    }
                }
                s
            }
        };
        return Ok(Output { text, failed: !r.pass });
    }
    let mut sources = enumerate_with_cap(&p, n, DEFAULT_PATH_CAP).map_err(compute)?;
    if kind == BijectionKind::Motzkin {
        sources.extend(enumerate_with_cap(&p, n + 1, DEFAULT_PATH_CAP).map_err(compute)?);
    }
    let mut pairs = Vec::with_capacity(sources.len());
    for l in &sources {
        let image = match kind {
            BijectionKind::Rise => luka_to_rise_dyck(l).to_string(),
            BijectionKind::Motzkin => motzkin_map(l, &p, n).map_err(usage)?.to_string(),
            BijectionKind::Area => area_luka_to_dyck(l, &p).map_err(usage)?.to_string(),
        };
        pairs.push((l.to_string(), image));
    }
    Ok(Output::ok(match format {
        Format::Json => to_json(&pairs.iter().map(|(s, t)| json!({"source": s, "image": t})).collect::<Vec<_>>()),
        Format::Csv => {
            let mut s = String::from("source,image\n");
            for (a, b) in &pairs {
                let _ = writeln!(s, "\"{a}\",{b}");
            }
            s
        }
        Format::Text => pairs.iter().map(|(a, b)| format!("{a} -> {b}\n")).collect(),
    }))
}

fn cmd_qseries(p: &ModelParams, order: usize, what: QWhat, route: RouteArg, format: Format) -> Result<Output, Failure> {
    match what {
        QWhat::CTable => {
            let t = c_table(p, order);
            Ok(Output::ok(match format {
                Format::Json => to_json(&t),
                Format::Csv => {
                    let mut s = String::from("n,c_n\n");
                    for (n, c) in t.coeffs.iter().enumerate() {
                        let _ = writeln!(s, "{n},{c}");
                    }
                    s
                }
                Format::Text => {
                    let mut s = String::new();
                    for (n, c) in t.coeffs.iter().enumerate() {
                        let _ = writeln!(s, "{n:>3}  {c}");
                    }
                    s
                }
            }))
        }
        QWhat::L => Ok(Output::ok(series_output(&series_l_q(p, order), format))),
        QWhat::R => {
            let route = match route {
                RouteArg::Iteration => Route::Iteration,
                RouteArg::HRatio => Route::HRatio,
            };
            let s = series_r_q(p, order, route).map_err(compute)?;
            Ok(Output::ok(series_output(&s, format)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<Cli, clap::Error> {
        Cli::try_parse_from(std::iter::once("luka").chain(args.iter().copied()))
    }

    #[test]
    fn ell_flag_accepts_inf() {
        let cli = parse(&["critical", "--k", "1", "--l", "inf"]).unwrap();
        match cli.command {
            Command::Critical { model, tol } => {
                assert_eq!(model.l, Ell::Infinity);
                assert_eq!(tol.tol, 1e-12);
            }
            c => panic!("{c:?}"),
        }
    }

    #[test]
    fn bad_flags_are_usage_errors() {
        assert!(parse(&["critical", "--k", "1", "--l", "x"]).is_err());
        assert!(parse(&["critical", "--k", "1", "--l", "2", "--tol", "0"]).is_err());
        assert_eq!(run(["luka", "critical", "--k", "3", "--l", "1"]), 2);
        assert_eq!(run(["luka", "frobnicate"]), 2);
    }

    #[test]
    fn csv_and_json_agree() {
        let p = ModelParams::finite(1, 2).unwrap();
        let tol = rat_from_f64(1e-12).unwrap();
        let grid = a_grid(&BigRational::from_integer(4.into()), 7);
        let csv = cmd_phase(&p, &grid, &tol, Format::Csv).unwrap().text;
        let js: serde_json::Value = serde_json::from_str(&cmd_phase(&p, &grid, &tol, Format::Json).unwrap().text).unwrap();
        let rows = js["rows"].as_array().unwrap();
        for (line, row) in csv.lines().skip(1).zip(rows) {
            let f: Vec<f64> = line.split(',').map(|x| x.parse().unwrap()).collect();
            assert_eq!(f, vec![row["a"].as_f64().unwrap(), row["z_c"].as_f64().unwrap(), row["kappa"].as_f64().unwrap()]);
        }
        assert_eq!(csv.lines().count(), rows.len() + 1);
    }
}
