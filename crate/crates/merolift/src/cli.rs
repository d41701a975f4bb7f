//! Command-line front end: argument types, dispatch, exit codes and the
//! `verify` suites.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::cx::parse_complex;
use crate::error::{Error, Result};
use crate::geometry::{aw_map, cosh_dist, moebius, Mat2R, Mat2Z, UhpPoint};
use crate::lift::{grid_eval, write_csv, Evaluator, Grid, GridRow, LiftSpec, Quantity};
use crate::pairing::{
    coincident_pole_ct, lift_orbits, oracle_pairing, pairing_with_orbits, regularized_pairing, residue_at_pole,
    residue_contour, OracleParams, PairingResult,
};
use crate::qforms::{automorph_order, class_representatives, ClassData, QForm};
use crate::specfun::{
    b_m_closed, b_m_quadrature, b_m_real, gauss_hypergeometric, green_kernel, incomplete_beta, legendre_q,
    legendre_tilde_p, s_poly,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_SINGULAR: i32 = 3;
pub const EXIT_DISAGREE: i32 = 4;

#[derive(Parser, Debug)]
#[command(name = "merolift", version, about = "Meromorphic modular forms from quadratic forms, their theta lifts and pairings")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Γ₀(N)-classes of forms of discriminant D with B ≡ β (mod 2N).
    Enumerate(EnumerateArgs),
    /// Evaluate a lift quantity at a point or on a grid.
    Eval(EvalArgs),
    /// Regularized pairing of g = f_{m+1,β,D} with the lift of (β', D').
    Pair(PairArgs),
    /// Run a property suite and report pass/fail.
    Verify(VerifyArgs),
}

#[derive(Args, Debug, Clone)]
pub struct Output {
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    #[arg(long = "N", default_value_t = 1)]
    pub n: i64,
    #[arg(long, allow_negative_numbers = true)]
    pub beta: i64,
    #[arg(long = "D", allow_negative_numbers = true)]
    pub d: i64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct SpecArgs {
    #[arg(long = "m", default_value_t = 2)]
    pub m: u32,
    #[arg(long = "N", default_value_t = 1)]
    pub n: i64,
    #[arg(long, allow_negative_numbers = true)]
    pub beta: i64,
    #[arg(long = "D", allow_negative_numbers = true)]
    pub d: i64,
    /// Absolute truncation tolerance.
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
}

impl SpecArgs {
    pub fn spec(&self) -> Result<LiftSpec> {
        LiftSpec::new(self.m, self.n, self.beta, self.d, self.tol)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum What {
    F,
    Phi,
    Comp,
    #[value(name = "deltaPhi")]
    DeltaPhi,
    Green,
    #[value(name = "mathcalF")]
    MathcalF,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    #[command(flatten)]
    pub spec: SpecArgs,
    #[arg(long, value_enum)]
    pub what: What,
    /// Component index for `--what comp`.
    #[arg(long, default_value_t = 0)]
    pub p: u32,
    /// Point as `a+bi`.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "grid")]
    pub z: Option<String>,
    /// `umin:umax:nx,vmin:vmax:ny`
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<String>,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PairMethod {
    Residue,
    Oracle,
    Both,
}

#[derive(Args, Debug)]
pub struct PairArgs {
    /// Spec of g (level, m and tolerance are shared with the lift).
    #[command(flatten)]
    pub spec: SpecArgs,
    #[arg(long = "lift-beta", allow_negative_numbers = true)]
    pub lift_beta: i64,
    #[arg(long = "lift-D", allow_negative_numbers = true)]
    pub lift_d: i64,
    #[arg(long, value_enum, default_value_t = PairMethod::Residue)]
    pub method: PairMethod,
    /// Chart radius of the discs excised by the oracle.
    #[arg(long, default_value_t = 0.12)]
    pub epsilon: f64,
    /// Largest relative gap accepted by `--method both`.
    #[arg(long = "gap-tol", default_value_t = 1e-3)]
    pub gap_tol: f64,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Specfun,
    Geometry,
    Ladder,
    Pairing,
    All,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    pub suite: Suite,
    #[command(flatten)]
    pub output: Output,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PointValue {
    pub what: String,
    pub z: UhpPoint,
    #[serde(with = "crate::cx::as_obj")]
    pub value: C64,
    pub terms_used: usize,
    pub tail_bound: f64,
}

/// Green's function values are real.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RealPointValue {
    pub what: String,
    pub z: UhpPoint,
    pub value: f64,
    pub terms_used: usize,
    pub tail_bound: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PairBoth {
    pub residue: PairingResult,
    pub oracle: PairingResult,
    pub relative_gap: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub measured: f64,
    pub tolerance: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub passed: bool,
    pub checks: Vec<Check>,
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::SingularPoint(_) => EXIT_SINGULAR,
        Error::InvalidPoint(_)
        | Error::InvalidMatrix(_)
        | Error::Domain(_)
        | Error::Congruence { .. }
        | Error::ConfigMismatch(_)
        | Error::LengthMismatch(..)
        | Error::NonConvergent(_) => EXIT_CONFIG,
        Error::AliasingDetected(_) | Error::DomainViolation | Error::EpsilonInconsistent { .. } => EXIT_VERIFY,
    }
}

/// Caps the global rayon pool at `MEROLIFT_THREADS` when set.
pub fn configure_threads() -> Result<()> {
    let Ok(s) = std::env::var("MEROLIFT_THREADS") else {
        return Ok(());
    };
    let n: usize = s
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Error::ConfigMismatch(format!("MEROLIFT_THREADS = '{s}' is not a positive integer")))?;
    // a pool built earlier in the process wins; that is fine for a cap
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn sink(out: &Output) -> Result<Box<dyn Write>> {
    match &out.out {
        Some(p) => std::fs::File::create(p)
            .map(|f| Box::new(std::io::BufWriter::new(f)) as Box<dyn Write>)
            .map_err(|e| Error::ConfigMismatch(format!("cannot write {}: {e}", p.display()))),
        None => Ok(Box::new(std::io::stdout().lock())),
    }
}

fn emit_json<T: Serialize>(out: &Output, v: &T) -> Result<()> {
    let mut w = sink(out)?;
    let s = serde_json::to_string_pretty(v).expect("output types serialize");
    writeln!(w, "{s}").and_then(|_| w.flush()).map_err(|e| Error::ConfigMismatch(format!("write failed: {e}")))
}

fn emit_text(out: &Output, s: &str) -> Result<()> {
    let mut w = sink(out)?;
    w.write_all(s.as_bytes()).and_then(|_| w.flush()).map_err(|e| Error::ConfigMismatch(format!("write failed: {e}")))
}

/// Runs one command; returns the process exit code.
pub fn run(cli: Cli) -> i32 {
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return EXIT_CONFIG;
    }
    let r = match cli.command {
        Command::Enumerate(a) => cmd_enumerate(&a),
        Command::Eval(a) => cmd_eval(&a),
        Command::Pair(a) => cmd_pair(&a),
        Command::Verify(a) => cmd_verify(&a),
    };
    match r {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn cmd_enumerate(a: &EnumerateArgs) -> Result<i32> {
    let data = class_representatives(a.n, a.beta, a.d)?;
    match a.output.format {
        Format::Json => emit_json(&a.output, &data)?,
        Format::Csv => emit_text(&a.output, &classes_csv(&data))?,
    }
    Ok(EXIT_OK)
}

fn classes_csv(data: &ClassData) -> String {
    let mut s = String::from("A,B,C,stab\n");
    for e in &data.classes {
        s.push_str(&format!("{},{},{},{}\n", e.a, e.b, e.c, e.stab));
    }
    s
}

fn quantity(what: What, p: u32) -> Quantity {
    match what {
        What::F => Quantity::F,
        What::Phi => Quantity::Phi,
        What::Comp => Quantity::Comp(p),
        What::DeltaPhi => Quantity::DeltaPhi,
        What::Green => Quantity::Green,
        What::MathcalF => Quantity::MathcalF,
    }
}

fn what_name(what: What) -> String {
    what.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
}

pub fn cmd_eval(a: &EvalArgs) -> Result<i32> {
    let spec = a.spec.spec()?;
    if let Some(w) = spec.warning() {
        eprintln!("warning: {w}");
    }
    let q = quantity(a.what, a.p);
    match (&a.z, &a.grid) {
        (Some(zs), None) => {
            let z = parse_complex(zs).ok_or_else(|| Error::ConfigMismatch(format!("cannot parse z = '{zs}'")))?;
            let z = UhpPoint::from_complex(z)?;
            let ev = Evaluator::at_point(&spec, q, z)?;
            let val = ev.eval(z)?;
            let name = what_name(a.what);
            match (a.output.format, a.what) {
                (Format::Json, What::Green) => emit_json(
                    &a.output,
                    &RealPointValue { what: name, z, value: val.re, terms_used: ev.set.len(), tail_bound: ev.tail_bound },
                )?,
                (Format::Json, _) => emit_json(
                    &a.output,
                    &PointValue { what: name, z, value: val, terms_used: ev.set.len(), tail_bound: ev.tail_bound },
                )?,
                (Format::Csv, _) => {
                    let row = GridRow { u: z.u, v: z.v, re: val.re, im: val.im, tail_bound: ev.tail_bound, singular: false };
                    let mut buf = Vec::new();
                    write_csv(&[row], &mut buf).expect("in-memory write");
                    emit_text(&a.output, &String::from_utf8_lossy(&buf))?;
                }
            }
        }
        (None, Some(gs)) => {
            let grid: Grid = gs.parse()?;
            let rows = grid_eval(&spec, q, &grid)?;
            match a.output.format {
                Format::Csv => {
                    let mut buf = Vec::new();
                    write_csv(&rows, &mut buf).expect("in-memory write");
                    emit_text(&a.output, &String::from_utf8_lossy(&buf))?;
                }
                Format::Json => emit_json(&a.output, &rows)?,
            }
        }
        _ => return Err(Error::ConfigMismatch("give exactly one of --z or --grid".into())),
    }
    Ok(EXIT_OK)
}

pub fn cmd_pair(a: &PairArgs) -> Result<i32> {
    let g = a.spec.spec()?;
    let lift = LiftSpec::new(a.spec.m, a.spec.n, a.lift_beta, a.lift_d, a.spec.tol)?;
    for w in [g.warning(), lift.warning()].into_iter().flatten() {
        eprintln!("warning: {w}");
    }
    let params = OracleParams { epsilon: a.epsilon, ..OracleParams::default() };
    match a.method {
        PairMethod::Residue => {
            let r = regularized_pairing(&g, &lift)?;
            emit_pairing(&a.output, &[&r])?;
        }
        PairMethod::Oracle => {
            let r = oracle_pairing(&g, &lift, &params)?;
            emit_pairing(&a.output, &[&r])?;
        }
        PairMethod::Both => {
            let r = regularized_pairing(&g, &lift)?;
            let o = oracle_pairing(&g, &lift, &params)?;
            let scale = r.value.norm().max(o.value.norm());
            let gap = if scale == 0.0 { 0.0 } else { (r.value - o.value).norm() / scale };
            match a.output.format {
                Format::Json => emit_json(&a.output, &PairBoth { residue: r, oracle: o, relative_gap: gap })?,
                Format::Csv => emit_pairing(&a.output, &[&r, &o])?,
            }
            if gap > a.gap_tol {
                eprintln!("methods disagree: relative gap {gap:e} > {:e}", a.gap_tol);
                return Ok(EXIT_DISAGREE);
            }
        }
    }
    Ok(EXIT_OK)
}

fn emit_pairing(out: &Output, rs: &[&PairingResult]) -> Result<()> {
    match out.format {
        Format::Json => emit_json(out, rs[0]),
        Format::Csv => {
            let mut s = String::from("method,re,im,errorBudget\n");
            for r in rs {
                let m = serde_json::to_value(r.method).expect("enum serializes");
                s.push_str(&format!("{},{:.17e},{:.17e},{:e}\n", m.as_str().unwrap_or(""), r.value.re, r.value.im, r.error_budget));
            }
            emit_text(out, &s)
        }
    }
}

pub fn cmd_verify(a: &VerifyArgs) -> Result<i32> {
    let report = verify(a.suite);
    match a.output.format {
        Format::Json => emit_json(&a.output, &report)?,
        Format::Csv => {
            let mut s = String::from("name,passed,measured,tolerance\n");
            for c in &report.checks {
                s.push_str(&format!("{},{},{:e},{:e}\n", c.name, c.passed, c.measured, c.tolerance));
            }
            emit_text(&a.output, &s)?;
        }
    }
    Ok(if report.passed { EXIT_OK } else { EXIT_VERIFY })
}

fn check(name: &str, measured: Result<f64>, tolerance: f64) -> Check {
    let measured = measured.unwrap_or(f64::INFINITY);
    Check { name: name.into(), passed: measured <= tolerance, measured, tolerance }
}

fn rel(a: C64, b: C64) -> f64 {
    (a - b).norm() / b.norm().max(f64::MIN_POSITIVE)
}

pub fn verify(suite: Suite) -> VerifyReport {
    let mut checks = Vec::new();
    if matches!(suite, Suite::Specfun | Suite::All) {
        checks.extend(specfun_checks());
    }
    if matches!(suite, Suite::Geometry | Suite::All) {
        checks.extend(geometry_checks());
    }
    if matches!(suite, Suite::Ladder | Suite::All) {
        checks.extend(ladder_checks());
    }
    if matches!(suite, Suite::Pairing | Suite::All) {
        checks.extend(pairing_checks());
    }
    VerifyReport { suite, passed: checks.iter().all(|c| c.passed), checks }
}

fn specfun_checks() -> Vec<Check> {
    let ts = [1.01, 1.1, 2.0, 10.0];
    let quad = (|| {
        let mut worst: f64 = 0.0;
        for m in 0..=5 {
            for t in ts {
                let a = b_m_real(m, t)?;
                worst = worst.max((a - b_m_quadrature(m, t)?).abs() / a.abs());
            }
        }
        Ok(worst)
    })();
    let closed = (|| {
        let mut worst: f64 = 0.0;
        for m in 0..=5 {
            for t in [1.01, 1.1, 2.0] {
                let a = b_m_real(m, t)?;
                worst = worst.max((b_m_closed(m, C64::new(t, 0.0))?.re - a).abs() / a.abs());
            }
        }
        Ok(worst)
    })();
    let recurrence = (|| {
        let mut worst: f64 = 0.0;
        for m in 1..=5 {
            for t in ts {
                let lhs = b_m_real(m, t)?;
                let mf = m as f64;
                let rhs = t / (mf * (t * t - 1.0).powi(m as i32)) - (2.0 * mf - 1.0) / (2.0 * mf) * b_m_real(m - 1, t)?;
                worst = worst.max((lhs - rhs).abs() / lhs.abs());
            }
        }
        Ok(worst)
    })();
    let beta_hyp = (|| {
        let mut worst: f64 = 0.0;
        for p in [1.5, 2.5] {
            for q in [-1.0, -2.0] {
                for t in [0.1f64, 0.5] {
                    let lhs = p / t.powf(p) * incomplete_beta(p, q, t)?;
                    let rhs = gauss_hypergeometric(p, 1.0 - q, p + 1.0, t)?;
                    worst = worst.max((lhs - rhs).abs() / rhs.abs());
                }
            }
        }
        Ok(worst)
    })();
    let legendre_rec = (|| {
        let mut bad = 0.0;
        for l in 0..=6u32 {
            for mt in -(l as i32)..l as i32 {
                let p = legendre_tilde_p(l, mt)?;
                let lhs = crate::poly::Poly::xi2m1().mul(&p.deriv());
                let rhs = legendre_tilde_p(l, mt + 1)?.add(&crate::poly::Poly::from_ints(&[0, 2 * mt as i128]).mul(&p));
                if lhs != rhs {
                    bad += 1.0;
                }
            }
        }
        Ok(bad)
    })();
    let s_degree = (|| {
        let mut bad = 0.0;
        for m in 0..=5 {
            for p in 0..=m {
                if s_poly(m, p)?.degree().is_some_and(|d| d + 1 > p as usize) {
                    bad += 1.0;
                }
            }
        }
        Ok(bad)
    })();
    let green_ratio = (|| {
        let mut worst: f64 = 0.0;
        for m in 1..=3 {
            let r0 = green_kernel(m, 1.5)? / legendre_q(m, 1.5)?;
            for t in [2.0, 5.0, 20.0] {
                let r = green_kernel(m, t)? / legendre_q(m, t)?;
                worst = worst.max((r - r0).abs() / r0.abs());
            }
        }
        Ok(worst)
    })();
    vec![
        check("bM series vs quadrature", quad, 1e-9),
        check("bM closed form vs series", closed, 1e-9),
        check("bM recurrence", recurrence, 1e-11),
        check("beta/hypergeometric identity", beta_hyp, 1e-9),
        check("Legendre recurrence (exact failures)", legendre_rec, 0.0),
        check("S polynomial degree bound (violations)", s_degree, 0.0),
        check("green kernel / Q_m constant", green_ratio, 1e-8),
    ]
}

fn geometry_checks() -> Vec<Check> {
    let pts = [(0.1, 1.3), (-0.4, 0.7), (0.35, 2.2), (0.0, 0.5)];
    let mats = [Mat2Z::T, Mat2Z::S, Mat2Z::new(2, 1, 5, 3).expect("det 1")];
    let mut dist: f64 = 0.0;
    let mut chart: f64 = 0.0;
    for &(a, b) in &pts {
        for &(c, d) in &pts {
            let (z, w) = (UhpPoint { u: a, v: b }, UhpPoint { u: c, v: d });
            for g in &mats {
                let gr: Mat2R = g.to_real();
                let (gz, gw) = (moebius(&gr, z), moebius(&gr, w));
                let c0 = cosh_dist(z, w);
                dist = dist.max((cosh_dist(gz, gw) - c0).abs() / c0);
                chart = chart.max((aw_map(gw, gz).norm() - aw_map(w, z).norm()).abs());
            }
        }
    }
    let classes = (|| {
        let want: [(i64, usize, Option<u32>); 6] =
            [(-3, 1, Some(3)), (-4, 1, Some(2)), (-7, 1, Some(1)), (-8, 1, Some(1)), (-11, 1, Some(1)), (-23, 3, None)];
        let mut bad = 0.0;
        for (d, h, stab) in want {
            let c = class_representatives(1, d.rem_euclid(2), d)?;
            if c.classes.len() != h {
                bad += 1.0;
            }
            if let Some(s) = stab {
                if c.classes[0].stab != s || automorph_order(&QForm::new(c.classes[0].a, c.classes[0].b, c.classes[0].c), 1) != s {
                    bad += 1.0;
                }
            }
        }
        Ok(bad)
    })();
    vec![
        check("cosh distance invariance", Ok(dist), 1e-12),
        check("|A_w(z)| invariance", Ok(chart), 1e-12),
        check("class numbers and stabilizers (mismatches)", classes, 0.0),
    ]
}

/// `∂_z F + k/(2iv) F` by central differences.
fn delta_fd(ev: &Evaluator, k: f64, z: UhpPoint, h: f64) -> Result<C64> {
    let at = |du: f64, dv: f64| ev.eval(UhpPoint { u: z.u + du, v: z.v + dv });
    let du = (at(h, 0.0)? - at(-h, 0.0)?) / (2.0 * h);
    let dv = (at(0.0, h)? - at(0.0, -h)?) / (2.0 * h);
    let dz = 0.5 * (du - C64::new(0.0, 1.0) * dv);
    Ok(dz + ev.eval(z)? * k / C64::new(0.0, 2.0 * z.v))
}

fn ladder_checks() -> Vec<Check> {
    let z = UhpPoint { u: 0.13, v: 1.37 };
    let specs = |m: u32| -> Result<LiftSpec> {
        if m % 2 == 0 {
            LiftSpec::new(m, 1, 0, -4, 1e-9)
        } else {
            LiftSpec::new(m, 2, 1, -7, 1e-9)
        }
    };
    let ladder = (|| {
        let mut worst: f64 = 0.0;
        for m in 1..=3u32 {
            let spec = specs(m)?;
            let bx = crate::qforms::UvBox::point(z);
            for p in 1..=2 * m {
                let hi = Evaluator::with_tmax(&spec, Quantity::Comp(p), bx, 300.0)?;
                let lo = Evaluator::with_tmax(&spec, Quantity::Comp(p - 1), bx, 300.0)?;
                let lhs = delta_fd(&hi, (2 * m) as f64 - 2.0 * p as f64, z, 1e-4)?;
                let rhs = lo.eval(z)? * (2 * m - p + 1) as f64;
                worst = worst.max(rel(lhs, rhs));
            }
        }
        Ok(worst)
    })();
    let closed = (|| {
        let spec = specs(2)?;
        let a = crate::lift::delta_phi(&spec, z)?.value;
        let b = crate::lift::delta_phi_via_f(&spec, z)?.value;
        Ok(rel(a, b))
    })();
    let stencil = (|| {
        let spec = specs(2)?;
        let bx = crate::qforms::UvBox::point(z);
        let phi = Evaluator::with_tmax(&spec, Quantity::Phi, bx, 400.0)?;
        let dp = Evaluator::with_tmax(&spec, Quantity::DeltaPhi, bx, 400.0)?.eval(z)?;
        let fd = delta_fd(&phi, 4.0, z, 1e-4)? / C64::new(0.0, 2.0 * std::f64::consts::PI);
        Ok(rel(fd, dp))
    })();
    vec![
        check("component ladder (finite differences)", ladder, 1e-4),
        check("deltaPhi closed forms", closed, 1e-10),
        check("deltaPhi vs stencil of phi", stencil, 1e-5),
    ]
}

fn pairing_checks() -> Vec<Check> {
    let specs = || -> Result<(LiftSpec, LiftSpec)> {
        Ok((LiftSpec::new(2, 1, 0, -4, 1e-10)?, LiftSpec::new(2, 1, 1, -3, 1e-10)?))
    };
    let duality = (|| {
        let (g, lift) = specs()?;
        let w0 = QForm::new(1, 1, 1).cm_point()?;
        let mut worst: f64 = 0.0;
        for w in [UhpPoint { u: 0.0, v: 1.0 }, UhpPoint { u: 0.5, v: 0.5 }] {
            let a = residue_at_pole(&g, lift.r(), w, w0)?;
            worst = worst.max(rel(residue_contour(&g, lift.r(), w, w0)?, a));
        }
        Ok(worst)
    })();
    let contw0 = (|| {
        let mut worst: f64 = 0.0;
        for m in 1..=4 {
            for eps in [0.1, 0.4] {
                let t = (1.0 + eps * eps) / (1.0 - eps * eps);
                worst = worst.max(coincident_pole_ct(m, eps)?.abs() / b_m_real(m, t)?.abs());
            }
        }
        Ok(worst)
    })();
    let invariance = (|| {
        let (g, lift) = specs()?;
        let base = regularized_pairing(&g, &lift)?;
        let mut orbits = lift_orbits(&lift)?;
        orbits[0].rep = orbits[0].rep.act(&Mat2Z::new(2, 1, 5, 3)?);
        Ok(rel(pairing_with_orbits(&g, &lift, &orbits)?.value, base.value))
    })();
    let oracle = (|| {
        let (g, lift) = specs()?;
        let r = regularized_pairing(&g, &lift)?;
        let o = oracle_pairing(&g, &lift, &OracleParams { rel_tol: 1e-7, tmax: 300.0, ..OracleParams::default() })?;
        Ok(rel(o.value, r.value))
    })();
    vec![
        check("residue duality", duality, 1e-8),
        check("coincident pole constant term", contw0, 1e-6),
        check("representative invariance", invariance, 1e-8),
        check("residue formula vs oracle", oracle, 1e-3),
    ]
}
