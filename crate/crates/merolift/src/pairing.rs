//! The regularized pairing of a meromorphic cusp form `g = f_{m+1,β,D}` with the
//! lift `(2πi)^{-1} δ_{2m} Φ`: a finite residue formula, two ways of computing
//! each residue, and a brute-force regularized integral to check it against.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expansion::{alpha_p0, b_slope, c_coeffs, chart_disc_box, chart_radius, laurent_of_f_with_set, psi_poly, LaurentSeries};
use crate::geometry::{aw_inverse, aw_map, cosh_dist, UhpPoint};
use crate::lift::{Evaluator, FormSet, LiftSpec, Quantity, POLE_GUARD};
use crate::qforms::{class_index, class_representatives, enumerate_in_box, QForm, UvBox};
use crate::quad;
use crate::specfun::b_m;

/// Largest `cosh d` used when summing residues over the poles of `g`.
pub const POLE_SUM_CAP: f64 = 1.6e4;
const CONTOUR_NODES: usize = 512;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum Method {
    ResidueFormula,
    Oracle,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BreakdownEntry {
    /// Lift orbit representative `w_j^±`.
    pub orbit_rep: QForm,
    /// CM point of the class of `g`'s poles summed in this entry.
    pub pole: UhpPoint,
    #[serde(with = "crate::cx::as_obj")]
    pub residue: C64,
    pub sign: i32,
    pub stab_order: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PairingResult {
    #[serde(with = "crate::cx::as_obj")]
    pub value: C64,
    pub method: Method,
    pub breakdown: Vec<BreakdownEntry>,
    pub epsilon: Option<f64>,
    pub error_budget: f64,
}

/// `m!/(2i(−8πi)^m)`.
pub fn global_constant(m: u32) -> C64 {
    let fact: f64 = (1..=m).map(f64::from).product();
    fact / (C64::new(0.0, 2.0) * C64::new(0.0, -8.0 * PI).powu(m))
}

fn check_pair(g: &LiftSpec, lift: &LiftSpec) -> Result<()> {
    if g.m != lift.m || g.n != lift.n {
        return Err(Error::ConfigMismatch(format!(
            "g has (m, N) = ({}, {}), the lift has ({}, {})",
            g.m, g.n, lift.m, lift.n
        )));
    }
    if g.m < 1 {
        return Err(Error::ConfigMismatch("pairing needs m >= 1".into()));
    }
    Ok(())
}

/// `Σ_{p=0}^{m} c_{-1-p}(w,w₀) α_{p,0}(w,w₀)` for the Laurent data `a` of `g` at `w`.
pub fn residue_from_series(m: u32, r: f64, a: &LaurentSeries, w: UhpPoint, w0: UhpPoint) -> Result<C64> {
    if cosh_dist(w, w0) - 1.0 < POLE_GUARD {
        return Err(Error::Domain("residue needs w != w0".into()));
    }
    if a.n_min >= 0 {
        return Ok(C64::new(0.0, 0.0));
    }
    let c = c_coeffs(m, r, a, w, w0)?;
    let mut acc = C64::new(0.0, 0.0);
    for p in 0..=m {
        let cn = c.coeff(-1 - p as i64);
        if cn != C64::new(0.0, 0.0) {
            acc += cn * alpha_p0(m, p, w, w0)?;
        }
    }
    Ok(acc)
}

/// Principal coefficient `a_{-m-1}(w)` of `g`; zero when `w` is not a pole.
fn principal_coefficient(g: &LiftSpec, w: UhpPoint) -> C64 {
    let set = FormSet::enumerate(g, UvBox::point(w), 1.0 + 1e-6);
    let wsum: f64 = set.terms.iter().filter(|t| cosh_dist(w, t.w) - 1.0 < POLE_GUARD).map(|t| t.weight).sum();
    wsum * C64::new(0.0, 1.0).powi(-(g.m as i32 + 1)) / (2.0 * (g.n as f64).powf(g.m as f64 / 2.0))
}

fn principal_series(g: &LiftSpec, w: UhpPoint) -> LaurentSeries {
    let m = g.m as usize;
    let mut coeffs = vec![C64::new(0.0, 0.0); m + 1];
    coeffs[0] = principal_coefficient(g, w);
    LaurentSeries { n_min: -(m as i64) - 1, coeffs, convergence_radius: f64::NAN }
}

/// Residue of `Ψ_{g,w,w₀}` at `ζ = 0` from the analytic principal part of `g`;
/// `r` is the lift's `D/(4N)`.
pub fn residue_at_pole(g: &LiftSpec, r: f64, w: UhpPoint, w0: UhpPoint) -> Result<C64> {
    residue_from_series(g.m, r, &principal_series(g, w), w, w0)
}

/// `Ψ(ζ) = G(ζ) |r|^{m/2} ψ(ζ)^m/(2it₀t)^m B_m(cosh d(w,w₀) − slope·ζ)`.
fn psi_factor(m: u32, r: f64, w: UhpPoint, w0: UhpPoint) -> Result<impl Fn(C64) -> Result<C64>> {
    let psi = psi_poly(w, w0)?;
    let c0 = cosh_dist(w, w0);
    let slope = b_slope(w, w0);
    let k = r.abs().powf(m as f64 / 2.0) / C64::new(0.0, 2.0 * w0.v * w.v).powu(m);
    Ok(move |zeta: C64| {
        let arg = c0 - slope * zeta;
        if !(arg.re > 1.0) {
            return Err(Error::DomainViolation);
        }
        let q = psi[0] + psi[1] * zeta + psi[2] * zeta * zeta;
        Ok(k * q.powu(m) * b_m(m, arg)?)
    })
}

/// `(1/2πi)∮_{|ζ|=ρ} G(ζ)·(B_m factor) dζ` by the trapezoid rule, checked against `ρ/2`.
pub fn residue_contour_fn<G>(gfun: G, m: u32, r: f64, w: UhpPoint, w0: UhpPoint, rho: f64) -> Result<C64>
where
    G: Fn(C64) -> Result<C64> + Sync,
{
    let delta = aw_map(w, w0).norm();
    if !(rho > 0.0 && rho < delta && rho < 1.0) {
        return Err(Error::Domain(format!("contour radius {rho} must lie in (0, {delta})")));
    }
    let fac = psi_factor(m, r, w, w0)?;
    let ring = |rad: f64| -> Result<(C64, f64)> {
        let vals: Vec<Result<C64>> = (0..CONTOUR_NODES)
            .into_par_iter()
            .map(|j| {
                let zeta = C64::from_polar(rad, 2.0 * PI * j as f64 / CONTOUR_NODES as f64);
                Ok(gfun(zeta)? * fac(zeta)? * zeta)
            })
            .collect();
        let mut acc = C64::new(0.0, 0.0);
        let mut mag: f64 = 0.0;
        for v in vals {
            let v = v?;
            mag = mag.max(v.norm());
            acc += v;
        }
        Ok((acc / CONTOUR_NODES as f64, mag))
    };
    let (a, mag) = ring(rho)?;
    let (b, _) = ring(0.5 * rho)?;
    let scale = a.norm().max(1e-14 * mag);
    if (a - b).norm() > 1e-8 * scale.max(f64::MIN_POSITIVE) {
        return Err(Error::AliasingDetected((a - b).norm() / scale));
    }
    Ok(a)
}

/// Residue of `Ψ_{g,w,w₀}` from samples of `g` on a circle around `w`.
pub fn residue_contour(g: &LiftSpec, r: f64, w: UhpPoint, w0: UhpPoint) -> Result<C64> {
    let m = g.m;
    let gap = chart_radius(g, w);
    let delta = aw_map(w, w0).norm();
    let rho = 0.5 * gap.min(delta);
    let amp = (2.0 * w.v).powi(m as i32 + 1) / (1.0 - rho).powi(2 * m as i32 + 2);
    // absolute accuracy relative to the size of the principal part on the circle
    let scale = principal_coefficient(g, w).norm().max(1e-2) * rho.powi(-(m as i32) - 1);
    let ev = Evaluator::new(&g.with_tol(1e-6 * scale / amp), Quantity::F, chart_disc_box(w, rho))?;
    let two_it = C64::new(0.0, 2.0 * w.v).powu(m + 1);
    let gfun = |zeta: C64| -> Result<C64> {
        let z = aw_inverse(w, zeta)?;
        Ok(ev.eval(z)? * two_it / (1.0 - zeta).powu(2 * m + 2))
    };
    residue_contour_fn(gfun, m, r, w, w0, rho)
}

/// A lift orbit `w_j^±` with its family sign `(±)^m` (doubled when the families coincide).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Orbit {
    pub rep: QForm,
    pub sign: f64,
    pub stab: u32,
}

pub fn lift_orbits(lift: &LiftSpec) -> Result<Vec<Orbit>> {
    let mut out = Vec::new();
    for (b, s) in lift.families() {
        for e in class_representatives(lift.n, b, lift.d)?.classes {
            out.push(Orbit { rep: QForm::new(e.a, e.b, e.c), sign: s, stab: e.stab });
        }
    }
    Ok(out)
}

/// Residues at the poles `w` of `g` with `cosh d(w, w₀) <= tmax`, `w ≠ w₀`,
/// grouped by the class of the pole.
fn pole_sums(g: &LiftSpec, r: f64, w0: UhpPoint, tmax: f64) -> Result<Vec<(usize, UhpPoint, C64)>> {
    let m = g.m;
    let mut groups: Vec<(usize, UhpPoint, C64)> = Vec::new();
    let mut offset = 0;
    for (b, s) in g.families() {
        let classes = class_representatives(g.n, b, g.d)?;
        let sums: Vec<Result<Vec<C64>>> = enumerate_in_box(g.n, b, g.d, UvBox::point(w0), tmax)
            .par_chunks(512)
            .map(|ch| {
                let mut acc = vec![C64::new(0.0, 0.0); classes.classes.len()];
                for q in ch {
                    let w = q.cm_point()?;
                    if cosh_dist(w, w0) - 1.0 < POLE_GUARD {
                        continue;
                    }
                    let k = class_index(&classes, q).ok_or_else(|| Error::Domain(format!("form {q:?} has no class")))?;
                    let a = s * C64::new(0.0, 1.0).powi(-(m as i32 + 1)) / (2.0 * (g.n as f64).powf(m as f64 / 2.0));
                    let mut coeffs = vec![C64::new(0.0, 0.0); m as usize + 1];
                    coeffs[0] = a;
                    let ser = LaurentSeries { n_min: -(m as i64) - 1, coeffs, convergence_radius: f64::NAN };
                    acc[k] += residue_from_series(m, r, &ser, w, w0)?;
                }
                Ok(acc)
            })
            .collect();
        let mut tot = vec![C64::new(0.0, 0.0); classes.classes.len()];
        for part in sums {
            for (t, x) in tot.iter_mut().zip(part?) {
                *t += x;
            }
        }
        for (k, (e, t)) in classes.classes.iter().zip(tot).enumerate() {
            groups.push((offset + k, QForm::new(e.a, e.b, e.c).cm_point()?, t));
        }
        offset += classes.classes.len();
    }
    Ok(groups)
}

/// Per-class pole sums extrapolated in the truncation height: the tail decays like
/// `T^{-m}`, so successive doublings are combined Richardson-style.
fn extrapolated_pole_sums(g: &LiftSpec, r: f64, w0: UhpPoint, tol: f64) -> Result<(Vec<(UhpPoint, C64)>, f64)> {
    let q = 2f64.powi(g.m as i32) - 1.0;
    let mut tmax = 64.0;
    let mut prev = pole_sums(g, r, w0, tmax)?;
    let mut prev_rich: Option<Vec<C64>> = None;
    loop {
        tmax *= 2.0;
        let next = pole_sums(g, r, w0, tmax)?;
        let rich: Vec<C64> = next.iter().zip(&prev).map(|(a, b)| a.2 + (a.2 - b.2) / q).collect();
        let total: f64 = rich.iter().sum::<C64>().norm();
        if let Some(pr) = &prev_rich {
            let err: f64 = rich.iter().zip(pr).map(|(a, b)| (a - b).norm()).sum();
            if err <= tol * total || err == 0.0 || 2.0 * tmax > POLE_SUM_CAP {
                if err > 1e-5 * total {
                    return Err(Error::NonConvergent(format!("residue sum still moves by {err:e} at cosh d <= {tmax}")));
                }
                return Ok((next.iter().zip(rich).map(|(a, v)| (a.1, v)).collect(), err));
            }
        }
        prev_rich = Some(rich);
        prev = next;
    }
}

/// Residue formula with explicit lift orbit representatives.
pub fn pairing_with_orbits(g: &LiftSpec, lift: &LiftSpec, orbits: &[Orbit]) -> Result<PairingResult> {
    check_pair(g, lift)?;
    let m = g.m;
    let r = lift.r();
    let k = global_constant(m);
    let tol = g.tol.min(lift.tol);
    let mut breakdown = Vec::new();
    let mut value = C64::new(0.0, 0.0);
    let mut budget = 0.0;
    for o in orbits {
        let w0 = o.rep.cm_point()?;
        let (groups, err) = extrapolated_pole_sums(g, r, w0, tol)?;
        let f = k * o.sign / o.stab as f64;
        budget += f.norm() * err;
        for (pole, res) in groups {
            value += f * res;
            breakdown.push(BreakdownEntry { orbit_rep: o.rep, pole, residue: res, sign: o.sign as i32, stab_order: o.stab });
        }
    }
    Ok(PairingResult { value, method: Method::ResidueFormula, breakdown, epsilon: None, error_budget: budget })
}

/// The pairing `⟨(2πi)^{-1}δ_{2m}Φ_lift, g⟩` from the finite residue formula.
pub fn regularized_pairing(g: &LiftSpec, lift: &LiftSpec) -> Result<PairingResult> {
    check_pair(g, lift)?;
    pairing_with_orbits(g, lift, &lift_orbits(lift)?)
}

/// `CT_{s=0} ε^{s+k}/(s+k)`.
pub fn radial_ct(k: i64, eps: f64) -> f64 {
    if k == 0 {
        eps.ln()
    } else {
        eps.powi(k as i32) / k as f64
    }
}

/// `CT_{s=0} ∫_{|ζ|<ε} |ζ|^s F(ζ) conj(G(ζ)) (4/2^k)(1-|ζ|²)^{k-2} dA` for weight-`k`
/// forms with chart data `F = a`, `G = b`.
pub fn disc_constant_term(a: &LaurentSeries, b: &LaurentSeries, k: u32, eps: f64) -> C64 {
    let lo = a.n_min.max(b.n_min);
    let hi = a.n_max().min(b.n_max());
    let mut acc = C64::new(0.0, 0.0);
    for n in lo..=hi {
        let ab = a.coeff(n) * b.coeff(n).conj();
        let mut binom = 1.0;
        let mut radial = 0.0;
        for j in 0..=(k as i64 - 2) {
            let sgn = if j % 2 == 0 { 1.0 } else { -1.0 };
            radial += sgn * binom * radial_ct(2 * n + 2 * j + 2, eps);
            binom *= (k as i64 - 2 - j) as f64 / (j + 1) as f64;
        }
        acc += ab * radial;
    }
    acc * 2.0 * PI * 4.0 / 2f64.powi(k as i32)
}

/// `CT_{s=0}` of `s ∫_0^ε B_m((1+ρ²)/(1-ρ²)) ρ^{s-1} dρ`, the regularized
/// contribution of the lift's own pole; vanishes identically.
pub fn coincident_pole_ct(m: u32, eps: f64) -> Result<f64> {
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::Domain(format!("ε = {eps} must lie in (0, 1)")));
    }
    let t = (1.0 + eps * eps) / (1.0 - eps * eps);
    let boundary = b_m(m, C64::new(t, 0.0))?.re;
    let mut binom = 1.0;
    let mut acc = 0.0;
    for l in 0..=(2 * m as i64) {
        let sgn = if l % 2 == 0 { 1.0 } else { -1.0 };
        acc += sgn * binom * radial_ct(2 * l - 2 * m as i64, eps);
        binom *= (2 * m as i64 - l) as f64 / (l + 1) as f64;
    }
    Ok(boundary + 2f64.powi(1 - 2 * m as i32) * acc)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OracleParams {
    /// Chart radius of the excised discs.
    pub epsilon: f64,
    /// Truncation height of the fundamental domain.
    pub height: f64,
    /// `cosh d` truncation of both lattice sums.
    pub tmax: f64,
    pub rel_tol: f64,
}

impl Default for OracleParams {
    fn default() -> Self {
        Self { epsilon: 0.12, height: 8.0, tmax: 1000.0, rel_tol: 1e-8 }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OracleResult {
    pub value: C64,
    pub exterior: C64,
    pub discs: C64,
    pub error_budget: f64,
    pub evals: usize,
}

struct Disc {
    uc: f64,
    yc: f64,
    rad: f64,
}

impl Disc {
    fn new(w: UhpPoint, eps: f64) -> Self {
        let e2 = eps * eps;
        Self { uc: w.u, yc: w.v * (1.0 + e2) / (1.0 - e2), rad: 2.0 * w.v * eps / (1.0 - e2) }
    }
}

/// CM points of either spec lying within chart distance `eps` of the truncated
/// SL₂(Z) fundamental domain.
fn singular_points(specs: &[&LiftSpec], eps: f64, height: f64) -> Vec<UhpPoint> {
    let bx = UvBox { u0: -0.5, u1: 0.5, v0: 0.75f64.sqrt(), v1: height };
    let c = (1.0 + eps * eps) / (1.0 - eps * eps) + 1e-9;
    let mut pts: Vec<UhpPoint> = Vec::new();
    for s in specs {
        for (b, _) in s.families() {
            for q in enumerate_in_box(s.n, b, s.d, bx, c) {
                let w = q.cm_point().expect("enumerated forms are positive definite");
                if !pts.iter().any(|p| cosh_dist(*p, w) - 1.0 < POLE_GUARD) {
                    pts.push(w);
                }
            }
        }
    }
    pts.sort_by(|a, b| a.u.total_cmp(&b.u).then(a.v.total_cmp(&b.v)));
    pts
}

/// Reduction to the closed standard fundamental domain, with `|PSL₂(Z)_w|`.
fn reduce_point(w: UhpPoint) -> (UhpPoint, u32) {
    let mut z = w.z();
    for _ in 0..1_000_000 {
        z.re -= z.re.round();
        if z.norm_sqr() < 1.0 - 1e-13 {
            z = -1.0 / z;
        } else {
            break;
        }
    }
    // boundary identifications: u = 1/2 with u = -1/2, and the arc with its mirror
    if (z.re - 0.5).abs() < 1e-9 {
        z.re -= 1.0;
    }
    if z.norm_sqr() < 1.0 + 1e-9 && z.re > 0.0 {
        z.re = -z.re;
    }
    let p = UhpPoint { u: z.re, v: z.im };
    let e = if (p.u.abs() < 1e-9) && (p.v - 1.0).abs() < 1e-9 {
        2
    } else if (p.u.abs() - 0.5).abs() < 1e-9 && (p.v - 0.75f64.sqrt()).abs() < 1e-9 {
        3
    } else {
        1
    };
    (p, e)
}

/// Laurent data at `w` from a fixed, generous truncation (the rigorous tail
/// bound would ask for far more terms than the disc series can use).
fn chart_series(spec: &LiftSpec, w: UhpPoint, n_max: i64) -> Result<LaurentSeries> {
    let set = FormSet::enumerate(spec, UvBox::point(w), 4000.0);
    laurent_of_f_with_set(spec, &set, w, n_max)
}

/// Brute-force regularized pairing over the SL₂(Z) fundamental domain: the
/// integral of `f·conj(g)·v^{2m+2}dμ` outside chart discs of radius `ε`, plus the
/// constant term of each disc integral from the Laurent data.
pub fn regularization_oracle(g: &LiftSpec, lift: &LiftSpec, params: &OracleParams) -> Result<OracleResult> {
    check_pair(g, lift)?;
    if g.n != 1 {
        return Err(Error::ConfigMismatch("the oracle integrates over the SL2(Z) fundamental domain, N must be 1".into()));
    }
    let m = g.m;
    let k = 2 * m + 2;
    let eps = params.epsilon;
    if !(eps > 0.0 && eps < 0.5) || !(params.height > 1.0) || !(params.tmax >= 4.0) {
        return Err(Error::Domain(format!("bad oracle parameters {params:?}")));
    }
    let pts = singular_points(&[g, lift], eps, params.height);
    let discs: Vec<Disc> = pts.iter().map(|w| Disc::new(*w, eps)).collect();
    for (i, a) in pts.iter().enumerate() {
        for b in &pts[i + 1..] {
            if aw_map(*a, *b).norm() <= 2.0 * eps / (1.0 + eps * eps) {
                return Err(Error::Domain(format!("ε = {eps} discs around {a} and {b} overlap")));
            }
        }
    }

    // bands of the truncated domain with their own form sets
    let v_lo = 0.75f64.sqrt() * (1.0 - 1e-12);
    let mut edges = vec![v_lo];
    while *edges.last().unwrap() * 1.6 < params.height {
        let e = *edges.last().unwrap() * 1.6;
        edges.push(e);
    }
    edges.push(params.height);
    let mut bands = Vec::new();
    for w in edges.windows(2) {
        let bx = UvBox { u0: -0.5, u1: 0.5, v0: w[0], v1: w[1] };
        let fe = Evaluator::with_tmax(lift, Quantity::DeltaPhi, bx, params.tmax)?;
        let ge = Evaluator::with_tmax(g, Quantity::F, bx, params.tmax)?;
        bands.push((w[0], w[1], fe, ge));
    }
    let integrand = |u: f64, v: f64| -> C64 {
        let z = UhpPoint { u, v };
        let band = bands.iter().find(|b| v <= b.1).unwrap_or_else(|| bands.last().unwrap());
        match (band.2.eval(z), band.3.eval(z)) {
            (Ok(f), Ok(gv)) => f * gv.conj() * v.powi(2 * m as i32),
            _ => C64::new(f64::NAN, 0.0),
        }
    };

    let tol = params.rel_tol;
    let inner = |u: f64| -> (C64, f64, usize) {
        let lo = (1.0 - u * u).sqrt().max(v_lo);
        let mut cuts = vec![(lo, params.height)];
        for d in &discs {
            let du = u - d.uc;
            if du.abs() >= d.rad {
                continue;
            }
            let h = (d.rad * d.rad - du * du).sqrt();
            let (a, b) = (d.yc - h, d.yc + h);
            cuts = cuts
                .into_iter()
                .flat_map(|(x, y)| {
                    let mut out = Vec::new();
                    if a > x {
                        out.push((x, a.min(y)));
                    }
                    if b < y {
                        out.push((b.max(x), y));
                    }
                    out
                })
                .filter(|(x, y)| y > x)
                .collect();
        }
        let mut val = C64::new(0.0, 0.0);
        let mut err = 0.0;
        let mut n = 0;
        for (x, y) in cuts {
            let mut br = vec![x];
            for e in &edges {
                if *e > x && *e < y {
                    br.push(*e);
                }
            }
            br.push(y);
            let r = quad::integrate(|v| integrand(u, v), &br, 1e-15, tol, 4000);
            val += r.value;
            err += r.error;
            n += r.evals;
        }
        (val, err, n)
    };

    let mut ubreaks = vec![-0.5, 0.0, 0.5];
    for d in &discs {
        for x in [d.uc - d.rad, d.uc + d.rad] {
            if x > -0.5 && x < 0.5 {
                ubreaks.push(x);
            }
        }
    }
    ubreaks.sort_by(f64::total_cmp);
    ubreaks.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
    // θ-substitution u = mid - half·cos θ clusters nodes at the square-root
    // endpoints where discs start and end
    let inner_err = std::sync::Mutex::new((0.0f64, 0usize));
    let mut exterior = C64::new(0.0, 0.0);
    let mut outer_err = 0.0;
    for w in ubreaks.windows(2) {
        let (a, b) = (w[0], w[1]);
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let r = quad::integrate_par(
            |th| {
                let (val, e, n) = inner(mid - half * th.cos());
                let jac = half * th.sin();
                let mut g = inner_err.lock().unwrap();
                g.0 += e * jac;
                g.1 += n;
                val * jac
            },
            &[0.0, PI],
            1e-14,
            tol,
            2000,
        );
        exterior += r.value;
        outer_err += r.error;
    }
    let (ie, evals) = *inner_err.lock().unwrap();
    if !exterior.re.is_finite() || !exterior.im.is_finite() {
        return Err(Error::NonConvergent("exterior integrand hit a pole".into()));
    }

    // disc constant terms, one per Γ-orbit of singular points
    let mut seen: Vec<UhpPoint> = Vec::new();
    let mut disc_sum = C64::new(0.0, 0.0);
    let nser = 48;
    for p in &pts {
        let (w, e) = reduce_point(*p);
        if seen.iter().any(|s| cosh_dist(*s, w) - 1.0 < 1e-8) {
            continue;
        }
        seen.push(w);
        let f_ser = chart_series(lift, w, nser)?;
        let dconst = crate::lift::Constants::new(lift).delta_via_f;
        let f_ser = LaurentSeries { coeffs: f_ser.coeffs.iter().map(|c| c * dconst).collect(), ..f_ser };
        let g_ser = chart_series(g, w, nser)?;
        let ct = disc_constant_term(&f_ser, &g_ser, k, eps) / e as f64;
        disc_sum += ct;
    }
    let value = exterior + disc_sum;
    let budget = outer_err + ie / (evals.max(1) as f64).sqrt().max(1.0) + 1e-12 * value.norm();
    Ok(OracleResult { value, exterior, discs: disc_sum, error_budget: budget, evals })
}

/// Oracle at `ε` and `ε/2`; fails if the two runs disagree beyond `budget`.
pub fn oracle_checked(g: &LiftSpec, lift: &LiftSpec, params: &OracleParams, budget: f64) -> Result<(OracleResult, OracleResult)> {
    let a = regularization_oracle(g, lift, params)?;
    let b = regularization_oracle(g, lift, &OracleParams { epsilon: 0.5 * params.epsilon, ..*params })?;
    let gap = (a.value - b.value).norm();
    let allowed = budget.max(a.error_budget + b.error_budget);
    if gap > allowed {
        return Err(Error::EpsilonInconsistent { gap, budget: allowed });
    }
    Ok((a, b))
}

/// Oracle result as a [`PairingResult`].
pub fn oracle_pairing(g: &LiftSpec, lift: &LiftSpec, params: &OracleParams) -> Result<PairingResult> {
    let r = regularization_oracle(g, lift, params)?;
    Ok(PairingResult {
        value: r.value,
        method: Method::Oracle,
        breakdown: vec![],
        epsilon: Some(params.epsilon),
        error_budget: r.error_budget,
    })
}
