//! Lattice sums over quadratic forms: the meromorphic form `f_{m+1,β,D}`, the
//! theta lift `Φ`, its `2m+1` vector-valued components, the raising image
//! `(2πi)^{-1}δ_{2m}Φ`, the higher Green's function and `𝓕_{β,D,-1}`.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{cosh_dist, UhpPoint};
use crate::qforms::{check_congruence, class_representatives, enumerate_in_box, gamma0_index, QForm, UvBox};
use crate::quad::integrate_real;
use crate::specfun::{b_m, green_legendre_constant, legendre_q, legendre_q_shifted, KernelTables};

/// Largest truncation height before evaluation gives up.
pub const TMAX_CAP: f64 = 5.0e5;
/// Pole guard on `cosh d - 1`.
pub const POLE_GUARD: f64 = 1e-9;
const CHUNK: usize = 2048;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LiftSpec {
    pub m: u32,
    #[serde(rename = "N")]
    pub n: i64,
    pub beta: i64,
    #[serde(rename = "D")]
    pub d: i64,
    pub tol: f64,
}

impl LiftSpec {
    pub fn new(m: u32, n: i64, beta: i64, d: i64, tol: f64) -> Result<Self> {
        check_congruence(n, beta, d)?;
        if !(tol > 0.0 && tol.is_finite()) {
            return Err(Error::ConfigMismatch(format!("tolerance must be positive, got {tol}")));
        }
        Ok(Self { m, n, beta: beta.rem_euclid(2 * n), d, tol })
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    /// `r = D/(4N)`.
    pub fn r(&self) -> f64 {
        self.d as f64 / (4.0 * self.n as f64)
    }

    pub fn abs_d(&self) -> f64 {
        (-self.d) as f64
    }

    /// `2β ≡ 0 (mod 2N)`: the β and −β families coincide.
    pub fn self_dual(&self) -> bool {
        (2 * self.beta).rem_euclid(2 * self.n) == 0
    }

    /// Odd `m` with `2β ≡ 0`: both families cancel and every lift is zero.
    pub fn vanishes(&self) -> bool {
        self.self_dual() && self.m % 2 == 1
    }

    pub fn warning(&self) -> Option<String> {
        self.vanishes().then(|| {
            format!("m = {} is odd and 2β ≡ 0 (mod {}): the two families cancel, the lift is identically zero", self.m, 2 * self.n)
        })
    }

    /// `(β', sign)` for each family; the −β family carries `(-1)^m`.
    pub fn families(&self) -> Vec<(i64, f64)> {
        let sm = if self.m % 2 == 0 { 1.0 } else { -1.0 };
        if self.self_dual() {
            if 1.0 + sm == 0.0 {
                vec![]
            } else {
                vec![(self.beta, 1.0 + sm)]
            }
        } else {
            vec![(self.beta, 1.0), ((-self.beta).rem_euclid(2 * self.n), sm)]
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct EvalResult {
    #[serde(with = "crate::cx::as_obj")]
    pub value: C64,
    pub terms_used: usize,
    pub tail_bound: f64,
}

/// One summand: a form, its CM point and its family weight.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Term {
    pub q: QForm,
    pub w: UhpPoint,
    pub weight: f64,
}

/// Summands with `Q_z <= √|D| tmax` somewhere on a box, sorted by `(A,B,C)`.
#[derive(Clone, Debug)]
pub struct FormSet {
    pub terms: Vec<Term>,
    pub tmax: f64,
    pub bx: UvBox,
}

impl FormSet {
    pub fn enumerate(spec: &LiftSpec, bx: UvBox, tmax: f64) -> Self {
        let mut terms = Vec::new();
        for (b, s) in spec.families() {
            for q in enumerate_in_box(spec.n, b, spec.d, bx, tmax) {
                let w = q.cm_point().expect("enumerated forms are positive definite");
                terms.push(Term { q, w, weight: s });
            }
        }
        terms.sort_unstable_by_key(|t| t.q);
        Self { terms, tmax, bx }
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

/// What a lattice sum evaluates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Quantity {
    F,
    Phi,
    Comp(u32),
    DeltaPhi,
    Green,
    MathcalF,
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

fn i_pow(k: u32) -> C64 {
    match k % 4 {
        0 => C64::new(1.0, 0.0),
        1 => C64::new(0.0, 1.0),
        2 => C64::new(-1.0, 0.0),
        _ => C64::new(0.0, -1.0),
    }
}

/// Constants of the lattice sums for one spec.
#[derive(Clone, Debug)]
pub struct Constants {
    /// `|D|^{(m+1)/2}/(2N^{m/2})`
    pub f: f64,
    /// `m!/(8√N π i)^m`
    pub phi: C64,
    /// `2i|r|^{m/2} m!/((-1)^m (4π)^{m+1})`
    pub delta: C64,
    /// `-|D|^{m/2} m!/((8i)^m π^{m+1})`, multiplying `f`
    pub delta_via_f: C64,
    /// `|r|^{m/2} m!/(-πi)^m`: `comp_{2m} = K Σ s_w G_w`
    pub comp: C64,
    /// `-(2m)!|r|^{m/2}/(m!(4π)^m)`: `comp_m` over this has log coefficient one
    pub green: f64,
    /// `1/(2(N|D|)^{m/2})`
    pub mathcal_f: f64,
}

impl Constants {
    pub fn new(spec: &LiftSpec) -> Self {
        let m = spec.m;
        let mf = m as f64;
        let n = spec.n as f64;
        let ad = spec.abs_d();
        let ar = spec.r().abs();
        let mfact = factorial(m);
        let sign_m = if m % 2 == 0 { 1.0 } else { -1.0 };
        Self {
            f: ad.powf((mf + 1.0) / 2.0) / (2.0 * n.powf(mf / 2.0)),
            phi: mfact / C64::new(0.0, 8.0 * n.sqrt() * PI).powu(m),
            delta: C64::new(0.0, 2.0) * ar.powf(mf / 2.0) * mfact / (sign_m * (4.0 * PI).powi(m as i32 + 1)),
            delta_via_f: -ad.powf(mf / 2.0) * mfact / (C64::new(0.0, 8.0).powu(m) * PI.powi(m as i32 + 1)),
            comp: ar.powf(mf / 2.0) * mfact / C64::new(0.0, -PI).powu(m),
            green: -factorial(2 * m) * ar.powf(mf / 2.0) / (mfact * (4.0 * PI).powi(m as i32)),
            mathcal_f: 1.0 / (2.0 * (n * ad).powf(mf / 2.0)),
        }
    }
}

/// The normalization in the stated form of the Green's function identity,
/// `(-1)^{m+1}|r|^{m/2} m!/(2π)^m`.
pub fn stated_green_constant(spec: &LiftSpec) -> f64 {
    let m = spec.m;
    let s = if m % 2 == 0 { -1.0 } else { 1.0 };
    s * spec.r().abs().powf(m as f64 / 2.0) * factorial(m) / (2.0 * PI).powi(m as i32)
}

/// `δ^j G_w` in closed form, `G_w = (z-w)^m (z-w̄)^m/(2t)^m B_m(cosh d)`.
fn delta_g(tab: &KernelTables, j: u32, z: UhpPoint, w: UhpPoint, c: f64, bm: f64) -> C64 {
    let m = tab.m;
    let t = w.v;
    let v = z.v;
    let prod = (z.z() - w.z()) * (z.z() - w.zbar());
    let ij = i_pow(j);
    let first = ij * prod.powu(m - j) / ((2.0 * t).powi((m - j) as i32) * 2f64.powi(j as i32))
        * (tab.ptil[j as usize].eval(c) * bm);
    let second = ij * (2f64.powi(m as i32) * t.powi((m + j) as i32) * v.powi(2 * m as i32) * tab.s[j as usize].eval(c))
        / (prod.powu(j) * prod.conj().powu(m));
    first - second
}

/// Evaluates one quantity from a fixed [`FormSet`].
#[derive(Clone, Debug)]
pub struct Evaluator {
    pub spec: LiftSpec,
    pub quantity: Quantity,
    pub set: FormSet,
    pub tail_bound: f64,
    consts: Constants,
    tables: KernelTables,
}

impl Evaluator {
    /// Chooses the truncation height from `spec.tol` for every point of `bx`.
    pub fn new(spec: &LiftSpec, quantity: Quantity, bx: UvBox) -> Result<Self> {
        let mut ev = Self::with_tmax(spec, quantity, bx, 1.0)?;
        if spec.families().is_empty() {
            ev.tail_bound = 0.0;
            return Ok(ev);
        }
        let (tmax, tail) = ev.choose_tmax()?;
        ev.set = FormSet::enumerate(spec, bx, tmax);
        ev.tail_bound = tail;
        Ok(ev)
    }

    /// Fixed truncation height; `tail_bound` is left at NaN.
    pub fn with_tmax(spec: &LiftSpec, quantity: Quantity, bx: UvBox, tmax: f64) -> Result<Self> {
        if spec.m < 1 {
            return Err(Error::NonConvergent("lattice sums need m >= 1".into()));
        }
        if let Quantity::Comp(p) = quantity {
            if p > 2 * spec.m {
                return Err(Error::Domain(format!("component index {p} exceeds 2m = {}", 2 * spec.m)));
            }
        }
        if !(bx.v0 > 0.0 && bx.u0 <= bx.u1 && bx.v0 <= bx.v1) {
            return Err(Error::InvalidPoint(format!("bad box {bx:?}")));
        }
        Ok(Self {
            spec: *spec,
            quantity,
            set: FormSet::enumerate(spec, bx, tmax),
            tail_bound: f64::NAN,
            consts: Constants::new(spec),
            tables: KernelTables::new(spec.m),
        })
    }

    pub fn at_point(spec: &LiftSpec, quantity: Quantity, z: UhpPoint) -> Result<Self> {
        Self::new(spec, quantity, UvBox::point(z))
    }

    /// Rigorous per-term envelope `|term| <= E c^{-m-1} (1 - c^{-2})^{-(m+2)/2}` where known.
    fn rigorous_envelope(&self, v: f64) -> Option<f64> {
        let m = self.spec.m;
        let n = self.spec.n as f64;
        let mf = m as f64;
        match self.quantity {
            Quantity::F => Some(1.0 / (2.0 * n.powf(mf / 2.0) * v.powi(m as i32 + 1))),
            Quantity::DeltaPhi => {
                let f = 1.0 / (2.0 * n.powf(mf / 2.0) * v.powi(m as i32 + 1));
                Some(f * self.consts.delta_via_f.norm())
            }
            Quantity::Phi => Some(
                2.0 * factorial(m) * self.spec.abs_d().powf(mf / 2.0)
                    / ((8.0 * n.sqrt() * PI).powi(m as i32) * v.powi(m as i32) * (2 * m + 1) as f64),
            ),
            _ => None,
        }
    }

    fn choose_tmax(&self) -> Result<(f64, f64)> {
        let spec = &self.spec;
        let m = spec.m;
        let mf = m as f64;
        let bx = self.set.bx;
        let t0 = 32.0;
        let pilot = FormSet::enumerate(spec, bx, t0);
        let sd = spec.abs_d().sqrt();

        // counting slope: measured on the pilot, and the area density
        let mut slope: f64 = 0.0;
        for tk in [2.0, 4.0, 8.0, 16.0, 32.0] {
            let cnt: f64 = pilot
                .terms
                .iter()
                .filter(|t| bx.min_q_z(&t.q) <= sd * tk)
                .map(|t| t.weight.abs())
                .sum();
            slope = slope.max(cnt / tk);
        }
        let mu = gamma0_index(spec.n) as f64;
        let mut hw = 0.0;
        for (b, s) in spec.families() {
            let cd = class_representatives(spec.n, b, spec.d)?;
            hw += s.abs() * cd.weighted_count();
        }
        let density = 6.0 / mu * hw;
        let cslope = 2.0 * slope.max(density);

        // per-term envelope at the corners and center of the box
        let probes = [
            UhpPoint { u: bx.u0, v: bx.v0 },
            UhpPoint { u: bx.u1, v: bx.v0 },
            UhpPoint { u: bx.u0, v: bx.v1 },
            UhpPoint { u: bx.u1, v: bx.v1 },
            UhpPoint { u: 0.5 * (bx.u0 + bx.u1), v: 0.5 * (bx.v0 + bx.v1) },
        ];
        let mut env: f64 = self.rigorous_envelope(bx.v0).unwrap_or(0.0);
        for z in probes {
            for t in &pilot.terms {
                let c = cosh_dist(z, t.w);
                if c < 1.5 {
                    continue;
                }
                let val = self.term(z, t, c)?.norm() / t.weight.abs();
                let e = val * c.powi(m as i32 + 1) * (1.0 - 1.0 / (c * c)).powf((mf + 2.0) / 2.0);
                env = env.max(2.0 * e);
            }
        }
        if env == 0.0 {
            return Ok((2.0, 0.0));
        }
        let tail = |t: f64| {
            let kappa = 1.0 / (1.0 - 1.0 / (t * t));
            cslope * env * (mf + 1.0) / mf * kappa.powf((mf + 3.0) / 2.0) * t.powf(-mf)
        };
        let mut t = (cslope * env * (mf + 1.0) / mf / spec.tol).powf(1.0 / mf).max(2.0);
        for _ in 0..60 {
            if tail(t) <= spec.tol {
                break;
            }
            t *= 1.1;
        }
        if t > TMAX_CAP || tail(t) > spec.tol {
            return Err(Error::NonConvergent(format!(
                "truncation height {t:.3e} needed for tol {:e} exceeds the cap {TMAX_CAP:e}",
                spec.tol
            )));
        }
        Ok((t, tail(t)))
    }

    /// Contribution of one summand at `z`, given `c = cosh d(z, w)`.
    fn term(&self, z: UhpPoint, t: &Term, c: f64) -> Result<C64> {
        let m = self.spec.m;
        let s = t.weight;
        let w = t.w;
        Ok(match self.quantity {
            Quantity::F => self.consts.f * s / t.q.eval(z.z()).powu(m + 1),
            Quantity::DeltaPhi => {
                let two_it = C64::new(0.0, 2.0 * w.v);
                let prod = (z.z() - w.z()) * (z.z() - w.zbar());
                self.consts.delta * s * (two_it / prod).powu(m + 1)
            }
            Quantity::Phi => {
                let bm = b_m(m, C64::new(c, 0.0))?.re;
                self.consts.phi * s * t.q.eval(z.zbar()).powu(m) / z.v.powi(2 * m as i32) * bm
            }
            Quantity::MathcalF => {
                let bm = b_m(m, C64::new(c, 0.0))?.re;
                self.consts.mathcal_f * s * t.q.eval(z.z()).powu(m) * (0.5 * bm)
            }
            Quantity::Comp(p) if p == m => self.consts.comp * s / factorial(m) * self.middle(z, w, c)?,
            Quantity::Comp(p) => {
                let bm = b_m(m, C64::new(c, 0.0))?.re;
                if p >= m {
                    let j = 2 * m - p;
                    self.consts.comp * s / factorial(j) * delta_g(&self.tables, j, z, w, c, bm)
                } else {
                    let j = p;
                    let hi = self.consts.comp * s / factorial(j) * delta_g(&self.tables, j, z, w, c, bm);
                    hi.conj() / (4.0 * z.v * z.v).powi((m - p) as i32)
                }
            }
            Quantity::Green => self.consts.comp * s / factorial(m) * self.middle(z, w, c)? / self.consts.green,
        })
    }

    /// `δ^m G_w = (i/2)^m (P̃_m^0 B_m - S_m^m/(c²-1)^m)`, evaluated as `(i/2)^m α_m Q_m(c)`:
    /// the two sides are equal but the left one cancels catastrophically near `w`.
    fn middle(&self, z: UhpPoint, w: UhpPoint, c: f64) -> Result<C64> {
        let m = self.spec.m;
        let q = if c < 3.0 {
            let dz = z.z() - w.z();
            legendre_q_shifted(m, dz.norm_sqr() / (2.0 * z.v * w.v))?
        } else {
            legendre_q(m, c)?
        };
        Ok(C64::new(0.0, 0.5).powu(m) * (green_legendre_constant(m) * q))
    }

    /// Sum over the form set at `z`.
    pub fn eval(&self, z: UhpPoint) -> Result<C64> {
        let parts: Vec<Result<C64>> = self
            .set
            .terms
            .par_chunks(CHUNK)
            .map(|ch| {
                let mut acc = C64::new(0.0, 0.0);
                for t in ch {
                    let c = cosh_dist(z, t.w);
                    if c - 1.0 < POLE_GUARD {
                        return Err(Error::SingularPoint(c - 1.0));
                    }
                    acc += self.term(z, t, c)?;
                }
                Ok(acc)
            })
            .collect();
        let mut total = C64::new(0.0, 0.0);
        for p in parts {
            total += p?;
        }
        Ok(total)
    }

    pub fn eval_result(&self, z: UhpPoint) -> Result<EvalResult> {
        Ok(EvalResult { value: self.eval(z)?, terms_used: self.set.len(), tail_bound: self.tail_bound })
    }
}

fn eval_at(spec: &LiftSpec, q: Quantity, z: UhpPoint) -> Result<EvalResult> {
    Evaluator::at_point(spec, q, z)?.eval_result(z)
}

/// `f_{m+1,β,D}(z)`.
pub fn f_mero(spec: &LiftSpec, z: UhpPoint) -> Result<EvalResult> {
    eval_at(spec, Quantity::F, z)
}

/// `Φ(z)`.
pub fn phi_lift(spec: &LiftSpec, z: UhpPoint) -> Result<EvalResult> {
    eval_at(spec, Quantity::Phi, z)
}

/// `comp_p = (4v²∂_z̄)^p Φ/p!`, `0 <= p <= 2m`.
pub fn lift_component(spec: &LiftSpec, p: u32, z: UhpPoint) -> Result<EvalResult> {
    eval_at(spec, Quantity::Comp(p), z)
}

/// `(2πi)^{-1} δ_{2m}Φ`, summed per CM point; `δ_k = ∂_z + k/(2iv)`.
pub fn delta_phi(spec: &LiftSpec, z: UhpPoint) -> Result<EvalResult> {
    eval_at(spec, Quantity::DeltaPhi, z)
}

/// [`delta_phi`] as a constant multiple of `f_{m+1,β,D}`.
pub fn delta_phi_via_f(spec: &LiftSpec, z: UhpPoint) -> Result<EvalResult> {
    let r = f_mero(spec, z)?;
    let k = Constants::new(spec).delta_via_f;
    Ok(EvalResult { value: r.value * k, terms_used: r.terms_used, tail_bound: r.tail_bound * k.norm() })
}

/// Middle component normalized so each CM point carries `ln|z-w|²` with coefficient one.
pub fn green_value(spec: &LiftSpec, z: UhpPoint) -> Result<f64> {
    Ok(eval_at(spec, Quantity::Green, z)?.value.re)
}

/// `𝓕_{β,D,-1}(z)`.
pub fn mathcal_f(spec: &LiftSpec, z: UhpPoint) -> Result<EvalResult> {
    eval_at(spec, Quantity::MathcalF, z)
}

/// `∫_0^{artanh(√|D|/Q_z)} sinh^{2m}θ dθ` by quadrature.
pub fn theta_integral(m: u32, q_z: f64, abs_d: f64) -> Result<f64> {
    let x = abs_d.sqrt() / q_z;
    if !(0.0..1.0).contains(&x) {
        return Err(Error::SingularPoint(q_z / abs_d.sqrt() - 1.0));
    }
    Ok(integrate_real(|th| th.sinh().powi(2 * m as i32), 0.0, x.atanh(), 1e-15, 1e-13).0)
}

/// `Σ_p (-4)^{m-p} p!(2m-p)!/(2m)! f_p conj(g_p) v^{2m-2p}`.
pub fn vv_pairing_density(f: &[C64], g: &[C64], v: f64) -> Result<C64> {
    if f.len() != g.len() || f.len() % 2 == 0 {
        return Err(Error::LengthMismatch(f.len(), g.len()));
    }
    let m = (f.len() / 2) as u32;
    let f2m = factorial(2 * m);
    let mut acc = C64::new(0.0, 0.0);
    for p in 0..=2 * m {
        let e = m as i32 - p as i32;
        let w = (-4f64).powi(e) * factorial(p) * factorial(2 * m - p) / f2m * v.powi(2 * e);
        acc += f[p as usize] * g[p as usize].conj() * w;
    }
    Ok(acc)
}

/// Truncation height that keeps the tail of `f_{m+1,β,D}(z)` below `spec.tol`.
pub fn truncation_bound(spec: &LiftSpec, z: UhpPoint) -> Result<f64> {
    Ok(Evaluator::at_point(spec, Quantity::F, z)?.set.tmax)
}

/// `umin:umax:nx,vmin:vmax:ny`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub u0: f64,
    pub u1: f64,
    pub nx: usize,
    pub v0: f64,
    pub v1: f64,
    pub ny: usize,
}

impl std::str::FromStr for Grid {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ConfigMismatch(format!("grid '{s}' is not umin:umax:nx,vmin:vmax:ny"));
        let (a, b) = s.split_once(',').ok_or_else(bad)?;
        let axis = |x: &str| -> Result<(f64, f64, usize)> {
            let p: Vec<&str> = x.split(':').collect();
            if p.len() != 3 {
                return Err(bad());
            }
            let lo = p[0].trim().parse::<f64>().map_err(|_| bad())?;
            let hi = p[1].trim().parse::<f64>().map_err(|_| bad())?;
            let n = p[2].trim().parse::<usize>().map_err(|_| bad())?;
            if n == 0 || hi < lo {
                return Err(bad());
            }
            Ok((lo, hi, n))
        };
        let (u0, u1, nx) = axis(a)?;
        let (v0, v1, ny) = axis(b)?;
        if !(v0 > 0.0) {
            return Err(Error::InvalidPoint(format!("grid reaches v = {v0} <= 0")));
        }
        Ok(Grid { u0, u1, nx, v0, v1, ny })
    }
}

impl Grid {
    fn axis(lo: f64, hi: f64, n: usize, k: usize) -> f64 {
        if n == 1 {
            lo
        } else {
            lo + (hi - lo) * k as f64 / (n - 1) as f64
        }
    }

    /// Row-major over `v`, then `u`.
    pub fn points(&self) -> Vec<UhpPoint> {
        let mut out = Vec::with_capacity(self.nx * self.ny);
        for j in 0..self.ny {
            for i in 0..self.nx {
                out.push(UhpPoint { u: Self::axis(self.u0, self.u1, self.nx, i), v: Self::axis(self.v0, self.v1, self.ny, j) });
            }
        }
        out
    }

    pub fn bbox(&self) -> UvBox {
        UvBox { u0: self.u0, u1: self.u1, v0: self.v0, v1: self.v1 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GridRow {
    pub u: f64,
    pub v: f64,
    pub re: f64,
    pub im: f64,
    pub tail_bound: f64,
    pub singular: bool,
}

/// Evaluates on every grid node from one shared form set; pole hits give NaN rows.
pub fn grid_eval(spec: &LiftSpec, quantity: Quantity, grid: &Grid) -> Result<Vec<GridRow>> {
    let ev = Evaluator::new(spec, quantity, grid.bbox())?;
    grid.points()
        .par_iter()
        .map(|&z| match ev.eval(z) {
            Ok(val) => Ok(GridRow { u: z.u, v: z.v, re: val.re, im: val.im, tail_bound: ev.tail_bound, singular: false }),
            Err(Error::SingularPoint(_)) => {
                Ok(GridRow { u: z.u, v: z.v, re: f64::NAN, im: f64::NAN, tail_bound: ev.tail_bound, singular: true })
            }
            Err(e) => Err(e),
        })
        .collect()
}

pub fn write_csv<W: std::io::Write>(rows: &[GridRow], mut out: W) -> std::io::Result<()> {
    writeln!(out, "u,v,re,im,tailBound,singular")?;
    for r in rows {
        let f = |x: f64| if x.is_nan() { "nan".to_string() } else { format!("{x:.17e}") };
        writeln!(out, "{},{},{},{},{},{}", r.u, r.v, f(r.re), f(r.im), f(r.tail_bound), r.singular as u8)?;
    }
    Ok(())
}
