//! Laurent data in the chart `ζ = A_w(z)`: the coefficients `a_n(w)` of
//! `f_{m+1,β,D}`, the quadratic `ψ(w,w₀,ζ)`, the products `c_n` and the Taylor
//! coefficients `α_{p,0}` of the `B_m` factor.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::geometry::{aw_inverse, aw_map, cosh_dist, UhpPoint};
use crate::lift::{Evaluator, FormSet, LiftSpec, Quantity, POLE_GUARD};
use crate::qforms::UvBox;
use crate::specfun::b_m_derivative;

/// `Σ_{n >= n_min} coeffs[n - n_min] ζ^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentSeries {
    pub n_min: i64,
    pub coeffs: Vec<C64>,
    pub convergence_radius: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct LaurentWire {
    n_min: i64,
    /// `[re_0, im_0, re_1, im_1, ...]`
    coeffs: Vec<f64>,
    convergence_radius: f64,
}

impl Serialize for LaurentSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        LaurentWire {
            n_min: self.n_min,
            coeffs: self.coeffs.iter().flat_map(|c| [c.re, c.im]).collect(),
            convergence_radius: self.convergence_radius,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentSeries {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = LaurentWire::deserialize(d)?;
        if w.coeffs.len() % 2 != 0 {
            return Err(serde::de::Error::custom("interleaved coefficient array has odd length"));
        }
        Ok(Self {
            n_min: w.n_min,
            coeffs: w.coeffs.chunks(2).map(|p| C64::new(p[0], p[1])).collect(),
            convergence_radius: w.convergence_radius,
        })
    }
}

impl LaurentSeries {
    pub fn n_max(&self) -> i64 {
        self.n_min + self.coeffs.len() as i64 - 1
    }

    /// Coefficient of `ζ^n`, zero outside the window.
    pub fn coeff(&self, n: i64) -> C64 {
        let k = n - self.n_min;
        if k < 0 || k >= self.coeffs.len() as i64 {
            C64::new(0.0, 0.0)
        } else {
            self.coeffs[k as usize]
        }
    }

    pub fn eval(&self, zeta: C64) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * zeta + c;
        }
        acc * zeta.powi(self.n_min as i32)
    }
}

/// `(1 - ρζ)^{-(k)}` Taylor coefficients `binom(k-1+j, j) ρ^j`, `j < len`.
fn neg_binomial(k: u32, rho: C64, len: usize) -> Vec<C64> {
    let mut out = Vec::with_capacity(len);
    let mut c = 1.0;
    let mut pw = C64::new(1.0, 0.0);
    for j in 0..len {
        out.push(pw * c);
        c *= (k as f64 + j as f64) / (j as f64 + 1.0);
        pw *= rho;
    }
    out
}

fn convolve(a: &[C64], b: &[C64], len: usize) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); len];
    for (i, x) in a.iter().enumerate().take(len) {
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// Euclidean box containing `{z : |A_w(z)| <= ρ}`.
pub fn chart_disc_box(w: UhpPoint, rho: f64) -> UvBox {
    let t = w.v;
    let yc = t * (1.0 + rho * rho) / (1.0 - rho * rho);
    let r = 2.0 * t * rho / (1.0 - rho * rho);
    UvBox { u0: w.u - r, u1: w.u + r, v0: yc - r, v1: yc + r }
}

/// Distance in the chart from `w` to the nearest other CM point of the spec.
pub fn chart_radius(spec: &LiftSpec, w: UhpPoint) -> f64 {
    let mut tmax = 8.0;
    loop {
        let set = FormSet::enumerate(spec, UvBox::point(w), tmax);
        let r = set
            .terms
            .iter()
            .filter(|t| cosh_dist(w, t.w) - 1.0 >= POLE_GUARD)
            .map(|t| aw_map(w, t.w).norm())
            .fold(f64::INFINITY, f64::min);
        if r.is_finite() || tmax > 1e4 {
            return r.min(1.0);
        }
        tmax *= 4.0;
    }
}

/// Laurent coefficients `a_n(w)`, `n <= n_max`, of `f_{m+1,β,D}` from a given form set.
pub fn laurent_of_f_with_set(spec: &LiftSpec, set: &FormSet, w: UhpPoint, n_max: i64) -> Result<LaurentSeries> {
    let m = spec.m;
    let t = w.v;
    let len = (n_max + 1).max(0) as usize;
    let pref = C64::new(0.0, 2.0 * t).powu(m + 1) / (2.0 * (spec.n as f64).powf(m as f64 / 2.0));
    let mut regular = vec![C64::new(0.0, 0.0); len];
    let mut principal = C64::new(0.0, 0.0);
    let mut radius = f64::INFINITY;
    for term in &set.terms {
        let wq = term.w;
        if cosh_dist(w, wq) - 1.0 < POLE_GUARD {
            principal += term.weight * C64::new(0.0, 1.0).powi(-(m as i32 + 1)) / (2.0 * (spec.n as f64).powf(m as f64 / 2.0));
            continue;
        }
        radius = radius.min(aw_map(w, wq).norm());
        let a1 = w.z() - wq.z();
        let b1 = w.zbar() - wq.z();
        let a2 = w.z() - wq.zbar();
        let b2 = w.zbar() - wq.zbar();
        let k = (2.0 * wq.v).powi(m as i32 + 1) * term.weight / (a1 * a2).powu(m + 1);
        let s1 = neg_binomial(m + 1, b1 / a1, len);
        let s2 = neg_binomial(m + 1, b2 / a2, len);
        for (n, c) in convolve(&s1, &s2, len).into_iter().enumerate() {
            regular[n] += c * k;
        }
    }
    let radius = radius.min(1.0);
    if principal.norm() > 0.0 {
        let mut coeffs = vec![C64::new(0.0, 0.0); m as usize + 1];
        coeffs[0] = principal;
        coeffs.extend(regular.iter().map(|c| c * pref));
        Ok(LaurentSeries { n_min: -(m as i64) - 1, coeffs, convergence_radius: radius })
    } else {
        Ok(LaurentSeries { n_min: 0, coeffs: regular.iter().map(|c| c * pref).collect(), convergence_radius: radius })
    }
}

/// Truncated lattice sum used for the expansion at `w`, and its tail on `|ζ| = ρ`.
pub fn expansion_set(spec: &LiftSpec, w: UhpPoint) -> Result<(FormSet, f64, f64)> {
    let radius = chart_radius(spec, w);
    let rho = 0.5 * radius;
    let m = spec.m;
    let amp = (2.0 * w.v).powi(m as i32 + 1) / (1.0 - rho).powi(2 * m as i32 + 2);
    let ev = Evaluator::new(&spec.with_tol(spec.tol / amp), Quantity::F, chart_disc_box(w, rho))?;
    let tail = ev.tail_bound * amp;
    Ok((ev.set, rho, tail))
}

/// Laurent coefficients of `f_{m+1,β,D}` at `w` in the convention
/// `f(z) = (1-ζ)^{2m+2}/(2it)^{m+1} Σ a_n ζ^n`.
pub fn laurent_of_f(spec: &LiftSpec, w: UhpPoint, n_max: i64) -> Result<LaurentSeries> {
    if n_max < 0 {
        return Err(Error::Domain(format!("n_max = {n_max} must be >= 0")));
    }
    let (set, _, tail) = expansion_set(spec, w)?;
    if tail > spec.tol {
        return Err(Error::NonConvergent(format!("expansion tail {tail:e} exceeds tol {:e}", spec.tol)));
    }
    laurent_of_f_with_set(spec, &set, w, n_max)
}

/// Cauchy extraction of `a_n`, `n_min <= n <= n_max`, from samples of a weight
/// `2m+2` evaluator on `|ζ| = ρ` and `ρ/2`.
pub fn laurent_contour_oracle<F>(eval: F, m: u32, w: UhpPoint, rho: f64, n_min: i64, n_max: i64) -> Result<Vec<C64>>
where
    F: Fn(UhpPoint) -> Result<C64>,
{
    if !(rho > 0.0 && rho < 1.0) || n_max < n_min {
        return Err(Error::Domain(format!("bad contour radius {rho} or range [{n_min}, {n_max}]")));
    }
    let span = (n_max - n_min + 1) as usize;
    let k = (4 * span).max(256).next_power_of_two();
    let two_it = C64::new(0.0, 2.0 * w.v);
    let extract = |r: f64| -> Result<Vec<C64>> {
        let mut samples = Vec::with_capacity(k);
        for j in 0..k {
            let phi = 2.0 * PI * j as f64 / k as f64;
            let zeta = C64::from_polar(r, phi);
            let z = aw_inverse(w, zeta)?;
            samples.push(eval(z)? * two_it.powu(m + 1) / (1.0 - zeta).powu(2 * m + 2));
        }
        Ok((n_min..=n_max)
            .map(|n| {
                let mut acc = C64::new(0.0, 0.0);
                for (j, s) in samples.iter().enumerate() {
                    let phi = 2.0 * PI * (j as f64) * (n as f64) / k as f64;
                    acc += s * C64::from_polar(1.0, -phi);
                }
                acc / k as f64 * r.powi(-(n as i32))
            })
            .collect())
    };
    let a = extract(rho)?;
    let b = extract(0.5 * rho)?;
    let scale = a
        .iter()
        .zip(n_min..)
        .map(|(c, n)| c.norm() * rho.powi(n as i32))
        .fold(0.0, f64::max);
    let mut gap: f64 = 0.0;
    for ((x, y), n) in a.iter().zip(&b).zip(n_min..) {
        gap = gap.max((x - y).norm() * rho.powi(n as i32));
    }
    if gap > 1e-8 * scale {
        return Err(Error::AliasingDetected(gap / scale));
    }
    Ok(a)
}

/// Coefficients of `ψ(w,w₀,ζ) = (w-w₀-(w̄-w₀)ζ)(w-w̄₀-(w̄-w̄₀)ζ)`, ascending.
pub fn psi_poly(w: UhpPoint, w0: UhpPoint) -> Result<[C64; 3]> {
    if cosh_dist(w, w0) - 1.0 < 1e-14 {
        return Err(Error::Domain("ψ needs w != w0".into()));
    }
    let a1 = w.z() - w0.z();
    let b1 = w.zbar() - w0.z();
    let a2 = w.z() - w0.zbar();
    let b2 = w.zbar() - w0.zbar();
    Ok([a1 * a2, -(a1 * b2 + b1 * a2), b1 * b2])
}

/// `Σ c_n ζ^n = |r|^{m/2} ψ^m/(2it₀t)^m Σ a_n ζ^n` on the window of `a`.
pub fn c_coeffs(m: u32, r: f64, a: &LaurentSeries, w: UhpPoint, w0: UhpPoint) -> Result<LaurentSeries> {
    let psi = psi_poly(w, w0)?;
    let mut pm = vec![C64::new(1.0, 0.0)];
    for _ in 0..m {
        let mut next = vec![C64::new(0.0, 0.0); pm.len() + 2];
        for (i, x) in pm.iter().enumerate() {
            for (j, y) in psi.iter().enumerate() {
                next[i + j] += x * y;
            }
        }
        pm = next;
    }
    let k = r.abs().powf(m as f64 / 2.0) / C64::new(0.0, 2.0 * w0.v * w.v).powu(m);
    let coeffs = convolve(&a.coeffs, &pm, a.coeffs.len()).into_iter().map(|c| c * k).collect();
    Ok(LaurentSeries { n_min: a.n_min, coeffs, convergence_radius: a.convergence_radius })
}

/// `(-1)^p B_m^{(p)}(cosh d(w,w₀)) (w̄-w₀)^p (w̄-w̄₀)^p/(p!(2t₀t)^p)`.
pub fn alpha_p0(m: u32, p: u32, w: UhpPoint, w0: UhpPoint) -> Result<C64> {
    let c0 = cosh_dist(w, w0);
    if c0 - 1.0 < 1e-14 {
        return Err(Error::Domain("α_{p,0} needs w != w0".into()));
    }
    let slope = (w.zbar() - w0.z()) * (w.zbar() - w0.zbar()) / (2.0 * w0.v * w.v);
    let d = b_m_derivative(m, p).eval(C64::new(c0, 0.0))?;
    let pf: f64 = (1..=p).map(f64::from).product();
    Ok(d * (-slope).powu(p) / pf)
}

/// `(w̄-w₀)(w̄-w̄₀)/(2t₀t)`, the rate at which the `B_m` argument moves with `ζ`.
pub fn b_slope(w: UhpPoint, w0: UhpPoint) -> C64 {
    (w.zbar() - w0.z()) * (w.zbar() - w0.zbar()) / (2.0 * w0.v * w.v)
}
