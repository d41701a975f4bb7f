//! Kernel functions: incomplete beta, Gauss hypergeometric series, the `B_m`
//! kernel and its derivatives, the `P̃` and `S` polynomials, Legendre `Q_m`.

use num_complex::Complex64 as C64;
use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::poly::{Poly, Q128};
use crate::quad::integrate_real;

/// `B(p, q; T) = ∫_0^T ξ^(p-1) (1-ξ)^(q-1) dξ`.
pub fn incomplete_beta(p: f64, q: f64, t: f64) -> Result<f64> {
    if !(p > 0.0) {
        return Err(Error::Domain(format!("incomplete beta needs p > 0, got {p}")));
    }
    if !(0.0..1.0).contains(&t) {
        return Err(Error::Domain(format!("incomplete beta needs T in [0,1), got {t}")));
    }
    if t == 0.0 {
        return Ok(0.0);
    }
    let two_p = 2.0 * p;
    let (v, _) = if (two_p - two_p.round()).abs() < 1e-12 {
        // ξ = s²: integrand 2 s^(2p-1) (1-s²)^(q-1) is smooth
        let e = two_p.round() as i32 - 1;
        integrate_real(|s| 2.0 * s.powi(e) * (1.0 - s * s).powf(q - 1.0), 0.0, t.sqrt(), 1e-15, 1e-13)
    } else {
        // ξ = y^(1/p)
        let ip = p.recip();
        integrate_real(|y| ip * (1.0 - y.powf(ip)).powf(q - 1.0), 0.0, t.powf(p), 1e-15, 1e-13)
    };
    Ok(v)
}

fn is_neg_integer(x: f64) -> bool {
    x < 0.0 && x == x.round()
}

/// Gauss hypergeometric series `F(a, b, c; t)` for `|t| < 1 - 1e-6`.
pub fn gauss_hypergeometric(a: f64, b: f64, c: f64, t: f64) -> Result<f64> {
    if is_neg_integer(a) || is_neg_integer(b) || is_neg_integer(c) || c == 0.0 {
        return Err(Error::Domain(format!("hypergeometric parameters ({a}, {b}, {c}) hit a pole")));
    }
    if !(t.abs() < 1.0 - 1e-6) {
        return Err(Error::Domain(format!("|t| = {} too close to 1", t.abs())));
    }
    let mut term = 1.0;
    let mut sum = 1.0;
    for n in 0..100_000 {
        let nf = n as f64;
        term *= (a + nf) * (b + nf) / ((c + nf) * (nf + 1.0)) * t;
        sum += term;
        if term.abs() < 1e-15 * sum.abs() {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergent("hypergeometric series exceeded 1e5 terms".into()))
}

/// Coefficients `k_h` of `T/(T²-1)^(m-h)` and the log coefficient, from
/// `B_m = T/(m(T²-1)^m) - (2m-1)/(2m) B_(m-1)`.
fn bm_coefficients(m: u32) -> (Vec<f64>, f64) {
    let mut ks = Vec::with_capacity(m as usize);
    let mut prod = 1.0;
    for h in 0..m {
        let sign = if h % 2 == 0 { 1.0 } else { -1.0 };
        ks.push(sign * prod / (m - h) as f64);
        let k = (m - h) as f64;
        prod *= (2.0 * k - 1.0) / (2.0 * k);
    }
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    (ks, sign * prod)
}

/// Closed form of `B_m` (rational part plus logarithm), principal branch.
pub fn b_m_closed(m: u32, t: C64) -> Result<C64> {
    if !(t.re > 1.0) {
        return Err(Error::Domain(format!("B_m needs Re T > 1, got {t}")));
    }
    let (ks, kl) = bm_coefficients(m);
    let s = t * t - 1.0;
    let mut acc = C64::new(0.0, 0.0);
    for (h, k) in ks.iter().enumerate() {
        acc += t * *k / s.powu(m - h as u32);
    }
    Ok(acc + ((t + 1.0) / (t - 1.0)).ln() * kl)
}

/// `B_m(T) = 2 Σ_k binom(m+k,k) T^(-2m-1-2k)/(2m+1+2k)`, valid for `|T| > 1`.
fn b_m_series(m: u32, t: C64) -> C64 {
    let it2 = (t * t).inv();
    let mut pw = t.powu(2 * m + 1).inv();
    let mut binom = 1.0;
    let mut sum = C64::new(0.0, 0.0);
    for k in 0..10_000u32 {
        let term = pw * (2.0 * binom / (2 * m + 1 + 2 * k) as f64);
        sum += term;
        if term.norm() < 1e-17 * sum.norm() {
            break;
        }
        binom *= (m + k + 1) as f64 / (k + 1) as f64;
        pw *= it2;
    }
    sum
}

/// `B_m(T)` for complex `T` with `Re T > 1`.
pub fn b_m(m: u32, t: C64) -> Result<C64> {
    if !(t.re > 1.0) {
        return Err(Error::Domain(format!("B_m needs Re T > 1, got {t}")));
    }
    if t.norm() >= 2.0 {
        Ok(b_m_series(m, t))
    } else {
        b_m_closed(m, t)
    }
}

pub fn b_m_real(m: u32, t: f64) -> Result<f64> {
    Ok(b_m(m, C64::new(t, 0.0))?.re)
}

/// `∫_T^∞ 2 dξ/(ξ²-1)^(m+1)` by quadrature after `ξ = T/s`.
pub fn b_m_quadrature(m: u32, t: f64) -> Result<f64> {
    if !(t > 1.0) {
        return Err(Error::Domain(format!("B_m needs T > 1, got {t}")));
    }
    let t2 = t * t;
    let e = 2 * m as i32;
    let (v, _) = integrate_real(
        |s| 2.0 * t * s.powi(e) / (t2 - s * s).powi(m as i32 + 1),
        0.0,
        1.0,
        0.0,
        1e-14,
    );
    Ok(v)
}

/// Upper bound `2 T^(-2m-1)/((2m+1)(1-1/T²)^(m+1))` for `B_m(T)`.
pub fn b_m_tail_bound(m: u32, t: f64) -> f64 {
    2.0 * t.powi(-(2 * m as i32) - 1) / ((2 * m + 1) as f64 * (1.0 - 1.0 / (t * t)).powi(m as i32 + 1))
}

/// `B_m^(p)(T) = N_p(T)/(T²-1)^(m+p)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BmDerivative {
    pub m: u32,
    pub p: u32,
    pub numerator: Poly,
}

impl BmDerivative {
    pub fn eval(&self, t: C64) -> Result<C64> {
        if self.p == 0 {
            return b_m(self.m, t);
        }
        Ok(self.numerator.eval_c(t) / (t * t - 1.0).powu(self.m + self.p))
    }

    pub fn eval_real(&self, t: f64) -> Result<f64> {
        Ok(self.eval(C64::new(t, 0.0))?.re)
    }
}

/// Derivative evaluator; `p = 0` returns `B_m` itself.
pub fn b_m_derivative(m: u32, p: u32) -> BmDerivative {
    let mut num = Poly::from_ints(&[-2]);
    if p == 0 {
        return BmDerivative { m, p, numerator: Poly::zero() };
    }
    let x = Poly::from_ints(&[0, 1]);
    for k in 1..p {
        let two_mk = Q128::from_integer(2 * (m + k) as i128);
        num = num.deriv().mul(&Poly::xi2m1()).sub(&x.mul(&num).scale(two_mk));
    }
    BmDerivative { m, p, numerator: num }
}

/// `P̃_l^mt = (ξ²-1)^mt d^(l+mt)/dξ^(l+mt) (ξ²-1)^l`, exact.
pub fn legendre_tilde_p(l: u32, mt: i32) -> Result<Poly> {
    if mt.unsigned_abs() > l {
        return Err(Error::Domain(format!("|mt| = {} exceeds l = {l}", mt.abs())));
    }
    let mut d = Poly::xi2m1().pow(l);
    for _ in 0..(l as i32 + mt) {
        d = d.deriv();
    }
    if mt >= 0 {
        Ok(d.mul(&Poly::xi2m1().pow(mt as u32)))
    } else {
        d.div_exact(&Poly::xi2m1().pow((-mt) as u32))
            .ok_or_else(|| Error::Domain("inexact division in P̃".into()))
    }
}

/// `S_m^p` from `S^(p+1) = (ξ²-1) S^p' - 2pξ S^p + 2 P̃_m^(p-m)`, `S^0 = 0`.
pub fn s_poly(m: u32, p: u32) -> Result<Poly> {
    if p > m {
        return Err(Error::Domain(format!("S_m^p defined for p <= m (p = {p}, m = {m})")));
    }
    let mut s = Poly::zero();
    for k in 0..p {
        let ptil = legendre_tilde_p(m, k as i32 - m as i32)?;
        s = Poly::xi2m1()
            .mul(&s.deriv())
            .sub(&Poly::from_ints(&[0, 2 * k as i128]).mul(&s))
            .add(&ptil.scale(Q128::from_integer(2)));
    }
    Ok(s)
}

/// `P̃_m^0(t) B_m(t) - S_m^m(t)/(t²-1)^m`.
pub fn green_kernel(m: u32, t: f64) -> Result<f64> {
    if !(t > 1.0) {
        return Err(Error::Domain(format!("green kernel needs t > 1, got {t}")));
    }
    let p0 = legendre_tilde_p(m, 0)?;
    let s = s_poly(m, m)?;
    Ok(p0.eval(t) * b_m_real(m, t)? - s.eval(t) / (t * t - 1.0).powi(m as i32))
}

/// Classical Legendre polynomial `P_n(t)`.
pub fn legendre_p(n: u32, t: f64) -> f64 {
    let (mut p0, mut p1) = (1.0, t);
    if n == 0 {
        return 1.0;
    }
    for k in 1..n {
        let kf = k as f64;
        (p0, p1) = (p1, ((2.0 * kf + 1.0) * t * p1 - kf * p0) / (kf + 1.0));
    }
    p1
}

/// Legendre function of the second kind `Q_m(t)`, `t > 1`.
pub fn legendre_q(m: u32, t: f64) -> Result<f64> {
    if !(t > 1.0) {
        return Err(Error::Domain(format!("Q_m needs t > 1, got {t}")));
    }
    if t < 3.0 {
        legendre_q_shifted(m, t - 1.0)
    } else {
        // Q_m(t) = m! 2^(m+1) / ((2m+1)!! (2t)^(m+1)) F((m+1)/2, (m+2)/2; m+3/2; 1/t²)
        let mf = m as f64;
        let mut pref = 2.0;
        for k in 1..=m {
            pref *= 2.0 * k as f64 / (2 * k + 1) as f64;
        }
        pref /= (2.0 * t).powi(m as i32 + 1);
        Ok(pref * gauss_hypergeometric((mf + 1.0) / 2.0, (mf + 2.0) / 2.0, mf + 1.5, 1.0 / (t * t))?)
    }
}

/// `Q_m(1 + x)` for `0 < x < 2`, with `x` supplied exactly so the logarithm
/// keeps full relative accuracy as `x -> 0`.
pub fn legendre_q_shifted(m: u32, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::Domain(format!("Q_m needs t > 1, got 1 + {x}")));
    }
    let t = 1.0 + x;
    let w: f64 = (1..=m).map(|k| legendre_p(k - 1, t) * legendre_p(m - k, t) / k as f64).sum();
    Ok(0.5 * legendre_p(m, t) * ((2.0 + x) / x).ln() - w)
}

/// Neumann's integral `Q_m(t) = ½ ∫_{-1}^{1} P_m(x)/(t - x) dx`.
pub fn legendre_q_neumann(m: u32, t: f64) -> f64 {
    integrate_real(|x| 0.5 * legendre_p(m, x) / (t - x), -1.0, 1.0, 1e-15, 1e-13).0
}

/// `(-1)^m (2m)!/(2^(m-1) m!)`: the constant with `green_kernel = α_m Q_m`.
pub fn green_legendre_constant(m: u32) -> f64 {
    let mut v = 2.0;
    for k in 1..=m {
        v *= (m + k) as f64 / 2.0;
    }
    if m % 2 == 0 {
        v
    } else {
        -v
    }
}

/// Float coefficient tables for the per-summand closed forms of one `m`.
#[derive(Clone, Debug)]
pub struct KernelTables {
    pub m: u32,
    /// `P̃_m^(j-m)` for `j = 0..=m`
    pub ptil: Vec<Poly>,
    /// `S_m^j` for `j = 0..=m`
    pub s: Vec<Poly>,
}

impl KernelTables {
    pub fn new(m: u32) -> Self {
        let ptil = (0..=m).map(|j| legendre_tilde_p(m, j as i32 - m as i32).unwrap()).collect();
        let s = (0..=m).map(|j| s_poly(m, j).unwrap()).collect();
        Self { m, ptil, s }
    }
}

pub fn rational(n: i128, d: i128) -> Q128 {
    Ratio::new(n, d)
}
