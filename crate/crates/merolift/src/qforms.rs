//! Positive definite binary quadratic forms `AX^2 + BXY + CY^2` at level N:
//! CM points, the Γ₀(N) action, class representatives, stabilizers and
//! enumeration by hyperbolic height around a point.

use std::collections::HashMap;

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Mat2Z, UhpPoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct QForm {
    #[serde(rename = "A")]
    pub a: i64,
    #[serde(rename = "B")]
    pub b: i64,
    #[serde(rename = "C")]
    pub c: i64,
}

impl QForm {
    pub const fn new(a: i64, b: i64, c: i64) -> Self {
        Self { a, b, c }
    }

    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    /// `Q(z, 1) = A z^2 + B z + C`.
    #[inline]
    pub fn eval(&self, z: C64) -> C64 {
        (z * self.a as f64 + self.b as f64) * z + self.c as f64
    }

    /// `Q_z = (A|z|^2 + B u + C)/v`.
    #[inline]
    pub fn q_z(&self, z: UhpPoint) -> f64 {
        (self.a as f64 * (z.u * z.u + z.v * z.v) + self.b as f64 * z.u + self.c as f64) / z.v
    }

    pub fn cm_point(&self) -> Result<UhpPoint> {
        let d = self.discriminant();
        if d >= 0 || self.a <= 0 {
            return Err(Error::Domain(format!("{self:?} is not positive definite")));
        }
        let a2 = 2.0 * self.a as f64;
        Ok(UhpPoint { u: -self.b as f64 / a2, v: ((-d) as f64).sqrt() / a2 })
    }

    /// `γ·Q = Q ∘ γ⁻¹`, so that `cm_point(γ·Q) = γ·cm_point(Q)`.
    pub fn act(&self, g: &Mat2Z) -> QForm {
        // Q(dX - bY, -cX + aY)
        let (a, b, c, d) = (g.a, g.b, g.c, g.d);
        let (qa, qb, qc) = (self.a, self.b, self.c);
        QForm {
            a: qa * d * d - qb * c * d + qc * c * c,
            b: -2 * qa * d * b + qb * (a * d + b * c) - 2 * qc * c * a,
            c: qa * b * b - qb * a * b + qc * a * a,
        }
    }

    /// Level-N data check: `N | A` and `B ≡ β (mod 2N)`.
    pub fn is_level_valid(&self, n: i64, beta: i64) -> bool {
        self.a % n == 0 && (self.b - beta).rem_euclid(2 * n) == 0
    }
}

pub fn discriminant(q: &QForm) -> i64 {
    q.discriminant()
}

pub fn q_eval(q: &QForm, z: UhpPoint) -> C64 {
    q.eval(z.z())
}

pub fn q_z(q: &QForm, z: UhpPoint) -> f64 {
    q.q_z(z)
}

pub fn cm_point(q: &QForm) -> Result<UhpPoint> {
    q.cm_point()
}

pub fn gamma0_act(g: &Mat2Z, q: &QForm, n: i64) -> Result<QForm> {
    if g.a * g.d - g.b * g.c != 1 {
        return Err(Error::InvalidMatrix("determinant is not 1".into()));
    }
    if !g.in_gamma0(n) {
        return Err(Error::InvalidMatrix(format!("lower-left entry {} not divisible by {n}", g.c)));
    }
    Ok(q.act(g))
}

pub fn check_congruence(n: i64, beta: i64, d: i64) -> Result<()> {
    if n < 1 {
        return Err(Error::ConfigMismatch(format!("level N = {n} must be positive")));
    }
    if d >= 0 {
        return Err(Error::Domain(format!("discriminant {d} must be negative")));
    }
    if (d - beta * beta).rem_euclid(4 * n) != 0 {
        return Err(Error::Congruence { d, beta, modulus: 4 * n });
    }
    Ok(())
}

/// SL₂(Z)-reduction: returns `(Q0, g)` with `g·Q = Q0`, `|B0| <= A0 <= C0`,
/// and `B0 >= 0` whenever `|B0| = A0` or `A0 = C0`.
pub fn reduce_form(q: &QForm) -> (QForm, Mat2Z) {
    let mut f = *q;
    let mut g = Mat2Z::I;
    loop {
        if f.b.abs() > f.a {
            // T^n: B -> B - 2An
            let n = (f.b as f64 / (2.0 * f.a as f64)).round() as i64;
            let t = Mat2Z::translation(n);
            f = f.act(&t);
            g = t.mul(&g);
            continue;
        }
        if f.a > f.c {
            f = f.act(&Mat2Z::S);
            g = Mat2Z::S.mul(&g);
            continue;
        }
        break;
    }
    if f.b == -f.a {
        let t = Mat2Z::translation(-1);
        f = f.act(&t);
        g = t.mul(&g);
    }
    if f.a == f.c && f.b < 0 {
        f = f.act(&Mat2Z::S);
        g = Mat2Z::S.mul(&g);
    }
    (f, g)
}

/// All SL₂(Z)-reduced forms of discriminant `d` (primitive or not).
pub fn reduced_forms(d: i64) -> Vec<QForm> {
    let mut out = Vec::new();
    let amax = ((-d) as f64 / 3.0).sqrt().floor() as i64 + 1;
    for a in 1..=amax {
        for b in -a + 1..=a {
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (c == a && b < 0) {
                continue;
            }
            out.push(QForm::new(a, b, c));
        }
    }
    out
}

/// Automorphs in SL₂(Z) of a reduced form (includes ±I).
fn reduced_stabilizer(q0: &QForm) -> Vec<Mat2Z> {
    let mut out = Vec::new();
    for a in -2..=2i64 {
        for b in -2..=2i64 {
            for c in -2..=2i64 {
                for d in -2..=2i64 {
                    if a * d - b * c != 1 {
                        continue;
                    }
                    let g = Mat2Z { a, b, c, d };
                    if q0.act(&g) == *q0 {
                        out.push(g);
                    }
                }
            }
        }
    }
    out
}

/// Full SL₂(Z)-stabilizer of a positive definite form.
pub fn sl2z_stabilizer(q: &QForm) -> Vec<Mat2Z> {
    let (q0, g) = reduce_form(q);
    let gi = g.inverse();
    reduced_stabilizer(&q0).iter().map(|s| gi.mul(s).mul(&g)).collect()
}

/// Order of the stabilizer of `q` in Γ₀(N)/{±I}.
pub fn automorph_order(q: &QForm, n: i64) -> u32 {
    let k = sl2z_stabilizer(q).iter().filter(|s| s.in_gamma0(n)).count();
    (k / 2) as u32
}

fn p1_key(c: i64, d: i64, n: i64) -> (i64, i64) {
    let (c, d) = (c.rem_euclid(n), d.rem_euclid(n));
    let mut best = (c, d);
    for l in 1..n {
        if gcd(l, n) != 1 {
            continue;
        }
        let k = ((l * c).rem_euclid(n), (l * d).rem_euclid(n));
        if k < best {
            best = k;
        }
    }
    best
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Index of Γ₀(N) in SL₂(Z).
pub fn gamma0_index(n: i64) -> i64 {
    let mut idx = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            idx = idx / p * (p + 1);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        idx = idx / m * (m + 1);
    }
    idx
}

/// Representatives δ of the right cosets Γ₀(N)δ in SL₂(Z).
pub fn gamma0_cosets(n: i64) -> Vec<Mat2Z> {
    let target = gamma0_index(n) as usize;
    let mut seen: HashMap<(i64, i64), Mat2Z> = HashMap::new();
    let mut queue = std::collections::VecDeque::from([Mat2Z::I]);
    seen.insert(p1_key(0, 1, n), Mat2Z::I);
    let gens = [Mat2Z::T, Mat2Z::translation(-1), Mat2Z::S];
    let mut order = vec![Mat2Z::I];
    while let Some(g) = queue.pop_front() {
        if seen.len() == target {
            break;
        }
        for h in &gens {
            let x = g.mul(h);
            let k = p1_key(x.c, x.d, n);
            if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(k) {
                e.insert(x);
                order.push(x);
                queue.push_back(x);
            }
        }
    }
    order
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassEntry {
    #[serde(rename = "A")]
    pub a: i64,
    #[serde(rename = "B")]
    pub b: i64,
    #[serde(rename = "C")]
    pub c: i64,
    pub stab: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassData {
    #[serde(rename = "N")]
    pub n: i64,
    pub beta: i64,
    #[serde(rename = "D")]
    pub d: i64,
    pub classes: Vec<ClassEntry>,
}

impl ClassData {
    pub fn reps(&self) -> Vec<QForm> {
        self.classes.iter().map(|e| QForm::new(e.a, e.b, e.c)).collect()
    }

    pub fn stabilizer_orders(&self) -> Vec<u32> {
        self.classes.iter().map(|e| e.stab).collect()
    }

    /// `r = D/(4N)`.
    pub fn r(&self) -> f64 {
        self.d as f64 / (4.0 * self.n as f64)
    }

    /// Σ 1/|stabilizer| (Hurwitz class number at N = 1).
    pub fn weighted_count(&self) -> f64 {
        self.classes.iter().map(|e| 1.0 / e.stab as f64).sum()
    }
}

/// Γ₀(N)-orbit representatives of level-N forms of discriminant `d` with `B ≡ β (mod 2N)`.
pub fn class_representatives(n: i64, beta: i64, d: i64) -> Result<ClassData> {
    check_congruence(n, beta, d)?;
    let beta = beta.rem_euclid(2 * n);
    let cosets = gamma0_cosets(n);
    let mut classes = Vec::new();
    for q0 in reduced_forms(d) {
        let stab = reduced_stabilizer(&q0);
        let mut kept: Vec<Mat2Z> = Vec::new();
        for delta in &cosets {
            let q = q0.act(delta);
            if !q.is_level_valid(n, beta) {
                continue;
            }
            let dup = kept.iter().any(|d1| {
                let d1i = d1.inverse();
                stab.iter().any(|s| delta.mul(s).mul(&d1i).in_gamma0(n))
            });
            if dup {
                continue;
            }
            kept.push(*delta);
            let k = stab.iter().filter(|s| delta.mul(s).mul(&delta.inverse()).in_gamma0(n)).count();
            classes.push(ClassEntry { a: q.a, b: q.b, c: q.c, stab: (k / 2) as u32 });
        }
    }
    Ok(ClassData { n, beta, d, classes })
}

/// Some γ ∈ Γ₀(N) with `γ·q = r`, if the forms are equivalent.
pub fn gamma0_equivalence(q: &QForm, r: &QForm, n: i64) -> Option<Mat2Z> {
    if q.discriminant() != r.discriminant() {
        return None;
    }
    let (q0, gq) = reduce_form(q);
    let (r0, gr) = reduce_form(r);
    if q0 != r0 {
        return None;
    }
    let gri = gr.inverse();
    reduced_stabilizer(&q0).into_iter().map(|s| gri.mul(&s).mul(&gq)).find(|g| g.in_gamma0(n))
}

/// Position of the class of `q` within `classes`.
pub fn class_index(classes: &ClassData, q: &QForm) -> Option<usize> {
    classes.reps().iter().position(|r| gamma0_equivalence(q, r, classes.n).is_some())
}

/// `λ = (B/2√N, C/√N; −A/√N, −B/2√N)`.
pub fn lattice_vector(q: &QForm, n: i64) -> [[f64; 2]; 2] {
    let s = (n as f64).sqrt();
    [
        [q.b as f64 / (2.0 * s), q.c as f64 / s],
        [-(q.a as f64) / s, -(q.b as f64) / (2.0 * s)],
    ]
}

/// `−2 det λ`, which equals `D/(2N)`.
pub fn lattice_norm(l: &[[f64; 2]; 2]) -> f64 {
    -2.0 * (l[0][0] * l[1][1] - l[0][1] * l[1][0])
}

// ---------------------------------------------------------------------------
// square roots of D modulo 4A

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    r
}

fn inv_mod(a: i64, m: i64) -> i64 {
    let (mut r0, mut r1) = (a.rem_euclid(m), m);
    let (mut s0, mut s1) = (1i64, 0i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    s0.rem_euclid(m)
}

fn tonelli_shanks(n: u64, p: u64) -> Option<u64> {
    let n = n % p;
    if n == 0 {
        return Some(0);
    }
    if powmod(n, (p - 1) / 2, p) != 1 {
        return None;
    }
    let (mut q, mut s) = (p - 1, 0);
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while powmod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = powmod(z, q, p);
    let mut t = powmod(n, q, p);
    let mut r = powmod(n, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut tt = t;
        while tt != 1 {
            tt = mulmod(tt, tt, p);
            i += 1;
        }
        let b = powmod(c, 1 << (m - i - 1), p);
        m = i;
        c = mulmod(b, b, p);
        t = mulmod(t, c, p);
        r = mulmod(r, b, p);
    }
    Some(r)
}

/// Cached roots of `x^2 ≡ D` modulo prime powers, combined by CRT.
struct RootFinder {
    d: i64,
    spf: Vec<u32>,
    cache: HashMap<u64, Vec<u64>>,
}

impl RootFinder {
    fn new(d: i64, limit: u64) -> Self {
        let lim = limit as usize + 1;
        let mut spf = vec![0u32; lim.max(2)];
        for i in 2..lim {
            if spf[i] == 0 {
                let mut j = i;
                while j < lim {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        Self { d, spf, cache: HashMap::new() }
    }

    fn prime_power_roots(&mut self, p: u64, q: u64) -> Vec<u64> {
        if let Some(r) = self.cache.get(&q) {
            return r.clone();
        }
        let dm = self.d.rem_euclid(q as i64) as u64;
        let roots = if p == 2 || (self.d.rem_euclid(p as i64)) == 0 {
            (0..q).filter(|&x| mulmod(x, x, q) == dm).collect()
        } else {
            match tonelli_shanks(dm % p, p) {
                None => vec![],
                Some(x0) => {
                    // Newton lift to p^e
                    let qi = q as i64;
                    let mut x = x0 as i64;
                    let mut pk = p as i64;
                    while pk < qi {
                        pk = (pk * pk).min(qi);
                        let fx = ((x as i128 * x as i128 - self.d as i128).rem_euclid(pk as i128)) as i64;
                        let inv = inv_mod(2 * x, pk);
                        x = (x - ((fx as i128 * inv as i128) % pk as i128) as i64).rem_euclid(pk);
                    }
                    let x = x.rem_euclid(qi) as u64;
                    let mut v = vec![x, (q - x) % q];
                    v.sort_unstable();
                    v.dedup();
                    v
                }
            }
        };
        self.cache.insert(q, roots.clone());
        roots
    }

    /// Residues `B mod 2A` with `B^2 ≡ D (mod 4A)`.
    fn roots_mod_2a(&mut self, a: u64) -> Vec<u64> {
        let m = 4 * a;
        let mut rest = m;
        let mut acc: Vec<u64> = vec![0];
        let mut modulus = 1u64;
        while rest > 1 {
            let p = self.spf[rest as usize] as u64;
            let mut q = 1;
            while rest % p == 0 {
                rest /= p;
                q *= p;
            }
            let rs = self.prime_power_roots(p, q);
            if rs.is_empty() {
                return vec![];
            }
            let inv = inv_mod(modulus as i64, q as i64) as u64;
            let mut next = Vec::with_capacity(acc.len() * rs.len());
            for &x in &acc {
                for &y in &rs {
                    let k = mulmod((y + q - x % q) % q, inv, q);
                    next.push(x + modulus * k);
                }
            }
            modulus *= q;
            acc = next;
        }
        let mut out: Vec<u64> = acc.into_iter().map(|x| x % (2 * a)).collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Rectangle `[u0,u1] x [v0,v1]` in the upper half-plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UvBox {
    pub u0: f64,
    pub u1: f64,
    pub v0: f64,
    pub v1: f64,
}

impl UvBox {
    pub fn point(z: UhpPoint) -> Self {
        Self { u0: z.u, u1: z.u, v0: z.v, v1: z.v }
    }

    /// Minimum of `Q_z` over the box.
    pub fn min_q_z(&self, q: &QForm) -> f64 {
        let a = q.a as f64;
        let uc = -(q.b as f64) / (2.0 * a);
        let du = uc.clamp(self.u0, self.u1) - uc;
        let k = a * du * du + (-(q.discriminant()) as f64) / (4.0 * a);
        let v = (k / a).sqrt().clamp(self.v0, self.v1);
        (k + a * v * v) / v
    }
}

/// Forms of class β with `Q_z <= √|D| tmax` for some `z` in the box, sorted by (A,B,C).
pub fn enumerate_in_box(n: i64, beta: i64, d: i64, bx: UvBox, tmax: f64) -> Vec<QForm> {
    let s = ((-d) as f64).sqrt() * tmax;
    let amax = (s / bx.v0).floor() as i64;
    let beta = beta.rem_euclid(2 * n);
    let mut out = Vec::new();
    if amax < n {
        return out;
    }
    let mut rf = RootFinder::new(d, 4 * amax as u64);
    let absd = (-d) as f64;
    let mut a = n;
    while a <= amax {
        let af = a as f64;
        if s < af * bx.v0 {
            break;
        }
        // (u + B/2A)^2 <= (v/A)(s - A v - |D|/(4 A v)), a concave quadratic in v
        let vs = (s / (2.0 * af)).clamp(bx.v0, bx.v1);
        let h = ((s * vs - af * vs * vs) / af - absd / (4.0 * af * af)).max(0.0) + 1e-12;
        let r = h.sqrt();
        let bmin = (2.0 * af * (-bx.u1 - r)).floor() as i64 - 1;
        let bmax = (2.0 * af * (-bx.u0 + r)).ceil() as i64 + 1;
        let two_a = 2 * a;
        let roots = rf.roots_mod_2a(a as u64);
        for &r0 in &roots {
            let r0 = r0 as i64;
            if (r0 - beta).rem_euclid(2 * n) != 0 {
                continue;
            }
            let mut b = bmin + (r0 - bmin).rem_euclid(two_a);
            while b <= bmax {
                let c = (b * b - d) / (4 * a);
                let q = QForm::new(a, b, c);
                if bx.min_q_z(&q) <= s {
                    out.push(q);
                }
                b += two_a;
            }
        }
        a += n;
    }
    out.sort_unstable();
    out
}

/// Exactly the forms of class β with `Q_z <= √|D| tmax`.
pub fn enumerate_by_height(n: i64, beta: i64, d: i64, z: UhpPoint, tmax: f64) -> Vec<QForm> {
    enumerate_in_box(n, beta, d, UvBox::point(z), tmax)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discriminants() {
        assert_eq!(QForm::new(1, 1, 1).discriminant(), -3);
        assert_eq!(QForm::new(1, 0, 1).discriminant(), -4);
        assert_eq!(QForm::new(2, 1, 3).discriminant(), -23);
    }

    #[test]
    fn evaluations() {
        let i = UhpPoint::new(0.0, 1.0).unwrap();
        assert!(q_eval(&QForm::new(1, 0, 1), i).norm() < 1e-15);
        assert!((q_eval(&QForm::new(1, 1, 1), i) - C64::new(0.0, 1.0)).norm() < 1e-15);
        let z2 = UhpPoint::new(0.0, 2.0).unwrap();
        assert!((q_eval(&QForm::new(1, 0, 1), z2) - C64::new(-3.0, 0.0)).norm() < 1e-15);
        assert!((q_z(&QForm::new(1, 0, 1), i) - 2.0).abs() < 1e-15);
        assert!((q_z(&QForm::new(1, 0, 1), z2) - 2.5).abs() < 1e-15);
        let q = QForm::new(1, 1, 1);
        assert!((q_z(&q, q.cm_point().unwrap()) - 3f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn cm_points() {
        let w = QForm::new(2, 2, 1).cm_point().unwrap();
        assert!((w.u + 0.5).abs() < 1e-15 && (w.v - 0.5).abs() < 1e-15);
        assert!(QForm::new(1, 3, 1).cm_point().is_err());
        assert!(QForm::new(-1, 0, -1).cm_point().is_err());
    }

    #[test]
    fn translation_moves_cm_point_right() {
        let q = gamma0_act(&Mat2Z::T, &QForm::new(1, 0, 1), 1).unwrap();
        assert_eq!(q.discriminant(), -4);
        let w = q.cm_point().unwrap();
        assert!((w.u - 1.0).abs() < 1e-15 && (w.v - 1.0).abs() < 1e-15);
    }

    #[test]
    fn gamma0_act_rejects_wrong_level() {
        assert!(gamma0_act(&Mat2Z::S, &QForm::new(2, 1, 1), 2).is_err());
    }

    #[test]
    fn class_examples() {
        let c = class_representatives(1, 0, -4).unwrap();
        assert_eq!(c.reps(), vec![QForm::new(1, 0, 1)]);
        assert_eq!(c.stabilizer_orders(), vec![2]);
        let c = class_representatives(1, 1, -3).unwrap();
        assert_eq!(c.reps(), vec![QForm::new(1, 1, 1)]);
        let mut reps = class_representatives(1, 1, -23).unwrap().reps();
        reps.sort();
        assert_eq!(reps, vec![QForm::new(1, 1, 6), QForm::new(2, -1, 3), QForm::new(2, 1, 3)]);
        assert!(matches!(class_representatives(1, 1, -4), Err(Error::Congruence { .. })));
    }

    #[test]
    fn automorph_examples() {
        assert_eq!(automorph_order(&QForm::new(1, 1, 1), 1), 3);
        assert_eq!(automorph_order(&QForm::new(1, 0, 1), 1), 2);
        assert_eq!(automorph_order(&QForm::new(1, 1, 6), 1), 1);
        // a translate of (1,0,1) keeps its stabilizer size
        assert_eq!(automorph_order(&QForm::new(1, -2, 2), 1), 2);
    }

    #[test]
    fn lattice_examples() {
        let l = lattice_vector(&QForm::new(1, 0, 1), 1);
        assert_eq!(l, [[0.0, 1.0], [-1.0, 0.0]]);
        assert!((lattice_norm(&l) + 2.0).abs() < 1e-15);
        assert!((lattice_norm(&lattice_vector(&QForm::new(1, 1, 1), 1)) + 1.5).abs() < 1e-15);
    }

    #[test]
    fn height_enumeration_small() {
        let i = UhpPoint::new(0.0, 1.0).unwrap();
        assert_eq!(enumerate_by_height(1, 0, -4, i, 1.0), vec![QForm::new(1, 0, 1)]);
        assert_eq!(enumerate_by_height(1, 0, -4, i, 1.2), vec![QForm::new(1, 0, 1)]);
    }

    #[test]
    fn coset_counts() {
        for n in 1..=12 {
            assert_eq!(gamma0_cosets(n).len() as i64, gamma0_index(n), "N = {n}");
        }
    }

    #[test]
    fn roots_match_bruteforce() {
        let d = -23;
        let mut rf = RootFinder::new(d, 4 * 300);
        for a in 1..300u64 {
            let want: Vec<u64> =
                (0..2 * a).filter(|&b| ((b * b) as i64 - d).rem_euclid(4 * a as i64) == 0).collect();
            assert_eq!(rf.roots_mod_2a(a), want, "A = {a}");
        }
    }
}
