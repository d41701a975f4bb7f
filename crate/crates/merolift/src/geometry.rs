//! Upper half-plane points, Möbius maps, hyperbolic distance and the disc chart
//! `A_w(z) = (z - w)/(z - conj w)`.

use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct UhpPoint {
    pub u: f64,
    pub v: f64,
}

impl UhpPoint {
    pub fn new(u: f64, v: f64) -> Result<Self> {
        if !(u.is_finite() && v.is_finite()) || v <= 0.0 {
            return Err(Error::InvalidPoint(format!("{u}+{v}i")));
        }
        Ok(Self { u, v })
    }

    pub fn from_complex(z: C64) -> Result<Self> {
        Self::new(z.re, z.im)
    }

    #[inline]
    pub fn z(&self) -> C64 {
        C64::new(self.u, self.v)
    }

    #[inline]
    pub fn zbar(&self) -> C64 {
        C64::new(self.u, -self.v)
    }
}

impl std::fmt::Display for UhpPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}{:+}i", self.u, self.v)
    }
}

/// Real 2x2 matrix of determinant one.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2R {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Mat2R {
    /// Rescales to determinant exactly one; rejects |det - 1| > 1e-9.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let det = a * d - b * c;
        if !det.is_finite() || (det - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidMatrix(format!("det = {det}")));
        }
        let s = det.sqrt().recip();
        Ok(Self { a: a * s, b: b * s, c: c * s, d: d * s })
    }

    pub fn identity() -> Self {
        Self { a: 1.0, b: 0.0, c: 0.0, d: 1.0 }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn inverse(&self) -> Self {
        Self { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    /// Factor of automorphy `j(γ, z) = cz + d`.
    #[inline]
    pub fn j(&self, z: C64) -> C64 {
        z * self.c + self.d
    }

    #[inline]
    pub fn apply(&self, z: C64) -> C64 {
        (z * self.a + self.b) / (z * self.c + self.d)
    }
}

/// Integral matrix of determinant one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Mat2Z {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
}

impl Mat2Z {
    pub const I: Mat2Z = Mat2Z { a: 1, b: 0, c: 0, d: 1 };
    pub const T: Mat2Z = Mat2Z { a: 1, b: 1, c: 0, d: 1 };
    pub const S: Mat2Z = Mat2Z { a: 0, b: -1, c: 1, d: 0 };

    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        if a * d - b * c != 1 {
            return Err(Error::InvalidMatrix(format!("det of ({a} {b}; {c} {d}) is not 1")));
        }
        Ok(Self { a, b, c, d })
    }

    pub fn translation(n: i64) -> Self {
        Self { a: 1, b: n, c: 0, d: 1 }
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn inverse(&self) -> Self {
        Self { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    pub fn neg(&self) -> Self {
        Self { a: -self.a, b: -self.b, c: -self.c, d: -self.d }
    }

    pub fn in_gamma0(&self, n: i64) -> bool {
        self.c % n == 0
    }

    pub fn to_real(&self) -> Mat2R {
        Mat2R { a: self.a as f64, b: self.b as f64, c: self.c as f64, d: self.d as f64 }
    }
}

pub fn moebius(g: &Mat2R, z: UhpPoint) -> UhpPoint {
    let w = g.apply(z.z());
    // Im(γz) = Im z / |cz+d|^2 keeps the result strictly positive
    let v = z.v / g.j(z.z()).norm_sqr();
    UhpPoint { u: w.re, v }
}

/// `cosh d(z, w) = 1 + |z - w|^2 / (2 v t)`.
pub fn cosh_dist(z: UhpPoint, w: UhpPoint) -> f64 {
    let du = z.u - w.u;
    let dv = z.v - w.v;
    1.0 + (du * du + dv * dv) / (2.0 * z.v * w.v)
}

/// `ζ = A_w(z)`.
#[inline]
pub fn aw_map(w: UhpPoint, z: UhpPoint) -> C64 {
    (z.z() - w.z()) / (z.z() - w.zbar())
}

/// `z = (w - conj(w) ζ)/(1 - ζ)` for `|ζ| < 1`.
pub fn aw_inverse(w: UhpPoint, zeta: C64) -> Result<UhpPoint> {
    if !(zeta.norm() < 1.0) {
        return Err(Error::Domain(format!("|zeta| = {} is not < 1", zeta.norm())));
    }
    let z = (w.z() - w.zbar() * zeta) / (1.0 - zeta);
    let t = w.v;
    let v = t * (1.0 - zeta.norm_sqr()) / (1.0 - zeta).norm_sqr();
    Ok(UhpPoint { u: z.re, v })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Pullbacks {
    pub v_of_z: f64,
    pub z_minus_wbar: C64,
    pub z_minus_w: C64,
    /// `dz = dz_factor dζ`
    pub dz_factor: C64,
}

pub fn aw_pullbacks(w: UhpPoint, zeta: C64) -> Result<Pullbacks> {
    if !(zeta.norm() < 1.0) {
        return Err(Error::Domain(format!("|zeta| = {} is not < 1", zeta.norm())));
    }
    let t = w.v;
    let two_it = C64::new(0.0, 2.0 * t);
    let one_m = 1.0 - zeta;
    Ok(Pullbacks {
        v_of_z: t * (1.0 - zeta.norm_sqr()) / one_m.norm_sqr(),
        z_minus_wbar: two_it / one_m,
        z_minus_w: two_it * zeta / one_m,
        dz_factor: two_it / (one_m * one_m),
    })
}

/// Moves `z` into `{|Re z| <= 1/2, |z| >= 1}`; returns `(z0, γ)` with `γ z = z0`.
pub fn reduce_to_fundamental_domain(z: UhpPoint) -> (UhpPoint, Mat2Z) {
    let mut g = Mat2Z::I;
    let mut w = z.z();
    for _ in 0..1_000_000 {
        let n = (w.re + 0.5).floor() as i64;
        if n != 0 {
            w -= n as f64;
            g = Mat2Z::translation(-n).mul(&g);
        }
        if w.norm_sqr() < 1.0 - 1e-15 {
            w = -w.inv();
            g = Mat2Z::S.mul(&g);
        } else {
            break;
        }
    }
    // recompute from the integral matrix to avoid drift
    let z0 = moebius(&g.to_real(), z);
    (z0, g)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(u: f64, v: f64) -> UhpPoint {
        UhpPoint::new(u, v).unwrap()
    }

    #[test]
    fn moebius_examples() {
        let z = p(0.3, 1.1);
        assert_eq!(moebius(&Mat2R::identity(), z), z);
        let s = moebius(&Mat2Z::S.to_real(), p(0.0, 1.0));
        assert!((s.u).abs() < 1e-15 && (s.v - 1.0).abs() < 1e-15);
        let t = moebius(&Mat2Z::T.to_real(), p(0.0, 1.0));
        assert!((t.u - 1.0).abs() < 1e-15 && (t.v - 1.0).abs() < 1e-15);
    }

    #[test]
    fn cosh_dist_examples() {
        assert_eq!(cosh_dist(p(0.0, 1.0), p(0.0, 1.0)), 1.0);
        assert!((cosh_dist(p(0.0, 1.0), p(0.0, 2.0)) - 1.25).abs() < 1e-15);
        assert!((cosh_dist(p(0.0, 1.0), p(1.0, 1.0)) - 1.5).abs() < 1e-15);
    }

    #[test]
    fn aw_examples() {
        let i = p(0.0, 1.0);
        assert_eq!(aw_map(i, i), C64::new(0.0, 0.0));
        assert!((aw_map(i, p(0.0, 2.0)) - C64::new(1.0 / 3.0, 0.0)).norm() < 1e-15);
        let z = aw_inverse(i, C64::new(1.0 / 3.0, 0.0)).unwrap();
        assert!((z.u).abs() < 1e-15 && (z.v - 2.0).abs() < 1e-14);
        assert!(aw_inverse(i, C64::new(1.0, 0.0)).is_err());
        let pb = aw_pullbacks(i, C64::new(0.0, 0.0)).unwrap();
        assert_eq!(pb.v_of_z, 1.0);
        assert_eq!(pb.z_minus_wbar, C64::new(0.0, 2.0));
        assert_eq!(pb.z_minus_w, C64::new(0.0, 0.0));
        assert_eq!(pb.dz_factor, C64::new(0.0, 2.0));
        let pb = aw_pullbacks(i, C64::new(1.0 / 3.0, 0.0)).unwrap();
        assert!((pb.v_of_z - 2.0).abs() < 1e-14);
        assert!((pb.z_minus_w - C64::new(0.0, 1.0)).norm() < 1e-14);
    }

    #[test]
    fn mat_rejects_bad_det() {
        assert!(Mat2R::new(1.0, 1.0, 1.0, 1.0).is_err());
        assert!(Mat2R::new(2.0, 0.0, 0.0, 0.5).is_ok());
        assert!(Mat2Z::new(1, 1, 1, 1).is_err());
    }

    #[test]
    fn reduction_examples() {
        let (z0, g) = reduce_to_fundamental_domain(p(0.1, 2.0));
        assert_eq!(g, Mat2Z::I);
        assert!((z0.u - 0.1).abs() < 1e-15);
        let (z0, g) = reduce_to_fundamental_domain(p(5.0, 1.0));
        assert_eq!(g, Mat2Z::translation(-5));
        assert!(z0.u.abs() < 1e-12 && (z0.v - 1.0).abs() < 1e-12);
        let (z0, g) = reduce_to_fundamental_domain(p(1.3, 0.9));
        let w = moebius(&g.to_real(), p(1.3, 0.9));
        assert!((w.u - z0.u).abs() < 1e-12 && (w.v - z0.v).abs() < 1e-12);
        assert!(z0.u.abs() <= 0.5 + 1e-12 && z0.z().norm() >= 1.0 - 1e-12);
    }
}
