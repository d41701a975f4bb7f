//! Dense polynomials with exact rational coefficients.

use num_complex::Complex64 as C64;
use num_rational::Ratio;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Q128 = Ratio<i128>;

/// Coefficients in ascending degree; no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<Q128>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Q128>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(c: &[i128]) -> Self {
        Self::new(c.iter().map(|&x| Q128::from_integer(x)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: vec![] }
    }

    pub fn constant(c: Q128) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(Q128::one())
    }

    /// `ξ^2 - 1`
    pub fn xi2m1() -> Self {
        Self::from_ints(&[-1, 0, 1])
    }

    pub fn coeffs(&self) -> &[Q128] {
        &self.coeffs
    }

    pub fn coeffs_f64(&self) -> Vec<f64> {
        self.coeffs.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let z = Q128::zero();
        Poly::new(
            (0..n)
                .map(|i| *self.coeffs.get(i).unwrap_or(&z) + *o.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.scale(-Q128::one()))
    }

    pub fn scale(&self, k: Q128) -> Poly {
        Poly::new(self.coeffs.iter().map(|c| *c * k).collect())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Q128::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += *a * *b;
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, e: u32) -> Poly {
        (0..e).fold(Poly::one(), |acc, _| acc.mul(self))
    }

    pub fn deriv(&self) -> Poly {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| *c * Q128::from_integer(i as i128))
                .collect(),
        )
    }

    /// Quotient if `o` divides `self` exactly.
    pub fn div_exact(&self, o: &Poly) -> Option<Poly> {
        let dn = o.degree()?;
        let mut rem = self.coeffs.clone();
        if rem.len() < o.coeffs.len() {
            return if self.is_zero() { Some(Poly::zero()) } else { None };
        }
        let lead = o.coeffs[dn];
        let mut q = vec![Q128::zero(); rem.len() - dn];
        for k in (0..q.len()).rev() {
            let f = rem[k + dn] / lead;
            q[k] = f;
            for (j, c) in o.coeffs.iter().enumerate() {
                rem[k + j] -= f * *c;
            }
        }
        if rem.iter().all(|c| c.is_zero()) {
            Some(Poly::new(q))
        } else {
            None
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn eval_c(&self, x: C64) -> C64 {
        self.coeffs
            .iter()
            .rev()
            .fold(C64::new(0.0, 0.0), |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Largest absolute coefficient, as a float.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.abs().to_f64().unwrap_or(f64::NAN)).fold(0.0, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let p = Poly::from_ints(&[1, 1]);
        assert_eq!(p.pow(2), Poly::from_ints(&[1, 2, 1]));
        assert_eq!(p.pow(2).deriv(), Poly::from_ints(&[2, 2]));
        assert_eq!(Poly::xi2m1().div_exact(&p), Some(Poly::from_ints(&[-1, 1])));
        assert_eq!(Poly::xi2m1().div_exact(&Poly::from_ints(&[2, 1])), None);
        assert_eq!(p.sub(&p), Poly::zero());
        assert_eq!(Poly::zero().degree(), None);
        assert!((Poly::from_ints(&[1, 2, 3]).eval(2.0) - 17.0).abs() < 1e-15);
    }
}
