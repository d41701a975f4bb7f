//! Globally adaptive Gauss–Kronrod (7/15) quadrature for complex integrands.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64 as C64;
use rayon::prelude::*;

const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadResult {
    pub value: C64,
    pub error: f64,
    pub evals: usize,
    pub converged: bool,
}

fn nodes(a: f64, b: f64) -> [f64; 15] {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let mut x = [0.0; 15];
    for k in 0..7 {
        x[2 * k] = c - h * XGK[k];
        x[2 * k + 1] = c + h * XGK[k];
    }
    x[14] = c;
    x
}

fn combine(a: f64, b: f64, fx: &[C64; 15]) -> (C64, f64) {
    let h = 0.5 * (b - a);
    let mut k = fx[14] * WGK[7];
    let mut g = fx[14] * WG[3];
    for j in 0..7 {
        let s = fx[2 * j] + fx[2 * j + 1];
        k += s * WGK[j];
        if j % 2 == 1 {
            g += s * WG[j / 2];
        }
    }
    let err = ((k - g) * h).norm();
    (k * h, err)
}

struct Seg {
    a: f64,
    b: f64,
    val: C64,
    err: f64,
}

impl PartialEq for Seg {
    fn eq(&self, o: &Self) -> bool {
        self.err == o.err
    }
}
impl Eq for Seg {}
impl PartialOrd for Seg {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Seg {
    fn cmp(&self, o: &Self) -> Ordering {
        self.err.total_cmp(&o.err)
    }
}

fn run<E>(eval: E, breaks: &[f64], abs_tol: f64, rel_tol: f64, max_segs: usize) -> QuadResult
where
    E: Fn(f64, f64) -> [C64; 15],
{
    let mut heap = BinaryHeap::new();
    let mut evals = 0;
    for w in breaks.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b <= a {
            continue;
        }
        let fx = eval(a, b);
        evals += 15;
        let (val, err) = combine(a, b, &fx);
        heap.push(Seg { a, b, val, err });
    }
    let mut total: C64 = heap.iter().map(|s| s.val).sum();
    let mut err: f64 = heap.iter().map(|s| s.err).sum();
    loop {
        let done = err <= abs_tol.max(rel_tol * total.norm());
        if done || heap.len() >= max_segs {
            let value: C64 = heap.iter().map(|s| s.val).sum();
            let error: f64 = heap.iter().map(|s| s.err).sum();
            return QuadResult { value, error, evals, converged: done };
        }
        let Some(s) = heap.pop() else {
            return QuadResult { value: total, error: err, evals, converged: true };
        };
        let m = 0.5 * (s.a + s.b);
        if !(m > s.a && m < s.b) {
            heap.push(s);
            let value: C64 = heap.iter().map(|s| s.val).sum();
            return QuadResult { value, error: err, evals, converged: false };
        }
        total -= s.val;
        err -= s.err;
        for (a, b) in [(s.a, m), (m, s.b)] {
            let fx = eval(a, b);
            evals += 15;
            let (val, e) = combine(a, b, &fx);
            total += val;
            err += e;
            heap.push(Seg { a, b, val, err: e });
        }
        err = err.max(0.0);
    }
}

/// Integrates over `[breaks[0], breaks[last]]`, starting from the given segments.
pub fn integrate<F>(f: F, breaks: &[f64], abs_tol: f64, rel_tol: f64, max_segs: usize) -> QuadResult
where
    F: Fn(f64) -> C64,
{
    run(
        |a, b| {
            let x = nodes(a, b);
            let mut fx = [C64::new(0.0, 0.0); 15];
            for k in 0..15 {
                fx[k] = f(x[k]);
            }
            fx
        },
        breaks,
        abs_tol,
        rel_tol,
        max_segs,
    )
}

/// As [`integrate`], evaluating the 15 nodes of each segment in parallel.
pub fn integrate_par<F>(f: F, breaks: &[f64], abs_tol: f64, rel_tol: f64, max_segs: usize) -> QuadResult
where
    F: Fn(f64) -> C64 + Sync,
{
    run(
        |a, b| {
            let x = nodes(a, b);
            let v: Vec<C64> = x.par_iter().map(|&t| f(t)).collect();
            let mut fx = [C64::new(0.0, 0.0); 15];
            fx.copy_from_slice(&v);
            fx
        },
        breaks,
        abs_tol,
        rel_tol,
        max_segs,
    )
}

/// Real-valued convenience wrapper: `(value, error estimate)`.
pub fn integrate_real<F>(f: F, a: f64, b: f64, abs_tol: f64, rel_tol: f64) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    let r = integrate(|x| C64::new(f(x), 0.0), &[a, b], abs_tol, rel_tol, 20_000);
    (r.value.re, r.error)
}
