use merolift::geometry::{moebius, Mat2Z, UhpPoint};
use merolift::lift::*;
use merolift::qforms::UvBox;
use merolift::specfun::legendre_q;
use num_complex::Complex64 as C64;

fn p(u: f64, v: f64) -> UhpPoint {
    UhpPoint::new(u, v).unwrap()
}

fn pts() -> Vec<UhpPoint> {
    vec![p(0.13, 1.37), p(-0.31, 0.92), p(0.27, 1.05), p(0.45, 1.61), p(-0.08, 2.3)]
}

/// Evaluator on a small box around `z`, fixed truncation height.
fn ev(spec: &LiftSpec, q: Quantity, z: UhpPoint, tmax: f64) -> Evaluator {
    let h = 1e-2;
    let bx = UvBox { u0: z.u - h, u1: z.u + h, v0: z.v - h, v1: z.v + h };
    Evaluator::with_tmax(spec, q, bx, tmax).unwrap()
}

/// `δ_k F = ∂_z F + k/(2iv) F` by central differences.
fn delta_fd(e: &Evaluator, k: f64, z: UhpPoint, h: f64) -> C64 {
    let f = |u: f64, v: f64| e.eval(p(u, v)).unwrap();
    let fu = (f(z.u + h, z.v) - f(z.u - h, z.v)) / (2.0 * h);
    let fv = (f(z.u, z.v + h) - f(z.u, z.v - h)) / (2.0 * h);
    let dz = 0.5 * (fu - C64::i() * fv);
    dz + f(z.u, z.v) * k / C64::new(0.0, 2.0 * z.v)
}

fn specs_for(m: u32) -> LiftSpec {
    if m % 2 == 0 {
        LiftSpec::new(m, 1, 1, -3, 1e-8).unwrap()
    } else {
        LiftSpec::new(m, 2, 1, -7, 1e-8).unwrap()
    }
}

#[test]
fn component_ladder() {
    for m in 1..=3u32 {
        let spec = specs_for(m);
        for (k, &z) in pts().iter().enumerate() {
            for pp in 1..=2 * m {
                if (k + pp as usize) % 2 == 1 && m == 3 {
                    continue;
                }
                let hi = ev(&spec, Quantity::Comp(pp), z, 300.0);
                let lo = ev(&spec, Quantity::Comp(pp - 1), z, 300.0);
                let lhs = delta_fd(&hi, (2 * m) as f64 - 2.0 * pp as f64, z, 1e-4);
                let rhs = lo.eval(z).unwrap() * (2 * m - pp + 1) as f64;
                let rel = (lhs - rhs).norm() / rhs.norm();
                assert!(rel < 1e-4, "m={m} p={pp} z={z}: {lhs} vs {rhs} rel {rel:e}");
            }
        }
    }
}

#[test]
fn components_reflect() {
    for m in 1..=3u32 {
        let spec = specs_for(m);
        let z = p(0.21, 1.19);
        let v2 = 4.0 * z.v * z.v;
        for pp in 0..=2 * m {
            let a = ev(&spec, Quantity::Comp(pp), z, 300.0).eval(z).unwrap();
            let b = ev(&spec, Quantity::Comp(2 * m - pp), z, 300.0).eval(z).unwrap();
            let want = b.conj() / v2.powi(m as i32 - pp as i32);
            assert!((a - want).norm() < 1e-9 * a.norm().max(1e-300), "m={m} p={pp}");
        }
    }
}

#[test]
fn delta_phi_closed_forms_and_stencil() {
    let spec = LiftSpec::new(2, 1, 0, -4, 1e-9).unwrap();
    let z = p(0.2, 1.5);
    let a = delta_phi(&spec, z).unwrap().value;
    let b = delta_phi_via_f(&spec, z).unwrap().value;
    assert!((a - b).norm() < 1e-10 * a.norm(), "{a} {b}");

    for spec in [LiftSpec::new(2, 1, 0, -4, 1e-9).unwrap(), specs_for(1), specs_for(3)] {
        let z = p(0.13, 1.37);
        let phi = ev(&spec, Quantity::Phi, z, 400.0);
        let dp = ev(&spec, Quantity::DeltaPhi, z, 400.0).eval(z).unwrap();
        let fd = delta_fd(&phi, (2 * spec.m) as f64, z, 1e-4) / C64::new(0.0, 2.0 * std::f64::consts::PI);
        assert!((fd - dp).norm() < 1e-5 * dp.norm(), "m={} {fd} {dp}", spec.m);
    }
}

#[test]
fn f_is_modular() {
    let ts = Mat2Z::T.mul(&Mat2Z::S);
    let mut seed = 7u64;
    let mut rnd = move || {
        seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (seed >> 11) as f64 / (1u64 << 53) as f64
    };
    for d in [-3i64, -4] {
        let spec = LiftSpec::new(2, 1, d.rem_euclid(2), d, 1e-9).unwrap();
        for _ in 0..4 {
            let z = p(rnd() - 0.5, 0.9 + 0.6 * rnd());
            let fz = f_mero(&spec, z).unwrap().value;
            for g in [Mat2Z::T, Mat2Z::S, ts] {
                let gz = moebius(&g.to_real(), z);
                let fgz = f_mero(&spec, gz).unwrap().value;
                let j = g.to_real().j(z.z());
                let want = j.powu(6) * fz;
                assert!((fgz - want).norm() < 1e-6 * want.norm(), "D={d} z={z}: {fgz} {want}");
            }
        }
    }
}

#[test]
fn truncation_contract() {
    let spec = LiftSpec::new(2, 1, 0, -4, 1e-8).unwrap();
    let z = p(0.0, 1.0 + 0.37);
    let e = Evaluator::at_point(&spec, Quantity::F, z).unwrap();
    assert!(e.tail_bound <= spec.tol);
    let a = e.eval(z).unwrap();
    let b = Evaluator::with_tmax(&spec, Quantity::F, UvBox::point(z), 2.0 * e.set.tmax).unwrap().eval(z).unwrap();
    assert!((a - b).norm() < spec.tol);
    let t1 = truncation_bound(&spec, z).unwrap();
    let t2 = truncation_bound(&spec.with_tol(0.5e-8), z).unwrap();
    assert!(t2 > t1);
    let s1 = LiftSpec::new(1, 2, 1, -7, 1e-3).unwrap();
    assert!(f_mero(&s1, z).is_ok());
}

#[test]
fn green_eigenfunction_and_log_singularity() {
    let spec = LiftSpec::new(2, 2, 1, -7, 1e-9).unwrap();
    let z = p(0.11, 0.93);
    let e = ev(&spec, Quantity::Green, z, 600.0);
    let g = |u: f64, v: f64| e.eval(p(u, v)).unwrap().re;
    let h = 1e-3;
    let g0 = g(z.u, z.v);
    let lap = (g(z.u + h, z.v) + g(z.u - h, z.v) + g(z.u, z.v + h) + g(z.u, z.v - h) - 4.0 * g0) / (h * h);
    let ev_ratio = -z.v * z.v * lap / g0;
    assert!((ev_ratio + 6.0).abs() < 6e-3, "{ev_ratio}");

    // a CM point of the β = 1 family
    let w = merolift::QForm::new(2, 1, 1).cm_point().unwrap();
    let mut diffs = vec![];
    for r in [1e-2, 1e-3, 1e-4] {
        let zz = p(w.u + 0.6 * r, w.v + 0.8 * r);
        let gv = green_value(&spec, zz).unwrap();
        diffs.push(gv - (r * r).ln());
    }
    let spread = diffs.iter().cloned().fold(f64::MIN, f64::max) - diffs.iter().cloned().fold(f64::MAX, f64::min);
    assert!(spread < 0.05, "{diffs:?}");
}

#[test]
fn green_kernel_is_legendre_q() {
    // each summand is -2 Q_m(cosh d): compare a lone far term via weights
    let spec = LiftSpec::new(2, 2, 1, -7, 1e-9).unwrap();
    let z = p(0.11, 0.93);
    let e = ev(&spec, Quantity::Green, z, 50.0);
    let direct: f64 = e
        .set
        .terms
        .iter()
        .map(|t| t.weight * -2.0 * legendre_q(2, merolift::geometry::cosh_dist(z, t.w)).unwrap())
        .sum();
    let g = e.eval(z).unwrap().re;
    assert!((g - direct).abs() < 1e-10 * direct.abs());
}

#[test]
fn green_is_invariant() {
    let spec = LiftSpec::new(2, 1, 1, -3, 1e-9).unwrap();
    let z = p(0.13, 1.37);
    let a = green_value(&spec, z).unwrap();
    for g in [Mat2Z::T, Mat2Z::S] {
        let b = green_value(&spec, moebius(&g.to_real(), z)).unwrap();
        assert!((a - b).abs() < 1e-6 * a.abs());
    }
}

#[test]
fn mathcal_f_relation() {
    let spec = LiftSpec::new(2, 1, 0, -4, 1e-9).unwrap();
    let z = p(0.3, 1.2);
    let e = ev(&spec, Quantity::MathcalF, z, 400.0);
    let mf = e.eval(z).unwrap();
    let c4 = ev(&spec, Quantity::Comp(4), z, 400.0).eval(z).unwrap();
    let k = 2f64.powi(2) * 4.0 * 2.0 * 4.0 / C64::new(0.0, -4.0 * std::f64::consts::PI).powu(2);
    assert!((c4 - k * mf).norm() < 1e-8 * c4.norm(), "{c4} {}", k * mf);

    let q = merolift::QForm::new(1, 0, 1);
    let zz = p(0.0, 2.0);
    let th = theta_integral(2, q.q_z(zz), 4.0).unwrap();
    let half_beta = 0.5 * merolift::specfun::incomplete_beta(2.5, -2.0, 4.0 / q.q_z(zz).powi(2)).unwrap();
    assert!((th - half_beta).abs() < 1e-10 * th);
    assert!(theta_integral(2, 2.0, 4.0).is_err());
}

#[test]
fn cusp_decay() {
    // |f(iy)| ~ |a_1| e^{-2πy}: doubling y at least halves it, at the rate 2π
    let spec = LiftSpec::new(2, 1, 0, -4, 1e-10).unwrap();
    let ys = [2.0, 4.0];
    let vals: Vec<f64> = ys.iter().map(|&y| f_mero(&spec, p(0.1, y)).unwrap().value.norm()).collect();
    assert!(vals[1] < 0.5 * vals[0]);
    let rate = -(vals[1] / vals[0]).ln() / (ys[1] - ys[0]);
    assert!((rate / (2.0 * std::f64::consts::PI) - 1.0).abs() < 0.01, "{rate}");
}
