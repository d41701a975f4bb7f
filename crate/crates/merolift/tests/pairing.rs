use merolift::expansion::LaurentSeries;
use merolift::geometry::{aw_inverse, cosh_dist, Mat2Z, UhpPoint};
use merolift::lift::{Constants, Evaluator, FormSet, LiftSpec, Quantity};
use merolift::pairing::*;
use merolift::qforms::UvBox;
use merolift::specfun::b_m_real;
use merolift::{Error, QForm};
use num_complex::Complex64 as C64;

fn p(u: f64, v: f64) -> UhpPoint {
    UhpPoint::new(u, v).unwrap()
}

fn g4() -> LiftSpec {
    LiftSpec::new(2, 1, 0, -4, 1e-10).unwrap()
}

fn lift3() -> LiftSpec {
    LiftSpec::new(2, 1, 1, -3, 1e-10).unwrap()
}

struct Lcg(u64);

impl Lcg {
    fn next(&mut self) -> f64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (self.0 >> 11) as f64 / (1u64 << 53) as f64
    }
}

#[test]
fn toy_residues() {
    let (w, w0) = (p(0.2, 1.6), p(-0.1, 0.9));
    let m = 2;
    let r = 0.75;
    let regular = LaurentSeries { n_min: 0, coeffs: vec![C64::new(1.0, 2.0)], convergence_radius: 1.0 };
    assert_eq!(residue_from_series(m, r, &regular, w, w0).unwrap(), C64::new(0.0, 0.0));
    // a = ζ^{-1}: only p = 0 survives
    let simple = LaurentSeries { n_min: -1, coeffs: vec![C64::new(1.0, 0.0)], convergence_radius: 1.0 };
    let got = residue_from_series(m, r, &simple, w, w0).unwrap();
    let want = r.powf(1.0) * ((w.z() - w0.z()) * (w.z() - w0.zbar())).powu(2) / C64::new(0.0, 2.0 * w0.v * w.v).powu(2)
        * b_m_real(m, cosh_dist(w, w0)).unwrap();
    assert!((got - want).norm() < 1e-13 * want.norm(), "{got} vs {want}");
    let c = residue_contour_fn(|z| Ok(1.0 / z), m, r, w, w0, 0.2).unwrap();
    assert!((c - want).norm() < 1e-10 * want.norm());
    assert!(residue_from_series(m, r, &simple, w, w).is_err());
}

#[test]
fn residue_duality_synthetic() {
    let mut rng = Lcg(7);
    for case in 0..5 {
        let m = 1 + case % 3;
        let w = p(rng.next() - 0.5, 0.5 + 2.0 * rng.next());
        let w0 = p(rng.next() - 0.5, 0.5 + 2.0 * rng.next());
        let coeffs: Vec<C64> = (0..m + 8).map(|_| C64::new(rng.next() - 0.5, rng.next() - 0.5)).collect();
        let a = LaurentSeries { n_min: -(m as i64) - 1, coeffs, convergence_radius: 1.0 };
        let delta = merolift::geometry::aw_map(w, w0).norm();
        let r = 0.5 + rng.next();
        let got = residue_from_series(m, r, &a, w, w0).unwrap();
        let c = residue_contour_fn(|z| Ok(a.eval(z)), m, r, w, w0, 0.5 * delta).unwrap();
        assert!((c - got).norm() < 1e-8 * got.norm(), "case {case}: {c} vs {got}");
    }
}

#[test]
fn residue_duality_on_the_pairing_config() {
    let (g, lift) = (g4(), lift3());
    let w0 = QForm::new(1, 1, 1).cm_point().unwrap();
    for w in [p(0.0, 1.0), p(1.0, 1.0), p(0.5, 0.5), p(-0.4, 0.2)] {
        let a = residue_at_pole(&g, lift.r(), w, w0).unwrap();
        let c = residue_contour(&g, lift.r(), w, w0).unwrap();
        assert!(a.norm() > 0.0);
        assert!((a - c).norm() < 1e-8 * a.norm(), "w={w}: {a} vs {c}");
    }
    // not a pole of g
    let a = residue_at_pole(&g, lift.r(), p(0.1, 1.3), w0).unwrap();
    assert_eq!(a, C64::new(0.0, 0.0));
}

#[test]
fn coincident_pole_has_no_constant_term() {
    for m in 1..=5 {
        for eps in [0.1, 0.3, 0.6] {
            let t = (1.0 + eps * eps) / (1.0 - eps * eps);
            let scale = b_m_real(m, t).unwrap().abs();
            let ct = coincident_pole_ct(m, eps).unwrap();
            assert!(ct.abs() < 1e-6 * scale, "m={m} eps={eps}: {ct}");
        }
    }
    assert!(coincident_pole_ct(2, 1.0).is_err());
}

#[test]
fn disc_constant_term_matches_annulus_integral() {
    // the difference of two constant terms is an honest integral over an annulus
    let (g, lift) = (g4(), lift3());
    let w = p(0.0, 1.0);
    let dc = Constants::new(&lift).delta_via_f;
    let fs = merolift::expansion::laurent_of_f_with_set(&lift, &FormSet::enumerate(&lift, UvBox::point(w), 4000.0), w, 40).unwrap();
    let fs = LaurentSeries { coeffs: fs.coeffs.iter().map(|c| c * dc).collect(), ..fs };
    let gs = merolift::expansion::laurent_of_f_with_set(&g, &FormSet::enumerate(&g, UvBox::point(w), 4000.0), w, 40).unwrap();
    let (e1, e2) = (0.12, 0.06);
    let ct = disc_constant_term(&fs, &gs, 6, e1) - disc_constant_term(&fs, &gs, 6, e2);
    let bx = merolift::expansion::chart_disc_box(w, e1);
    let fe = Evaluator::with_tmax(&lift, Quantity::DeltaPhi, bx, 2000.0).unwrap();
    let ge = Evaluator::with_tmax(&g, Quantity::F, bx, 2000.0).unwrap();
    let r = merolift::quad::integrate(
        |r| {
            let nt = 64;
            let mut acc = C64::new(0.0, 0.0);
            for j in 0..nt {
                let z = aw_inverse(w, C64::from_polar(r, 2.0 * std::f64::consts::PI * j as f64 / nt as f64)).unwrap();
                acc += fe.eval(z).unwrap() * ge.eval(z).unwrap().conj() * z.v.powi(6);
            }
            acc * 2.0 * std::f64::consts::PI / nt as f64 * 4.0 * r / (1.0 - r * r).powi(2)
        },
        &[e2, e1],
        1e-14,
        1e-10,
        100,
    );
    assert!((ct - r.value).norm() < 1e-7 * ct.norm(), "{ct} vs {}", r.value);
}

#[test]
fn radial_constant_terms() {
    assert_eq!(radial_ct(0, 0.5), 0.5f64.ln());
    assert!((radial_ct(2, 0.5) - 0.125).abs() < 1e-16);
    assert!((radial_ct(-2, 0.5) + 2.0).abs() < 1e-15);
}

#[test]
fn pairing_matches_oracle() {
    let (g, lift) = (g4(), lift3());
    let r = regularized_pairing(&g, &lift).unwrap();
    assert_eq!(r.method, Method::ResidueFormula);
    assert!(r.value.norm() > 1e-4);
    let sum: C64 = r.breakdown.iter().map(|e| e.residue * e.sign as f64 / e.stab_order as f64).sum();
    assert!((sum * global_constant(2) - r.value).norm() < 1e-15 * r.value.norm());

    let params = OracleParams { epsilon: 0.12, height: 8.0, tmax: 300.0, rel_tol: 1e-7 };
    let mut runs = Vec::new();
    for eps in [0.12, 0.06, 0.03] {
        let o = regularization_oracle(&g, &lift, &OracleParams { epsilon: eps, ..params }).unwrap();
        assert!(((o.value - r.value) / r.value).norm() < 1e-3, "eps={eps}: {} vs {}", o.value, r.value);
        runs.push(o);
    }
    for a in &runs {
        for b in &runs {
            assert!((a.value - b.value).norm() <= a.error_budget + b.error_budget);
        }
    }
    let tall = regularization_oracle(&g, &lift, &OracleParams { height: 16.0, ..params }).unwrap();
    assert!((tall.value - runs[0].value).norm() < 1e-9 * r.value.norm());
}

#[test]
fn representative_invariance() {
    let (g, lift) = (g4(), lift3());
    let base = regularized_pairing(&g, &lift).unwrap();
    for gm in [Mat2Z::new(2, 1, 5, 3).unwrap(), Mat2Z::T, Mat2Z::S] {
        let mut orbits = lift_orbits(&lift).unwrap();
        orbits[0].rep = orbits[0].rep.act(&gm);
        let moved = pairing_with_orbits(&g, &lift, &orbits).unwrap();
        assert!((moved.value - base.value).norm() < 1e-8 * base.value.norm());
    }
}

#[test]
fn vanishing_and_mismatch() {
    // odd m at N = 1: the lift has no orbits
    let g = LiftSpec::new(1, 1, 0, -4, 1e-8).unwrap();
    let lift = LiftSpec::new(1, 1, 1, -3, 1e-8).unwrap();
    assert_eq!(regularized_pairing(&g, &lift).unwrap().value, C64::new(0.0, 0.0));
    let bad = LiftSpec::new(3, 1, 1, -3, 1e-8).unwrap();
    assert!(matches!(regularized_pairing(&g4(), &bad), Err(Error::ConfigMismatch(_))));
    let n2 = LiftSpec::new(2, 2, 1, -7, 1e-8).unwrap();
    assert!(matches!(regularization_oracle(&n2, &n2, &OracleParams::default()), Err(Error::ConfigMismatch(_))));
}

#[test]
fn shared_orbit_skips_only_the_coincident_pole() {
    // g and the lift share the orbit of ρ; the other points of that orbit still count
    let s = lift3();
    let r = regularized_pairing(&s, &s).unwrap();
    assert!(r.value.norm() > 0.0);
    let o = regularization_oracle(&s, &s, &OracleParams { epsilon: 0.1, height: 8.0, tmax: 300.0, rel_tol: 1e-7 }).unwrap();
    assert!(((o.value - r.value) / r.value).norm() < 1e-3);
}

#[test]
fn epsilon_inconsistency_is_reported() {
    // a crude exterior lattice sum no longer matches the disc data
    let params = OracleParams { epsilon: 0.12, height: 8.0, tmax: 4.0, rel_tol: 1e-6 };
    match oracle_checked(&g4(), &lift3(), &params, 0.0) {
        Err(Error::EpsilonInconsistent { gap, budget }) => assert!(gap > budget),
        other => panic!("expected inconsistency, got {other:?}"),
    }
}

#[test]
fn json_round_trip() {
    let r = regularized_pairing(&g4(), &lift3()).unwrap();
    let j = serde_json::to_string(&r).unwrap();
    assert!(j.contains(r#""method":"residueFormula""#));
    assert!(j.contains(r#""value":{"re":"#));
    assert!(j.contains("errorBudget"));
    let back: PairingResult = serde_json::from_str(&j).unwrap();
    assert_eq!(back, r);
}
