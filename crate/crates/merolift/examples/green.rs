//! The middle component as a higher Green's function: eigenvalue and log singularity.
use merolift::lift::{green_value, LiftSpec};
use merolift::{QForm, UhpPoint};

fn main() -> merolift::Result<()> {
    let spec = LiftSpec::new(2, 2, 1, -7, 1e-9)?;
    let z = UhpPoint::new(0.11, 0.93)?;
    let g = |u: f64, v: f64| green_value(&spec, UhpPoint::new(u, v).unwrap()).unwrap();
    let h = 1e-3;
    let g0 = g(z.u, z.v);
    let lap = (g(z.u + h, z.v) + g(z.u - h, z.v) + g(z.u, z.v + h) + g(z.u, z.v - h) - 4.0 * g0) / (h * h);
    println!("G(z) = {g0:.12}, -v²ΔG/G = {:.6} (expect -{})", -z.v * z.v * lap / g0, spec.m * (spec.m + 1));

    let w = QForm::new(2, 1, 1).cm_point()?;
    for r in [1e-2, 1e-3, 1e-4] {
        let gv = g(w.u + 0.6 * r, w.v + 0.8 * r);
        println!("|z-w| = {r:.0e}: G - ln|z-w|² = {:.6}", gv - (r * r).ln());
    }
    Ok(())
}
