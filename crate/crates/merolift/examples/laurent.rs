//! Laurent coefficients of f in the A_w chart at a pole and at a regular point.
use merolift::expansion::laurent_of_f;
use merolift::lift::LiftSpec;
use merolift::UhpPoint;

fn main() -> merolift::Result<()> {
    let spec = LiftSpec::new(2, 1, 0, -4, 1e-6)?;
    for w in [UhpPoint::new(0.0, 1.0)?, UhpPoint::new(0.2, 1.4)?] {
        let a = laurent_of_f(&spec, w, 4)?;
        println!("w = {w}: radius {:.4}", a.convergence_radius);
        for n in a.n_min..=a.n_max() {
            println!("  a_{n} = {:.10}", a.coeff(n));
        }
    }
    Ok(())
}
