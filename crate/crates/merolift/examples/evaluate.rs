//! Point values of f, Φ and the lift components.
use merolift::lift::{f_mero, lift_component, phi_lift, LiftSpec};
use merolift::UhpPoint;

fn main() -> merolift::Result<()> {
    let spec = LiftSpec::new(2, 1, 1, -3, 1e-8)?;
    let z = UhpPoint::new(0.13, 1.37)?;
    let f = f_mero(&spec, z)?;
    println!("f({z}) = {} ({} terms, tail <= {:.1e})", f.value, f.terms_used, f.tail_bound);
    println!("Φ({z}) = {}", phi_lift(&spec, z)?.value);
    for p in 0..=2 * spec.m {
        println!("  comp_{p} = {}", lift_component(&spec, p, z)?.value);
    }
    Ok(())
}
