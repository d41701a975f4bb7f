//! The regularized pairing by the residue formula, with its per-orbit breakdown.
use merolift::lift::LiftSpec;
use merolift::pairing::regularized_pairing;

fn main() -> merolift::Result<()> {
    let g = LiftSpec::new(2, 1, 0, -4, 1e-10)?;
    for (beta, d) in [(1, -3), (0, -4)] {
        let lift = LiftSpec::new(2, 1, beta, d, 1e-10)?;
        let r = regularized_pairing(&g, &lift)?;
        println!("lift D={d}: {:.15e} (budget {:.1e})", r.value, r.error_budget);
        for e in &r.breakdown {
            println!("  orbit {:?}: sign {} / stab {}, residue sum {:.10}", e.orbit_rep, e.sign, e.stab_order, e.residue);
        }
    }
    Ok(())
}
