//! The pairing by direct integration over the truncated fundamental domain.
use merolift::lift::LiftSpec;
use merolift::pairing::{regularization_oracle, regularized_pairing, OracleParams};

fn main() -> merolift::Result<()> {
    let g = LiftSpec::new(2, 1, 0, -4, 1e-10)?;
    let lift = LiftSpec::new(2, 1, 1, -3, 1e-10)?;
    let exact = regularized_pairing(&g, &lift)?.value;
    for eps in [0.12, 0.06] {
        let params = OracleParams { epsilon: eps, tmax: 300.0, rel_tol: 1e-7, ..OracleParams::default() };
        let o = regularization_oracle(&g, &lift, &params)?;
        println!(
            "ε = {eps}: exterior {:.10e} + discs {:.10e} = {:.10e}, rel. gap {:.1e}",
            o.exterior,
            o.discs,
            o.value,
            ((o.value - exact) / exact).norm()
        );
    }
    Ok(())
}
