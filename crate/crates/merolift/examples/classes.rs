//! Γ₀(N)-classes of forms for a few discriminants.
use merolift::qforms::class_representatives;

fn main() -> merolift::Result<()> {
    for (n, beta, d) in [(1, 1, -3), (1, 0, -4), (1, 1, -23), (2, 1, -7), (3, 1, -11)] {
        let data = class_representatives(n, beta, d)?;
        println!("N={n} β={beta} D={d}: {} classes", data.classes.len());
        for c in &data.classes {
            println!("  [{}, {}, {}]  stab {}", c.a, c.b, c.c, c.stab);
        }
    }
    Ok(())
}
