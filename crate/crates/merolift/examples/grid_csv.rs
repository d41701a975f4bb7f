//! A CSV grid of δΦ, ready for plotting.
use merolift::lift::{grid_eval, write_csv, Grid, LiftSpec, Quantity};

fn main() -> merolift::Result<()> {
    let spec = LiftSpec::new(2, 1, 0, -4, 1e-8)?;
    let grid: Grid = "-0.5:0.5:11,0.9:1.9:6".parse()?;
    let rows = grid_eval(&spec, Quantity::DeltaPhi, &grid)?;
    write_csv(&rows, std::io::stdout().lock()).expect("stdout");
    Ok(())
}
