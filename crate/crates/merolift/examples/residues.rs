//! Residue at a pole from the Laurent series, checked by a contour integral.
use merolift::lift::LiftSpec;
use merolift::pairing::{residue_at_pole, residue_contour};
use merolift::{QForm, UhpPoint};

fn main() -> merolift::Result<()> {
    let g = LiftSpec::new(2, 1, 0, -4, 1e-10)?;
    let lift = LiftSpec::new(2, 1, 1, -3, 1e-10)?;
    let w0 = QForm::new(1, 1, 1).cm_point()?;
    for w in [UhpPoint::new(0.0, 1.0)?, UhpPoint::new(0.5, 0.5)?] {
        let a = residue_at_pole(&g, lift.r(), w, w0)?;
        let c = residue_contour(&g, lift.r(), w, w0)?;
        println!("w = {w}: series {a:.12}, contour {c:.12}");
    }
    Ok(())
}
