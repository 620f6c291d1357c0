//! Rotation codings and the Sturmian window codings that determine them.

use rotcode::exact::TorusPoint;
use rotcode::system::{format_rows, RotationSystem};

fn main() -> rotcode::Result<()> {
    let sys = RotationSystem::parse("3/10", &["1/4", "3/5"])?;
    let x = TorusPoint::zero();
    println!(
        "m = {}, general position: {}",
        sys.m(),
        sys.general_position()
    );
    for k in 0..=sys.m() {
        println!("B_{k} = {}   I_{k} = {}", sys.cell(k), sys.window(k));
    }
    println!("coding of 0:  {}", sys.rotation_word(&x, 20)?);
    print!(
        "window rows:\n{}",
        format_rows(&sys.sturmian_words(&x, 20)?)
    );

    let irrational = RotationSystem::parse("surd(-1,1,2)", &["1/4", "3/5"])?;
    println!("sqrt 2 - 1:   {}", irrational.rotation_word(&x, 40)?);
    Ok(())
}
