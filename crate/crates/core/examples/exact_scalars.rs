//! Exact arithmetic on rationals and real quadratic surds.

use rotcode::exact::{Scalar, TorusPoint};

fn main() -> rotcode::Result<()> {
    // The golden-ratio rotation angle (3 - sqrt 5)/2.
    let alpha: Scalar = "surd(3/2,-1/2,5)".parse()?;
    println!("alpha = {alpha} ~ {:.6}", alpha.approx());

    let mut x = TorusPoint::zero();
    for n in 0..6 {
        println!("x + {n} alpha mod 1 = {x}");
        x = x.add_mod1(&alpha)?;
    }

    let a: Scalar = "surd(7/3,-5/7,11)".parse()?;
    println!(
        "floor({a}) = {}, fract ~ {:.6}",
        a.floor(),
        a.fract().approx()
    );

    // Surds over different radicands cannot be combined.
    let b: Scalar = "surd(0,1,2)".parse()?;
    match alpha.try_add(&b) {
        Ok(sum) => println!("sum = {sum}"),
        Err(e) => println!("expected failure: {e}"),
    }
    Ok(())
}
