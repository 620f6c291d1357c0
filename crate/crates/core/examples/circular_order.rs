//! Circular order, half-open arcs and their intersections.

use rotcode::circle::{c_ordered, intersect, intersect_same_length, TorusInterval};
use rotcode::exact::TorusPoint;

fn main() -> rotcode::Result<()> {
    let p = |s: &str| s.parse::<TorusPoint>();
    let seq = [p("7/10")?, p("9/10")?, p("1/10")?, p("3/10")?];
    println!("(7/10, 9/10, 1/10, 3/10) c-ordered: {}", c_ordered(&seq));
    let seq = [p("1/10")?, p("7/10")?, p("3/10")?];
    println!("(1/10, 7/10, 3/10) c-ordered: {}", c_ordered(&seq));

    let i: TorusInterval = "[4/5,1/5[".parse()?;
    let j: TorusInterval = "[1/10,1/2[".parse()?;
    println!(
        "{i} wraps: {}, contains 0: {}",
        i.wraps(),
        i.contains(&TorusPoint::zero())
    );
    println!("complement of {i}: {}", i.complement()?);

    let k: TorusInterval = "[0,2/5[".parse()?;
    println!("{i} ∩ {k} = {}", intersect_same_length(&i, &k)?);
    let pieces: Vec<String> = intersect(&i.complement()?, &j)
        .iter()
        .map(|a| a.to_string())
        .collect();
    println!("complement ∩ {j} = {}", pieces.join(" ∪ "));
    Ok(())
}
