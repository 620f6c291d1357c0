//! The atlas of a rotation system: which windows contain each point, by
//! exhaustive partition and by closed form.

use rotcode::atlas::{atlas_bruteforce, cell_formula, check_no_interleaving};
use rotcode::system::RotationSystem;

fn main() -> rotcode::Result<()> {
    let sys = RotationSystem::parse("3/10", &["1/4", "3/5"])?;
    let atlas = atlas_bruteforce(&sys)?;
    print!("{atlas}");

    for key in atlas.keys().filter(|k| k.is_proper()) {
        println!("formula for K={key}: {}", cell_formula(&sys, key)?);
    }
    println!(
        "{} of {} possible keys realized; no interleaving: {}",
        atlas.cells.len(),
        sys.m() * sys.m() + sys.m() + 2,
        check_no_interleaving(&sys)?
    );
    Ok(())
}
