//! Recovers a rotation coding from its m+1 Sturmian rows alone.

use rotcode::automaton::{letters_from_columns, recode, UniversalAutomaton};
use rotcode::exact::TorusPoint;
use rotcode::system::{parse_rows, RotationSystem};
use rotcode::verify::EXAMPLE_WORDS;

fn main() -> rotcode::Result<()> {
    let rows = parse_rows(EXAMPLE_WORDS)?;
    let letters = letters_from_columns(&rows)?;
    let keys: Vec<String> = letters.keys().iter().map(|k| k.to_string()).collect();
    println!("letters: {}", keys.join(" "));
    println!(
        "recoded: {}",
        recode(&UniversalAutomaton::new(2), &letters, 0)?
    );

    let sys = RotationSystem::parse("surd(-1,1,2)", &["1/4", "3/5"])?;
    let x: TorusPoint = "2/7".parse()?;
    let rows = sys.sturmian_words(&x, 60)?;
    let recoded = recode(
        &UniversalAutomaton::new(sys.m()),
        &letters_from_columns(&rows)?,
        sys.initial_state(&x),
    )?;
    let direct = sys.rotation_word(&x, 60)?;
    println!("recoded: {recoded}\ndirect:  {direct}");
    println!("first mismatch: {:?}", recoded.first_mismatch(&direct));
    Ok(())
}
