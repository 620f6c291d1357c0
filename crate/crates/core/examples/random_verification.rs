//! Seeded random cross-checks, plus replaying one instance from its text form.

use rotcode::verify::{
    random_instance, verify_instance, verify_seeds, GeneratorConfig, InstanceSpec,
};

fn main() -> rotcode::Result<()> {
    let config = GeneratorConfig::default();
    let reports = verify_seeds(&config, 0..50)?;
    let passed = reports.iter().filter(|r| r.passed()).count();
    println!("{passed} of {} instances passed", reports.len());

    let spec = random_instance(&config, 0)?;
    let text = spec.to_string();
    println!("replaying {text}");
    let replay: InstanceSpec = text.parse()?;
    print!("{}", verify_instance(&replay));
    Ok(())
}
