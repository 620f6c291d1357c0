//! Exports the universal automaton. Pipe the output into `dot -Tsvg`.

use rotcode::automaton::{ExportFormat, UniversalAutomaton};

fn main() {
    let m = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(2);
    let auto = UniversalAutomaton::new(m);
    eprintln!(
        "{} states, {} letters",
        auto.states().count(),
        auto.alphabet().len()
    );
    print!("{}", auto.export(ExportFormat::Dot));
}
