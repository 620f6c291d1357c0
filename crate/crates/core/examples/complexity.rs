//! Factor complexity of Sturmian, Rote and three-interval codings.

use rotcode::exact::TorusPoint;
use rotcode::system::{stabilized_complexity, RotationSystem};

const MAX_N: usize = 10;

fn main() -> rotcode::Result<()> {
    let x = TorusPoint::zero();

    let golden = RotationSystem::parse("surd(3/2,-1/2,5)", &["surd(3/2,-1/2,5)"])?;
    let profile = stabilized_complexity(
        |len| golden.sturmian_word(1, &x, len).map(|w| w.bits().to_vec()),
        MAX_N,
        500,
        16_000,
    )?;
    println!(
        "sturmian window: {:?} (prefix {})",
        profile.counts, profile.prefix_len
    );

    for betas in [vec!["1/2"], vec!["1/4", "3/5"]] {
        let sys = RotationSystem::parse("surd(-1,1,2)", &betas)?;
        let profile = stabilized_complexity(
            |len| sys.rotation_word(&x, len).map(|w| w.letters().to_vec()),
            MAX_N,
            500,
            16_000,
        )?;
        println!(
            "m = {} coding:    {:?} (prefix {})",
            sys.m(),
            profile.counts,
            profile.prefix_len
        );
    }
    Ok(())
}
