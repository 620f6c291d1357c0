//! Cross-checks between the two coding paths and the two atlas computations.
//!
//! Every check failure carries the instance text, so a report line can be fed
//! back through [`InstanceSpec::from_str`] and [`verify_instance`] to replay it.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::atlas::{atlas_bruteforce, cell_formula, check_no_interleaving, Atlas, CellKey};
use crate::automaton::{letters_from_columns, LetterStream, Recoder, UniversalAutomaton};
use crate::circle::intersect;
use crate::error::{Error, Result};
use crate::exact::{parse_list, Scalar, TorusPoint};
use crate::system::{parse_rows, BinaryWord, CodedWord, RotationSystem};

/// The three binary words and their recoding from the worked example for `m = 2`.
pub const EXAMPLE_WORDS: &str = "1001010010100101\n0100101001010010\n0010100101001010\n";
pub const EXAMPLE_RECODED: &str = "0120201202012020";

/// Irrational angles in `(0,1/2)` used by the surd backend.
pub const SURD_ALPHAS: [&str; 5] = [
    "surd(3/2,-1/2,5)",
    "surd(-1,1,2)",
    "surd(-2,1,5)",
    "surd(-1/2,1/2,3)",
    "surd(2,-1,3)",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Backend {
    Rational,
    Surd,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Rational => "rational",
            Backend::Surd => "surd",
        })
    }
}

impl FromStr for Backend {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rational" => Ok(Backend::Rational),
            "surd" => Ok(Backend::Surd),
            _ => Err(Error::parse(s, "expected rational or surd")),
        }
    }
}

/// One replayable verification input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceSpec {
    pub backend: Backend,
    pub alpha: Scalar,
    pub betas: Vec<Scalar>,
    pub x: TorusPoint,
    pub n: usize,
    pub seed: u64,
}

impl InstanceSpec {
    pub fn m(&self) -> usize {
        self.betas.len()
    }

    pub fn system(&self) -> Result<RotationSystem> {
        RotationSystem::new(self.alpha.clone(), self.betas.clone())
    }
}

impl fmt::Display for InstanceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let betas: Vec<String> = self.betas.iter().map(|b| b.to_string()).collect();
        write!(
            f,
            "backend={} m={} alpha={} betas={} x={} n={} seed={}",
            self.backend,
            self.m(),
            self.alpha,
            betas.join(","),
            self.x,
            self.n,
            self.seed
        )
    }
}

impl FromStr for InstanceSpec {
    type Err = Error;

    /// Reads back the `key=value` form written by `Display`. `m` is checked
    /// against the number of betas.
    fn from_str(s: &str) -> Result<Self> {
        let mut backend = None;
        let mut m = None;
        let mut alpha = None;
        let mut betas = None;
        let mut x = None;
        let mut n = None;
        let mut seed = None;
        for field in s.split_whitespace() {
            let (k, v) = field
                .split_once('=')
                .ok_or_else(|| Error::parse(field, "expected key=value"))?;
            let bad = |_| Error::parse(field, "not a nonnegative integer");
            match k {
                "backend" => backend = Some(v.parse()?),
                "m" => m = Some(v.parse::<usize>().map_err(bad)?),
                "alpha" => alpha = Some(v.parse()?),
                "betas" => betas = Some(parse_list(v)?),
                "x" => x = Some(v.parse()?),
                "n" => n = Some(v.parse().map_err(bad)?),
                "seed" => seed = Some(v.parse().map_err(bad)?),
                _ => return Err(Error::parse(field, "unknown key")),
            }
        }
        let missing = |k: &str| Error::parse(s, format!("missing {k}"));
        let spec = InstanceSpec {
            backend: backend.ok_or_else(|| missing("backend"))?,
            alpha: alpha.ok_or_else(|| missing("alpha"))?,
            betas: betas.ok_or_else(|| missing("betas"))?,
            x: x.ok_or_else(|| missing("x"))?,
            n: n.ok_or_else(|| missing("n"))?,
            seed: seed.unwrap_or(0),
        };
        if let Some(m) = m {
            if m != spec.m() {
                return Err(Error::parse(s, format!("m={m} but {} betas", spec.m())));
            }
        }
        Ok(spec)
    }
}

/// Parameters of the random instance generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeneratorConfig {
    pub backend: Backend,
    pub m_max: usize,
    /// Largest denominator drawn for rational coordinates.
    pub denominator_bound: u32,
    pub word_len: usize,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            backend: Backend::Rational,
            m_max: 5,
            denominator_bound: 64,
            word_len: 1000,
        }
    }
}

const MAX_ATTEMPTS: usize = 1000;

/// A general-position instance, deterministic in `seed`.
pub fn random_instance(config: &GeneratorConfig, seed: u64) -> Result<InstanceSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        if let Some(spec) = draw(config, seed, &mut rng) {
            return Ok(spec);
        }
    }
    Err(Error::ResamplingExhausted(MAX_ATTEMPTS))
}

/// A rational `p/q` in `[lo_numer/q, 1)` with `2 ≤ q ≤ bound`, or `None` if
/// the bound admits none.
fn draw_fraction(rng: &mut ChaCha8Rng, bound: u32, allow_zero: bool) -> Option<Scalar> {
    let lo_q = if allow_zero { 1 } else { 2 };
    if bound < lo_q {
        return None;
    }
    let q = rng.gen_range(lo_q..=bound) as i64;
    let p = rng.gen_range(if allow_zero { 0 } else { 1 }..q);
    Some(Scalar::ratio(p, q))
}

fn draw(config: &GeneratorConfig, seed: u64, rng: &mut ChaCha8Rng) -> Option<InstanceSpec> {
    let bound = config.denominator_bound;
    let m = rng.gen_range(0..=config.m_max);
    let alpha = match config.backend {
        Backend::Rational => draw_fraction(rng, bound, false)?,
        Backend::Surd => SURD_ALPHAS
            .choose(rng)
            .expect("nonempty")
            .parse()
            .expect("valid literal"),
    };
    let mut betas = Vec::with_capacity(m);
    for _ in 0..m {
        betas.push(draw_fraction(rng, bound, false)?);
    }
    betas.sort_by(|a, b| a.partial_cmp(b).expect("rational"));
    let x = TorusPoint::new(draw_fraction(rng, bound, true)?);
    let sys = RotationSystem::new(alpha.clone(), betas.clone()).ok()?;
    sys.general_position().then_some(InstanceSpec {
        backend: config.backend,
        alpha,
        betas,
        x,
        n: config.word_len,
        seed,
    })
}

/// Result of one named check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    /// First offending word index, for checks that walk a word.
    pub first_mismatch: Option<usize>,
}

impl CheckOutcome {
    fn pass(name: &'static str) -> Self {
        CheckOutcome {
            name,
            passed: true,
            detail: String::new(),
            first_mismatch: None,
        }
    }

    fn fail(name: &'static str, detail: impl Into<String>) -> Self {
        CheckOutcome {
            name,
            passed: false,
            detail: detail.into(),
            first_mismatch: None,
        }
    }

    fn at(mut self, index: usize) -> Self {
        self.first_mismatch = Some(index);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    /// The instance text, or a fixed label for the golden example.
    pub subject: String,
    pub checks: Vec<CheckOutcome>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckOutcome> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.subject)?;
        for c in &self.checks {
            write!(f, "  {} {}", if c.passed { "PASS" } else { "FAIL" }, c.name)?;
            if let Some(j) = c.first_mismatch {
                write!(f, " at index {j}")?;
            }
            if !c.detail.is_empty() {
                write!(f, ": {}", c.detail)?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Runs every check with the universal automaton.
pub fn verify_instance(spec: &InstanceSpec) -> VerificationReport {
    verify_instance_with(spec, &UniversalAutomaton::new(spec.m()))
}

/// Runs every check, recoding with `recoder` in place of the universal automaton.
pub fn verify_instance_with(spec: &InstanceSpec, recoder: &dyn Recoder) -> VerificationReport {
    let subject = spec.to_string();
    let sys = match spec.system() {
        Ok(s) if s.general_position() => s,
        Ok(_) => return setup_failure(subject, "breakpoints not in general position"),
        Err(e) => return setup_failure(subject, e.to_string()),
    };
    let orbit = match sys.orbit(&spec.x, spec.n) {
        Ok(o) => o,
        Err(e) => return setup_failure(subject, e.to_string()),
    };
    let letters = sys
        .sturmian_words(&spec.x, spec.n)
        .and_then(|w| letters_from_columns(&w));
    let atlas = atlas_bruteforce(&sys);

    let mut checks = vec![check_recode(spec, &sys, recoder, &letters)];
    match &atlas {
        Ok(atlas) => {
            checks.push(check_formula(&sys, atlas));
            checks.push(check_alphabet(&sys, atlas));
            checks.push(check_letters(&orbit, &letters, atlas));
            checks.push(check_interior(&sys, atlas));
            checks.push(check_interleaving(&sys));
            checks.push(check_coverage(atlas));
        }
        Err(e) => {
            for name in [
                "atlas-formula",
                "arc-alphabet",
                "letter-atlas",
                "interior-purity",
                "no-interleaving",
                "coverage",
            ] {
                checks.push(CheckOutcome::fail(name, format!("brute-force atlas: {e}")));
            }
        }
    }
    VerificationReport { subject, checks }
}

fn setup_failure(subject: String, why: impl Into<String>) -> VerificationReport {
    VerificationReport {
        subject,
        checks: vec![CheckOutcome::fail("setup", why)],
    }
}

fn check_recode(
    spec: &InstanceSpec,
    sys: &RotationSystem,
    recoder: &dyn Recoder,
    letters: &Result<LetterStream>,
) -> CheckOutcome {
    const NAME: &str = "recode";
    let letters = match letters {
        Ok(l) => l,
        Err(e) => return CheckOutcome::fail(NAME, e.to_string()),
    };
    let direct = match sys.rotation_word(&spec.x, spec.n) {
        Ok(w) => w,
        Err(e) => return CheckOutcome::fail(NAME, e.to_string()),
    };
    match recoder.recode(letters, sys.initial_state(&spec.x)) {
        Err(e) => CheckOutcome::fail(NAME, e.to_string()),
        Ok(out) => match out.first_mismatch(&direct) {
            None => CheckOutcome::pass(NAME),
            Some(j) => CheckOutcome::fail(
                NAME,
                format!(
                    "automaton gives {} where the rotation coding gives {}",
                    letter_at(&out, j),
                    letter_at(&direct, j)
                ),
            )
            .at(j),
        },
    }
}

fn letter_at(w: &CodedWord, j: usize) -> String {
    w.letters()
        .get(j)
        .map_or_else(|| "end of word".to_string(), |l| l.to_string())
}

fn check_formula(sys: &RotationSystem, atlas: &Atlas) -> CheckOutcome {
    const NAME: &str = "atlas-formula";
    for key in CellKey::all(sys.m()).iter().filter(|k| k.is_proper()) {
        let formula = match cell_formula(sys, key) {
            Ok(f) => f,
            Err(e) => return CheckOutcome::fail(NAME, e.to_string()),
        };
        match atlas.cells.get(key) {
            Some(cell) if cell.len() != 1 || cell[0] != formula => {
                let arcs: Vec<String> = cell.iter().map(|a| a.to_string()).collect();
                return CheckOutcome::fail(
                    NAME,
                    format!("K={key}: formula {formula}, brute force {}", arcs.join(" ")),
                );
            }
            None if !formula.is_empty() => {
                return CheckOutcome::fail(
                    NAME,
                    format!("K={key} is not realized but the formula gives {formula}"),
                );
            }
            _ => {}
        }
    }
    CheckOutcome::pass(NAME)
}

fn check_alphabet(sys: &RotationSystem, atlas: &Atlas) -> CheckOutcome {
    const NAME: &str = "arc-alphabet";
    // Keys are arcs by construction; a non-arc would already have failed the atlas.
    let count = atlas.cells.len();
    let bound = 2 * sys.m() + 2;
    if count > bound {
        return CheckOutcome::fail(NAME, format!("{count} realized keys exceed 2m+2 = {bound}"));
    }
    let universal = UniversalAutomaton::new(sys.m()).alphabet();
    if let Some(k) = atlas.keys().find(|k| !universal.contains(k)) {
        return CheckOutcome::fail(NAME, format!("{k} is outside the universal alphabet"));
    }
    CheckOutcome::pass(NAME)
}

fn check_letters(
    orbit: &[TorusPoint],
    letters: &Result<LetterStream>,
    atlas: &Atlas,
) -> CheckOutcome {
    const NAME: &str = "letter-atlas";
    let letters = match letters {
        Ok(l) => l,
        Err(e) => return CheckOutcome::fail(NAME, e.to_string()),
    };
    for (j, (p, k)) in orbit.iter().zip(letters.keys()).enumerate() {
        let cell = atlas.key_at(p);
        if cell != *k {
            return CheckOutcome::fail(NAME, format!("column key {k}, atlas key {cell} at {p}"))
                .at(j);
        }
    }
    CheckOutcome::pass(NAME)
}

fn check_interior(sys: &RotationSystem, atlas: &Atlas) -> CheckOutcome {
    const NAME: &str = "interior-purity";
    let points = match sys.breakpoints() {
        Ok(p) => p,
        Err(e) => return CheckOutcome::fail(NAME, e.to_string()),
    };
    for (key, arcs) in atlas.cells.iter().filter(|(k, _)| !k.is_empty()) {
        for arc in arcs {
            if let Some(p) = points.iter().find(|p| arc.interior_contains(p)) {
                return CheckOutcome::fail(
                    NAME,
                    format!("{p} lies inside the cell {arc} of K={key}"),
                );
            }
        }
    }
    CheckOutcome::pass(NAME)
}

fn check_interleaving(sys: &RotationSystem) -> CheckOutcome {
    const NAME: &str = "no-interleaving";
    match check_no_interleaving(sys) {
        Ok(true) => CheckOutcome::pass(NAME),
        Ok(false) => CheckOutcome::fail(NAME, "a realized key interleaves with its complement"),
        Err(e) => CheckOutcome::fail(NAME, e.to_string()),
    }
}

fn check_coverage(atlas: &Atlas) -> CheckOutcome {
    const NAME: &str = "coverage";
    let arcs: Vec<_> = atlas.cells.values().flatten().collect();
    let mut total = Scalar::zero();
    for (i, a) in arcs.iter().enumerate() {
        for b in &arcs[i + 1..] {
            if !intersect(a, b).is_empty() {
                return CheckOutcome::fail(NAME, format!("cells {a} and {b} overlap"));
            }
        }
        match a.length().and_then(|l| total.try_add(&l)) {
            Ok(t) => total = t,
            Err(e) => return CheckOutcome::fail(NAME, e.to_string()),
        }
    }
    if total.compare(&Scalar::one()) != Ok(Ordering::Equal) {
        return CheckOutcome::fail(NAME, format!("cell lengths sum to {total}"));
    }
    CheckOutcome::pass(NAME)
}

/// Replays the worked example for `m = 2` with `q0 = 0`.
pub fn golden_example() -> VerificationReport {
    let words = parse_rows(EXAMPLE_WORDS).expect("fixed words");
    golden_example_with(&words, EXAMPLE_RECODED)
}

/// Recodes `words` from state 0 and compares with `expected`.
pub fn golden_example_with(words: &[BinaryWord], expected: &str) -> VerificationReport {
    let mut checks = Vec::new();
    let subject = format!(
        "golden m={} n={}",
        words.len().saturating_sub(1),
        expected.len()
    );
    let letters = match letters_from_columns(words) {
        Ok(l) => {
            checks.push(CheckOutcome::pass("columns"));
            l
        }
        Err(e) => {
            checks.push(CheckOutcome::fail("columns", e.to_string()));
            return VerificationReport { subject, checks };
        }
    };
    let expected: CodedWord = match expected.parse() {
        Ok(w) => w,
        Err(e) => {
            checks.push(CheckOutcome::fail("recode", e.to_string()));
            return VerificationReport { subject, checks };
        }
    };
    let auto = UniversalAutomaton::new(letters.m());
    checks.push(match auto.recode(&letters, 0) {
        Err(e) => CheckOutcome::fail("recode", e.to_string()),
        Ok(out) => match out.first_mismatch(&expected) {
            None => CheckOutcome::pass("recode"),
            Some(j) => {
                CheckOutcome::fail("recode", format!("got {out}, expected {expected}")).at(j)
            }
        },
    });
    VerificationReport { subject, checks }
}

/// Generates and verifies one instance per seed, spreading seeds over threads.
/// Reports come back in seed order.
pub fn verify_seeds(
    config: &GeneratorConfig,
    seeds: std::ops::Range<u64>,
) -> Result<Vec<VerificationReport>> {
    let specs = seeds
        .map(|s| random_instance(config, s))
        .collect::<Result<Vec<_>>>()?;
    let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
    let chunk = specs.len().div_ceil(threads).max(1);
    Ok(std::thread::scope(|scope| {
        let handles: Vec<_> = specs
            .chunks(chunk)
            .map(|part| scope.spawn(move || part.iter().map(verify_instance).collect::<Vec<_>>()))
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("verifier thread panicked"))
            .collect()
    }))
}
