//! Acceptance suite. Runs every criterion at its fixed tolerance, prints one
//! PASS/FAIL line per criterion, and exits nonzero if any fails.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rotcode::atlas::{atlas_bruteforce, cell_formula, check_no_interleaving, CellKey};
use rotcode::automaton::{letters_from_columns, LetterStream, Recoder, UniversalAutomaton};
use rotcode::circle::c_ordered;
use rotcode::exact::{Scalar, TorusPoint};
use rotcode::system::{parse_rows, stabilized_complexity, RotationSystem};
use rotcode::verify::{
    random_instance, GeneratorConfig, InstanceSpec, EXAMPLE_RECODED, EXAMPLE_WORDS,
};
use rotcode::Result;

const INSTANCES: u64 = 1000;
const SOUNDNESS_BUDGET: Duration = Duration::from_secs(60);
const GOLDEN_BUDGET: Duration = Duration::from_millis(1);
const RANDOM_CASES: usize = 10_000;

type Outcome = std::result::Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);
/// Label, angle, breakpoints, window (or `None` for the rotation word), max n, expected p(n).
type ComplexityCase = (
    &'static str,
    &'static str,
    &'static [&'static str],
    Option<usize>,
    usize,
    fn(usize) -> usize,
);

fn main() {
    let specs: Vec<InstanceSpec> = (0..INSTANCES)
        .map(|s| random_instance(&GeneratorConfig::default(), s).expect("generator"))
        .collect();

    let criteria: Vec<Criterion> = vec![
        ("1 golden recoding", Box::new(golden_recoding)),
        ("2 soundness at scale", Box::new(|| soundness(&specs))),
        (
            "3 atlas equivalence",
            Box::new(|| atlas_equivalence(&specs)),
        ),
        ("4 arc structure", Box::new(|| arc_structure(&specs))),
        ("5 scattered empty cell", Box::new(scattered_empty_cell)),
        (
            "6 circular-order calculus",
            Box::new(circular_order_calculus),
        ),
        ("7 complexity claims", Box::new(complexity_claims)),
        (
            "8 mutation sensitivity",
            Box::new(|| mutation_sensitivity(&specs)),
        ),
    ];

    let mut failed = 0;
    for (name, check) in &criteria {
        match check() {
            Ok(note) => println!("PASS  criterion {name}: {note}"),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {name}: {why}");
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}

fn ensure(cond: bool, why: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(why())
    }
}

fn golden_recoding() -> Outcome {
    let words = parse_rows(EXAMPLE_WORDS).map_err(|e| e.to_string())?;
    let auto = UniversalAutomaton::new(2);
    let start = Instant::now();
    let out = letters_from_columns(&words).and_then(|l| auto.recode(&l, 0));
    let elapsed = start.elapsed();
    let out = out.map_err(|e| e.to_string())?.to_string();
    ensure(out == EXAMPLE_RECODED, || {
        format!("got {out}, expected {EXAMPLE_RECODED}")
    })?;
    ensure(elapsed < GOLDEN_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("{out} in {elapsed:?}"))
}

/// Letters and direct coding for one instance.
fn both_codings(spec: &InstanceSpec) -> Result<(RotationSystem, LetterStream)> {
    let sys = spec.system()?;
    let letters = letters_from_columns(&sys.sturmian_words(&spec.x, spec.n)?)?;
    Ok((sys, letters))
}

/// Index of the first mismatch between recoding and direct coding, if any.
fn soundness_failure(spec: &InstanceSpec, recoder: &dyn Recoder) -> Result<Option<usize>> {
    let (sys, letters) = both_codings(spec)?;
    let recoded = recoder.recode(&letters, sys.initial_state(&spec.x))?;
    let direct = sys.rotation_word(&spec.x, spec.n)?;
    Ok(recoded.first_mismatch(&direct))
}

fn soundness(specs: &[InstanceSpec]) -> Outcome {
    let start = Instant::now();
    for spec in specs {
        ensure(spec.m() <= 5 && spec.n == 1000, || {
            format!("instance outside the test envelope: {spec}")
        })?;
        let auto = UniversalAutomaton::new(spec.m());
        match soundness_failure(spec, &auto) {
            Ok(None) => {}
            Ok(Some(j)) => return Err(format!("mismatch at index {j} for {spec}")),
            Err(e) => return Err(format!("{e} for {spec}")),
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < SOUNDNESS_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{} instances, n = 1000, in {elapsed:.2?}",
        specs.len()
    ))
}

fn atlas_equivalence(specs: &[InstanceSpec]) -> Outcome {
    let mut best: BTreeMap<usize, usize> = BTreeMap::new();
    let mut compared = 0usize;
    for spec in specs {
        let sys = spec.system().map_err(|e| e.to_string())?;
        let atlas = atlas_bruteforce(&sys).map_err(|e| format!("{e} for {spec}"))?;
        for (key, cell) in atlas.cells.iter().filter(|(k, _)| k.is_proper()) {
            let formula = cell_formula(&sys, key).map_err(|e| e.to_string())?;
            ensure(cell.len() == 1 && cell[0] == formula, || {
                format!("K={key}: formula {formula} vs brute force {cell:?} for {spec}")
            })?;
            compared += 1;
        }
        let count = atlas.cells.len();
        ensure(count <= 2 * sys.m() + 2, || {
            format!("{count} keys for {spec}")
        })?;
        let e = best.entry(sys.m()).or_default();
        *e = (*e).max(count);
    }
    for m in 0..=5 {
        let got = best.get(&m).copied().unwrap_or(0);
        ensure(got == 2 * m + 2, || {
            format!("m = {m}: at most {got} realized keys, never 2m+2")
        })?;
    }
    Ok(format!(
        "{compared} realized cells agree; 2m+2 keys attained for m = 0..=5"
    ))
}

fn arc_structure(specs: &[InstanceSpec]) -> Outcome {
    for spec in specs {
        let sys = spec.system().map_err(|e| e.to_string())?;
        // atlas_bruteforce rejects any non-arc membership set.
        let atlas = atlas_bruteforce(&sys).map_err(|e| format!("{e} for {spec}"))?;
        let universal = CellKey::all(sys.m());
        ensure(atlas.keys().all(|k| universal.contains(k)), || {
            format!("foreign key for {spec}")
        })?;
        let ok = check_no_interleaving(&sys).map_err(|e| e.to_string())?;
        ensure(ok, || format!("interleaving key for {spec}"))?;
    }
    Ok(format!(
        "{} instances, every key an arc, no interleaving",
        specs.len()
    ))
}

fn scattered_empty_cell() -> Outcome {
    let sys = RotationSystem::parse("3/10", &["1/4", "3/5"]).map_err(|e| e.to_string())?;
    let atlas = atlas_bruteforce(&sys).map_err(|e| e.to_string())?;
    let empty = atlas
        .cells
        .get(&CellKey::empty(2))
        .ok_or("no empty-key cell")?;
    let shown: Vec<String> = empty.iter().map(|a| a.to_string()).collect();
    ensure(shown == ["[11/20,3/5[", "[9/10,0["], || {
        format!("X_empty = {shown:?}")
    })?;
    Ok(format!("X_empty = {}", shown.join(" ∪ ")))
}

fn c_ordered_by_search(xs: &[TorusPoint]) -> bool {
    let n = xs.len();
    (0..n).any(|h| {
        (0..n - 1)
            .all(|t| xs[(h + t) % n].cmp_repr(&xs[(h + t + 1) % n]) != std::cmp::Ordering::Greater)
    })
}

fn random_point(rng: &mut ChaCha8Rng) -> TorusPoint {
    let q = rng.gen_range(1..=1000);
    TorusPoint::ratio(rng.gen_range(0..q), q)
}

fn random_alpha(rng: &mut ChaCha8Rng, below_half: bool) -> Scalar {
    if rng.gen_bool(0.2) {
        let surds = ["surd(3/2,-1/2,5)", "surd(-1,1,2)", "surd(-2,1,5)"];
        return surds[rng.gen_range(0..surds.len())]
            .parse()
            .expect("literal");
    }
    let q = rng.gen_range(2..=1000);
    let top = if below_half { (q + 1) / 2 } else { q };
    Scalar::ratio(rng.gen_range(1..top.max(2)), q)
}

fn translate(xs: &[TorusPoint], alpha: &Scalar) -> Vec<TorusPoint> {
    xs.iter()
        .map(|p| p.add_mod1(alpha).expect("one field"))
        .collect()
}

/// A random c-ordered sequence of length `n`: sorted points, cyclically shifted.
fn c_ordered_sequence(rng: &mut ChaCha8Rng, n: usize) -> Vec<TorusPoint> {
    let mut xs: Vec<TorusPoint> = (0..n).map(|_| random_point(rng)).collect();
    xs.sort_by(|a, b| a.cmp_repr(b));
    let shift = rng.gen_range(0..n);
    xs.rotate_left(shift);
    xs
}

fn circular_order_calculus() -> Outcome {
    // Descent counting against the rotation search, exhaustively on a 6-point grid.
    let grid: Vec<TorusPoint> = (0..6).map(|k| TorusPoint::ratio(k, 6)).collect();
    let mut exhaustive = 0;
    for len in 1..=4u32 {
        for code in 0..6usize.pow(len) {
            let mut c = code;
            let seq: Vec<TorusPoint> = (0..len)
                .map(|_| {
                    let p = grid[c % 6].clone();
                    c /= 6;
                    p
                })
                .collect();
            ensure(c_ordered(&seq) == c_ordered_by_search(&seq), || {
                format!("{seq:?}")
            })?;
            exhaustive += 1;
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(6);
    // Translation rule.
    for _ in 0..RANDOM_CASES {
        let n = rng.gen_range(1..=7);
        let xs = c_ordered_sequence(&mut rng, n);
        let alpha = random_alpha(&mut rng, false);
        ensure(c_ordered(&translate(&xs, &alpha)), || {
            format!("translation of {xs:?} by {alpha}")
        })?;
    }
    // Insertion rule.
    for _ in 0..RANDOM_CASES {
        let n = rng.gen_range(2..=7);
        let xs = c_ordered_sequence(&mut rng, n);
        let i = rng.gen_range(0..n - 1);
        let (first, last) = (xs[i].clone(), xs[i + 1].clone());
        if first == last {
            continue;
        }
        let arc = rotcode::circle::TorusInterval::new(first.clone(), last.clone());
        let mut inner: Vec<TorusPoint> = (0..rng.gen_range(0..5))
            .map(|_| random_point(&mut rng))
            .filter(|p| arc.contains(p) || *p == last)
            .collect();
        let offset = |p: &TorusPoint| arc_offset(&first, p);
        inner.sort_by(|a, b| offset(a).partial_cmp(&offset(b)).expect("rational"));
        let ys: Vec<TorusPoint> = std::iter::once(first.clone())
            .chain(inner.iter().cloned())
            .chain(std::iter::once(last.clone()))
            .collect();
        ensure(c_ordered(&xs) && c_ordered(&ys), || "bad premise".into())?;
        let merged: Vec<TorusPoint> = xs[..=i]
            .iter()
            .chain(inner.iter())
            .chain(xs[i + 1..].iter())
            .cloned()
            .collect();
        ensure(c_ordered(&merged), || {
            format!("inserting {ys:?} into {xs:?}")
        })?;
    }
    // The rule needs y_1 ≠ y_m: (x,y,x) into (x,x,y) gives (x,y,x,y).
    for _ in 0..RANDOM_CASES {
        let (a, b) = (random_point(&mut rng), random_point(&mut rng));
        if a == b {
            continue;
        }
        let (x, y) = if a.cmp_repr(&b).is_lt() {
            (a, b)
        } else {
            (b, a)
        };
        let outer = [x.clone(), x.clone(), y.clone()];
        let inner = [x.clone(), y.clone(), x.clone()];
        ensure(c_ordered(&outer) && c_ordered(&inner), || {
            "bad premise".into()
        })?;
        let merged = [x.clone(), y.clone(), x.clone(), y.clone()];
        ensure(!c_ordered(&merged), || {
            format!("({x},{y},{x},{y}) reported c-ordered")
        })?;
    }
    // (x, y, x+α) c-ordered ⇒ (x, y, x+α, y+α) c-ordered for α < 1/2.
    let mut premises = 0;
    for _ in 0..RANDOM_CASES {
        let alpha = random_alpha(&mut rng, true);
        let x = random_point(&mut rng);
        let y = if rng.gen_bool(0.7) {
            // Somewhere on [x, x+α].
            let t = Scalar::ratio(rng.gen_range(0..=100), 100);
            let step = scale(&alpha, &t);
            x.add_mod1(&step).expect("one field")
        } else {
            random_point(&mut rng)
        };
        let xa = x.add_mod1(&alpha).expect("one field");
        if !c_ordered(&[&x, &y, &xa]) {
            continue;
        }
        premises += 1;
        let ya = y.add_mod1(&alpha).expect("one field");
        ensure(c_ordered(&[&x, &y, &xa, &ya]), || {
            format!("x={x} y={y} alpha={alpha}")
        })?;
    }
    Ok(format!(
        "{exhaustive} grid sequences; {RANDOM_CASES} random cases per rule ({premises} satisfying the shift-rule premise)"
    ))
}

/// `t·alpha` for rational `t`, built from additions and one integer division.
fn scale(alpha: &Scalar, t: &Scalar) -> Scalar {
    let Scalar::Rational(t) = t else {
        unreachable!()
    };
    let numer: i64 = t.numer().try_into().expect("small");
    let denom: i64 = t.denom().try_into().expect("small");
    let mut acc = Scalar::zero();
    for _ in 0..numer {
        acc = acc.try_add(alpha).expect("one field");
    }
    acc.div_int(denom)
}

fn arc_offset(from: &TorusPoint, p: &TorusPoint) -> Scalar {
    p.add_mod1(&from.value().neg())
        .expect("one field")
        .into_value()
}

fn complexity_claims() -> Outcome {
    let mut notes = Vec::new();
    let cases: [ComplexityCase; 3] = [
        (
            "sturmian",
            "surd(3/2,-1/2,5)",
            &["surd(3/2,-1/2,5)"],
            Some(1),
            15,
            |n| n + 1,
        ),
        ("rote", "surd(-1,1,2)", &["1/2"], None, 12, |n| 2 * n),
        (
            "three-interval",
            "surd(-1,1,2)",
            &["1/4", "3/5"],
            None,
            10,
            |n| 3 * n,
        ),
    ];
    for (label, alpha, betas, window, max_n, expected) in cases {
        let sys = RotationSystem::parse(alpha, betas).map_err(|e| e.to_string())?;
        // The Sturmian window sits on beta_1 = alpha by design; only the
        // rotation-word claims need distinct breakpoints.
        ensure(window.is_some() || sys.general_position(), || {
            format!("{label}: not in general position")
        })?;
        let x = TorusPoint::zero();
        let profile = stabilized_complexity(
            |len| match window {
                Some(ell) => sys
                    .sturmian_word(ell, &x, len)
                    .map(|w| w.bits().iter().map(|&b| b as usize).collect()),
                None => sys.rotation_word(&x, len).map(|w| w.letters().to_vec()),
            },
            max_n,
            1000,
            16_000,
        )
        .map_err(|e| e.to_string())?;
        let want: Vec<usize> = (1..=max_n).map(expected).collect();
        ensure(profile.counts == want, || {
            format!("{label}: p = {:?}, expected {want:?}", profile.counts)
        })?;
        ensure(profile.prefix_len <= 16_000, || {
            format!("{label}: prefix {}", profile.prefix_len)
        })?;
        notes.push(format!("{label} stable at prefix {}", profile.prefix_len));
    }
    Ok(notes.join("; "))
}

/// Transition `i + |K| + 1`.
struct ShiftedTransition(usize);

impl Recoder for ShiftedTransition {
    fn m(&self) -> usize {
        self.0
    }
    fn next_state(&self, state: usize, letter: &CellKey) -> usize {
        (state + letter.len() + 1) % (self.0 + 1)
    }
}

/// Correct transition, but output `j` reads the letter of point `j−1`.
struct LaggedLetters(usize);

impl Recoder for LaggedLetters {
    fn m(&self) -> usize {
        self.0
    }
    fn next_state(&self, state: usize, letter: &CellKey) -> usize {
        (state + letter.len()) % (self.0 + 1)
    }
    fn recode(&self, letters: &LetterStream, q0: usize) -> Result<rotcode::system::CodedWord> {
        let mut out = vec![q0];
        for key in &letters.keys()[..letters.len().saturating_sub(1)] {
            out.push(self.next_state(*out.last().expect("nonempty"), key));
        }
        out.truncate(letters.len());
        Ok(rotcode::system::CodedWord::new(out, self.0))
    }
}

fn mutation_sensitivity(specs: &[InstanceSpec]) -> Outcome {
    let first = &specs[0];
    let m = first.m();
    let mutants: [(&str, Box<dyn Recoder>); 2] = [
        ("transition i+|K|+1", Box::new(ShiftedTransition(m))),
        ("letter offset j-1", Box::new(LaggedLetters(m))),
    ];
    let mut notes = Vec::new();
    for (label, mutant) in &mutants {
        match soundness_failure(first, mutant.as_ref()) {
            Ok(Some(j)) => notes.push(format!("{label} caught at index {j}")),
            Ok(None) => return Err(format!("{label} survived the first instance {first}")),
            Err(e) => return Err(e.to_string()),
        }
    }
    Ok(format!("first instance ({first}): {}", notes.join(", ")))
}
