use std::path::PathBuf;
use std::process::{Command, Output};

fn rotcode(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rotcode"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

const WORKED: [&str; 4] = ["--alpha", "3/10", "--betas", "1/4,3/5"];

#[test]
fn recodes_example_file() {
    let words = data("example_words.txt");
    let o = rotcode(&[
        "recode",
        "--m",
        "2",
        "--words",
        words.to_str().unwrap(),
        "--q0",
        "0",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o), "0120201202012020\n");
}

#[test]
fn codes_worked_system() {
    let o = rotcode(&[&["code"], &WORKED[..], &["--x", "0", "--n", "10"]].concat());
    assert!(o.status.success());
    assert_eq!(stdout(&o), "0122012012\n");
}

#[test]
fn sturmian_rows_recode_to_direct_coding() {
    let x = "7/13";
    let rows = rotcode(&[&["sturmian"], &WORKED[..], &["--x", x, "--n", "200"]].concat());
    assert!(rows.status.success());
    assert_eq!(stdout(&rows).lines().count(), 3);
    let file = scratch("worked_rows.txt", &stdout(&rows));

    let direct = rotcode(&[&["code"], &WORKED[..], &["--x", x, "--n", "200"]].concat());
    let recoded = rotcode(
        &[
            &[
                "recode",
                "--m",
                "2",
                "--words",
                file.to_str().unwrap(),
                "--x",
                x,
            ][..],
            &WORKED[..],
        ]
        .concat(),
    );
    assert!(recoded.status.success(), "{}", stderr(&recoded));
    assert_eq!(stdout(&recoded), stdout(&direct));
}

#[test]
fn single_sturmian_row() {
    let o = rotcode(&[&["sturmian", "--ell", "0"], &WORKED[..], &["--n", "10"]].concat());
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim().len(), 10);
}

#[test]
fn atlas_lists_scattered_empty_cell() {
    let o = rotcode(&[&["atlas"], &WORKED[..]].concat());
    assert!(o.status.success());
    assert!(
        stdout(&o)
            .lines()
            .any(|l| l == "K={}: [11/20,3/5[ [9/10,0["),
        "{}",
        stdout(&o)
    );
}

#[test]
fn automaton_exports() {
    let text = rotcode(&["automaton", "--m", "1", "--format", "text"]);
    assert!(text.status.success());
    let triples = stdout(&text)
        .lines()
        .filter(|l| l.trim_start().starts_with('('))
        .count();
    assert_eq!(triples, 8);

    let dot = rotcode(&["automaton", "--m", "2", "--format", "dot"]);
    let dot = stdout(&dot);
    assert!(dot.starts_with("digraph universal_m2 {"));
    assert_eq!(dot.matches(" -> ").count(), 3 * 8);
}

#[test]
fn verify_passes_on_small_run() {
    let o = rotcode(&["verify", "--seeds", "10", "--n", "200"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("10 of 10 rational instances passed"));

    let o = rotcode(&["verify", "--seeds", "4", "--n", "200", "--backend", "surd"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn complexity_of_rotation_word() {
    let word = rotcode(&[
        "code",
        "--alpha",
        "surd(-1,1,2)",
        "--betas",
        "1/2",
        "--n",
        "2000",
    ]);
    let file = scratch("rote.txt", &stdout(&word));
    let o = rotcode(&[
        "complexity",
        "--input",
        file.to_str().unwrap(),
        "--max-n",
        "8",
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "2 4 6 8 10 12 14 16\n");
    assert!(stderr(&o).is_empty());

    let short = rotcode(&[
        "complexity",
        "--input",
        file.to_str().unwrap(),
        "--max-n",
        "50",
    ]);
    assert!(short.status.success());
    assert!(stderr(&short).starts_with("warning:"));
}

#[test]
fn bad_input_exits_2() {
    for args in [
        vec!["code", "--alpha", "1/2", "--n", "4"],
        vec!["code", "--alpha", "abc", "--n", "4"],
        vec!["recode", "--m", "3", "--words", "/nonexistent", "--q0", "0"],
        vec!["automaton", "--m", "1", "--format", "png"],
        vec!["verify", "--backend", "float"],
    ] {
        let o = rotcode(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(stdout(&o).is_empty());
        assert!(stderr(&o).starts_with("error"), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn wrong_row_count_is_rejected() {
    let words = data("example_words.txt");
    let o = rotcode(&[
        "recode",
        "--m",
        "1",
        "--words",
        words.to_str().unwrap(),
        "--q0",
        "0",
    ]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("expected m+1 = 2"));
}
