//! The universal recoding automaton.
//!
//! States are the partition cells `0..=m`. Reading the window-membership set
//! `K` of the next orbit point moves state `i` to `i + |K| mod m+1`, which
//! turns the `m+1` binary window codings back into the rotation coding.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::atlas::{atlas_bruteforce, CellKey};
use crate::error::{Error, Result};
use crate::system::{BinaryWord, CodedWord, RotationSystem};

/// Anything that steps a state by a cell key. [`UniversalAutomaton`] is the
/// real one; tests plug in deliberately broken variants.
pub trait Recoder {
    fn m(&self) -> usize;

    fn next_state(&self, state: usize, letter: &CellKey) -> usize;

    /// `out[0] = q0` and `out[j] = next_state(out[j-1], K_j)` for `j ≥ 1`.
    /// The letter `K_0` belongs to the start point and is not read.
    fn recode(&self, letters: &LetterStream, q0: usize) -> Result<CodedWord> {
        check_stream(self.m(), letters, q0)?;
        let mut out = Vec::with_capacity(letters.len());
        let mut state = q0;
        for (j, key) in letters.keys().iter().enumerate() {
            if j > 0 {
                state = self.next_state(state, key);
            }
            out.push(state);
        }
        Ok(CodedWord::new(out, self.m()))
    }
}

pub(crate) fn check_stream(m: usize, letters: &LetterStream, q0: usize) -> Result<()> {
    if letters.m() != m {
        return Err(Error::SizeMismatch(format!(
            "letters over m = {} fed to an automaton with m = {m}",
            letters.m()
        )));
    }
    if q0 > m {
        return Err(Error::IndexOutOfRange { index: q0, m });
    }
    Ok(())
}

/// Deterministic and complete over every arc key of `{0,…,m}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UniversalAutomaton {
    m: usize,
}

impl UniversalAutomaton {
    pub fn new(m: usize) -> Self {
        UniversalAutomaton { m }
    }

    pub fn states(&self) -> std::ops::RangeInclusive<usize> {
        0..=self.m
    }

    /// `∅`, the proper arcs, and `M`: `m² + m + 2` letters.
    pub fn alphabet(&self) -> Vec<CellKey> {
        CellKey::all(self.m)
    }

    pub fn transition(&self, state: usize, letter: &CellKey) -> usize {
        (state + letter.len()) % (self.m + 1)
    }

    /// Every `(i, K, j)`, sorted by state then canonical key order.
    pub fn transitions(&self) -> Vec<(usize, CellKey, usize)> {
        let alphabet = self.alphabet();
        self.states()
            .flat_map(|i| alphabet.iter().map(move |k| (i, *k, self.transition(i, k))))
            .collect()
    }

    pub fn export(&self, format: ExportFormat) -> String {
        match format {
            ExportFormat::Dot => self.render_dot(),
            ExportFormat::Text => self.render_text(),
        }
    }

    fn render_dot(&self) -> String {
        let mut out = String::new();
        writeln!(out, "digraph universal_m{} {{", self.m).unwrap();
        writeln!(out, "  rankdir=LR;").unwrap();
        for i in self.states() {
            writeln!(out, "  {i} [shape=circle];").unwrap();
        }
        for (i, k, j) in self.transitions() {
            writeln!(out, "  {i} -> {j} [label=\"{k}\"];").unwrap();
        }
        out.push_str("}\n");
        out
    }

    fn render_text(&self) -> String {
        let join = |v: Vec<String>| v.join(", ");
        let mut out = String::new();
        writeln!(out, "m = {}", self.m).unwrap();
        writeln!(
            out,
            "states = [{}]",
            join(self.states().map(|s| s.to_string()).collect())
        )
        .unwrap();
        writeln!(
            out,
            "letters = [{}]",
            join(self.alphabet().iter().map(|k| k.to_string()).collect())
        )
        .unwrap();
        writeln!(out, "transitions = [").unwrap();
        for (i, k, j) in self.transitions() {
            writeln!(out, "  ({i}, {k}, {j}),").unwrap();
        }
        out.push_str("]\n");
        out
    }
}

impl Recoder for UniversalAutomaton {
    fn m(&self) -> usize {
        self.m
    }

    fn next_state(&self, state: usize, letter: &CellKey) -> usize {
        self.transition(state, letter)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Text,
}

impl std::str::FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dot" => Ok(ExportFormat::Dot),
            "text" => Ok(ExportFormat::Text),
            _ => Err(Error::parse(s, "expected dot or text")),
        }
    }
}

/// Column-wise window membership sets read off `m+1` binary words.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LetterStream {
    m: usize,
    keys: Vec<CellKey>,
}

impl LetterStream {
    pub fn new(m: usize, keys: Vec<CellKey>) -> Result<Self> {
        if let Some(k) = keys.iter().find(|k| k.m() != m) {
            return Err(Error::SizeMismatch(format!(
                "key {k} is over m = {}, not {m}",
                k.m()
            )));
        }
        Ok(LetterStream { m, keys })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn keys(&self) -> &[CellKey] {
        &self.keys
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }
}

/// `K_j = { ell : words[ell][j] = 1 }`, each required to be an arc.
pub fn letters_from_columns(words: &[BinaryWord]) -> Result<LetterStream> {
    let Some(first) = words.first() else {
        return Err(Error::SizeMismatch("no words given".into()));
    };
    let n = first.len();
    if let Some((ell, w)) = words.iter().enumerate().find(|(_, w)| w.len() != n) {
        return Err(Error::SizeMismatch(format!(
            "word {ell} has length {}, word 0 has length {n}",
            w.len()
        )));
    }
    let m = words.len() - 1;
    let mut column = vec![false; m + 1];
    let mut keys = Vec::with_capacity(n);
    for j in 0..n {
        for (ell, w) in words.iter().enumerate() {
            column[ell] = w.bits()[j];
        }
        let key = CellKey::from_members(m, &column).map_err(|_| Error::InconsistentColumns {
            index: j,
            column: column.iter().map(|&b| if b { '1' } else { '0' }).collect(),
        })?;
        keys.push(key);
    }
    Ok(LetterStream { m, keys })
}

pub fn recode(auto: &UniversalAutomaton, letters: &LetterStream, q0: usize) -> Result<CodedWord> {
    auto.recode(letters, q0)
}

/// The keys of the cells that occur for this system.
pub fn realized_alphabet(sys: &RotationSystem) -> Result<BTreeSet<CellKey>> {
    Ok(atlas_bruteforce(sys)?.cells.into_keys().collect())
}
