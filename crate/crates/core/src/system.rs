//! Rotations of the circle, their codings, and the windowed binary codings.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use crate::circle::TorusInterval;
use crate::error::{Error, Result};
use crate::exact::{add_mod1, Scalar, TorusPoint};

/// Rotation angle `alpha ∈ (0,1/2)` with interior breakpoints
/// `0 < beta_1 < … < beta_m < 1`.
///
/// Indices run over `0..=m` with `beta_0 = 0`. The partition cells are
/// `B_k = [beta_k, beta_{k+1}[` and the windows are `I_k = [beta_k, beta_k + alpha[`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationSystem {
    alpha: Scalar,
    /// `beta_0 = 0` followed by the interior breakpoints.
    betas: Vec<TorusPoint>,
    general_position: bool,
}

impl RotationSystem {
    /// Validates the parameters. Coincidences among the `2m+2` points
    /// `beta_k`, `beta_k + alpha` do not fail here; they clear
    /// [`general_position`](Self::general_position).
    pub fn new(alpha: Scalar, interior: Vec<Scalar>) -> Result<Self> {
        let half = Scalar::ratio(1, 2);
        if alpha.signum() != Ordering::Greater || alpha.compare(&half)? != Ordering::Less {
            return Err(Error::AlphaOutOfRange(alpha.to_string()));
        }
        let mut betas = Vec::with_capacity(interior.len() + 1);
        betas.push(TorusPoint::zero());
        let one = Scalar::one();
        for b in interior {
            // Also rejects a beta from a second field.
            alpha.compare(&b)?;
            if b.signum() != Ordering::Greater || b.compare(&one)? != Ordering::Less {
                return Err(Error::InvalidBreakpoints(format!("{b} is not in (0,1)")));
            }
            let prev = betas.last().expect("beta_0").value();
            if b.compare(prev)? != Ordering::Greater {
                return Err(Error::InvalidBreakpoints(format!(
                    "{b} does not exceed its predecessor {prev}"
                )));
            }
            betas.push(TorusPoint::new(b));
        }
        let mut sys = RotationSystem {
            alpha,
            betas,
            general_position: false,
        };
        let mut pts = sys.breakpoints()?;
        let count = pts.len();
        pts.sort_by(|a, b| a.cmp_repr(b));
        pts.dedup();
        sys.general_position = pts.len() == count;
        Ok(sys)
    }

    /// Parses literals, e.g. `RotationSystem::parse("3/10", &["1/4", "3/5"])`.
    pub fn parse(alpha: &str, betas: &[&str]) -> Result<Self> {
        let betas = betas
            .iter()
            .map(|b| b.parse())
            .collect::<Result<Vec<Scalar>>>()?;
        RotationSystem::new(alpha.parse()?, betas)
    }

    pub fn alpha(&self) -> &Scalar {
        &self.alpha
    }

    /// Number of interior breakpoints; the alphabet is `0..=m`.
    pub fn m(&self) -> usize {
        self.betas.len() - 1
    }

    pub fn general_position(&self) -> bool {
        self.general_position
    }

    /// `beta_j` with the index taken mod `m+1`, so `beta_{m+1} ≡ 1 ≡ 0`.
    pub fn beta(&self, j: isize) -> &TorusPoint {
        let n = self.betas.len() as isize;
        &self.betas[j.rem_euclid(n) as usize]
    }

    /// `beta_j + alpha mod 1`, index mod `m+1`.
    pub fn shifted_beta(&self, j: isize) -> TorusPoint {
        add_mod1(self.beta(j), &self.alpha).expect("alpha and betas share a field")
    }

    /// All `beta_k` followed by all `beta_k + alpha`, unsorted.
    pub fn breakpoints(&self) -> Result<Vec<TorusPoint>> {
        let mut pts = self.betas.clone();
        for b in &self.betas {
            pts.push(add_mod1(b, &self.alpha)?);
        }
        Ok(pts)
    }

    /// `B_k = [beta_k, beta_{k+1}[`. With `m = 0` the single cell is the whole
    /// circle, which comes back as the empty value `[0,0[`; use
    /// [`initial_state`](Self::initial_state) to locate points.
    pub fn cell(&self, k: usize) -> TorusInterval {
        let k = k as isize;
        TorusInterval::new(self.beta(k).clone(), self.beta(k + 1).clone())
    }

    /// `I_k = [beta_k, beta_k + alpha[`.
    pub fn window(&self, k: usize) -> TorusInterval {
        let k = k as isize;
        TorusInterval::new(self.beta(k).clone(), self.shifted_beta(k))
    }

    pub fn rotate(&self, x: &TorusPoint) -> Result<TorusPoint> {
        add_mod1(x, &self.alpha)
    }

    /// `[x, x+alpha, …, x+(n−1)alpha] mod 1`.
    pub fn orbit(&self, x: &TorusPoint, n: usize) -> Result<Vec<TorusPoint>> {
        let mut out = Vec::with_capacity(n);
        if n == 0 {
            return Ok(out);
        }
        self.alpha.compare(x.value())?;
        let mut cur = x.clone();
        for _ in 1..n {
            let next = self.rotate(&cur)?;
            out.push(cur);
            cur = next;
        }
        out.push(cur);
        Ok(out)
    }

    /// The unique `i` with `x ∈ B_i`.
    pub fn initial_state(&self, x: &TorusPoint) -> usize {
        // betas are sorted, so B_i is the last cell whose left end is ≤ x.
        self.betas
            .partition_point(|b| b.cmp_repr(x) != Ordering::Greater)
            - 1
    }

    /// Coding of the orbit of `x` by the partition `{B_k}`.
    pub fn rotation_word(&self, x: &TorusPoint, n: usize) -> Result<CodedWord> {
        let letters = self
            .orbit(x, n)?
            .iter()
            .map(|p| self.initial_state(p))
            .collect();
        Ok(CodedWord::new(letters, self.m()))
    }

    /// Bit `j` is 1 iff the `j`-th orbit point lies in the window `I_ell`.
    pub fn sturmian_word(&self, ell: usize, x: &TorusPoint, n: usize) -> Result<BinaryWord> {
        if ell > self.m() {
            return Err(Error::IndexOutOfRange {
                index: ell,
                m: self.m(),
            });
        }
        let window = self.window(ell);
        let bits = self
            .orbit(x, n)?
            .iter()
            .map(|p| window.contains(p))
            .collect();
        Ok(BinaryWord(bits))
    }

    /// The `m+1` windowed codings, row `ell` for window `I_ell`.
    pub fn sturmian_words(&self, x: &TorusPoint, n: usize) -> Result<Vec<BinaryWord>> {
        let orbit = self.orbit(x, n)?;
        Ok((0..=self.m())
            .map(|ell| {
                let window = self.window(ell);
                BinaryWord(orbit.iter().map(|p| window.contains(p)).collect())
            })
            .collect())
    }
}

impl fmt::Display for RotationSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "alpha={} betas=", self.alpha)?;
        let interior: Vec<String> = self.betas[1..].iter().map(|b| b.to_string()).collect();
        write!(f, "{}", interior.join(","))
    }
}

/// A finite word over `{0,…,m}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CodedWord {
    letters: Vec<usize>,
    m: usize,
}

impl CodedWord {
    /// # Panics
    ///
    /// If a letter exceeds `m`.
    pub fn new(letters: Vec<usize>, m: usize) -> Self {
        assert!(letters.iter().all(|&l| l <= m), "letter out of range");
        CodedWord { letters, m }
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Index of the first differing letter, or of the shorter word's end.
    pub fn first_mismatch(&self, other: &CodedWord) -> Option<usize> {
        let n = self.len().min(other.len());
        (0..n)
            .find(|&j| self.letters[j] != other.letters[j])
            .or_else(|| (self.len() != other.len()).then_some(n))
    }
}

impl fmt::Display for CodedWord {
    /// A digit string when every letter is below 10, else space-separated.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.letters.iter().all(|&l| l < 10) {
            ""
        } else {
            " "
        };
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        f.write_str(&parts.join(sep))
    }
}

impl FromStr for CodedWord {
    type Err = Error;

    /// Parses a digit string; the alphabet size is taken from the largest letter.
    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .trim()
            .chars()
            .map(|c| {
                c.to_digit(10)
                    .map(|d| d as usize)
                    .ok_or_else(|| Error::parse(s, format!("{c:?} is not a digit")))
            })
            .collect::<Result<Vec<_>>>()?;
        let m = letters.iter().copied().max().unwrap_or(0);
        Ok(CodedWord { letters, m })
    }
}

/// A finite word over `{0,1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryWord(pub Vec<bool>);

impl BinaryWord {
    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn truncated(&self, n: usize) -> BinaryWord {
        BinaryWord(self.0[..n.min(self.len())].to_vec())
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BinaryWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::parse(s, format!("{c:?} is not a bit"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(BinaryWord)
    }
}

/// Serializes `m+1` binary words one per line, row `ell` = word `ell`.
pub fn format_rows(words: &[BinaryWord]) -> String {
    let mut out = String::new();
    for w in words {
        out.push_str(&w.to_string());
        out.push('\n');
    }
    out
}

/// Parses newline-separated bit rows, skipping blank lines.
pub fn parse_rows(text: &str) -> Result<Vec<BinaryWord>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(str::parse)
        .collect()
}

/// `p(1), …, p(max_n)`: the number of distinct length-`n` blocks of `word`.
pub fn factor_complexity<T: Eq + Hash>(word: &[T], max_n: usize) -> Result<Vec<usize>> {
    if max_n > word.len() {
        return Err(Error::WordTooShort {
            max_n,
            len: word.len(),
        });
    }
    Ok((1..=max_n)
        .map(|n| word.windows(n).collect::<HashSet<_>>().len())
        .collect())
}

/// Complexity counts together with the prefix length they were taken from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComplexityProfile {
    pub counts: Vec<usize>,
    pub prefix_len: usize,
}

/// Grows a prefix by doubling from `initial_len` until the counts agree with
/// those of the previous (half-length) prefix, or `max_len` is reached.
///
/// `generate(len)` must return the first `len` letters of one fixed word.
pub fn stabilized_complexity<T, F>(
    mut generate: F,
    max_n: usize,
    initial_len: usize,
    max_len: usize,
) -> Result<ComplexityProfile>
where
    T: Eq + Hash,
    F: FnMut(usize) -> Result<Vec<T>>,
{
    let mut len = initial_len.max(max_n);
    let mut previous = factor_complexity(&generate(len)?, max_n)?;
    while len < max_len {
        let next_len = (len * 2).min(max_len);
        let counts = factor_complexity(&generate(next_len)?, max_n)?;
        let stable = counts == previous;
        previous = counts;
        len = next_len;
        if stable {
            break;
        }
    }
    Ok(ComplexityProfile {
        counts: previous,
        prefix_len: len,
    })
}
