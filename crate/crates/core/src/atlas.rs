//! The cells `X_K`: points lying in exactly the windows `I_k`, `k ∈ K`.
//!
//! Cells are computed twice. [`atlas_bruteforce`] classifies the midpoint of
//! every atomic interval between consecutive breakpoints; [`cell_formula`]
//! evaluates the closed form `[beta_{l-1}, beta_k+alpha[ ∩ [beta_{k-1}+alpha, beta_l[`
//! for an arc `K = {k, …, l−1}`. Agreement between the two is a test, not an
//! assumption.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::circle::{c_ordered, intersect, TorusInterval};
use crate::error::{Error, Result};
use crate::exact::TorusPoint;
use crate::system::RotationSystem;

/// A circularly contiguous subset of `M = {0,…,m}`.
///
/// Stored as `(start, len)`: the members are `start, start+1, …` mod `m+1`.
/// `len = 0` is the empty key and `len = m+1` is `M` itself; both use `start = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CellKey {
    m: usize,
    start: usize,
    len: usize,
}

impl CellKey {
    pub const MAX_M: usize = 63;

    pub fn empty(m: usize) -> Self {
        CellKey {
            m,
            start: 0,
            len: 0,
        }
    }

    pub fn full(m: usize) -> Self {
        CellKey {
            m,
            start: 0,
            len: m + 1,
        }
    }

    /// The arc `{start, …, start+len−1}` mod `m+1`.
    pub fn arc(m: usize, start: usize, len: usize) -> Result<Self> {
        if start > m {
            return Err(Error::IndexOutOfRange { index: start, m });
        }
        if len > m + 1 {
            return Err(Error::SizeMismatch(format!(
                "arc of length {len} over {} indices",
                m + 1
            )));
        }
        Ok(match len {
            0 => CellKey::empty(m),
            l if l == m + 1 => CellKey::full(m),
            _ => CellKey { m, start, len },
        })
    }

    /// Builds a key from a membership mask, failing unless the set is an arc.
    pub fn from_members(m: usize, members: &[bool]) -> Result<Self> {
        if members.len() != m + 1 {
            return Err(Error::SizeMismatch(format!(
                "{} membership flags for m = {m}",
                members.len()
            )));
        }
        let n = m + 1;
        let count = members.iter().filter(|&&b| b).count();
        if count == 0 {
            return Ok(CellKey::empty(m));
        }
        if count == n {
            return Ok(CellKey::full(m));
        }
        let starts: Vec<usize> = (0..n)
            .filter(|&i| members[i] && !members[(i + n - 1) % n])
            .collect();
        if starts.len() != 1 {
            return Err(Error::NotAnArc(format_members(
                (0..n).filter(|&i| members[i]),
            )));
        }
        Ok(CellKey {
            m,
            start: starts[0],
            len: count,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `|K|`.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn is_full(&self) -> bool {
        self.len == self.m + 1
    }

    /// Neither `∅` nor `M`.
    pub fn is_proper(&self) -> bool {
        !self.is_empty() && !self.is_full()
    }

    /// `(k, l)` with `K = {k, …, l−1}` mod `m+1`; `l` may exceed `m`.
    pub fn bounds(&self) -> (usize, usize) {
        (self.start, self.start + self.len)
    }

    pub fn contains(&self, i: usize) -> bool {
        let n = self.m + 1;
        i <= self.m && (i + n - self.start) % n < self.len
    }

    /// Members in arc order.
    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        let n = self.m + 1;
        (0..self.len).map(move |t| (self.start + t) % n)
    }

    /// Every key over `M`: `∅`, the `m(m+1)` proper arcs, and `M`.
    pub fn all(m: usize) -> Vec<CellKey> {
        let mut keys = vec![CellKey::empty(m)];
        for start in 0..=m {
            for len in 1..=m {
                keys.push(CellKey { m, start, len });
            }
        }
        keys.push(CellKey::full(m));
        keys
    }
}

fn format_members(members: impl Iterator<Item = usize>) -> String {
    let parts: Vec<String> = members.map(|i| i.to_string()).collect();
    format!("{{{}}}", parts.join(","))
}

impl Ord for CellKey {
    /// `∅` first, then proper arcs by `(start, len)`, then `M`.
    fn cmp(&self, other: &Self) -> Ordering {
        let rank = |k: &CellKey| match () {
            _ if k.is_empty() => 0,
            _ if k.is_full() => 2,
            _ => 1,
        };
        self.m
            .cmp(&other.m)
            .then(rank(self).cmp(&rank(other)))
            .then(self.start.cmp(&other.start))
            .then(self.len.cmp(&other.len))
    }
}

impl PartialOrd for CellKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CellKey {
    /// `{}`, `M`, or the members in arc order such as `{2,0}`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_full() {
            f.write_str("M")
        } else {
            f.write_str(&format_members(self.members()))
        }
    }
}

/// The cells of one system, keyed by window membership.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Atlas {
    /// Each key's cell as disjoint arcs in circle order (one arc unless `K = ∅`).
    pub cells: BTreeMap<CellKey, Vec<TorusInterval>>,
    /// The `2m+2` breakpoints in increasing order, starting at 0.
    pub atomic_points: Vec<TorusPoint>,
    /// Atomic intervals with their classification, in circle order.
    pub atoms: Vec<(TorusInterval, CellKey)>,
}

impl Atlas {
    /// Key of the cell containing `p`.
    pub fn key_at(&self, p: &TorusPoint) -> CellKey {
        // atoms are sorted by start and begin at 0.
        let idx = self
            .atoms
            .partition_point(|(iv, _)| iv.start().cmp_repr(p) != Ordering::Greater);
        self.atoms[idx - 1].1
    }

    /// Keys that occur, in canonical order.
    pub fn keys(&self) -> impl Iterator<Item = &CellKey> {
        self.cells.keys()
    }
}

impl fmt::Display for Atlas {
    /// One line per key: `K={0,1}: [1/4,3/10[`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (key, arcs) in &self.cells {
            write!(f, "K={key}:")?;
            for a in arcs {
                write!(f, " {a}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// The `2m+2` arcs between consecutive sorted points `beta_k` and `beta_k + alpha`.
pub fn atomic_partition(sys: &RotationSystem) -> Result<Vec<TorusInterval>> {
    let pts = atomic_points(sys)?;
    let n = pts.len();
    Ok((0..n)
        .map(|i| TorusInterval::new(pts[i].clone(), pts[(i + 1) % n].clone()))
        .collect())
}

fn atomic_points(sys: &RotationSystem) -> Result<Vec<TorusPoint>> {
    if !sys.general_position() {
        return Err(Error::DegenerateBreakpoints);
    }
    let mut pts = sys.breakpoints()?;
    pts.sort_by(|a, b| a.cmp_repr(b));
    Ok(pts)
}

/// Each atomic interval with the set of windows containing its midpoint,
/// as raw membership flags indexed `0..=m`.
pub fn classify_atoms(sys: &RotationSystem) -> Result<Vec<(TorusInterval, Vec<bool>)>> {
    let windows: Vec<TorusInterval> = (0..=sys.m()).map(|k| sys.window(k)).collect();
    atomic_partition(sys)?
        .into_iter()
        .map(|part| {
            let mid = part.midpoint()?;
            let flags = windows.iter().map(|w| w.contains(&mid)).collect();
            Ok((part, flags))
        })
        .collect()
}

/// Classifies each atomic interval by the windows containing its midpoint and
/// merges neighbours with equal keys.
pub fn atlas_bruteforce(sys: &RotationSystem) -> Result<Atlas> {
    let atomic_points = atomic_points(sys)?;
    let atoms = classify_atoms(sys)?
        .into_iter()
        .map(|(part, flags)| Ok((part, CellKey::from_members(sys.m(), &flags)?)))
        .collect::<Result<Vec<_>>>()?;

    let mut cells: BTreeMap<CellKey, Vec<TorusInterval>> = BTreeMap::new();
    for (part, key) in &atoms {
        let arcs = cells.entry(*key).or_default();
        match arcs.last_mut() {
            Some(last) if last.end() == part.start() => {
                *last = TorusInterval::new(last.start().clone(), part.end().clone());
            }
            _ => arcs.push(part.clone()),
        }
    }
    // The last arc of a key may continue into its first one across 0.
    for arcs in cells.values_mut() {
        if arcs.len() >= 2 && arcs[arcs.len() - 1].end() == arcs[0].start() {
            let tail = arcs.pop().expect("len >= 2");
            arcs[0] = TorusInterval::new(tail.start().clone(), arcs[0].end().clone());
        }
    }

    Ok(Atlas {
        cells,
        atomic_points,
        atoms,
    })
}

/// All pieces of `[beta_{l-1}, beta_k+alpha[ ∩ [beta_{k-1}+alpha, beta_l[`
/// for a proper arc `K = {k, …, l−1}`, indices mod `m+1`.
pub fn cell_formula_pieces(sys: &RotationSystem, key: &CellKey) -> Result<Vec<TorusInterval>> {
    if !key.is_proper() || key.m() != sys.m() {
        return Err(Error::FormulaNotApplicable(key.to_string()));
    }
    if !sys.general_position() {
        return Err(Error::DegenerateBreakpoints);
    }
    let (k, l) = key.bounds();
    let (k, l) = (k as isize, l as isize);
    let inner = TorusInterval::new(sys.beta(l - 1).clone(), sys.shifted_beta(k));
    let outer = TorusInterval::new(sys.shifted_beta(k - 1), sys.beta(l).clone());
    Ok(intersect(&inner, &outer))
}

/// The closed-form cell of a proper arc key, or the empty arc when the key
/// is not realized.
///
/// A nonempty cell is always a single arc, so a closed form that falls apart
/// into two pieces certifies `X_K = ∅` and is reported as empty.
pub fn cell_formula(sys: &RotationSystem, key: &CellKey) -> Result<TorusInterval> {
    let mut pieces = cell_formula_pieces(sys, key)?;
    match pieces.len() {
        1 => Ok(pieces.remove(0)),
        _ => Ok(TorusInterval::empty_at(sys.beta(0).clone())),
    }
}

/// For every realized nonempty membership set `K` and every c-ordered
/// quadruple of breakpoints `(beta_a, beta_b, beta_c, beta_d)` with `a, c ∈ K`,
/// either `b ∈ K` or `d ∈ K`.
///
/// Works on the raw window-membership flags of the atomic intervals, so a
/// non-arc classification is reported as `false` rather than as an error.
pub fn check_no_interleaving(sys: &RotationSystem) -> Result<bool> {
    let masks: Vec<Vec<bool>> = classify_atoms(sys)?.into_iter().map(|(_, f)| f).collect();
    Ok(no_interleaving_in(sys, &masks))
}

pub(crate) fn no_interleaving_in(sys: &RotationSystem, masks: &[Vec<bool>]) -> bool {
    let n = sys.m() + 1;
    let beta = |i: usize| sys.beta(i as isize);
    let masks: Vec<&Vec<bool>> = masks.iter().filter(|f| f.iter().any(|&b| b)).collect();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    if !c_ordered(&[beta(a), beta(b), beta(c), beta(d)]) {
                        continue;
                    }
                    if masks.iter().any(|k| k[a] && k[c] && !k[b] && !k[d]) {
                        return false;
                    }
                }
            }
        }
    }
    true
}
