//! Circular order on the torus and half-open arcs `[x,y[`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exact::{add_mod1, Scalar, TorusPoint};

/// True iff the sequence becomes weakly ascending after some cyclic shift.
///
/// Equivalently, walking once around the cycle there is at most one strict
/// descent. The constant sequence has none.
///
/// # Panics
///
/// If points come from different quadratic fields. [`CircularSequence::new`]
/// checks this up front.
pub fn c_ordered<P: std::borrow::Borrow<TorusPoint>>(points: &[P]) -> bool {
    let n = points.len();
    let mut descents = 0;
    for i in 0..n {
        let here = points[i].borrow();
        let next = points[(i + 1) % n].borrow();
        if here.cmp_repr(next) == Ordering::Greater {
            descents += 1;
            if descents > 1 {
                return false;
            }
        }
    }
    true
}

/// A finite sequence of torus points sharing one number field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircularSequence(Vec<TorusPoint>);

impl CircularSequence {
    pub fn new(points: Vec<TorusPoint>) -> Result<Self> {
        let mut field = None;
        for p in &points {
            if let Some(d) = p.value().field() {
                match field {
                    Some(f) if f != d => return Err(Error::FieldMismatch(f, d)),
                    _ => field = Some(d),
                }
            }
        }
        Ok(CircularSequence(points))
    }

    pub fn points(&self) -> &[TorusPoint] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_c_ordered(&self) -> bool {
        c_ordered(&self.0)
    }

    /// Applies the rotation `x ↦ x + alpha mod 1` to every point.
    pub fn translate(&self, alpha: &Scalar) -> Result<CircularSequence> {
        let moved = self
            .0
            .iter()
            .map(|p| add_mod1(p, alpha))
            .collect::<Result<Vec<_>>>()?;
        CircularSequence::new(moved)
    }
}

/// Half-open arc `[start, end[` of the torus.
///
/// `start == end` is the empty arc; `start > end` wraps through 0. The full
/// circle has no representation.
#[derive(Clone, Debug, Eq)]
pub struct TorusInterval {
    start: TorusPoint,
    end: TorusPoint,
}

impl PartialEq for TorusInterval {
    fn eq(&self, other: &Self) -> bool {
        (self.is_empty() && other.is_empty())
            || (self.start == other.start && self.end == other.end)
    }
}

impl TorusInterval {
    pub fn new(start: TorusPoint, end: TorusPoint) -> Self {
        TorusInterval { start, end }
    }

    pub fn empty_at(p: TorusPoint) -> Self {
        TorusInterval {
            start: p.clone(),
            end: p,
        }
    }

    pub fn start(&self) -> &TorusPoint {
        &self.start
    }

    pub fn end(&self) -> &TorusPoint {
        &self.end
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }

    pub fn wraps(&self) -> bool {
        self.start.cmp_repr(&self.end) == Ordering::Greater
    }

    /// `end − start mod 1`; zero only for the empty arc.
    pub fn length(&self) -> Result<Scalar> {
        Ok(add_mod1(&self.end, &self.start.value().neg())?.into_value())
    }

    /// `[x,y[ ∋ p` iff the arc is nonempty, `(x, p, y)` is c-ordered and `p ≠ y`.
    pub fn contains(&self, p: &TorusPoint) -> bool {
        !self.is_empty() && *p != self.end && c_ordered(&[&self.start, p, &self.end])
    }

    /// Membership of the open interior `]x,y[`.
    pub fn interior_contains(&self, p: &TorusPoint) -> bool {
        *p != self.start && self.contains(p)
    }

    /// `[y,x[` for a nonempty `[x,y[`.
    pub fn complement(&self) -> Result<TorusInterval> {
        if self.is_empty() {
            return Err(Error::ComplementOfEmpty);
        }
        Ok(TorusInterval::new(self.end.clone(), self.start.clone()))
    }

    /// A point strictly inside a nonempty arc: the midpoint of its lift.
    pub fn midpoint(&self) -> Result<TorusPoint> {
        let len = self.length()?;
        add_mod1(&self.start, &len.div_int(2))
    }

    /// Pieces of the arc in `[0,1)` as `(lo, hi)` scalars with `hi` possibly 1.
    fn linear_pieces(&self) -> Vec<(Scalar, Scalar)> {
        if self.is_empty() {
            return vec![];
        }
        let s = self.start.value().clone();
        let e = self.end.value().clone();
        if self.wraps() {
            let mut pieces = vec![(s, Scalar::one())];
            if !e.is_zero() {
                pieces.insert(0, (Scalar::zero(), e));
            }
            pieces
        } else if e.is_zero() {
            vec![(s, Scalar::one())]
        } else {
            vec![(s, e)]
        }
    }
}

impl fmt::Display for TorusInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}[", self.start, self.end)
    }
}

impl FromStr for TorusInterval {
    type Err = Error;

    /// Parses `[a,b[`. Commas inside `surd(...)` literals are allowed.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let body = t
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix('['))
            .ok_or_else(|| Error::parse(s, "expected [a,b["))?;
        let mut depth = 0usize;
        let mut split = None;
        for (i, c) in body.char_indices() {
            match c {
                '(' => depth += 1,
                ')' => depth = depth.saturating_sub(1),
                ',' if depth == 0 => {
                    if split.is_some() {
                        return Err(Error::parse(s, "too many endpoints"));
                    }
                    split = Some(i);
                }
                _ => {}
            }
        }
        let i = split.ok_or_else(|| Error::parse(s, "expected two endpoints"))?;
        let start: TorusPoint = body[..i].parse()?;
        let end: TorusPoint = body[i + 1..].parse()?;
        Ok(TorusInterval::new(start, end))
    }
}

/// Intersection of two equal-length arcs, length strictly between 0 and 1/2.
///
/// Disjoint iff `(x,y,x',y')` is c-ordered; otherwise the overlap is `[x',y[`
/// when `(x,x',y,y')` is c-ordered and `[x,y'[` when `(x',x,y',y)` is.
pub fn intersect_same_length(i: &TorusInterval, j: &TorusInterval) -> Result<TorusInterval> {
    let li = i.length()?;
    let lj = j.length()?;
    if li != lj {
        return Err(Error::IntersectPrecondition(format!(
            "lengths {li} and {lj} differ"
        )));
    }
    let half = Scalar::ratio(1, 2);
    if li.is_zero() || li.compare(&half)? != Ordering::Less {
        return Err(Error::IntersectPrecondition(format!(
            "common length {li} is not in (0,1/2)"
        )));
    }
    if i == j {
        return Ok(i.clone());
    }
    let (x, y, x2, y2) = (&i.start, &i.end, &j.start, &j.end);
    if c_ordered(&[x, y, x2, y2]) {
        Ok(TorusInterval::empty_at(x.clone()))
    } else if c_ordered(&[x, x2, y, y2]) {
        Ok(TorusInterval::new(x2.clone(), y.clone()))
    } else if c_ordered(&[x2, x, y2, y]) {
        Ok(TorusInterval::new(x.clone(), y2.clone()))
    } else {
        unreachable!("overlapping arcs of equal length below 1/2 are always staggered")
    }
}

/// Intersection of two arbitrary arcs as a list of at most two disjoint arcs,
/// in increasing order of start point.
pub fn intersect(i: &TorusInterval, j: &TorusInterval) -> Vec<TorusInterval> {
    let mut pieces: Vec<(Scalar, Scalar)> = Vec::new();
    for (a0, a1) in i.linear_pieces() {
        for (b0, b1) in j.linear_pieces() {
            let lo = if a0 > b0 { a0.clone() } else { b0.clone() };
            let hi = if a1 < b1 { a1.clone() } else { b1.clone() };
            if lo < hi {
                pieces.push((lo, hi));
            }
        }
    }
    pieces.sort_by(|p, q| p.0.partial_cmp(&q.0).expect("same field"));
    // Rejoin a piece ending at 1 with one starting at 0.
    if pieces.len() >= 2 {
        let last = pieces.len() - 1;
        if pieces[0].0.is_zero() && pieces[last].1 == Scalar::one() {
            let (_, hi) = pieces.remove(0);
            let last = pieces.len() - 1;
            pieces[last].1 = hi;
        }
    }
    pieces
        .into_iter()
        .map(|(lo, hi)| TorusInterval::new(TorusPoint::new(lo), TorusPoint::new(hi)))
        .collect()
}
