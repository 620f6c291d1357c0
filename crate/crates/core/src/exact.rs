//! Exact scalars for circle coordinates.
//!
//! A [`Scalar`] is either a rational number or an element `a + b·√d` of a real
//! quadratic field. Every comparison is decided with integer arithmetic only,
//! so circular-order tests never depend on rounding.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// An exact real number: rational, or `a + b·√d` with `d ≥ 2` square-free.
///
/// Surds with `b = 0` are stored as rationals, so structural equality is
/// numeric equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Surd {
        a: BigRational,
        b: BigRational,
        d: u64,
    },
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(BigRational::one())
    }

    pub fn ratio(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Scalar::Rational(BigRational::new(numer.into(), denom.into()))
    }

    pub fn integer(n: i64) -> Self {
        Scalar::Rational(BigRational::from_integer(n.into()))
    }

    /// Builds `a + b·√d`, pulling square factors out of `d`.
    ///
    /// `d = 0` or a perfect square collapses to a rational.
    pub fn surd(a: BigRational, b: BigRational, d: u64) -> Self {
        let (outside, radicand) = split_square_factor(d);
        let b = b * BigRational::from_integer(BigInt::from(outside));
        if radicand <= 1 || b.is_zero() {
            let root = if radicand == 1 {
                BigRational::one()
            } else {
                BigRational::zero()
            };
            return Scalar::Rational(a + b * root);
        }
        Scalar::Surd { a, b, d: radicand }
    }

    /// The square-free radicand of the field this value lives in, if irrational.
    pub fn field(&self) -> Option<u64> {
        match self {
            Scalar::Rational(_) => None,
            Scalar::Surd { d, .. } => Some(*d),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rational(q) if q.is_zero())
    }

    fn parts(&self) -> (&BigRational, Option<(&BigRational, u64)>) {
        match self {
            Scalar::Rational(q) => (q, None),
            Scalar::Surd { a, b, d } => (a, Some((b, *d))),
        }
    }

    fn common_field(&self, other: &Scalar) -> Result<Option<u64>> {
        match (self.field(), other.field()) {
            (Some(d1), Some(d2)) if d1 != d2 => Err(Error::FieldMismatch(d1, d2)),
            (Some(d), _) | (_, Some(d)) => Ok(Some(d)),
            (None, None) => Ok(None),
        }
    }

    fn combine(
        &self,
        other: &Scalar,
        op: impl Fn(&BigRational, &BigRational) -> BigRational,
    ) -> Result<Scalar> {
        let field = self.common_field(other)?;
        let zero = BigRational::zero();
        let (a1, s1) = self.parts();
        let (a2, s2) = other.parts();
        let a = op(a1, a2);
        match field {
            None => Ok(Scalar::Rational(a)),
            Some(d) => {
                let b1 = s1.map_or(&zero, |(b, _)| b);
                let b2 = s2.map_or(&zero, |(b, _)| b);
                Ok(Scalar::surd(a, op(b1, b2), d))
            }
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        self.combine(other, |x, y| x + y)
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.combine(other, |x, y| x - y)
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(q) => Scalar::Rational(-q),
            Scalar::Surd { a, b, d } => Scalar::Surd {
                a: -a,
                b: -b,
                d: *d,
            },
        }
    }

    /// Divides by a nonzero integer.
    pub fn div_int(&self, k: i64) -> Scalar {
        assert!(k != 0, "division by zero");
        let k = BigRational::from_integer(k.into());
        match self {
            Scalar::Rational(q) => Scalar::Rational(q / &k),
            Scalar::Surd { a, b, d } => Scalar::Surd {
                a: a / &k,
                b: b / &k,
                d: *d,
            },
        }
    }

    /// Exact sign of the value.
    pub fn signum(&self) -> Ordering {
        match self {
            Scalar::Rational(q) => q.cmp(&BigRational::zero()),
            Scalar::Surd { a, b, d } => surd_sign(a, b, *d),
        }
    }

    /// Exact comparison. Fails only when both values are irrational over
    /// different fields.
    pub fn compare(&self, other: &Scalar) -> Result<Ordering> {
        if let (Scalar::Rational(x), Scalar::Rational(y)) = (self, other) {
            return Ok(x.cmp(y));
        }
        Ok(self.try_sub(other)?.signum())
    }

    /// The greatest integer not exceeding the value.
    pub fn floor(&self) -> BigInt {
        match self {
            Scalar::Rational(q) => q.floor().to_integer(),
            Scalar::Surd { a, b, d } => {
                // Seed within one of the answer, then settle by exact comparison.
                let root = (b.numer() * b.numer() * BigInt::from(*d)).sqrt();
                let signed_root = if b.is_negative() { -root } else { root };
                let mut n = a.floor().to_integer() + signed_root.div_floor(b.denom());
                loop {
                    let at = Scalar::Rational(BigRational::from_integer(n.clone()));
                    if self.compare(&at).expect("same field") == Ordering::Less {
                        n -= 1;
                        continue;
                    }
                    let next = Scalar::Rational(BigRational::from_integer(&n + 1));
                    if self.compare(&next).expect("same field") != Ordering::Less {
                        n += 1;
                        continue;
                    }
                    return n;
                }
            }
        }
    }

    /// The value minus its floor, in `[0,1)`.
    pub fn fract(&self) -> Scalar {
        let n = BigRational::from_integer(self.floor());
        match self {
            Scalar::Rational(q) => Scalar::Rational(q - n),
            Scalar::Surd { a, b, d } => Scalar::Surd {
                a: a - n,
                b: b.clone(),
                d: *d,
            },
        }
    }

    /// Rough magnitude for display and diagnostics only; never used to decide anything.
    pub fn approx(&self) -> f64 {
        use num_traits::ToPrimitive;
        let (a, s) = self.parts();
        let mut v = a.to_f64().unwrap_or(f64::NAN);
        if let Some((b, d)) = s {
            v += b.to_f64().unwrap_or(f64::NAN) * (d as f64).sqrt();
        }
        v
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.compare(other).ok()
    }
}

/// Sign of `a + b·√d` for square-free `d ≥ 2`, by comparing `a²` with `b²d`.
fn surd_sign(a: &BigRational, b: &BigRational, d: u64) -> Ordering {
    let sa = a.cmp(&BigRational::zero());
    let sb = b.cmp(&BigRational::zero());
    match (sa, sb) {
        (_, Ordering::Equal) => sa,
        (Ordering::Equal, _) => sb,
        (x, y) if x == y => x,
        _ => {
            // Opposite signs: the larger magnitude wins. a² = b²d would make √d rational.
            let lhs = a * a;
            let rhs = b * b * BigRational::from_integer(BigInt::from(d));
            if lhs > rhs {
                sa
            } else {
                sb
            }
        }
    }
}

/// Writes `d = s²·r` with `r` square-free and returns `(s, r)`.
fn split_square_factor(d: u64) -> (u64, u64) {
    if d == 0 {
        return (0, 0);
    }
    let mut outside = 1u64;
    let mut rest = d;
    let mut p = 2u64;
    while p * p <= rest {
        while rest.is_multiple_of(p * p) {
            rest /= p * p;
            outside *= p;
        }
        p += 1;
    }
    (outside, rest)
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{q}"),
            Scalar::Surd { a, b, d } => write!(f, "surd({a},{b},{d})"),
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (t, "1"),
    };
    let is_int = |x: &str| {
        let digits = x.strip_prefix(['-', '+']).unwrap_or(x);
        !digits.is_empty() && digits.bytes().all(|c| c.is_ascii_digit())
    };
    if !is_int(num) || !is_int(den) {
        return Err(Error::parse(s, "expected p/q with integer p and q"));
    }
    let num: BigInt = num.parse().map_err(|_| Error::parse(s, "bad numerator"))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| Error::parse(s, "bad denominator"))?;
    if den.is_zero() {
        return Err(Error::parse(s, "zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts `p/q`, a bare integer `p`, or `surd(a,b,d)` meaning `a + b·√d`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if let Some(body) = t.strip_prefix("surd(") {
            let body = body
                .strip_suffix(')')
                .ok_or_else(|| Error::parse(s, "missing closing parenthesis"))?;
            let fields: Vec<&str> = body.split(',').collect();
            if fields.len() != 3 {
                return Err(Error::parse(s, "surd takes exactly three arguments"));
            }
            let a = parse_rational(fields[0])?;
            let b = parse_rational(fields[1])?;
            let d: u64 = fields[2]
                .trim()
                .parse()
                .map_err(|_| Error::parse(s, "radicand must be a nonnegative integer"))?;
            if d == 0 {
                return Err(Error::parse(s, "radicand must be positive"));
            }
            return Ok(Scalar::surd(a, b, d));
        }
        parse_rational(t).map(Scalar::Rational)
    }
}

/// Splits a comma-separated list of literals, keeping commas inside
/// `surd(...)` together. An empty or blank string is an empty list.
pub fn parse_list(s: &str) -> Result<Vec<Scalar>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut items = Vec::new();
    let mut depth = 0usize;
    let mut from = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth = depth.saturating_sub(1),
            ',' if depth == 0 => {
                items.push(s[from..i].parse()?);
                from = i + 1;
            }
            _ => {}
        }
    }
    items.push(s[from..].parse()?);
    Ok(items)
}

/// A point of the torus ℝ/ℤ, held as its representative in `[0,1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorusPoint(Scalar);

impl TorusPoint {
    /// Reduces any scalar mod 1.
    pub fn new(value: Scalar) -> Self {
        TorusPoint(value.fract())
    }

    pub fn zero() -> Self {
        TorusPoint(Scalar::zero())
    }

    pub fn ratio(numer: i64, denom: i64) -> Self {
        TorusPoint::new(Scalar::ratio(numer, denom))
    }

    pub fn value(&self) -> &Scalar {
        &self.0
    }

    pub fn into_value(self) -> Scalar {
        self.0
    }

    pub fn add_mod1(&self, q: &Scalar) -> Result<TorusPoint> {
        add_mod1(self, q)
    }

    /// Comparison of representatives in `[0,1)`.
    ///
    /// # Panics
    ///
    /// If the two points are irrational over different fields.
    pub fn cmp_repr(&self, other: &TorusPoint) -> Ordering {
        self.0
            .compare(&other.0)
            .expect("torus points from different quadratic fields")
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for TorusPoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.parse().map(TorusPoint::new)
    }
}

/// Fractional part of `p + q`.
pub fn add_mod1(p: &TorusPoint, q: &Scalar) -> Result<TorusPoint> {
    let sum = p.0.try_add(q)?;
    // p ∈ [0,1) so one subtraction usually suffices; fall back to a full reduction.
    if let Scalar::Rational(s) = &sum {
        if !s.is_negative() && *s < BigRational::one() {
            return Ok(TorusPoint(sum));
        }
    }
    Ok(TorusPoint::new(sum))
}

/// Exact comparison of two scalars.
pub fn compare(p: &Scalar, q: &Scalar) -> Result<Ordering> {
    p.compare(q)
}
