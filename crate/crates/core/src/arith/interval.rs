use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{parse_rational, rat, Rational};
use crate::error::{Error, Result};

/// Interval with rational endpoints; each end may be open or closed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
    pub lo_open: bool,
    pub hi_open: bool,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational, lo_open: bool, hi_open: bool) -> Result<Self> {
        if lo > hi {
            return Err(Error::domain(format!("interval with lo {lo} > hi {hi}")));
        }
        if lo == hi && (lo_open || hi_open) {
            return Err(Error::domain(format!("degenerate interval at {lo} must be closed")));
        }
        Ok(Interval { lo, hi, lo_open, hi_open })
    }

    pub fn closed(lo: Rational, hi: Rational) -> Self {
        Interval::new(lo, hi, false, false).expect("closed interval needs lo <= hi")
    }

    pub fn point(v: Rational) -> Self {
        Interval { lo: v.clone(), hi: v, lo_open: false, hi_open: false }
    }

    /// Closed interval from machine-integer fractions `a/b` and `c/d`.
    pub fn of(a: i64, b: i64, c: i64, d: i64) -> Self {
        Interval::closed(rat(a, b), rat(c, d))
    }

    pub fn unit() -> Self {
        Interval::of(0, 1, 1, 1)
    }

    pub fn with_open(mut self, lo_open: bool, hi_open: bool) -> Self {
        assert!(self.lo < self.hi || !(lo_open || hi_open));
        self.lo_open = lo_open;
        self.hi_open = hi_open;
        self
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn is_closed(&self) -> bool {
        !self.lo_open && !self.hi_open
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    pub fn contains(&self, v: &Rational) -> bool {
        let above = if self.lo_open { v > &self.lo } else { v >= &self.lo };
        let below = if self.hi_open { v < &self.hi } else { v <= &self.hi };
        above && below
    }

    /// `true` when every point of `other` lies in `self`.
    pub fn contains_interval(&self, other: &Interval) -> bool {
        let lo_ok = other.lo > self.lo || (other.lo == self.lo && (!self.lo_open || other.lo_open));
        let hi_ok = other.hi < self.hi || (other.hi == self.hi && (!self.hi_open || other.hi_open));
        lo_ok && hi_ok
    }

    pub fn closure(&self) -> Interval {
        Interval::closed(self.lo.clone(), self.hi.clone())
    }

    /// Split at the midpoint; the shared midpoint is closed on both halves and
    /// the outer endpoints keep their openness.
    pub fn bisect(&self) -> (Interval, Interval) {
        let m = self.mid();
        (
            Interval { lo: self.lo.clone(), hi: m.clone(), lo_open: self.lo_open, hi_open: false },
            Interval { lo: m, hi: self.hi.clone(), lo_open: false, hi_open: self.hi_open },
        )
    }

    /// Affine image `a + b·I` (`b` may be negative).
    pub fn affine(&self, a: &Rational, b: &Rational) -> Interval {
        let (p, q) = (a + b * &self.lo, a + b * &self.hi);
        if b >= &Rational::zero() {
            Interval { lo: p, hi: q, lo_open: self.lo_open, hi_open: self.hi_open }
        } else {
            Interval { lo: q, hi: p, lo_open: self.hi_open, hi_open: self.lo_open }
        }
    }

    /// Parse `"[a,b]"`, `"(a,b]"`, `"[a,b)"`, `"(a,b)"` or a single point `"a"`.
    pub fn parse(s: &str) -> Result<Interval> {
        let s = s.trim();
        let (Some(first), Some(last)) = (s.chars().next(), s.chars().last()) else {
            return Err(Error::parse("empty interval"));
        };
        if !matches!(first, '[' | '(') {
            return Ok(Interval::point(parse_rational(s)?));
        }
        if !matches!(last, ']' | ')') {
            return Err(Error::parse(format!("interval {s:?} lacks a closing bracket")));
        }
        let body = &s[1..s.len() - 1];
        let (lo, hi) = body
            .split_once(',')
            .ok_or_else(|| Error::parse(format!("interval {s:?} needs two endpoints")))?;
        Interval::new(parse_rational(lo)?, parse_rational(hi)?, first == '(', last == ')')
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            return write!(f, "{}", self.lo);
        }
        write!(
            f,
            "{}{},{}{}",
            if self.lo_open { '(' } else { '[' },
            self.lo,
            self.hi,
            if self.hi_open { ')' } else { ']' }
        )
    }
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Interval {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let s = String::deserialize(d)?;
        Interval::parse(&s).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_respects_openness() {
        let i = Interval::parse("(87137/250000,2]").unwrap();
        assert!(!i.contains(&rat(87137, 250000)));
        assert!(i.contains(&rat(2, 1)));
        assert!(i.contains(&rat(1, 1)));
        assert!(!i.contains(&rat(3, 1)));
    }

    #[test]
    fn validation() {
        assert!(Interval::new(rat(1, 1), rat(0, 1), false, false).is_err());
        assert!(Interval::new(rat(1, 1), rat(1, 1), true, false).is_err());
        assert!(Interval::new(rat(1, 1), rat(1, 1), false, false).is_ok());
    }

    #[test]
    fn text_roundtrip() {
        for s in ["[0,2]", "(1/4,1)", "[4511/4000,2]", "(0,3/5]", "7/2"] {
            assert_eq!(Interval::parse(s).unwrap().to_string(), s);
        }
        assert!(Interval::parse("[0.1,2]").is_err());
        assert!(Interval::parse("[1,2").is_err());
    }

    #[test]
    fn bisect_and_affine() {
        let i = Interval::parse("(0,1]").unwrap();
        let (l, r) = i.bisect();
        assert_eq!(l.to_string(), "(0,1/2]");
        assert_eq!(r.to_string(), "[1/2,1]");
        let j = i.affine(&rat(1, 1), &rat(-1, 1));
        assert_eq!(j.to_string(), "[0,1)");
        assert!(i.contains_interval(&r));
        assert!(!r.contains_interval(&i));
    }
}
