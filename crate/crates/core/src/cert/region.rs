use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Point;
use crate::arith::{Interval, Rational};
use crate::error::{Error, Result};

/// Axis-aligned box: one interval per named variable, in a fixed order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoxRegion {
    vars: Vec<String>,
    intervals: Vec<Interval>,
}

impl BoxRegion {
    pub fn new(axes: Vec<(&str, Interval)>) -> Self {
        let (vars, intervals) = axes.into_iter().map(|(v, i)| (v.to_string(), i)).unzip();
        BoxRegion { vars, intervals }
    }

    pub fn from_parts(vars: Vec<String>, intervals: Vec<Interval>) -> Self {
        assert_eq!(vars.len(), intervals.len());
        BoxRegion { vars, intervals }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    pub fn axis(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn interval(&self, name: &str) -> Option<&Interval> {
        self.axis(name).map(|i| &self.intervals[i])
    }

    pub fn with_interval(&self, axis: usize, iv: Interval) -> BoxRegion {
        let mut b = self.clone();
        b.intervals[axis] = iv;
        b
    }

    pub fn closure(&self) -> BoxRegion {
        BoxRegion {
            vars: self.vars.clone(),
            intervals: self.intervals.iter().map(Interval::closure).collect(),
        }
    }

    pub fn bisect(&self, axis: usize) -> (BoxRegion, BoxRegion) {
        let (l, r) = self.intervals[axis].bisect();
        (self.with_interval(axis, l), self.with_interval(axis, r))
    }

    pub fn center(&self) -> Vec<Rational> {
        self.intervals.iter().map(Interval::mid).collect()
    }

    /// Vertex selected by `bits` (bit `j` set → upper end of axis `j`).
    pub fn vertex(&self, bits: usize) -> Vec<Rational> {
        self.intervals
            .iter()
            .enumerate()
            .map(|(j, iv)| if bits >> j & 1 == 1 { iv.hi.clone() } else { iv.lo.clone() })
            .collect()
    }

    pub fn contains(&self, pt: &[Rational]) -> bool {
        pt.len() == self.dim() && self.intervals.iter().zip(pt).all(|(iv, v)| iv.contains(v))
    }

    /// Every point of `other` (same variables) lies in `self`.
    pub fn contains_region(&self, other: &BoxRegion) -> bool {
        self.vars == other.vars
            && self.intervals.iter().zip(&other.intervals).all(|(a, b)| a.contains_interval(b))
    }

    pub fn named(&self, pt: &[Rational]) -> Point {
        self.vars.iter().cloned().zip(pt.iter().cloned()).collect()
    }

    pub fn parse(s: &str) -> Result<BoxRegion> {
        let mut vars = Vec::new();
        let mut intervals = Vec::new();
        for part in s.split('×').flat_map(|p| p.split(" x ")) {
            let (v, iv) = part
                .split_once('∈')
                .or_else(|| part.split_once('='))
                .ok_or_else(|| Error::parse(format!("box axis {part:?} needs 'var∈interval'")))?;
            vars.push(v.trim().to_string());
            intervals.push(Interval::parse(iv)?);
        }
        Ok(BoxRegion { vars, intervals })
    }
}

impl fmt::Display for BoxRegion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> =
            self.vars.iter().zip(&self.intervals).map(|(v, i)| format!("{v}∈{i}")).collect();
        f.write_str(&parts.join(" × "))
    }
}

impl Serialize for BoxRegion {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BoxRegion {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let s = String::deserialize(d)?;
        BoxRegion::parse(&s).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn text_roundtrip_and_vertices() {
        let b = BoxRegion::parse("c∈[0,87137/250000] × x∈[1/4,1)").unwrap();
        assert_eq!(BoxRegion::parse(&b.to_string()).unwrap(), b);
        assert_eq!(b.vertex(0b10), vec![rat(0, 1), rat(1, 1)]);
        assert!(!b.contains(&b.vertex(0b10)));
        assert!(b.contains(&b.vertex(0b01)));
        let (l, r) = b.bisect(1);
        assert_eq!(l.interval("x").unwrap().to_string(), "[1/4,5/8]");
        assert_eq!(r.interval("x").unwrap().to_string(), "[5/8,1)");
    }
}
