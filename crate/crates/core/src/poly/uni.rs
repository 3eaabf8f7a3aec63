use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{Rational, RationalExt};
use crate::error::{Error, Result};
use crate::poly::MultiPoly;

/// Dense univariate polynomial with rational coefficients; `coeffs[k]` is the
/// coefficient of `v^k`. Trailing zeros are always trimmed.
#[derive(Clone, Debug)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
    var: String,
}

impl PartialEq for UniPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for UniPoly {}

impl UniPoly {
    pub fn new(coeffs: Vec<Rational>, var: &str) -> Self {
        let mut p = UniPoly { coeffs, var: var.to_string() };
        p.trim();
        p
    }

    /// From small integer coefficients, lowest degree first.
    pub fn from_ints(coeffs: &[i64], var: &str) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect(), var)
    }

    pub fn zero(var: &str) -> Self {
        UniPoly::new(Vec::new(), var)
    }

    pub fn constant(c: Rational, var: &str) -> Self {
        UniPoly::new(vec![c], var)
    }

    pub fn monomial(k: usize, c: Rational, var: &str) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        UniPoly::new(coeffs, var)
    }

    /// The polynomial `v` itself.
    pub fn identity(var: &str) -> Self {
        UniPoly::monomial(1, Rational::one(), var)
    }

    /// `a + b·v`.
    pub fn linear(a: Rational, b: Rational, var: &str) -> Self {
        UniPoly::new(vec![a, b], var)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn with_var(mut self, var: &str) -> Self {
        self.var = var.to_string();
        self
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, v: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * v + c;
        }
        acc
    }

    pub fn sign_at(&self, v: &Rational) -> i8 {
        self.eval(v).sign()
    }

    pub fn scale(&self, s: &Rational) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| c * s).collect(), &self.var)
    }

    pub fn pow(&self, k: u32) -> UniPoly {
        let mut acc = UniPoly::constant(Rational::one(), &self.var);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * Rational::from_integer((k as i64).into()))
            .collect();
        UniPoly::new(coeffs, &self.var)
    }

    /// Euclidean division `self = q·d + r` with `deg r < deg d`.
    pub fn div_rem(&self, d: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        let dd = d.degree().ok_or_else(|| Error::usage("polynomial division by zero"))?;
        let mut r = self.coeffs.clone();
        let lead = d.leading();
        let mut q = vec![Rational::zero(); r.len().saturating_sub(dd).max(1)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let f = r.last().unwrap() / &lead;
            for (i, dc) in d.coeffs.iter().enumerate() {
                r[k + i] -= &f * dc;
            }
            q[k] = f;
            r.pop();
            while r.last().is_some_and(|c| c.is_zero()) {
                r.pop();
            }
        }
        Ok((UniPoly::new(q, &self.var), UniPoly::new(r, &self.var)))
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&(Rational::one() / self.leading()))
    }

    /// Square-free part `p / gcd(p, p')`, made monic.
    pub fn squarefree(&self) -> UniPoly {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).expect("gcd nonzero").0.monic()
    }

    /// `self(inner(v))`.
    pub fn compose(&self, inner: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero(&inner.var);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &UniPoly::constant(c.clone(), &inner.var);
        }
        acc
    }

    /// `self(a + b·v)`.
    pub fn compose_linear(&self, a: &Rational, b: &Rational) -> UniPoly {
        self.compose(&UniPoly::linear(a.clone(), b.clone(), &self.var))
    }

    /// Positive rescaling to integer coefficients with unit content; keeps
    /// the sign pattern and roots, and keeps Sturm remainders small.
    pub fn primitive(&self) -> UniPoly {
        use num_integer::Integer;
        if self.is_zero() {
            return self.clone();
        }
        let mut l = num_bigint::BigInt::one();
        for c in &self.coeffs {
            l = l.lcm(c.denom());
        }
        let ints: Vec<num_bigint::BigInt> =
            self.coeffs.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
        let mut g = num_bigint::BigInt::zero();
        for i in &ints {
            g = g.gcd(i);
        }
        UniPoly::new(
            ints.into_iter().map(|i| Rational::from_integer(i / &g)).collect(),
            &self.var,
        )
    }

    pub fn to_multi(&self) -> MultiPoly {
        MultiPoly::from_uni(self)
    }

    /// Parse a single-variable expanded polynomial such as `"5/4*c^6 - 4*c^5 + 20*c^4"`.
    pub fn parse(s: &str, var: &str) -> Result<UniPoly> {
        let m = MultiPoly::parse_sparse(s)?;
        m.to_uni(var)
            .ok_or_else(|| Error::parse(format!("{s:?} is not a polynomial in {var} alone")))
    }

    /// Cauchy-type bound: every real root lies in `[-B, B]`.
    pub fn root_bound(&self) -> Rational {
        let lead = self.leading().abs();
        let mut m = Rational::zero();
        for c in &self.coeffs[..self.coeffs.len().saturating_sub(1)] {
            let r = c.abs() / &lead;
            if r > m {
                m = r;
            }
        }
        m + Rational::one()
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_multi())
    }
}

impl Serialize for UniPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            var: &'a str,
            poly: String,
        }
        Repr { var: &self.var, poly: self.to_string() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for UniPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        #[derive(Deserialize)]
        struct Repr {
            var: String,
            poly: String,
        }
        let r = Repr::deserialize(d)?;
        UniPoly::parse(&r.poly, &r.var).map_err(D::Error::custom)
    }
}

impl<'a> Add<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn add(self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + o.coeff(k)).collect();
        UniPoly::new(coeffs, &self.var)
    }
}

impl<'a> Sub<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn sub(self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - o.coeff(k)).collect();
        UniPoly::new(coeffs, &self.var)
    }
}

impl<'a> Mul<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn mul(self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero(&self.var);
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UniPoly::new(coeffs, &self.var)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect(), &self.var)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn arithmetic_and_eval() {
        let p = UniPoly::from_ints(&[-1, 0, 1], "c");
        let q = UniPoly::from_ints(&[1, 1], "c");
        let (d, r) = p.div_rem(&q).unwrap();
        assert_eq!(d, UniPoly::from_ints(&[-1, 1], "c"));
        assert!(r.is_zero());
        assert_eq!(p.eval(&rat(3, 1)), rat(8, 1));
        assert_eq!(p.derivative(), UniPoly::from_ints(&[0, 2], "c"));
    }

    #[test]
    fn gcd_and_squarefree() {
        // (c-1)^2 (c+2)
        let p = &UniPoly::from_ints(&[-1, 1], "c").pow(2) * &UniPoly::from_ints(&[2, 1], "c");
        assert_eq!(p.squarefree(), UniPoly::from_ints(&[-2, 1, 1], "c"));
        assert_eq!(p.gcd(&p.derivative()), UniPoly::from_ints(&[-1, 1], "c"));
    }

    #[test]
    fn parse_and_display() {
        let p = UniPoly::parse("5/4*c^6 - 4*c^5 + 20*c^4 + 16*c^3 - 160*c^2", "c").unwrap();
        assert_eq!(p.coeff(6), rat(5, 4));
        assert_eq!(p.coeff(2), rat(-160, 1));
        assert_eq!(UniPoly::parse(&p.to_string(), "c").unwrap(), p);
        assert!(UniPoly::parse("c*x", "c").is_err());
    }

    #[test]
    fn compose_linear_shifts() {
        let p = UniPoly::from_ints(&[0, 0, 1], "c");
        // (1 + 2c)^2 = 1 + 4c + 4c^2
        assert_eq!(p.compose_linear(&rat(1, 1), &rat(2, 1)), UniPoly::from_ints(&[1, 4, 4], "c"));
    }

    #[test]
    fn primitive_keeps_sign() {
        let p = UniPoly::new(vec![rat(-1, 2), rat(3, 4)], "c");
        assert_eq!(p.primitive(), UniPoly::from_ints(&[-2, 3], "c"));
    }
}
