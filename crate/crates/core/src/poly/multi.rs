use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{Coefficient, Rational};
use crate::error::{Error, Result};
use crate::poly::UniPoly;

/// Sparse multivariate polynomial over the rationals in named variables.
///
/// Canonical form: variables sorted by name, only variables that occur are
/// kept, no zero coefficients. Structural equality is therefore polynomial
/// equality.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MultiPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        MultiPoly { vars: Vec::new(), terms }
    }

    pub fn int(c: i64) -> Self {
        MultiPoly::constant(Rational::from_integer(c.into()))
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![1], Rational::one());
        MultiPoly { vars: vec![name.to_string()], terms }
    }

    /// Build from `(coefficient, [(var, exponent)])` terms.
    pub fn from_terms<'a>(
        terms: impl IntoIterator<Item = (Rational, Vec<(&'a str, u32)>)>,
    ) -> Self {
        let mut acc = MultiPoly::zero();
        for (c, mono) in terms {
            let mut t = MultiPoly::constant(c);
            for (v, e) in mono {
                t = &t * &MultiPoly::var(v).pow(e);
            }
            acc = &acc + &t;
        }
        acc
    }

    pub fn from_uni(p: &UniPoly) -> Self {
        let mut terms = BTreeMap::new();
        for (k, c) in p.coeffs().iter().enumerate() {
            if !c.is_zero() {
                terms.insert(vec![k as u32], c.clone());
            }
        }
        MultiPoly::canonical(vec![p.var().to_string()], terms)
    }

    pub(crate) fn canonical(vars: Vec<String>, terms: BTreeMap<Vec<u32>, Rational>) -> Self {
        let terms: BTreeMap<_, _> = terms.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        let used: Vec<bool> =
            (0..vars.len()).map(|i| terms.keys().any(|e| e[i] > 0)).collect();
        let mut order: Vec<usize> = (0..vars.len()).filter(|&i| used[i]).collect();
        order.sort_by(|&a, &b| vars[a].cmp(&vars[b]));
        let new_vars: Vec<String> = order.iter().map(|&i| vars[i].clone()).collect();
        let mut new_terms = BTreeMap::new();
        for (e, c) in terms {
            let ne: Vec<u32> = order.iter().map(|&i| e[i]).collect();
            *new_terms.entry(ne).or_insert_with(Rational::zero) += c;
        }
        new_terms.retain(|_, c: &mut Rational| !c.is_zero());
        MultiPoly { vars: new_vars, terms: new_terms }
    }

    /// Re-express both operands over the union of their variables.
    fn aligned(&self, other: &MultiPoly) -> (Vec<String>, Vec<Vec<u32>>, Vec<Vec<u32>>) {
        let mut vars = self.vars.clone();
        for v in &other.vars {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
        }
        vars.sort();
        let embed = |p: &MultiPoly| -> Vec<Vec<u32>> {
            let idx: Vec<usize> =
                p.vars.iter().map(|v| vars.iter().position(|w| w == v).unwrap()).collect();
            p.terms
                .keys()
                .map(|e| {
                    let mut ne = vec![0u32; vars.len()];
                    for (k, &i) in idx.iter().enumerate() {
                        ne[i] = e[k];
                    }
                    ne
                })
                .collect()
        };
        let a = embed(self);
        let b = embed(other);
        (vars, a, b)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms as `(exponents aligned with vars(), coefficient)`.
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Rational)> {
        self.terms.iter()
    }

    /// Exponent of `name` in an aligned exponent vector, 0 if absent.
    pub fn exponent_of(&self, exps: &[u32], name: &str) -> u32 {
        self.vars.iter().position(|v| v == name).map_or(0, |i| exps[i])
    }

    pub fn constant_term(&self) -> Rational {
        self.terms.get(&vec![0; self.vars.len()]).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn as_constant(&self) -> Option<Rational> {
        if self.vars.is_empty() {
            Some(self.constant_term())
        } else {
            None
        }
    }

    pub fn degree_in(&self, name: &str) -> u32 {
        match self.vars.iter().position(|v| v == name) {
            Some(i) => self.terms.keys().map(|e| e[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn scale(&self, s: &Rational) -> MultiPoly {
        let terms = self.terms.iter().map(|(e, c)| (e.clone(), c * s)).collect();
        MultiPoly::canonical(self.vars.clone(), terms)
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut acc = MultiPoly::constant(Rational::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact evaluation; every variable must be assigned.
    pub fn eval(&self, point: &[(&str, Rational)]) -> Result<Rational> {
        let vals: Vec<&Rational> = self
            .vars
            .iter()
            .map(|v| {
                point
                    .iter()
                    .find(|(n, _)| n == v)
                    .map(|(_, r)| r)
                    .ok_or_else(|| Error::usage(format!("no value for variable {v}")))
            })
            .collect::<Result<_>>()?;
        let mut acc = Rational::zero();
        let mut powers: Vec<Vec<Rational>> = vals.iter().map(|v| vec![Rational::one(), (*v).clone()]).collect();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (i, &k) in e.iter().enumerate() {
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap() * vals[i];
                    powers[i].push(next);
                }
                t *= &powers[i][k as usize];
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Substitute a polynomial for one variable.
    pub fn substitute(&self, name: &str, value: &MultiPoly) -> MultiPoly {
        let Some(i) = self.vars.iter().position(|v| v == name) else {
            return self.clone();
        };
        let mut powers = vec![MultiPoly::constant(Rational::one())];
        let mut acc = MultiPoly::zero();
        for (e, c) in &self.terms {
            let k = e[i] as usize;
            while powers.len() <= k {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let mut rest = BTreeMap::new();
            let mut ee = e.clone();
            ee[i] = 0;
            rest.insert(ee, c.clone());
            let rest = MultiPoly::canonical(self.vars.clone(), rest);
            acc = &acc + &(&rest * &powers[k]);
        }
        acc
    }

    /// Substitute several variables at once (simultaneously).
    pub fn substitute_all(&self, subs: &[(&str, MultiPoly)]) -> MultiPoly {
        // Rename first so that substitutions do not interfere with each other.
        let mut p = self.clone();
        for (k, (name, _)) in subs.iter().enumerate() {
            p = p.substitute(name, &MultiPoly::var(&format!("\u{0}sub{k}")));
        }
        for (k, (_, value)) in subs.iter().enumerate() {
            p = p.substitute(&format!("\u{0}sub{k}"), value);
        }
        p
    }

    pub fn restrict(&self, name: &str, value: &Rational) -> MultiPoly {
        self.substitute(name, &MultiPoly::constant(value.clone()))
    }

    /// Coefficient of `name^k`, as a polynomial in the remaining variables.
    pub fn coefficient_in(&self, name: &str, k: u32) -> MultiPoly {
        let Some(i) = self.vars.iter().position(|v| v == name) else {
            return if k == 0 { self.clone() } else { MultiPoly::zero() };
        };
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[i] == k)
            .map(|(e, c)| {
                let mut ee = e.clone();
                ee[i] = 0;
                (ee, c.clone())
            })
            .collect();
        MultiPoly::canonical(self.vars.clone(), terms)
    }

    /// Partial derivative.
    pub fn derive(&self, name: &str) -> MultiPoly {
        let Some(i) = self.vars.iter().position(|v| v == name) else {
            return MultiPoly::zero();
        };
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| e[i] > 0)
            .map(|(e, c)| {
                let mut ee = e.clone();
                ee[i] -= 1;
                (ee, c * Rational::from_integer(e[i].into()))
            })
            .collect();
        MultiPoly::canonical(self.vars.clone(), terms)
    }

    /// Univariate view when the polynomial involves at most `name`.
    pub fn to_uni(&self, name: &str) -> Option<UniPoly> {
        match self.vars.as_slice() {
            [] => Some(UniPoly::constant(self.constant_term(), name)),
            [v] if v == name => {
                let deg = self.degree_in(name) as usize;
                let mut coeffs = vec![Rational::zero(); deg + 1];
                for (e, c) in &self.terms {
                    coeffs[e[0] as usize] = c.clone();
                }
                Some(UniPoly::new(coeffs, name))
            }
            _ => None,
        }
    }

    /// Rename a variable.
    pub fn rename(&self, from: &str, to: &str) -> MultiPoly {
        let vars = self.vars.iter().map(|v| if v == from { to.to_string() } else { v.clone() }).collect();
        MultiPoly::canonical(vars, self.terms.clone())
    }

    /// Add `delta` to the coefficient of the `index`-th stored monomial.
    pub fn perturb_term(&self, index: usize, delta: &Rational) -> Option<MultiPoly> {
        let (e, _) = self.terms.iter().nth(index)?;
        let mut terms = self.terms.clone();
        *terms.get_mut(e).unwrap() += delta;
        Some(MultiPoly::canonical(self.vars.clone(), terms))
    }

    /// Human-readable name of the `index`-th stored monomial, e.g. `c^2*x`.
    pub fn monomial_name(&self, index: usize) -> Option<String> {
        let (e, _) = self.terms.iter().nth(index)?;
        Some(monomial_text(&self.vars, e).unwrap_or_else(|| "1".into()))
    }

    /// Parse the expanded sparse form `coef*c^i*x^j*y^k ± ...`; parentheses are rejected.
    pub fn parse_sparse(s: &str) -> Result<MultiPoly> {
        if s.contains(['(', ')']) {
            return Err(Error::parse("sparse polynomial form does not allow parentheses"));
        }
        super::parse::parse_expression(s)
    }

    /// Parse an arbitrary nested expression with `+ - * / ^` and parentheses.
    pub fn parse_expression(s: &str) -> Result<MultiPoly> {
        super::parse::parse_expression(s)
    }
}

fn monomial_text(vars: &[String], e: &[u32]) -> Option<String> {
    let parts: Vec<String> = vars
        .iter()
        .zip(e)
        .filter(|(_, &k)| k > 0)
        .map(|(v, &k)| if k == 1 { v.clone() } else { format!("{v}^{k}") })
        .collect();
    if parts.is_empty() {
        None
    } else {
        Some(parts.join("*"))
    }
}

impl fmt::Display for MultiPoly {
    /// Highest total degree first; the output re-parses to the same polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<(&Vec<u32>, &Rational)> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        for (i, (e, c)) in terms.into_iter().enumerate() {
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match monomial_text(&self.vars, e) {
                None => write!(f, "{mag}")?,
                Some(m) if mag.is_one() => write!(f, "{m}")?,
                Some(m) => write!(f, "{mag}*{m}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let s = String::deserialize(d)?;
        MultiPoly::parse_sparse(&s).map_err(D::Error::custom)
    }
}

impl<'a> Add<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn add(self, o: &MultiPoly) -> MultiPoly {
        let (vars, ea, eb) = self.aligned(o);
        let mut terms = BTreeMap::new();
        for (e, c) in ea.into_iter().zip(self.terms.values()) {
            *terms.entry(e).or_insert_with(Rational::zero) += c;
        }
        for (e, c) in eb.into_iter().zip(o.terms.values()) {
            *terms.entry(e).or_insert_with(Rational::zero) += c;
        }
        MultiPoly::canonical(vars, terms)
    }
}

impl<'a> Sub<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn sub(self, o: &MultiPoly) -> MultiPoly {
        self + &(-o)
    }
}

impl<'a> Mul<&'a MultiPoly> for &'a MultiPoly {
    type Output = MultiPoly;
    fn mul(self, o: &MultiPoly) -> MultiPoly {
        let (vars, ea, eb) = self.aligned(o);
        let mut terms: BTreeMap<Vec<u32>, Rational> = BTreeMap::new();
        for (e1, c1) in ea.iter().zip(self.terms.values()) {
            for (e2, c2) in eb.iter().zip(o.terms.values()) {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                *terms.entry(e).or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        MultiPoly::canonical(vars, terms)
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Coefficient for MultiPoly {
    fn zero_elem() -> Self {
        MultiPoly::zero()
    }
    fn one_elem() -> Self {
        MultiPoly::int(1)
    }
    fn is_zero_elem(&self) -> bool {
        self.terms.is_empty()
    }
    fn from_rational(r: &Rational) -> Self {
        MultiPoly::constant(r.clone())
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn scaled(&self, r: &Rational) -> Self {
        self.scale(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn v(n: &str) -> MultiPoly {
        MultiPoly::var(n)
    }

    #[test]
    fn canonical_equality() {
        let a = &(&v("x") + &v("c")) * &(&v("x") - &v("c"));
        let b = &(&v("x") * &v("x")) - &(&v("c") * &v("c"));
        assert_eq!(a, b);
        let z = &a - &b;
        assert!(z.is_zero());
        assert!(z.vars().is_empty());
    }

    #[test]
    fn eval_matches_monomials() {
        let p = MultiPoly::parse_sparse("3*c^2*x - 1/2*y + 7").unwrap();
        let val = p.eval(&[("c", int(2)), ("x", rat(1, 3)), ("y", int(4))]).unwrap();
        assert_eq!(val, int(4) + int(5));
        assert!(p.eval(&[("c", int(1))]).is_err());
    }

    #[test]
    fn substitute_and_coefficients() {
        let p = MultiPoly::parse_sparse("c^2*x + c*y^2 + 1").unwrap();
        let q = p.restrict("c", &int(2));
        assert_eq!(q, MultiPoly::parse_sparse("4*x + 2*y^2 + 1").unwrap());
        assert_eq!(p.coefficient_in("y", 2), v("c"));
        assert_eq!(p.degree_in("c"), 2);
        assert_eq!(p.total_degree(), 3);
        let s = p.substitute("x", &(&v("x") + &MultiPoly::int(1)));
        assert_eq!(s, MultiPoly::parse_sparse("c^2*x + c^2 + c*y^2 + 1").unwrap());
    }

    #[test]
    fn simultaneous_substitution() {
        let p = MultiPoly::parse_sparse("x - y").unwrap();
        let s = p.substitute_all(&[("x", v("y")), ("y", v("x"))]);
        assert_eq!(s, MultiPoly::parse_sparse("y - x").unwrap());
    }

    #[test]
    fn display_roundtrip() {
        let p = MultiPoly::parse_sparse("5/4*c^6 - 13/2*c^4*x + 320*y^2 - 1").unwrap();
        let text = p.to_string();
        assert_eq!(MultiPoly::parse_sparse(&text).unwrap(), p);
        assert_eq!(MultiPoly::zero().to_string(), "0");
    }

    #[test]
    fn derive_partial() {
        let p = MultiPoly::parse_sparse("c^3*x^2 + x").unwrap();
        assert_eq!(p.derive("x"), MultiPoly::parse_sparse("2*c^3*x + 1").unwrap());
    }
}
