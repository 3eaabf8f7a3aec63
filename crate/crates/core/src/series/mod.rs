//! Truncated formal power series: arithmetic, composition, reversion,
//! exponential, calculus and Hankel determinants of coefficient sequences.

mod hankel;

pub use hankel::{hankel_det, HankelSpec};

use std::fmt;

use crate::arith::{parse_rational, Coefficient, Rational};
use crate::error::{Error, Result};

/// Default truncation order; every coefficient functional used here needs
/// terms through `z^5` only.
pub const DEFAULT_ORDER: usize = 5;

/// Power series `Σ_{k=0}^{N} coeffs[k]·z^k`, exact through order `N`.
#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeries<T: Coefficient> {
    coeffs: Vec<T>,
}

impl<T: Coefficient> PowerSeries<T> {
    /// From coefficients of `z^0..=z^N`.
    pub fn new(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "series needs at least a constant term");
        PowerSeries { coeffs }
    }

    /// From `a_1..a_N` (no constant term), the usual normalized-function form.
    pub fn from_a(a: Vec<T>) -> Self {
        let mut coeffs = Vec::with_capacity(a.len() + 1);
        coeffs.push(T::zero_elem());
        coeffs.extend(a);
        PowerSeries { coeffs }
    }

    /// The series `z` truncated at order `n`.
    pub fn identity(n: usize) -> Self {
        let mut coeffs = vec![T::zero_elem(); n + 1];
        if n >= 1 {
            coeffs[1] = T::one_elem();
        }
        PowerSeries { coeffs }
    }

    pub fn constant(c: T, n: usize) -> Self {
        let mut coeffs = vec![T::zero_elem(); n + 1];
        coeffs[0] = c;
        PowerSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &T {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    /// `a_1..a_N`.
    pub fn a(&self) -> &[T] {
        &self.coeffs[1..]
    }

    pub fn truncate(&self, n: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(n + 1, T::zero_elem());
        PowerSeries { coeffs }
    }

    fn same_order(&self, other: &Self) -> Result<()> {
        if self.order() != other.order() {
            return Err(Error::usage(format!(
                "truncation orders differ: {} vs {}",
                self.order(),
                other.order()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        Ok(PowerSeries::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.plus(b)).collect()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        Ok(PowerSeries::new(self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.minus(b)).collect()))
    }

    pub fn scale(&self, s: &T) -> Self {
        PowerSeries::new(self.coeffs.iter().map(|c| c.times(s)).collect())
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_order(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let n = self.order();
        let mut out = vec![T::zero_elem(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero_elem() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero_elem() {
                    out[i + j] = out[i + j].plus(&a.times(b));
                }
            }
        }
        PowerSeries::new(out)
    }

    /// `outer ∘ inner`; `inner` must have zero constant term.
    pub fn compose(outer: &Self, inner: &Self) -> Result<Self> {
        outer.same_order(inner)?;
        if !inner.coeffs[0].is_zero_elem() {
            return Err(Error::domain("inner series of a composition must have zero constant term"));
        }
        let n = outer.order();
        let mut acc = PowerSeries::constant(T::zero_elem(), n);
        for c in outer.coeffs.iter().rev() {
            acc = acc.mul_unchecked(inner);
            acc.coeffs[0] = acc.coeffs[0].plus(c);
        }
        Ok(acc)
    }

    /// Functional inverse `g` with `f(g(z)) = z` through order `N`, solved
    /// order by order from the triangular system of coefficient equations.
    ///
    /// `powers[j][k]` holds `[z^k] g^j`; it only involves `t_2..t_{k−j+1}`, so
    /// each column is complete before `t_k` is read off it.
    pub fn revert(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero_elem() || self.order() < 1 || self.coeffs[1] != T::one_elem() {
            return Err(Error::Normalization(
                "reversion needs f(0) = 0 and f'(0) = 1".into(),
            ));
        }
        let n = self.order();
        let mut powers = vec![vec![T::zero_elem(); n + 1]; n + 1];
        powers[1][1] = T::one_elem();
        for k in 2..=n {
            for j in 2..=k {
                let mut s = T::zero_elem();
                for i in 1..=k - j + 1 {
                    let (a, b) = (&powers[1][i], &powers[j - 1][k - i]);
                    if !a.is_zero_elem() && !b.is_zero_elem() {
                        s = s.plus(&a.times(b));
                    }
                }
                powers[j][k] = s;
            }
            let mut t = T::zero_elem();
            for j in 2..=k {
                if !self.coeffs[j].is_zero_elem() && !powers[j][k].is_zero_elem() {
                    t = t.plus(&self.coeffs[j].times(&powers[j][k]));
                }
            }
            powers[1][k] = t.negated();
        }
        Ok(PowerSeries::new(powers.swap_remove(1)))
    }

    /// `exp(q)` for `q` with zero constant term, via `n·e_n = Σ k·q_k·e_{n−k}`.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero_elem() {
            return Err(Error::domain("exp needs a series with zero constant term"));
        }
        let n = self.order();
        let mut e = vec![T::zero_elem(); n + 1];
        e[0] = T::one_elem();
        for m in 1..=n {
            let mut s = T::zero_elem();
            for k in 1..=m {
                if !self.coeffs[k].is_zero_elem() {
                    s = s.plus(&self.coeffs[k].times(&e[m - k]).scaled(&Rational::from_integer((k as i64).into())));
                }
            }
            e[m] = s.scaled(&Rational::new(1.into(), (m as i64).into()));
        }
        Ok(PowerSeries::new(e))
    }

    /// Term-wise derivative; exact through order `N − 1`.
    pub fn derive(&self) -> Self {
        if self.order() == 0 {
            return PowerSeries::constant(T::zero_elem(), 0);
        }
        PowerSeries::new(
            (1..=self.order())
                .map(|k| self.coeffs[k].scaled(&Rational::from_integer((k as i64).into())))
                .collect(),
        )
    }

    /// Term-wise antiderivative with zero constant term; exact through order `N + 1`.
    pub fn integrate(&self) -> Self {
        let mut out = vec![T::zero_elem()];
        for (k, c) in self.coeffs.iter().enumerate() {
            out.push(c.scaled(&Rational::new(1.into(), ((k + 1) as i64).into())));
        }
        PowerSeries::new(out)
    }

    pub fn map<U: Coefficient>(&self, f: impl Fn(&T) -> U) -> PowerSeries<U> {
        PowerSeries::new(self.coeffs.iter().map(f).collect())
    }
}

/// Closed forms of `t_2..t_5` for the inverse of `z + a_2 z^2 + … + a_5 z^5`,
/// given `a = [a_2, a_3, a_4, a_5]`.
pub fn inverse_closed_form<T: Coefficient>(a: &[T]) -> Result<[T; 4]> {
    let [a2, a3, a4, a5] = a else {
        return Err(Error::usage(format!("need a_2..a_5, got {} coefficients", a.len())));
    };
    let k = |n: i64| Rational::from_integer(n.into());
    let a2sq = a2.times(a2);
    let t2 = a2.negated();
    let t3 = a2sq.scaled(&k(2)).minus(a3);
    let t4 = a2sq.times(a2).scaled(&k(-5)).plus(&a2.times(a3).scaled(&k(5))).minus(a4);
    let t5 = a2sq
        .times(&a2sq)
        .scaled(&k(14))
        .minus(&a2sq.times(a3).scaled(&k(21)))
        .plus(&a2.times(a4).scaled(&k(6)))
        .plus(&a3.times(a3).scaled(&k(3)))
        .minus(a5);
    Ok([t2, t3, t4, t5])
}

impl PowerSeries<Rational> {
    /// Parse `"a1,a2,...,aN"`; the constant term is zero.
    pub fn parse(s: &str) -> Result<Self> {
        let a: Vec<Rational> = s.split(',').map(parse_rational).collect::<Result<_>>()?;
        if a.is_empty() {
            return Err(Error::parse("empty series"));
        }
        Ok(PowerSeries::from_a(a))
    }
}

impl<T: Coefficient + fmt::Display> fmt::Display for PowerSeries<T> {
    /// `a1,...,aN` (the constant term is not printed).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs[1..].iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn s(text: &str) -> PowerSeries<Rational> {
        PowerSeries::parse(text).unwrap()
    }

    #[test]
    fn products() {
        assert_eq!(s("1,0,0,0,0").mul(&s("1,0,0,0,0")).unwrap(), s("0,1,0,0,0"));
        assert_eq!(s("1,1,0,0,0").mul(&s("1,-1,0,0,0")).unwrap(), s("0,1,0,-1,0"));
        // f0 = z + z^3/2 + 3z^5/8; f0^2 = z^2/(1-z^2) = z^2 + z^4 + ...
        assert_eq!(s("1,0,1/2,0,3/8").mul(&s("1,0,1/2,0,3/8")).unwrap(), s("0,1,0,1,0"));
        assert!(s("1,0").mul(&s("1,0,0")).is_err());
    }

    #[test]
    fn composition() {
        let f = s("1,2/3,-1,5,1/7");
        assert_eq!(PowerSeries::compose(&f, &PowerSeries::identity(5)).unwrap(), f);
        assert_eq!(PowerSeries::compose(&s("1,1,0,0,0"), &s("1,1,0,0,0")).unwrap(), s("1,2,2,1,0"));
        let bad = PowerSeries::new(vec![int(1), int(1), int(0)]);
        assert!(PowerSeries::compose(&s("1,1"), &bad).is_err());
    }

    #[test]
    fn reversion() {
        assert_eq!(s("1,0,0,0,0").revert().unwrap(), s("1,0,0,0,0"));
        assert_eq!(s("1,0,1/2,0,3/8").revert().unwrap(), s("1,0,-1/2,0,3/8"));
        assert!(s("2,0,0").revert().is_err());
        let f = s("1,-3,1/2,7,-2/9");
        let g = f.revert().unwrap();
        assert_eq!(PowerSeries::compose(&f, &g).unwrap(), PowerSeries::identity(5));
        assert_eq!(g.revert().unwrap(), f);
    }

    #[test]
    fn exponential() {
        let zero = PowerSeries::constant(int(0), 4);
        assert_eq!(zero.exp().unwrap(), PowerSeries::constant(int(1), 4));
        let z = PowerSeries::<Rational>::identity(3);
        assert_eq!(z.exp().unwrap().coeffs(), &[int(1), int(1), rat(1, 2), rat(1, 6)]);
        // log(1+z) = z - z^2/2 + z^3/3 - ...
        let log1p = PowerSeries::new((0..=6).map(|k| if k == 0 { int(0) } else { rat(if k % 2 == 1 { 1 } else { -1 }, k) }).collect());
        let mut expected = vec![int(0); 7];
        expected[0] = int(1);
        expected[1] = int(1);
        assert_eq!(log1p.exp().unwrap().coeffs(), expected.as_slice());
        assert!(PowerSeries::constant(int(1), 2).exp().is_err());
    }

    #[test]
    fn calculus() {
        let z3 = PowerSeries::new(vec![int(0), int(0), int(0), int(1)]);
        assert_eq!(z3.derive().coeffs(), &[int(0), int(0), int(3)]);
        let f0 = s("1,0,1/2,0,3/8");
        assert_eq!(f0.derive().coeffs(), &[int(1), int(0), rat(3, 2), int(0), rat(15, 8)]);
        let f = PowerSeries::new(vec![int(4), int(1), rat(2, 3), int(-1)]);
        let mut expected = f.clone();
        expected.coeffs[0] = int(0);
        assert_eq!(f.derive().integrate(), expected);
    }

    #[test]
    fn closed_form_inverse_is_symbolic_identity() {
        use crate::poly::MultiPoly;
        let a: Vec<MultiPoly> = ["a2", "a3", "a4", "a5"].iter().map(|v| MultiPoly::var(v)).collect();
        let mut coeffs = vec![MultiPoly::int(1)];
        coeffs.extend(a.iter().cloned());
        let g = PowerSeries::from_a(coeffs).revert().unwrap();
        let t = inverse_closed_form(&a).unwrap();
        assert_eq!(&g.coeffs()[2..], &t[..]);
        assert!(inverse_closed_form(&a[..3]).is_err());
    }

    #[test]
    fn text_format() {
        assert_eq!(s("1,0,-1/2,0,3/8").to_string(), "1,0,-1/2,0,3/8");
        assert!(PowerSeries::parse("1,0.5").is_err());
    }
}
