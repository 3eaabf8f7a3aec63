use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with a positive denominator.
pub type Rational = BigRational;

/// Build a rational from machine integers. Panics on a zero denominator.
pub fn rat(n: i64, d: i64) -> Rational {
    assert!(d != 0, "rat: zero denominator");
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Reduce `n/d` to lowest terms with a positive denominator.
pub fn rational_normalize(n: impl Into<BigInt>, d: impl Into<BigInt>) -> Result<Rational> {
    let (n, d) = (n.into(), d.into());
    if d.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    let g = n.gcd(&d);
    let (mut n, mut d) = if g.is_zero() { (n, d) } else { (n / &g, d / &g) };
    if d.is_negative() {
        n = -n;
        d = -d;
    }
    Ok(BigRational::new_raw(n, d))
}

/// Parse `"p/q"` or `"p"`; decimal points and exponents are rejected.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::parse("empty rational"));
    }
    let parse_int = |t: &str| -> Result<BigInt> {
        let t = t.trim();
        let digits = t.strip_prefix(['+', '-']).unwrap_or(t);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::parse(format!("not a rational: {s:?}")));
        }
        t.trim_start_matches('+')
            .parse::<BigInt>()
            .map_err(|e| Error::parse(format!("{s:?}: {e}")))
    };
    match s.split_once('/') {
        Some((n, d)) => rational_normalize(parse_int(n)?, parse_int(d)?),
        None => Ok(BigRational::from_integer(parse_int(s)?)),
    }
}

/// Rational bracket `lo <= sqrt(m) <= hi` with `hi - lo <= 2^-bits`.
pub fn sqrt_bracket(m: &Rational, bits: u32) -> (Rational, Rational) {
    assert!(!m.is_negative(), "sqrt_bracket of a negative rational");
    let scale = BigInt::one() << bits;
    // sqrt(n/d) = sqrt(n*d)/d
    let nd = m.numer() * m.denom() * &scale * &scale;
    let root = nd.sqrt();
    let denom = m.denom() * &scale;
    let lo = BigRational::new(root.clone(), denom.clone());
    if &root * &root == nd {
        return (lo.clone(), lo);
    }
    let hi = BigRational::new(root + 1, denom);
    (lo, hi)
}

/// Small conveniences missing from `BigRational`.
pub trait RationalExt {
    fn sign(&self) -> i8;
    fn powi(&self, k: u32) -> Rational;
    fn approx(&self) -> f64;
}

impl RationalExt for Rational {
    fn sign(&self) -> i8 {
        if self.is_zero() {
            0
        } else if self.is_positive() {
            1
        } else {
            -1
        }
    }

    fn powi(&self, k: u32) -> Rational {
        let mut acc = Rational::one();
        for _ in 0..k {
            acc *= self;
        }
        acc
    }

    fn approx(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn euclid_gcd(mut a: u64, mut b: u64) -> u64 {
        while b != 0 {
            let t = a % b;
            a = b;
            b = t;
        }
        a
    }

    #[test]
    fn normalize_reduces() {
        assert_eq!(rational_normalize(2, 4).unwrap(), rat(1, 2));
        let z = rational_normalize(0, 7).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.denom(), &BigInt::from(1));
        assert_eq!(rational_normalize(3, -6).unwrap(), rat(-1, 2));
    }

    #[test]
    fn normalize_threshold_is_already_reduced() {
        assert_eq!(euclid_gcd(87137, 250000), 1);
        let r = rational_normalize(87137, 250000).unwrap();
        assert_eq!(r.numer(), &BigInt::from(87137));
        assert_eq!(r.denom(), &BigInt::from(250000));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(rational_normalize(1, 0), Err(Error::ZeroDenominator));
        assert_eq!(parse_rational("1/0"), Err(Error::ZeroDenominator));
    }

    #[test]
    fn parse_formats() {
        assert_eq!(parse_rational("87137/250000").unwrap(), rat(87137, 250000));
        assert_eq!(parse_rational(" -3 ").unwrap(), int(-3));
        assert_eq!(parse_rational("6/-4").unwrap(), rat(-3, 2));
        assert!(parse_rational("0.6").is_err());
        assert!(parse_rational("1e3").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1/").is_err());
        assert_eq!(rat(3, 5).to_string(), "3/5");
        assert_eq!(int(320).to_string(), "320");
    }

    #[test]
    fn sqrt_bracket_contains_root() {
        let m = rat(5, 2);
        let (lo, hi) = sqrt_bracket(&m, 40);
        assert!(&lo * &lo <= m && m <= &hi * &hi);
        assert!(&hi - &lo <= rat(1, 1 << 40));
        let (lo, hi) = sqrt_bracket(&rat(9, 16), 10);
        assert_eq!(lo, rat(3, 4));
        assert_eq!(hi, rat(3, 4));
    }
}
