use serde::{Deserialize, Serialize};
use num_traits::Signed;

use crate::arith::{Interval, Rational, RationalExt};
use crate::error::{Error, Result};
use crate::poly::UniPoly;

/// Canonical Sturm sequence `p, p', −rem(p, p'), …` ending at the last nonzero remainder.
pub fn sturm_chain(p: &UniPoly) -> Result<Vec<UniPoly>> {
    if p.is_zero() {
        return Err(Error::usage("Sturm chain of the zero polynomial"));
    }
    let mut chain = vec![p.clone()];
    if p.degree() == Some(0) {
        return Ok(chain);
    }
    chain.push(p.derivative());
    loop {
        let n = chain.len();
        let r = chain[n - 2].div_rem(&chain[n - 1])?.1;
        if r.is_zero() {
            return Ok(chain);
        }
        chain.push(-&r);
    }
}

/// Sign changes of the chain evaluated at `v`, zeros skipped.
pub fn sign_variations(chain: &[UniPoly], v: &Rational) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for q in chain {
        let s = q.sign_at(v);
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// `q / (v − r)` for a rational root `r` of `q`.
fn deflate(q: &UniPoly, r: &Rational) -> UniPoly {
    let lin = UniPoly::linear(-r.clone(), Rational::from_integer(1.into()), q.var());
    q.div_rem(&lin).expect("linear divisor").0
}

/// Distinct roots of the square-free part strictly inside `(lo, hi)`, where
/// the chain belongs to a polynomial that is nonzero at both ends.
fn open_count(chain: &[UniPoly], lo: &Rational, hi: &Rational) -> usize {
    sign_variations(chain, lo) - sign_variations(chain, hi)
}

/// Number of distinct real roots of `p` in `i`, respecting open and closed ends.
pub fn count_real_roots(p: &UniPoly, i: &Interval) -> Result<usize> {
    if p.is_zero() {
        return Err(Error::usage("root count of the zero polynomial"));
    }
    let mut q = p.squarefree();
    if i.is_point() {
        return Ok(usize::from(q.eval(&i.lo).sign() == 0));
    }
    let mut endpoint_roots = 0;
    for (end, open) in [(&i.lo, i.lo_open), (&i.hi, i.hi_open)] {
        if q.eval(end).sign() == 0 {
            q = deflate(&q, end);
            if !open {
                endpoint_roots += 1;
            }
        }
    }
    let chain = sturm_chain(&q)?;
    Ok(open_count(&chain, &i.lo, &i.hi) + endpoint_roots)
}

/// One real root located either exactly or in an open interval `(lo, hi)`
/// containing no other root and with `lo`, `hi` not roots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum IsolatedRoot {
    Exact {
        #[serde(with = "crate::arith::serde_rational")]
        at: Rational,
    },
    Bracket {
        #[serde(with = "crate::arith::serde_rational")]
        lo: Rational,
        #[serde(with = "crate::arith::serde_rational")]
        hi: Rational,
    },
}

impl IsolatedRoot {
    pub fn lo(&self) -> &Rational {
        match self {
            IsolatedRoot::Exact { at } => at,
            IsolatedRoot::Bracket { lo, .. } => lo,
        }
    }

    pub fn hi(&self) -> &Rational {
        match self {
            IsolatedRoot::Exact { at } => at,
            IsolatedRoot::Bracket { hi, .. } => hi,
        }
    }
}

/// Isolate all distinct real roots of `p` in the closure of `i`, sorted.
pub fn isolate_roots(p: &UniPoly, i: &Interval) -> Result<Vec<IsolatedRoot>> {
    if p.is_zero() {
        return Err(Error::usage("root isolation of the zero polynomial"));
    }
    let q = p.squarefree();
    let chain = sturm_chain(&q)?;
    let mut out = Vec::new();
    if i.is_point() {
        if q.eval(&i.lo).sign() == 0 {
            out.push(IsolatedRoot::Exact { at: i.lo.clone() });
        }
        return Ok(out);
    }
    isolate_rec(&q, &chain, &i.lo, &i.hi, &mut out);
    Ok(out)
}

/// Roots in the closed interval `[lo, hi]`.
fn isolate_rec(q: &UniPoly, chain: &[UniPoly], lo: &Rational, hi: &Rational, out: &mut Vec<IsolatedRoot>) {
    let lo_root = q.eval(lo).sign() == 0;
    let hi_root = q.eval(hi).sign() == 0;
    if lo_root {
        out.push(IsolatedRoot::Exact { at: lo.clone() });
    }
    if lo != hi {
        isolate_open(q, chain, lo, hi, out);
        if hi_root {
            out.push(IsolatedRoot::Exact { at: hi.clone() });
        }
    }
}

/// Roots strictly inside `(lo, hi)`.
fn isolate_open(q: &UniPoly, chain: &[UniPoly], lo: &Rational, hi: &Rational, out: &mut Vec<IsolatedRoot>) {
    // Variation counts are taken just inside the ends when they are roots:
    // V(a) − V(b) counts roots in (a, b] for a square-free chain.
    let va = sign_variations(chain, lo);
    let vb = sign_variations(chain, hi);
    let hi_is_root = q.eval(hi).sign() == 0;
    let n = va - vb - usize::from(hi_is_root);
    if n == 0 {
        return;
    }
    if n == 1 && !hi_is_root && q.eval(lo).sign() != 0 {
        out.push(match rational_root(q, lo, hi) {
            Some(at) => IsolatedRoot::Exact { at },
            None => IsolatedRoot::Bracket { lo: lo.clone(), hi: hi.clone() },
        });
        return;
    }
    let mid = (lo + hi) / Rational::from_integer(2.into());
    isolate_open(q, chain, lo, &mid, out);
    if q.eval(&mid).sign() == 0 {
        out.push(IsolatedRoot::Exact { at: mid.clone() });
    }
    isolate_open(q, chain, &mid, hi, out);
}

/// The single simple root of square-free `q` in `(lo, hi)` when it is rational.
///
/// A rational root `r` of a primitive integer polynomial with leading
/// coefficient `a` has `a·r` integral, so bisecting the bracket below width
/// `1/|a|` leaves at most two candidates.
fn rational_root(q: &UniPoly, lo: &Rational, hi: &Rational) -> Option<Rational> {
    let prim = q.primitive();
    let lead = prim.leading().abs();
    let (mut a, mut b) = (lo.clone(), hi.clone());
    let sa = prim.sign_at(&a);
    let two = Rational::from_integer(2.into());
    while (&b - &a) * &lead >= Rational::from_integer(1.into()) {
        let m = (&a + &b) / &two;
        match prim.sign_at(&m) {
            0 => return Some(m),
            s if s == sa => a = m,
            _ => b = m,
        }
    }
    let first = (&a * &lead).ceil().to_integer();
    let last = (&b * &lead).floor().to_integer();
    let mut k = first;
    while k <= last {
        let r = Rational::new(k.clone(), lead.to_integer());
        if r > a && r < b && prim.sign_at(&r) == 0 {
            return Some(r);
        }
        k += 1;
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c, "c")
    }

    #[test]
    fn textbook_chain() {
        let chain = sturm_chain(&p(&[-1, 0, 1])).unwrap();
        assert_eq!(chain, vec![p(&[-1, 0, 1]), p(&[0, 2]), p(&[1])]);
        assert_eq!(sturm_chain(&p(&[5])).unwrap(), vec![p(&[5])]);
        assert!(sturm_chain(&UniPoly::zero("c")).is_err());
    }

    #[test]
    fn counts() {
        assert_eq!(count_real_roots(&p(&[-1, 0, 1]), &Interval::of(0, 1, 2, 1)).unwrap(), 1);
        assert_eq!(count_real_roots(&p(&[1, 0, 1]), &Interval::of(-10, 1, 10, 1)).unwrap(), 0);
        // Roots at both ends, open or closed.
        let q = p(&[0, -1, 1]); // c(c − 1)
        assert_eq!(count_real_roots(&q, &Interval::unit()).unwrap(), 2);
        assert_eq!(count_real_roots(&q, &Interval::unit().with_open(true, false)).unwrap(), 1);
        assert_eq!(count_real_roots(&q, &Interval::unit().with_open(true, true)).unwrap(), 0);
        // Double root counted once.
        let d = &p(&[-1, 1]).pow(2) * &p(&[2, 1]);
        assert_eq!(count_real_roots(&d, &Interval::of(-3, 1, 3, 1)).unwrap(), 2);
    }

    #[test]
    fn isolation() {
        // (c − 1/2)(c − 1)(c + 3/4) with roots at an interior dyadic point and an endpoint
        let q = &(&UniPoly::linear(rat(-1, 2), int(1), "c") * &p(&[-1, 1]))
            * &UniPoly::linear(rat(3, 4), int(1), "c");
        let roots = isolate_roots(&q, &Interval::of(-1, 1, 1, 1)).unwrap();
        assert_eq!(roots.len(), 3);
        assert!(roots.contains(&IsolatedRoot::Exact { at: rat(1, 2) }));
        assert!(roots.contains(&IsolatedRoot::Exact { at: int(1) }));
        let r2 = isolate_roots(&p(&[-2, 0, 1]), &Interval::of(0, 1, 2, 1)).unwrap();
        assert_eq!(r2.len(), 1);
        let IsolatedRoot::Bracket { lo, hi } = &r2[0] else { panic!("sqrt 2 is irrational") };
        assert!(lo * lo < int(2) && hi * hi > int(2));
    }
}
