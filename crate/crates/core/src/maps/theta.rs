use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::caratheodory::{lz_expand, Conjugate, LZParams};
use super::ozaki::h31_inverse_closed_form;
use crate::arith::{sqrt_bracket, GaussianRational, Interval, Rational};
use crate::cert::{bernstein_bounds, BoxRegion};
use crate::error::Result;
use crate::poly::MultiPoly;

const THETA_NESTED: &str = include_str!("../../data/theta_nested.txt");

/// The nested (unexpanded) text of ϑ shipped with the crate.
pub fn theta_nested_text() -> &'static str {
    THETA_NESTED
}

fn k(n: i64) -> MultiPoly {
    MultiPoly::int(n)
}

fn r(n: i64, d: i64) -> MultiPoly {
    MultiPoly::constant(Rational::new(n.into(), d.into()))
}

/// ϑ(c,x,y), the majorant of `5120·|H_{3,1}(f⁻¹)|` with `x = |μ|`, `y = |ρ|`,
/// assembled term by term:
///
/// ```text
/// 5c⁶/4 + ν{13c⁴x/2 + 2c⁴x² + (37c² − 37c⁴/4)x² + (4c² − c⁴)x⁴
///        + (236/7 + 7(c² − 18/7)²)x³ + (1−x²)(2cν(1+2x)x + 4c³(1+3x))y
///        + 4(1−x²)(3c²x + ν(5+x²))y² + 12(c² + 2νx)(1−x²)(1−y²)},  ν = 4 − c²
/// ```
pub fn theta_poly() -> MultiPoly {
    theta_cached().clone()
}

fn theta_cached() -> &'static MultiPoly {
    static THETA: OnceLock<MultiPoly> = OnceLock::new();
    THETA.get_or_init(build_theta)
}

fn build_theta() -> MultiPoly {
    let c = MultiPoly::var("c");
    let x = MultiPoly::var("x");
    let y = MultiPoly::var("y");
    let c2 = c.pow(2);
    let c3 = c.pow(3);
    let c4 = c.pow(4);
    let nu = &k(4) - &c2;
    let one_x2 = &k(1) - &x.pow(2);

    let mut brace = &r(13, 2) * &(&c4 * &x);
    brace = &brace + &(&k(2) * &(&c4 * &x.pow(2)));
    brace = &brace + &(&(&(&k(37) * &c2) - &(&r(37, 4) * &c4)) * &x.pow(2));
    brace = &brace + &(&(&(&k(4) * &c2) - &c4) * &x.pow(4));
    let shifted = &c2 - &r(18, 7);
    brace = &brace + &(&(&r(236, 7) + &(&k(7) * &shifted.pow(2))) * &x.pow(3));
    let lin_y = &(&(&(&k(2) * &c) * &nu) * &(&(&k(1) + &(&k(2) * &x)) * &x))
        + &(&(&k(4) * &c3) * &(&k(1) + &(&k(3) * &x)));
    brace = &brace + &(&(&one_x2 * &lin_y) * &y);
    let quad_y = &(&(&k(3) * &c2) * &x) + &(&nu * &(&k(5) + &x.pow(2)));
    brace = &brace + &(&(&(&k(4) * &one_x2) * &quad_y) * &y.pow(2));
    let last = &(&c2 + &(&(&k(2) * &nu) * &x)) * &one_x2;
    brace = &brace + &(&(&k(12) * &last) * &(&k(1) - &y.pow(2)));

    &(&r(5, 4) * &c.pow(6)) + &(&nu * &brace)
}

pub fn theta_at(c: &Rational, x: &Rational, y: &Rational) -> Rational {
    theta_cached()
        .eval(&[("c", c.clone()), ("x", x.clone()), ("y", y.clone())])
        .expect("ϑ uses only c, x, y")
}

/// `5120·H_{3,1}(f⁻¹)` written directly in the parameters:
///
/// ```text
/// 5c⁶/4 + ν{−13c⁴μ/2 − 2c⁴μ² + (37c² − 37c⁴/4)μ² + c²νμ⁴ − (236/7 + 7(c² − 18/7)²)μ³
///   + (1−|μ|²)(2cν(1−2μ)μ + 4c³(1+3μ))ρ + 4(1−|μ|²)(3c²μ̄ − ν(5+|μ|²))ρ²
///   + 12(2νμ − c²)(1−|μ|²)(1−|ρ|²)ψ}
/// ```
/// divided by 5120. Exact for complex `μ, ρ, ψ`.
pub fn h31_parametrized<T: Conjugate>(c: &T, mu: &T, rho: &T, psi: &T) -> T {
    let n = |v: i64| T::from_rational(&Rational::from_integer(v.into()));
    let f = |a: i64, b: i64| T::from_rational(&Rational::new(a.into(), b.into()));
    let c2 = c.times(c);
    let c4 = c2.times(&c2);
    let nu = n(4).minus(&c2);
    let mu2 = mu.times(mu);
    let mm = mu.times(&mu.conjugate());
    let one_mu = n(1).minus(&mm);
    let one_rho = n(1).minus(&rho.times(&rho.conjugate()));

    let mut b = f(-13, 2).times(&c4).times(mu);
    b = b.minus(&n(2).times(&c4).times(&mu2));
    b = b.plus(&n(37).times(&c2).minus(&f(37, 4).times(&c4)).times(&mu2));
    b = b.plus(&c2.times(&nu).times(&mu2.times(&mu2)));
    let shifted = c2.minus(&f(18, 7));
    b = b.minus(&f(236, 7).plus(&n(7).times(&shifted.times(&shifted))).times(&mu2.times(mu)));
    let lin = n(2)
        .times(c)
        .times(&nu)
        .times(&n(1).minus(&n(2).times(mu)))
        .times(mu)
        .plus(&n(4).times(&c2.times(c)).times(&n(1).plus(&n(3).times(mu))));
    b = b.plus(&one_mu.times(&lin).times(rho));
    let quad = n(3).times(&c2).times(&mu.conjugate()).minus(&nu.times(&n(5).plus(&mm)));
    b = b.plus(&n(4).times(&one_mu).times(&quad).times(&rho.times(rho)));
    let last = n(2).times(&nu).times(mu).minus(&c2);
    b = b.plus(&n(12).times(&last).times(&one_mu).times(&one_rho).times(psi));

    f(5, 4).times(&c4.times(&c2)).plus(&nu.times(&b)).times(&f(1, 5120))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Dominance {
    Holds,
    Violated,
    Undecided,
}

/// Outcome of comparing `5120·|H|` with ϑ(c, |μ|, |ρ|).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominanceReport {
    pub params: LZParams,
    pub h31: GaussianRational,
    /// `(5120·|H|)²`.
    #[serde(with = "crate::arith::serde_rational")]
    pub lhs: Rational,
    /// Exact ϑ when both moduli are rational; otherwise a certified enclosure.
    #[serde(with = "crate::arith::serde_rational::vec")]
    pub theta: Vec<Rational>,
    pub exact_moduli: bool,
    pub verdict: Dominance,
}

fn modulus(m: &Rational, bits: u32) -> (Rational, Rational) {
    sqrt_bracket(m, bits)
}

/// Check `5120²·|H|² ≤ ϑ(c₁, |μ|, |ρ|)²` with `ϑ ≥ 0`, exactly.
///
/// When `|μ|` or `|ρ|` is irrational, ϑ is enclosed by Bernstein bounds on a
/// rational bracket of the moduli, refined until the comparison is decided.
pub fn theta_dominates_h31(p: &LZParams) -> Result<DominanceReport> {
    let c = lz_expand(p)?;
    let h = h31_inverse_closed_form(c.coeffs())?;
    let scale = Rational::from_integer(5120.into());
    let lhs = h.mod_sq() * &scale * &scale;
    let theta = theta_cached();
    let zero = Rational::from_integer(0.into());
    let (mx, my) = (p.mu.mod_sq(), p.rho.mod_sq());

    let (x0, x1) = modulus(&mx, 0);
    let (y0, y1) = modulus(&my, 0);
    if x0 == x1 && y0 == y1 {
        let t = theta_at(&p.c1, &x0, &y0);
        let verdict = if t >= zero && lhs <= &t * &t { Dominance::Holds } else { Dominance::Violated };
        return Ok(DominanceReport { params: p.clone(), h31: h, lhs, theta: vec![t], exact_moduli: true, verdict });
    }

    let mut bits = 32;
    let mut enclosure = (zero.clone(), zero.clone());
    let mut verdict = Dominance::Undecided;
    while bits <= 512 {
        let (xl, xh) = modulus(&mx, bits);
        let (yl, yh) = modulus(&my, bits);
        let region = BoxRegion::new(vec![
            ("c", Interval::point(p.c1.clone())),
            ("x", Interval::closed(xl, xh)),
            ("y", Interval::closed(yl, yh)),
        ]);
        let (lo, hi) = bernstein_bounds(theta, &region)?;
        enclosure = (lo.clone(), hi.clone());
        if lo >= zero && lhs <= &lo * &lo {
            verdict = Dominance::Holds;
            break;
        }
        if hi < zero || lhs > &hi * &hi {
            verdict = Dominance::Violated;
            break;
        }
        bits *= 2;
    }
    Ok(DominanceReport {
        params: p.clone(),
        h31: h,
        lhs,
        theta: vec![enclosure.0, enclosure.1],
        exact_moduli: false,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::maps::lz_expand_generic;
    use crate::poly::GaussPoly;

    #[test]
    fn nested_text_expands_to_theta() {
        assert_eq!(MultiPoly::parse_expression(theta_nested_text()).unwrap(), theta_poly());
    }

    #[test]
    fn reference_values() {
        assert_eq!(theta_at(&int(0), &int(0), &int(1)), int(320));
        assert_eq!(theta_at(&int(0), &int(1), &rat(1, 3)), int(320));
        // ν = 0 at c = 2 leaves 5·2⁶/4.
        assert_eq!(theta_at(&int(2), &rat(1, 2), &rat(2, 3)), int(80));
        let t = theta_poly();
        let edge = t.restrict("x", &int(0)).restrict("y", &int(0));
        assert_eq!(edge, MultiPoly::parse_sparse("48*c^2 - 12*c^4 + 5/4*c^6").unwrap());
        assert_eq!((t.degree_in("c"), t.degree_in("x"), t.degree_in("y")), (6, 4, 2));
    }

    #[test]
    fn parametrized_form_matches_symbolically() {
        let c = GaussPoly::real(MultiPoly::var("c"));
        let mu = GaussPoly::complex_var("mr", "mi");
        let rho = GaussPoly::complex_var("rr", "ri");
        let psi = GaussPoly::complex_var("pr", "pi");
        let seq = lz_expand_generic(&c, &mu, &rho, &psi);
        let lhs = h31_inverse_closed_form(&seq).unwrap();
        assert_eq!(lhs, h31_parametrized(&c, &mu, &rho, &psi));
    }

    #[test]
    fn dominance_exact_and_bracketed() {
        let g = |a: i64, b: i64, c: i64, d: i64| GaussianRational::new(rat(a, b), rat(c, d));
        let zero = LZParams::new(int(0), g(0, 1, 0, 1), g(0, 1, 0, 1), g(0, 1, 0, 1)).unwrap();
        let r = theta_dominates_h31(&zero).unwrap();
        assert_eq!(r.verdict, Dominance::Holds);
        assert_eq!(r.lhs, int(0));
        // |μ| = 5/13 from a Pythagorean point, ρ with irrational modulus 1/√2
        let p = LZParams::new(rat(3, 4), g(3, 13, 4, 13), g(1, 2, 1, 2), g(0, 1, 1, 1)).unwrap();
        let r = theta_dominates_h31(&p).unwrap();
        assert!(!r.exact_moduli);
        assert_eq!(r.verdict, Dominance::Holds);
        // c₁ = 2: both sides equal 80
        let k = LZParams::new(int(2), g(1, 2, 0, 1), g(0, 1, 1, 1), g(1, 1, 0, 1)).unwrap();
        let r = theta_dominates_h31(&k).unwrap();
        assert_eq!(r.lhs, int(6400));
        assert_eq!(r.theta, vec![int(80)]);
        assert_eq!(r.verdict, Dominance::Holds);
    }
}
