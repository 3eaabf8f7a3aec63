//! Polynomials of the bounding argument: the face polynomial `Ψ(c,x) = ϑ(c,x,1)`
//! with its coefficient families, and the interior pieces used on `Ω`.

use crate::arith::{rat, Interval, Rational};
use crate::cert::BoxRegion;
use crate::maps::theta_poly;
use crate::poly::MultiPoly;

pub(crate) fn p(s: &str) -> MultiPoly {
    MultiPoly::parse_expression(s).expect("built-in polynomial text")
}

/// Left breakpoint in `c` of the face `y = 1` cover.
pub fn a_break() -> Rational {
    rat(87137, 250000)
}

/// Right breakpoint in `c` of the face `y = 1` cover.
pub fn b_break() -> Rational {
    rat(4511, 4000)
}

const PSI: [&str; 5] = [
    "-160*c^2 + 16*c^3 + 20*c^4 - 4*c^5 + 5/4*c^6",
    "32*c + 48*c^2 + 32*c^3 + 14*c^4 - 10*c^5 - 13/2*c^6",
    "-256 + 64*c + 276*c^2 - 48*c^3 - 82*c^4 + 8*c^5 + 29/4*c^6",
    "320 - 32*c - 272*c^2 - 32*c^3 + 76*c^4 + 10*c^5 - 7*c^6",
    "-64 - 64*c + 48*c^2 + 32*c^3 - 12*c^4 - 4*c^5 + c^6",
];

const PHI: [&str; 7] = [
    "-256*x^2 + 320*x^3 - 64*x^4",
    "32*x + 64*x^2 - 32*x^3 - 64*x^4",
    "-160 + 48*x + 276*x^2 - 272*x^3 + 48*x^4",
    "16 + 32*x - 48*x^2 - 32*x^3 + 32*x^4",
    "20 + 14*x - 82*x^2 + 76*x^3 - 12*x^4",
    "-4 - 10*x + 8*x^2 + 10*x^3 - 4*x^4",
    "5/4 - 13/2*x + 29/4*x^2 - 7*x^3 + x^4",
];

/// `γ_1..γ_6`; the last coefficient of `Γ` is `φ_7`.
const GAMMA: [&str; 6] = [
    "-256*x^2 + 320*x^3 - 64*x^4",
    "96*x^2 - 32*x^3 - 64*x^4",
    "164*x^2 - 272*x^3 + 48*x^4",
    "-32*x^3 + 32*x^4",
    "-48*x^2 + 76*x^3 - 12*x^4",
    "-6*x^2 + 10*x^3 - 4*x^4",
];

/// `ψ_1..ψ_5`, polynomials in `c`.
pub fn psi() -> Vec<MultiPoly> {
    PSI.iter().map(|s| p(s)).collect()
}

/// `φ_1..φ_7`, polynomials in `x`.
pub fn phi() -> Vec<MultiPoly> {
    PHI.iter().map(|s| p(s)).collect()
}

/// `γ_1..γ_6, φ_7`, polynomials in `x`.
pub fn gamma() -> Vec<MultiPoly> {
    let mut g: Vec<MultiPoly> = GAMMA.iter().map(|s| p(s)).collect();
    g.push(p(PHI[6]));
    g
}

/// `Σ coeffs[i]·var^(i + shift)`.
pub(crate) fn assemble(coeffs: &[MultiPoly], var: &str) -> MultiPoly {
    let v = MultiPoly::var(var);
    coeffs.iter().enumerate().fold(MultiPoly::zero(), |acc, (i, a)| &acc + &(a * &v.pow(i as u32)))
}

/// `Ψ(c,x) = 320 + Σ ψ_i(c)·x^(i−1)`.
pub fn psi_poly() -> MultiPoly {
    &MultiPoly::int(320) + &assemble(&psi(), "x")
}

/// `Φ(c,x) = Σ φ_i(x)·c^(i−1)`, which equals `Ψ − 320`.
pub fn phi_poly() -> MultiPoly {
    assemble(&phi(), "c")
}

/// `Γ(c,x) = Σ γ_i(x)·c^(i−1) + φ_7(x)·c^6`.
pub fn gamma_poly() -> MultiPoly {
    assemble(&gamma(), "c")
}

/// `Φ − Γ = (1 − x)·c·B(c,x)`; this is `B`.
pub fn phi_gamma_bracket() -> MultiPoly {
    p("32*x - (112*x + 160)*c + 16*(1 + 3*x)*c^2 + (34*x + 20)*c^3 - (14*x + 4)*c^4")
}

pub fn nu() -> MultiPoly {
    p("4 - c^2")
}

/// Coefficient of `ν(1 − x²)·y` in ϑ.
pub fn d_linear() -> MultiPoly {
    p("4*c^3*(3*x + 1) + 2*(4 - c^2)*c*x*(2*x + 1)")
}

/// `M(c,x)`: the coefficient of `ν(1 − x²)·y²` in ϑ is `4(1 − x)·M`.
pub fn d_quadratic_factor() -> MultiPoly {
    p("20 - 8*c^2 - (4 - c^2)*x")
}

/// `h(c,x) = ϑ(c,x,0) + ν(1 − x²)·L`, the value of ϑ at `y = 1` with the
/// `y²` term dropped.
pub fn d2_envelope() -> MultiPoly {
    let t0 = theta_poly().restrict("y", &Rational::from_integer(0.into()));
    &t0 + &(&(&nu() * &p("1 - x^2")) * &d_linear())
}

/// The envelope as printed alongside the case-D2 bounds.
pub fn d2_envelope_displayed() -> MultiPoly {
    p("384 + 32*c - 21/4*c^6 - 14*c^5 + 38*c^4 + 48*c^3 - 144*c^2 \
       + (c^6 - 4*c^5 - 8*c^4 + 32*c^3 + 16*c^2 - 64*c)*x^4 \
       + (-7*c^6 + 10*c^5 + 40*c^4 - 32*c^3 - 32*c^2 - 32*c - 64)*x^3 \
       + (29/4*c^6 + 8*c^5 - 54*c^4 - 48*c^3 + 100*c^2 + 64*c)*x^2")
}

pub(crate) fn iv(lo: Rational, hi: Rational, lo_open: bool, hi_open: bool) -> Interval {
    Interval::new(lo, hi, lo_open, hi_open).expect("ordered endpoints")
}

pub(crate) fn closed(lo: Rational, hi: Rational) -> Interval {
    Interval::closed(lo, hi)
}

pub(crate) fn cbox(c: Interval) -> BoxRegion {
    BoxRegion::new(vec![("c", c)])
}

pub(crate) fn cxbox(c: Interval, x: Interval) -> BoxRegion {
    BoxRegion::new(vec![("c", c), ("x", x)])
}

/// `Ω = [0,2] × [0,1] × [0,1]` in `(c, x, y)`.
pub fn omega() -> BoxRegion {
    BoxRegion::new(vec![("c", Interval::of(0, 1, 2, 1)), ("x", Interval::unit()), ("y", Interval::unit())])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    #[test]
    fn face_polynomial_has_three_forms() {
        let t1 = theta_poly().restrict("y", &int(1));
        assert_eq!(t1, psi_poly());
        assert_eq!(&psi_poly() - &MultiPoly::int(320), phi_poly());
        let diff = &phi_poly() - &gamma_poly();
        assert_eq!(diff, &p("(1 - x)*c") * &phi_gamma_bracket());
    }

    #[test]
    fn interior_decomposition() {
        let th = theta_poly();
        let y = MultiPoly::var("y");
        let q = &(&MultiPoly::int(4) * &p("1 - x")) * &d_quadratic_factor();
        let inner = &(&d_linear() * &y) + &(&q * &y.pow(2));
        let rebuilt = &th.restrict("y", &int(0)) + &(&(&nu() * &p("1 - x^2")) * &inner);
        assert_eq!(rebuilt, th);
        let gap = &d2_envelope_displayed() - &d2_envelope();
        let expected = p("(4 - c^2)*(1 - x)*(13*c^4 + 20*c^3 - 48*c^2 + 16*c + 192)/2");
        assert_eq!(gap, expected);
    }
}
