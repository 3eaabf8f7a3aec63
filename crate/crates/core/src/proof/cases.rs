//! Case steps bounding `ϑ(c,x,y) ≤ 320` on `Ω`: vertices, edges, faces and the
//! interior.

use super::cover::{check_cover, CoverPiece};
use super::lemmas::{lemma_claim, lemma_polynomial};
use super::polys::{closed, d2_envelope, d2_envelope_displayed, d_linear, d_quadratic_factor, iv, nu, omega, p, psi_poly};
use super::step::{Evidence, Part, PointValue, StepCertificate, StepMethod};
use crate::arith::{int, rat, Interval, Rational};
use crate::cert::{certify_claim, certify_factor_sum, BoxRegion, IdentityCheck, ProductTerm, Relation};
use crate::error::{Error, Result};
use crate::maps::theta_poly;
use crate::poly::MultiPoly;

pub const CASE_IDS: [&str; 17] = [
    "A", "B.i", "B.ii", "B.iii", "B.iv", "B.v", "B.vi", "B.vii", "B.viii", "C.i", "C.ii", "C.iii", "C.iv", "C.v",
    "C.vi", "D1", "D2",
];

/// Lower end in `c` of the interior region where the `y²` coefficient of ϑ can vanish (below `4/√7`).
pub fn d_lower() -> Rational {
    rat(1511, 1000)
}

/// Rational brackets of `√(5/2)` splitting the envelope bound.
pub fn d_split() -> (Rational, Rational) {
    (rat(1581, 1000), rat(791, 500))
}

fn pt(v: i64) -> Interval {
    Interval::point(int(v))
}

fn cxy(c: Interval, x: Interval, y: Interval) -> BoxRegion {
    BoxRegion::new(vec![("c", c), ("x", x), ("y", y)])
}

fn c_range() -> Interval {
    Interval::of(0, 1, 2, 1)
}

/// Closed pieces of `Ω` on which each boundary case certifies the bound.
pub fn case_pieces(id: &str) -> Result<Vec<BoxRegion>> {
    let u = Interval::unit;
    Ok(match id {
        "A" => (0..8).map(|bits| omega().vertex(bits)).map(|v| point_box(&v)).collect(),
        "B.i" => vec![cxy(pt(0), pt(0), u())],
        "B.ii" => vec![cxy(pt(0), pt(1), u())],
        "B.iii" => vec![cxy(pt(0), u(), pt(0))],
        "B.iv" => vec![cxy(pt(0), u(), pt(1))],
        "B.v" => vec![cxy(c_range(), pt(0), pt(0))],
        "B.vi" => vec![cxy(c_range(), pt(0), pt(1))],
        "B.vii" => vec![cxy(c_range(), pt(1), pt(0)), cxy(c_range(), pt(1), pt(1))],
        "B.viii" => vec![
            cxy(pt(2), pt(0), u()),
            cxy(pt(2), pt(1), u()),
            cxy(pt(2), u(), pt(0)),
            cxy(pt(2), u(), pt(1)),
        ],
        "C.i" => vec![cxy(pt(2), u(), u())],
        "C.ii" => vec![cxy(pt(0), u(), u())],
        "C.iii" => vec![cxy(c_range(), pt(0), u())],
        "C.iv" => vec![cxy(c_range(), pt(1), u())],
        "C.v" => vec![cxy(c_range(), u(), pt(0))],
        "C.vi" => vec![cxy(c_range(), u(), pt(1))],
        "D1" | "D2" => vec![cxy(
            iv(int(0), int(2), true, true),
            iv(int(0), int(1), true, true),
            iv(int(0), int(1), true, true),
        )],
        _ => return Err(unknown(id)),
    })
}

fn point_box(v: &[Rational]) -> BoxRegion {
    cxy(Interval::point(v[0].clone()), Interval::point(v[1].clone()), Interval::point(v[2].clone()))
}

fn unknown(id: &str) -> Error {
    Error::Usage(format!("unknown case {id:?}; expected one of {}", CASE_IDS.join(", ")))
}

/// Steps a case relies on besides its own evidence.
pub fn case_dependencies(id: &str) -> Vec<String> {
    let ids: Vec<&str> = match id {
        "C.iv" => vec!["case-B.vii"],
        "C.vi" => vec!["lemma-1.3", "lemma-1.4", "lemma-1.5", "lemma-1.6", "lemma-1.7", "lemma-1.8", "case-B.vi", "case-B.vii"],
        "D1" => vec!["case-C.vi"],
        _ => vec![],
    };
    ids.into_iter().map(String::from).collect()
}

fn identity(name: &str, lhs: &MultiPoly, rhs: &MultiPoly) -> Part {
    Part::required(name, Evidence::Identity { check: IdentityCheck::between(lhs, rhs) })
}

fn reference_identity(name: &str, lhs: &MultiPoly, rhs: &MultiPoly) -> Part {
    Part::reference(name, Evidence::Identity { check: IdentityCheck::between(lhs, rhs) })
}

fn claim(name: &str, poly: &MultiPoly, region: &BoxRegion, rel: Relation, bound: &Rational, budget: u32) -> Result<Part> {
    Ok(Part::required(name, Evidence::Claim { certificate: certify_claim(poly, region, rel, bound, budget)? }))
}

fn restrict(poly: &MultiPoly, fixed: &[(&str, i64)]) -> MultiPoly {
    fixed.iter().fold(poly.clone(), |acc, (v, k)| acc.restrict(v, &int(*k)))
}

fn region_text(pieces: &[BoxRegion]) -> String {
    pieces.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(" ∪ ")
}

fn start(id: &str, method: StepMethod, claim: &str) -> Result<StepCertificate> {
    let pieces = case_pieces(id)?;
    let deps = case_dependencies(id);
    let deps: Vec<&str> = deps.iter().map(String::as_str).collect();
    Ok(StepCertificate::new(&format!("case-{id}"), method, claim).region(region_text(&pieces)).depends(&deps))
}

pub fn prove_case_step(id: &str, budget: u32) -> Result<StepCertificate> {
    let theta = theta_poly();
    let le = Relation::Le;
    let b320 = int(320);
    let step = match id {
        "A" => vertices(&theta)?,
        "B.i" => {
            let e = restrict(&theta, &[("c", 0), ("x", 0)]);
            let r = &case_pieces(id)?[0];
            start(id, StepMethod::SignCertificate, "theta(0,0,y) = 320 y^2 <= 320")?
                .part(identity("theta(0,0,y) = 320 y^2", &e, &p("320*y^2")))
                .part(claim("320 y^2 <= 320", &e, r, le, &b320, budget)?)
        }
        "B.ii" => {
            let e = restrict(&theta, &[("c", 0), ("x", 1)]);
            let r = &case_pieces(id)?[0];
            start(id, StepMethod::Evaluation, "theta(0,1,y) = 320")?
                .part(identity("theta(0,1,y) = 320", &e, &MultiPoly::int(320)))
                .part(claim("320 <= 320", &e, r, le, &b320, budget)?)
        }
        "B.iii" => {
            let e = restrict(&theta, &[("c", 0), ("y", 0)]);
            let r = &case_pieces(id)?[0];
            start(id, StepMethod::SignCertificate, "theta(0,x,0) = 384 x - 64 x^3 <= 320")?
                .part(identity("theta(0,x,0) = 384 x - 64 x^3", &e, &p("384*x - 64*x^3")))
                .part(claim("384 x - 64 x^3 <= 320", &e, r, le, &b320, budget)?)
        }
        "B.iv" => {
            let e = restrict(&theta, &[("c", 0), ("y", 1)]);
            let r = &case_pieces(id)?[0];
            let terms = [ProductTerm::new(int(-64))
                .times(p("4 - x"), 1, Relation::Ge)
                .times(p("1 - x"), 1, Relation::Ge)
                .times(p("x"), 2, Relation::Ge)];
            let fs = certify_factor_sum(&e, &b320, le, &terms, r, budget)?;
            start(id, StepMethod::FactorSum, "theta(0,x,1) = 320 - 64 (4 - x)(1 - x) x^2 <= 320")?
                .part(identity("expanded form", &e, &p("320 - 256*x^2 + 320*x^3 - 64*x^4")))
                .part(identity("factored form", &e, &p("320 - 64*(4 - x)*(1 - x)*x^2")))
                .part(Part::required("signed factors", Evidence::FactorSum { certificate: fs }))
        }
        "B.v" => {
            let e = restrict(&theta, &[("x", 0), ("y", 0)]);
            let r = &case_pieces(id)?[0];
            start(id, StepMethod::SignCertificate, "theta(c,0,0) = 48 c^2 - 12 c^4 + 5/4 c^6 <= 80")?
                .part(identity("theta(c,0,0) = 48 c^2 - 12 c^4 + 5/4 c^6", &e, &p("48*c^2 - 12*c^4 + 5/4*c^6")))
                .part(claim("theta(c,0,0) <= 80", &e, r, le, &int(80), budget)?)
        }
        "B.vi" => {
            let e = restrict(&theta, &[("x", 0), ("y", 1)]);
            let r = &case_pieces(id)?[0];
            start(id, StepMethod::SignCertificate, "theta(c,0,1) = 320 + psi1(c) <= 320")?
                .part(identity(
                    "theta(c,0,1) as displayed",
                    &e,
                    &p("320 - 160*c^2 + 16*c^3 + 20*c^4 - 4*c^5 + 5/4*c^6"),
                ))
                .part(claim("theta(c,0,1) <= 320", &e, r, le, &b320, budget)?)
        }
        "B.vii" => {
            let e = restrict(&theta, &[("x", 1)]);
            let r = &case_pieces(id)?[0];
            start(id, StepMethod::SignCertificate, "theta(c,1,y) = 320 - 60 c^2 + 16 c^4 - 4 c^6 <= 320")?
                .part(identity("theta(c,1,y) as displayed", &e, &p("320 - 60*c^2 + 16*c^4 - 4*c^6")))
                .part(claim("theta(c,1,y) <= 320", &e, r, le, &b320, budget)?)
                .note("theta(c,1,y) does not depend on y, so one certificate serves both edges")
        }
        "B.viii" => c_two(id, "theta(2,x,y) on the four edges with c = 2", budget)?,
        "C.i" => c_two(id, "theta(2,x,y) on the face c = 2", budget)?,
        "C.ii" => {
            let e = restrict(&theta, &[("c", 0)]);
            let r = &case_pieces(id)?[0];
            let terms = [
                ProductTerm::new(int(-64))
                    .times(p("5 - x"), 1, Relation::Ge)
                    .times(p("1 - x"), 2, Relation::Ge)
                    .times(p("1 + x"), 1, Relation::Ge)
                    .times(p("1 - y"), 1, Relation::Ge)
                    .times(p("1 + y"), 1, Relation::Ge),
                ProductTerm::new(int(-64))
                    .times(p("4 - x"), 1, Relation::Ge)
                    .times(p("1 - x"), 1, Relation::Ge)
                    .times(p("x"), 2, Relation::Ge),
            ];
            let fs = certify_factor_sum(&e, &b320, le, &terms, r, budget)?;
            start(id, StepMethod::FactorSum, "theta(0,x,y) <= theta(0,x,1) <= 320")?
                .part(identity("factored form", &e, &p("384*x - 64*x^3 + 64*(5 - x)*(1 - x)^2*(1 + x)*y^2")))
                .part(Part::required("signed factors", Evidence::FactorSum { certificate: fs }))
        }
        "C.iii" => {
            let e = restrict(&theta, &[("x", 0)]);
            let r = &case_pieces(id)?[0];
            let envelope = p("5/4*c^6 + (4 - c^2)*(4*c^3 + 80 + 12*c^2)");
            let slack = &MultiPoly::int(320) - &envelope;
            let terms = [
                ProductTerm::new(int(-4))
                    .times(nu(), 1, Relation::Ge)
                    .times(p("c"), 3, Relation::Ge)
                    .times(p("1 - y"), 1, Relation::Ge),
                ProductTerm::new(int(-80))
                    .times(nu(), 1, Relation::Ge)
                    .times(p("1 - y"), 1, Relation::Ge)
                    .times(p("1 + y"), 1, Relation::Ge),
                ProductTerm::new(int(-32))
                    .times(nu(), 1, Relation::Ge)
                    .times(p("c"), 2, Relation::Ge)
                    .times(p("y"), 2, Relation::Ge),
                ProductTerm::new(int(-1)).times(slack, 1, Relation::Ge),
            ];
            let fs = certify_factor_sum(&e, &b320, le, &terms, r, budget)?;
            start(id, StepMethod::FactorSum, "theta(c,0,y) <= 5/4 c^6 + (4 - c^2)(4 c^3 + 80 + 12 c^2) <= 320")?
                .part(identity(
                    "regrouped form",
                    &e,
                    &p("5/4*c^6 + (4 - c^2)*(4*c^3*y + 80*y^2 + c^2*(-20*y^2 + 12*(1 - y^2)))"),
                ))
                .part(Part::required("signed factors", Evidence::FactorSum { certificate: fs }))
        }
        "C.iv" => {
            let e = restrict(&theta, &[("x", 1)]);
            let r = &case_pieces(id)?[0];
            start(id, StepMethod::SignCertificate, "theta(c,1,y) <= 320, independent of y")?
                .part(identity("theta(c,1,y) as displayed", &e, &p("320 - 60*c^2 + 16*c^4 - 4*c^6")))
                .part(claim("theta(c,1,y) <= 320", &e, r, le, &b320, budget)?)
        }
        "C.v" => {
            let e = restrict(&theta, &[("y", 0)]);
            let r = &case_pieces(id)?[0];
            let envelope = p("5/4*c^6 + (4 - c^2)*(80 + 21/4*c^4 + 12*c^2)");
            let env_cert = certify_claim(&(&e - &envelope), r, le, &int(0), budget)?;
            let env_max = certify_claim(&envelope, r, le, &b320, budget)?;
            start(id, StepMethod::BoundCertificate, "theta(c,x,0) <= 320")?
                .part(identity(
                    "regrouped form",
                    &e,
                    &p("5/4*c^6 + (4 - c^2)*(96*x - 16*x^3 + c^4*(13/2*x - 29/4*x^2 + 7*x^3 - x^4) \
                        + c^2*(12 - 24*x + 25*x^2 - 12*x^3 + 4*x^4))"),
                ))
                .part(claim("theta(c,x,0) <= 320", &e, r, le, &b320, budget)?)
                .part(Part::reference("theta(c,x,0) <= printed envelope", Evidence::Claim { certificate: env_cert }))
                .part(Part::reference("printed envelope <= 320", Evidence::Claim { certificate: env_max }))
                .note("the face bound is certified directly; the printed intermediate envelope is kept for comparison")
        }
        "C.vi" => face_y1(id)?,
        "D1" => d1(id, budget)?,
        "D2" => d2(id, budget)?,
        _ => return Err(unknown(id)),
    };
    Ok(step.finish())
}

fn vertices(theta: &MultiPoly) -> Result<StepCertificate> {
    let printed = |v: &[Rational]| if v[0] == int(2) || (v[1] == int(0) && v[2] == int(0)) { 0 } else { 320 };
    let mut values = Vec::new();
    let mut witnesses = Vec::new();
    let mut mismatches = Vec::new();
    for bits in 0..8 {
        let v = omega().vertex(bits);
        let value = theta.eval(&[("c", v[0].clone()), ("x", v[1].clone()), ("y", v[2].clone())])?;
        let point = omega().named(&v);
        if value == int(320) {
            witnesses.push(point.clone());
        }
        if value != int(printed(&v)) {
            mismatches.push((point.clone(), value.clone(), printed(&v)));
        }
        values.push(PointValue { point, value });
    }
    let mut step = start("A", StepMethod::Evaluation, "theta <= 320 at the eight vertices of Omega")?.part(Part::required(
        "vertex values",
        Evidence::Values { values, relation: Relation::Le, bound: int(320) },
    ));
    for (point, value, expected) in mismatches {
        let at = point.iter().map(|(_, r)| r.to_string()).collect::<Vec<_>>().join(",");
        step = step.note(format!("theta({at}) = {value}, printed as {expected}"));
    }
    let mut step = step.finish();
    step.witnesses = witnesses;
    Ok(step)
}

/// `ϑ(2,x,y) = 5·2⁶/4 = 80`, since every other term carries `4 − c²`.
fn c_two(id: &str, what: &str, budget: u32) -> Result<StepCertificate> {
    let e = theta_poly().restrict("c", &int(2));
    let pieces = case_pieces(id)?;
    let mut step = start(id, StepMethod::Evaluation, &format!("{what} is constant 80 <= 320"))?
        .part(identity("theta(2,x,y) = 80", &e, &MultiPoly::int(80)));
    for r in &pieces {
        step = step.part(claim(&format!("80 <= 320 on {r}"), &e, r, Relation::Le, &int(320), budget)?);
    }
    Ok(step
        .part(reference_identity("theta(2,x,y) = 0 as printed", &e, &MultiPoly::zero()))
        .note("theta(2,x,y) = 80, not the printed 0; the bound 320 is unaffected"))
}

/// Face `y = 1`: `ϑ(c,x,1) = Ψ(c,x)` and the lemma rectangles cover `[0,2] × [0,1]`.
fn face_y1(id: &str) -> Result<StepCertificate> {
    let face = theta_poly().restrict("y", &int(1));
    let mut pieces = Vec::new();
    for lemma in ["1.3", "1.4", "1.5", "1.6", "1.7", "1.8"] {
        let c = lemma_claim(lemma, lemma_polynomial(lemma)?)?;
        pieces.push(CoverPiece { source: format!("lemma-{lemma}"), region: c.region });
    }
    for (edge, x) in [("case-B.vi", 0), ("case-B.vii", 1)] {
        let region = BoxRegion::new(vec![("c", c_range()), ("x", pt(x))]);
        pieces.push(CoverPiece { source: edge.into(), region });
    }
    let target = BoxRegion::new(vec![("c", c_range()), ("x", Interval::unit())]);
    let cover = check_cover(&target, pieces)?;
    Ok(start(id, StepMethod::Cover, "theta(c,x,1) = Psi(c,x) <= 320 on [0,2] x [0,1]")?
        .part(identity("theta(c,x,1) = Psi(c,x)", &face, &psi_poly()))
        .part(Part::required("lemma rectangles cover the face", Evidence::Cover { check: cover }))
        .note("lemmas 1.4 and 1.6 bound Phi = Psi - 320 < 0"))
}

fn interior() -> BoxRegion {
    omega()
}

/// Common `y`-linear terms of `ϑ(c,x,1) − ϑ` and `h − ϑ`, both `ν(1 − x²)(1 − y)·L` with
/// `L = 4c³(3x + 1) + 2νcx(2x + 1)`, negated.
fn linear_terms() -> Vec<ProductTerm> {
    vec![
        ProductTerm::new(int(-4))
            .times(nu(), 1, Relation::Ge)
            .times(p("1 - x"), 1, Relation::Ge)
            .times(p("1 + x"), 1, Relation::Ge)
            .times(p("1 - y"), 1, Relation::Ge)
            .times(p("c"), 3, Relation::Ge)
            .times(p("3*x + 1"), 1, Relation::Ge),
        ProductTerm::new(int(-2))
            .times(nu(), 2, Relation::Ge)
            .times(p("c"), 1, Relation::Ge)
            .times(p("x"), 1, Relation::Ge)
            .times(p("2*x + 1"), 1, Relation::Ge)
            .times(p("1 - x"), 1, Relation::Ge)
            .times(p("1 + x"), 1, Relation::Ge)
            .times(p("1 - y"), 1, Relation::Ge),
    ]
}

/// Where `M ≥ 0` (the `y²` coefficient of ϑ is nonnegative), `ϑ(c,x,y) ≤ ϑ(c,x,1)`.
fn d1(id: &str, budget: u32) -> Result<StepCertificate> {
    let theta = theta_poly();
    let face = theta.restrict("y", &int(1));
    let mut terms = linear_terms();
    terms.push(
        ProductTerm::new(int(-4))
            .times(nu(), 1, Relation::Ge)
            .times(p("1 - x"), 2, Relation::Ge)
            .times(p("1 + x"), 1, Relation::Ge)
            .times(p("1 - y"), 1, Relation::Ge)
            .times(p("1 + y"), 1, Relation::Ge)
            .assuming(d_quadratic_factor(), Relation::Ge, "M(c,x) >= 0"),
    );
    let fs = certify_factor_sum(&(&theta - &face), &int(0), Relation::Le, &terms, &interior(), budget)?;
    Ok(start(id, StepMethod::FactorSum, "theta(c,x,y) <= theta(c,x,1) wherever M(c,x) >= 0")?
        .part(Part::required("theta <= theta(c,x,1) under M >= 0", Evidence::FactorSum { certificate: fs }))
        .note("M(c,x) = 20 - 8 c^2 - (4 - c^2) x; the y^2 coefficient of theta is 4 (4 - c^2)(1 - x^2)(1 - x) M")
        .note("the bound on the face y = 1 comes from case C.vi"))
}

/// Where `M ≤ 0`, drop the `y²` term and set `y = 1` in the linear one, then
/// bound the envelope `h(c,x)` on the two `c` ranges.
fn d2(id: &str, budget: u32) -> Result<StepCertificate> {
    let theta = theta_poly();
    let h = d2_envelope();
    let m = d_quadratic_factor();
    let lo = d_lower();
    let (s_lo, s_hi) = d_split();
    let two = int(2);
    let unit = Interval::unit();
    let xbox = |c: Interval| BoxRegion::new(vec![("c", c), ("x", unit.clone())]);
    let below = xbox(closed(int(0), lo.clone()));
    let above = xbox(closed(s_hi.clone(), two.clone()));
    let low_piece = xbox(closed(lo.clone(), s_hi.clone()));
    let high_piece = xbox(closed(s_lo.clone(), two.clone()));

    let mut terms = linear_terms();
    terms.push(
        ProductTerm::new(int(4))
            .times(nu(), 1, Relation::Ge)
            .times(p("1 - x"), 2, Relation::Ge)
            .times(p("1 + x"), 1, Relation::Ge)
            .times(p("y"), 2, Relation::Ge)
            .assuming(m.clone(), Relation::Le, "M(c,x) <= 0"),
    );
    let drop = certify_factor_sum(&(&theta - &h), &int(0), Relation::Le, &terms, &interior(), budget)?;

    // ∂ϑ/∂y = ν(1 − x²)(L + 8(1 − x)·M·y), so y₁ = −L / (8(1 − x)M).
    let dy = theta.derive("y");
    let y1_num = p("4*c*x*(1 + 2*x) + c^3*(2 + (5 - 2*x)*x)");
    let y1_den = p("4*(c^2*(-8 + x) - 4*(-5 + x))*(-1 + x)");
    let slope = &d_linear() + &(&(&p("8*(1 - x)") * &m) * &MultiPoly::var("y"));
    // L·den + 8(1 − x)M·num vanishes iff num/den is the root of the y-derivative.
    let stationary = &(&d_linear() * &y1_den) + &(&(&p("8*(1 - x)") * &m) * &y1_num);

    let p1 = p("295 + 28*x^2 - 81*x^3 - 8*x^4");
    let p2 = p("282 + 17*x^2 + x^4");
    let xs = BoxRegion::new(vec![("x", unit.clone())]);
    let xs_open = BoxRegion::new(vec![("x", iv(int(0), int(1), false, true))]);
    let c_cover = check_cover(
        &BoxRegion::new(vec![("c", closed(lo.clone(), two.clone()))]),
        vec![
            CoverPiece { source: "h <= P1".into(), region: BoxRegion::new(vec![("c", closed(lo.clone(), s_hi.clone()))]) },
            CoverPiece { source: "h <= P2".into(), region: BoxRegion::new(vec![("c", closed(s_lo.clone(), two.clone()))]) },
        ],
    )?;
    let printed_h = d2_envelope_displayed();
    let printed_low = certify_claim(&(&printed_h - &p1), &low_piece, Relation::Le, &int(0), budget)?;
    let printed_high = certify_claim(&(&printed_h - &p2), &high_piece, Relation::Le, &int(0), budget)?;
    let cs = |a: Rational, b: Rational| BoxRegion::new(vec![("c", closed(a, b))]);

    Ok(start(id, StepMethod::BoundCertificate, "theta(c,x,y) <= h(c,x) < 300 wherever M(c,x) <= 0")?
        .part(identity("y-derivative of theta", &dy, &(&(&nu() * &p("1 - x^2")) * &slope)))
        .part(identity("stationary point y1 = -L / (8 (1 - x) M)", &stationary, &MultiPoly::zero()))
        .part(claim("M > 0 for c <= 1511/1000", &m, &below, Relation::Gt, &int(0), budget)?)
        .part(claim("M < 0 for c >= 791/500", &m, &above, Relation::Lt, &int(0), budget)?)
        .part(claim("1511/1000 < 4/sqrt(7)", &p("7*c^2 - 16"), &cs(int(0), lo.clone()), Relation::Lt, &int(0), budget)?)
        .part(claim("1581/1000 < sqrt(5/2)", &p("2*c^2 - 5"), &cs(int(0), s_lo), Relation::Lt, &int(0), budget)?)
        .part(claim("791/500 > sqrt(5/2)", &p("2*c^2 - 5"), &cs(s_hi, two), Relation::Gt, &int(0), budget)?)
        .part(Part::required("theta <= h under M <= 0", Evidence::FactorSum { certificate: drop }))
        .part(claim("h <= P1 on the lower range", &(&h - &p1), &low_piece, Relation::Le, &int(0), budget)?)
        .part(claim("P1 < 296", &p1, &xs, Relation::Lt, &int(296), budget)?)
        .part(claim("h <= P2 on the upper range", &(&h - &p2), &high_piece, Relation::Le, &int(0), budget)?)
        .part(claim("P2 <= 300", &p2, &xs, Relation::Le, &int(300), budget)?)
        .part(claim("P2 < 300 for x < 1", &p2, &xs_open, Relation::Lt, &int(300), budget)?)
        .part(Part::required("c ranges cover [1511/1000, 2]", Evidence::Cover { check: c_cover }))
        .part(reference_identity("h as printed", &h, &printed_h))
        .part(reference_identity(
            "printed h minus h",
            &(&printed_h - &h),
            &p("(4 - c^2)*(1 - x)*(13*c^4 + 20*c^3 - 48*c^2 + 16*c + 192)/2"),
        ))
        .part(Part::reference("printed h <= P1", Evidence::Claim { certificate: printed_low }))
        .part(Part::reference("printed h <= P2", Evidence::Claim { certificate: printed_high }))
        .note("4/sqrt(7) and sqrt(5/2) are replaced by the rational brackets 1511/1000 and 1581/1000, 791/500")
        .note("h here is theta(c,x,0) + (4 - c^2)(1 - x^2) L; the printed h is larger by (4 - c^2)(1 - x)(13 c^4 + 20 c^3 - 48 c^2 + 16 c + 192)/2"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cert::{Status, DEFAULT_DEPTH_BUDGET};

    #[test]
    fn boundary_cases() {
        for id in ["A", "B.i", "B.iv", "B.v", "B.vii", "B.viii", "C.ii", "C.iii", "C.iv"] {
            let s = prove_case_step(id, DEFAULT_DEPTH_BUDGET).unwrap();
            assert_eq!(s.own_status, Status::Proved, "{id}: {:?}", s.parts.iter().map(|p| (&p.name, p.status)).collect::<Vec<_>>());
            assert_eq!(s.replay().unwrap(), Status::Proved);
        }
    }

    #[test]
    fn vertex_values() {
        let s = prove_case_step("A", DEFAULT_DEPTH_BUDGET).unwrap();
        let Evidence::Values { values, .. } = &s.parts[0].evidence else { panic!("values") };
        let at = |c: i64, x: i64, y: i64| {
            values.iter().find(|v| v.point.iter().map(|(_, r)| r.clone()).eq([int(c), int(x), int(y)])).unwrap().value.clone()
        };
        assert_eq!(at(0, 0, 0), int(0));
        assert_eq!(at(0, 0, 1), int(320));
        assert_eq!(at(0, 1, 0), int(320));
        assert_eq!(at(0, 1, 1), int(320));
        assert_eq!(at(2, 0, 0), int(80));
        assert_eq!(s.witnesses.len(), 3);
    }
}
