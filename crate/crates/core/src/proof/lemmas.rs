//! Lemma steps: sign facts for `ψ_i` and bounds for the face polynomial `Ψ`
//! on the rectangles covering `[0,2] × [0,1]`.

use super::polys::{a_break, b_break, cbox, closed, cxbox, gamma_poly, iv, p, phi_gamma_bracket, psi, psi_poly};
use super::step::{Evidence, Part, StepCertificate, StepMethod};
use crate::arith::{int, rat, Interval, Rational};
use crate::cert::{
    certify_claim, certify_factor_sum, certify_via_cofactor_chain, critical_point_check, BoxRegion, ChainSpec,
    CriticalPointSpec, Fold, IdentityCheck, ProductTerm, Relation,
};
use crate::error::{Error, Result};
use crate::maps::theta_poly;
use crate::poly::{MultiPoly, UniPoly};

pub const LEMMA_IDS: [&str; 11] = ["1.2a", "1.2b", "1.2c", "1.2d", "1.2e", "1.3", "1.4", "1.5", "1.6", "1.7", "1.8"];

/// The claim `poly relation bound` on `region` a lemma asserts.
#[derive(Clone, Debug)]
pub struct LemmaClaim {
    pub poly: MultiPoly,
    pub region: BoxRegion,
    pub relation: Relation,
    pub bound: Rational,
}

fn psi_prefix(n: usize) -> MultiPoly {
    psi().iter().take(n).fold(MultiPoly::zero(), |acc, q| &acc + q)
}

/// The polynomial a lemma is about, before any perturbation.
pub fn lemma_polynomial(id: &str) -> Result<MultiPoly> {
    let ps = psi();
    Ok(match id {
        "1.2a" => ps[0].clone(),
        "1.2b" => psi_prefix(2),
        "1.2c" => psi_prefix(3),
        "1.2d" => &psi_prefix(3) + &ps[3].scale(&rat(3, 5)),
        "1.2e" => ps[4].clone(),
        "1.3" | "1.5" | "1.7" | "1.8" => psi_poly(),
        "1.4" | "1.6" => &psi_poly() - &MultiPoly::int(320),
        _ => return Err(unknown(id)),
    })
}

fn unknown(id: &str) -> Error {
    Error::Usage(format!("unknown lemma {id:?}; expected one of {}", LEMMA_IDS.join(", ")))
}

/// Region, relation and bound of a lemma, for a given polynomial.
pub fn lemma_claim(id: &str, poly: MultiPoly) -> Result<LemmaClaim> {
    let (a, b) = (a_break(), b_break());
    let two = int(2);
    let (region, relation, bound) = match id {
        "1.2a" | "1.2e" => (cbox(closed(int(0), two)), Relation::Le, int(0)),
        "1.2b" => (cbox(iv(a, two, true, false)), Relation::Le, int(0)),
        "1.2c" => (cbox(iv(a, b, true, false)), Relation::Le, int(0)),
        "1.2d" => (cbox(closed(b, two)), Relation::Le, int(0)),
        "1.3" => (cxbox(closed(int(0), a), closed(int(0), rat(1, 4))), Relation::Le, int(320)),
        "1.4" => (cxbox(closed(int(0), a), iv(rat(1, 4), int(1), false, true)), Relation::Lt, int(0)),
        "1.5" => (cxbox(iv(a, b, true, false), closed(int(0), rat(3, 5))), Relation::Le, int(320)),
        "1.6" => (cxbox(iv(a, int(1), true, false), closed(rat(3, 5), int(1))), Relation::Lt, int(0)),
        "1.7" => (cxbox(iv(int(1), b, true, false), closed(rat(3, 5), int(1))), Relation::Le, int(320)),
        "1.8" => (cxbox(iv(b, two, true, false), Interval::unit()), Relation::Le, int(320)),
        _ => return Err(unknown(id)),
    };
    Ok(LemmaClaim { poly, region, relation, bound })
}

fn claim_part(name: &str, poly: &MultiPoly, region: &BoxRegion, rel: Relation, bound: &Rational, budget: u32) -> Result<Part> {
    Ok(Part::required(name, Evidence::Claim { certificate: certify_claim(poly, region, rel, bound, budget)? }))
}

/// Coefficients of `poly` in powers of `power_var`, as polynomials in `coeff_var`.
fn coefficients(poly: &MultiPoly, power_var: &str, coeff_var: &str) -> Result<Vec<UniPoly>> {
    (0..=poly.degree_in(power_var))
        .map(|k| {
            poly.coefficient_in(power_var, k)
                .to_uni(coeff_var)
                .ok_or_else(|| Error::usage(format!("{poly} does not split into {power_var} and {coeff_var}")))
        })
        .collect()
}

struct ChainShape {
    power: (&'static str, Interval),
    coeff: (&'static str, Interval),
    folds: Vec<Fold>,
    blocks: Vec<(usize, usize)>,
    tail_from: Option<usize>,
    strict: bool,
}

fn chain_part(name: &str, target: &MultiPoly, shape: ChainShape, budget: u32) -> Result<Part> {
    let spec = ChainSpec {
        power_var: shape.power.0.into(),
        power_interval: shape.power.1,
        coeff_var: shape.coeff.0.into(),
        coeff_interval: shape.coeff.1,
        coeffs: coefficients(target, shape.power.0, shape.coeff.0)?,
        folds: shape.folds,
        blocks: shape.blocks,
        tail_from: shape.tail_from,
        strict: shape.strict,
        target: target.clone(),
    };
    Ok(Part::required(name, Evidence::Chain { certificate: certify_via_cofactor_chain(&spec, budget)? }))
}

fn method(id: &str) -> StepMethod {
    match id {
        "1.3" => StepMethod::CriticalPoint,
        "1.4" => StepMethod::BoundCertificate,
        "1.5" | "1.6" | "1.7" | "1.8" => StepMethod::CofactorChain,
        _ => StepMethod::SignCertificate,
    }
}

/// Certify lemma `id` for `poly` (the lemma polynomial, possibly perturbed).
/// With `invert` only the direct certificate of the opposite claim is built.
pub fn prove_lemma_for(id: &str, poly: &MultiPoly, invert: bool, budget: u32) -> Result<StepCertificate> {
    let claim = lemma_claim(id, poly.clone())?;
    let rel = if invert { claim.relation.inverted() } else { claim.relation };
    let text = format!("{} {} {} on {}", lemma_name(id), rel, claim.bound, claim.region);
    let step = StepCertificate::new(&format!("lemma-{id}"), method(id), text).region(&claim.region);
    let direct = claim_part("direct", poly, &claim.region, rel, &claim.bound, budget)?;
    let step = step.part(direct);
    if invert {
        return Ok(step.note("claim inverted as a negative control").finish());
    }
    let step = step.part(face_pin(id, poly)?);
    let step = match id {
        "1.2a" | "1.2e" => lemma_1_2_factored(id, poly, &claim, budget, step)?,
        "1.2b" => substitution(poly, &a_break(), iv(int(1), int(2) / a_break(), true, false), budget, step)?,
        "1.2c" => substitution(poly, &a_break(), iv(int(1), b_break() / a_break(), true, false), budget, step)?,
        "1.2d" => substitution(poly, &b_break(), closed(int(1), int(2) / b_break()), budget, step)?,
        "1.3" => lemma_1_3(poly, &claim, budget, step)?,
        "1.4" => lemma_1_4(poly, &claim, budget, step)?,
        "1.5" => lemma_1_5(poly, &claim, budget, step)?,
        "1.6" => lemma_1_6(poly, &claim, budget, step)?,
        "1.7" => lemma_1_7(poly, &claim, budget, step)?,
        "1.8" => lemma_1_8(poly, &claim, budget, step)?,
        _ => unreachable!("ids validated by lemma_claim"),
    };
    Ok(step.finish())
}

fn lemma_name(id: &str) -> &'static str {
    match id {
        "1.2a" => "psi1",
        "1.2b" => "psi1 + psi2",
        "1.2c" => "psi1 + psi2 + psi3",
        "1.2d" => "psi1 + psi2 + psi3 + 3/5 psi4",
        "1.2e" => "psi5",
        "1.4" | "1.6" => "Phi(c,x)",
        _ => "Psi(c,x)",
    }
}

/// `ψ_1 = −48c² − 3c⁶/4 − 2c²(4 − c²)(14 − 2c + c²)` and `ψ_5 = (4 − c²)²(c² − 4c − 4)`.
fn lemma_1_2_factored(id: &str, poly: &MultiPoly, claim: &LemmaClaim, budget: u32, step: StepCertificate) -> Result<StepCertificate> {
    let c = p("c");
    let terms = if id == "1.2a" {
        vec![
            ProductTerm::new(int(-48)).times(c.clone(), 2, Relation::Ge),
            ProductTerm::new(rat(-3, 4)).times(c.clone(), 6, Relation::Ge),
            ProductTerm::new(int(-2))
                .times(c, 2, Relation::Ge)
                .times(p("4 - c^2"), 1, Relation::Ge)
                .times(p("14 - 2*c + c^2"), 1, Relation::Gt),
        ]
    } else {
        vec![ProductTerm::new(int(1)).times(p("4 - c^2"), 2, Relation::Ge).times(p("c^2 - 4*c - 4"), 1, Relation::Le)]
    };
    let cert = certify_factor_sum(poly, &claim.bound, claim.relation, &terms, &claim.region, budget)?;
    Ok(step.part(Part::required("factored form", Evidence::FactorSum { certificate: cert })))
}

/// Replay of the claim after the substitution `c = k·t` on the matching `t` range.
fn substitution(poly: &MultiPoly, k: &Rational, t_range: Interval, budget: u32, step: StepCertificate) -> Result<StepCertificate> {
    let q = poly.substitute("c", &MultiPoly::var("t").scale(k));
    let region = BoxRegion::new(vec![("t", t_range)]);
    let part = claim_part(&format!("substitution c = {k} t"), &q, &region, Relation::Le, &int(0), budget)?;
    Ok(step.part(part))
}

/// `ψ_k` read off `poly = 320 + Σ ψ_k x^(k−1)`.
fn psi_of(poly: &MultiPoly) -> Vec<MultiPoly> {
    (0..5)
        .map(|k| {
            let q = poly.coefficient_in("x", k);
            if k == 0 {
                &q - &MultiPoly::int(320)
            } else {
                q
            }
        })
        .collect()
}

/// Drop the `x³, x⁴` terms using `ψ_4 > 0`, `ψ_5 < 0` and `x ≤ 1/4`, then bound
/// the quadratic `h` through its stationary point.
fn lemma_1_3(poly: &MultiPoly, claim: &LemmaClaim, budget: u32, step: StepCertificate) -> Result<StepCertificate> {
    let ps = psi_of(poly);
    let a = a_break();
    let c_range = cbox(closed(int(0), a));
    let x = p("x");
    let gamma = &ps[2] + &ps[3].scale(&rat(1, 4));
    let alpha = &MultiPoly::int(320) + &ps[0];
    let h = &(&alpha + &(&ps[1] * &x)) + &(&gamma * &x.pow(2));

    let drop_terms = vec![
        ProductTerm::new(int(-1))
            .times(ps[3].clone(), 1, Relation::Gt)
            .times(x.clone(), 2, Relation::Ge)
            .times(p("1/4 - x"), 1, Relation::Ge),
        ProductTerm::new(int(1)).times(ps[4].clone(), 1, Relation::Lt).times(x, 4, Relation::Ge),
    ];
    let dropped = certify_factor_sum(&(poly - &h), &int(0), Relation::Le, &drop_terms, &claim.region, budget)?;

    let q = p("88 - 28*c - 82*c^2 + 21*c^3 + 11*c^4");
    let num = p("-64*c - 96*c^2 - 64*c^3 - 28*c^4 + 20*c^5 + 13*c^6");
    let den = p("-704 + 224*c + 832*c^2 - 224*c^3 - 252*c^4 + 42*c^5 + 22*c^6");
    let spec = CriticalPointSpec {
        poly: h,
        var: "x".into(),
        region: claim.region.clone(),
        relation: Relation::Le,
        bound: int(320),
        stationary: Some((num, den)),
        second_derivative: Some(-&(&p("4 - c^2") * &q)),
    };
    let critical = critical_point_check(&spec, budget)?;

    // h(c, x₀) = α − β²/(4γ); compare with N/(8q) and with the printed N/(8q²).
    let n = p("225280 - 71680*c - 321536*c^2 + 103936*c^3 + 148224*c^4 - 39936*c^5 - 19856*c^6 \
               + 7816*c^7 - 80*c^8 - 662*c^9 - 59*c^10");
    let disc = &(&gamma * &alpha).scale(&int(4)) - &ps[1].pow(2);
    let four_gamma_n = &gamma.scale(&int(4)) * &n;
    let value_q = IdentityCheck::between(&(&q.scale(&int(8)) * &disc), &four_gamma_n);
    let value_q2 = IdentityCheck::between(&(&q.pow(2).scale(&int(8)) * &disc), &four_gamma_n);
    let envelope = &n - &q.scale(&int(2560));

    Ok(step
        .part(claim_part("psi4 > 0", &ps[3], &c_range, Relation::Gt, &int(0), budget)?)
        .part(claim_part("psi5 < 0", &ps[4], &c_range, Relation::Lt, &int(0), budget)?)
        .part(Part::required("Psi <= h", Evidence::FactorSum { certificate: dropped }))
        .part(Part::required("stationary point of h", Evidence::Critical { report: critical }))
        .part(Part::required("h(c, x0) = N/(8q)", Evidence::Identity { check: value_q }))
        .part(claim_part("N <= 2560 q", &envelope, &c_range, Relation::Le, &int(0), budget)?)
        .part(Part::reference("h(c, x0) = N/(8q^2) as printed", Evidence::Identity { check: value_q2 }))
        .note("stated for x in (0, 1/4); certified on the closure")
        .note("equality Psi = 320 holds at (c, x) = (0, 0)"))
}

/// Tie the lemma polynomial to `ϑ(c,x,1)`, from which the face bound reads it.
fn face_pin(id: &str, poly: &MultiPoly) -> Result<Part> {
    let face = theta_poly().restrict("y", &int(1));
    let shifted = &face - &MultiPoly::int(320);
    let (name, expected) = match id {
        "1.3" | "1.5" | "1.7" | "1.8" => ("Psi = theta(c,x,1)", face),
        "1.4" | "1.6" => ("Phi = theta(c,x,1) - 320", shifted),
        _ => {
            let k: Vec<MultiPoly> = psi_of(&face);
            let sum = |n: usize| k.iter().take(n).fold(MultiPoly::zero(), |acc, q| &acc + q);
            let expected = match id {
                "1.2a" => k[0].clone(),
                "1.2b" => sum(2),
                "1.2c" => sum(3),
                "1.2d" => &sum(3) + &k[3].scale(&rat(3, 5)),
                "1.2e" => k[4].clone(),
                _ => return Err(unknown(id)),
            };
            ("coefficients read off theta(c,x,1)", expected)
        }
    };
    Ok(Part::required(name, Evidence::Identity { check: IdentityCheck::between(poly, &expected) }))
}

fn lemma_1_4(poly: &MultiPoly, claim: &LemmaClaim, budget: u32, step: StepCertificate) -> Result<StepCertificate> {
    let shape = ChainShape {
        power: ("c", claim.region.interval("c").expect("c axis").clone()),
        coeff: ("x", claim.region.interval("x").expect("x axis").clone()),
        folds: vec![],
        blocks: vec![(0, 5), (5, 6), (6, 7)],
        tail_from: None,
        strict: true,
    };
    Ok(step.part(chain_part("prefix chain in c", poly, shape, budget)?))
}

fn lemma_1_5(poly: &MultiPoly, claim: &LemmaClaim, budget: u32, step: StepCertificate) -> Result<StepCertificate> {
    let shape = ChainShape {
        power: ("x", claim.region.interval("x").expect("x axis").clone()),
        coeff: ("c", claim.region.interval("c").expect("c axis").clone()),
        folds: vec![Fold { index: 3, cap: rat(3, 5) }],
        blocks: vec![(0, 3), (4, 5)],
        tail_from: None,
        strict: false,
    };
    let target = poly - &MultiPoly::int(320);
    Ok(step.part(chain_part("prefix chain in x", &target, shape, budget)?).note("stated for x in (0, 3/5); certified on the closure"))
}

/// `Φ − Γ = (1 − x)·c·B ≤ 0`, and `Γ < 0` by its own prefix chain.
fn lemma_1_6(poly: &MultiPoly, claim: &LemmaClaim, budget: u32, step: StepCertificate) -> Result<StepCertificate> {
    let gamma = gamma_poly();
    let terms = vec![ProductTerm::new(int(1))
        .times(p("1 - x"), 1, Relation::Ge)
        .times(p("c"), 1, Relation::Gt)
        .times(phi_gamma_bracket(), 1, Relation::Le)];
    let below = certify_factor_sum(&(poly - &gamma), &int(0), Relation::Le, &terms, &claim.region, budget)?;
    let shape = ChainShape {
        power: ("c", claim.region.interval("c").expect("c axis").clone()),
        coeff: ("x", claim.region.interval("x").expect("x axis").clone()),
        folds: vec![],
        blocks: vec![(0, 5), (5, 6), (6, 7)],
        tail_from: None,
        strict: true,
    };
    Ok(step
        .part(Part::required("Phi <= Gamma", Evidence::FactorSum { certificate: below }))
        .part(chain_part("prefix chain of Gamma in c", &gamma, shape, budget)?))
}

fn lemma_1_7(poly: &MultiPoly, claim: &LemmaClaim, budget: u32, step: StepCertificate) -> Result<StepCertificate> {
    let shape = ChainShape {
        power: ("x", claim.region.interval("x").expect("x axis").clone()),
        coeff: ("c", claim.region.interval("c").expect("c axis").clone()),
        folds: vec![],
        blocks: vec![(0, 3)],
        tail_from: Some(3),
        strict: false,
    };
    let target = poly - &MultiPoly::int(320);
    Ok(step.part(chain_part("prefix chain in x with exact tail", &target, shape, budget)?))
}

fn lemma_1_8(poly: &MultiPoly, claim: &LemmaClaim, budget: u32, step: StepCertificate) -> Result<StepCertificate> {
    let shape = ChainShape {
        power: ("x", claim.region.interval("x").expect("x axis").clone()),
        coeff: ("c", claim.region.interval("c").expect("c axis").clone()),
        folds: vec![],
        blocks: vec![(0, 4), (4, 5)],
        tail_from: None,
        strict: false,
    };
    let target = poly - &MultiPoly::int(320);
    Ok(step.part(chain_part("prefix chain in x", &target, shape, budget)?))
}
