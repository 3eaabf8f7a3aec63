use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::claim::{certify_claim, ClaimCertificate};
use super::region::BoxRegion;
use super::{Point, Relation, Status};
use crate::arith::{Rational, RationalExt};
use crate::error::Result;
use crate::poly::{MultiPoly, UniPoly};

/// Outcome of an exact polynomial identity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub holds: bool,
    /// Left side minus right side.
    pub residual: MultiPoly,
    /// A monomial on which the two sides differ.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// A rational point at which the two sides differ.
    #[serde(default, skip_serializing_if = "Option::is_none", with = "super::serde_point::option")]
    pub point: Option<Point>,
}

impl IdentityCheck {
    pub fn of_difference(residual: MultiPoly) -> IdentityCheck {
        let vars = residual.vars().to_vec();
        Self::with_vars(residual, &vars)
    }

    fn with_vars(residual: MultiPoly, vars: &[String]) -> IdentityCheck {
        let witness = residual.monomial_name(0);
        let point = nonzero_point(&residual, vars);
        IdentityCheck { holds: residual.is_zero(), residual, witness, point }
    }

    /// The stored point, if any, must separate the two sides.
    pub fn point_separates(&self) -> Result<bool> {
        match &self.point {
            None => Ok(true),
            Some(p) => {
                let at: Vec<(&str, Rational)> = p.iter().map(|(n, r)| (n.as_str(), r.clone())).collect();
                Ok(!self.residual.eval(&at)?.is_zero())
            }
        }
    }

    /// The witness point, if any, assigns every variable of either side.
    pub fn between(lhs: &MultiPoly, rhs: &MultiPoly) -> IdentityCheck {
        let mut vars = lhs.vars().to_vec();
        vars.extend(rhs.vars().iter().filter(|v| !lhs.vars().contains(v)).cloned());
        IdentityCheck::with_vars(lhs - rhs, &vars)
    }
}

/// A point of `[0,1]^k` where a nonzero polynomial does not vanish. Degree `d`
/// in a variable leaves at most `d` roots, so one of `0, 1/d, .., 1` misses them
/// for each variable in turn.
fn nonzero_point(p: &MultiPoly, vars: &[String]) -> Option<Point> {
    if p.is_zero() {
        return None;
    }
    let mut rest = p.clone();
    let mut point = Point::new();
    for v in vars {
        let d = p.degree_in(v).max(1) as i64;
        let (value, restricted) = (0..=d)
            .map(|j| Rational::new(j.into(), d.into()))
            .map(|r| (r.clone(), rest.restrict(v, &r)))
            .find(|(_, q)| !q.is_zero())?;
        point.push((v.clone(), value));
        rest = restricted;
    }
    Some(point)
}

/// Check `p = scalar·Π factors + remainder` coefficient-wise.
pub fn verify_factorization(
    p: &UniPoly,
    factors: &[UniPoly],
    scalar: &Rational,
    remainder: Option<&UniPoly>,
) -> IdentityCheck {
    let mut rhs = MultiPoly::constant(scalar.clone());
    for f in factors {
        rhs = &rhs * &f.to_multi();
    }
    if let Some(r) = remainder {
        rhs = &rhs + &r.to_multi();
    }
    IdentityCheck::between(&p.to_multi(), &rhs)
}

/// One factor of a product term with its claimed sign `poly rel 0`. A named
/// hypothesis is recorded as an assumption instead of being certified.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermFactor {
    pub poly: MultiPoly,
    pub exponent: u32,
    pub sign: Relation,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hypothesis: Option<String>,
}

/// `scalar · Π factor^exponent`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductTerm {
    #[serde(with = "crate::arith::serde_rational")]
    pub scalar: Rational,
    pub factors: Vec<TermFactor>,
}

impl ProductTerm {
    pub fn new(scalar: Rational) -> Self {
        ProductTerm { scalar, factors: Vec::new() }
    }

    /// Append `poly^exponent` with claimed sign `poly sign 0`.
    pub fn times(mut self, poly: MultiPoly, exponent: u32, sign: Relation) -> Self {
        self.factors.push(TermFactor { poly, exponent, sign, hypothesis: None });
        self
    }

    /// Append a factor whose sign is a named hypothesis of the surrounding case.
    pub fn assuming(mut self, poly: MultiPoly, sign: Relation, name: &str) -> Self {
        self.factors.push(TermFactor { poly, exponent: 1, sign, hypothesis: Some(name.to_string()) });
        self
    }

    pub fn expand(&self) -> MultiPoly {
        let mut acc = MultiPoly::constant(self.scalar.clone());
        for f in &self.factors {
            acc = &acc * &f.poly.pow(f.exponent);
        }
        acc
    }

    /// Sign of the term implied by the factor claims, as a relation against 0.
    fn implied_sign(&self) -> Option<Relation> {
        let s = self.scalar.sign();
        if s == 0 {
            return None;
        }
        let mut negative = s < 0;
        let mut strict = true;
        for f in &self.factors {
            if f.exponent == 0 {
                continue;
            }
            strict &= f.sign.is_strict();
            if f.sign.orientation() > 0 && f.exponent % 2 == 1 {
                negative = !negative;
            }
        }
        Some(match (negative, strict) {
            (true, true) => Relation::Lt,
            (true, false) => Relation::Le,
            (false, true) => Relation::Gt,
            (false, false) => Relation::Ge,
        })
    }
}

/// Check `expr ≡ Σ terms` coefficient-wise.
pub fn verify_product_sum(expr: &MultiPoly, terms: &[ProductTerm]) -> IdentityCheck {
    let mut rhs = MultiPoly::zero();
    for t in terms {
        rhs = &rhs + &t.expand();
    }
    IdentityCheck::between(expr, &rhs)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FactorEvidence {
    Certified { certificate: ClaimCertificate },
    /// Even powers are nonnegative whatever the factor's sign.
    EvenPower,
    Hypothesis { name: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorRecord {
    pub factor: TermFactor,
    pub evidence: FactorEvidence,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    #[serde(with = "crate::arith::serde_rational")]
    pub scalar: Rational,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub implied: Option<Relation>,
    pub factors: Vec<FactorRecord>,
}

/// Certificate for `expr rel bound` from `expr − bound ≡ Σ terms` with every
/// term of the right sign.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorSumCertificate {
    pub expr: MultiPoly,
    #[serde(with = "crate::arith::serde_rational")]
    pub bound: Rational,
    pub relation: Relation,
    #[serde(rename = "box")]
    pub region: BoxRegion,
    pub identity: IdentityCheck,
    pub terms: Vec<TermRecord>,
    /// Named hypotheses the certificate depends on.
    pub assumptions: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
    pub status: Status,
}

/// Certify `expr rel bound` on `region` through a signed product decomposition.
pub fn certify_factor_sum(
    expr: &MultiPoly,
    bound: &Rational,
    rel: Relation,
    terms: &[ProductTerm],
    region: &BoxRegion,
    budget: u32,
) -> Result<FactorSumCertificate> {
    let identity = verify_product_sum(&(expr - &MultiPoly::constant(bound.clone())), terms);
    let mut records = Vec::new();
    let mut assumptions = Vec::new();
    let mut failure = None;
    let mut statuses = Vec::new();
    let mut strict_term = false;

    for (ti, t) in terms.iter().enumerate() {
        let implied = t.implied_sign();
        let mut factors = Vec::new();
        for f in &t.factors {
            let (evidence, status) = if let Some(name) = &f.hypothesis {
                if !assumptions.contains(name) {
                    assumptions.push(name.clone());
                }
                (FactorEvidence::Hypothesis { name: name.clone() }, Status::Proved)
            } else if f.exponent % 2 == 0 && !f.sign.is_strict() && f.sign.orientation() < 0 {
                (FactorEvidence::EvenPower, Status::Proved)
            } else {
                let c = certify_claim(&f.poly, region, f.sign, &Rational::zero(), budget)?;
                let s = c.status();
                (FactorEvidence::Certified { certificate: c }, s)
            };
            if status != Status::Proved && failure.is_none() {
                failure = Some(format!("term {ti}: factor {} {} 0 is {status}", f.poly, f.sign));
            }
            statuses.push(status);
            factors.push(FactorRecord { factor: f.clone(), evidence, status });
        }
        if let Some(s) = implied {
            if s.orientation() != rel.orientation() {
                statuses.push(Status::Refuted);
                if failure.is_none() {
                    failure = Some(format!("term {ti} has sign {s} 0, the claim needs {rel}"));
                }
            }
            strict_term |= s.is_strict() && s.orientation() == rel.orientation();
        }
        records.push(TermRecord { scalar: t.scalar.clone(), implied, factors });
    }
    if !identity.holds {
        statuses.push(Status::Refuted);
        failure.get_or_insert_with(|| format!("identity fails, residual {}", identity.residual));
    }
    if rel.is_strict() && !strict_term {
        statuses.push(Status::Inconclusive);
        failure.get_or_insert_with(|| "no strictly signed term for a strict claim".into());
    }
    let status = Status::all(statuses);
    Ok(FactorSumCertificate {
        expr: expr.clone(),
        bound: bound.clone(),
        relation: rel,
        region: region.clone(),
        identity,
        terms: records,
        assumptions,
        failure,
        status,
    })
}

impl FactorSumCertificate {
    pub fn replay(&self) -> Result<Status> {
        let terms: Vec<ProductTerm> = self
            .terms
            .iter()
            .map(|t| ProductTerm { scalar: t.scalar.clone(), factors: t.factors.iter().map(|f| f.factor.clone()).collect() })
            .collect();
        for t in &self.terms {
            for f in &t.factors {
                if let FactorEvidence::Certified { certificate } = &f.evidence {
                    certificate.replay()?;
                }
            }
        }
        let budget = self
            .terms
            .iter()
            .flat_map(|t| &t.factors)
            .find_map(|f| match &f.evidence {
                FactorEvidence::Certified { certificate: ClaimCertificate::Bound(b) } => Some(b.budget),
                _ => None,
            })
            .unwrap_or(super::DEFAULT_DEPTH_BUDGET);
        let again = certify_factor_sum(&self.expr, &self.bound, self.relation, &terms, &self.region, budget)?;
        if &again != self {
            return Err(crate::error::Error::Replay("factor-sum certificate does not reproduce".into()));
        }
        Ok(self.status)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, Interval};

    fn p(s: &str) -> MultiPoly {
        MultiPoly::parse_expression(s).unwrap()
    }

    #[test]
    fn edge_identity_and_negative_control() {
        // 320 − ϑ(0,x,1) = 64(4 − x)(1 − x)x^2
        let lhs = UniPoly::parse("256*x^2 - 320*x^3 + 64*x^4", "x").unwrap();
        let f = [
            UniPoly::parse("4 - x", "x").unwrap(),
            UniPoly::parse("1 - x", "x").unwrap(),
            UniPoly::parse("x^2", "x").unwrap(),
        ];
        assert!(verify_factorization(&lhs, &f, &int(64), None).holds);
        let bad = [f[0].clone(), UniPoly::parse("1 + x", "x").unwrap(), f[2].clone()];
        let check = verify_factorization(&lhs, &bad, &int(64), None);
        assert!(!check.holds);
        assert!(check.witness.is_some());
        assert!(check.point.is_some() && check.point_separates().unwrap());
    }

    #[test]
    fn separating_point_avoids_every_root() {
        // x(2x − 1)(x − 1) y vanishes at x = 0, 1/2, 1 and at y = 0.
        let r = p("x*(2*x - 1)*(x - 1)*y");
        let check = IdentityCheck::of_difference(r.clone());
        let pt = check.point.clone().unwrap();
        assert_eq!(pt, vec![("x".to_string(), Rational::new(1.into(), 3.into())), ("y".to_string(), int(1))]);
        assert!(check.point_separates().unwrap());
        assert!(IdentityCheck::between(&r, &r).point.is_none());
        let forged = IdentityCheck { point: Some(vec![("x".into(), int(1)), ("y".into(), int(1))]), ..check };
        assert!(!forged.point_separates().unwrap());
    }

    #[test]
    fn signed_terms_prove_bound() {
        let b = BoxRegion::new(vec![("x", Interval::unit()), ("y", Interval::unit())]);
        // x^2 y − x ≤ 0 since it equals x (x y − 1)
        let terms = [ProductTerm::new(int(1)).times(p("x"), 1, Relation::Ge).times(p("x*y - 1"), 1, Relation::Le)];
        let c = certify_factor_sum(&p("x^2*y - x + 3"), &int(3), Relation::Le, &terms, &b, 8).unwrap();
        assert_eq!(c.status, Status::Proved, "{:?}", c.failure);
        assert_eq!(c.replay().unwrap(), Status::Proved);
        // strict claim lacks a strict term
        let s = certify_factor_sum(&p("x^2*y - x + 3"), &int(3), Relation::Lt, &terms, &b, 8).unwrap();
        assert_eq!(s.status, Status::Inconclusive);
        // wrong claimed factor sign
        let wrong = [ProductTerm::new(int(1)).times(p("x"), 1, Relation::Le).times(p("x*y - 1"), 1, Relation::Ge)];
        let w = certify_factor_sum(&p("x^2*y - x"), &int(0), Relation::Le, &wrong, &b, 8).unwrap();
        assert_eq!(w.status, Status::Refuted);
    }

    #[test]
    fn hypotheses_and_even_powers() {
        let b = BoxRegion::new(vec![("x", Interval::of(-1, 1, 1, 1))]);
        let terms = [ProductTerm::new(int(-1)).times(p("x - 1/3"), 2, Relation::Ge).assuming(p("x + 2"), Relation::Gt, "shifted")];
        let c = certify_factor_sum(&p("-(x - 1/3)^2*(x + 2)"), &int(0), Relation::Le, &terms, &b, 8).unwrap();
        assert_eq!(c.status, Status::Proved);
        assert_eq!(c.assumptions, vec!["shifted".to_string()]);
        assert!(matches!(c.terms[0].factors[0].evidence, FactorEvidence::EvenPower));
    }
}
