use serde::{Deserialize, Serialize};

use super::claim::{certify_claim, ClaimCertificate};
use super::factor::IdentityCheck;
use super::region::BoxRegion;
use super::{Relation, Status};
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::poly::MultiPoly;

/// Bound `poly rel bound` on `region` through the stationary point of `poly`
/// in `var`, where `poly = α + β·var + γ·var²` with α, β, γ free of `var`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalPointSpec {
    pub poly: MultiPoly,
    pub var: String,
    #[serde(rename = "box")]
    pub region: BoxRegion,
    pub relation: Relation,
    #[serde(with = "crate::arith::serde_rational")]
    pub bound: Rational,
    /// Claimed stationary point `numerator / denominator`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stationary: Option<(MultiPoly, MultiPoly)>,
    /// Claimed closed form of the second derivative in `var`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub second_derivative: Option<MultiPoly>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Extremum {
    Maximum,
    Minimum,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriticalPointReport {
    pub spec: CriticalPointSpec,
    pub alpha: MultiPoly,
    pub beta: MultiPoly,
    pub gamma: MultiPoly,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stationary_identity: Option<IdentityCheck>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub second_derivative_identity: Option<IdentityCheck>,
    pub curvature: ClaimCertificate,
    pub extremum: Extremum,
    /// For a maximum: `4γ(α − B) − β² ≥ 0`; for a minimum: the claim at both ends of `var`.
    pub envelope: Vec<ClaimCertificate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
    pub status: Status,
}

/// Stationary-point argument for a polynomial quadratic in one variable.
pub fn critical_point_check(spec: &CriticalPointSpec, budget: u32) -> Result<CriticalPointReport> {
    let v = spec.var.as_str();
    if spec.poly.degree_in(v) > 2 {
        return Err(Error::domain(format!("{} is not quadratic in {v}", spec.poly)));
    }
    let v_iv = spec
        .region
        .interval(v)
        .ok_or_else(|| Error::usage(format!("{v} is not an axis of {}", spec.region)))?
        .clone();
    let rest = BoxRegion::from_parts(
        spec.region.vars().iter().filter(|w| *w != v).cloned().collect(),
        spec.region.vars().iter().zip(spec.region.intervals()).filter(|(w, _)| *w != v).map(|(_, i)| i.clone()).collect(),
    );
    let alpha = spec.poly.coefficient_in(v, 0);
    let beta = spec.poly.coefficient_in(v, 1);
    let gamma = spec.poly.coefficient_in(v, 2);
    let two = MultiPoly::int(2);

    let mut statuses = Vec::new();
    let mut failure = None;
    let stationary_identity = spec.stationary.as_ref().map(|(num, den)| {
        // ∂p/∂v = β + 2γ·v vanishes at num/den
        IdentityCheck::of_difference(&(&beta * den) + &(&(&two * &gamma) * num))
    });
    if let Some(id) = &stationary_identity {
        if !id.holds {
            statuses.push(Status::Refuted);
            failure = Some(format!("derivative does not vanish at the claimed point, residual {}", id.residual));
        }
    }
    let second_derivative_identity =
        spec.second_derivative.as_ref().map(|d| IdentityCheck::between(&(&two * &gamma), d));
    if let Some(id) = &second_derivative_identity {
        if !id.holds {
            statuses.push(Status::Refuted);
            failure.get_or_insert_with(|| format!("second derivative differs, residual {}", id.residual));
        }
    }

    let zero = Rational::from_integer(0.into());
    let upper = spec.relation.orientation() > 0;
    // An upper bound is decided by a maximum (γ < 0), a lower bound by a minimum.
    let concave_rel = if upper { Relation::Lt } else { Relation::Gt };
    let mut curvature = certify_claim(&gamma, &rest, concave_rel, &zero, budget)?;
    let mut envelope = Vec::new();
    let extremum;
    if curvature.status().is_proved() {
        extremum = if upper { Extremum::Maximum } else { Extremum::Minimum };
        // The extreme value over v is α − β²/(4γ). Multiplying the claim by
        // 4γ gives 4γ(α − B) − β² ≥ 0 for either curvature sign.
        let four_gamma = &MultiPoly::int(4) * &gamma;
        let env = &(&four_gamma * &(&alpha - &MultiPoly::constant(spec.bound.clone()))) - &beta.pow(2);
        let rel = if spec.relation.is_strict() { Relation::Gt } else { Relation::Ge };
        envelope.push(certify_claim(&env, &rest, rel, &zero, budget)?);
    } else {
        // Opposite curvature: the extreme values sit at the ends of the v-range.
        let other = if upper { Relation::Ge } else { Relation::Le };
        curvature = certify_claim(&gamma, &rest, other, &zero, budget)?;
        extremum = if curvature.status().is_proved() {
            if upper { Extremum::Minimum } else { Extremum::Maximum }
        } else {
            Extremum::Unknown
        };
        for end in [&v_iv.lo, &v_iv.hi] {
            let at = spec.poly.restrict(v, end);
            envelope.push(certify_claim(&at, &rest, spec.relation, &spec.bound, budget)?);
        }
    }
    statuses.push(curvature.status());
    if !curvature.status().is_proved() {
        failure.get_or_insert_with(|| "curvature sign not certified".into());
    }
    for e in &envelope {
        statuses.push(e.status());
        if !e.status().is_proved() {
            failure.get_or_insert_with(|| "envelope inequality not certified".into());
        }
    }
    Ok(CriticalPointReport {
        spec: spec.clone(),
        alpha,
        beta,
        gamma,
        stationary_identity,
        second_derivative_identity,
        curvature,
        extremum,
        envelope,
        failure,
        status: Status::all(statuses),
    })
}

impl CriticalPointReport {
    pub fn replay(&self) -> Result<Status> {
        self.curvature.replay()?;
        for e in &self.envelope {
            e.replay()?;
        }
        let budget = match &self.curvature {
            ClaimCertificate::Bound(b) => b.budget,
            _ => super::DEFAULT_DEPTH_BUDGET,
        };
        if critical_point_check(&self.spec, budget)? != *self {
            return Err(Error::Replay("critical-point report does not reproduce".into()));
        }
        Ok(self.status)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, Interval};

    fn p(s: &str) -> MultiPoly {
        MultiPoly::parse_expression(s).unwrap()
    }

    #[test]
    fn convex_square_has_minimum_at_half() {
        let spec = CriticalPointSpec {
            poly: p("(x - 1/2)^2"),
            var: "x".into(),
            region: BoxRegion::new(vec![("x", Interval::unit())]),
            relation: Relation::Le,
            bound: rat(1, 4),
            stationary: Some((MultiPoly::int(1), MultiPoly::int(2))),
            second_derivative: Some(MultiPoly::int(2)),
        };
        let r = critical_point_check(&spec, 8).unwrap();
        assert!(r.stationary_identity.as_ref().unwrap().holds);
        assert_eq!(r.extremum, Extremum::Minimum);
        assert_eq!(r.status, Status::Proved, "{:?}", r.failure);
    }

    #[test]
    fn concave_envelope_with_parameter() {
        // c·x − x^2 ≤ c^2/4 ≤ 1/4 on c ∈ [0,1]
        let spec = CriticalPointSpec {
            poly: p("c*x - x^2"),
            var: "x".into(),
            region: BoxRegion::new(vec![("c", Interval::unit()), ("x", Interval::unit())]),
            relation: Relation::Le,
            bound: rat(1, 4),
            stationary: Some((p("c"), MultiPoly::int(2))),
            second_derivative: None,
        };
        let r = critical_point_check(&spec, 8).unwrap();
        assert_eq!(r.extremum, Extremum::Maximum);
        assert_eq!(r.status, Status::Proved, "{:?}", r.failure);
        assert_eq!(r.replay().unwrap(), Status::Proved);
        let mut wrong = spec.clone();
        wrong.stationary = Some((p("c"), MultiPoly::int(3)));
        assert_eq!(critical_point_check(&wrong, 8).unwrap().status, Status::Refuted);
        let mut tight = spec;
        tight.bound = rat(1, 5);
        assert_ne!(critical_point_check(&tight, 8).unwrap().status, Status::Proved);
    }
}
