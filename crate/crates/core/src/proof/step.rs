use serde::{Deserialize, Serialize};

use super::cover::CoverCheck;
use super::sharpness::SharpnessReport;
use crate::arith::Rational;
use crate::cert::{
    serde_point, BoundCertificate, ChainCertificate, ClaimCertificate, CriticalPointReport, FactorSumCertificate,
    IdentityCheck, Point, Relation, SignCertificate, Status,
};
use crate::error::{Error, Result};

/// Kind of argument a step rests on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StepMethod {
    IdentityCheck,
    SignCertificate,
    BoundCertificate,
    CofactorChain,
    CriticalPoint,
    FactorSum,
    Evaluation,
    Cover,
    Sharpness,
    EmpiricalScan,
}

/// Exact value of a polynomial at a point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointValue {
    #[serde(with = "serde_point")]
    pub point: Point,
    #[serde(with = "crate::arith::serde_rational")]
    pub value: Rational,
}

/// Evidence behind one part of a step.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Evidence {
    Identity { check: IdentityCheck },
    Sign { certificate: SignCertificate },
    Claim { certificate: ClaimCertificate },
    Bound { certificate: BoundCertificate },
    Chain { certificate: ChainCertificate },
    Critical { report: CriticalPointReport },
    FactorSum { certificate: FactorSumCertificate },
    Values {
        values: Vec<PointValue>,
        relation: Relation,
        #[serde(with = "crate::arith::serde_rational")]
        bound: Rational,
    },
    Cover { check: CoverCheck },
    Sharpness { report: SharpnessReport },
}

fn values_status(values: &[PointValue], relation: Relation, bound: &Rational) -> Status {
    if values.iter().all(|v| relation.holds(&v.value, bound)) {
        Status::Proved
    } else {
        Status::Refuted
    }
}

impl Evidence {
    pub fn status(&self) -> Status {
        match self {
            Evidence::Identity { check } => identity_status(check),
            Evidence::Sign { certificate } => certificate.status,
            Evidence::Claim { certificate } => certificate.status(),
            Evidence::Bound { certificate } => certificate.status,
            Evidence::Chain { certificate } => certificate.status,
            Evidence::Critical { report } => report.status,
            Evidence::FactorSum { certificate } => certificate.status,
            Evidence::Values { values, relation, bound } => values_status(values, *relation, bound),
            Evidence::Cover { check } => check.status,
            Evidence::Sharpness { report } => report.status,
        }
    }

    /// Recompute the evidence from its stored data.
    pub fn replay(&self) -> Result<Status> {
        let fresh = match self {
            Evidence::Identity { check } => {
                if check.holds != check.residual.is_zero() {
                    return Err(Error::Replay("identity flag disagrees with its residual".into()));
                }
                if !check.point_separates()? {
                    return Err(Error::Replay("identity witness point does not separate the two sides".into()));
                }
                identity_status(check)
            }
            Evidence::Sign { certificate } => certificate.replay()?,
            Evidence::Claim { certificate } => certificate.replay()?,
            Evidence::Bound { certificate } => certificate.replay()?,
            Evidence::Chain { certificate } => certificate.replay()?,
            Evidence::Critical { report } => report.replay()?,
            Evidence::FactorSum { certificate } => certificate.replay()?,
            Evidence::Values { values, relation, bound } => values_status(values, *relation, bound),
            Evidence::Cover { check } => check.replay()?,
            Evidence::Sharpness { report } => report.replay()?,
        };
        if fresh != self.status() {
            return Err(Error::Replay(format!("recorded {} but replay gives {fresh}", self.status())));
        }
        Ok(fresh)
    }

    /// A point where the claim fails, when the evidence carries one.
    pub fn counterexample(&self) -> Option<Point> {
        let sign_point = |c: &SignCertificate| c.counterexample.clone().map(|r| vec![(c.poly.var().to_string(), r)]);
        match self {
            Evidence::Sign { certificate } => sign_point(certificate),
            Evidence::Claim { certificate } => claim_counterexample(certificate),
            Evidence::Bound { certificate } => certificate.counterexample.clone(),
            Evidence::Chain { certificate } => certificate
                .prefixes
                .iter()
                .find_map(|p| sign_point(&p.certificate))
                .or_else(|| certificate.dominating.as_ref().and_then(|d| d.counterexample.clone())),
            Evidence::Critical { report } => claim_counterexample(&report.curvature)
                .or_else(|| report.envelope.iter().find_map(claim_counterexample)),
            Evidence::FactorSum { certificate } => certificate.terms.iter().flat_map(|t| &t.factors).find_map(|f| {
                match &f.evidence {
                    crate::cert::FactorEvidence::Certified { certificate } => claim_counterexample(certificate),
                    _ => None,
                }
            }),
            Evidence::Identity { check } => check.point.clone(),
            Evidence::Values { values, relation, bound } => {
                values.iter().find(|v| !relation.holds(&v.value, bound)).map(|v| v.point.clone())
            }
            _ => None,
        }
    }
}

fn claim_counterexample(c: &ClaimCertificate) -> Option<Point> {
    match c {
        ClaimCertificate::Constant { .. } => None,
        ClaimCertificate::Sign(s) => s.counterexample.clone().map(|r| vec![(s.poly.var().to_string(), r)]),
        ClaimCertificate::Bound(b) => b.counterexample.clone(),
    }
}

pub(crate) fn identity_status(check: &IdentityCheck) -> Status {
    if check.holds {
        Status::Proved
    } else {
        Status::Refuted
    }
}

/// Whether a part decides the step or is kept as a cross-reference.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PartRole {
    Required,
    /// Recorded for comparison with a printed intermediate; never affects the status.
    Reference,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Part {
    pub name: String,
    pub role: PartRole,
    pub evidence: Evidence,
    pub status: Status,
}

impl Part {
    pub fn required(name: &str, evidence: Evidence) -> Part {
        let status = evidence.status();
        Part { name: name.to_string(), role: PartRole::Required, evidence, status }
    }

    pub fn reference(name: &str, evidence: Evidence) -> Part {
        let status = evidence.status();
        Part { name: name.to_string(), role: PartRole::Reference, evidence, status }
    }
}

/// Certificate of one node of the proof plan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepCertificate {
    pub id: String,
    pub method: StepMethod,
    pub claim: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub region: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub depends_on: Vec<String>,
    pub parts: Vec<Part>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    /// Counterexamples when refuted; points of equality otherwise.
    #[serde(default, with = "points")]
    pub witnesses: Vec<Point>,
    /// Status of the step's own evidence.
    pub own_status: Status,
    /// Own status combined with the status of every dependency.
    pub status: Status,
}

mod points {
    use crate::arith::parse_rational;
    use crate::cert::Point;
    use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[Point], s: S) -> Result<S::Ok, S::Error> {
        let t: Vec<Vec<(String, String)>> =
            v.iter().map(|p| p.iter().map(|(n, r)| (n.clone(), r.to_string())).collect()).collect();
        t.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Point>, D::Error> {
        let t = Vec::<Vec<(String, String)>>::deserialize(d)?;
        t.into_iter()
            .map(|p| p.into_iter().map(|(n, r)| Ok((n, parse_rational(&r).map_err(D::Error::custom)?))).collect())
            .collect()
    }
}

impl StepCertificate {
    pub(crate) fn new(id: &str, method: StepMethod, claim: impl Into<String>) -> Self {
        StepCertificate {
            id: id.to_string(),
            method,
            claim: claim.into(),
            region: None,
            depends_on: Vec::new(),
            parts: Vec::new(),
            notes: Vec::new(),
            witnesses: Vec::new(),
            own_status: Status::Proved,
            status: Status::Proved,
        }
    }

    pub(crate) fn region(mut self, r: impl ToString) -> Self {
        self.region = Some(r.to_string());
        self
    }

    pub(crate) fn part(mut self, p: Part) -> Self {
        self.parts.push(p);
        self
    }

    pub(crate) fn note(mut self, n: impl Into<String>) -> Self {
        self.notes.push(n.into());
        self
    }

    pub(crate) fn depends(mut self, ids: &[&str]) -> Self {
        self.depends_on.extend(ids.iter().map(|s| s.to_string()));
        self
    }

    /// Status from the required parts alone.
    pub fn evidence_status(&self) -> Status {
        Status::all(self.parts.iter().filter(|p| p.role == PartRole::Required).map(|p| p.status))
    }

    /// Fill in the own status and counterexample witnesses; dependencies are
    /// folded in by the driver.
    pub(crate) fn finish(mut self) -> Self {
        self.own_status = self.evidence_status();
        if self.own_status == Status::Refuted {
            self.witnesses = self
                .parts
                .iter()
                .filter(|p| p.role == PartRole::Required && p.status == Status::Refuted)
                .filter_map(|p| p.evidence.counterexample())
                .collect();
        }
        self.status = self.own_status;
        self
    }

    /// Replay every part; the stored statuses must be reproduced.
    pub fn replay(&self) -> Result<Status> {
        for p in &self.parts {
            let s = p.evidence.replay()?;
            if s != p.status {
                return Err(Error::Replay(format!("{}: part {:?} recorded {} but replays {s}", self.id, p.name, p.status)));
            }
        }
        let own = self.evidence_status();
        if own != self.own_status {
            return Err(Error::Replay(format!("{}: own status {} but parts give {own}", self.id, self.own_status)));
        }
        Ok(own)
    }
}
