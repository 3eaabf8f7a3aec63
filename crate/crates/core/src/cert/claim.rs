use serde::{Deserialize, Serialize};

use super::boxcert::{certify_box_bound, BoundCertificate};
use super::region::BoxRegion;
use super::sign::{certify_sign, SignCertificate};
use super::{Relation, Status};
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::poly::MultiPoly;

/// Evidence for `p rel bound` on a box, produced by the cheapest applicable method.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ClaimCertificate {
    /// `p − bound` is a constant.
    Constant {
        #[serde(with = "crate::arith::serde_rational")]
        value: Rational,
        relation: Relation,
        status: Status,
    },
    /// `p` depends on one axis only.
    Sign(SignCertificate),
    Bound(BoundCertificate),
}

impl ClaimCertificate {
    pub fn status(&self) -> Status {
        match self {
            ClaimCertificate::Constant { status, .. } => *status,
            ClaimCertificate::Sign(c) => c.status,
            ClaimCertificate::Bound(c) => c.status,
        }
    }

    pub fn replay(&self) -> Result<Status> {
        match self {
            ClaimCertificate::Constant { value, relation, status } => {
                let fresh = if relation.holds(value, &Rational::from_integer(0.into())) {
                    Status::Proved
                } else {
                    Status::Refuted
                };
                if fresh != *status {
                    return Err(Error::Replay(format!("constant {value} {relation} 0 mis-recorded")));
                }
                Ok(fresh)
            }
            ClaimCertificate::Sign(c) => c.replay(),
            ClaimCertificate::Bound(c) => c.replay(),
        }
    }
}

/// Decide `p rel bound` on `region`: exact evaluation for constants, Sturm
/// certificates for polynomials of one variable, box branch-and-bound otherwise.
pub fn certify_claim(
    p: &MultiPoly,
    region: &BoxRegion,
    rel: Relation,
    bound: &Rational,
    budget: u32,
) -> Result<ClaimCertificate> {
    let g = p - &MultiPoly::constant(bound.clone());
    for v in g.vars() {
        if region.axis(v).is_none() {
            return Err(Error::usage(format!("variable {v} is not an axis of {region}")));
        }
    }
    match g.vars() {
        [] => {
            let value = g.constant_term();
            let status = if rel.holds(&value, &Rational::from_integer(0.into())) {
                Status::Proved
            } else {
                Status::Refuted
            };
            Ok(ClaimCertificate::Constant { value, relation: rel, status })
        }
        [v] => {
            let u = g.to_uni(v).expect("single variable");
            let iv = region.interval(v).expect("checked above");
            Ok(ClaimCertificate::Sign(certify_sign(&u, iv, rel)))
        }
        _ => Ok(ClaimCertificate::Bound(certify_box_bound(p, region, rel, bound, budget)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, Interval};
    use crate::cert::DEFAULT_DEPTH_BUDGET;

    #[test]
    fn dispatch_by_variable_count() {
        let b = BoxRegion::new(vec![("c", Interval::of(0, 1, 2, 1)), ("x", Interval::unit())]);
        let k = certify_claim(&MultiPoly::int(3), &b, Relation::Lt, &int(5), DEFAULT_DEPTH_BUDGET).unwrap();
        assert!(matches!(k, ClaimCertificate::Constant { status: Status::Proved, .. }));
        let u = MultiPoly::parse_sparse("c^2").unwrap();
        let s = certify_claim(&u, &b, Relation::Le, &int(4), DEFAULT_DEPTH_BUDGET).unwrap();
        assert!(matches!(s, ClaimCertificate::Sign(_)));
        assert!(s.status().is_proved());
        let m = MultiPoly::parse_sparse("c^2*x").unwrap();
        let bx = certify_claim(&m, &b, Relation::Lt, &int(4), DEFAULT_DEPTH_BUDGET).unwrap();
        assert_eq!(bx.status(), Status::Refuted);
        assert_eq!(bx.replay().unwrap(), Status::Refuted);
    }
}
