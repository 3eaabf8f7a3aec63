//! Certificates for polynomial inequalities: univariate Sturm certificates,
//! Bernstein branch-and-bound on boxes, factor-sum identities, prefix-sum
//! (cofactor chain) arguments and stationary-point checks.

mod bernstein;
mod boxcert;
mod chain;
mod claim;
mod critical;
mod factor;
mod region;
mod sign;
mod sturm;

pub use bernstein::{bernstein_bounds, BernsteinPatch};
pub use boxcert::{certify_box_bound, BoundCertificate, BoundMethod, BoundNode, Cone, DEFAULT_DEPTH_BUDGET};
pub use chain::{certify_via_cofactor_chain, ChainCertificate, ChainSpec, Fold};
pub use claim::{certify_claim, ClaimCertificate};
pub use critical::{critical_point_check, CriticalPointReport, CriticalPointSpec, Extremum};
pub use factor::{
    certify_factor_sum, verify_factorization, verify_product_sum, FactorEvidence, FactorRecord,
    FactorSumCertificate, IdentityCheck, ProductTerm, TermFactor, TermRecord,
};
pub use region::BoxRegion;
pub use sign::{certify_sign, RootWitness, SignCertificate, SignMethod};
pub use sturm::{count_real_roots, isolate_roots, sign_variations, sturm_chain, IsolatedRoot};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::Rational;
use crate::error::{Error, Result};

/// Comparison of a polynomial against a bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = ">")]
    Gt,
}

impl Relation {
    pub fn is_strict(self) -> bool {
        matches!(self, Relation::Lt | Relation::Gt)
    }

    /// `+1` for upper-bound relations, `−1` for lower-bound ones.
    pub fn orientation(self) -> i8 {
        match self {
            Relation::Le | Relation::Lt => 1,
            Relation::Ge | Relation::Gt => -1,
        }
    }

    pub fn holds(self, value: &Rational, bound: &Rational) -> bool {
        match self {
            Relation::Le => value <= bound,
            Relation::Lt => value < bound,
            Relation::Ge => value >= bound,
            Relation::Gt => value > bound,
        }
    }

    pub fn inverted(self) -> Relation {
        match self {
            Relation::Le => Relation::Gt,
            Relation::Lt => Relation::Ge,
            Relation::Ge => Relation::Lt,
            Relation::Gt => Relation::Le,
        }
    }

    pub fn non_strict(self) -> Relation {
        match self {
            Relation::Lt => Relation::Le,
            Relation::Gt => Relation::Ge,
            r => r,
        }
    }

    pub fn strict(self) -> Relation {
        match self {
            Relation::Le => Relation::Lt,
            Relation::Ge => Relation::Gt,
            r => r,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Le => "<=",
            Relation::Lt => "<",
            Relation::Ge => ">=",
            Relation::Gt => ">",
        }
    }

    pub fn parse(s: &str) -> Result<Relation> {
        match s.trim() {
            "<=" | "≤" => Ok(Relation::Le),
            "<" => Ok(Relation::Lt),
            ">=" | "≥" => Ok(Relation::Ge),
            ">" => Ok(Relation::Gt),
            other => Err(Error::parse(format!("unknown relation {other:?}"))),
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Outcome of a certification attempt.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, PartialOrd, Ord)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Proved,
    Inconclusive,
    Refuted,
}

impl Status {
    /// Combine sub-results: any refutation wins, then any inconclusive.
    pub fn all(items: impl IntoIterator<Item = Status>) -> Status {
        items.into_iter().max().unwrap_or(Status::Proved)
    }

    pub fn is_proved(self) -> bool {
        self == Status::Proved
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Proved => "proved",
            Status::Inconclusive => "inconclusive",
            Status::Refuted => "refuted",
        })
    }
}

/// A rational point with named coordinates.
pub type Point = Vec<(String, Rational)>;

pub(crate) mod serde_point {
    use super::Point;
    use crate::arith::parse_rational;
    use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(p: &Point, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<(String, String)> = p.iter().map(|(n, r)| (n.clone(), r.to_string())).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Point, D::Error> {
        let v = Vec::<(String, String)>::deserialize(d)?;
        v.into_iter()
            .map(|(n, r)| Ok((n, parse_rational(&r).map_err(D::Error::custom)?)))
            .collect()
    }

    pub mod option {
        use super::Point;
        use serde::{Deserialize, Deserializer, Serialize, Serializer};

        pub fn serialize<S: Serializer>(p: &Option<Point>, s: S) -> Result<S::Ok, S::Error> {
            #[derive(Serialize)]
            struct W<'a>(#[serde(with = "super")] &'a Point);
            p.as_ref().map(W).serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Point>, D::Error> {
            #[derive(Deserialize)]
            struct W(#[serde(with = "super")] Point);
            Ok(Option::<W>::deserialize(d)?.map(|w| w.0))
        }
    }
}
