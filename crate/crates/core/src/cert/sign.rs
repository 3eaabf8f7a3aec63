use serde::{Deserialize, Serialize};

use super::sturm::{count_real_roots, isolate_roots, IsolatedRoot};
use super::{Relation, Status};
use crate::arith::{Interval, Rational, RationalExt};
use crate::error::{Error, Result};
use crate::poly::UniPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignMethod {
    SturmRootCount,
    Factorization,
    EndpointEval,
}

/// A root of the polynomial inside the interval, with its sign behaviour.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootWitness {
    pub root: IsolatedRoot,
    pub in_interval: bool,
}

/// Certificate that a univariate polynomial satisfies `p rel 0` on an interval.
///
/// Evidence: the distinct real roots of `p` in the closed interval (isolated
/// with Sturm sequences) and one rational sample point in every gap between
/// consecutive roots; since `p` has constant sign on each gap, the samples
/// decide the claim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SignCertificate {
    pub poly: UniPoly,
    pub interval: Interval,
    pub relation: Relation,
    pub method: SignMethod,
    /// Distinct roots strictly inside the interval.
    pub interior_roots: usize,
    pub roots: Vec<RootWitness>,
    /// `(point, value)` at the interval ends.
    #[serde(with = "pairs")]
    pub endpoint_values: Vec<(Rational, Rational)>,
    /// `(point, value)` in every root-free gap.
    #[serde(with = "pairs")]
    pub samples: Vec<(Rational, Rational)>,
    /// A rational point where the relation fails, when one exists.
    #[serde(default, skip_serializing_if = "Option::is_none", with = "crate::arith::serde_rational::option")]
    pub counterexample: Option<Rational>,
    pub status: Status,
}

mod pairs {
    use crate::arith::{parse_rational, Rational};
    use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[(Rational, Rational)], s: S) -> Result<S::Ok, S::Error> {
        let t: Vec<[String; 2]> = v.iter().map(|(a, b)| [a.to_string(), b.to_string()]).collect();
        t.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<(Rational, Rational)>, D::Error> {
        let t = Vec::<[String; 2]>::deserialize(d)?;
        t.into_iter()
            .map(|[a, b]| {
                Ok((
                    parse_rational(&a).map_err(D::Error::custom)?,
                    parse_rational(&b).map_err(D::Error::custom)?,
                ))
            })
            .collect()
    }
}

fn sign_ok(rel: Relation, s: i8) -> bool {
    match rel {
        Relation::Le => s <= 0,
        Relation::Lt => s < 0,
        Relation::Ge => s >= 0,
        Relation::Gt => s > 0,
    }
}

/// Decide `p rel 0` on `i` exactly.
pub fn certify_sign(p: &UniPoly, i: &Interval, rel: Relation) -> SignCertificate {
    let endpoint_values: Vec<(Rational, Rational)> = if i.is_point() {
        vec![(i.lo.clone(), p.eval(&i.lo))]
    } else {
        vec![(i.lo.clone(), p.eval(&i.lo)), (i.hi.clone(), p.eval(&i.hi))]
    };
    let mut cert = SignCertificate {
        poly: p.clone(),
        interval: i.clone(),
        relation: rel,
        method: if i.is_point() { SignMethod::EndpointEval } else { SignMethod::SturmRootCount },
        interior_roots: 0,
        roots: Vec::new(),
        endpoint_values,
        samples: Vec::new(),
        counterexample: None,
        status: Status::Proved,
    };

    if p.is_zero() {
        if rel.is_strict() {
            cert.counterexample = Some(i.mid());
            cert.status = Status::Refuted;
        }
        return cert;
    }

    if i.is_point() {
        let v = &cert.endpoint_values[0].1;
        if !sign_ok(rel, v.sign()) {
            cert.counterexample = Some(i.lo.clone());
            cert.status = Status::Refuted;
        }
        return cert;
    }

    let roots = isolate_roots(p, i).expect("nonzero polynomial");
    cert.interior_roots = count_real_roots(p, &i.closure().with_open(true, true)).expect("nonzero");
    // Sample points: one in every open gap between consecutive roots and
    // between the interval ends and the outermost roots.
    let mut cuts: Vec<(Rational, Rational)> = Vec::new(); // (gap start, gap end)
    let mut prev = i.lo.clone();
    for r in &roots {
        if r.lo() > &prev || (r.lo() == &prev && matches!(r, IsolatedRoot::Bracket { .. })) {
            cuts.push((prev.clone(), r.lo().clone()));
        }
        prev = r.hi().clone();
    }
    if prev < i.hi {
        cuts.push((prev, i.hi.clone()));
    }
    for (a, b) in cuts {
        // Gap ends are either interval ends, exact roots or bracket ends; the
        // open gap contains no root, so any interior point carries its sign.
        if a == b {
            continue;
        }
        let m = (&a + &b) / Rational::from_integer(2.into());
        let v = p.eval(&m);
        cert.samples.push((m, v));
    }
    // Bracket ends are not roots and lie in root-free territory too. An end
    // that is an excluded interval end still carries the sign of the open
    // stretch between it and the root, which lies inside the interval.
    let mut outer_ends: Vec<(Rational, Rational)> = Vec::new();
    for r in &roots {
        if let IsolatedRoot::Bracket { lo, hi } = r {
            for (e, other) in [(lo, hi), (hi, lo)] {
                if e > &i.lo && e < &i.hi {
                    cert.samples.push((e.clone(), p.eval(e)));
                } else if !i.contains(e) {
                    outer_ends.push((e.clone(), other.clone()));
                }
            }
        }
    }
    cert.samples.sort_by(|a, b| a.0.cmp(&b.0));
    cert.samples.dedup();

    for r in &roots {
        let in_interval = match r {
            IsolatedRoot::Exact { at } => i.contains(at),
            IsolatedRoot::Bracket { .. } => true,
        };
        cert.roots.push(RootWitness { root: r.clone(), in_interval });
    }

    // Every value the polynomial takes on the interval is either a sample sign
    // (constant on each gap) or zero at a root.
    let mut failing: Option<Rational> = None;
    for (pt, v) in cert.samples.iter().chain(cert.endpoint_values.iter()) {
        if i.contains(pt) && !sign_ok(rel, v.sign()) {
            failing = Some(pt.clone());
            break;
        }
    }
    if failing.is_none() {
        for (e, other) in &outer_ends {
            if !sign_ok(rel, p.eval(e).sign()) {
                failing = Some(point_with_sign_of(p, e, other));
                break;
            }
        }
    }
    if failing.is_none() && rel.is_strict() {
        for r in &cert.roots {
            if r.in_interval {
                match &r.root {
                    IsolatedRoot::Exact { at } => {
                        failing = Some(at.clone());
                    }
                    IsolatedRoot::Bracket { .. } => {
                        // Irrational root of even multiplicity: the relation fails at
                        // an irrational point only; the bracket is the witness.
                        cert.status = Status::Refuted;
                    }
                }
                break;
            }
        }
    }
    if let Some(pt) = failing {
        cert.counterexample = Some(pt);
        cert.status = Status::Refuted;
    }
    cert
}

/// A point strictly between `end` and the single root of `p` in the bracket
/// `end..other` where `p` has the sign it has at `end`.
fn point_with_sign_of(p: &UniPoly, end: &Rational, other: &Rational) -> Rational {
    let s = p.eval(end).sign();
    let two = Rational::from_integer(2.into());
    let mut far = other.clone();
    loop {
        let m = (end + &far) / &two;
        if p.eval(&m).sign() == s {
            return m;
        }
        far = m;
    }
}

impl SignCertificate {
    /// Re-derive the certificate from its claim and compare.
    pub fn replay(&self) -> Result<Status> {
        if self.method == SignMethod::Factorization {
            return Err(Error::Replay("factorization certificates replay through their identity".into()));
        }
        let again = certify_sign(&self.poly, &self.interval, self.relation);
        if &again != self {
            return Err(Error::Replay(format!(
                "sign certificate for {} on {} does not reproduce",
                self.poly, self.interval
            )));
        }
        if let Some(c) = &self.counterexample {
            let v = self.poly.eval(c);
            if sign_ok(self.relation, v.sign()) {
                return Err(Error::Replay("stored counterexample satisfies the relation".into()));
            }
        }
        Ok(self.status)
    }
}
