use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::boxcert::{certify_box_bound, BoundCertificate};
use super::factor::IdentityCheck;
use super::region::BoxRegion;
use super::sign::{certify_sign, SignCertificate};
use super::{Relation, Status};
use crate::arith::{Interval, Rational};
use crate::error::{Error, Result};
use crate::poly::{MultiPoly, UniPoly};

/// Replace `a_j·t^j` by the larger `cap·a_j·t^(j−1)`; needs `a_j ≥ 0` and `0 ≤ t ≤ cap`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fold {
    pub index: usize,
    #[serde(with = "crate::arith::serde_rational")]
    pub cap: Rational,
}

/// Claim `target = Σ coeffs[i](u)·t^i ≤ 0` (or `< 0`) for `t` in `power_interval ⊂ [0,1]`
/// and `u` in `coeff_interval`.
///
/// Blocks are half-open index ranges whose prefix sums are certified
/// nonpositive; by summation by parts each block is then at most its last
/// prefix sum times `t^(hi−1)`. Indices from `tail_from` on are kept exact in
/// a dominating polynomial certified on the box.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainSpec {
    pub power_var: String,
    pub power_interval: Interval,
    pub coeff_var: String,
    pub coeff_interval: Interval,
    pub coeffs: Vec<UniPoly>,
    #[serde(default)]
    pub folds: Vec<Fold>,
    pub blocks: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tail_from: Option<usize>,
    pub strict: bool,
    pub target: MultiPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FoldRecord {
    pub fold: Fold,
    pub nonnegative: SignCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrefixRecord {
    pub block: usize,
    pub through: usize,
    pub sum: UniPoly,
    pub certificate: SignCertificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainCertificate {
    pub spec: ChainSpec,
    pub identity: IdentityCheck,
    pub folds: Vec<FoldRecord>,
    pub prefixes: Vec<PrefixRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dominating: Option<BoundCertificate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strictness: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failure: Option<String>,
    pub status: Status,
}

fn assemble(spec: &ChainSpec, coeffs: &[UniPoly]) -> MultiPoly {
    let t = MultiPoly::var(&spec.power_var);
    let mut acc = MultiPoly::zero();
    for (i, a) in coeffs.iter().enumerate() {
        acc = &acc + &(&a.to_multi() * &t.pow(i as u32));
    }
    acc
}

fn validate(spec: &ChainSpec) -> Result<()> {
    let unit = Interval::unit();
    if !unit.contains_interval(&spec.power_interval) {
        return Err(Error::domain(format!("power interval {} is not inside [0,1]", spec.power_interval)));
    }
    if spec.coeffs.is_empty() {
        return Err(Error::usage("cofactor chain needs coefficients"));
    }
    let n = spec.coeffs.len();
    let mut covered = vec![false; n];
    for &(lo, hi) in &spec.blocks {
        if lo >= hi || hi > n {
            return Err(Error::usage(format!("block {lo}..{hi} out of range")));
        }
        for c in &mut covered[lo..hi] {
            if *c {
                return Err(Error::usage("blocks overlap"));
            }
            *c = true;
        }
    }
    if let Some(tf) = spec.tail_from {
        for c in covered.iter_mut().skip(tf) {
            if *c {
                return Err(Error::usage("tail overlaps a block"));
            }
            *c = true;
        }
    }
    for f in &spec.folds {
        if f.index == 0 || f.index >= n {
            return Err(Error::usage(format!("fold index {} out of range", f.index)));
        }
    }
    for a in &spec.coeffs {
        if a.to_multi().vars().iter().any(|v| v != &spec.coeff_var) {
            return Err(Error::usage(format!("coefficient {a} is not a polynomial in {}", spec.coeff_var)));
        }
    }
    Ok(())
}

/// Replay the summation-by-parts argument for `spec`.
pub fn certify_via_cofactor_chain(spec: &ChainSpec, budget: u32) -> Result<ChainCertificate> {
    validate(spec)?;
    let identity = IdentityCheck::between(&spec.target, &assemble(spec, &spec.coeffs));
    let mut statuses = vec![if identity.holds { Status::Proved } else { Status::Refuted }];
    let mut failure = (!identity.holds).then(|| format!("coefficients do not reassemble the target, residual {}", identity.residual));

    let zero = UniPoly::zero(&spec.coeff_var);
    let mut a = spec.coeffs.clone();
    let mut folds = Vec::new();
    for f in &spec.folds {
        let cert = certify_sign(&a[f.index], &spec.coeff_interval, Relation::Ge);
        if spec.power_interval.hi > f.cap {
            statuses.push(Status::Refuted);
            failure.get_or_insert_with(|| format!("fold cap {} is below the power range {}", f.cap, spec.power_interval));
        }
        if !cert.status.is_proved() {
            failure.get_or_insert_with(|| format!("fold coefficient {} is not nonnegative", f.index));
        }
        statuses.push(cert.status);
        let moved = a[f.index].scale(&f.cap);
        a[f.index - 1] = &a[f.index - 1] + &moved;
        a[f.index] = zero.clone();
        folds.push(FoldRecord { fold: f.clone(), nonnegative: cert });
    }

    let n = a.len();
    let mut in_use = vec![false; n];
    for &(lo, hi) in &spec.blocks {
        in_use[lo..hi].iter_mut().for_each(|u| *u = true);
    }
    if let Some(tf) = spec.tail_from {
        in_use[tf..].iter_mut().for_each(|u| *u = true);
    }
    for (i, used) in in_use.iter().enumerate() {
        if !used && !a[i].is_zero() {
            return Err(Error::usage(format!("coefficient {i} is neither in a block nor in the tail")));
        }
    }

    let zero_in = spec.power_interval.contains(&Rational::zero());
    let one_in = spec.power_interval.contains(&Rational::one());
    let mut prefixes = Vec::new();
    let mut last_sums = Vec::new();
    let mut strict_at = None;
    let mut strict_block = None;
    for (bi, &(lo, hi)) in spec.blocks.iter().enumerate() {
        let mut sum = zero.clone();
        let mut all_strict = true;
        for (k, ak) in a.iter().enumerate().take(hi).skip(lo) {
            sum = &sum + ak;
            let strict = certify_sign(&sum, &spec.coeff_interval, Relation::Lt);
            let cert = if strict.status.is_proved() {
                strict
            } else {
                certify_sign(&sum, &spec.coeff_interval, Relation::Le)
            };
            if !cert.status.is_proved() {
                failure.get_or_insert_with(|| format!("prefix sum of block {bi} through index {k} is not nonpositive"));
            }
            // Summation by parts weighs S_k by t^k − t^(k+1) inside a block and the
            // block total by t^(hi−1); a strict S_k with a positive weight makes the sum strict.
            let weight_positive = (k == 0 || !zero_in) && (k == hi - 1 || !one_in);
            let is_strict = cert.relation == Relation::Lt && cert.status.is_proved();
            all_strict &= is_strict;
            if is_strict && weight_positive && strict_at.is_none() {
                strict_at = Some(k);
            }
            statuses.push(cert.status);
            prefixes.push(PrefixRecord { block: bi, through: k, sum: sum.clone(), certificate: cert });
        }
        // From the constant term the weights sum to 1, so all-strict prefixes suffice.
        if lo == 0 && all_strict && strict_block.is_none() {
            strict_block = Some(bi);
        }
        last_sums.push((hi - 1, sum));
    }

    let mut strictness = match (strict_block, strict_at) {
        (Some(_), _) => Some("first block starts at the constant term with strict prefixes".to_string()),
        (None, Some(k)) => Some(format!("prefix sum through index {k} is strictly negative with a positive weight")),
        (None, None) => None,
    };

    let mut dominating = None;
    if let Some(tf) = spec.tail_from {
        let t = MultiPoly::var(&spec.power_var);
        let mut d = MultiPoly::zero();
        for (k, s) in &last_sums {
            d = &d + &(&s.to_multi() * &t.pow(*k as u32));
        }
        for (i, ai) in a.iter().enumerate().skip(tf) {
            d = &d + &(&ai.to_multi() * &t.pow(i as u32));
        }
        let region = BoxRegion::new(vec![
            (spec.coeff_var.as_str(), spec.coeff_interval.clone()),
            (spec.power_var.as_str(), spec.power_interval.clone()),
        ]);
        let rel = if spec.strict && strictness.is_none() { Relation::Lt } else { Relation::Le };
        let bound = certify_box_bound(&d, &region, rel, &Rational::zero(), budget)?;
        if bound.status.is_proved() && rel == Relation::Lt {
            strictness = Some("dominating polynomial is strictly negative".to_string());
        }
        if !bound.status.is_proved() {
            failure.get_or_insert_with(|| format!("dominating polynomial {d} is not certified {rel} 0"));
        }
        statuses.push(bound.status);
        dominating = Some(bound);
    }

    if spec.strict && strictness.is_none() {
        statuses.push(Status::Inconclusive);
        failure.get_or_insert_with(|| "strict inequality not established".into());
    }

    Ok(ChainCertificate {
        spec: spec.clone(),
        identity,
        folds,
        prefixes,
        dominating,
        strictness,
        failure,
        status: Status::all(statuses),
    })
}

impl ChainCertificate {
    pub fn replay(&self) -> Result<Status> {
        for p in &self.prefixes {
            p.certificate.replay()?;
        }
        for f in &self.folds {
            f.nonnegative.replay()?;
        }
        if let Some(d) = &self.dominating {
            d.replay()?;
        }
        let budget = self.dominating.as_ref().map_or(super::DEFAULT_DEPTH_BUDGET, |d| d.budget);
        if certify_via_cofactor_chain(&self.spec, budget)? != *self {
            return Err(Error::Replay("cofactor chain does not reproduce".into()));
        }
        Ok(self.status)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn u(s: &str) -> UniPoly {
        UniPoly::parse(s, "x").unwrap()
    }

    fn spec(coeffs: Vec<UniPoly>, blocks: Vec<(usize, usize)>) -> ChainSpec {
        let mut target = MultiPoly::zero();
        for (i, a) in coeffs.iter().enumerate() {
            target = &target + &(&a.to_multi() * &MultiPoly::var("c").pow(i as u32));
        }
        ChainSpec {
            power_var: "c".into(),
            power_interval: Interval::unit(),
            coeff_var: "x".into(),
            coeff_interval: Interval::unit(),
            coeffs,
            folds: vec![],
            blocks,
            tail_from: None,
            strict: true,
            target,
        }
    }

    #[test]
    fn prefix_pattern_proves_and_shuffle_refutes() {
        // −1 − x, 1, −x: prefixes −1−x, −x, −2x... with last two ≤ 0
        let coeffs = vec![u("-1 - x"), u("1"), u("-x")];
        let c = certify_via_cofactor_chain(&spec(coeffs.clone(), vec![(0, 3)]), 8).unwrap();
        assert_eq!(c.status, Status::Inconclusive, "{:?}", c.failure);
        let c = certify_via_cofactor_chain(&spec(vec![u("-1 - x"), u("1/2"), u("-x")], vec![(0, 3)]), 8).unwrap();
        assert_eq!(c.status, Status::Proved, "{:?}", c.failure);
        assert_eq!(c.replay().unwrap(), Status::Proved);
        let shuffled = certify_via_cofactor_chain(&spec(vec![u("1/2"), u("-1 - x"), u("-x")], vec![(0, 3)]), 8).unwrap();
        assert_eq!(shuffled.status, Status::Refuted);
        assert!(shuffled.failure.unwrap().contains("through index 0"));
    }

    #[test]
    fn fold_and_tail() {
        // −2 + c + c^2·x on c ∈ [0,1/2]: fold the x c^2 term down with cap 1/2.
        let mut s = spec(vec![u("-2"), u("1"), u("x")], vec![(0, 2)]);
        s.power_interval = Interval::of(0, 1, 1, 2);
        s.folds = vec![Fold { index: 2, cap: rat(1, 2) }];
        let c = certify_via_cofactor_chain(&s, 8).unwrap();
        assert_eq!(c.status, Status::Proved, "{:?}", c.failure);
        // same claim through a tail instead
        let mut s = spec(vec![u("-2"), u("1"), u("x")], vec![(0, 1)]);
        s.power_interval = Interval::of(0, 1, 1, 2);
        s.tail_from = Some(1);
        let c = certify_via_cofactor_chain(&s, 8).unwrap();
        assert_eq!(c.status, Status::Proved, "{:?}", c.failure);
        assert!(c.dominating.is_some());
        assert_eq!(c.replay().unwrap(), Status::Proved);
    }

    #[test]
    fn strict_first_prefix_needs_power_below_one() {
        // −1 + (1 − x)·c: the block total −x vanishes at x = 0, so strictness rests on −1 and 1 − c.
        let mut s = spec(vec![u("-1"), u("1 - x")], vec![(0, 2)]);
        let closed = certify_via_cofactor_chain(&s, 8).unwrap();
        assert_eq!(closed.status, Status::Inconclusive);
        s.power_interval = Interval::of(0, 1, 1, 2);
        let below = certify_via_cofactor_chain(&s, 8).unwrap();
        assert_eq!(below.status, Status::Proved, "{:?}", below.failure);
        assert!(below.strictness.unwrap().contains("index 0"));
    }
}
