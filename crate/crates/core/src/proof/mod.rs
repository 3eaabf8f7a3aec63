//! The proof plan: identity checks, lemmas, boundary and interior cases, the
//! cover of `Ω` and sharpness, run as a DAG and assembled into one certificate.

mod cases;
mod cover;
mod identities;
mod lemmas;
mod polys;
mod sharpness;
mod step;

pub use cases::{case_dependencies, case_pieces, d_lower, d_split, prove_case_step, CASE_IDS};
pub use cover::{check_cover, CoverCheck, CoverPiece};
pub use identities::{closed_form_step, inverse_coefficients_step, parametrization_step, reversion_step, triangle_step};
pub use lemmas::{lemma_claim, lemma_polynomial, prove_lemma_for, LemmaClaim, LEMMA_IDS};
pub use polys::{
    a_break, b_break, d2_envelope, d2_envelope_displayed, d_linear, d_quadratic_factor, gamma, gamma_poly, nu, omega,
    phi, phi_gamma_bracket, phi_poly, psi, psi_poly,
};
pub use sharpness::{
    empirical_scan, extremal_coefficients, verify_sharpness, SampleKind, ScanReport, ScanSample, SharpnessReport,
};
pub use step::{Evidence, Part, PartRole, PointValue, StepCertificate, StepMethod};

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{int, rat, Rational};
use crate::cert::{Status, DEFAULT_DEPTH_BUDGET};
use crate::error::{Error, Result};
use crate::maps::theta_at;

/// Add `delta` to one coefficient of a lemma's polynomial (terms in canonical order).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Perturbation {
    pub step: String,
    pub term: usize,
    #[serde(with = "crate::arith::serde_rational")]
    pub delta: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofConfig {
    pub depth_budget: u32,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub perturbation: Option<Perturbation>,
    /// Lemma step whose claim is replaced by its negation.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invert: Option<String>,
}

impl Default for ProofConfig {
    fn default() -> Self {
        ProofConfig { depth_budget: DEFAULT_DEPTH_BUDGET, seed: 0, perturbation: None, invert: None }
    }
}

/// Accept `1.4` as well as `lemma-1.4`.
fn lemma_step_id(s: &str) -> Result<String> {
    let id = s.strip_prefix("lemma-").unwrap_or(s);
    if LEMMA_IDS.contains(&id) {
        Ok(format!("lemma-{id}"))
    } else {
        Err(Error::Usage(format!("{s:?} is not a lemma step; perturbation and inversion apply to lemma-1.2a .. lemma-1.8")))
    }
}

impl ProofConfig {
    fn normalized(&self) -> Result<ProofConfig> {
        let mut cfg = self.clone();
        if let Some(p) = &mut cfg.perturbation {
            p.step = lemma_step_id(&p.step)?;
        }
        if let Some(s) = &cfg.invert {
            cfg.invert = Some(lemma_step_id(s)?);
        }
        Ok(cfg)
    }
}

const IDENTITY_STEPS: [&str; 5] =
    ["identity-reversion", "identity-inverse-coefficients", "identity-closed-form", "identity-parametrization", "triangle-bound"];

/// Step ids in execution order; every dependency precedes its dependents.
pub fn plan() -> Vec<String> {
    let mut ids: Vec<String> = IDENTITY_STEPS.iter().map(|s| s.to_string()).collect();
    ids.extend(LEMMA_IDS.iter().map(|l| format!("lemma-{l}")));
    ids.extend(CASE_IDS.iter().map(|c| format!("case-{c}")));
    ids.push("cover-omega".into());
    ids.push("sharpness".into());
    ids
}

pub fn dependencies(step: &str) -> Vec<String> {
    if let Some(c) = step.strip_prefix("case-") {
        case_dependencies(c)
    } else if step == "cover-omega" {
        CASE_IDS.iter().map(|c| format!("case-{c}")).collect()
    } else {
        Vec::new()
    }
}

fn cover_omega() -> Result<StepCertificate> {
    let mut pieces = Vec::new();
    for c in CASE_IDS {
        if c == "D2" {
            continue;
        }
        let source = if c == "D1" { "case-D1 or case-D2".to_string() } else { format!("case-{c}") };
        for region in case_pieces(c)? {
            pieces.push(CoverPiece { source: source.clone(), region });
        }
    }
    let deps = dependencies("cover-omega");
    let deps: Vec<&str> = deps.iter().map(String::as_str).collect();
    let check = check_cover(&omega(), pieces)?;
    Ok(StepCertificate::new("cover-omega", StepMethod::Cover, "vertices, edges, faces and interior cover Omega")
        .region(omega())
        .depends(&deps)
        .part(Part::required("cover of Omega", Evidence::Cover { check }))
        .note("the interior is split by the sign of M(c,x): case D1 where M >= 0, case D2 where M <= 0")
        .finish())
}

fn sharpness_step() -> Result<StepCertificate> {
    let report = verify_sharpness()?;
    Ok(StepCertificate::new("sharpness", StepMethod::Sharpness, "z / sqrt(1 - z^2) attains |H31 of the inverse| = 1/16")
        .part(Part::required("extremal function", Evidence::Sharpness { report }))
        .finish())
}

fn lemma_step(lemma: &str, cfg: &ProofConfig) -> Result<StepCertificate> {
    let step_id = format!("lemma-{lemma}");
    let mut poly = lemma_polynomial(lemma)?;
    let mut note = None;
    if let Some(p) = cfg.perturbation.as_ref().filter(|p| p.step == step_id) {
        let name = poly.monomial_name(p.term);
        poly = poly
            .perturb_term(p.term, &p.delta)
            .ok_or_else(|| Error::Usage(format!("{step_id} has {} terms; term {} does not exist", poly.num_terms(), p.term)))?;
        note = Some(format!("coefficient of {} perturbed by {}", name.unwrap_or_default(), p.delta));
    }
    let invert = cfg.invert.as_deref() == Some(step_id.as_str());
    let step = prove_lemma_for(lemma, &poly, invert, cfg.depth_budget)?;
    Ok(match note {
        Some(n) => step.note(n),
        None => step,
    })
}

fn build_step(id: &str, cfg: &ProofConfig) -> Result<StepCertificate> {
    match id {
        "identity-reversion" => reversion_step(),
        "identity-inverse-coefficients" => inverse_coefficients_step(),
        "identity-closed-form" => closed_form_step(),
        "identity-parametrization" => parametrization_step(),
        "triangle-bound" => triangle_step(cfg.depth_budget),
        "cover-omega" => cover_omega(),
        "sharpness" => sharpness_step(),
        _ => {
            if let Some(l) = id.strip_prefix("lemma-") {
                lemma_step(l, cfg)
            } else if let Some(c) = id.strip_prefix("case-") {
                prove_case_step(c, cfg.depth_budget)
            } else {
                Err(Error::Usage(format!("unknown step {id:?}")))
            }
        }
    }
}

fn closure(targets: &[String]) -> Vec<String> {
    let mut wanted: Vec<String> = targets.to_vec();
    let mut k = 0;
    while k < wanted.len() {
        for d in dependencies(&wanted[k]) {
            if !wanted.contains(&d) {
                wanted.push(d);
            }
        }
        k += 1;
    }
    plan().into_iter().filter(|s| wanted.contains(s)).collect()
}

/// Fold each dependency's combined status into the step's own status, in plan order.
fn combine(steps: &mut [StepCertificate]) {
    let mut done: BTreeMap<String, Status> = BTreeMap::new();
    for s in steps.iter_mut() {
        let deps = s.depends_on.iter().map(|d| done.get(d).copied().unwrap_or(Status::Inconclusive));
        s.status = Status::all(std::iter::once(s.own_status).chain(deps));
        done.insert(s.id.clone(), s.status);
    }
}

/// Build the requested steps and everything they depend on; independent steps run in parallel.
pub fn run_steps(targets: &[String], cfg: &ProofConfig) -> Result<Vec<StepCertificate>> {
    let cfg = cfg.normalized()?;
    let all = plan();
    if let Some(bad) = targets.iter().find(|t| !all.contains(t)) {
        return Err(Error::Usage(format!("unknown step {bad:?}")));
    }
    let ids = closure(targets);
    let mut steps: Vec<StepCertificate> = ids.par_iter().map(|id| build_step(id, &cfg)).collect::<Result<_>>()?;
    combine(&mut steps);
    Ok(steps)
}

fn run_one(step: String, cfg: &ProofConfig) -> Result<StepCertificate> {
    let steps = run_steps(std::slice::from_ref(&step), cfg)?;
    Ok(steps.into_iter().find(|s| s.id == step).expect("target is in its own closure"))
}

/// Certify one lemma (`1.2a` .. `1.8`).
pub fn prove_lemma(id: &str, cfg: &ProofConfig) -> Result<StepCertificate> {
    if !LEMMA_IDS.contains(&id) {
        return Err(Error::Usage(format!("unknown lemma {id:?}; expected one of {}", LEMMA_IDS.join(", "))));
    }
    run_one(format!("lemma-{id}"), cfg)
}

/// Certify one case (`A`, `B.i` .. `B.viii`, `C.i` .. `C.vi`, `D1`, `D2`) with its dependencies.
pub fn prove_case(id: &str, cfg: &ProofConfig) -> Result<StepCertificate> {
    if !CASE_IDS.contains(&id) {
        return Err(Error::Usage(format!("unknown case {id:?}; expected one of {}", CASE_IDS.join(", "))));
    }
    run_one(format!("case-{id}"), cfg)
}

/// A point of `Ω` with its exact ϑ value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaPoint {
    #[serde(with = "crate::arith::serde_rational")]
    pub c: Rational,
    #[serde(with = "crate::arith::serde_rational")]
    pub x: Rational,
    #[serde(with = "crate::arith::serde_rational")]
    pub y: Rational,
    #[serde(with = "crate::arith::serde_rational")]
    pub value: Rational,
}

impl ThetaPoint {
    pub fn at(c: Rational, x: Rational, y: Rational) -> ThetaPoint {
        let value = theta_at(&c, &x, &y);
        ThetaPoint { c, x, y, value }
    }
}

fn attainment() -> Vec<ThetaPoint> {
    [(0, 0, 1), (0, 1, 0), (0, 1, 1)].iter().map(|&(c, x, y)| ThetaPoint::at(int(c), int(x), int(y))).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremCertificate {
    pub claim: String,
    #[serde(with = "crate::arith::serde_rational")]
    pub bound: Rational,
    #[serde(with = "crate::arith::serde_rational")]
    pub theta_max: Rational,
    pub steps: Vec<StepCertificate>,
    pub attainment: Vec<ThetaPoint>,
    pub config: ProofConfig,
    /// First step, in plan order, whose own evidence is not proved.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failed_at: Option<String>,
    pub status: Status,
}

const THEOREM_CLAIM: &str = "|H31(f^-1)| <= 1/16 for every Ozaki close-to-convex f, with equality for z / sqrt(1 - z^2)";

fn assemble(steps: Vec<StepCertificate>, config: ProofConfig) -> TheoremCertificate {
    let failed_at = steps.iter().find(|s| s.own_status != Status::Proved).map(|s| s.id.clone());
    let status = Status::all(steps.iter().map(|s| s.status));
    TheoremCertificate {
        claim: THEOREM_CLAIM.into(),
        bound: rat(1, 16),
        theta_max: int(320),
        steps,
        attainment: attainment(),
        config,
        failed_at,
        status,
    }
}

/// Run the whole plan.
pub fn prove_theorem(cfg: &ProofConfig) -> Result<TheoremCertificate> {
    let steps = run_steps(&plan(), cfg)?;
    Ok(assemble(steps, cfg.normalized()?))
}

impl TheoremCertificate {
    pub fn step(&self, id: &str) -> Option<&StepCertificate> {
        self.steps.iter().find(|s| s.id == id)
    }

    /// Replay every step from its stored evidence and recheck the assembly.
    pub fn replay(&self) -> Result<Status> {
        if self.bound != &self.theta_max / int(5120) {
            return Err(Error::Replay(format!("bound {} is not theta_max / 5120", self.bound)));
        }
        let ids: Vec<&str> = self.steps.iter().map(|s| s.id.as_str()).collect();
        let expected = plan();
        if ids != expected.iter().map(String::as_str).collect::<Vec<_>>() {
            return Err(Error::Replay("steps do not match the proof plan".into()));
        }
        let own: Vec<Status> = self.steps.par_iter().map(|s| s.replay()).collect::<Result<_>>()?;
        let mut fresh = self.steps.clone();
        for (s, o) in fresh.iter_mut().zip(own) {
            if s.depends_on != dependencies(&s.id) {
                return Err(Error::Replay(format!("{}: dependency list altered", s.id)));
            }
            s.own_status = o;
        }
        combine(&mut fresh);
        let rebuilt = assemble(fresh, self.config.clone());
        for (a, b) in rebuilt.steps.iter().zip(&self.steps) {
            if a.status != b.status {
                return Err(Error::Replay(format!("{}: recorded {} but dependencies give {}", a.id, b.status, a.status)));
            }
        }
        if rebuilt.attainment != self.attainment || self.attainment.iter().any(|p| p.value != self.theta_max) {
            return Err(Error::Replay("attainment points do not reach theta_max".into()));
        }
        if rebuilt.failed_at != self.failed_at || rebuilt.status != self.status {
            return Err(Error::Replay("theorem status does not follow from the steps".into()));
        }
        Ok(self.status)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn plan_orders_dependencies_first() {
        let ids = plan();
        for (k, id) in ids.iter().enumerate() {
            for d in dependencies(id) {
                let j = ids.iter().position(|s| *s == d).expect("dependency in plan");
                assert!(j < k, "{d} must precede {id}");
            }
        }
        assert_eq!(closure(&["case-D1".to_string()]).len(), 10);
    }

    #[test]
    fn config_rejects_non_lemma_targets() {
        let cfg = ProofConfig { invert: Some("case-A".into()), ..ProofConfig::default() };
        assert!(matches!(run_steps(&["case-A".into()], &cfg), Err(Error::Usage(_))));
        let cfg = ProofConfig { invert: Some("1.4".into()), ..ProofConfig::default() };
        assert_eq!(cfg.normalized().unwrap().invert.as_deref(), Some("lemma-1.4"));
    }
}
