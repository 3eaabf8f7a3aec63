use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{int, rat, GaussianRational, Rational};
use crate::cert::Status;
use crate::error::{Error, Result};
use crate::maps::{
    caratheodory_to_ozaki, h31_inverse_closed_form, h31_via_pipeline, sample_caratheodory, sample_lz_params,
    seq_from_atoms, theta_dominates_h31, CaratheodorySeq, Dominance,
};
use crate::series::{hankel_det, HankelSpec, PowerSeries};

/// The extremal function `z/√(1 − z²)` and its inverse determinant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SharpnessReport {
    /// `a_2..a_5` from the binomial series.
    #[serde(with = "crate::arith::serde_rational::vec")]
    pub a: Vec<Rational>,
    /// `t_2..t_5` of the inverse.
    #[serde(with = "crate::arith::serde_rational::vec")]
    pub t: Vec<Rational>,
    #[serde(with = "crate::arith::serde_rational")]
    pub h31: Rational,
    #[serde(with = "crate::arith::serde_rational")]
    pub bound: Rational,
    /// `c_1..c_4` of `(1 + z²)/(1 − z²)`, whose Ozaki image must be the same function.
    #[serde(with = "crate::arith::serde_rational::vec")]
    pub caratheodory: Vec<Rational>,
    pub via_caratheodory: bool,
    /// `1 + z f''(z)/f'(z)` at `z = 0`; membership needs it above `−1/2`.
    #[serde(with = "crate::arith::serde_rational")]
    pub center_value: Rational,
    pub status: Status,
}

/// Coefficients of `z(1 − z²)^(−1/2)` through `z^n`: `a_{2k+1} = C(2k,k)/4^k`
/// from the generalized binomial series.
pub fn extremal_coefficients(n: usize) -> PowerSeries<Rational> {
    let mut coeffs = vec![int(0); n + 1];
    let mut b = int(1);
    let mut k = 0i64;
    while (2 * k + 1) as usize <= n {
        coeffs[(2 * k + 1) as usize] = b.clone();
        k += 1;
        b = b * rat(2 * k - 1, 2 * k);
    }
    PowerSeries::new(coeffs)
}

pub fn verify_sharpness() -> Result<SharpnessReport> {
    let f = extremal_coefficients(5);
    let inv = f.revert()?;
    let h31 = hankel_det(inv.a(), HankelSpec::new(3, 1)?)?;
    let bound = rat(1, 16);
    let c = vec![int(0), int(2), int(0), int(2)];
    let via_caratheodory = caratheodory_to_ozaki(&c, 5)? == f;
    // f'(0) = 1 and z·f''(z) vanishes at the centre.
    let center_value = int(1);
    let ok = h31.abs() == bound && via_caratheodory && center_value > rat(-1, 2);
    Ok(SharpnessReport {
        a: f.a()[1..].to_vec(),
        t: inv.a()[1..].to_vec(),
        h31,
        bound,
        caratheodory: c,
        via_caratheodory,
        center_value,
        status: if ok { Status::Proved } else { Status::Refuted },
    })
}

impl SharpnessReport {
    pub fn replay(&self) -> Result<Status> {
        let fresh = verify_sharpness()?;
        if fresh != *self {
            return Err(Error::Replay("sharpness report does not reproduce".into()));
        }
        Ok(fresh.status)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SampleKind {
    /// `c_t ≡ 2`, a single atom at `ε = 1`.
    ConstantProbe,
    /// Atoms `±1` with weight `1/2`: the extremal function.
    ExtremalProbe,
    Random,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSample {
    pub index: usize,
    pub kind: SampleKind,
    pub seed: u64,
    pub atoms: usize,
    pub c: CaratheodorySeq,
    pub h31: GaussianRational,
    #[serde(with = "crate::arith::serde_rational")]
    pub mod_sq: Rational,
    pub pipeline_ok: bool,
    pub bound_ok: bool,
}

/// Result of an empirical scan over seeded samples.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanReport {
    pub count: usize,
    pub seed: u64,
    /// `(1/16)²`.
    #[serde(with = "crate::arith::serde_rational")]
    pub bound_sq: Rational,
    #[serde(with = "crate::arith::serde_rational")]
    pub max_mod_sq: Rational,
    pub argmax: ScanSample,
    pub within_bound: usize,
    pub pipeline_ok: usize,
    /// Parameter samples for which `5120²·|H|² ≤ ϑ(c, |μ|, |ρ|)²` was checked.
    pub dominance_checked: usize,
    pub dominance_holds: usize,
    pub failures: Vec<ScanSample>,
    pub status: Status,
}

fn evaluate(index: usize, kind: SampleKind, seed: u64, atoms: usize, c: CaratheodorySeq) -> Result<ScanSample> {
    let h31 = h31_inverse_closed_form(c.coeffs())?;
    let pipeline_ok = h31_via_pipeline(c.coeffs())? == h31;
    let mod_sq = h31.mod_sq();
    let bound_ok = mod_sq <= rat(1, 256);
    Ok(ScanSample { index, kind, seed, atoms, c, h31, mod_sq, pipeline_ok, bound_ok })
}

fn sample(index: usize, seed: u64, atoms: usize) -> Result<ScanSample> {
    let one = GaussianRational::real(int(1));
    match index {
        0 => evaluate(index, SampleKind::ConstantProbe, seed, 1, seq_from_atoms(&[(int(1), one)])?),
        1 => {
            let minus = GaussianRational::real(int(-1));
            let c = seq_from_atoms(&[(rat(1, 2), one), (rat(1, 2), minus)])?;
            evaluate(index, SampleKind::ExtremalProbe, seed, 2, c)
        }
        _ => evaluate(index, SampleKind::Random, seed, atoms, sample_caratheodory(seed, atoms)?),
    }
}

/// Sample `count` Carathéodory sequences (two fixed probes first, then seeded
/// random ones with 1–4 atoms), check `|H|² ≤ 1/256` and the pipeline identity
/// for each, and check the majorant on as many random parameter samples.
pub fn empirical_scan(count: usize, seed: u64) -> Result<ScanReport> {
    if count == 0 {
        return Err(Error::usage("scan needs at least one sample"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let plan: Vec<(u64, usize)> = (0..count).map(|_| (rng.gen::<u64>(), rng.gen_range(1..=4usize))).collect();
    let samples: Vec<ScanSample> =
        plan.par_iter().enumerate().map(|(i, &(s, k))| sample(i, s, k)).collect::<Result<_>>()?;
    let verdicts: Vec<Dominance> = plan
        .par_iter()
        .map(|&(s, _)| Ok(theta_dominates_h31(&sample_lz_params(s)?)?.verdict))
        .collect::<Result<_>>()?;

    let argmax = samples.iter().max_by(|a, b| a.mod_sq.cmp(&b.mod_sq).then(b.index.cmp(&a.index))).expect("count ≥ 1").clone();
    let failures: Vec<ScanSample> = samples.iter().filter(|s| !s.bound_ok || !s.pipeline_ok).cloned().collect();
    let dominance_holds = verdicts.iter().filter(|v| **v == Dominance::Holds).count();
    let status = if !failures.is_empty() || verdicts.contains(&Dominance::Violated) {
        Status::Refuted
    } else if dominance_holds < count {
        Status::Inconclusive
    } else {
        Status::Proved
    };
    Ok(ScanReport {
        count,
        seed,
        bound_sq: rat(1, 256),
        max_mod_sq: argmax.mod_sq.clone(),
        within_bound: samples.iter().filter(|s| s.bound_ok).count(),
        pipeline_ok: samples.iter().filter(|s| s.pipeline_ok).count(),
        argmax,
        dominance_checked: count,
        dominance_holds,
        failures,
        status,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Central binomial oracle for `z(1 − z²)^(−1/2)`.
    fn central(k: u64) -> Rational {
        let mut num = 1u64;
        for j in 0..k {
            num = num * (2 * k - j) / (j + 1);
        }
        Rational::new(num.into(), 4u64.pow(k as u32).into())
    }

    #[test]
    fn extremal_function() {
        let f = extremal_coefficients(9);
        for k in 0..=4u64 {
            assert_eq!(f.coeff(2 * k as usize + 1), &central(k));
            if k > 0 {
                assert_eq!(f.coeff(2 * k as usize), &int(0));
            }
        }
        let r = verify_sharpness().unwrap();
        assert_eq!(r.a, vec![int(0), rat(1, 2), int(0), rat(3, 8)]);
        assert_eq!(r.t, vec![int(0), rat(-1, 2), int(0), rat(3, 8)]);
        assert_eq!(r.h31, rat(-1, 16));
        assert_eq!(r.status, Status::Proved);
        assert_eq!(r.replay().unwrap(), Status::Proved);
    }

    #[test]
    fn scan_probes_and_rejects_empty() {
        assert!(empirical_scan(0, 1).is_err());
        let one = empirical_scan(1, 7).unwrap();
        assert_eq!(one.argmax.kind, SampleKind::ConstantProbe);
        assert!(one.argmax.c.coeffs().iter().all(|c| *c == GaussianRational::real(int(2))));
        assert_eq!(one.max_mod_sq, rat(1, 64 * 64));
        let few = empirical_scan(40, 7).unwrap();
        assert_eq!(few.max_mod_sq, rat(1, 256));
        assert_eq!(few.argmax.kind, SampleKind::ExtremalProbe);
        assert_eq!(few.status, Status::Proved);
        assert_eq!(few, empirical_scan(40, 7).unwrap());
    }
}
