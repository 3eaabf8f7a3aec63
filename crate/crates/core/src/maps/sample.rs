use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::caratheodory::{CaratheodorySeq, LZParams};
use crate::arith::{GaussianRational, Rational};
use crate::error::{Error, Result};

/// The unimodular point `((q² − p²) + 2pq·i)/(p² + q²)`, i.e. `s = p/q` in
/// `((1 − s²) + 2s·i)/(1 + s²)`; `q = 0` gives `−1`.
pub fn pythagorean_unit(p: i64, q: i64) -> Result<GaussianRational> {
    if p == 0 && q == 0 {
        return Err(Error::domain("pythagorean point needs (p, q) ≠ (0, 0)"));
    }
    let (p, q) = (i128::from(p), i128::from(q));
    let d = p * p + q * q;
    Ok(GaussianRational::new(
        Rational::new((q * q - p * p).into(), d.into()),
        Rational::new((2 * p * q).into(), d.into()),
    ))
}

/// `c_t = 2·Σ λ_j ε_j^t`, `t = 1..4`, for weights `λ_j > 0` summing to 1 and unit `ε_j`.
pub fn seq_from_atoms(atoms: &[(Rational, GaussianRational)]) -> Result<CaratheodorySeq> {
    let zero = Rational::from_integer(0.into());
    let total: Rational = atoms.iter().map(|(l, _)| l.clone()).sum();
    if atoms.is_empty() || atoms.iter().any(|(l, _)| l <= &zero) || total != Rational::from_integer(1.into()) {
        return Err(Error::domain("atom weights must be positive and sum to 1"));
    }
    if atoms.iter().any(|(_, e)| e.mod_sq() != Rational::from_integer(1.into())) {
        return Err(Error::domain("atoms must lie on the unit circle"));
    }
    let two = Rational::from_integer(2.into());
    let mut c = Vec::with_capacity(4);
    let mut powers: Vec<GaussianRational> = atoms.iter().map(|(_, e)| e.clone()).collect();
    for _ in 0..4 {
        let mut s = GaussianRational::real(zero.clone());
        for ((l, _), pw) in atoms.iter().zip(&powers) {
            s = &s + &(pw * &GaussianRational::real(l * &two));
        }
        c.push(s);
        powers = powers.iter().zip(atoms).map(|(pw, (_, e))| pw * e).collect();
    }
    Ok(CaratheodorySeq::new(c))
}

/// A random Carathéodory sequence: a convex combination of `atoms` extreme
/// points with Pythagorean unimodular nodes, reproducible from `seed`.
pub fn sample_caratheodory(seed: u64, atoms: usize) -> Result<CaratheodorySeq> {
    if atoms == 0 {
        return Err(Error::usage("at least one atom is needed"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let weights: Vec<i64> = (0..atoms).map(|_| rng.gen_range(1..=64)).collect();
    let total: i64 = weights.iter().sum();
    let mut list = Vec::with_capacity(atoms);
    for w in weights {
        let (p, q) = loop {
            let p = rng.gen_range(-40..=40);
            let q = rng.gen_range(0..=40);
            if p != 0 || q != 0 {
                break (p, q);
            }
        };
        list.push((Rational::new(w.into(), total.into()), pythagorean_unit(p, q)?));
    }
    seq_from_atoms(&list)
}

fn random_disc_point(rng: &mut ChaCha8Rng) -> Result<GaussianRational> {
    let den = rng.gen_range(1..=32i64);
    let num = rng.gen_range(0..=den);
    let (p, q) = loop {
        let p = rng.gen_range(-20..=20);
        let q = rng.gen_range(0..=20);
        if p != 0 || q != 0 {
            break (p, q);
        }
    };
    let unit = pythagorean_unit(p, q)?;
    Ok(&unit * &GaussianRational::real(Rational::new(num.into(), den.into())))
}

/// Random parameters whose moduli `|μ|, |ρ|, |ψ|` are rational.
pub fn sample_lz_params(seed: u64) -> Result<LZParams> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let den = rng.gen_range(1..=64i64);
    let c1 = Rational::new(rng.gen_range(0..=2 * den).into(), den.into());
    let mu = random_disc_point(&mut rng)?;
    let rho = random_disc_point(&mut rng)?;
    let psi = random_disc_point(&mut rng)?;
    LZParams::new(c1, mu, rho, psi)
}

/// One line of an empirical scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub seed: u64,
    pub atoms: usize,
    pub c: Vec<GaussianRational>,
    pub h31: GaussianRational,
    pub bound_ok: bool,
}
