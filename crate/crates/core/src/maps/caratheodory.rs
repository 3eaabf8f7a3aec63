use serde::{Deserialize, Serialize};

use crate::arith::{Coefficient, GaussianRational, Rational};
use crate::error::{Error, Result};
use crate::poly::{GaussPoly, MultiPoly};

/// Complex conjugation on a coefficient ring; identity on real rings.
pub trait Conjugate: Coefficient {
    fn conjugate(&self) -> Self;
}

impl Conjugate for Rational {
    fn conjugate(&self) -> Self {
        self.clone()
    }
}

impl Conjugate for MultiPoly {
    fn conjugate(&self) -> Self {
        self.clone()
    }
}

impl Conjugate for GaussianRational {
    fn conjugate(&self) -> Self {
        self.conj()
    }
}

impl Conjugate for GaussPoly {
    fn conjugate(&self) -> Self {
        self.conj()
    }
}

/// Coefficients `c_1..c_n` of `p(z) = 1 + Σ c_t z^t`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaratheodorySeq {
    pub c: Vec<GaussianRational>,
}

impl CaratheodorySeq {
    pub fn new(c: Vec<GaussianRational>) -> Self {
        CaratheodorySeq { c }
    }

    pub fn real(c: &[Rational]) -> Self {
        CaratheodorySeq { c: c.iter().cloned().map(GaussianRational::real).collect() }
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.c
    }

    /// `|c_t| ≤ 2` for every entry, the necessary condition for positive real part.
    pub fn within_disc(&self) -> bool {
        let four = Rational::from_integer(4.into());
        self.c.iter().all(|ct| ct.mod_sq() <= four)
    }
}

/// Parameters `c_1 ∈ [0,2]` and `μ, ρ, ψ` in the closed unit disc.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LZParams {
    #[serde(with = "crate::arith::serde_rational")]
    pub c1: Rational,
    pub mu: GaussianRational,
    pub rho: GaussianRational,
    pub psi: GaussianRational,
}

impl LZParams {
    pub fn new(c1: Rational, mu: GaussianRational, rho: GaussianRational, psi: GaussianRational) -> Result<Self> {
        let p = LZParams { c1, mu, rho, psi };
        p.validate()?;
        Ok(p)
    }

    pub fn nu(&self) -> Rational {
        Rational::from_integer(4.into()) - &self.c1 * &self.c1
    }

    pub fn validate(&self) -> Result<()> {
        let zero = Rational::from_integer(0.into());
        let one = Rational::from_integer(1.into());
        if self.c1 < zero || self.c1 > Rational::from_integer(2.into()) {
            return Err(Error::domain(format!("c1 = {} is outside [0,2]", self.c1)));
        }
        for (name, z) in [("mu", &self.mu), ("rho", &self.rho), ("psi", &self.psi)] {
            if z.mod_sq() > one {
                return Err(Error::domain(format!("|{name}| > 1 for {name} = {z}")));
            }
        }
        Ok(())
    }
}

/// `c_1..c_4` from the parametrization, over any ring with conjugation:
///
/// ```text
/// 2c₂ = c₁² + νμ
/// 4c₃ = c₁³ + 2c₁νμ − c₁νμ² + 2ν(1−|μ|²)ρ
/// 8c₄ = c₁⁴ + 3c₁²νμ + (4−3c₁²)νμ² + c₁²νμ³ + 4ν(1−|μ|²)(1−|ρ|²)ψ
///       + 4ν(1−|μ|²)(c₁ρ − c₁μρ − μ̄ρ²)
/// ```
/// with `ν = 4 − c₁²` and `c₁` real.
pub fn lz_expand_generic<T: Conjugate>(c1: &T, mu: &T, rho: &T, psi: &T) -> [T; 4] {
    let r = |n: i64| T::from_rational(&Rational::from_integer(n.into()));
    let c1_2 = c1.times(c1);
    let nu = r(4).minus(&c1_2);
    let mu_2 = mu.times(mu);
    let one_mu = r(1).minus(&mu.times(&mu.conjugate()));
    let one_rho = r(1).minus(&rho.times(&rho.conjugate()));
    let nu_mu = nu.times(mu);

    let c2 = c1_2.plus(&nu_mu).scaled(&Rational::new(1.into(), 2.into()));
    let c3 = c1_2
        .times(c1)
        .plus(&c1.times(&nu_mu).scaled(&Rational::from_integer(2.into())))
        .minus(&c1.times(&nu).times(&mu_2))
        .plus(&nu.times(&one_mu).times(rho).scaled(&Rational::from_integer(2.into())))
        .scaled(&Rational::new(1.into(), 4.into()));
    let tail = c1
        .times(rho)
        .minus(&c1.times(mu).times(rho))
        .minus(&mu.conjugate().times(rho).times(rho));
    let c4 = c1_2
        .times(&c1_2)
        .plus(&c1_2.times(&nu_mu).scaled(&Rational::from_integer(3.into())))
        .plus(&r(4).minus(&c1_2.scaled(&Rational::from_integer(3.into()))).times(&nu).times(&mu_2))
        .plus(&c1_2.times(&nu).times(&mu_2).times(mu))
        .plus(&nu.times(&one_mu).times(&one_rho).times(psi).scaled(&Rational::from_integer(4.into())))
        .plus(&nu.times(&one_mu).times(&tail).scaled(&Rational::from_integer(4.into())))
        .scaled(&Rational::new(1.into(), 8.into()));
    [c1.clone(), c2, c3, c4]
}

pub fn lz_expand(p: &LZParams) -> Result<CaratheodorySeq> {
    p.validate()?;
    let c = lz_expand_generic(&GaussianRational::real(p.c1.clone()), &p.mu, &p.rho, &p.psi);
    Ok(CaratheodorySeq::new(c.to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn g(re: i64) -> GaussianRational {
        GaussianRational::real(int(re))
    }

    #[test]
    fn boundary_cases() {
        let k = lz_expand(&LZParams::new(int(2), g(0), GaussianRational::i(), g(1)).unwrap()).unwrap();
        assert_eq!(k.c, vec![g(2), g(2), g(2), g(2)]);
        let m = lz_expand(&LZParams::new(int(0), g(1), GaussianRational::i(), g(-1)).unwrap()).unwrap();
        assert_eq!(m.c, vec![g(0), g(2), g(0), g(2)]);
        let s = lz_expand(&LZParams::new(int(0), g(0), g(0), g(1)).unwrap()).unwrap();
        assert_eq!(s.c, vec![g(0), g(0), g(0), g(2)]);
        assert!(LZParams::new(rat(5, 2), g(0), g(0), g(0)).is_err());
        assert!(LZParams::new(int(1), GaussianRational::new(int(1), rat(1, 10)), g(0), g(0)).is_err());
    }
}
