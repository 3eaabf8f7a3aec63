//! Symbolic identity steps: series reversion, the Ozaki coefficient map, the
//! determinant closed form, its parametrized form and the term-wise majorant ϑ.

use super::polys::{cbox, nu, p};
use super::step::{Evidence, Part, StepCertificate, StepMethod};
use crate::arith::{int, Coefficient, Interval, Rational};
use crate::cert::{certify_claim, IdentityCheck, Relation};
use crate::error::Result;
use crate::maps::{
    caratheodory_to_ozaki, caratheodory_to_ozaki_exp, h31_inverse_closed_form, h31_parametrized, h31_via_pipeline,
    inverse_coefficients_closed_form, lz_expand_generic, theta_poly,
};
use crate::poly::{GaussPoly, MultiPoly};
use crate::series::{inverse_closed_form, PowerSeries};

fn vars(names: &[&str]) -> Vec<MultiPoly> {
    names.iter().map(|v| MultiPoly::var(v)).collect()
}

fn identity(name: &str, lhs: &MultiPoly, rhs: &MultiPoly) -> Part {
    Part::required(name, Evidence::Identity { check: IdentityCheck::between(lhs, rhs) })
}

/// `t_2..t_5` of the inverse series, symbolically in `a_2..a_5`.
pub fn reversion_step() -> Result<StepCertificate> {
    let a = vars(&["a2", "a3", "a4", "a5"]);
    let mut coeffs = vec![MultiPoly::int(1)];
    coeffs.extend(a.iter().cloned());
    let g = PowerSeries::from_a(coeffs).revert()?;
    let t = inverse_closed_form(&a)?;
    let mut step = StepCertificate::new(
        "identity-reversion",
        StepMethod::IdentityCheck,
        "series reversion of z + a2 z^2 + ... + a5 z^5 matches the closed forms of t2..t5",
    );
    for (k, closed) in t.iter().enumerate() {
        step = step.part(identity(&format!("t{}", k + 2), &g.coeffs()[k + 2], closed));
    }
    Ok(step.finish())
}

/// Inverse coefficients in terms of `c_1..c_4`, through the coefficient recursion.
pub fn inverse_coefficients_step() -> Result<StepCertificate> {
    let c = vars(&["c1", "c2", "c3", "c4"]);
    let f = caratheodory_to_ozaki(&c, 5)?;
    let f_exp = caratheodory_to_ozaki_exp(&c, 5)?;
    let g = f.revert()?;
    let t = inverse_coefficients_closed_form(&c)?;
    let mut step = StepCertificate::new(
        "identity-inverse-coefficients",
        StepMethod::IdentityCheck,
        "t2..t5 of the inverse of the Ozaki function with data c1..c4 match their closed forms",
    );
    for k in 0..=5 {
        step = step.part(identity(&format!("a{k} recursion = exponential form"), f.coeff(k), f_exp.coeff(k)));
    }
    for (k, closed) in t.iter().enumerate() {
        step = step.part(identity(&format!("t{}", k + 2), &g.coeffs()[k + 2], closed));
    }
    Ok(step.finish())
}

pub fn closed_form_step() -> Result<StepCertificate> {
    let c = vars(&["c1", "c2", "c3", "c4"]);
    let pipeline = h31_via_pipeline(&c)?;
    let closed = h31_inverse_closed_form(&c)?;
    Ok(StepCertificate::new(
        "identity-closed-form",
        StepMethod::IdentityCheck,
        "H31 of the inverse (reversion then Hankel determinant) equals the closed form in c1..c4",
    )
    .part(identity("H31", &pipeline, &closed))
    .finish())
}

fn complex_params() -> (GaussPoly, GaussPoly, GaussPoly, GaussPoly) {
    (
        GaussPoly::real(MultiPoly::var("c")),
        GaussPoly::complex_var("mu_re", "mu_im"),
        GaussPoly::complex_var("rho_re", "rho_im"),
        GaussPoly::complex_var("psi_re", "psi_im"),
    )
}

/// The closed form after substituting the parametrization of `c_2, c_3, c_4`
/// by `(c, μ, ρ, ψ)` equals the parametrized expression, for complex parameters.
pub fn parametrization_step() -> Result<StepCertificate> {
    let (c, mu, rho, psi) = complex_params();
    let seq = lz_expand_generic(&c, &mu, &rho, &psi);
    let via_seq = h31_inverse_closed_form(&seq)?;
    let direct = h31_parametrized(&c, &mu, &rho, &psi);
    Ok(StepCertificate::new(
        "identity-parametrization",
        StepMethod::IdentityCheck,
        "H31 of the inverse in terms of (c, mu, rho, psi) for complex mu, rho, psi",
    )
    .part(identity("real part", &via_seq.re, &direct.re))
    .part(identity("imaginary part", &via_seq.im, &direct.im))
    .finish())
}

/// Factor of a majorant term and its modulus bound in `x = |μ|`, `y = |ρ|`.
#[derive(Clone, Copy, Debug)]
enum Atom {
    Mu,
    MuBar,
    Rho,
    Psi,
    OneMinusMuSq,
    OneMinusRhoSq,
    FivePlusMuSq,
}

impl Atom {
    fn value(self, mu: &GaussPoly, rho: &GaussPoly, psi: &GaussPoly) -> GaussPoly {
        let real = |m: MultiPoly| GaussPoly::real(m);
        match self {
            Atom::Mu => mu.clone(),
            Atom::MuBar => mu.conj(),
            Atom::Rho => rho.clone(),
            Atom::Psi => psi.clone(),
            Atom::OneMinusMuSq => real(&MultiPoly::int(1) - &mu.mod_sq()),
            Atom::OneMinusRhoSq => real(&MultiPoly::int(1) - &rho.mod_sq()),
            Atom::FivePlusMuSq => real(&MultiPoly::int(5) + &mu.mod_sq()),
        }
    }

    /// Upper bound of the modulus, valid for `|μ|, |ρ|, |ψ| ≤ 1`.
    fn bound(self) -> MultiPoly {
        match self {
            Atom::Mu | Atom::MuBar => p("x"),
            Atom::Rho => p("y"),
            Atom::Psi => p("1"),
            Atom::OneMinusMuSq => p("1 - x^2"),
            Atom::OneMinusRhoSq => p("1 - y^2"),
            Atom::FivePlusMuSq => p("5 + x^2"),
        }
    }
}

/// `5120·H` as a sum of `coefficient(c)·Π atoms`.
fn majorant_terms() -> Vec<(MultiPoly, Vec<Atom>)> {
    use Atom::*;
    let nu = nu();
    let nu2 = nu.pow(2);
    let t = |s: &str, w: &MultiPoly| &p(s) * w;
    vec![
        (p("5/4*c^6"), vec![]),
        (t("-13/2*c^4", &nu), vec![Mu]),
        (t("-2*c^4", &nu), vec![Mu, Mu]),
        (t("37*c^2 - 37/4*c^4", &nu), vec![Mu, Mu]),
        (t("c^2", &nu2), vec![Mu, Mu, Mu, Mu]),
        (t("-(236/7 + 7*(c^2 - 18/7)^2)", &nu), vec![Mu, Mu, Mu]),
        (t("2*c", &nu2), vec![OneMinusMuSq, Mu, Rho]),
        (t("-4*c", &nu2), vec![OneMinusMuSq, Mu, Mu, Rho]),
        (t("4*c^3", &nu), vec![OneMinusMuSq, Rho]),
        (t("12*c^3", &nu), vec![OneMinusMuSq, Mu, Rho]),
        (t("12*c^2", &nu), vec![OneMinusMuSq, MuBar, Rho, Rho]),
        (t("-4", &nu2), vec![OneMinusMuSq, FivePlusMuSq, Rho, Rho]),
        (t("24", &nu2), vec![OneMinusMuSq, OneMinusRhoSq, Mu, Psi]),
        (t("-12*c^2", &nu), vec![OneMinusMuSq, OneMinusRhoSq, Psi]),
    ]
}

/// `5120·|H| ≤ ϑ(c, |μ|, |ρ|)` term by term: the terms sum to `5120·H`, each
/// coefficient has a fixed sign on `[0,2]`, and replacing every coefficient by
/// its absolute value and every atom by its modulus bound gives exactly ϑ.
pub fn triangle_step(budget: u32) -> Result<StepCertificate> {
    let (c, mu, rho, psi) = complex_params();
    let terms = majorant_terms();
    let region = cbox(Interval::of(0, 1, 2, 1));
    let mut step = StepCertificate::new(
        "triangle-bound",
        StepMethod::IdentityCheck,
        "5120 |H31| <= theta(c, |mu|, |rho|) for c in [0,2] and |mu|, |rho|, |psi| <= 1",
    )
    .region(&region);

    let mut sum = GaussPoly::real(MultiPoly::zero());
    let mut majorant = MultiPoly::zero();
    for (k, (coef, atoms)) in terms.iter().enumerate() {
        let mut term = GaussPoly::real(coef.clone());
        let mut bound = MultiPoly::int(1);
        for a in atoms {
            term = &term * &a.value(&mu, &rho, &psi);
            bound = &bound * &a.bound();
        }
        sum = &sum + &term;
        // The sign is read off at c = 1, where no coefficient vanishes, and then certified.
        let s = coef.eval(&[("c", int(1))])?;
        let (rel, abs_coef) = if s > Rational::from_integer(0.into()) {
            (Relation::Ge, coef.clone())
        } else {
            (Relation::Le, -coef)
        };
        let cert = certify_claim(coef, &region, rel, &int(0), budget)?;
        step = step.part(Part::required(&format!("T{k} coefficient sign"), Evidence::Claim { certificate: cert }));
        majorant = &majorant + &(&abs_coef * &bound);
    }
    let target = h31_parametrized(&c, &mu, &rho, &psi).scaled(&int(5120));
    Ok(step
        .part(identity("terms sum to 5120 H (real part)", &sum.re, &target.re))
        .part(identity("terms sum to 5120 H (imaginary part)", &sum.im, &target.im))
        .part(identity("bounded terms sum to theta", &majorant, &theta_poly()))
        .note("|mu^k| = x^k, |conj(mu)| = x, |rho| = y, |psi| <= 1")
        .note("|1 - |mu|^2| = 1 - x^2, |1 - |rho|^2| = 1 - y^2, |5 + |mu|^2| = 5 + x^2 since x, y <= 1")
        .finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cert::{Status, DEFAULT_DEPTH_BUDGET};

    #[test]
    fn identity_steps_hold() {
        for s in [reversion_step(), inverse_coefficients_step(), closed_form_step()] {
            let s = s.unwrap();
            assert_eq!(s.status, Status::Proved, "{}", s.id);
            assert_eq!(s.replay().unwrap(), Status::Proved);
        }
    }

    #[test]
    fn majorant_terms_rebuild_theta() {
        let s = triangle_step(DEFAULT_DEPTH_BUDGET).unwrap();
        assert_eq!(s.status, Status::Proved, "{:?}", s.parts.iter().map(|p| (&p.name, p.status)).collect::<Vec<_>>());
        assert_eq!(s.parts.len(), 17);
    }
}
