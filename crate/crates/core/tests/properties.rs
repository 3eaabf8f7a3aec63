//! Property tests against independent oracles: dense sampling for the sign and
//! box certifiers, the defining identities for series reversion, and the
//! series pipeline for the closed-form determinant.

use proptest::prelude::*;

use hankel_cert::arith::{GaussianRational, Interval, Rational};
use hankel_cert::cert::{certify_box_bound, certify_sign, BoxRegion, Relation, Status};
use hankel_cert::maps::{
    caratheodory_to_ozaki, caratheodory_to_ozaki_exp, h31_inverse_closed_form, h31_via_pipeline, lz_expand,
    sample_lz_params, theta_at, theta_dominates_h31, Dominance,
};
use hankel_cert::poly::{MultiPoly, UniPoly};
use hankel_cert::series::{inverse_closed_form, PowerSeries};

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn small_rational() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| q(n, d))
}

fn relation() -> impl Strategy<Value = Relation> {
    prop_oneof![Just(Relation::Le), Just(Relation::Lt), Just(Relation::Ge), Just(Relation::Gt)]
}

/// `k/n` for `k = 0..=n`.
fn grid(n: i64) -> Vec<Rational> {
    (0..=n).map(|k| q(k, n)).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn sign_certificate_agrees_with_sampling(
        coeffs in prop::collection::vec(-6i64..=6, 1..=5),
        roots in prop::collection::vec(0i64..=8, 0..=2),
        rel in relation(),
    ) {
        // Roots at multiples of 1/8 put sign changes and tangencies on the sample grid.
        let mut p = UniPoly::from_ints(&coeffs, "x");
        for r in &roots {
            p = &p * &UniPoly::new(vec![q(-*r, 8), q(1, 1)], "x");
        }
        let unit = Interval::unit();
        let cert = certify_sign(&p, &unit, rel);
        let violated = grid(400).iter().any(|x| !rel.holds(&p.eval(x), &q(0, 1)));
        prop_assert_ne!(cert.status, Status::Inconclusive);
        if violated {
            prop_assert_eq!(cert.status, Status::Refuted);
        }
        if cert.status == Status::Refuted {
            let x = cert.counterexample.clone().expect("refutations carry a point");
            prop_assert!(unit.contains(&x));
            prop_assert!(!rel.holds(&p.eval(&x), &q(0, 1)));
        }
    }

    #[test]
    fn box_bound_agrees_with_sampling(
        coeffs in prop::collection::vec(-4i64..=4, 6),
        offset in prop_oneof![Just(q(-1, 1)), Just(q(0, 1)), Just(q(1, 100)), Just(q(2, 1))],
    ) {
        let monos: [&[(&str, u32)]; 6] = [&[], &[("x", 1)], &[("y", 1)], &[("x", 2)], &[("x", 1), ("y", 1)], &[("y", 3)]];
        let p = MultiPoly::from_terms(coeffs.iter().zip(monos).map(|(&c, m)| (q(c, 1), m.to_vec())));
        let region = BoxRegion::new(vec![("x", Interval::unit()), ("y", Interval::unit())]);
        let pts: Vec<(Rational, Rational)> =
            grid(24).into_iter().flat_map(|x| grid(24).into_iter().map(move |y| (x.clone(), y))).collect();
        let value = |x: &Rational, y: &Rational| p.eval(&[("x", x.clone()), ("y", y.clone())]).unwrap();
        let sampled_max = pts.iter().map(|(x, y)| value(x, y)).max().unwrap();
        let bound = &sampled_max + &offset;
        let cert = certify_box_bound(&p, &region, Relation::Le, &bound, 16).unwrap();
        let violated = pts.iter().any(|(x, y)| value(x, y) > bound);
        if violated {
            prop_assert_ne!(cert.status, Status::Proved);
        }
        if cert.status == Status::Refuted {
            let pt = cert.counterexample.clone().expect("refutations carry a point");
            let at: Vec<(&str, Rational)> = pt.iter().map(|(n, r)| (n.as_str(), r.clone())).collect();
            prop_assert!(region.contains(&pt.iter().map(|(_, r)| r.clone()).collect::<Vec<_>>()));
            prop_assert!(p.eval(&at).unwrap() > bound);
        }
        prop_assert_eq!(cert.replay().unwrap(), cert.status);
    }

    #[test]
    fn reversion_inverts_composition(a in prop::collection::vec(small_rational(), 4)) {
        let mut coeffs = vec![q(1, 1)];
        coeffs.extend(a.iter().cloned());
        let f = PowerSeries::from_a(coeffs);
        let g = f.revert().unwrap();
        prop_assert_eq!(PowerSeries::compose(&f, &g).unwrap(), PowerSeries::identity(5));
        prop_assert_eq!(PowerSeries::compose(&g, &f).unwrap(), PowerSeries::identity(5));
        prop_assert_eq!(g.revert().unwrap(), f.clone());
        let t = inverse_closed_form(&a).unwrap();
        prop_assert_eq!(&g.a()[1..], &t[..]);
    }

    #[test]
    fn closed_form_matches_pipeline(
        re in prop::collection::vec(small_rational(), 4),
        im in prop::collection::vec(small_rational(), 4),
    ) {
        let c: Vec<GaussianRational> = re.into_iter().zip(im).map(|(r, i)| GaussianRational::new(r, i)).collect();
        prop_assert_eq!(h31_inverse_closed_form(&c).unwrap(), h31_via_pipeline(&c).unwrap());
        prop_assert_eq!(caratheodory_to_ozaki(&c, 5).unwrap(), caratheodory_to_ozaki_exp(&c, 5).unwrap());
    }

    #[test]
    fn sampled_parameters_respect_the_majorant(seed in any::<u64>()) {
        let p = sample_lz_params(seed).unwrap();
        prop_assert!(lz_expand(&p).unwrap().within_disc());
        let report = theta_dominates_h31(&p).unwrap();
        prop_assert_eq!(report.verdict, Dominance::Holds);
    }

    #[test]
    fn theta_stays_below_320_on_omega(c in 0i64..=16, x in 0i64..=16, y in 0i64..=16) {
        let v = theta_at(&q(c, 8), &q(x, 16), &q(y, 16));
        prop_assert!(v >= q(0, 1) && v <= q(320, 1));
    }
}
