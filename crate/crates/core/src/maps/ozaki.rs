use crate::arith::{Coefficient, Rational};
use crate::error::{Error, Result};
use crate::series::{hankel_det, HankelSpec, PowerSeries};

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Coefficients of the normalized `f` with `1 + z f''/f' = (3p − 1)/2`, where
/// `p = 1 + Σ c_t z^t`; returns `f` through `z^n`.
///
/// Solved from `f'' = q·f'` with `q = (3/2)(p − 1)/z` by matching
/// `z^k`: `(k+2)(k+1)·a_{k+2} = Σ_j q_j (k−j+1) a_{k−j+1}`.
pub fn caratheodory_to_ozaki<T: Coefficient>(c: &[T], n: usize) -> Result<PowerSeries<T>> {
    if n < 1 || c.len() + 1 < n {
        return Err(Error::usage(format!("order {n} needs c_1..c_{}, got {}", n.saturating_sub(1), c.len())));
    }
    let qs: Vec<T> = c.iter().map(|ct| ct.scaled(&q(3, 2))).collect();
    let mut a = vec![T::zero_elem(); n + 1];
    a[1] = T::one_elem();
    for k in 0..n.saturating_sub(1) {
        let mut s = T::zero_elem();
        for j in 0..=k {
            let m = k - j + 1;
            s = s.plus(&qs[j].times(&a[m]).scaled(&Rational::from_integer((m as i64).into())));
        }
        let denom = ((k + 2) * (k + 1)) as i64;
        a[k + 2] = s.scaled(&q(1, denom));
    }
    Ok(PowerSeries::new(a))
}

/// The same coefficients through `f' = exp(∫ q)`; used as an independent check.
pub fn caratheodory_to_ozaki_exp<T: Coefficient>(c: &[T], n: usize) -> Result<PowerSeries<T>> {
    if n < 1 || c.len() + 1 < n {
        return Err(Error::usage(format!("order {n} needs c_1..c_{}", n.saturating_sub(1))));
    }
    if n == 1 {
        return Ok(PowerSeries::identity(1));
    }
    // q as a series through z^{n−2}, so ∫q reaches z^{n−1}.
    let mut qc = vec![T::zero_elem(); n - 1];
    for (j, slot) in qc.iter_mut().enumerate() {
        *slot = c[j].scaled(&q(3, 2));
    }
    let fprime = PowerSeries::new(qc).integrate().exp()?;
    Ok(fprime.integrate().truncate(n))
}

/// `H_{3,1}(f⁻¹)` in terms of `c_1..c_4`:
/// `(27c₁⁶ − 108c₁⁴c₂ + 36c₁³c₃ + 117c₁²c₂² − 88c₂³ + 72c₁c₂c₃ − 72c₁²c₄ − 80c₃² + 96c₂c₄)/5120`.
pub fn h31_inverse_closed_form<T: Coefficient>(c: &[T]) -> Result<T> {
    if c.len() < 4 {
        return Err(Error::usage("H_{3,1} of the inverse needs c_1..c_4"));
    }
    let (c1, c2, c3, c4) = (&c[0], &c[1], &c[2], &c[3]);
    let terms: [(i64, T); 9] = [
        (27, c1.pow(6)),
        (-108, c1.pow(4).times(c2)),
        (36, c1.pow(3).times(c3)),
        (117, c1.pow(2).times(&c2.pow(2))),
        (-88, c2.pow(3)),
        (72, c1.times(c2).times(c3)),
        (-72, c1.pow(2).times(c4)),
        (-80, c3.pow(2)),
        (96, c2.times(c4)),
    ];
    let mut acc = T::zero_elem();
    for (k, t) in terms {
        acc = acc.plus(&t.scaled(&Rational::from_integer(k.into())));
    }
    Ok(acc.scaled(&q(1, 5120)))
}

/// Coefficients `t_2..t_5` of `f⁻¹` in terms of `c_1..c_4`.
pub fn inverse_coefficients_closed_form<T: Coefficient>(c: &[T]) -> Result<[T; 4]> {
    if c.len() < 4 {
        return Err(Error::usage("inverse coefficients need c_1..c_4"));
    }
    let (c1, c2, c3, c4) = (&c[0], &c[1], &c[2], &c[3]);
    let k = |n: i64| Rational::from_integer(n.into());
    let t2 = c1.scaled(&q(-3, 4));
    let t3 = c1.pow(2).scaled(&k(3)).minus(c2).scaled(&q(1, 4));
    let t4 = c1
        .pow(3)
        .scaled(&k(27))
        .minus(&c1.times(c2).scaled(&k(21)))
        .plus(&c3.scaled(&k(4)))
        .scaled(&q(-1, 32));
    let t5 = c4
        .scaled(&k(4))
        .minus(&c1.times(c3).scaled(&k(22)))
        .plus(&c1.pow(2).times(c2).scaled(&k(69)))
        .minus(&c2.pow(2).scaled(&k(7)))
        .minus(&c1.pow(4).scaled(&k(54)))
        .scaled(&q(-3, 160));
    Ok([t2, t3, t4, t5])
}

/// `H_{3,1}(f⁻¹)` computed through the series pipeline: Ozaki coefficients,
/// series reversion, Hankel determinant.
pub fn h31_via_pipeline<T: Coefficient>(c: &[T]) -> Result<T> {
    let f = caratheodory_to_ozaki(c, 5)?;
    let inv = f.revert()?;
    hankel_det(inv.a(), HankelSpec::new(3, 1)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat, GaussianRational};
    use crate::poly::MultiPoly;

    #[test]
    fn constant_and_koebe_like_data() {
        let zero = vec![int(0); 4];
        let f = caratheodory_to_ozaki(&zero, 5).unwrap();
        assert_eq!(f, PowerSeries::identity(5));
        assert_eq!(h31_inverse_closed_form(&zero).unwrap(), int(0));
        let two = vec![int(2); 4];
        let f = caratheodory_to_ozaki(&two, 5).unwrap();
        assert_eq!(f.a()[1], rat(3, 2));
        // Oracle: the nine monomials at c ≡ 2 sum to 1728 − 3456 + 576 + 1872
        // − 704 + 576 − 576 − 320 + 384 = 80.
        assert_eq!(h31_inverse_closed_form(&two).unwrap(), rat(80, 5120));
        assert_eq!(h31_via_pipeline(&two).unwrap(), rat(1, 64));
    }

    #[test]
    fn both_solution_paths_agree() {
        let c = vec![rat(1, 3), rat(-2, 7), rat(5, 4), rat(1, 9)];
        assert_eq!(caratheodory_to_ozaki(&c, 5).unwrap(), caratheodory_to_ozaki_exp(&c, 5).unwrap());
    }

    #[test]
    fn symbolic_pipeline_identity() {
        let c: Vec<MultiPoly> = ["c1", "c2", "c3", "c4"].iter().map(|v| MultiPoly::var(v)).collect();
        let inv = caratheodory_to_ozaki(&c, 5).unwrap().revert().unwrap();
        let t = inverse_coefficients_closed_form(&c).unwrap();
        assert_eq!(&inv.a()[1..5], &t[..]);
        assert_eq!(h31_via_pipeline(&c).unwrap(), h31_inverse_closed_form(&c).unwrap());
    }

    #[test]
    fn sharp_data() {
        let c: Vec<GaussianRational> = [0, 2, 0, 2].iter().map(|&k| GaussianRational::real(int(k))).collect();
        assert_eq!(h31_inverse_closed_form(&c).unwrap(), GaussianRational::real(rat(-1, 16)));
    }
}
