use std::ops::{Add, Mul, Neg, Sub};

use crate::arith::{Coefficient, GaussianRational, Rational};
use crate::poly::MultiPoly;

/// Polynomial with complex values, stored as real and imaginary parts that
/// are real polynomials in real coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct GaussPoly {
    pub re: MultiPoly,
    pub im: MultiPoly,
}

impl GaussPoly {
    pub fn new(re: MultiPoly, im: MultiPoly) -> Self {
        GaussPoly { re, im }
    }

    pub fn real(re: MultiPoly) -> Self {
        GaussPoly { re, im: MultiPoly::zero() }
    }

    /// `re_var + i·im_var`.
    pub fn complex_var(re_var: &str, im_var: &str) -> Self {
        GaussPoly::new(MultiPoly::var(re_var), MultiPoly::var(im_var))
    }

    pub fn conj(&self) -> Self {
        GaussPoly::new(self.re.clone(), -&self.im)
    }

    pub fn mod_sq(&self) -> MultiPoly {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn eval(&self, point: &[(&str, Rational)]) -> crate::error::Result<GaussianRational> {
        Ok(GaussianRational::new(self.re.eval(point)?, self.im.eval(point)?))
    }
}

impl<'a> Add<&'a GaussPoly> for &'a GaussPoly {
    type Output = GaussPoly;
    fn add(self, o: &GaussPoly) -> GaussPoly {
        GaussPoly::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl<'a> Sub<&'a GaussPoly> for &'a GaussPoly {
    type Output = GaussPoly;
    fn sub(self, o: &GaussPoly) -> GaussPoly {
        GaussPoly::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl<'a> Mul<&'a GaussPoly> for &'a GaussPoly {
    type Output = GaussPoly;
    fn mul(self, o: &GaussPoly) -> GaussPoly {
        GaussPoly::new(
            &(&self.re * &o.re) - &(&self.im * &o.im),
            &(&self.re * &o.im) + &(&self.im * &o.re),
        )
    }
}

impl Neg for &GaussPoly {
    type Output = GaussPoly;
    fn neg(self) -> GaussPoly {
        GaussPoly::new(-&self.re, -&self.im)
    }
}

impl Coefficient for GaussPoly {
    fn zero_elem() -> Self {
        GaussPoly::default()
    }
    fn one_elem() -> Self {
        GaussPoly::real(MultiPoly::int(1))
    }
    fn is_zero_elem(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn from_rational(r: &Rational) -> Self {
        GaussPoly::real(MultiPoly::constant(r.clone()))
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn scaled(&self, r: &Rational) -> Self {
        GaussPoly::new(self.re.scale(r), self.im.scale(r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn modulus_of_product_is_product_of_moduli() {
        let z = GaussPoly::complex_var("a", "b");
        let w = GaussPoly::complex_var("u", "v");
        assert_eq!((&z * &w).mod_sq(), &z.mod_sq() * &w.mod_sq());
        let val = z.eval(&[("a", rat(3, 5)), ("b", rat(4, 5))]).unwrap();
        assert_eq!(val.mod_sq(), rat(1, 1));
    }
}
