use num_traits::Zero;

use super::region::BoxRegion;
use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::poly::MultiPoly;

fn binomials(n: usize) -> Vec<Vec<Rational>> {
    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut row = vec![Rational::from_integer(1.into()); i + 1];
        for k in 1..i {
            row[k] = &rows[i - 1][k - 1] + &rows[i - 1][k];
        }
        rows.push(row);
    }
    rows
}

/// Bernstein coefficients of a polynomial on a box (tensor layout, last axis
/// fastest). Every value of the polynomial on the box lies between the least
/// and greatest coefficient, and corner coefficients are exact corner values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BernsteinPatch {
    degs: Vec<usize>,
    strides: Vec<usize>,
    coeffs: Vec<Rational>,
}

impl BernsteinPatch {
    /// Convert `p` on `region`; variables of `p` must be axes of the region.
    pub fn new(p: &MultiPoly, region: &BoxRegion) -> Result<BernsteinPatch> {
        for v in p.vars() {
            if region.axis(v).is_none() {
                return Err(Error::usage(format!("variable {v} is not an axis of the box")));
            }
        }
        let degs: Vec<usize> = region.vars().iter().map(|v| p.degree_in(v) as usize).collect();
        let strides = strides_of(&degs);
        let size = degs.iter().map(|d| d + 1).product();
        let mut coeffs = vec![Rational::zero(); size];
        let axis_of: Vec<usize> = p.vars().iter().map(|v| region.axis(v).unwrap()).collect();
        for (e, c) in p.terms() {
            let mut idx = 0;
            for (k, &a) in axis_of.iter().enumerate() {
                idx += e[k] as usize * strides[a];
            }
            coeffs[idx] += c;
        }
        let mut patch = BernsteinPatch { degs, strides, coeffs };
        for (axis, iv) in region.intervals().iter().enumerate() {
            patch.shift_axis(axis, &iv.lo, &iv.width());
        }
        for axis in 0..patch.degs.len() {
            patch.to_bernstein_axis(axis);
        }
        Ok(patch)
    }

    /// Apply `f` to every fiber along `axis`.
    fn map_fibers(&mut self, axis: usize, f: impl Fn(&[Rational]) -> Vec<Rational>) {
        let d = self.degs[axis];
        let stride = self.strides[axis];
        let n = self.coeffs.len();
        let block = stride * (d + 1);
        let mut fiber = Vec::with_capacity(d + 1);
        let mut base = 0;
        while base < n {
            for off in 0..stride {
                fiber.clear();
                for i in 0..=d {
                    fiber.push(self.coeffs[base + off + i * stride].clone());
                }
                let out = f(&fiber);
                for (i, v) in out.into_iter().enumerate() {
                    self.coeffs[base + off + i * stride] = v;
                }
            }
            base += block;
        }
    }

    /// Monomial coefficients in `x` → monomial coefficients in `u`, `x = l + w·u`.
    fn shift_axis(&mut self, axis: usize, l: &Rational, w: &Rational) {
        let d = self.degs[axis];
        if d == 0 {
            return;
        }
        let binom = binomials(d);
        let mut lp = vec![Rational::from_integer(1.into())];
        let mut wp = vec![Rational::from_integer(1.into())];
        for _ in 0..d {
            lp.push(lp.last().unwrap() * l);
            wp.push(wp.last().unwrap() * w);
        }
        self.map_fibers(axis, |a| {
            (0..=d)
                .map(|k| {
                    let mut s = Rational::zero();
                    for i in k..=d {
                        if !a[i].is_zero() {
                            s += &a[i] * &binom[i][k] * &lp[i - k];
                        }
                    }
                    s * &wp[k]
                })
                .collect()
        });
    }

    /// Monomial basis on `[0,1]` → Bernstein basis of the same degree.
    fn to_bernstein_axis(&mut self, axis: usize) {
        let d = self.degs[axis];
        if d == 0 {
            return;
        }
        let binom = binomials(d);
        self.map_fibers(axis, |a| {
            (0..=d)
                .map(|i| {
                    let mut s = Rational::zero();
                    for k in 0..=i {
                        if !a[k].is_zero() {
                            s += &a[k] * &binom[i][k] / &binom[d][k];
                        }
                    }
                    s
                })
                .collect()
        });
    }

    pub fn degs(&self) -> &[usize] {
        &self.degs
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn max(&self) -> Rational {
        self.coeffs.iter().max().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn min(&self) -> Rational {
        self.coeffs.iter().min().cloned().unwrap_or_else(Rational::zero)
    }

    /// Exact value at the box vertex selected by `bits`.
    pub fn corner(&self, bits: usize) -> &Rational {
        let idx: usize = (0..self.degs.len())
            .map(|j| if bits >> j & 1 == 1 { self.degs[j] * self.strides[j] } else { 0 })
            .sum();
        &self.coeffs[idx]
    }

    /// de Casteljau split of the box at the midpoint of `axis`.
    pub fn split(&self, axis: usize) -> (BernsteinPatch, BernsteinPatch) {
        let d = self.degs[axis];
        let mut left = self.clone();
        let mut right = self.clone();
        if d == 0 {
            return (left, right);
        }
        let two = Rational::from_integer(2.into());
        let halves = |fiber: &[Rational]| -> (Vec<Rational>, Vec<Rational>) {
            let mut work = fiber.to_vec();
            let mut l = vec![work[0].clone()];
            let mut r = vec![work[d].clone()];
            for level in 1..=d {
                for i in 0..=(d - level) {
                    work[i] = (&work[i] + &work[i + 1]) / &two;
                }
                l.push(work[0].clone());
                r.push(work[d - level].clone());
            }
            r.reverse();
            (l, r)
        };
        left.map_fibers(axis, |f| halves(f).0);
        right.map_fibers(axis, |f| halves(f).1);
        (left, right)
    }
}

fn strides_of(degs: &[usize]) -> Vec<usize> {
    let mut strides = vec![1; degs.len()];
    for j in (0..degs.len().saturating_sub(1)).rev() {
        strides[j] = strides[j + 1] * (degs[j + 1] + 1);
    }
    strides
}

/// Lower and upper Bernstein enclosure of `p` on the box.
pub fn bernstein_bounds(p: &MultiPoly, region: &BoxRegion) -> Result<(Rational, Rational)> {
    let patch = BernsteinPatch::new(p, region)?;
    Ok((patch.min(), patch.max()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat, Interval};

    fn unit(vars: &[&str]) -> BoxRegion {
        BoxRegion::new(vars.iter().map(|v| (*v, Interval::unit())).collect())
    }

    #[test]
    fn constant_and_quadratic() {
        let b = BoxRegion::new(vec![("x", Interval::of(-3, 1, 7, 2))]);
        assert_eq!(bernstein_bounds(&MultiPoly::int(320), &b).unwrap(), (int(320), int(320)));
        let p = MultiPoly::parse_sparse("x - x^2").unwrap();
        assert_eq!(bernstein_bounds(&p, &unit(&["x"])).unwrap(), (int(0), rat(1, 2)));
    }

    #[test]
    fn corners_are_exact_and_split_matches_fresh_conversion() {
        let p = MultiPoly::parse_sparse("3*c^3*x - 2*x^2 + c - 5/7").unwrap();
        let b = BoxRegion::new(vec![("c", Interval::of(1, 3, 2, 1)), ("x", Interval::of(0, 1, 1, 2))]);
        let patch = BernsteinPatch::new(&p, &b).unwrap();
        for bits in 0..4 {
            let v = b.vertex(bits);
            assert_eq!(patch.corner(bits), &p.eval(&[("c", v[0].clone()), ("x", v[1].clone())]).unwrap());
        }
        for axis in 0..2 {
            let (l, r) = patch.split(axis);
            let (bl, br) = b.bisect(axis);
            assert_eq!(l, BernsteinPatch::new(&p, &bl).unwrap());
            assert_eq!(r, BernsteinPatch::new(&p, &br).unwrap());
        }
    }

    #[test]
    fn degenerate_axis() {
        let p = MultiPoly::parse_sparse("c^2*x + y").unwrap();
        let b = BoxRegion::new(vec![
            ("c", Interval::point(int(2))),
            ("x", Interval::unit()),
            ("y", Interval::unit()),
        ]);
        assert_eq!(bernstein_bounds(&p, &b).unwrap(), (int(0), int(5)));
    }
}
