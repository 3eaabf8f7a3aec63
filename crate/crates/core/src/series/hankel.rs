use serde::{Deserialize, Serialize};

use crate::arith::Coefficient;
use crate::error::{Error, Result};

/// Size `r` and starting index `n` of a Hankel determinant `H_{r,n}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HankelSpec {
    pub r: usize,
    pub n: usize,
}

impl HankelSpec {
    pub fn new(r: usize, n: usize) -> Result<Self> {
        if r == 0 || n == 0 {
            return Err(Error::usage("Hankel size and start index must be positive"));
        }
        Ok(HankelSpec { r, n })
    }

    /// Largest coefficient index the determinant reads.
    pub fn max_index(&self) -> usize {
        self.n + 2 * self.r - 2
    }
}

/// `det [a_{n+i+j}]_{i,j=0}^{r-1}`, where `a[0]` holds `a_1`.
pub fn hankel_det<T: Coefficient>(a: &[T], spec: HankelSpec) -> Result<T> {
    if spec.r == 0 || spec.n == 0 {
        return Err(Error::usage("Hankel size and start index must be positive"));
    }
    if a.len() < spec.max_index() {
        return Err(Error::usage(format!(
            "H_{{{},{}}} needs a_1..a_{}, got {} coefficients",
            spec.r,
            spec.n,
            spec.max_index(),
            a.len()
        )));
    }
    let m: Vec<Vec<T>> = (0..spec.r)
        .map(|i| (0..spec.r).map(|j| a[spec.n - 1 + i + j].clone()).collect())
        .collect();
    Ok(det(&m))
}

/// Cofactor expansion along the first row; sizes here are tiny and the entries
/// may be symbolic, so no division is used.
fn det<T: Coefficient>(m: &[Vec<T>]) -> T {
    match m.len() {
        0 => T::one_elem(),
        1 => m[0][0].clone(),
        n => {
            let mut acc = T::zero_elem();
            for j in 0..n {
                if m[0][j].is_zero_elem() {
                    continue;
                }
                let minor: Vec<Vec<T>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, v)| v.clone()).collect())
                    .collect();
                let term = m[0][j].times(&det(&minor));
                acc = if j % 2 == 0 { acc.plus(&term) } else { acc.minus(&term) };
            }
            acc
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat, Rational};

    #[test]
    fn small_cases() {
        let a = [int(1), rat(2, 3), rat(5, 7)];
        // Fekete–Szegő functional a3 − a2²
        let h = hankel_det(&a, HankelSpec::new(2, 1).unwrap()).unwrap();
        assert_eq!(h, rat(5, 7) - rat(4, 9));
        let t = [int(1), int(0), rat(-1, 2), int(0), rat(3, 8)];
        assert_eq!(hankel_det(&t, HankelSpec::new(3, 1).unwrap()).unwrap(), rat(-1, 16));
        let z = [int(1), int(0), int(0), int(0), int(0)];
        assert_eq!(hankel_det(&z, HankelSpec::new(3, 1).unwrap()).unwrap(), int(0));
    }

    #[test]
    fn errors() {
        let a: Vec<Rational> = vec![int(1); 4];
        assert!(hankel_det(&a, HankelSpec { r: 3, n: 1 }).is_err());
        assert!(HankelSpec::new(0, 1).is_err());
    }
}
