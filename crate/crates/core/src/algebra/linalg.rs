//! Integer determinants and polynomial interpolation.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{HalfLaurent, Rational, Var};

/// Fraction-free Bareiss determinant of a square integer matrix.
pub fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * m[n - 1][n - 1].clone()
}

/// Determinant over the rationals by Gaussian elimination.
pub fn rational_det(mut m: Vec<Vec<Rational>>) -> Rational {
    let n = m.len();
    let mut det = Rational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return Rational::zero();
        };
        if p != k {
            m.swap(p, k);
            det = -det;
        }
        let pivot = m[k][k].clone();
        det *= &pivot;
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let f = &m[i][k] / &pivot;
            for j in k..n {
                let v = &f * &m[k][j];
                m[i][j] -= v;
            }
        }
    }
    det
}

/// Unique polynomial of degree `< points.len()` through the given points (Newton form).
pub fn interpolate(var: Var, points: &[(Rational, Rational)]) -> HalfLaurent {
    let n = points.len();
    let xs: Vec<Rational> = points.iter().map(|p| p.0.clone()).collect();
    let mut dd: Vec<Rational> = points.iter().map(|p| p.1.clone()).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    // Horner on the Newton basis
    let mut acc = HalfLaurent::zero(var);
    for i in (0..n).rev() {
        let lin = {
            let mut l = HalfLaurent::var_pow(var, 1);
            l.add_term(0, -xs[i].clone());
            l
        };
        acc = &(&acc * &lin) + &HalfLaurent::constant(var, dd[i].clone());
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::int;

    #[test]
    fn bareiss_matches_gauss() {
        let m = [vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]];
        let bi: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let ra: Vec<Vec<Rational>> = m.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        assert_eq!(bareiss_det(bi), BigInt::from(4));
        assert_eq!(rational_det(ra), int(4));
    }

    #[test]
    fn interpolation_recovers_cubic() {
        let p = HalfLaurent::from_coeffs(Var::T, &[0, 2, -3, 1]);
        let pts: Vec<_> = (0..4).map(|x| (int(x), p.eval_int(x).unwrap())).collect();
        assert_eq!(interpolate(Var::T, &pts), p);
    }
}
