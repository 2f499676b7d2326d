use std::collections::HashMap;
use std::fmt;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{AlgebraError, HalfLaurent, Rational};

static CYCLO_CACHE: Mutex<Option<HashMap<u64, Vec<BigInt>>>> = Mutex::new(None);

/// Integer coefficients of the `n`-th cyclotomic polynomial, ascending.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    assert!(n >= 1);
    {
        let guard = CYCLO_CACHE.lock().unwrap();
        if let Some(p) = guard.as_ref().and_then(|m| m.get(&n)) {
            return p.clone();
        }
    }
    // x^n - 1 divided by every Phi_d with d | n, d < n
    let mut num: Vec<BigInt> = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let div = cyclotomic_polynomial(d);
            num = exact_divide(&num, &div);
        }
    }
    let mut guard = CYCLO_CACHE.lock().unwrap();
    guard.get_or_insert_with(HashMap::new).insert(n, num.clone());
    num
}

/// Divide by a monic integer polynomial, asserting a zero remainder.
fn exact_divide(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    if rem.len() <= dd {
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = rem[i + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quot
}

/// Element of `ℚ(ζ_n)`, stored as its residue modulo `Φ_n` in the power basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CyclotomicElement {
    conductor: u64,
    coeffs: Vec<Rational>,
}

impl CyclotomicElement {
    pub fn zero(conductor: u64) -> Self {
        CyclotomicElement { conductor, coeffs: Vec::new() }
    }

    pub fn from_rational(conductor: u64, r: Rational) -> Self {
        Self::reduce(conductor, vec![r])
    }

    /// `ζ_n^j` for any integer `j`.
    pub fn root_power(conductor: u64, j: i64) -> Self {
        let e = j.rem_euclid(conductor as i64) as usize;
        let mut v = vec![Rational::zero(); e + 1];
        v[e] = Rational::one();
        Self::reduce(conductor, v)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Power-basis coefficients of the reduced residue.
    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The value as a rational, when it lies in `ℚ`.
    pub fn as_rational(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    fn reduce(conductor: u64, mut v: Vec<Rational>) -> Self {
        let phi = cyclotomic_polynomial(conductor);
        let d = phi.len() - 1;
        while v.len() > d {
            let top = v.pop().unwrap();
            if !top.is_zero() {
                let shift = v.len() - d;
                for (j, pj) in phi.iter().enumerate().take(d) {
                    v[shift + j] -= &top * Rational::from_integer(pj.clone());
                }
            }
        }
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        CyclotomicElement { conductor, coeffs: v }
    }

    fn check(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.conductor != other.conductor {
            return Err(AlgebraError::ConductorMismatch(self.conductor, other.conductor));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut v = vec![Rational::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            v[i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            v[i] += c;
        }
        Ok(Self::reduce(self.conductor, v))
    }

    pub fn neg(&self) -> Self {
        CyclotomicElement { conductor: self.conductor, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.conductor));
        }
        let mut v = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Ok(Self::reduce(self.conductor, v))
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::from_rational(self.conductor, Rational::one());
        for _ in 0..n {
            acc = acc.mul(self).expect("same conductor");
        }
        acc
    }
}

impl fmt::Display for CyclotomicElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => format!("{}", c),
                1 => format!("({})*z{}", c, self.conductor),
                _ => format!("({})*z{}^{}", c, self.conductor, i),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Evaluate at `var = ζ_n^j` for any integer `j`, inside `ℚ(ζ_n)`.
///
/// A half exponent `h/2` maps to `ζ_n^{j h / 2}`, which requires `j` even.
pub fn eval_at_root_power(p: &HalfLaurent, conductor: u64, j: i64) -> Result<CyclotomicElement, AlgebraError> {
    if conductor == 0 {
        return Err(AlgebraError::InvalidConductor(conductor));
    }
    let n = conductor as i64;
    let mut v = vec![Rational::zero(); conductor as usize];
    for (half, c) in p.terms() {
        let num = j * half;
        if num % 2 != 0 {
            return Err(AlgebraError::HalfExponent);
        }
        let e = (num / 2).rem_euclid(n) as usize;
        v[e] += c;
    }
    Ok(CyclotomicElement::reduce(conductor, v))
}

/// Evaluate at the primitive root `ζ_n^k` (`gcd(k, n) = 1`).
///
/// Half exponents move the computation to conductor `2n` with `q^{1/2} = ζ_{2n}^k`.
pub fn eval_cyclotomic(p: &HalfLaurent, conductor: u64, k: i64) -> Result<CyclotomicElement, AlgebraError> {
    if conductor == 0 {
        return Err(AlgebraError::InvalidConductor(conductor));
    }
    if k.gcd(&(conductor as i64)) != 1 {
        return Err(AlgebraError::NonPrimitiveRoot { conductor, power: k });
    }
    if p.has_half_exponents() {
        eval_at_root_power(p, 2 * conductor, 2 * k)
    } else {
        eval_at_root_power(p, conductor, k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, Var};

    #[test]
    fn small_cyclotomics() {
        let show = |n| cyclotomic_polynomial(n).iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",");
        assert_eq!(show(1), "-1,1");
        assert_eq!(show(4), "1,0,1");
        assert_eq!(show(10), "1,-1,1,-1,1");
        assert_eq!(show(12), "1,0,-1,0,1");
    }

    #[test]
    fn golden_ratio_in_q_zeta10() {
        let z = CyclotomicElement::root_power(10, 1);
        let zi = CyclotomicElement::root_power(10, -1);
        let phi = z.add(&zi).unwrap();
        let lhs = phi.mul(&phi).unwrap();
        let rhs = phi.add(&CyclotomicElement::from_rational(10, int(1))).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn rejects_non_primitive() {
        let p = HalfLaurent::var_pow(Var::SmallQ, 1);
        assert!(matches!(eval_cyclotomic(&p, 10, 2), Err(AlgebraError::NonPrimitiveRoot { .. })));
    }

    #[test]
    fn evaluation_at_minus_one_and_i() {
        // q + 1 + q^-1
        let p = HalfLaurent::from_coeffs(Var::SmallQ, &[1, 1, 1]).shift(-2);
        assert_eq!(eval_cyclotomic(&p, 2, 1).unwrap().as_rational(), Some(int(-1)));
        assert_eq!(eval_cyclotomic(&p, 4, 1).unwrap().as_rational(), Some(int(1)));
        assert_eq!(eval_cyclotomic(&p, 1, 1).unwrap().as_rational(), Some(int(3)));
        assert_eq!(eval_cyclotomic(&p, 3, 2).unwrap().as_rational(), Some(int(0)));
    }

    #[test]
    fn half_exponents_double_the_conductor() {
        // q^{1/2} at q = -1 is i, whose square is -1
        let s = HalfLaurent::monomial(Var::SmallQ, 1, int(1));
        let v = eval_cyclotomic(&s, 2, 1).unwrap();
        assert_eq!(v.conductor(), 4);
        assert_eq!(v.mul(&v).unwrap().as_rational(), Some(int(-1)));
    }
}
