use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{AlgebraError, Rational};

/// Variable tag carried by every [`HalfLaurent`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Var {
    /// The S/flow polynomial variable `Q`.
    BigQ,
    /// The Yamada variable `q`.
    SmallQ,
    /// The Lie rank `N`.
    N,
    /// The virtual chromatic variable `t`.
    T,
    /// The cellular embedding variable `x`.
    X,
    /// The Brauer loop value `c`.
    C,
}

impl Var {
    pub fn symbol(self) -> &'static str {
        match self {
            Var::BigQ => "Q",
            Var::SmallQ => "q",
            Var::N => "N",
            Var::T => "t",
            Var::X => "x",
            Var::C => "c",
        }
    }
}

/// Result of asking for the top term of a polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Degree {
    NegInfinity,
    /// Exponent in half-steps.
    Finite(i64),
}

impl PartialOrd for Degree {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Degree {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (self, other) {
            (Degree::NegInfinity, Degree::NegInfinity) => std::cmp::Ordering::Equal,
            (Degree::NegInfinity, _) => std::cmp::Ordering::Less,
            (_, Degree::NegInfinity) => std::cmp::Ordering::Greater,
            (Degree::Finite(a), Degree::Finite(b)) => a.cmp(b),
        }
    }
}

/// Laurent polynomial with rational coefficients whose exponents live in `½ℤ`.
///
/// Exponents are stored as integers counting half-steps, so `Q^{3/2}` has key 3
/// and `Q^2` has key 4. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HalfLaurent {
    var: Var,
    terms: BTreeMap<i64, Rational>,
}

impl HalfLaurent {
    pub fn zero(var: Var) -> Self {
        HalfLaurent { var, terms: BTreeMap::new() }
    }

    pub fn one(var: Var) -> Self {
        Self::constant(var, Rational::one())
    }

    pub fn constant(var: Var, c: Rational) -> Self {
        Self::monomial(var, 0, c)
    }

    pub fn from_int(var: Var, c: i64) -> Self {
        Self::constant(var, Rational::from_integer(c.into()))
    }

    /// `coeff * var^(half/2)`.
    pub fn monomial(var: Var, half: i64, coeff: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(half, coeff);
        }
        HalfLaurent { var, terms }
    }

    /// `var^k` for an integer `k`.
    pub fn var_pow(var: Var, k: i64) -> Self {
        Self::monomial(var, 2 * k, Rational::one())
    }

    /// Polynomial from integer coefficients listed by ascending integer exponent.
    pub fn from_coeffs(var: Var, coeffs: &[i64]) -> Self {
        let mut p = Self::zero(var);
        for (k, &c) in coeffs.iter().enumerate() {
            p.add_term(2 * k as i64, Rational::from_integer(c.into()));
        }
        p
    }

    /// Product of linear factors `(var - r)^m`, scaled by `scale`.
    pub fn from_root_powers(var: Var, scale: i64, roots: &[(i64, u32)]) -> Self {
        let mut p = Self::from_int(var, scale);
        for &(r, m) in roots {
            let lin = Self::from_coeffs(var, &[-r, 1]);
            for _ in 0..m {
                p = &p * &lin;
            }
        }
        p
    }

    pub fn var(&self) -> Var {
        self.var
    }

    /// Iterate `(half_exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &Rational)> {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, half: i64, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(half).or_insert_with(Rational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&half);
        }
    }

    pub fn add_int_term(&mut self, half: i64, coeff: i64) {
        self.add_term(half, Rational::from_integer(coeff.into()));
    }

    pub fn coeff(&self, half: i64) -> Rational {
        self.terms.get(&half).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&0).is_some_and(|c| c.is_one())
    }

    pub fn has_half_exponents(&self) -> bool {
        self.terms.keys().any(|k| k.rem_euclid(2) == 1)
    }

    /// True when all exponents are non-negative integers.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|&k| k >= 0 && k % 2 == 0)
    }

    pub fn has_integer_coeffs(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn degree(&self) -> Degree {
        match self.terms.keys().next_back() {
            Some(&k) => Degree::Finite(k),
            None => Degree::NegInfinity,
        }
    }

    /// Top exponent (half-steps) and its coefficient, `None` for the zero polynomial.
    pub fn degree_leading(&self) -> Option<(i64, Rational)> {
        self.terms.iter().next_back().map(|(&k, c)| (k, c.clone()))
    }

    pub fn low_degree(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    /// Integer-exponent degree; panics on half exponents.
    pub fn int_degree(&self) -> Option<i64> {
        self.degree_leading().map(|(k, _)| {
            assert!(k % 2 == 0, "half-integer degree");
            k / 2
        })
    }

    fn check_var(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.var != other.var {
            return Err(AlgebraError::VariableMismatch(self.var, other.var));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_var(other)?;
        let mut out = self.clone();
        for (&k, c) in &other.terms {
            out.add_term(k, c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_var(other)?;
        let mut out = self.clone();
        for (&k, c) in &other.terms {
            out.add_term(k, -c.clone());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_var(other)?;
        let mut out = Self::zero(self.var);
        for (&a, ca) in &self.terms {
            for (&b, cb) in &other.terms {
                out.add_term(a + b, ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.var);
        }
        HalfLaurent { var: self.var, terms: self.terms.iter().map(|(&k, v)| (k, v * c)).collect() }
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&Rational::from_integer(c.into()))
    }

    /// Multiply by `var^(half/2)`.
    pub fn shift(&self, half: i64) -> Self {
        HalfLaurent { var: self.var, terms: self.terms.iter().map(|(&k, v)| (k + half, v.clone())).collect() }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut result = Self::one(self.var);
        let mut base = self.clone();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Same coefficients under a different variable tag.
    pub fn retag(&self, var: Var) -> Self {
        HalfLaurent { var, terms: self.terms.clone() }
    }

    /// Reinterpret `c^k` as `var^{k/2}`: every integer exponent becomes a half-step.
    pub fn as_square_root_of(&self, var: Var) -> Result<Self, AlgebraError> {
        let mut out = Self::zero(var);
        for (&k, c) in &self.terms {
            if k % 2 != 0 {
                return Err(AlgebraError::HalfExponent);
            }
            out.add_term(k / 2, c.clone());
        }
        Ok(out)
    }

    /// `var^{shift/2} * p(var^{-1})`.
    pub fn reflect(&self, shift_half: i64) -> Self {
        HalfLaurent { var: self.var, terms: self.terms.iter().map(|(&k, v)| (shift_half - k, v.clone())).collect() }
    }

    /// Evaluate at a rational point. Half exponents are rejected.
    pub fn eval(&self, x: &Rational) -> Result<Rational, AlgebraError> {
        let mut acc = Rational::zero();
        for (&k, c) in &self.terms {
            if k % 2 != 0 {
                return Err(AlgebraError::HalfExponent);
            }
            let e = k / 2;
            if e < 0 && x.is_zero() {
                return Err(AlgebraError::DivisionByZero);
            }
            let p =
                if e >= 0 { num_traits::pow(x.clone(), e as usize) } else { num_traits::pow(x.recip(), (-e) as usize) };
            acc += c * p;
        }
        Ok(acc)
    }

    pub fn eval_int(&self, x: i64) -> Result<Rational, AlgebraError> {
        self.eval(&Rational::from_integer(x.into()))
    }

    /// Substitute `Q = q + 2 + q^{-1}` (so `Q^{1/2} = q^{1/2} + q^{-1/2}`).
    pub fn substitute_q_shift(&self) -> Result<Self, AlgebraError> {
        if self.var != Var::BigQ {
            return Err(AlgebraError::VariableMismatch(self.var, Var::BigQ));
        }
        // powers of (q^{1/2} + q^{-1/2})
        let root = {
            let mut r = Self::zero(Var::SmallQ);
            r.add_int_term(1, 1);
            r.add_int_term(-1, 1);
            r
        };
        let mut out = Self::zero(Var::SmallQ);
        let mut cache: BTreeMap<i64, HalfLaurent> = BTreeMap::new();
        for (&k, c) in &self.terms {
            if k < 0 {
                return Err(AlgebraError::NegativeExponent);
            }
            let term = cache.entry(k).or_insert_with(|| root.pow(k as u32)).scale(c);
            out = &out + &term;
        }
        Ok(out)
    }

    /// Exact division by the monic linear factor `(var - r)`; `None` if not divisible.
    pub fn divide_linear(&self, r: &Rational) -> Option<Self> {
        if !self.is_polynomial() {
            return None;
        }
        let deg = match self.int_degree() {
            Some(d) => d,
            None => return Some(self.clone()),
        };
        // synthetic division, high to low
        let mut quotient = vec![Rational::zero(); deg as usize];
        let mut carry = Rational::zero();
        for e in (0..=deg).rev() {
            let c = self.coeff(2 * e) + &carry * r;
            if e == 0 {
                if !c.is_zero() {
                    return None;
                }
            } else {
                quotient[(e - 1) as usize] = c.clone();
                carry = c;
            }
        }
        let mut out = Self::zero(self.var);
        for (i, c) in quotient.into_iter().enumerate() {
            out.add_term(2 * i as i64, c);
        }
        Some(out)
    }

    /// Split off linear factors `(var - r)` for integer `r` in `[-bound, bound]`.
    ///
    /// Returns the multiplicities found and the unfactored remainder.
    pub fn integer_root_factors(&self, bound: i64) -> (Vec<(i64, u32)>, HalfLaurent) {
        let mut rest = self.clone();
        let mut found = Vec::new();
        if rest.is_zero() {
            return (found, rest);
        }
        for r in (-bound..=bound).rev() {
            let rr = Rational::from_integer(r.into());
            let mut m = 0;
            while rest.int_degree().unwrap_or(0) > 0 {
                match rest.divide_linear(&rr) {
                    Some(q) => {
                        rest = q;
                        m += 1;
                    }
                    None => break,
                }
            }
            if m > 0 {
                found.push((r, m));
            }
        }
        (found, rest)
    }

    /// Render as a product of integer-root linear factors when possible.
    pub fn factored_string(&self, bound: i64) -> String {
        if !self.is_polynomial() || self.is_zero() {
            return self.to_string();
        }
        let (factors, rest) = self.integer_root_factors(bound);
        let sym = self.var.symbol();
        let mut parts = Vec::new();
        let rest_str = if rest.is_one() {
            None
        } else if rest.num_terms() == 1 && rest.low_degree() == Some(0) {
            Some(rest.coeff(0).to_string())
        } else {
            Some(format!("({})", rest))
        };
        if let Some(s) = rest_str {
            parts.push(s);
        }
        for (r, m) in factors {
            let base = if r == 0 {
                sym.to_string()
            } else if r > 0 {
                format!("({} - {})", sym, r)
            } else {
                format!("({} + {})", sym, -r)
            };
            if m == 1 {
                parts.push(base);
            } else {
                parts.push(format!("{}^{}", base, m));
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else if parts.len() == 1 && parts[0].starts_with('(') && parts[0].ends_with(')') {
            parts[0][1..parts[0].len() - 1].to_string()
        } else {
            parts.join("*")
        }
    }
}

fn format_exponent(sym: &str, half: i64) -> String {
    if half % 2 == 0 {
        let k = half / 2;
        if k == 1 {
            sym.to_string()
        } else {
            format!("{}^{}", sym, k)
        }
    } else {
        format!("{}^{{{}/2}}", sym, half)
    }
}

impl fmt::Display for HalfLaurent {
    /// Decreasing exponent order, e.g. `-2*Q + 2`, `Q^{1/2}`, `q^-1`, `3/2*Q^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let sym = self.var.symbol();
        for (i, (&k, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if k == 0 {
                write!(f, "{}", abs)?;
            } else if abs.is_one() {
                write!(f, "{}", format_exponent(sym, k))?;
            } else {
                write!(f, "{}*{}", abs, format_exponent(sym, k))?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&HalfLaurent> for &HalfLaurent {
            type Output = HalfLaurent;
            fn $method(self, rhs: &HalfLaurent) -> HalfLaurent {
                self.$checked(rhs).expect("variable tag mismatch")
            }
        }
        impl $tr<HalfLaurent> for HalfLaurent {
            type Output = HalfLaurent;
            fn $method(self, rhs: HalfLaurent) -> HalfLaurent {
                (&self).$checked(&rhs).expect("variable tag mismatch")
            }
        }
        impl $tr<&HalfLaurent> for HalfLaurent {
            type Output = HalfLaurent;
            fn $method(self, rhs: &HalfLaurent) -> HalfLaurent {
                (&self).$checked(rhs).expect("variable tag mismatch")
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl AddAssign<&HalfLaurent> for HalfLaurent {
    fn add_assign(&mut self, rhs: &HalfLaurent) {
        assert_eq!(self.var, rhs.var, "variable tag mismatch");
        for (&k, c) in &rhs.terms {
            self.add_term(k, c.clone());
        }
    }
}

impl SubAssign<&HalfLaurent> for HalfLaurent {
    fn sub_assign(&mut self, rhs: &HalfLaurent) {
        assert_eq!(self.var, rhs.var, "variable tag mismatch");
        for (&k, c) in &rhs.terms {
            self.add_term(k, -c.clone());
        }
    }
}

impl Neg for &HalfLaurent {
    type Output = HalfLaurent;
    fn neg(self) -> HalfLaurent {
        HalfLaurent { var: self.var, terms: self.terms.iter().map(|(&k, c)| (k, -c.clone())).collect() }
    }
}

impl Neg for HalfLaurent {
    type Output = HalfLaurent;
    fn neg(self) -> HalfLaurent {
        -&self
    }
}

/// Integer-coefficient accumulator keyed by half-step exponent, for hot state sums.
#[derive(Clone, Debug, Default)]
pub struct IntAccumulator {
    terms: BTreeMap<i64, i128>,
}

impl IntAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, half: i64, c: i128) {
        *self.terms.entry(half).or_insert(0) += c;
    }

    pub fn merge(&mut self, other: &IntAccumulator) {
        for (&k, &c) in &other.terms {
            self.add(k, c);
        }
    }

    pub fn into_poly(self, var: Var) -> HalfLaurent {
        let mut p = HalfLaurent::zero(var);
        for (k, c) in self.terms {
            p.add_term(k, Rational::from_integer(BigInt::from(c)));
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> HalfLaurent {
        HalfLaurent::var_pow(Var::BigQ, 1)
    }

    #[test]
    fn renders_canonically() {
        let p = HalfLaurent::from_coeffs(Var::BigQ, &[2, -2]);
        assert_eq!(p.to_string(), "-2*Q + 2");
        let mut h = HalfLaurent::zero(Var::BigQ);
        h.add_int_term(1, 1);
        h.add_int_term(-2, 1);
        assert_eq!(h.to_string(), "Q^{1/2} + Q^-1");
        let r = HalfLaurent::monomial(Var::SmallQ, 4, Rational::new(3.into(), 2.into()));
        assert_eq!(r.to_string(), "3/2*q^2");
        assert_eq!(HalfLaurent::zero(Var::T).to_string(), "0");
        assert_eq!(HalfLaurent::monomial(Var::BigQ, -1, -Rational::one()).to_string(), "-Q^{-1/2}");
    }

    #[test]
    fn mixing_tags_is_an_error() {
        let a = HalfLaurent::var_pow(Var::BigQ, 1);
        let b = HalfLaurent::var_pow(Var::SmallQ, 1);
        assert!(matches!(a.checked_add(&b), Err(AlgebraError::VariableMismatch(_, _))));
    }

    #[test]
    fn half_powers_multiply() {
        let s = HalfLaurent::monomial(Var::BigQ, 1, Rational::one());
        assert_eq!(&s * &s, q());
    }

    #[test]
    fn degree_of_zero_is_negative_infinity() {
        assert_eq!(HalfLaurent::zero(Var::BigQ).degree(), Degree::NegInfinity);
        assert!(Degree::NegInfinity < Degree::Finite(-100));
    }

    #[test]
    fn q_shift_of_one_less_than_q() {
        let p = HalfLaurent::from_coeffs(Var::BigQ, &[-1, 1]);
        let s = p.substitute_q_shift().unwrap();
        assert_eq!(s.to_string(), "q + 1 + q^-1");
    }

    #[test]
    fn factoring_small_roots() {
        let p = HalfLaurent::from_root_powers(Var::BigQ, 1, &[(4, 1), (1, 2), (0, 1)]);
        assert_eq!(p.to_string(), "Q^4 - 6*Q^3 + 9*Q^2 - 4*Q");
        assert_eq!(p.factored_string(10), "(Q - 4)*(Q - 1)^2*Q");
    }

    #[test]
    fn reflect_gives_reciprocal() {
        let p = HalfLaurent::from_coeffs(Var::T, &[1, 2, 3]);
        assert_eq!(p.reflect(4).to_string(), "t^2 + 2*t + 3");
    }
}
