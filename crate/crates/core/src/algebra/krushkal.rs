use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Signed, Zero};

use super::{HalfLaurent, Rational};

/// Polynomial in four commuting variables `X, Y, A, B` with non-negative exponents.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct KrushkalPoly {
    terms: BTreeMap<[u32; 4], Rational>,
}

const NAMES: [&str; 4] = ["X", "Y", "A", "B"];

impl KrushkalPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, exps: [u32; 4], coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let e = self.terms.entry(exps).or_insert_with(Rational::zero);
        *e += coeff;
        if e.is_zero() {
            self.terms.remove(&exps);
        }
    }

    pub fn coeff(&self, exps: [u32; 4]) -> Rational {
        self.terms.get(&exps).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; 4], &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Substitute a single-variable Laurent polynomial for each of `X, Y, A, B`.
    pub fn specialize(&self, values: [&HalfLaurent; 4]) -> HalfLaurent {
        let var = values[0].var();
        let mut cache: Vec<BTreeMap<u32, HalfLaurent>> = vec![BTreeMap::new(); 4];
        let mut out = HalfLaurent::zero(var);
        for (exps, c) in &self.terms {
            let mut term = HalfLaurent::constant(var, c.clone());
            for i in 0..4 {
                let p = cache[i].entry(exps[i]).or_insert_with(|| values[i].pow(exps[i])).clone();
                term = &term * &p;
            }
            out += &term;
        }
        out
    }
}

impl fmt::Display for KrushkalPoly {
    /// Terms in decreasing lexicographic `(X, Y, A, B)` exponent order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (exps, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono: Vec<String> = exps
                .iter()
                .zip(NAMES)
                .filter(|(e, _)| **e > 0)
                .map(|(e, n)| if *e == 1 { n.to_string() } else { format!("{}^{}", n, e) })
                .collect();
            if mono.is_empty() {
                write!(f, "{}", abs)?;
            } else if abs.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", abs, mono.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, Var};

    #[test]
    fn display_and_specialize() {
        let mut p = KrushkalPoly::zero();
        p.add_term([0, 1, 0, 0], int(1));
        p.add_term([0, 0, 0, 0], int(1));
        assert_eq!(p.to_string(), "Y + 1");
        let x = HalfLaurent::from_int(Var::BigQ, -1);
        let y = HalfLaurent::from_coeffs(Var::BigQ, &[0, -1]);
        let a = HalfLaurent::monomial(Var::BigQ, -1, int(1));
        let b = HalfLaurent::one(Var::BigQ);
        assert_eq!(p.specialize([&x, &y, &a, &b]).to_string(), "-Q + 1");
    }
}
