//! Flow polynomial, S-polynomial, Krushkal polynomial and the virtual chromatic polynomial.
//!
//! Each polynomial has a direct subset expansion and an independent recursive engine;
//! the S-polynomial additionally has the Brauer evaluation in [`crate::brauer`].

mod checks;
mod recursion;
pub mod statesum;

use serde::Serialize;

use crate::algebra::{AlgebraError, HalfLaurent, KrushkalPoly, Rational, Var};
use crate::ribbon::{CombMap, MapError};

pub use checks::{
    connect_sum_report, degree_report, special_value_report, ConnectSumReport, DegreeReport, SpecialValueReport,
};
pub use recursion::{chromatic_recursive, flow_recursive, s_poly_recursive, RecursionCache};
use statesum::SubsetScanner;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum InvariantError {
    #[error("map has twisted edges; this invariant needs an oriented map")]
    Twisted,
    #[error("{0} edges exceed the subset-expansion limit")]
    TooLarge(usize),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("{0}")]
    Precondition(String),
}

/// Evaluation route for polynomials with more than one implementation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Engine {
    /// Direct sum over edge subsets.
    StateSum,
    /// Memoised contraction-deletion recursion.
    Recursive,
    /// Brauer category evaluation (S-polynomial only).
    Brauer,
}

impl Engine {
    pub fn name(self) -> &'static str {
        match self {
            Engine::StateSum => "state-sum",
            Engine::Recursive => "contraction-deletion",
            Engine::Brauer => "brauer",
        }
    }
}

/// Flow polynomial `F(Q) = Σ_T (-1)^{|T|} Q^{b1(G−T)}`; independent of the rotation.
pub fn flow_polynomial(m: &CombMap, engine: Engine) -> Result<HalfLaurent, InvariantError> {
    match engine {
        Engine::StateSum => {
            let base = m.clone().without_twists();
            let sc = SubsetScanner::new(&base)?;
            Ok(sc.signed_sum(Var::BigQ, |s| 2 * s.b1 as i64))
        }
        Engine::Recursive => flow_recursive(&m.clone().without_twists(), &mut RecursionCache::default()),
        Engine::Brauer => Err(InvariantError::Precondition("the flow polynomial has no Brauer engine".into())),
    }
}

/// S-polynomial `S(Q) = Σ_T (-1)^{|T|} Q^{b1(G−T) − g(G−T)}`.
pub fn s_polynomial(m: &CombMap, engine: Engine) -> Result<HalfLaurent, InvariantError> {
    match engine {
        Engine::StateSum => {
            let sc = SubsetScanner::new(m)?;
            Ok(sc.signed_sum(Var::BigQ, |s| 2 * (s.b1 as i64 - s.genus as i64)))
        }
        Engine::Recursive => {
            if m.has_twists() {
                return Err(InvariantError::Twisted);
            }
            s_poly_recursive(m, &mut RecursionCache::default())
        }
        Engine::Brauer => crate::brauer::phi_s_polynomial(m),
    }
}

/// Krushkal polynomial
/// `Σ_T X^{b0(G−T)−b0(G)} Y^{b1(G−T)} A^{2g(G−T)} B^{2g⊥(G−T)}`, where `g⊥` is the genus of
/// the spanning sub-map of the dual on the duals of the deleted edges.
pub fn krushkal_polynomial(m: &CombMap) -> Result<KrushkalPoly, InvariantError> {
    let sc = SubsetScanner::new(m)?;
    let dual = m.geometric_dual()?;
    let dsc = SubsetScanner::new(&dual)?;
    let ne = m.num_edges();
    let all = if ne == 64 { u64::MAX } else { (1u64 << ne) - 1 };
    let b0 = m.components() as u32;
    let mut p = KrushkalPoly::zero();
    let (mut seen, mut dseen) = (Vec::new(), Vec::new());
    for mask in 0..1u64 << ne {
        let s = sc.stats(mask, &mut seen);
        let d = dsc.stats(all & !mask, &mut dseen);
        p.add_term([s.components - b0, s.b1, 2 * s.genus, 2 * d.genus], Rational::from_integer(1.into()));
    }
    Ok(p)
}

/// `S = (-1)^{b1} P'(-1, -Q, Q^{-1/2}, 1)`.
pub fn s_from_krushkal(p: &KrushkalPoly, b1: usize) -> HalfLaurent {
    let x = HalfLaurent::from_int(Var::BigQ, -1);
    let y = HalfLaurent::from_coeffs(Var::BigQ, &[0, -1]);
    let a = HalfLaurent::monomial(Var::BigQ, -1, Rational::from_integer(1.into()));
    let b = HalfLaurent::one(Var::BigQ);
    let s = p.specialize([&x, &y, &a, &b]);
    if b1.is_multiple_of(2) {
        s
    } else {
        -s
    }
}

/// Virtual chromatic polynomial `λ_G(t)`, a Laurent polynomial in `t`.
pub fn virtual_chromatic(m: &CombMap) -> Result<HalfLaurent, InvariantError> {
    if m.has_twists() {
        return Err(InvariantError::Twisted);
    }
    chromatic_recursive(m, &mut RecursionCache::default())
}

/// Minimum genus over all vertex-flip variants.
pub fn g_min(m: &CombMap) -> usize {
    m.rotation_variants().iter().map(|(_, v)| v.genus()).min().unwrap_or(0)
}

impl CombMap {
    /// Copy with every twist removed.
    pub fn without_twists(mut self) -> CombMap {
        let n = self.num_edges();
        self.set_twist_flags(vec![false; n]);
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn poly(c: &[i64]) -> HalfLaurent {
        HalfLaurent::from_coeffs(Var::BigQ, c)
    }

    #[test]
    fn theta_values() {
        for engine in [Engine::StateSum, Engine::Recursive] {
            assert_eq!(s_polynomial(&fixtures::theta_p(), engine).unwrap(), poly(&[2, -3, 1]));
            assert_eq!(s_polynomial(&fixtures::theta_t(), engine).unwrap(), poly(&[2, -2]));
            assert_eq!(flow_polynomial(&fixtures::theta_t(), engine).unwrap(), poly(&[2, -3, 1]));
        }
    }

    #[test]
    fn k33_standard_rotation() {
        let m = fixtures::k33_std();
        let s = s_polynomial(&m, Engine::StateSum).unwrap();
        assert_eq!(s, HalfLaurent::from_root_powers(Var::BigQ, 1, &[(1, 1), (4, 1), (-5, 1)]));
        let f = flow_polynomial(&m, Engine::StateSum).unwrap();
        let expect = &HalfLaurent::from_root_powers(Var::BigQ, 1, &[(1, 1), (2, 1)]) * &poly(&[10, -6, 1]);
        assert_eq!(f, expect);
        assert_eq!(g_min(&m), 1);
    }

    #[test]
    fn loop_krushkal() {
        let p = krushkal_polynomial(&fixtures::loop1()).unwrap();
        assert_eq!(p.to_string(), "Y + 1");
    }

    #[test]
    fn krushkal_specializes_to_s() {
        for m in [fixtures::theta_p(), fixtures::theta_t(), fixtures::k4(), fixtures::bouquet2_int()] {
            let p = krushkal_polynomial(&m).unwrap();
            let b1 = m.euler_data().b1;
            assert_eq!(s_from_krushkal(&p, b1), s_polynomial(&m, Engine::StateSum).unwrap());
        }
    }

    #[test]
    fn bridge_vanishes() {
        assert!(s_polynomial(&fixtures::bridge(), Engine::StateSum).unwrap().is_zero());
        assert!(s_polynomial(&fixtures::bridge(), Engine::Recursive).unwrap().is_zero());
    }

    #[test]
    fn chromatic_of_triangle() {
        let l = virtual_chromatic(&fixtures::cycle(3)).unwrap();
        assert_eq!(l, HalfLaurent::from_coeffs(Var::T, &[0, 2, -3, 1]));
    }
}
