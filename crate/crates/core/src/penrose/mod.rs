//! Penrose polynomials `W_so(N)`, the extended `W_sl(N)` of signed maps, and the
//! cellular embedding polynomial of cubic maps.
//!
//! Normalisation: an isolated vertex is `N` for `W_so` and `1 + s(v)` for `W_sl`;
//! subdividing an edge multiplies `W_so` by 2 and `W_sl` by `1 + s`.

mod relations;

use std::collections::HashMap;

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{HalfLaurent, Var};
use crate::brauer::{br2_e, br2_id, br2_x, edge_placement, vertex_pairs, BrauerVector, LocalTerm, StrandNetwork};
use crate::classical::{s_polynomial, Engine, InvariantError};
use crate::ribbon::{CanonKey, CombMap};

pub use relations::{
    ihx_check, so_as_sl_check, w_sl_connect_sums, w_sl_relation_suite, w_so_connect_sums, w_so_relation_suite,
    IhxReport, PenroseConnectSumReport, SoAsSlReport, WslRelationReport, WsoRelationReport,
};

fn n_pow(k: i64) -> HalfLaurent {
    HalfLaurent::var_pow(Var::N, k)
}

fn brauer_err(e: crate::brauer::BrauerError) -> InvariantError {
    InvariantError::Precondition(e.to_string())
}

fn push_edges(net: &mut StrandNetwork, m: &CombMap, plain: &BrauerVector) -> Result<(), InvariantError> {
    let twisted = br2_x().compose(plain).map_err(brauer_err)?;
    for e in 0..m.num_edges() {
        let piece = if m.is_twisted(e) { &twisted } else { plain };
        net.push_vector(piece, &edge_placement(m, e)).map_err(brauer_err)?;
    }
    Ok(())
}

/// `W_so(N)`: every vertex becomes its cyclic matching, every edge `id − x`, a half twist
/// composes with `x`, and a closed loop is `N`.
pub fn w_so(m: &CombMap) -> Result<HalfLaurent, InvariantError> {
    let mut net = StrandNetwork::new(Var::N, 2 * m.num_half_edges(), 2);
    for v in 0..m.num_vertices() {
        let rot = m.rotation(v);
        net.push_site(vec![LocalTerm {
            coeff: 1,
            half: 0,
            pairs: vertex_pairs(rot, false),
            loops: u32::from(rot.is_empty()),
        }]);
    }
    let edge = br2_id().sub(&br2_x()).map_err(brauer_err)?;
    push_edges(&mut net, m, &edge)?;
    Ok(net.evaluate())
}

/// `W_sl(N)` through the Brauer category: vertex `v` becomes
/// `N⁻¹(cyclic + s(v)·reversed)`, every edge `N·id − e`, a half twist composes with `x`.
pub fn w_sl_brauer(m: &CombMap) -> Result<HalfLaurent, InvariantError> {
    let mut net = StrandNetwork::new(Var::N, 2 * m.num_half_edges(), 2);
    for v in 0..m.num_vertices() {
        let rot = m.rotation(v);
        let loops = u32::from(rot.is_empty());
        net.push_site(vec![
            LocalTerm { coeff: 1, half: -2, pairs: vertex_pairs(rot, false), loops },
            LocalTerm { coeff: m.sign(v) as i64, half: -2, pairs: vertex_pairs(rot, true), loops },
        ]);
    }
    let edge = br2_id().scale(&HalfLaurent::var_pow(Var::C, 1)).sub(&br2_e()).map_err(brauer_err)?;
    push_edges(&mut net, m, &edge)?;
    Ok(net.evaluate())
}

/// `S(Q)` read at `Q = N²`.
pub fn s_at_n_squared(s: &HalfLaurent) -> HalfLaurent {
    let mut out = HalfLaurent::zero(Var::N);
    for (h, c) in s.terms() {
        out.add_term(2 * h, c.clone());
    }
    out
}

/// `W_sl(N) = Σ_{W ⊆ V} (Π_{v∈W} s(v)) S_{σ_W G}(N²)` for twist-free signed maps.
pub fn w_sl_extended(m: &CombMap) -> Result<HalfLaurent, InvariantError> {
    if m.has_twists() {
        return Err(InvariantError::Twisted);
    }
    // flipping a vertex of degree ≤ 2 leaves the map unchanged
    let (small, big): (Vec<usize>, Vec<usize>) = (0..m.num_vertices()).partition(|&v| m.degree(v) <= 2);
    let mut factor: i64 = 1;
    for &v in &small {
        factor *= 1 + m.sign(v) as i64;
    }
    if factor == 0 {
        return Ok(HalfLaurent::zero(Var::N));
    }
    let base = m.clone().without_signs();
    let mut memo: HashMap<CanonKey, HalfLaurent> = HashMap::new();
    let mut acc = HalfLaurent::zero(Var::N);
    for mask in 0u64..1 << big.len() {
        let set: Vec<usize> = (0..big.len()).filter(|&i| mask >> i & 1 == 1).map(|i| big[i]).collect();
        let sign: i64 = set.iter().map(|&v| m.sign(v) as i64).product();
        let flipped = base.flip_vertices(&set);
        let key = flipped.canonical_key();
        let s = match memo.get(&key) {
            Some(s) => s.clone(),
            None => {
                let s = s_polynomial(&flipped, Engine::StateSum)?;
                memo.insert(key, s.clone());
                s
            }
        };
        acc += &s_at_n_squared(&s).scale_int(sign);
    }
    Ok(acc.scale_int(factor))
}

fn require_cubic(m: &CombMap) -> Result<(), InvariantError> {
    match (0..m.num_vertices()).find(|&v| m.degree(v) != 3) {
        Some(v) => Err(InvariantError::Precondition(format!("vertex {v} has degree {}, expected 3", m.degree(v)))),
        None => Ok(()),
    }
}

/// `C(x) = Σ_{W ⊆ V} (−1)^{|W|} x^{g(σ_W G)}` for cubic maps: the signed count of flip
/// variants by genus.
pub fn cellular_embedding_poly(m: &CombMap) -> Result<HalfLaurent, InvariantError> {
    require_cubic(m)?;
    let nv = m.num_vertices();
    if nv > 24 {
        return Err(InvariantError::TooLarge(nv));
    }
    let mut acc = HalfLaurent::zero(Var::X);
    let base = m.clone().without_signs();
    for mask in 0u64..1 << nv {
        let set: Vec<usize> = (0..nv).filter(|&v| mask >> v & 1 == 1).collect();
        let g = base.flip_vertices(&set).genus() as i64;
        acc.add_int_term(2 * g, if set.len().is_multiple_of(2) { 1 } else { -1 });
    }
    Ok(acc)
}

#[derive(Clone, Debug, Serialize)]
pub struct PlanarityWitness {
    pub planar_somehow: bool,
    /// Vertices whose flip gives a plane map.
    pub witness: Option<Vec<usize>>,
    /// Number of flip sets giving a plane map.
    pub planar_flip_count: usize,
}

/// Search the vertex-flip lattice for a genus-zero rotation system.
pub fn planarity_by_flips(m: &CombMap) -> Result<PlanarityWitness, InvariantError> {
    let big: Vec<usize> = (0..m.num_vertices()).filter(|&v| m.degree(v) >= 3).collect();
    if big.len() > 24 {
        return Err(InvariantError::TooLarge(big.len()));
    }
    let base = m.clone().without_signs().without_twists();
    let mut witness = None;
    let mut count = 0;
    for mask in 0u64..1 << big.len() {
        let set: Vec<usize> = (0..big.len()).filter(|&i| mask >> i & 1 == 1).map(|i| big[i]).collect();
        if base.flip_vertices(&set).genus() == 0 {
            count += 1;
            if witness.is_none() {
                witness = Some(set);
            }
        }
    }
    Ok(PlanarityWitness { planar_somehow: witness.is_some(), witness, planar_flip_count: count })
}

#[derive(Clone, Debug, Serialize)]
pub struct PenroseNumberReport {
    pub w_sl_at_2: String,
    pub w_sl_at_minus_2: String,
    pub s_at_4_scaled: String,
    pub w_so_at_minus_2: String,
    pub w_so_at_3: String,
    /// `W_sl(2) = 2^{|V|} S(4)`.
    pub sl2_matches_s4: bool,
    pub sl2_equals_sl_minus_2: bool,
    /// `W_so(−2) = (−1)^{|E|−|V|} W_sl(−2)`.
    pub so_minus_2_matches: bool,
    /// With one vertex sign reversed, `W_sl(2) = 0`.
    pub off_parity_vanishes: Option<bool>,
}

/// Agreement of `W_sl(±2)`, `W_so(−2)` and `S(4)` under parity signs.
pub fn penrose_number_checks(m: &CombMap) -> Result<PenroseNumberReport, InvariantError> {
    let parity = m.clone().without_signs();
    let sl = w_sl_extended(&parity)?;
    let so = w_so(&parity)?;
    let s4 = s_polynomial(&parity, Engine::StateSum)?.eval_int(4)?;
    let scale = crate::algebra::Rational::from_integer(num_bigint::BigInt::from(2).pow(m.num_vertices() as u32));
    let s4_scaled = s4 * scale;
    let sl2 = sl.eval_int(2)?;
    let slm2 = sl.eval_int(-2)?;
    let som2 = so.eval_int(-2)?;
    let parity_sign = if (m.num_edges() + m.num_vertices()).is_multiple_of(2) { 1 } else { -1 };
    let off_parity_vanishes = if m.num_vertices() > 0 {
        let mut signs: Vec<i8> = (0..m.num_vertices()).map(|v| parity.sign(v)).collect();
        signs[0] = -signs[0];
        let off = parity.clone().with_signs(signs)?;
        Some(w_sl_extended(&off)?.eval_int(2)?.is_zero())
    } else {
        None
    };
    Ok(PenroseNumberReport {
        sl2_matches_s4: sl2 == s4_scaled,
        sl2_equals_sl_minus_2: sl2 == slm2,
        so_minus_2_matches: som2 == &slm2 * crate::algebra::Rational::from_integer(parity_sign.into()),
        off_parity_vanishes,
        w_sl_at_2: sl2.to_string(),
        w_sl_at_minus_2: slm2.to_string(),
        s_at_4_scaled: s4_scaled.to_string(),
        w_so_at_minus_2: som2.to_string(),
        w_so_at_3: so.eval_int(3)?.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use num_traits::Zero;

    fn npoly(c: &[i64]) -> HalfLaurent {
        HalfLaurent::from_coeffs(Var::N, c)
    }

    #[test]
    fn so_anchors() {
        assert_eq!(w_so(&CombMap::isolated(1)).unwrap(), npoly(&[0, 1]));
        assert_eq!(w_so(&fixtures::loop1()).unwrap(), npoly(&[0, -1, 1]));
        let theta = npoly(&[0, 2, -3, 1]);
        assert_eq!(w_so(&fixtures::theta_p()).unwrap(), theta);
        // one flip of a trivalent vertex away from the plane theta
        assert_eq!(w_so(&fixtures::theta_t()).unwrap(), -theta.clone());
        assert!(w_so(&fixtures::bridge()).unwrap().is_zero());
        let sub = fixtures::theta_p().subdivide_edge(0, 1).unwrap();
        assert_eq!(w_so(&sub).unwrap(), theta.scale_int(2));
    }

    #[test]
    fn sl_theta_values() {
        let p_minus = &npoly(&[0, 0, 2]) * &npoly(&[-1, 0, 1]);
        let p_plus = &npoly(&[-2, 0, 2]) * &npoly(&[-4, 0, 1]);
        for (theta, flip) in [(fixtures::theta_p(), [1, 1]), (fixtures::theta_t(), [-1, 1])] {
            let neg = theta.clone().with_signs(vec![-1, -1]).unwrap();
            let pos = theta.clone().with_signs(vec![1, 1]).unwrap();
            assert_eq!(w_sl_extended(&neg).unwrap(), p_minus.scale_int(flip[0]));
            assert_eq!(w_sl_extended(&pos).unwrap(), p_plus.scale_int(flip[1]));
            assert_eq!(w_sl_brauer(&neg).unwrap(), p_minus.scale_int(flip[0]));
            assert_eq!(w_sl_brauer(&pos).unwrap(), p_plus.scale_int(flip[1]));
        }
    }

    #[test]
    fn sl_loop_and_subdivision() {
        let lp = w_sl_extended(&fixtures::loop1()).unwrap();
        assert_eq!(lp, npoly(&[-2, 0, 2]));
        assert_eq!(w_sl_brauer(&fixtures::loop1()).unwrap(), lp);
        let neg = fixtures::theta_p().subdivide_edge(1, -1).unwrap();
        assert!(w_sl_brauer(&neg).unwrap().is_zero());
    }

    #[test]
    fn cellular_theta_and_k4() {
        let c = cellular_embedding_poly(&fixtures::theta_p()).unwrap();
        assert_eq!(c, HalfLaurent::from_coeffs(Var::X, &[2, -2]));
        let k4 = cellular_embedding_poly(&fixtures::k4()).unwrap();
        assert!(k4.eval_int(1).unwrap().is_zero());
        assert!(!k4.eval_int(0).unwrap().is_zero());
        assert!(cellular_embedding_poly(&fixtures::loop1()).is_err());
    }

    #[test]
    fn flip_witnesses() {
        let t = planarity_by_flips(&fixtures::theta_t()).unwrap();
        assert_eq!(t.witness.map(|w| w.len()), Some(1));
        assert!(!planarity_by_flips(&fixtures::k33_std()).unwrap().planar_somehow);
        assert_eq!(planarity_by_flips(&fixtures::loop1()).unwrap().witness, Some(vec![]));
    }

    #[test]
    fn penrose_numbers_on_fixtures() {
        for m in
            [fixtures::theta_p(), fixtures::theta_t(), fixtures::k4(), fixtures::k33_std(), fixtures::bouquet2_int()]
        {
            let r = penrose_number_checks(&m).unwrap();
            assert!(r.sl2_matches_s4 && r.sl2_equals_sl_minus_2 && r.so_minus_2_matches, "{r:?}");
            assert_eq!(r.off_parity_vanishes, Some(true));
        }
    }
}
