use serde::Serialize;

use crate::algebra::{rat, HalfLaurent, Var};
use crate::classical::InvariantError;
use crate::ribbon::CombMap;

use super::{n_pow, w_sl_brauer, w_sl_extended, w_so};

fn npoly(c: &[i64]) -> HalfLaurent {
    HalfLaurent::from_coeffs(Var::N, c)
}

fn explicit_signs(m: &CombMap) -> Result<CombMap, InvariantError> {
    let signs = (0..m.num_vertices()).map(|v| m.sign(v)).collect();
    Ok(m.clone().with_signs(signs)?)
}

fn with_sign(m: &CombMap, v: usize, s: i8) -> Result<CombMap, InvariantError> {
    let mut signs: Vec<i8> = (0..m.num_vertices()).map(|u| m.sign(u)).collect();
    signs[v] = s;
    Ok(m.clone().with_signs(signs)?)
}

#[derive(Clone, Debug, Serialize)]
pub struct WsoRelationReport {
    pub edge: usize,
    /// `W(G) = W(G/e) − W(τ_e G / e)`.
    pub contraction: bool,
    /// `W(σ_v G) = (−1)^{deg v} W(G)` at every vertex.
    pub vertex_flip: bool,
    /// Subdividing `e` doubles `W`.
    pub subdivision: bool,
}

pub fn w_so_relation_suite(m: &CombMap, e: usize) -> Result<WsoRelationReport, InvariantError> {
    let w = w_so(m)?;
    let contracted = w_so(&m.contract_edge(e)?)?;
    let twisted = w_so(&m.twist_edge(e)?.contract_edge(e)?)?;
    let mut vertex_flip = true;
    for v in 0..m.num_vertices() {
        let f = w_so(&m.vertex_flip(v)?)?;
        vertex_flip &= f == if m.degree(v).is_multiple_of(2) { w.clone() } else { -w.clone() };
    }
    Ok(WsoRelationReport {
        edge: e,
        contraction: w == &contracted - &twisted,
        vertex_flip,
        subdivision: w_so(&m.subdivide_edge(e, 1)?)? == w.scale_int(2),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PenroseConnectSumReport {
    /// Connect sum at the degree-two vertices subdividing each map's first edge.
    pub degree2: Option<bool>,
    /// Connect sum at the first degree-three vertex of each map.
    pub degree3: Option<bool>,
}

fn deg2_sum(a: &CombMap, b: &CombMap, sign: i8) -> Result<Option<(CombMap, CombMap, CombMap)>, InvariantError> {
    if a.num_edges() == 0 || b.num_edges() == 0 {
        return Ok(None);
    }
    let a2 = explicit_signs(&a.subdivide_edge(0, sign)?)?;
    let b2 = explicit_signs(&b.subdivide_edge(0, sign)?)?;
    let (va, vb) = (a2.num_vertices() - 1, b2.num_vertices() - 1);
    let sum = a2.vertex_connect_sum(va, a2.rotation(va)[0], &b2, vb, b2.rotation(vb)[0])?;
    Ok(Some((a2, b2, sum)))
}

fn first_cubic(m: &CombMap) -> Option<usize> {
    (0..m.num_vertices()).find(|&v| m.degree(v) == 3)
}

/// `2N(N−1) W_so(A #₂ B) = W_so(A ⊔ B)` and `N(N−1)(N−2) W_so(A #₃ B) = W_so(A ⊔ B)`.
pub fn w_so_connect_sums(a: &CombMap, b: &CombMap) -> Result<PenroseConnectSumReport, InvariantError> {
    let degree2 = match deg2_sum(a, b, 1)? {
        Some((a2, b2, sum)) => Some(&npoly(&[0, -2, 2]) * &w_so(&sum)? == &w_so(&a2)? * &w_so(&b2)?),
        None => None,
    };
    let degree3 = match (first_cubic(a), first_cubic(b)) {
        (Some(va), Some(vb)) => {
            let sum = a.vertex_connect_sum(va, a.rotation(va)[0], b, vb, b.rotation(vb)[0])?;
            Some(&npoly(&[0, 2, -3, 1]) * &w_so(&sum)? == &w_so(a)? * &w_so(b)?)
        }
        _ => None,
    };
    Ok(PenroseConnectSumReport { degree2, degree3 })
}

/// `4(N²−1) W_sl(A #₂ B) = W_sl(A ⊔ B)` at positive degree-two vertices, and
/// `p⁺p⁻ W_sl(A #₃ B) = p⁻ W_sl(A⁺ ⊔ B⁺) + p⁺ W_sl(A⁻ ⊔ B⁻)` where `A^s` carries sign `s`
/// at the summed vertex and `p^s` is the theta graph with both signs `s`.
pub fn w_sl_connect_sums(a: &CombMap, b: &CombMap) -> Result<PenroseConnectSumReport, InvariantError> {
    let degree2 = match deg2_sum(a, b, 1)? {
        Some((a2, b2, sum)) => {
            Some(&npoly(&[-4, 0, 4]) * &w_sl_extended(&sum)? == &w_sl_extended(&a2)? * &w_sl_extended(&b2)?)
        }
        None => None,
    };
    let degree3 = match (first_cubic(a), first_cubic(b)) {
        (Some(va), Some(vb)) => {
            let a = explicit_signs(a)?;
            let b = explicit_signs(b)?;
            let sum = a.vertex_connect_sum(va, a.rotation(va)[0], &b, vb, b.rotation(vb)[0])?;
            let p_plus = &npoly(&[-2, 0, 2]) * &npoly(&[-4, 0, 1]);
            let p_minus = &npoly(&[0, 0, 2]) * &npoly(&[-1, 0, 1]);
            let w = |m: &CombMap| w_sl_extended(m);
            let plus = &w(&with_sign(&a, va, 1)?)? * &w(&with_sign(&b, vb, 1)?)?;
            let minus = &w(&with_sign(&a, va, -1)?)? * &w(&with_sign(&b, vb, -1)?)?;
            let lhs = &(&p_plus * &p_minus) * &w(&sum)?;
            let rhs = &(&p_minus * &plus) + &(&p_plus * &minus);
            Some(lhs == rhs)
        }
        _ => None,
    };
    Ok(PenroseConnectSumReport { degree2, degree3 })
}

#[derive(Clone, Debug, Serialize)]
pub struct WslRelationReport {
    pub edge: usize,
    /// Non-loop `e = uv` with signs `a, b`:
    /// `W(G) = W(G/e) + b·W(σ_v G / e) − W(G − e)`, the merged vertex signed `ab`.
    pub edge_relation: Option<bool>,
    /// Loop `e` at a vertex of sign `a`:
    /// `W(G) = ½N² (W(G/e)_{(a,1)} + W(G/e)_{(−a,−1)}) − W(G − e)`, the subscripts being the
    /// signs of the two vertices the loop's contraction splits into.
    pub loop_relation: Option<bool>,
    /// `W(σ_v G) = s(v) W(G)` at every vertex.
    pub vertex_flip: bool,
}

pub fn w_sl_relation_suite(m: &CombMap, e: usize) -> Result<WslRelationReport, InvariantError> {
    let g = explicit_signs(m)?;
    let w = w_sl_extended(&g)?;
    let deleted = w_sl_extended(&g.delete_edge(e)?)?;
    let [h0, h1] = g.edge(e);
    let (u, v) = (g.vertex_of(h0), g.vertex_of(h1));
    let (mut edge_relation, mut loop_relation) = (None, None);
    if u != v {
        let b = g.sign(v) as i64;
        let contracted = w_sl_extended(&g.contract_edge(e)?)?;
        let flipped = w_sl_extended(&g.vertex_flip(v)?.contract_edge(e)?)?;
        edge_relation = Some(w == &(&contracted + &flipped.scale_int(b)) - &deleted);
    } else {
        let a = g.sign(u);
        let split = g.contract_edge(e)?;
        let new_vertex = split.num_vertices() - 1;
        let kept = u;
        let mut total = HalfLaurent::zero(Var::N);
        for t in [1i8, -1] {
            let signed = with_sign(&with_sign(&split, kept, a * t)?, new_vertex, t)?;
            total += &w_sl_extended(&signed)?;
        }
        let half_n2 = n_pow(2).scale(&rat(1, 2));
        loop_relation = Some(w == &(&half_n2 * &total) - &deleted);
    }
    let mut vertex_flip = true;
    for x in 0..g.num_vertices() {
        vertex_flip &= w_sl_extended(&g.vertex_flip(x)?)? == w.scale_int(g.sign(x) as i64);
    }
    Ok(WslRelationReport { edge: e, edge_relation, loop_relation, vertex_flip })
}

#[derive(Clone, Debug, Serialize)]
pub struct SoAsSlReport {
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

/// `Σ_{S ⊆ E} (−1)^{|S|} W_sl(τ_S G) = 2^{|V|} N^{|E|−|V|} W_so(G)` under parity signs.
pub fn so_as_sl_check(m: &CombMap) -> Result<SoAsSlReport, InvariantError> {
    let g = m.clone().without_signs();
    let ne = g.num_edges();
    if ne > 16 {
        return Err(InvariantError::TooLarge(ne));
    }
    let mut lhs = HalfLaurent::zero(Var::N);
    for mask in 0u32..1 << ne {
        let mut t = g.clone();
        for e in 0..ne {
            if mask >> e & 1 == 1 {
                t = t.twist_edge(e)?;
            }
        }
        let term = w_sl_brauer(&t)?;
        lhs += &if mask.count_ones() % 2 == 0 { term } else { -term };
    }
    let nv = g.num_vertices() as i64;
    let rhs = (&n_pow(ne as i64 - nv) * &w_so(&g)?).scale_int(1 << nv);
    Ok(SoAsSlReport { holds: lhs == rhs, lhs: lhs.to_string(), rhs: rhs.to_string() })
}

#[derive(Clone, Debug, Serialize)]
pub struct IhxReport {
    /// `W_so` of the three terms for each closure.
    pub terms: Vec<[String; 3]>,
    /// The three terms sum to zero for every closure.
    pub holds: bool,
}

/// Jacobi (IHX) check for `W_so`: two trivalent vertices `u = (x, y, e)`, `v = (e, z, d)`
/// summed over the cyclic orders `(x, y, z)` of three legs, inside two fixed closures.
pub fn ihx_check() -> Result<IhxReport, InvariantError> {
    // darts: internal edge 0-1, leg k has inner dart 2+2k and outer dart 3+2k (legs a,b,c,d)
    let leg_in = |k: usize| 2 + 2 * k;
    let leg_out = |k: usize| 3 + 2 * k;
    let closures: Vec<(Vec<Vec<usize>>, Vec<[usize; 2]>)> = vec![
        (vec![vec![leg_out(0), leg_out(1), leg_out(2), leg_out(3)]], vec![]),
        (vec![vec![leg_out(0), leg_out(3), 10], vec![leg_out(1), leg_out(2), 11]], vec![[10, 11]]),
    ];
    let mut terms = Vec::new();
    let mut holds = true;
    for (outer, extra) in closures {
        let mut vals = Vec::new();
        let mut sum = HalfLaurent::zero(Var::N);
        for (x, y, z) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            let mut vertices = vec![vec![leg_in(x), leg_in(y), 0], vec![1, leg_in(z), leg_in(3)]];
            vertices.extend(outer.iter().cloned());
            let mut edges = vec![[0, 1]];
            edges.extend((0..4).map(|k| [leg_in(k), leg_out(k)]));
            edges.extend(extra.iter().cloned());
            let w = w_so(&CombMap::new(vertices, edges)?)?;
            sum += &w;
            vals.push(w.to_string());
        }
        holds &= sum.is_zero();
        terms.push([vals[0].clone(), vals[1].clone(), vals[2].clone()]);
    }
    Ok(IhxReport { terms, holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn so_relations_on_fixtures() {
        for m in [fixtures::theta_p(), fixtures::theta_t(), fixtures::bouquet2_int(), fixtures::loop1(), fixtures::k4()]
        {
            for e in 0..m.num_edges() {
                let r = w_so_relation_suite(&m, e).unwrap();
                assert!(r.contraction && r.vertex_flip && r.subdivision, "{r:?}");
            }
        }
    }

    #[test]
    fn so_relations_on_twisted_maps() {
        let m = fixtures::bouquet2_int().with_twists(&[0]).unwrap();
        for e in 0..2 {
            assert!(w_so_relation_suite(&m, e).unwrap().contraction);
        }
        let t = fixtures::theta_p().with_twists(&[1]).unwrap();
        for e in 0..3 {
            assert!(w_so_relation_suite(&t, e).unwrap().contraction);
        }
    }

    #[test]
    fn sl_relations_on_fixtures() {
        for m in [fixtures::theta_p(), fixtures::theta_t(), fixtures::bouquet2_int(), fixtures::loop1(), fixtures::k4()]
        {
            for e in 0..m.num_edges() {
                let r = w_sl_relation_suite(&m, e).unwrap();
                assert!(r.edge_relation.unwrap_or(true) && r.loop_relation.unwrap_or(true) && r.vertex_flip, "{r:?}");
            }
        }
        let signed = fixtures::theta_p().with_signs(vec![1, -1]).unwrap();
        for e in 0..3 {
            assert_eq!(w_sl_relation_suite(&signed, e).unwrap().edge_relation, Some(true));
        }
    }

    #[test]
    fn connect_sums() {
        let (p, t) = (fixtures::theta_p(), fixtures::theta_t());
        let so = w_so_connect_sums(&p, &t).unwrap();
        assert_eq!((so.degree2, so.degree3), (Some(true), Some(true)));
        let sl = w_sl_connect_sums(&p, &fixtures::k4()).unwrap();
        assert_eq!((sl.degree2, sl.degree3), (Some(true), Some(true)));
    }

    #[test]
    fn so_as_sl_small() {
        for m in [fixtures::loop1(), fixtures::theta_p(), fixtures::bouquet2_int(), fixtures::bridge()] {
            let r = so_as_sl_check(&m).unwrap();
            assert!(r.holds, "{r:?}");
        }
    }

    #[test]
    fn ihx() {
        let r = ihx_check().unwrap();
        assert!(r.holds, "{r:?}");
        assert!(r.terms.iter().any(|t| t[0] != "0"));
    }
}
