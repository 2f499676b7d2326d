use serde::Serialize;

use crate::algebra::{HalfLaurent, Rational, Var};
use crate::ribbon::CombMap;

use super::{flow_polynomial, s_polynomial, Engine, InvariantError};

#[derive(Clone, Debug, Serialize)]
pub struct DegreeReport {
    /// `b1 − g`.
    pub bound: i64,
    /// Integer degree of `S`, `None` when `S = 0`.
    pub degree: Option<i64>,
    pub attained: bool,
    pub monic: bool,
    pub has_coloops: bool,
    /// Some coloop interlaces no other coloop, which forces `deg S < b1 − g`.
    pub lonely_coloop: bool,
    /// `t^{b1−g} S(t^{-1})`, rendered.
    pub reciprocal: String,
    pub reciprocal_is_polynomial: bool,
}

pub fn degree_report(m: &CombMap) -> Result<DegreeReport, InvariantError> {
    let s = s_polynomial(m, Engine::StateSum)?;
    let e = m.euler_data();
    let bound = e.b1 as i64 - e.genus as i64;
    let (degree, monic) = match s.degree_leading() {
        Some((k, c)) => (Some(k / 2), c == Rational::from_integer(1.into())),
        None => (None, false),
    };
    let coloops = m.coloops();
    let mut lonely = false;
    for &a in &coloops {
        let mut partner = false;
        for &b in &coloops {
            if m.interlaced(a, b)? {
                partner = true;
                break;
            }
        }
        if !partner {
            lonely = true;
            break;
        }
    }
    let reciprocal = s.reflect(2 * bound).retag(Var::T);
    Ok(DegreeReport {
        bound,
        degree,
        attained: degree == Some(bound),
        monic,
        has_coloops: !coloops.is_empty(),
        lonely_coloop: lonely,
        reciprocal_is_polynomial: reciprocal.is_polynomial(),
        reciprocal: reciprocal.to_string(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SpecialValueReport {
    pub s_at_0: String,
    pub s_at_1: String,
    pub s_at_4: String,
    pub f_at_0: String,
    pub f_at_4: String,
    /// `S(1) = 0` (for maps with at least one edge).
    pub s1_vanishes: bool,
    pub s0_equals_f0: bool,
    /// `S_{σ_v G}(4) = (-1)^{deg v} S_G(4)` for every vertex.
    pub flip_law_at_4: bool,
    pub has_bridge: bool,
    pub s_is_zero: bool,
    pub s0_is_zero: bool,
    /// `|S(4)| ≠ |F(4)|` certifies that no flip of the map is plane.
    pub no_plane_flip_certified: bool,
}

pub fn special_value_report(m: &CombMap) -> Result<SpecialValueReport, InvariantError> {
    let s = s_polynomial(m, Engine::StateSum)?;
    let f = flow_polynomial(m, Engine::StateSum)?;
    let ev = |p: &HalfLaurent, x: i64| p.eval_int(x);
    let (s0, s1, s4) = (ev(&s, 0)?, ev(&s, 1)?, ev(&s, 4)?);
    let (f0, f4) = (ev(&f, 0)?, ev(&f, 4)?);
    let mut flip_ok = true;
    for v in 0..m.num_vertices() {
        let flipped = s_polynomial(&m.vertex_flip(v)?, Engine::StateSum)?.eval_int(4)?;
        let expected = if m.degree(v).is_multiple_of(2) { s4.clone() } else { -s4.clone() };
        flip_ok &= flipped == expected;
    }
    let abs = |r: &Rational| if r < &Rational::from_integer(0.into()) { -r.clone() } else { r.clone() };
    Ok(SpecialValueReport {
        s1_vanishes: m.num_edges() == 0 || s1 == Rational::from_integer(0.into()),
        s0_equals_f0: s0 == f0,
        flip_law_at_4: flip_ok,
        has_bridge: m.has_bridge(),
        s_is_zero: s.is_zero(),
        s0_is_zero: s0 == Rational::from_integer(0.into()),
        no_plane_flip_certified: abs(&s4) != abs(&f4),
        s_at_0: s0.to_string(),
        s_at_1: s1.to_string(),
        s_at_4: s4.to_string(),
        f_at_0: f0.to_string(),
        f_at_4: f4.to_string(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ConnectSumReport {
    /// `S(A ⊔ B) = S(A) S(B)`.
    pub disjoint_union: bool,
    /// `S(A ∨ B) = S(A) S(B)`.
    pub wedge: bool,
    /// `(Q−1) S(A #₂ B) = S(A) S(B)` for both reconnection orientations.
    pub edge_sum: Option<bool>,
    /// The three-valent vertex connect-sum relation, when both maps have a degree-3 vertex.
    pub vertex_sum: Option<bool>,
}

/// Check the product formulas for `a` and `b` using their first edges and first
/// degree-three vertices.
pub fn connect_sum_report(a: &CombMap, b: &CombMap) -> Result<ConnectSumReport, InvariantError> {
    let s = |m: &CombMap| s_polynomial(m, Engine::StateSum);
    let (sa, sb) = (s(a)?, s(b)?);
    let prod = &sa * &sb;
    let disjoint_union = s(&a.disjoint_union(b))? == prod;
    let wedge = if a.num_vertices() > 0 && b.num_vertices() > 0 { s(&a.wedge(0, b, 0)?)? == prod } else { true };
    let q1 = HalfLaurent::from_coeffs(Var::BigQ, &[-1, 1]);
    let edge_sum = if a.num_edges() > 0 && b.num_edges() > 0 {
        let mut ok = true;
        for rev in [false, true] {
            ok &= &q1 * &s(&a.edge_connect_sum(0, b, 0, rev)?)? == prod;
        }
        Some(ok)
    } else {
        None
    };
    let va = (0..a.num_vertices()).find(|&v| a.degree(v) == 3);
    let vb = (0..b.num_vertices()).find(|&v| b.degree(v) == 3);
    let vertex_sum = match (va, vb) {
        (Some(va), Some(vb)) => Some(vertex_sum_relation(a, va, b, vb)?),
        _ => None,
    };
    Ok(ConnectSumReport { disjoint_union, wedge, edge_sum, vertex_sum })
}

/// `(Q−1)(Q−2) S(A #₃ σB) − 2(Q−1) S(A #₃ B) = S(A) S(σB) + S(σA) S(B)`.
fn vertex_sum_relation(a: &CombMap, va: usize, b: &CombMap, vb: usize) -> Result<bool, InvariantError> {
    let s = |m: &CombMap| s_polynomial(m, Engine::StateSum);
    let ha = a.rotation(va)[0];
    let hb = b.rotation(vb)[0];
    let fa = a.vertex_flip(va)?;
    let fb = b.vertex_flip(vb)?;
    let plain = a.vertex_connect_sum(va, ha, b, vb, hb)?;
    let twisted = a.vertex_connect_sum(va, ha, &fb, vb, hb)?;
    let q1 = HalfLaurent::from_coeffs(Var::BigQ, &[-1, 1]);
    let q2 = HalfLaurent::from_coeffs(Var::BigQ, &[-2, 1]);
    let lhs = &(&(&q1 * &q2) * &s(&twisted)?) - &(&q1.scale_int(2) * &s(&plain)?);
    let rhs = &(&s(a)? * &s(&fb)?) + &(&s(&fa)? * &s(b)?);
    Ok(lhs == rhs)
}
