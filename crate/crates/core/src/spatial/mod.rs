//! Virtual spatial graph diagrams and their Yamada-type polynomials.
//!
//! A diagram is a combinatorial map in which some 4-valent vertices are classical
//! crossings, each marked with the pair of opposite half-edges forming its over strand.
//! Virtual crossings are implicit in the rotation system.

mod drawing;
mod moves;
mod obstruction;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{eval_at_root_power, AlgebraError, CyclotomicElement, HalfLaurent, Rational, Var};
use crate::classical::{flow_recursive, s_poly_recursive, InvariantError, RecursionCache};
use crate::ribbon::{CanonKey, CombMap, MapError};
use crate::vgf::{serialize_vgf, VgfDocument};

pub use drawing::{insert_tangle, Drawing, Point};
pub use moves::{apply_move, face_sites, tangles, Move, TanglePair};
pub use obstruction::{obstruction_integral, obstruction_z2, ObstructionClass};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpatialError {
    #[error("invalid diagram: {0}")]
    Invalid(String),
    #[error("move does not apply: {0}")]
    Pattern(String),
    #[error("{0}")]
    Precondition(String),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Crossing {
    pub vertex: usize,
    /// Opposite half-edges of the over strand.
    pub over: [usize; 2],
}

/// How a crossing is replaced in a state of the expansion.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Resolution {
    /// Smoothing weighted by `q`: joins `(a,b)` and `(c,d)` for rotation `(a,b,c,d)` with over `{a,c}`.
    Positive,
    /// Smoothing weighted by `q^{-1}`: joins `(a,d)` and `(b,c)`.
    Negative,
    /// Flat 4-valent vertex, weighted by `-1`.
    Vertex,
    /// Strands pass straight through, as at a virtual crossing.
    Virtual,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpatialDiagram {
    map: CombMap,
    crossings: Vec<Crossing>,
}

impl SpatialDiagram {
    /// Validate crossing records; vertex signs are dropped.
    pub fn new(map: CombMap, mut crossings: Vec<Crossing>) -> Result<Self, SpatialError> {
        if map.has_twists() {
            return Err(SpatialError::Invalid("spatial diagrams are oriented; twisted edges are not allowed".into()));
        }
        crossings.sort();
        for w in crossings.windows(2) {
            if w[0].vertex == w[1].vertex {
                return Err(SpatialError::Invalid(format!("vertex {} carries two crossings", w[0].vertex)));
            }
        }
        for c in &crossings {
            if c.vertex >= map.num_vertices() {
                return Err(SpatialError::Invalid(format!("crossing vertex {} out of range", c.vertex)));
            }
            let rot = map.rotation(c.vertex);
            if rot.len() != 4 {
                return Err(SpatialError::Invalid(format!("crossing vertex {} has degree {}", c.vertex, rot.len())));
            }
            let pos = |h: usize| rot.iter().position(|&x| x == h);
            match (pos(c.over[0]), pos(c.over[1])) {
                (Some(p), Some(q)) if (p + 2) % 4 == q => {}
                _ => {
                    return Err(SpatialError::Invalid(format!(
                        "over pair {:?} is not opposite at vertex {}",
                        c.over, c.vertex
                    )))
                }
            }
        }
        Ok(SpatialDiagram { map: map.without_signs(), crossings })
    }

    pub fn crossingless(map: CombMap) -> Result<Self, SpatialError> {
        Self::new(map, Vec::new())
    }

    pub fn from_document(doc: &VgfDocument) -> Result<Self, SpatialError> {
        let crossings = doc.crossings.iter().map(|&(vertex, over)| Crossing { vertex, over }).collect();
        Self::new(doc.map.clone(), crossings)
    }

    pub fn to_vgf(&self) -> String {
        let cs: Vec<(usize, [usize; 2])> = self.crossings.iter().map(|c| (c.vertex, c.over)).collect();
        serialize_vgf(&self.map, &cs)
    }

    pub fn map(&self) -> &CombMap {
        &self.map
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn num_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn crossing_at(&self, v: usize) -> Option<&Crossing> {
        self.crossings.iter().find(|c| c.vertex == v)
    }

    /// Rotation read from the first over half-edge, so the over strand is `{a, c}`.
    pub fn crossing_rotation(&self, c: &Crossing) -> [usize; 4] {
        let rot = self.map.rotation(c.vertex);
        let p = rot.iter().position(|&h| h == c.over[0]).expect("validated crossing");
        [rot[p], rot[(p + 1) % 4], rot[(p + 2) % 4], rot[(p + 3) % 4]]
    }

    /// Half-edge opposite `h` at its crossing vertex.
    pub fn opposite(&self, h: usize) -> usize {
        let rot = self.map.rotation(self.map.vertex_of(h));
        let p = rot.iter().position(|&x| x == h).expect("half-edge at its vertex");
        rot[(p + 2) % rot.len()]
    }

    /// Replace crossing `i` according to `states[i]`.
    pub fn resolve(&self, states: &[Resolution]) -> Result<CombMap, SpatialError> {
        assert_eq!(states.len(), self.crossings.len(), "one state per crossing");
        let mut removed = Vec::new();
        let mut pairing = Vec::new();
        for (c, s) in self.crossings.iter().zip(states) {
            let [a, b, cc, d] = self.crossing_rotation(c);
            let pairs = match s {
                Resolution::Positive => [(a, b), (cc, d)],
                Resolution::Negative => [(a, d), (b, cc)],
                Resolution::Virtual => [(a, cc), (b, d)],
                Resolution::Vertex => continue,
            };
            removed.push(c.vertex);
            pairing.extend(pairs);
        }
        Ok(self.map.splice(&removed, &pairing)?)
    }

    /// The underlying ribbon graph: every classical crossing made virtual.
    pub fn underlying_map(&self) -> CombMap {
        self.resolve(&vec![Resolution::Virtual; self.crossings.len()]).expect("virtual resolution is valid")
    }

    /// Whether the diagram, crossings included, is drawn in the plane.
    pub fn is_classical_drawing(&self) -> bool {
        self.map.genus() == 0
    }

    /// Every non-crossing vertex of the underlying graph has degree three.
    pub fn is_cubic(&self) -> bool {
        let g = self.underlying_map();
        g.num_vertices() > 0 && (0..g.num_vertices()).all(|v| g.degree(v) == 3)
    }
}

/// Which polynomial the resolved maps are evaluated with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum YamadaVariant {
    /// `S` at `Q = q + 2 + q^{-1}`; sensitive to the rotation system.
    S,
    /// Flow polynomial at `Q = q + 2 + q^{-1}`.
    F,
}

impl YamadaVariant {
    pub fn name(self) -> &'static str {
        match self {
            YamadaVariant::S => "s",
            YamadaVariant::F => "f",
        }
    }
}

fn states_of(index: usize, count: usize) -> Vec<Resolution> {
    let mut i = index;
    (0..count)
        .map(|_| {
            let s = [Resolution::Positive, Resolution::Negative, Resolution::Vertex][i % 3];
            i /= 3;
            s
        })
        .collect()
}

fn state_weight(states: &[Resolution]) -> HalfLaurent {
    let mut half = 0;
    let mut sign = 1;
    for s in states {
        match s {
            Resolution::Positive => half += 2,
            Resolution::Negative => half -= 2,
            Resolution::Vertex => sign = -sign,
            Resolution::Virtual => {}
        }
    }
    HalfLaurent::monomial(Var::SmallQ, half, Rational::from_integer(sign.into()))
}

const MAX_CROSSINGS: usize = 12;

/// All `3^c` states of the crossing relation `crossing = q·(positive) + q^{-1}·(negative) − (vertex)`.
pub fn expand_crossings(d: &SpatialDiagram) -> Result<Vec<(HalfLaurent, CombMap)>, SpatialError> {
    let c = d.num_crossings();
    if c > MAX_CROSSINGS {
        return Err(SpatialError::Precondition(format!("{c} crossings exceed the expansion limit {MAX_CROSSINGS}")));
    }
    (0..3usize.pow(c as u32))
        .into_par_iter()
        .map(|i| {
            let states = states_of(i, c);
            Ok((state_weight(&states), d.resolve(&states)?))
        })
        .collect()
}

/// `R^S` or `R^F`, a Laurent polynomial in `q`.
///
/// States with isomorphic resolved maps are merged before evaluation.
pub fn yamada(d: &SpatialDiagram, variant: YamadaVariant) -> Result<HalfLaurent, SpatialError> {
    let terms = expand_crossings(d)?;
    let keyed: Vec<(CanonKey, HalfLaurent, CombMap)> =
        terms.into_par_iter().map(|(w, m)| (m.canonical_key(), w, m)).collect();
    let mut groups: BTreeMap<CanonKey, (HalfLaurent, CombMap)> = BTreeMap::new();
    for (k, w, m) in keyed {
        match groups.get_mut(&k) {
            Some(entry) => entry.0 += &w,
            None => {
                groups.insert(k, (w, m));
            }
        }
    }
    let parts: Result<Vec<HalfLaurent>, SpatialError> = groups
        .into_values()
        .collect::<Vec<_>>()
        .into_par_iter()
        .filter(|(w, _)| !w.is_zero())
        .map(|(w, m)| {
            let mut cache = RecursionCache::default();
            let p = match variant {
                YamadaVariant::S => s_poly_recursive(&m, &mut cache)?,
                YamadaVariant::F => flow_recursive(&m, &mut cache)?,
            };
            Ok(&w * &p.substitute_q_shift()?)
        })
        .collect();
    let mut total = HalfLaurent::zero(Var::SmallQ);
    for p in parts? {
        total += &p;
    }
    Ok(total)
}

/// `q ↦ q^{-1}`, the mirror convention for the crossing weights.
pub fn mirror(p: &HalfLaurent) -> HalfLaurent {
    p.reflect(0)
}

#[derive(Clone, Debug, Serialize)]
pub struct NonclassicalityReport {
    pub rs: String,
    pub rf: String,
    pub distinct: bool,
    pub cubic: bool,
    /// `nonclassical` when the two polynomials differ, otherwise `inconclusive`.
    pub verdict: String,
    /// For cubic diagrams a difference also rules out pliable vertex isotopy to a classical graph.
    pub pliable_obstructed: bool,
}

pub fn nonclassicality_report(d: &SpatialDiagram) -> Result<NonclassicalityReport, SpatialError> {
    let rs = yamada(d, YamadaVariant::S)?;
    let rf = yamada(d, YamadaVariant::F)?;
    let distinct = rs != rf;
    let cubic = d.is_cubic();
    Ok(NonclassicalityReport {
        rs: rs.to_string(),
        rf: rf.to_string(),
        distinct,
        cubic,
        verdict: if distinct { "nonclassical" } else { "inconclusive" }.to_string(),
        pliable_obstructed: distinct && cubic,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SpecialEvaluationReport {
    pub rs_at_minus_1: String,
    pub rf_at_minus_1: String,
    pub s_at_0: String,
    pub f_at_0: String,
    pub rs_at_1: String,
    pub s_at_4: String,
    pub rf_at_1: String,
    pub f_at_4: String,
    pub obstruction_zero: bool,
    /// `R^F(−1) = F(0) = S(0) = R^S(−1)` on the underlying map.
    pub minus_one_holds: bool,
    /// `R^S(1) = S(4)`.
    pub rs_at_1_holds: bool,
    /// `R^F(1) = F(4)`, only asserted when the mod-2 obstruction vanishes.
    pub rf_at_1_holds: Option<bool>,
}

impl SpecialEvaluationReport {
    pub fn all_hold(&self) -> bool {
        self.minus_one_holds && self.rs_at_1_holds && self.rf_at_1_holds != Some(false)
    }
}

pub fn special_evaluation_checks(d: &SpatialDiagram) -> Result<SpecialEvaluationReport, SpatialError> {
    let rs = yamada(d, YamadaVariant::S)?;
    let rf = yamada(d, YamadaVariant::F)?;
    let g = d.underlying_map();
    let mut cache = RecursionCache::default();
    let s = s_poly_recursive(&g, &mut cache)?;
    let f = flow_recursive(&g, &mut cache)?;
    let (rs_m1, rf_m1, rs_1, rf_1) = (rs.eval_int(-1)?, rf.eval_int(-1)?, rs.eval_int(1)?, rf.eval_int(1)?);
    let (s0, f0, s4, f4) = (s.eval_int(0)?, f.eval_int(0)?, s.eval_int(4)?, f.eval_int(4)?);
    let zero = obstruction_z2(d).is_zero();
    Ok(SpecialEvaluationReport {
        minus_one_holds: rs_m1 == s0 && s0 == f0 && f0 == rf_m1,
        rs_at_1_holds: rs_1 == s4,
        rf_at_1_holds: zero.then(|| rf_1 == f4),
        obstruction_zero: zero,
        rs_at_minus_1: rs_m1.to_string(),
        rf_at_minus_1: rf_m1.to_string(),
        s_at_0: s0.to_string(),
        f_at_0: f0.to_string(),
        rs_at_1: rs_1.to_string(),
        s_at_4: s4.to_string(),
        rf_at_1: rf_1.to_string(),
        f_at_4: f4.to_string(),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GoldenReport {
    /// Edges of the underlying graph.
    pub edges: usize,
    pub classical: bool,
    /// `R(ζ₁₀)` in the power basis of `ℚ(ζ₁₀)`.
    pub lhs: String,
    /// `φ^{|E|} R(ζ₁₀^{-2})²`.
    pub rhs: String,
    pub holds: bool,
}

/// Both sides of `R(e^{iπ/5}) = φ^{|E|} R(e^{-2iπ/5})²` for a cubic diagram, using `R^S`.
pub fn golden_identity_sides(d: &SpatialDiagram) -> Result<GoldenReport, SpatialError> {
    if !d.is_cubic() {
        return Err(SpatialError::Precondition("the golden identity needs a cubic diagram".into()));
    }
    let r = yamada(d, YamadaVariant::S)?;
    let edges = d.underlying_map().num_edges();
    let lhs = eval_at_root_power(&r, 10, 1)?;
    let at = eval_at_root_power(&r, 10, -2)?;
    let phi = CyclotomicElement::root_power(10, 1).add(&CyclotomicElement::root_power(10, -1))?;
    let rhs = phi.pow(edges as u32).mul(&at.mul(&at)?)?;
    Ok(GoldenReport {
        edges,
        classical: d.is_classical_drawing(),
        holds: lhs == rhs,
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
    })
}

/// The golden identity on a classical cubic diagram.
pub fn golden_identity_check(d: &SpatialDiagram) -> Result<GoldenReport, SpatialError> {
    if !d.is_classical_drawing() {
        return Err(SpatialError::Precondition("the diagram has virtual crossings (its map is not plane)".into()));
    }
    golden_identity_sides(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn q_poly(lowest: i64, coeffs: &[i64]) -> HalfLaurent {
        HalfLaurent::from_coeffs(Var::SmallQ, coeffs).shift(2 * lowest)
    }

    fn spatial(text: &str) -> SpatialDiagram {
        SpatialDiagram::from_document(&fixtures::document(text)).unwrap()
    }

    #[test]
    fn expansion_sizes_and_weights() {
        let theta = spatial(fixtures::THETA_T);
        assert_eq!(expand_crossings(&theta).unwrap().len(), 1);
        let curl = spatial(fixtures::UNKNOT_CURL);
        let terms = expand_crossings(&curl).unwrap();
        let weights: Vec<String> = terms.iter().map(|(w, _)| w.to_string()).collect();
        assert_eq!(weights, ["q", "q^-1", "-1"]);
    }

    #[test]
    fn toroidal_theta_polynomials() {
        let theta = spatial(fixtures::THETA_T);
        let ones = q_poly(-1, &[1, 1, 1]);
        assert_eq!(yamada(&theta, YamadaVariant::S).unwrap(), ones.scale_int(-2));
        assert_eq!(yamada(&theta, YamadaVariant::F).unwrap(), &q_poly(-1, &[1, 0, 1]) * &ones);
        let r = nonclassicality_report(&theta).unwrap();
        assert_eq!(r.verdict, "nonclassical");
        assert!(r.pliable_obstructed);
        let p = nonclassicality_report(&spatial(fixtures::THETA_P)).unwrap();
        assert_eq!(p.verdict, "inconclusive");
    }

    #[test]
    fn unknot_values() {
        let ones = q_poly(-1, &[1, 1, 1]);
        let cycle = SpatialDiagram::crossingless(fixtures::cycle(3)).unwrap();
        assert_eq!(yamada(&cycle, YamadaVariant::S).unwrap(), ones);
        assert_eq!(yamada(&cycle, YamadaVariant::F).unwrap(), ones);
        let curl = spatial(fixtures::UNKNOT_CURL);
        let r = yamada(&curl, YamadaVariant::F).unwrap();
        assert_eq!(r.num_terms(), 3);
        assert_eq!(yamada(&curl, YamadaVariant::S).unwrap(), r);
    }

    #[test]
    fn special_values_on_fixtures() {
        for text in [fixtures::THETA_T, fixtures::THETA_CROSSED, fixtures::UNKNOT_CURL, fixtures::K4_SQUARE] {
            let r = special_evaluation_checks(&spatial(text)).unwrap();
            assert!(r.all_hold(), "{r:?}");
        }
        let t = special_evaluation_checks(&spatial(fixtures::THETA_T)).unwrap();
        assert_eq!(t.rs_at_1, "-6");
    }

    #[test]
    fn golden_identity_on_classical_fixtures() {
        for text in [fixtures::THETA_P, fixtures::K4, fixtures::THETA_CROSSED, fixtures::K4_SQUARE] {
            let d = spatial(text);
            assert!(d.is_classical_drawing(), "{text}");
            assert!(golden_identity_check(&d).unwrap().holds, "{text}");
        }
        let t = spatial(fixtures::THETA_T);
        assert!(golden_identity_check(&t).is_err());
        assert!(!golden_identity_sides(&t).unwrap().holds);
    }
}
