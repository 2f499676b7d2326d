use rayon::prelude::*;

use crate::algebra::{HalfLaurent, IntAccumulator, Var};
use crate::classical::InvariantError;
use crate::ribbon::{CombMap, UnionFind};

use super::{br2_e, br2_id, BrauerError, BrauerMatching, BrauerVector};

/// One alternative at a site: an integer monomial, the strand pairs it contributes and
/// any closed loops it carries outright.
#[derive(Clone, Debug)]
pub struct LocalTerm {
    pub coeff: i64,
    pub half: i64,
    pub pairs: Vec<(usize, usize)>,
    pub loops: u32,
}

/// A closed strand diagram assembled from local pieces. Each site picks one of its
/// terms; the value is the sum over all choices of the product of coefficients times
/// `loop_value^{#loops}`.
#[derive(Clone, Debug)]
pub struct StrandNetwork {
    var: Var,
    points: usize,
    /// Half-steps of `var` contributed by one closed loop.
    loop_half: i64,
    sites: Vec<Vec<LocalTerm>>,
}

const PARALLEL_STATES: usize = 1 << 12;

impl StrandNetwork {
    pub fn new(var: Var, points: usize, loop_half: i64) -> Self {
        StrandNetwork { var, points, loop_half, sites: Vec::new() }
    }

    pub fn push_site(&mut self, terms: Vec<LocalTerm>) {
        self.sites.push(terms);
    }

    /// Add a site from a Brauer vector in `c`, placing diagram point `i` at network point
    /// `placement[i]`. `c` is read as `var^{loop_half/2}`.
    pub fn push_vector(&mut self, v: &BrauerVector, placement: &[usize]) -> Result<(), BrauerError> {
        if placement.len() != v.bottom() + v.top() {
            return Err(BrauerError::Arity("placement does not cover the diagram".into()));
        }
        let mut terms = Vec::new();
        for (m, k) in v.terms() {
            let pairs: Vec<(usize, usize)> = m.pairs().iter().map(|&(a, b)| (placement[a], placement[b])).collect();
            for (h, c) in k.terms() {
                if !c.is_integer() {
                    return Err(BrauerError::Unsupported(format!("non-integer coefficient {c}")));
                }
                if (h * self.loop_half) % 2 != 0 {
                    return Err(BrauerError::Unsupported("odd power of c^{1/2}".into()));
                }
                let coeff: i64 =
                    c.to_integer().try_into().map_err(|_| BrauerError::Unsupported("coefficient overflow".into()))?;
                terms.push(LocalTerm { coeff, half: h * self.loop_half / 2, pairs: pairs.clone(), loops: 0 });
            }
        }
        self.sites.push(terms);
        Ok(())
    }

    pub fn num_states(&self) -> usize {
        self.sites.iter().map(|s| s.len()).product()
    }

    fn eval_state(&self, mut idx: usize, uf: &mut UnionFind) -> (i128, i64) {
        *uf = UnionFind::new(self.points);
        let mut coeff: i128 = 1;
        let mut half = 0i64;
        let mut extra = 0u32;
        for site in &self.sites {
            let t = &site[idx % site.len()];
            idx /= site.len();
            coeff *= t.coeff as i128;
            half += t.half;
            extra += t.loops;
            for &(a, b) in &t.pairs {
                uf.union(a, b);
            }
        }
        let (_, comps) = uf.labels();
        (coeff, half + self.loop_half * (comps as i64 + extra as i64))
    }

    pub fn evaluate(&self) -> HalfLaurent {
        let total = self.num_states();
        let fold = |range: std::ops::Range<usize>| {
            let mut acc = IntAccumulator::new();
            let mut uf = UnionFind::new(self.points);
            for s in range {
                let (c, h) = self.eval_state(s, &mut uf);
                acc.add(h, c);
            }
            acc
        };
        if total < PARALLEL_STATES {
            return fold(0..total).into_poly(self.var);
        }
        let chunk = 1024;
        let parts: Vec<IntAccumulator> =
            (0..total.div_ceil(chunk)).into_par_iter().map(|c| fold(c * chunk..((c + 1) * chunk).min(total))).collect();
        let mut acc = IntAccumulator::new();
        for p in &parts {
            acc.merge(p);
        }
        acc.into_poly(self.var)
    }
}

/// Strand point of the left (`side = 0`) or right (`side = 1`) side of dart `h`.
pub(crate) fn strand(h: usize, side: usize) -> usize {
    2 * h + side
}

/// Placement of a two-strand edge piece: bottom `(aL, aR)`, top `(bR, bL)`, so the
/// identity diagram runs each side of the ribbon straight through.
pub(crate) fn edge_placement(m: &CombMap, e: usize) -> [usize; 4] {
    let [a, b] = m.edge(e);
    [strand(a, 0), strand(a, 1), strand(b, 1), strand(b, 0)]
}

/// Matching at a vertex joining the right side of each dart to the left side of the
/// next dart counterclockwise, or of the previous one when `reversed`.
pub(crate) fn vertex_pairs(rotation: &[usize], reversed: bool) -> Vec<(usize, usize)> {
    let k = rotation.len();
    (0..k)
        .map(|i| {
            let j = if reversed { (i + k - 1) % k } else { (i + 1) % k };
            (strand(rotation[i], 1), strand(rotation[j], 0))
        })
        .collect()
}

/// S-polynomial through the Brauer functor: every edge becomes `c·id − e`, every vertex
/// its cyclic matching times `c⁻¹`, and a closed loop is `c = Q^{1/2}`.
pub fn phi_s_polynomial(m: &CombMap) -> Result<HalfLaurent, InvariantError> {
    if m.has_twists() {
        return Err(InvariantError::Twisted);
    }
    let mut net = StrandNetwork::new(Var::BigQ, 2 * m.num_half_edges(), 1);
    for v in 0..m.num_vertices() {
        let rot = m.rotation(v);
        net.push_site(vec![LocalTerm {
            coeff: 1,
            half: -1,
            pairs: vertex_pairs(rot, false),
            loops: u32::from(rot.is_empty()),
        }]);
    }
    let edge = br2_id().scale(&HalfLaurent::var_pow(Var::C, 1)).sub(&br2_e()).expect("two-strand arity");
    for e in 0..m.num_edges() {
        net.push_vector(&edge, &edge_placement(m, e)).map_err(|err| InvariantError::Precondition(err.to_string()))?;
    }
    Ok(net.evaluate())
}

/// Vertex matching as a Brauer diagram with all points on the bottom.
pub fn vertex_diagram(degree: usize, reversed: bool) -> BrauerMatching {
    let rot: Vec<usize> = (0..degree).collect();
    BrauerMatching::from_pairs(2 * degree, 0, &vertex_pairs(&rot, reversed)).expect("vertex matching is perfect")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classical::{s_polynomial, Engine};
    use crate::fixtures;

    #[test]
    fn phi_matches_state_sum_on_fixtures() {
        for m in [
            fixtures::theta_p(),
            fixtures::theta_t(),
            fixtures::loop1(),
            fixtures::bouquet2_int(),
            fixtures::bridge(),
            fixtures::k33_std(),
            fixtures::k4(),
            CombMap::isolated(2),
        ] {
            assert_eq!(phi_s_polynomial(&m).unwrap(), s_polynomial(&m, Engine::StateSum).unwrap());
        }
    }

    #[test]
    fn vertex_diagram_shapes() {
        assert_eq!(vertex_diagram(1, false).pairs(), vec![(0, 1)]);
        assert_eq!(vertex_diagram(2, false), vertex_diagram(2, true));
        assert_ne!(vertex_diagram(3, false), vertex_diagram(3, true));
    }
}
