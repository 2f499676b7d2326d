use rayon::prelude::*;

use crate::algebra::{HalfLaurent, IntAccumulator, Var};
use crate::ribbon::{CombMap, UnionFind};

use super::InvariantError;

/// Largest edge count accepted by the subset expansions.
pub const MAX_STATE_SUM_EDGES: usize = 30;
const PARALLEL_FROM: usize = 14;

/// Topology of the spanning sub-map `G − T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubStats {
    pub deleted: u32,
    pub components: u32,
    pub b1: u32,
    pub faces: u32,
    pub genus: u32,
}

/// Recomputes the topology of `G − T` for edge subsets `T` given as bit masks.
pub struct SubsetScanner {
    nv: usize,
    ne: usize,
    sigma: Vec<usize>,
    alpha: Vec<usize>,
    edge_of: Vec<usize>,
    ends: Vec<(usize, usize)>,
    first_dart: Vec<Option<usize>>,
}

impl SubsetScanner {
    pub fn new(map: &CombMap) -> Result<Self, InvariantError> {
        if map.has_twists() {
            return Err(InvariantError::Twisted);
        }
        if map.num_edges() > MAX_STATE_SUM_EDGES {
            return Err(InvariantError::TooLarge(map.num_edges()));
        }
        let n = map.num_half_edges();
        Ok(SubsetScanner {
            nv: map.num_vertices(),
            ne: map.num_edges(),
            sigma: (0..n).map(|h| map.sigma(h)).collect(),
            alpha: (0..n).map(|h| map.alpha(h)).collect(),
            edge_of: (0..n).map(|h| map.edge_of(h)).collect(),
            ends: (0..map.num_edges()).map(|e| map.endpoints(e)).collect(),
            first_dart: (0..map.num_vertices()).map(|v| map.rotation(v).first().copied()).collect(),
        })
    }

    pub fn num_edges(&self) -> usize {
        self.ne
    }

    pub fn stats(&self, deleted: u64, seen: &mut Vec<bool>) -> SubStats {
        let n = 2 * self.ne;
        let gone = |h: usize| deleted >> self.edge_of[h] & 1 == 1;
        let mut uf = UnionFind::new(self.nv);
        let mut kept = 0u32;
        for e in 0..self.ne {
            if deleted >> e & 1 == 0 {
                kept += 1;
                uf.union(self.ends[e].0, self.ends[e].1);
            }
        }
        let (_, b0) = uf.labels();
        seen.clear();
        seen.resize(n, false);
        let mut faces = 0u32;
        for start in 0..n {
            if seen[start] || gone(start) {
                continue;
            }
            faces += 1;
            let mut h = start;
            while !seen[h] {
                seen[h] = true;
                let mut x = self.sigma[self.alpha[h]];
                while gone(x) {
                    x = self.sigma[x];
                }
                h = x;
            }
        }
        // vertices left without half-edges are isolated and bound one face each
        for v in 0..self.nv {
            match self.first_dart[v] {
                None => faces += 1,
                Some(h0) => {
                    let mut h = h0;
                    let mut all_gone = true;
                    loop {
                        if !gone(h) {
                            all_gone = false;
                            break;
                        }
                        h = self.sigma[h];
                        if h == h0 {
                            break;
                        }
                    }
                    if all_gone {
                        faces += 1;
                    }
                }
            }
        }
        let b0 = b0 as u32;
        let b1 = kept + b0 - self.nv as u32;
        let euler_genus = 2 * b0 + kept - self.nv as u32 - faces;
        SubStats { deleted: deleted.count_ones(), components: b0, b1, faces, genus: euler_genus / 2 }
    }

    /// `Σ_T (-1)^{|T|} var^{term(T)/2}` where `term` returns a half-step exponent.
    pub fn signed_sum(&self, var: Var, term: impl Fn(&SubStats) -> i64 + Sync) -> HalfLaurent {
        let total: u64 = 1 << self.ne;
        let fold = |range: std::ops::Range<u64>| {
            let mut acc = IntAccumulator::new();
            let mut seen = Vec::new();
            for mask in range {
                let s = self.stats(mask, &mut seen);
                acc.add(term(&s), if s.deleted.is_multiple_of(2) { 1 } else { -1 });
            }
            acc
        };
        if self.ne < PARALLEL_FROM {
            return fold(0..total).into_poly(var);
        }
        let chunk = 1u64 << 10;
        let parts: Vec<IntAccumulator> =
            (0..total / chunk).into_par_iter().map(|c| fold(c * chunk..(c + 1) * chunk)).collect();
        let mut acc = IntAccumulator::new();
        for p in &parts {
            acc.merge(p);
        }
        acc.into_poly(var)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn stats_agree_with_map_operations() {
        let m = fixtures::k33_std();
        let sc = SubsetScanner::new(&m).unwrap();
        let mut seen = Vec::new();
        for mask in [0u64, 1, 5, 0b101010101, 0b111111111] {
            let s = sc.stats(mask, &mut seen);
            let sub = m.delete_edges_where(|e| mask >> e & 1 == 1).euler_data();
            assert_eq!(s.faces as usize, sub.faces);
            assert_eq!(s.components as usize, sub.components);
            assert_eq!(s.genus as usize, sub.genus);
            assert_eq!(s.b1 as usize, sub.b1);
        }
    }
}
