use super::CombMap;

/// Isomorphism-invariant signature of a map (orientation preserving, respecting
/// twists and explicit signs).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonKey(Vec<u32>);

struct Labelling {
    order: Vec<usize>,
    code: Vec<u32>,
}

impl CombMap {
    fn sign_code(&self, v: usize) -> u32 {
        match self.signs() {
            Some(s) => {
                if s[v] > 0 {
                    1
                } else {
                    2
                }
            }
            None => 0,
        }
    }

    /// Breadth-first relabelling from `start`, following `σ` then `α`.
    fn labelling_from(&self, start: usize, label: &mut [u32]) -> Labelling {
        let mut order = vec![start];
        label[start] = 0;
        let mut i = 0;
        while i < order.len() {
            let x = order[i];
            for y in [self.sigma(x), self.alpha(x)] {
                if label[y] == u32::MAX {
                    label[y] = order.len() as u32;
                    order.push(y);
                }
            }
            i += 1;
        }
        let mut code = Vec::with_capacity(4 * order.len());
        for &x in &order {
            code.push(label[self.sigma(x)]);
            code.push(label[self.alpha(x)]);
            code.push(u32::from(self.is_twisted(self.edge_of(x))));
            code.push(self.sign_code(self.vertex_of(x)));
        }
        for &x in &order {
            label[x] = u32::MAX;
        }
        Labelling { order, code }
    }

    /// Minimal labelling of each non-trivial component together with the number of
    /// starting half-edges that attain it (the automorphism count).
    fn component_labellings(&self) -> Vec<(Labelling, usize)> {
        let n = self.num_half_edges();
        let mut label = vec![u32::MAX; n];
        let mut done = vec![false; n];
        let mut out: Vec<(Labelling, usize)> = Vec::new();
        for seed in 0..n {
            if done[seed] {
                continue;
            }
            let first = self.labelling_from(seed, &mut label);
            for &x in &first.order {
                done[x] = true;
            }
            let darts = first.order.clone();
            let mut best = first;
            let mut ties = 1;
            for &d in darts.iter().skip(1) {
                let cand = self.labelling_from(d, &mut label);
                match cand.code.cmp(&best.code) {
                    std::cmp::Ordering::Less => {
                        best = cand;
                        ties = 1;
                    }
                    std::cmp::Ordering::Equal => ties += 1,
                    std::cmp::Ordering::Greater => {}
                }
            }
            out.push((best, ties));
        }
        out.sort_by(|a, b| a.0.code.cmp(&b.0.code));
        out
    }

    pub fn canonical_key(&self) -> CanonKey {
        let comps = self.component_labellings();
        let mut key = vec![comps.len() as u32];
        for (l, _) in &comps {
            key.push(l.code.len() as u32);
            key.extend_from_slice(&l.code);
        }
        let mut iso: Vec<u32> =
            (0..self.num_vertices()).filter(|&v| self.degree(v) == 0).map(|v| self.sign_code(v)).collect();
        iso.sort_unstable();
        key.push(iso.len() as u32);
        key.extend(iso);
        CanonKey(key)
    }

    /// Number of orientation-preserving automorphisms of a connected map with edges.
    pub fn automorphism_count(&self) -> usize {
        let comps = self.component_labellings();
        assert_eq!(comps.len(), 1, "automorphism_count expects one component with edges");
        comps[0].1
    }

    pub fn is_isomorphic(&self, other: &CombMap) -> bool {
        self.num_half_edges() == other.num_half_edges()
            && self.num_vertices() == other.num_vertices()
            && self.canonical_key() == other.canonical_key()
    }

    /// Relabelled copy in canonical form: isomorphic maps give identical values.
    pub fn canonical_form(&self) -> CombMap {
        let comps = self.component_labellings();
        let n = self.num_half_edges();
        let mut new_label = vec![0usize; n];
        let mut next = 0;
        for (l, _) in &comps {
            for &x in &l.order {
                new_label[x] = next;
                next += 1;
            }
        }
        let mut rot: Vec<(Vec<usize>, i8, bool)> = Vec::new();
        for v in 0..self.num_vertices() {
            let r: Vec<usize> = self.rotation(v).iter().map(|&h| new_label[h]).collect();
            let sign = self.signs().map(|s| s[v]).unwrap_or(0);
            if r.is_empty() {
                rot.push((r, sign, true));
                continue;
            }
            let p = (0..r.len()).min_by_key(|&i| r[i]).unwrap();
            let r = (0..r.len()).map(|i| r[(p + i) % r.len()]).collect();
            rot.push((r, sign, false));
        }
        rot.sort_by(|a, b| (a.2, a.0.first(), a.1).cmp(&(b.2, b.0.first(), b.1)));
        let mut edges: Vec<([usize; 2], bool)> = self
            .edge_list()
            .iter()
            .enumerate()
            .map(|(e, &[a, b])| {
                let (x, y) = (new_label[a], new_label[b]);
                ([x.min(y), x.max(y)], self.is_twisted(e))
            })
            .collect();
        edges.sort();
        let vertices = rot.iter().map(|r| r.0.clone()).collect();
        let signs = self.signs().map(|_| rot.iter().map(|r| r.1).collect());
        let mut m = CombMap::new(vertices, edges.iter().map(|e| e.0).collect()).expect("relabelling is valid");
        m.set_twist_flags(edges.iter().map(|e| e.1).collect());
        m.set_signs_raw(signs);
        m
    }
}

#[cfg(test)]
mod tests {
    use crate::fixtures;

    #[test]
    fn canonical_form_is_stable_under_relabelling() {
        let t = fixtures::theta_t();
        let c = t.canonical_form();
        assert_eq!(c, c.canonical_form());
        assert!(c.is_isomorphic(&t));
        assert!(!t.is_isomorphic(&fixtures::theta_p()));
    }

    #[test]
    fn theta_automorphisms() {
        // the plane theta has rotational symmetry of order 3 and the swap of its vertices
        assert_eq!(fixtures::theta_p().automorphism_count(), 6);
    }
}
