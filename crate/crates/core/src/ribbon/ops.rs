use super::{parity_sign, CombMap, MapError};

impl CombMap {
    fn check_edge(&self, e: usize) -> Result<(), MapError> {
        if e >= self.num_edges() {
            return Err(MapError::NoSuchEdge(e));
        }
        Ok(())
    }

    fn check_vertex(&self, v: usize) -> Result<(), MapError> {
        if v >= self.num_vertices() {
            return Err(MapError::NoSuchVertex(v));
        }
        Ok(())
    }

    /// Delete every edge for which `pred` holds; vertices are kept.
    pub fn delete_edges_where(&self, pred: impl Fn(usize) -> bool) -> CombMap {
        let (vertices, edges, twisted, signs) = self.parts();
        let gone: Vec<bool> = (0..edges.len()).map(&pred).collect();
        if !gone.iter().any(|&g| g) {
            return self.clone();
        }
        let vertices =
            vertices.into_iter().map(|rot| rot.into_iter().filter(|&h| !gone[self.edge_of(h)]).collect()).collect();
        let keep: Vec<usize> = (0..edges.len()).filter(|&e| !gone[e]).collect();
        let new_edges = keep.iter().map(|&e| edges[e]).collect();
        let new_twists = keep.iter().map(|&e| twisted[e]).collect();
        CombMap::from_sparse(vertices, new_edges, new_twists, signs)
    }

    pub fn delete_edge(&self, e: usize) -> Result<CombMap, MapError> {
        self.check_edge(e)?;
        Ok(self.delete_edges_where(|f| f == e))
    }

    /// Reverse the rotation at `v` (no twist bookkeeping).
    pub fn vertex_flip(&self, v: usize) -> Result<CombMap, MapError> {
        self.check_vertex(v)?;
        let (mut vertices, edges, twisted, signs) = self.parts();
        vertices[v].reverse();
        Ok(CombMap::from_sparse(vertices, edges, twisted, signs))
    }

    /// Reverse the rotation at every vertex in `set`.
    pub fn flip_vertices(&self, set: &[usize]) -> CombMap {
        let (mut vertices, edges, twisted, signs) = self.parts();
        for &v in set {
            vertices[v].reverse();
        }
        CombMap::from_sparse(vertices, edges, twisted, signs)
    }

    /// Reverse the rotation at `v` and toggle the twist of every incident half-edge.
    ///
    /// This is an equivalence of ribbon graphs (loops are toggled twice).
    pub fn equivalence_flip(&self, v: usize) -> Result<CombMap, MapError> {
        self.check_vertex(v)?;
        let (mut vertices, edges, mut twisted, signs) = self.parts();
        for &h in &vertices[v] {
            let e = self.edge_of(h);
            twisted[e] = !twisted[e];
        }
        vertices[v].reverse();
        Ok(CombMap::from_sparse(vertices, edges, twisted, signs))
    }

    pub fn twist_edge(&self, e: usize) -> Result<CombMap, MapError> {
        self.check_edge(e)?;
        let mut out = self.clone();
        let mut flags = self.twist_flags().to_vec();
        flags[e] = !flags[e];
        out.set_twist_flags(flags);
        Ok(out)
    }

    /// Partial dual with respect to a single edge.
    ///
    /// For an untwisted edge the rotation becomes `σ ∘ α_e`: the successors of the two
    /// half-edges of `e` are exchanged. Merging two vertices keeps the lower index and the
    /// product of signs; splitting a vertex keeps the part containing the first half-edge in
    /// place and appends the other with sign `+1`. A twisted loop `(a X b Y)` becomes
    /// `(a X b Y⁻¹)` with the half-edges of `Y` toggled. A twisted non-loop edge is first
    /// untwisted by an equivalence flip of the endpoint of its second half-edge.
    pub fn partial_dual(&self, e: usize) -> Result<CombMap, MapError> {
        self.check_edge(e)?;
        if self.is_twisted(e) {
            if self.is_loop(e) {
                return Ok(self.twisted_loop_dual(e));
            }
            let v = self.vertex_of(self.edge(e)[1]);
            return self.equivalence_flip(v)?.partial_dual(e);
        }
        let [a, b] = self.edge(e);
        let (u, v) = (self.vertex_of(a), self.vertex_of(b));
        let new_succ = |h: usize| -> usize {
            if h == a {
                self.sigma(b)
            } else if h == b {
                self.sigma(a)
            } else {
                self.sigma(h)
            }
        };
        let cycle = |start: usize| -> Vec<usize> {
            let mut out = vec![start];
            let mut h = new_succ(start);
            while h != start {
                out.push(h);
                h = new_succ(h);
            }
            out
        };
        let (mut vertices, edges, twisted, mut signs) = self.parts();
        if u != v {
            let (keep, drop) = (u.min(v), u.max(v));
            vertices[keep] = cycle(a);
            vertices.remove(drop);
            if let Some(s) = signs.as_mut() {
                s[keep] *= s[drop];
                s.remove(drop);
            }
        } else {
            vertices[u] = cycle(a);
            vertices.push(cycle(b));
            if let Some(s) = signs.as_mut() {
                s.push(1);
            }
        }
        Ok(CombMap::from_sparse(vertices, edges, twisted, signs))
    }

    fn twisted_loop_dual(&self, e: usize) -> CombMap {
        let [a, b] = self.edge(e);
        let v = self.vertex_of(a);
        let rot = self.rotation(v);
        let pa = rot.iter().position(|&h| h == a).unwrap();
        let d = rot.len();
        let seq: Vec<usize> = (0..d).map(|i| rot[(pa + i) % d]).collect();
        let pb = seq.iter().position(|&h| h == b).unwrap();
        let (mut vertices, edges, mut twisted, signs) = self.parts();
        let mut new_rot: Vec<usize> = seq[..=pb].to_vec();
        let tail: Vec<usize> = seq[pb + 1..].iter().rev().copied().collect();
        for &h in &tail {
            let f = self.edge_of(h);
            twisted[f] = !twisted[f];
        }
        new_rot.extend(tail);
        vertices[v] = new_rot;
        CombMap::from_sparse(vertices, edges, twisted, signs)
    }

    /// Partial dual with respect to a set of edges (applied one at a time).
    pub fn partial_dual_set(&self, set: &[usize]) -> Result<CombMap, MapError> {
        let mut m = self.clone();
        for &e in set {
            m = m.partial_dual(e)?;
        }
        Ok(m)
    }

    /// Contraction `G/e = δ_e(G) − e`. Contracting an untwisted loop splits its vertex.
    pub fn contract_edge(&self, e: usize) -> Result<CombMap, MapError> {
        let d = self.partial_dual(e)?;
        d.delete_edge(e)
    }

    /// Geometric dual: vertices are the faces `σ∘α`; isolated vertices stay isolated.
    pub fn geometric_dual(&self) -> Result<CombMap, MapError> {
        if self.has_twists() {
            return Err(MapError::Unsupported("geometric dual of a twisted map".into()));
        }
        let n = self.num_half_edges();
        let mut seen = vec![false; n];
        let mut vertices = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut h = start;
            while !seen[h] {
                seen[h] = true;
                cyc.push(h);
                h = self.sigma(self.alpha(h));
            }
            vertices.push(cyc);
        }
        vertices.extend(std::iter::repeat_with(Vec::new).take(self.isolated_vertices()));
        CombMap::new(vertices, self.edge_list().to_vec())
    }

    /// Insert a degree-two vertex in the middle of `e`; the twist stays on the first half.
    pub fn subdivide_edge(&self, e: usize, sign: i8) -> Result<CombMap, MapError> {
        self.check_edge(e)?;
        let (mut vertices, mut edges, mut twisted, mut signs) = self.parts();
        let m = edges.len();
        let [a, b] = edges[e];
        let (x, y) = (2 * m, 2 * m + 1);
        edges[e] = [a, x];
        edges.push([y, b]);
        twisted.push(false);
        vertices.push(vec![x, y]);
        if signs.is_none() && sign != parity_sign(2) {
            signs = Some((0..self.num_vertices()).map(|v| self.sign(v)).collect());
        }
        if let Some(s) = signs.as_mut() {
            s.push(sign);
        }
        Ok(CombMap::from_sparse(vertices, edges, twisted, signs))
    }

    pub fn disjoint_union(&self, other: &CombMap) -> CombMap {
        let off = self.num_half_edges();
        let (mut vertices, mut edges, mut twisted, signs_a) = self.parts();
        let (vb, eb, tb, signs_b) = other.parts();
        vertices.extend(vb.into_iter().map(|r| r.into_iter().map(|h| h + off).collect()));
        edges.extend(eb.into_iter().map(|[x, y]| [x + off, y + off]));
        twisted.extend(tb);
        let signs = if signs_a.is_none() && signs_b.is_none() {
            None
        } else {
            let mut s: Vec<i8> = (0..self.num_vertices()).map(|v| self.sign(v)).collect();
            s.extend((0..other.num_vertices()).map(|v| other.sign(v)));
            Some(s)
        };
        CombMap::from_sparse(vertices, edges, twisted, signs)
    }

    /// One-point join identifying `va` with `vb`; the merged rotation is `va`'s then `vb`'s.
    pub fn wedge(&self, va: usize, other: &CombMap, vb: usize) -> Result<CombMap, MapError> {
        self.check_vertex(va)?;
        other.check_vertex(vb)?;
        let u = self.disjoint_union(other);
        let vb = vb + self.num_vertices();
        let (mut vertices, edges, twisted, mut signs) = u.parts();
        let tail = std::mem::take(&mut vertices[vb]);
        vertices[va].extend(tail);
        vertices.remove(vb);
        if let Some(s) = signs.as_mut() {
            s[va] *= s[vb];
            s.remove(vb);
        }
        Ok(CombMap::from_sparse(vertices, edges, twisted, signs))
    }

    /// Remove `removed` vertices and reconnect their half-edges according to `pairing`.
    ///
    /// Strands that close up without meeting a surviving vertex become separate
    /// single-vertex loops (a circle carries a degree-two vertex). Twists along a new
    /// strand are summed mod 2.
    pub fn splice(&self, removed: &[usize], pairing: &[(usize, usize)]) -> Result<CombMap, MapError> {
        let n = self.num_half_edges();
        let mut in_removed = vec![false; n];
        let mut gone_vertex = vec![false; self.num_vertices()];
        for &v in removed {
            self.check_vertex(v)?;
            gone_vertex[v] = true;
            for &h in self.rotation(v) {
                in_removed[h] = true;
            }
        }
        let mut partner = vec![usize::MAX; n];
        for &(x, y) in pairing {
            if x >= n || y >= n || !in_removed[x] || !in_removed[y] || x == y {
                return Err(MapError::Invalid(format!("splice pairing ({x},{y}) is not on removed half-edges")));
            }
            if partner[x] != usize::MAX || partner[y] != usize::MAX {
                return Err(MapError::Invalid(format!("splice pairing uses ({x},{y}) twice")));
            }
            partner[x] = y;
            partner[y] = x;
        }
        if (0..n).any(|h| in_removed[h] && partner[h] == usize::MAX) {
            return Err(MapError::Invalid("splice pairing is not perfect".into()));
        }
        let (vertices, edges, twisted, signs) = self.parts();
        let mut new_edges = Vec::new();
        let mut new_twists = Vec::new();
        let mut visited = vec![false; n];
        for (e, &[x, y]) in edges.iter().enumerate() {
            if !in_removed[x] && !in_removed[y] {
                new_edges.push([x, y]);
                new_twists.push(twisted[e]);
            }
        }
        for x in 0..n {
            if in_removed[x] || visited[x] || !in_removed[self.alpha(x)] {
                continue;
            }
            let mut tw = twisted[self.edge_of(x)];
            let mut cur = self.alpha(x);
            loop {
                visited[cur] = true;
                let p = partner[cur];
                visited[p] = true;
                let nx = self.alpha(p);
                tw ^= twisted[self.edge_of(p)];
                if !in_removed[nx] {
                    new_edges.push([x, nx]);
                    new_twists.push(tw);
                    visited[x] = true;
                    visited[nx] = true;
                    break;
                }
                cur = nx;
            }
        }
        let mut new_vertices: Vec<Vec<usize>> =
            vertices.into_iter().enumerate().filter(|(v, _)| !gone_vertex[*v]).map(|(_, r)| r).collect();
        let mut new_signs: Option<Vec<i8>> =
            signs.map(|s| s.into_iter().enumerate().filter(|(v, _)| !gone_vertex[*v]).map(|(_, x)| x).collect());
        let mut fresh = n;
        for start in 0..n {
            if !in_removed[start] || visited[start] {
                continue;
            }
            let mut tw = false;
            let mut cur = start;
            loop {
                visited[cur] = true;
                let p = partner[cur];
                visited[p] = true;
                tw ^= twisted[self.edge_of(p)];
                let nx = self.alpha(p);
                if nx == start {
                    break;
                }
                cur = nx;
            }
            new_vertices.push(vec![fresh, fresh + 1]);
            new_edges.push([fresh, fresh + 1]);
            new_twists.push(tw);
            if let Some(s) = new_signs.as_mut() {
                s.push(1);
            }
            fresh += 2;
        }
        Ok(CombMap::from_sparse(new_vertices, new_edges, new_twists, new_signs))
    }

    /// Edge connect sum: cut `ea` and `eb` and reconnect the four ends crosswise.
    pub fn edge_connect_sum(&self, ea: usize, other: &CombMap, eb: usize, reversed: bool) -> Result<CombMap, MapError> {
        self.check_edge(ea)?;
        other.check_edge(eb)?;
        let u = self.disjoint_union(other);
        let eb = eb + self.num_edges();
        let (vertices, mut edges, mut twisted, signs) = u.parts();
        let [a1, b1] = edges[ea];
        let [a2, b2] = edges[eb];
        let tw = twisted[ea] ^ twisted[eb];
        if reversed {
            edges[ea] = [a1, a2];
            edges[eb] = [b1, b2];
        } else {
            edges[ea] = [a1, b2];
            edges[eb] = [b1, a2];
        }
        twisted[ea] = tw;
        twisted[eb] = false;
        Ok(CombMap::from_sparse(vertices, edges, twisted, signs))
    }

    /// Vertex connect sum at vertices of equal degree.
    ///
    /// With `va = (h1 x1 … )` read from `ha` and `vb = (h2 y1 … )` read from `hb`, the
    /// `i`-th half-edge of `va` is joined to the `(-i mod d)`-th of `vb`, so the sum of two
    /// plane maps is plane.
    pub fn vertex_connect_sum(
        &self,
        va: usize,
        ha: usize,
        other: &CombMap,
        vb: usize,
        hb: usize,
    ) -> Result<CombMap, MapError> {
        self.check_vertex(va)?;
        other.check_vertex(vb)?;
        let d = self.degree(va);
        if other.degree(vb) != d || d == 0 {
            return Err(MapError::Invalid("vertex connect sum needs equal positive degrees".into()));
        }
        let ra =
            rotate_to(self.rotation(va), ha).ok_or(MapError::Invalid(format!("half-edge {ha} not at vertex {va}")))?;
        let rb =
            rotate_to(other.rotation(vb), hb).ok_or(MapError::Invalid(format!("half-edge {hb} not at vertex {vb}")))?;
        let u = self.disjoint_union(other);
        let off = self.num_half_edges();
        let pairing: Vec<(usize, usize)> = (0..d).map(|i| (ra[i], rb[(d - i) % d] + off)).collect();
        u.splice(&[va, vb + self.num_vertices()], &pairing)
    }
}

impl CombMap {
    /// Split into connected components that carry edges, plus the number of isolated vertices.
    pub fn split_components(&self) -> (Vec<CombMap>, usize) {
        let (labels, count) = self.component_labels();
        let (vertices, edges, twisted, signs) = self.parts();
        let mut comps = Vec::new();
        for c in 0..count {
            let vs: Vec<usize> = (0..vertices.len()).filter(|&v| labels[v] == c).collect();
            if vs.len() == 1 && vertices[vs[0]].is_empty() {
                continue;
            }
            let es: Vec<usize> = (0..edges.len()).filter(|&e| labels[self.vertex_of(edges[e][0])] == c).collect();
            comps.push(CombMap::from_sparse(
                vs.iter().map(|&v| vertices[v].clone()).collect(),
                es.iter().map(|&e| edges[e]).collect(),
                es.iter().map(|&e| twisted[e]).collect(),
                signs.as_ref().map(|s| vs.iter().map(|&v| s[v]).collect()),
            ));
        }
        (comps, self.isolated_vertices())
    }
}

pub(crate) fn rotate_to(rot: &[usize], h: usize) -> Option<Vec<usize>> {
    let p = rot.iter().position(|&x| x == h)?;
    Some((0..rot.len()).map(|i| rot[(p + i) % rot.len()]).collect())
}

#[cfg(test)]
mod tests {
    use crate::fixtures;
    use crate::ribbon::CombMap;

    #[test]
    fn contract_theta_edge_gives_planar_bouquet() {
        let m = fixtures::theta_p().contract_edge(0).unwrap();
        let d = m.euler_data();
        assert_eq!((d.vertices, d.edges, d.genus), (1, 2, 0));
    }

    #[test]
    fn contracting_the_only_loop_leaves_two_isolated_vertices() {
        let m = fixtures::loop1().contract_edge(0).unwrap();
        assert_eq!((m.num_vertices(), m.num_edges(), m.isolated_vertices()), (2, 0, 2));
    }

    #[test]
    fn delete_theta_edge_gives_two_cycle() {
        let m = fixtures::theta_p().delete_edge(1).unwrap();
        let d = m.euler_data();
        assert_eq!((d.vertices, d.edges, d.faces), (2, 2, 2));
    }

    #[test]
    fn partial_dual_of_bridge_is_loop() {
        let m = fixtures::bridge().partial_dual(0).unwrap();
        assert_eq!((m.num_vertices(), m.num_edges(), m.faces()), (1, 1, 2));
    }

    #[test]
    fn dual_of_loop_is_a_path() {
        let d = fixtures::loop1().geometric_dual().unwrap();
        assert_eq!((d.num_vertices(), d.num_edges(), d.genus()), (2, 1, 0));
    }

    #[test]
    fn dual_of_planar_theta_is_triangle() {
        let d = fixtures::theta_p().geometric_dual().unwrap();
        let e = d.euler_data();
        assert_eq!((e.vertices, e.edges, e.genus), (3, 3, 0));
    }

    #[test]
    fn flipping_planar_theta_gives_toroidal() {
        let t = fixtures::theta_p().vertex_flip(1).unwrap();
        assert!(t.is_isomorphic(&fixtures::theta_t()));
    }

    #[test]
    fn twisted_loop_is_projective_plane() {
        let m = fixtures::loop1().twist_edge(0).unwrap();
        let d = m.euler_data();
        assert_eq!((d.faces, d.euler_genus, d.orientable), (1, 1, false));
    }

    #[test]
    fn equivalence_flip_keeps_face_count() {
        let m = fixtures::theta_t().twist_edge(1).unwrap();
        let f = m.equivalence_flip(0).unwrap();
        assert_eq!(m.faces(), f.faces());
        assert_eq!(m.euler_data().euler_genus, f.euler_data().euler_genus);
    }

    #[test]
    fn splice_closing_strand_makes_circle() {
        // single vertex with two loops, cut it open along the loops
        let m = CombMap::new(vec![vec![0, 1, 2, 3]], vec![[0, 1], [2, 3]]).unwrap();
        let s = m.splice(&[0], &[(0, 2), (1, 3)]).unwrap();
        assert_eq!(s.num_edges(), 1);
        assert_eq!(s.num_vertices(), 1);
    }

    #[test]
    fn theta_edge_sum_counts() {
        let t = fixtures::theta_p();
        let s = t.edge_connect_sum(0, &t, 0, false).unwrap();
        assert_eq!((s.num_vertices(), s.num_edges()), (4, 6));
    }

    #[test]
    fn vertex_sum_of_planar_thetas_is_planar_theta() {
        let t = fixtures::theta_p();
        let s = t.vertex_connect_sum(0, 0, &t, 0, 0).unwrap();
        assert!(s.is_isomorphic(&t));
    }
}
