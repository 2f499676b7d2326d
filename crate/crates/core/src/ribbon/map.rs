use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use super::MapError;

/// Combinatorial map: counterclockwise rotations at vertices plus an edge involution.
///
/// Half-edges are labelled `0..2m` where `m` is the number of edges. A vertex with an
/// empty rotation is an isolated vertex. Edge twists and vertex signs are optional
/// decorations used by the Brauer-based evaluations.
#[derive(Clone, PartialEq, Eq)]
pub struct CombMap {
    vertices: Vec<Vec<usize>>,
    edges: Vec<[usize; 2]>,
    twisted: Vec<bool>,
    signs: Option<Vec<i8>>,
    sigma: Vec<usize>,
    sigma_inv: Vec<usize>,
    alpha: Vec<usize>,
    vertex_of: Vec<usize>,
    edge_of: Vec<usize>,
}

/// Euler characteristic data of a map.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EulerData {
    pub vertices: usize,
    pub edges: usize,
    pub components: usize,
    pub faces: usize,
    /// First Betti number `e - v + b0`.
    pub b1: usize,
    /// `2 b0 - (v - e + f)`.
    pub euler_genus: usize,
    pub orientable: bool,
    /// Orientable genus when orientable, crosscap count otherwise.
    pub genus: usize,
}

impl CombMap {
    /// Build and validate a map from rotations and edge pairs.
    pub fn new(vertices: Vec<Vec<usize>>, edges: Vec<[usize; 2]>) -> Result<Self, MapError> {
        let m = edges.len();
        let mut seen_v = vec![false; 2 * m];
        for (vi, rot) in vertices.iter().enumerate() {
            for (pos, &h) in rot.iter().enumerate() {
                if h >= 2 * m {
                    return Err(MapError::Invalid(format!(
                        "vertices[{vi}][{pos}]: half-edge {h} out of range 0..{}",
                        2 * m
                    )));
                }
                if seen_v[h] {
                    return Err(MapError::Invalid(format!("vertices[{vi}][{pos}]: half-edge {h} used twice")));
                }
                seen_v[h] = true;
            }
        }
        if let Some(h) = seen_v.iter().position(|s| !s) {
            return Err(MapError::Invalid(format!("half-edge {h} is not in any vertex rotation")));
        }
        let mut seen_e = vec![false; 2 * m];
        for (ei, e) in edges.iter().enumerate() {
            for (k, &h) in e.iter().enumerate() {
                if h >= 2 * m {
                    return Err(MapError::Invalid(format!("edges[{ei}][{k}]: half-edge {h} out of range")));
                }
                if seen_e[h] {
                    return Err(MapError::Invalid(format!("edges[{ei}][{k}]: half-edge {h} used twice")));
                }
                seen_e[h] = true;
            }
        }
        let mut map = CombMap {
            vertices,
            edges,
            twisted: vec![false; m],
            signs: None,
            sigma: Vec::new(),
            sigma_inv: Vec::new(),
            alpha: Vec::new(),
            vertex_of: Vec::new(),
            edge_of: Vec::new(),
        };
        map.rebuild();
        Ok(map)
    }

    /// Build from half-edge lists that may use arbitrary distinct labels;
    /// labels are compacted to `0..2m` preserving their relative order.
    pub(crate) fn from_sparse(
        vertices: Vec<Vec<usize>>,
        edges: Vec<[usize; 2]>,
        twisted: Vec<bool>,
        signs: Option<Vec<i8>>,
    ) -> Self {
        let mut labels: Vec<usize> = edges.iter().flat_map(|e| e.iter().copied()).collect();
        labels.sort_unstable();
        let relabel = |h: usize| labels.binary_search(&h).expect("dart present in edges");
        let vertices = vertices.into_iter().map(|r| r.into_iter().map(relabel).collect()).collect();
        let edges = edges.into_iter().map(|[a, b]| [relabel(a), relabel(b)]).collect();
        let mut map = CombMap::new(vertices, edges).expect("sparse construction is consistent");
        map.twisted = twisted;
        map.signs = signs;
        map
    }

    fn rebuild(&mut self) {
        let n = 2 * self.edges.len();
        self.sigma = vec![0; n];
        self.sigma_inv = vec![0; n];
        self.alpha = vec![0; n];
        self.vertex_of = vec![0; n];
        self.edge_of = vec![0; n];
        for (vi, rot) in self.vertices.iter().enumerate() {
            for (i, &h) in rot.iter().enumerate() {
                let next = rot[(i + 1) % rot.len()];
                self.sigma[h] = next;
                self.sigma_inv[next] = h;
                self.vertex_of[h] = vi;
            }
        }
        for (ei, &[a, b]) in self.edges.iter().enumerate() {
            self.alpha[a] = b;
            self.alpha[b] = a;
            self.edge_of[a] = ei;
            self.edge_of[b] = ei;
        }
    }

    pub fn with_signs(mut self, signs: Vec<i8>) -> Result<Self, MapError> {
        if signs.len() != self.vertices.len() {
            return Err(MapError::Invalid(format!(
                "vertex_signs: expected {} entries, got {}",
                self.vertices.len(),
                signs.len()
            )));
        }
        if let Some(i) = signs.iter().position(|s| *s != 1 && *s != -1) {
            return Err(MapError::Invalid(format!("vertex_signs[{i}]: sign must be +1 or -1")));
        }
        self.signs = Some(signs);
        Ok(self)
    }

    pub fn without_signs(mut self) -> Self {
        self.signs = None;
        self
    }

    pub fn with_twists(mut self, twisted_edges: &[usize]) -> Result<Self, MapError> {
        for &e in twisted_edges {
            if e >= self.edges.len() {
                return Err(MapError::Invalid(format!("edge_twists: edge {e} out of range")));
            }
            self.twisted[e] = true;
        }
        Ok(self)
    }

    pub(crate) fn set_twist_flags(&mut self, flags: Vec<bool>) {
        assert_eq!(flags.len(), self.edges.len());
        self.twisted = flags;
    }

    pub(crate) fn set_signs_raw(&mut self, signs: Option<Vec<i8>>) {
        self.signs = signs;
    }

    /// Map with no edges and `n` isolated vertices.
    pub fn isolated(n: usize) -> Self {
        CombMap::new(vec![Vec::new(); n], Vec::new()).unwrap()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_half_edges(&self) -> usize {
        2 * self.edges.len()
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.vertices
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.vertices[v]
    }

    pub fn edge_list(&self) -> &[[usize; 2]] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> [usize; 2] {
        self.edges[e]
    }

    pub fn sigma(&self, h: usize) -> usize {
        self.sigma[h]
    }

    pub fn sigma_inv(&self, h: usize) -> usize {
        self.sigma_inv[h]
    }

    pub fn alpha(&self, h: usize) -> usize {
        self.alpha[h]
    }

    pub fn vertex_of(&self, h: usize) -> usize {
        self.vertex_of[h]
    }

    pub fn edge_of(&self, h: usize) -> usize {
        self.edge_of[h]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.vertices[v].len()
    }

    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        let [a, b] = self.edges[e];
        (self.vertex_of[a], self.vertex_of[b])
    }

    pub fn is_loop(&self, e: usize) -> bool {
        let (u, v) = self.endpoints(e);
        u == v
    }

    pub fn is_twisted(&self, e: usize) -> bool {
        self.twisted[e]
    }

    pub fn twist_flags(&self) -> &[bool] {
        &self.twisted
    }

    pub fn has_twists(&self) -> bool {
        self.twisted.iter().any(|&t| t)
    }

    pub fn twisted_edges(&self) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| self.twisted[e]).collect()
    }

    pub fn signs(&self) -> Option<&[i8]> {
        self.signs.as_deref()
    }

    /// Sign of `v`, defaulting to the parity sign `(-1)^deg`.
    pub fn sign(&self, v: usize) -> i8 {
        match &self.signs {
            Some(s) => s[v],
            None => parity_sign(self.degree(v)),
        }
    }

    pub fn isolated_vertices(&self) -> usize {
        self.vertices.iter().filter(|r| r.is_empty()).count()
    }

    pub(crate) fn parts(&self) -> (Vec<Vec<usize>>, Vec<[usize; 2]>, Vec<bool>, Option<Vec<i8>>) {
        (self.vertices.clone(), self.edges.clone(), self.twisted.clone(), self.signs.clone())
    }

    /// Number of connected components (isolated vertices count).
    pub fn components(&self) -> usize {
        self.component_labels().1
    }

    /// Component index of every vertex and the number of components.
    pub fn component_labels(&self) -> (Vec<usize>, usize) {
        let mut uf = UnionFind::new(self.vertices.len());
        for &[a, b] in &self.edges {
            uf.union(self.vertex_of[a], self.vertex_of[b]);
        }
        uf.labels()
    }

    /// Number of boundary components of the ribbon surface (faces).
    pub fn faces(&self) -> usize {
        let isolated = self.isolated_vertices();
        let n = self.num_half_edges();
        if !self.has_twists() {
            let mut seen = vec![false; n];
            let mut count = 0;
            for start in 0..n {
                if seen[start] {
                    continue;
                }
                count += 1;
                let mut h = start;
                while !seen[h] {
                    seen[h] = true;
                    h = self.sigma[self.alpha[h]];
                }
            }
            return count + isolated;
        }
        // walk (half-edge, local orientation) states; every face is traced once per direction
        let mut seen = vec![false; 2 * n];
        let mut orbits = 0;
        for start in 0..2 * n {
            if seen[start] {
                continue;
            }
            orbits += 1;
            let mut state = start;
            while !seen[state] {
                seen[state] = true;
                let (h, forward) = (state / 2, state % 2 == 0);
                let a = self.alpha[h];
                let forward = forward ^ self.twisted[self.edge_of[h]];
                let next = if forward { self.sigma[a] } else { self.sigma_inv[a] };
                state = 2 * next + usize::from(!forward);
            }
        }
        orbits / 2 + isolated
    }

    /// Whether the ribbon surface is orientable, i.e. twists are a coboundary.
    pub fn is_orientable(&self) -> bool {
        if !self.has_twists() {
            return true;
        }
        let nv = self.vertices.len();
        let mut orient: Vec<Option<bool>> = vec![None; nv];
        let mut adj: Vec<Vec<(usize, bool)>> = vec![Vec::new(); nv];
        for (e, &[a, b]) in self.edges.iter().enumerate() {
            let (u, v) = (self.vertex_of[a], self.vertex_of[b]);
            adj[u].push((v, self.twisted[e]));
            adj[v].push((u, self.twisted[e]));
        }
        for s in 0..nv {
            if orient[s].is_some() {
                continue;
            }
            orient[s] = Some(false);
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                let ou = orient[u].unwrap();
                for &(v, t) in &adj[u] {
                    let want = ou ^ t;
                    match orient[v] {
                        None => {
                            orient[v] = Some(want);
                            stack.push(v);
                        }
                        Some(ov) if ov != want => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    pub fn euler_data(&self) -> EulerData {
        let v = self.num_vertices();
        let e = self.num_edges();
        let b0 = self.components();
        let f = self.faces();
        let euler_genus = (2 * b0 + e) - (v + f);
        let orientable = self.is_orientable();
        EulerData {
            vertices: v,
            edges: e,
            components: b0,
            faces: f,
            b1: e + b0 - v,
            euler_genus,
            orientable,
            genus: if orientable { euler_genus / 2 } else { euler_genus },
        }
    }

    pub fn genus(&self) -> usize {
        self.euler_data().genus
    }

    /// Faces of the spanning sub-map keeping only edges with `keep[e]`.
    pub fn faces_of_submap(&self, keep: &[bool]) -> usize {
        self.delete_edges_where(|e| !keep[e]).faces()
    }

    /// Vertices, in roster order, that are not isolated and carry degree at least `d`.
    pub fn vertices_of_degree_at_least(&self, d: usize) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&v| self.degree(v) >= d).collect()
    }

    pub fn edges_at(&self, v: usize) -> BTreeSet<usize> {
        self.vertices[v].iter().map(|&h| self.edge_of[h]).collect()
    }

    /// Orbits of `σ∘α`, each listed in traversal order from its least half-edge.
    /// Twists are ignored.
    pub fn face_orbits(&self) -> Vec<Vec<usize>> {
        let n = self.num_half_edges();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut orbit = Vec::new();
            let mut h = start;
            while !seen[h] {
                seen[h] = true;
                orbit.push(h);
                h = self.sigma[self.alpha[h]];
            }
            out.push(orbit);
        }
        out
    }
}

pub fn parity_sign(deg: usize) -> i8 {
    if deg.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

impl fmt::Debug for CombMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CombMap {{ vertices: {:?}, edges: {:?}", self.vertices, self.edges)?;
        if self.has_twists() {
            write!(f, ", twists: {:?}", self.twisted_edges())?;
        }
        if let Some(s) = &self.signs {
            write!(f, ", signs: {:?}", s)?;
        }
        write!(f, " }}")
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    /// Returns true when the two classes were distinct.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }

    pub(crate) fn labels(&mut self) -> (Vec<usize>, usize) {
        let n = self.parent.len();
        let mut map = vec![usize::MAX; n];
        let mut out = vec![0; n];
        let mut count = 0;
        for i in 0..n {
            let r = self.find(i);
            if map[r] == usize::MAX {
                map[r] = count;
                count += 1;
            }
            out[i] = map[r];
        }
        (out, count)
    }
}
