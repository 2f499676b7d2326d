//! Generators: rotation variants of a map, all connected maps up to a size, and
//! connected cubic multigraphs.

use std::collections::HashMap;

use super::{CanonKey, CombMap};

impl CombMap {
    /// Every flip subset over vertices of degree at least three, as `(flipped, map)`.
    ///
    /// Vertices of degree at most two are skipped since flipping them is a no-op.
    pub fn rotation_variants(&self) -> Vec<(Vec<usize>, CombMap)> {
        let flippable = self.vertices_of_degree_at_least(3);
        let k = flippable.len();
        assert!(k < 26, "too many flippable vertices");
        (0u32..1 << k)
            .map(|mask| {
                let set: Vec<usize> = (0..k).filter(|i| mask >> i & 1 == 1).map(|i| flippable[i]).collect();
                let m = self.flip_vertices(&set);
                (set, m)
            })
            .collect()
    }
}

fn insert_at(rot: &[usize], pos: usize, h: usize) -> Vec<usize> {
    let mut r = rot.to_vec();
    r.insert(pos, h);
    r
}

/// Positions at which a new half-edge can be inserted into a rotation of length `d`.
fn corners(d: usize) -> usize {
    d.max(1)
}

/// All connected maps with `1..=max_edges` edges up to isomorphism, grouped by edge count.
///
/// Every connected map arises from one with one edge fewer by adding either an edge between
/// two corners or a pendant edge to a new vertex, so closing under those two moves is exhaustive.
pub fn connected_maps(max_edges: usize) -> Vec<Vec<CombMap>> {
    let mut levels: Vec<Vec<CombMap>> = vec![vec![CombMap::isolated(1)]];
    for m in 1..=max_edges {
        let mut seen: HashMap<CanonKey, CombMap> = HashMap::new();
        for base in &levels[m - 1] {
            let (verts, mut edges, _, _) = base.parts();
            let (x, y) = (2 * (m - 1), 2 * (m - 1) + 1);
            edges.push([x, y]);
            let mut push = |vs: Vec<Vec<usize>>| {
                let map = CombMap::new(vs, edges.clone()).expect("generated map is valid");
                seen.entry(map.canonical_key()).or_insert_with(|| map.canonical_form());
            };
            for v in 0..verts.len() {
                for p in 0..corners(verts[v].len()) {
                    // pendant edge to a new vertex
                    let mut vs = verts.clone();
                    vs[v] = insert_at(&verts[v], p, x);
                    vs.push(vec![y]);
                    push(vs.clone());
                    // edge between two corners
                    for w in 0..verts.len() {
                        let mut vs = verts.clone();
                        vs[v] = insert_at(&verts[v], p, x);
                        let len = vs[w].len();
                        for q in 0..corners(len) {
                            let mut ws = vs.clone();
                            ws[w] = insert_at(&vs[w], q, y);
                            push(ws);
                        }
                    }
                }
            }
        }
        let mut next: Vec<(CanonKey, CombMap)> = seen.into_iter().collect();
        next.sort_by(|a, b| a.0.cmp(&b.0));
        levels.push(next.into_iter().map(|(_, m)| m).collect());
    }
    levels.remove(0);
    levels
}

/// Connected cubic multigraphs (loops and multi-edges allowed) on exactly `n` vertices,
/// one representative rotation system per isomorphism class of graphs.
pub fn cubic_multigraphs(n: usize) -> Vec<CombMap> {
    if n == 0 || n % 2 == 1 {
        return Vec::new();
    }
    let mut found = GraphClasses::default();
    let mut rem = vec![3usize; n];
    let mut edges: Vec<(usize, usize)> = Vec::new();
    grow(n, 0, 0, 1, &mut rem, &mut edges, &mut found);
    found.order.iter().map(|&(ref key, i)| map_from_edge_list(n, &found.buckets[key][i].edges)).collect()
}

/// Multigraph as an adjacency matrix of edge multiplicities (loops on the diagonal).
struct Multigraph {
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<u8>>,
    /// Per-vertex isomorphism invariant.
    profile: Vec<Vec<u32>>,
}

impl Multigraph {
    fn new(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut adj = vec![vec![0u8; n]; n];
        for &(u, v) in edges {
            adj[u][v] += 1;
            if u != v {
                adj[v][u] += 1;
            }
        }
        let profile = (0..n)
            .map(|v| {
                let mut p = vec![u32::from(adj[v][v])];
                let mut mult: Vec<u32> =
                    (0..n).filter(|&w| w != v && adj[v][w] > 0).map(|w| u32::from(adj[v][w])).collect();
                mult.sort_unstable();
                p.extend(mult);
                p.push(u32::MAX);
                // vertices at each distance, then triangles through v
                let mut dist = vec![usize::MAX; n];
                dist[v] = 0;
                let mut queue = std::collections::VecDeque::from([v]);
                while let Some(x) = queue.pop_front() {
                    for y in 0..n {
                        if adj[x][y] > 0 && dist[y] == usize::MAX {
                            dist[y] = dist[x] + 1;
                            queue.push_back(y);
                        }
                    }
                }
                let far = dist.iter().copied().filter(|&d| d != usize::MAX).max().unwrap_or(0);
                p.extend((1..=far).map(|d| dist.iter().filter(|&&x| x == d).count() as u32));
                p.push(u32::MAX);
                let nb: Vec<usize> = (0..n).filter(|&w| w != v && adj[v][w] > 0).collect();
                let triangles: u32 = nb
                    .iter()
                    .enumerate()
                    .flat_map(|(i, &a)| nb[i + 1..].iter().map(move |&b| (a, b)))
                    .map(|(a, b)| u32::from(adj[v][a]) * u32::from(adj[v][b]) * u32::from(adj[a][b]))
                    .sum();
                p.push(triangles);
                p
            })
            .collect();
        Multigraph { edges: edges.to_vec(), adj, profile }
    }

    fn invariant(&self) -> Vec<Vec<u32>> {
        let mut inv = self.profile.clone();
        inv.sort();
        inv
    }

    /// Backtracking search for an isomorphism onto `other`.
    fn isomorphic(&self, other: &Multigraph) -> bool {
        let n = self.adj.len();
        let mut order = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            order.push(s);
            let mut i = order.len() - 1;
            while i < order.len() {
                let x = order[i];
                for y in 0..n {
                    if self.adj[x][y] > 0 && !seen[y] {
                        seen[y] = true;
                        order.push(y);
                    }
                }
                i += 1;
            }
        }
        let mut image = vec![usize::MAX; n];
        let mut used = vec![false; n];
        self.extend(other, &order, 0, &mut image, &mut used)
    }

    fn extend(
        &self,
        other: &Multigraph,
        order: &[usize],
        depth: usize,
        image: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let v = order[depth];
        for w in 0..other.adj.len() {
            if used[w] || self.profile[v] != other.profile[w] {
                continue;
            }
            let fits = order[..depth].iter().all(|&u| self.adj[v][u] == other.adj[w][image[u]]);
            if !fits {
                continue;
            }
            image[v] = w;
            used[w] = true;
            if self.extend(other, order, depth + 1, image, used) {
                return true;
            }
            used[w] = false;
        }
        image[v] = usize::MAX;
        false
    }
}

/// Isomorphism classes, bucketed by invariant, in order of discovery.
#[derive(Default)]
struct GraphClasses {
    buckets: HashMap<Vec<Vec<u32>>, Vec<Multigraph>>,
    order: Vec<(Vec<Vec<u32>>, usize)>,
}

impl GraphClasses {
    fn insert(&mut self, n: usize, edges: &[(usize, usize)]) {
        let g = Multigraph::new(n, edges);
        let key = g.invariant();
        let bucket = self.buckets.entry(key.clone()).or_default();
        if !bucket.iter().any(|r| g.isomorphic(r)) {
            self.order.push((key, bucket.len()));
            bucket.push(g);
        }
    }
}

/// Backtracking in breadth-first labelling order: vertex `i` fills its remaining degree with
/// edges to targets `>= min_target`, each either already discovered or the next new vertex.
fn grow(
    n: usize,
    i: usize,
    min_target: usize,
    discovered: usize,
    rem: &mut Vec<usize>,
    edges: &mut Vec<(usize, usize)>,
    found: &mut GraphClasses,
) {
    if i == n {
        found.insert(n, edges);
        return;
    }
    if rem[i] == 0 {
        if i + 1 < n && i + 1 >= discovered {
            return; // disconnected
        }
        grow(n, i + 1, i + 1, discovered, rem, edges, found);
        return;
    }
    let upper = discovered.min(n - 1);
    for j in min_target.max(i)..=upper {
        let need = if j == i { 2 } else { 1 };
        if rem[j] < need || (j == i && rem[i] < 2) {
            continue;
        }
        if j != i && rem[i] < 1 {
            continue;
        }
        let new_vertex = j == discovered;
        rem[i] -= 1;
        rem[j] -= 1;
        edges.push((i, j));
        grow(n, i, j, if new_vertex { discovered + 1 } else { discovered }, rem, edges, found);
        edges.pop();
        rem[i] += 1;
        rem[j] += 1;
    }
}

/// Map on `n` vertices from an edge list, rotations in insertion order.
pub fn map_from_edge_list(n: usize, edges: &[(usize, usize)]) -> CombMap {
    let mut rot = vec![Vec::new(); n];
    let mut pairs = Vec::new();
    for (k, &(u, v)) in edges.iter().enumerate() {
        rot[u].push(2 * k);
        rot[v].push(2 * k + 1);
        pairs.push([2 * k, 2 * k + 1]);
    }
    CombMap::new(rot, pairs).expect("edge list map is valid")
}
