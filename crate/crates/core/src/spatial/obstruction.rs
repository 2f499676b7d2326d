use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::SpatialDiagram;

/// Cohomology class of the crossing cocycle on pairs of edges of the underlying graph,
/// modulo coboundaries.
///
/// Edges of the underlying graph are labelled by their two end half-edges at non-crossing
/// vertices (a closed strand by `(h, h)` for its least half-edge), so classes of diagrams
/// sharing those half-edges can be compared directly. Each edge is oriented from the
/// smaller end of its label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionClass {
    /// `2`, or `0` for integer coefficients.
    pub modulus: u32,
    /// Nonzero coefficients of the reduced representative on `e ∧ f`, `e < f`.
    pub representative: Vec<((usize, usize), (usize, usize), i64)>,
}

impl ObstructionClass {
    pub fn is_zero(&self) -> bool {
        self.representative.is_empty()
    }
}

impl fmt::Display for ObstructionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.representative.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .representative
            .iter()
            .map(|(a, b, c)| {
                let pair = format!("e{}.{}^e{}.{}", a.0, a.1, b.0, b.1);
                if *c == 1 {
                    pair
                } else {
                    format!("{c}*{pair}")
                }
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// Strands of the underlying graph, each oriented away from the smaller end of its label.
struct Strands {
    labels: Vec<(usize, usize)>,
    of: Vec<usize>,
    /// Half-edges at non-crossing vertices that start their strand.
    starts: Vec<bool>,
    /// At each crossing: the two strands and the half-edge through which each leaves.
    at_crossing: Vec<[(usize, usize); 2]>,
}

fn strands(d: &SpatialDiagram) -> Strands {
    let m = d.map();
    let n = m.num_half_edges();
    let is_crossing = |h: usize| d.crossing_at(m.vertex_of(h)).is_some();
    let mut of = vec![usize::MAX; n];
    let mut labels = Vec::new();
    let mut starts = vec![false; n];
    let mut leaving = vec![false; n];
    // walk from `h`, marking half-edges; returns the end half-edge at a non-crossing vertex
    let walk = |h: usize, id: usize, of: &mut Vec<usize>, leaving: &mut Vec<bool>| -> usize {
        let mut cur = h;
        loop {
            of[cur] = id;
            leaving[cur] = true;
            let next = m.alpha(cur);
            of[next] = id;
            if !is_crossing(next) {
                return next;
            }
            cur = d.opposite(next);
            if cur == h {
                return h;
            }
        }
    };
    for h in 0..n {
        if of[h] != usize::MAX || is_crossing(h) {
            continue;
        }
        let id = labels.len();
        let end = walk(h, id, &mut of, &mut leaving);
        labels.push((h.min(end), h.max(end)));
        starts[h] = true;
    }
    for h in 0..n {
        if of[h] != usize::MAX {
            continue;
        }
        let id = labels.len();
        walk(h, id, &mut of, &mut leaving);
        labels.push((h, h));
    }
    let at_crossing = d
        .crossings()
        .iter()
        .map(|c| {
            let [a, b, cc, dd] = d.crossing_rotation(c);
            let out1 = if leaving[a] { a } else { cc };
            let out2 = if leaving[b] { b } else { dd };
            [(of[a], out1), (of[b], out2)]
        })
        .collect();
    Strands { labels, of, starts, at_crossing }
}

/// Coboundary generators and the crossing cocycle over the basis `e ∧ f`, `e < f` in label order.
fn cochains(d: &SpatialDiagram) -> (Vec<(usize, usize)>, Vec<Vec<i64>>, Vec<i64>) {
    let st = strands(d);
    let m = d.map();
    let mut order: Vec<usize> = (0..st.labels.len()).collect();
    order.sort_by_key(|&i| st.labels[i]);
    let mut rank = vec![0; order.len()];
    for (r, &i) in order.iter().enumerate() {
        rank[i] = r;
    }
    let k = order.len();
    let mut index = BTreeMap::new();
    let mut basis = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            index.insert((i, j), basis.len());
            basis.push((i, j));
        }
    }
    // e ∧ f as a signed basis coordinate
    let wedge = |e: usize, f: usize| -> Option<(usize, i64)> {
        let (a, b) = (rank[e], rank[f]);
        match a.cmp(&b) {
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Less => Some((index[&(a, b)], 1)),
            std::cmp::Ordering::Greater => Some((index[&(b, a)], -1)),
        }
    };
    let mut cocycle = vec![0i64; basis.len()];
    for (ci, c) in d.crossings().iter().enumerate() {
        let [(s1, out1), (s2, out2)] = st.at_crossing[ci];
        let rot = d.crossing_rotation(c);
        let p1 = rot.iter().position(|&h| h == out1).expect("strand at crossing");
        let (e, f) = if rot[(p1 + 1) % 4] == out2 { (s1, s2) } else { (s2, s1) };
        if let Some((i, sign)) = wedge(e, f) {
            cocycle[i] += sign;
        }
    }
    let mut generators = Vec::new();
    for v in 0..m.num_vertices() {
        if d.crossing_at(v).is_some() {
            continue;
        }
        for e in 0..k {
            let mut g = vec![0i64; basis.len()];
            for &h in m.rotation(v) {
                // incoming ends count +1, outgoing −1
                let sign = if st.starts[h] { -1 } else { 1 };
                if let Some((i, s)) = wedge(st.of[h], e) {
                    g[i] += sign * s;
                }
            }
            if g.iter().any(|&x| x != 0) {
                generators.push(g);
            }
        }
    }
    let labels = order.iter().map(|&i| st.labels[i]).collect::<Vec<_>>();
    (labels, generators, cocycle)
}

fn class_from(labels: &[(usize, usize)], modulus: u32, v: &[i64]) -> ObstructionClass {
    let k = labels.len();
    let mut rep = Vec::new();
    let mut idx = 0;
    for i in 0..k {
        for j in i + 1..k {
            if v[idx] != 0 {
                rep.push((labels[i], labels[j], v[idx]));
            }
            idx += 1;
        }
    }
    ObstructionClass { modulus, representative: rep }
}

/// The class with `ℤ/2` coefficients, reduced against the row-echelon form of the coboundaries.
pub fn obstruction_z2(d: &SpatialDiagram) -> ObstructionClass {
    let (labels, generators, cocycle) = cochains(d);
    let width = cocycle.len();
    let mut rows: Vec<Vec<bool>> = generators.iter().map(|g| g.iter().map(|x| x % 2 != 0).collect()).collect();
    let mut pivots: Vec<(usize, Vec<bool>)> = Vec::new();
    for col in 0..width {
        let Some(p) = rows.iter().position(|r| r[col]) else { continue };
        let pivot = rows.swap_remove(p);
        for r in rows.iter_mut().filter(|r| r[col]) {
            for (x, y) in r.iter_mut().zip(&pivot) {
                *x ^= *y;
            }
        }
        pivots.push((col, pivot));
    }
    let mut v: Vec<bool> = cocycle.iter().map(|x| x % 2 != 0).collect();
    for (col, row) in &pivots {
        if v[*col] {
            for (x, y) in v.iter_mut().zip(row) {
                *x ^= *y;
            }
        }
    }
    let ints: Vec<i64> = v.iter().map(|&b| i64::from(b)).collect();
    class_from(&labels, 2, &ints)
}

/// The class with integer coefficients: the cocycle reduced modulo the Hermite normal form
/// of the coboundary lattice, a canonical coset representative.
pub fn obstruction_integral(d: &SpatialDiagram) -> ObstructionClass {
    let (labels, generators, cocycle) = cochains(d);
    let basis = hermite_rows(generators, cocycle.len());
    let mut v = cocycle;
    for (col, row) in &basis {
        let p = row[*col];
        let q = v[*col].div_euclid(p);
        if q != 0 {
            for (x, y) in v.iter_mut().zip(row) {
                *x -= q * y;
            }
        }
    }
    class_from(&labels, 0, &v)
}

/// Row Hermite normal form: `(pivot column, row)` with positive pivots and entries above
/// each pivot reduced into `[0, pivot)`.
fn hermite_rows(mut rows: Vec<Vec<i64>>, width: usize) -> Vec<(usize, Vec<i64>)> {
    let mut out: Vec<(usize, Vec<i64>)> = Vec::new();
    for col in 0..width {
        // gcd-combine all rows with a nonzero entry in this column
        loop {
            let mut nz: Vec<usize> = (0..rows.len()).filter(|&i| rows[i][col] != 0).collect();
            if nz.len() <= 1 {
                break;
            }
            nz.sort_by_key(|&i| rows[i][col].abs());
            let p = nz[0];
            let pivot = rows[p].clone();
            for &i in &nz[1..] {
                let q = rows[i][col].div_euclid(pivot[col]);
                for (x, y) in rows[i].iter_mut().zip(&pivot) {
                    *x -= q * y;
                }
            }
        }
        let Some(p) = rows.iter().position(|r| r[col] != 0) else { continue };
        let mut pivot = rows.swap_remove(p);
        if pivot[col] < 0 {
            pivot.iter_mut().for_each(|x| *x = -*x);
        }
        for (_, row) in out.iter_mut() {
            let q = row[col].div_euclid(pivot[col]);
            if q != 0 {
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= q * y;
                }
            }
        }
        out.push((col, pivot));
    }
    out
}
