//! Diagram moves, addressed by half-edges.
//!
//! Insertion moves glue a small tangle into a face; the triangle slide and the forbidden
//! commutation rewire strands between crossings. Tangle pairs give both sides of moves
//! that need a specific local picture, such as a strand sliding past a vertex.

use crate::ribbon::CombMap;

use super::drawing::{insert_tangle, Drawing};
use super::{Crossing, SpatialDiagram, SpatialError};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Move {
    /// A curl on the edge of `dart`, drawn in the face to the right of it.
    Curl {
        dart: usize,
        positive: bool,
    },
    /// Push the edges of two half-edges of one face (in face order) across each other,
    /// creating two crossings; `first_over` picks which strand passes over.
    PushAcross {
        darts: [usize; 2],
        first_over: bool,
    },
    /// Slide a strand across the crossing of the other two at the triangular face of `dart`.
    Triangle {
        dart: usize,
    },
    /// Swap the order of the crossings at both ends of the edge of `dart` along its strand.
    /// With the strand over (or under) at both, this is a forbidden move.
    Commute {
        dart: usize,
    },
    CrossingChange {
        vertex: usize,
    },
    /// Reflect the crossing's rotation, keeping its over strand.
    Virtualize {
        vertex: usize,
    },
}

fn pattern(msg: impl Into<String>) -> SpatialError {
    SpatialError::Pattern(msg.into())
}

pub fn apply_move(d: &SpatialDiagram, mv: Move) -> Result<SpatialDiagram, SpatialError> {
    match mv {
        Move::Curl { dart, positive } => insert_tangle(d, &[dart], &tangles::curl(positive)),
        Move::PushAcross { darts, first_over } => {
            let h = if first_over { 1 } else { -1 };
            insert_tangle(d, &darts, &tangles::r2(h, h).1)
        }
        Move::Triangle { dart } => triangle(d, dart),
        Move::Commute { dart } => {
            let mut alpha = Rewire::new(d);
            alpha.commute(d, dart)?;
            alpha.finish(d, d.crossings().to_vec())
        }
        Move::CrossingChange { vertex } => {
            let c = *d.crossing_at(vertex).ok_or_else(|| pattern(format!("vertex {vertex} is not a crossing")))?;
            let [_, b, _, dd] = d.crossing_rotation(&c);
            let crossings =
                d.crossings().iter().map(|x| if x.vertex == vertex { Crossing { vertex, over: [b, dd] } } else { *x });
            SpatialDiagram::new(d.map().clone(), crossings.collect())
        }
        Move::Virtualize { vertex } => {
            let c = *d.crossing_at(vertex).ok_or_else(|| pattern(format!("vertex {vertex} is not a crossing")))?;
            let [a, b, cc, dd] = d.crossing_rotation(&c);
            let (mut vertices, edges, _, _) = d.map().parts();
            vertices[vertex] = vec![a, dd, cc, b];
            SpatialDiagram::new(CombMap::new(vertices, edges)?, d.crossings().to_vec())
        }
    }
}

/// Edge pairing under construction.
struct Rewire {
    alpha: Vec<usize>,
}

impl Rewire {
    fn new(d: &SpatialDiagram) -> Self {
        let m = d.map();
        Rewire { alpha: (0..m.num_half_edges()).map(|h| m.alpha(h)).collect() }
    }

    fn join(&mut self, a: usize, b: usize) {
        self.alpha[a] = b;
        self.alpha[b] = a;
    }

    /// The edge of `dart` runs between two crossings along one strand; reorder them.
    fn commute(&mut self, d: &SpatialDiagram, dart: usize) -> Result<(), SpatialError> {
        let m = d.map();
        if dart >= m.num_half_edges() {
            return Err(pattern(format!("no half-edge {dart}")));
        }
        let x_out = dart;
        let y_in = self.alpha[dart];
        let (x, y) = (m.vertex_of(x_out), m.vertex_of(y_in));
        if d.crossing_at(x).is_none() || d.crossing_at(y).is_none() || x == y {
            return Err(pattern("the edge must join two distinct crossings"));
        }
        let x_in = d.opposite(x_out);
        let y_out = d.opposite(y_in);
        let p = self.alpha[x_in];
        let r = self.alpha[y_out];
        if p == y_out || [p, r].iter().any(|&h| h == x_out || h == y_in) {
            return Err(pattern("the strand closes up between the two crossings"));
        }
        self.join(p, y_in);
        self.join(y_out, x_in);
        self.join(x_out, r);
        Ok(())
    }

    fn finish(self, d: &SpatialDiagram, crossings: Vec<Crossing>) -> Result<SpatialDiagram, SpatialError> {
        let edges: Vec<[usize; 2]> =
            (0..self.alpha.len()).filter(|&h| h < self.alpha[h]).map(|h| [h, self.alpha[h]]).collect();
        let map = CombMap::new(d.map().rotations().to_vec(), edges)?;
        SpatialDiagram::new(map, crossings)
    }
}

fn triangle(d: &SpatialDiagram, dart: usize) -> Result<SpatialDiagram, SpatialError> {
    let m = d.map();
    if dart >= m.num_half_edges() {
        return Err(pattern(format!("no half-edge {dart}")));
    }
    let face = [dart, m.sigma(m.alpha(dart)), m.sigma(m.alpha(m.sigma(m.alpha(dart))))];
    if m.sigma(m.alpha(face[2])) != dart {
        return Err(pattern("the face is not a triangle"));
    }
    let verts: Vec<usize> = face.iter().map(|&h| m.vertex_of(h)).collect();
    if verts.iter().any(|&v| d.crossing_at(v).is_none())
        || verts[0] == verts[1]
        || verts[1] == verts[2]
        || verts[0] == verts[2]
    {
        return Err(pattern("the triangle needs three distinct crossings"));
    }
    let is_over = |h: usize| d.crossing_at(m.vertex_of(h)).map(|c| c.over.contains(&h)).unwrap_or(false);
    if !face.iter().any(|&h| is_over(h) == is_over(m.alpha(h))) {
        return Err(pattern("the three strands are cyclically layered"));
    }
    let mut outer: Vec<usize> =
        face.iter().flat_map(|&h| [m.edge_of(d.opposite(h)), m.edge_of(d.opposite(m.alpha(h)))]).collect();
    outer.extend(face.iter().map(|&h| m.edge_of(h)));
    let mut sorted = outer.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != outer.len() {
        return Err(pattern("edges around the triangle are not distinct"));
    }
    let mut rw = Rewire::new(d);
    for &h in &face {
        rw.commute(d, h)?;
    }
    rw.finish(d, d.crossings().to_vec())
}

/// Sequences of `k` half-edges on one face, in face order, from distinct edges.
pub fn face_sites(m: &CombMap, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for orbit in m.face_orbits() {
        let len = orbit.len();
        for start in 0..len {
            let mut pick = vec![start];
            extend_sites(m, &orbit, start, k, &mut pick, &mut out);
        }
    }
    out
}

fn extend_sites(
    m: &CombMap,
    orbit: &[usize],
    start: usize,
    k: usize,
    pick: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let len = orbit.len();
    if pick.len() == k {
        out.push(pick.iter().map(|&i| orbit[i]).collect());
        return;
    }
    let last = *pick.last().expect("non-empty");
    let mut off = (last + len - start) % len + 1;
    while off < len {
        let i = (start + off) % len;
        let e = m.edge_of(orbit[i]);
        if !pick.iter().any(|&j| m.edge_of(orbit[j]) == e) {
            pick.push(i);
            extend_sites(m, orbit, start, k, pick, out);
            pick.pop();
        }
        off += 1;
    }
}

/// Two tangles with the same ports, related by a move.
#[derive(Clone, Debug)]
pub struct TanglePair {
    pub name: &'static str,
    pub before: Drawing,
    pub after: Drawing,
}

impl TanglePair {
    /// Number of half-edges the pair is glued along.
    pub fn arity(&self) -> usize {
        self.before.num_ports() / 2
    }

    /// Both sides glued into the face of `darts`.
    pub fn apply(&self, d: &SpatialDiagram, darts: &[usize]) -> Result<(SpatialDiagram, SpatialDiagram), SpatialError> {
        Ok((insert_tangle(d, darts, &self.before)?, insert_tangle(d, darts, &self.after)?))
    }
}

/// Tangle templates. Ports sit on a circle of radius 100 in the order expected by
/// [`insert_tangle`].
pub mod tangles {
    use super::{Drawing, TanglePair};

    fn ring(k: usize) -> (Drawing, Vec<usize>) {
        let mut d = Drawing::new();
        let start = match k {
            1 => 180.0,
            2 => 135.0,
            _ => 90.0,
        };
        let ports = (0..2 * k)
            .map(|j| {
                let a = (start + 180.0 * j as f64 / k as f64).to_radians();
                d.port((100.0 * a.cos()).round() as i64, (100.0 * a.sin()).round() as i64)
            })
            .collect();
        (d, ports)
    }

    /// A curl on one strand; `positive` picks the over segment.
    pub fn curl(positive: bool) -> Drawing {
        let (mut d, p) = ring(1);
        let h = if positive { 1 } else { -1 };
        d.curve_with_heights(p[0], p[1], &[(50, 10), (0, 60), (-50, 10)], &[0, 0, 0, h]);
        d
    }

    /// Two strands, straight (`.0`) or pushed across each other (`.1`); heights of the
    /// first strand at its two crossings.
    pub fn r2(first: i32, second: i32) -> (Drawing, Drawing) {
        let (mut a, p) = ring(2);
        a.curve(p[0], p[3], &[], 0);
        a.curve(p[2], p[1], &[], 0);
        let (mut b, p) = ring(2);
        b.curve_with_heights(p[0], p[3], &[(0, -40)], &[first, second]);
        b.curve(p[2], p[1], &[(0, 40)], 0);
        (a, b)
    }

    pub fn r2_pair(first_over: bool) -> TanglePair {
        let h = if first_over { 1 } else { -1 };
        let (before, after) = r2(h, h);
        TanglePair { name: "R2", before, after }
    }

    /// Two strands linked by crossings of opposite type; not a move, but a classical tangle.
    pub fn clasp(first_over: bool) -> Drawing {
        let h = if first_over { 1 } else { -1 };
        r2(h, -h).1
    }

    fn three_strands(bend: i64, heights: [i32; 3], virtual_first: bool) -> Drawing {
        let (mut d, p) = ring(3);
        if virtual_first {
            d.virtual_curve(p[0], p[3], &[(bend, 0)]);
        } else {
            d.curve(p[0], p[3], &[(bend, 0)], heights[0]);
        }
        d.curve(p[1], p[4], &[], heights[1]);
        d.curve(p[2], p[5], &[], heights[2]);
        d
    }

    /// The bent strand slides across the crossing of the two straight ones; it must be
    /// above or below both.
    pub fn r3_pair(heights: [i32; 3]) -> TanglePair {
        let [a, b, c] = heights;
        assert!((a > b && a > c) || (a < b && a < c), "the moving strand must be on top or at the bottom");
        TanglePair { name: "R3", before: three_strands(-20, heights, false), after: three_strands(20, heights, false) }
    }

    /// A virtual strand slides across a classical crossing.
    pub fn mixed_pair(straight_first_over: bool) -> TanglePair {
        let h = if straight_first_over { [0, 1, -1] } else { [0, -1, 1] };
        TanglePair { name: "mixed", before: three_strands(-20, h, true), after: three_strands(20, h, true) }
    }

    /// A strand crossing two strands virtually, or not at all.
    pub fn virtual_r2_pair() -> TanglePair {
        let (before, _) = r2(0, 0);
        let (mut after, p) = ring(2);
        after.virtual_curve(p[0], p[3], &[(0, -40)]);
        after.curve(p[2], p[1], &[(0, 40)], 0);
        TanglePair { name: "virtual R2", before, after }
    }

    fn vertex_slide(bend: i64, strand: Option<i32>) -> Drawing {
        let (mut d, p) = ring(3);
        let w = d.vertex(0, 0);
        for &q in &[p[1], p[2], p[4], p[5]] {
            d.curve(w, q, &[], 0);
        }
        match strand {
            Some(h) => d.curve(p[0], p[3], &[(bend, 0)], h),
            None => d.virtual_curve(p[0], p[3], &[(bend, 0)]),
        };
        d
    }

    /// A strand passing a new 4-valent vertex, moved from one side to the other.
    pub fn vertex_slide_pair(over: bool) -> TanglePair {
        let h = if over { 1 } else { -1 };
        TanglePair { name: "IV", before: vertex_slide(-40, Some(h)), after: vertex_slide(40, Some(h)) }
    }

    pub fn virtual_vertex_slide_pair() -> TanglePair {
        TanglePair { name: "virtual IV", before: vertex_slide(-40, None), after: vertex_slide(40, None) }
    }
}
