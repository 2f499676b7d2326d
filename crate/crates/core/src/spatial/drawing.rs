//! Diagrams from plane polyline drawings, using exact integer geometry.
//!
//! Curves run between nodes; wherever two curves cross, a crossing vertex is created
//! unless one of them is virtual. A segment with the larger height passes over.
//! Drawings with ports describe tangles that can be glued into a face of a diagram.

use std::cmp::Ordering;

use crate::ribbon::CombMap;

use super::{Crossing, SpatialDiagram, SpatialError};

pub type Point = (i64, i64);

#[derive(Clone, Debug)]
struct Node {
    at: Point,
    port: Option<usize>,
}

#[derive(Clone, Debug)]
struct Curve {
    from: usize,
    to: usize,
    via: Vec<Point>,
    heights: Vec<i32>,
    is_virtual: bool,
}

#[derive(Clone, Debug, Default)]
pub struct Drawing {
    nodes: Vec<Node>,
    curves: Vec<Curve>,
    ports: usize,
}

/// Rotations and edges on dart labels; ports are labels carried by an edge but no vertex.
#[derive(Clone, Debug)]
pub(crate) struct Sketch {
    pub vertices: Vec<Vec<usize>>,
    pub edges: Vec<[usize; 2]>,
    pub port_darts: Vec<usize>,
    pub crossings: Vec<(usize, [usize; 2])>,
}

fn bad(msg: impl Into<String>) -> SpatialError {
    SpatialError::Invalid(msg.into())
}

fn sub(a: Point, b: Point) -> (i128, i128) {
    (a.0 as i128 - b.0 as i128, a.1 as i128 - b.1 as i128)
}

fn cross(a: (i128, i128), b: (i128, i128)) -> i128 {
    a.0 * b.1 - a.1 * b.0
}

fn dot(a: (i128, i128), b: (i128, i128)) -> i128 {
    a.0 * b.0 + a.1 * b.1
}

fn orient(a: Point, b: Point, c: Point) -> i128 {
    cross(sub(b, a), sub(c, a))
}

fn on_segment(p: Point, a: Point, b: Point) -> bool {
    orient(a, b, p) == 0 && p.0 >= a.0.min(b.0) && p.0 <= a.0.max(b.0) && p.1 >= a.1.min(b.1) && p.1 <= a.1.max(b.1)
}

/// Counterclockwise angular order starting from the positive x axis.
fn angle_cmp(a: (i128, i128), b: (i128, i128)) -> Ordering {
    let half = |v: (i128, i128)| u8::from(!(v.1 > 0 || (v.1 == 0 && v.0 > 0)));
    half(a).cmp(&half(b)).then_with(|| 0.cmp(&cross(a, b)))
}

fn sort_by_angle(mut darts: Vec<(usize, (i128, i128))>) -> Result<Vec<usize>, SpatialError> {
    darts.sort_by(|x, y| angle_cmp(x.1, y.1));
    if darts.windows(2).any(|w| angle_cmp(w[0].1, w[1].1) == Ordering::Equal) {
        return Err(bad("two curves leave a point in the same direction"));
    }
    Ok(darts.into_iter().map(|(d, _)| d).collect())
}

struct Segment {
    curve: usize,
    index: usize,
    a: Point,
    b: Point,
    height: i32,
}

struct Hit {
    seg: [usize; 2],
    /// Position along each segment as `num / den`, `den > 0`.
    t: [(i128, i128); 2],
    point: (i128, i128, i128),
}

impl Drawing {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(&mut self, x: i64, y: i64) -> usize {
        self.nodes.push(Node { at: (x, y), port: None });
        self.nodes.len() - 1
    }

    /// Ports are numbered in creation order, which must run counterclockwise around the drawing.
    pub fn port(&mut self, x: i64, y: i64) -> usize {
        self.nodes.push(Node { at: (x, y), port: Some(self.ports) });
        self.ports += 1;
        self.nodes.len() - 1
    }

    pub fn num_ports(&self) -> usize {
        self.ports
    }

    pub fn curve(&mut self, from: usize, to: usize, via: &[Point], height: i32) -> usize {
        self.curve_with_heights(from, to, via, &vec![height; via.len() + 1])
    }

    /// One height per segment.
    pub fn curve_with_heights(&mut self, from: usize, to: usize, via: &[Point], heights: &[i32]) -> usize {
        assert_eq!(heights.len(), via.len() + 1, "one height per segment");
        self.curves.push(Curve { from, to, via: via.to_vec(), heights: heights.to_vec(), is_virtual: false });
        self.curves.len() - 1
    }

    /// A curve whose crossings are all virtual.
    pub fn virtual_curve(&mut self, from: usize, to: usize, via: &[Point]) -> usize {
        let c = self.curve(from, to, via, 0);
        self.curves[c].is_virtual = true;
        c
    }

    fn points(&self, c: &Curve) -> Vec<Point> {
        let mut p = vec![self.nodes[c.from].at];
        p.extend_from_slice(&c.via);
        p.push(self.nodes[c.to].at);
        p
    }

    fn segments(&self) -> Result<Vec<Segment>, SpatialError> {
        let mut out = Vec::new();
        for (ci, c) in self.curves.iter().enumerate() {
            if c.from >= self.nodes.len() || c.to >= self.nodes.len() {
                return Err(bad(format!("curve {ci} ends at a missing node")));
            }
            let p = self.points(c);
            for i in 0..p.len() - 1 {
                if p[i] == p[i + 1] {
                    return Err(bad(format!("curve {ci} has a zero-length segment")));
                }
                out.push(Segment { curve: ci, index: i, a: p[i], b: p[i + 1], height: c.heights[i] });
            }
        }
        Ok(out)
    }

    fn is_node_point(&self, p: Point) -> bool {
        self.nodes.iter().any(|n| n.at == p)
    }

    fn intersections(&self, segs: &[Segment]) -> Result<Vec<Hit>, SpatialError> {
        for n in &self.nodes {
            if let Some(s) = segs.iter().find(|s| s.a != n.at && s.b != n.at && on_segment(n.at, s.a, s.b)) {
                return Err(bad(format!("node at {:?} lies on curve {}", n.at, s.curve)));
            }
        }
        let mut hits: Vec<Hit> = Vec::new();
        for i in 0..segs.len() {
            for j in i + 1..segs.len() {
                let (s, t) = (&segs[i], &segs[j]);
                let shared = [s.a, s.b].into_iter().find(|p| *p == t.a || *p == t.b);
                if let Some(p) = shared {
                    let adjacent = s.curve == t.curve && s.index + 1 == t.index && p == s.b;
                    if !adjacent && !self.is_node_point(p) {
                        return Err(bad(format!("curves touch at {p:?}")));
                    }
                    let ds = sub(if s.a == p { s.b } else { s.a }, p);
                    let dt = sub(if t.a == p { t.b } else { t.a }, p);
                    if cross(ds, dt) == 0 && dot(ds, dt) > 0 {
                        return Err(bad(format!("curves overlap near {p:?}")));
                    }
                    continue;
                }
                let (o1, o2) = (orient(s.a, s.b, t.a), orient(s.a, s.b, t.b));
                let (o3, o4) = (orient(t.a, t.b, s.a), orient(t.a, t.b, s.b));
                if o1.signum() * o2.signum() < 0 && o3.signum() * o4.signum() < 0 {
                    let r = sub(s.b, s.a);
                    let q = sub(t.b, t.a);
                    let w = sub(t.a, s.a);
                    let mut den = cross(r, q);
                    let mut tn = cross(w, q);
                    let mut un = cross(w, r);
                    if den < 0 {
                        den = -den;
                        tn = -tn;
                        un = -un;
                    }
                    let point = (s.a.0 as i128 * den + tn * r.0, s.a.1 as i128 * den + tn * r.1, den);
                    if hits
                        .iter()
                        .any(|h| h.point.0 * den == point.0 * h.point.2 && h.point.1 * den == point.1 * h.point.2)
                    {
                        return Err(bad("three curves meet at one point"));
                    }
                    hits.push(Hit { seg: [i, j], t: [(tn, den), (un, den)], point });
                } else if on_segment(t.a, s.a, s.b)
                    || on_segment(t.b, s.a, s.b)
                    || on_segment(s.a, t.a, t.b)
                    || on_segment(s.b, t.a, t.b)
                {
                    return Err(bad(format!("curves {} and {} touch without crossing", s.curve, t.curve)));
                }
            }
        }
        Ok(hits)
    }

    pub(crate) fn sketch(&self) -> Result<Sketch, SpatialError> {
        let segs = self.segments()?;
        let hits = self.intersections(&segs)?;
        let nc = self.curves.len();
        // events along each curve: (segment index, t, crossing, side)
        let mut events: Vec<Vec<(usize, (i128, i128), usize, usize)>> = vec![Vec::new(); nc];
        let mut crossing_rotations = Vec::new();
        let mut crossing_over = Vec::new();
        let mut real = 0;
        for h in &hits {
            let (s, t) = (&segs[h.seg[0]], &segs[h.seg[1]]);
            if self.curves[s.curve].is_virtual || self.curves[t.curve].is_virtual {
                continue;
            }
            if s.height == t.height {
                return Err(bad(format!("curves {} and {} cross at equal height", s.curve, t.curve)));
            }
            let base = 2 * nc + 4 * real;
            let (vs, vt) = (sub(s.b, s.a), sub(t.b, t.a));
            let dirs = vec![(base, (-vs.0, -vs.1)), (base + 1, vs), (base + 2, (-vt.0, -vt.1)), (base + 3, vt)];
            crossing_rotations.push(sort_by_angle(dirs)?);
            crossing_over.push(if s.height > t.height { [base, base + 1] } else { [base + 2, base + 3] });
            events[s.curve].push((s.index, h.t[0], real, 0));
            events[t.curve].push((t.index, h.t[1], real, 1));
            real += 1;
        }
        let mut edges = Vec::new();
        for (c, ev) in events.iter_mut().enumerate() {
            ev.sort_by(|x, y| x.0.cmp(&y.0).then_with(|| (x.1 .0 * y.1 .1).cmp(&(y.1 .0 * x.1 .1))));
            let mut prev = 2 * c;
            for &(_, _, k, side) in ev.iter() {
                let base = 2 * nc + 4 * k + 2 * side;
                edges.push([prev, base]);
                prev = base + 1;
            }
            edges.push([prev, 2 * c + 1]);
        }
        let mut vertices = Vec::new();
        let mut port_darts = vec![usize::MAX; self.ports];
        for (ni, n) in self.nodes.iter().enumerate() {
            let mut ends = Vec::new();
            for (ci, c) in self.curves.iter().enumerate() {
                let p = self.points(c);
                if c.from == ni {
                    ends.push((2 * ci, sub(p[1], p[0])));
                }
                if c.to == ni {
                    let k = p.len();
                    ends.push((2 * ci + 1, sub(p[k - 2], p[k - 1])));
                }
            }
            match n.port {
                Some(pi) => {
                    if ends.len() != 1 {
                        return Err(bad(format!("port {pi} has {} curve ends, expected 1", ends.len())));
                    }
                    port_darts[pi] = ends[0].0;
                }
                None => vertices.push(sort_by_angle(ends)?),
            }
        }
        let first = vertices.len();
        let crossings = crossing_over.into_iter().enumerate().map(|(k, o)| (first + k, o)).collect();
        vertices.extend(crossing_rotations);
        Ok(Sketch { vertices, edges, port_darts, crossings })
    }

    /// The diagram of a drawing without ports.
    pub fn to_diagram(&self) -> Result<SpatialDiagram, SpatialError> {
        if self.ports > 0 {
            return Err(bad("drawing has ports; glue it into a face instead"));
        }
        let sk = self.sketch()?;
        let mut labels: Vec<usize> = sk.edges.iter().flatten().copied().collect();
        labels.sort_unstable();
        let relabel = |h: usize| labels.binary_search(&h).expect("dart on an edge");
        let vertices = sk.vertices.iter().map(|r| r.iter().map(|&h| relabel(h)).collect()).collect();
        let edges = sk.edges.iter().map(|&[a, b]| [relabel(a), relabel(b)]).collect();
        let map = CombMap::new(vertices, edges)?;
        let crossings =
            sk.crossings.iter().map(|&(v, [a, b])| Crossing { vertex: v, over: [relabel(a), relabel(b)] }).collect();
        SpatialDiagram::new(map, crossings)
    }
}

/// Glue a tangle into the face containing `darts`, cutting their edges.
///
/// `darts` must lie on one face in traversal order and belong to distinct edges. For
/// `k` darts the tangle needs `2k` ports, which counterclockwise read
/// `in₁, out_k, in_k, …, out₂, in₂, out₁`, where `in_i` attaches to `darts[i]` and `out_i`
/// to the opposite end of its edge.
pub fn insert_tangle(host: &SpatialDiagram, darts: &[usize], tangle: &Drawing) -> Result<SpatialDiagram, SpatialError> {
    let map = host.map();
    let k = darts.len();
    if k == 0 {
        return Err(SpatialError::Pattern("no half-edges given".into()));
    }
    if tangle.num_ports() != 2 * k {
        return Err(SpatialError::Pattern(format!("tangle has {} ports, need {}", tangle.num_ports(), 2 * k)));
    }
    check_face_sequence(map, darts)?;
    let sk = tangle.sketch()?;
    let n = map.num_half_edges();
    let mut attach = vec![0usize; 2 * k];
    for p in 0..2 * k {
        attach[p] = if p == 0 {
            darts[0]
        } else if p == 2 * k - 1 {
            map.alpha(darts[0])
        } else if p % 2 == 1 {
            map.alpha(darts[k - 1 - (p - 1) / 2])
        } else {
            darts[k - 1 - (p - 2) / 2]
        };
    }
    let port_of = |h: usize| sk.port_darts.iter().position(|&d| d == h);
    let lift = |h: usize| match port_of(h) {
        Some(p) => attach[p],
        None => n + h,
    };
    let cut: Vec<usize> = darts.iter().map(|&d| map.edge_of(d)).collect();
    let (mut vertices, host_edges, _, _) = map.parts();
    let mut edges: Vec<[usize; 2]> =
        host_edges.into_iter().enumerate().filter(|(e, _)| !cut.contains(e)).map(|(_, p)| p).collect();
    edges.extend(sk.edges.iter().map(|&[a, b]| [lift(a), lift(b)]));
    let nv = vertices.len();
    vertices.extend(sk.vertices.iter().map(|r| r.iter().map(|&h| n + h).collect::<Vec<_>>()));
    let ne = edges.len();
    let merged = CombMap::from_sparse(vertices, edges, vec![false; ne], None);
    // same compaction as `from_sparse`: host darts keep their labels, tangle darts follow
    let mut labels: Vec<usize> =
        (0..n).chain(sk.edges.iter().flatten().map(|&h| lift(h)).filter(|&l| l >= n)).collect();
    labels.sort_unstable();
    let relabel = |h: usize| labels.binary_search(&h).expect("dart on an edge");
    let mut crossings: Vec<Crossing> = host
        .crossings()
        .iter()
        .map(|c| Crossing { vertex: c.vertex, over: [relabel(c.over[0]), relabel(c.over[1])] })
        .collect();
    crossings.extend(
        sk.crossings.iter().map(|&(v, [a, b])| Crossing { vertex: nv + v, over: [relabel(n + a), relabel(n + b)] }),
    );
    SpatialDiagram::new(merged, crossings)
}

fn check_face_sequence(map: &CombMap, darts: &[usize]) -> Result<(), SpatialError> {
    let n = map.num_half_edges();
    if let Some(&d) = darts.iter().find(|&&d| d >= n) {
        return Err(SpatialError::Pattern(format!("no half-edge {d}")));
    }
    let mut orbit = Vec::new();
    let mut h = darts[0];
    loop {
        orbit.push(h);
        h = map.sigma(map.alpha(h));
        if h == darts[0] {
            break;
        }
    }
    let mut last = 0;
    for (i, &d) in darts.iter().enumerate() {
        match orbit.iter().position(|&x| x == d) {
            Some(p) if i == 0 || p > last => last = p,
            _ => return Err(SpatialError::Pattern(format!("half-edge {d} is not on the face after the previous one"))),
        }
    }
    let mut edges: Vec<usize> = darts.iter().map(|&d| map.edge_of(d)).collect();
    edges.sort_unstable();
    edges.dedup();
    if edges.len() != darts.len() {
        return Err(SpatialError::Pattern("half-edges must lie on distinct edges".into()));
    }
    Ok(())
}
