//! Combinatorial maps (rotation systems) and the operations the invariants need.

mod canon;
pub mod enumerate;
mod map;
mod ops;

pub use canon::CanonKey;
pub(crate) use map::UnionFind;
pub use map::{parity_sign, CombMap, EulerData};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MapError {
    #[error("invalid map: {0}")]
    Invalid(String),
    #[error("no edge {0}")]
    NoSuchEdge(usize),
    #[error("no vertex {0}")]
    NoSuchVertex(usize),
    #[error("unsupported: {0}")]
    Unsupported(String),
}

/// Local classification of an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeClass {
    pub is_loop: bool,
    /// Deleting the edge disconnects its component.
    pub is_bridge: bool,
    /// Deleting the edge merges two faces, i.e. both sides lie on the same face.
    pub is_coloop: bool,
}

impl CombMap {
    pub fn classify_edge(&self, e: usize) -> Result<EdgeClass, MapError> {
        let minus = self.delete_edge(e)?;
        Ok(EdgeClass {
            is_loop: self.is_loop(e),
            is_bridge: minus.components() > self.components(),
            is_coloop: minus.faces() == self.faces() + 1,
        })
    }

    pub fn coloops(&self) -> Vec<usize> {
        let f = self.faces();
        (0..self.num_edges()).filter(|&e| self.delete_edges_where(|x| x == e).faces() == f + 1).collect()
    }

    pub fn has_bridge(&self) -> bool {
        let b0 = self.components();
        (0..self.num_edges()).any(|e| self.delete_edges_where(|x| x == e).components() > b0)
    }

    /// Two coloops interlace when the second is no longer a coloop once the first is deleted.
    pub fn interlaced(&self, e: usize, f: usize) -> Result<bool, MapError> {
        if e == f {
            return Ok(false);
        }
        let ce = self.classify_edge(e)?;
        let cf = self.classify_edge(f)?;
        if !ce.is_coloop || !cf.is_coloop {
            return Ok(false);
        }
        let minus = self.delete_edge(e)?;
        let f_in_minus = if f > e { f - 1 } else { f };
        Ok(!minus.classify_edge(f_in_minus)?.is_coloop)
    }
}

#[cfg(test)]
mod tests {
    use crate::fixtures;

    #[test]
    fn fixture_euler_data() {
        let p = fixtures::theta_p().euler_data();
        assert_eq!((p.vertices, p.edges, p.faces, p.genus), (2, 3, 3, 0));
        let t = fixtures::theta_t().euler_data();
        assert_eq!((t.faces, t.genus), (1, 1));
        let l = fixtures::loop1().euler_data();
        assert_eq!((l.faces, l.genus), (2, 0));
        let b = fixtures::bouquet2_int().euler_data();
        assert_eq!((b.faces, b.genus), (1, 1));
    }

    #[test]
    fn bouquet_loops_are_interlaced_coloops() {
        let b = fixtures::bouquet2_int();
        assert!(b.classify_edge(0).unwrap().is_coloop);
        assert!(b.classify_edge(1).unwrap().is_coloop);
        assert!(b.interlaced(0, 1).unwrap());
    }

    #[test]
    fn loop_is_not_a_coloop() {
        let c = fixtures::loop1().classify_edge(0).unwrap();
        assert!(c.is_loop && !c.is_coloop && !c.is_bridge);
    }

    #[test]
    fn bridge_is_bridge_and_coloop() {
        let c = fixtures::bridge().classify_edge(0).unwrap();
        assert!(c.is_bridge && c.is_coloop);
    }
}
