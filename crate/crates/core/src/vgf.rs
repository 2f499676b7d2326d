//! The `.vgf` JSON graph format.
//!
//! ```json
//! {"vertices": [[0,2,4],[1,5,3]], "edges": [[0,1],[2,3],[4,5]],
//!  "vertex_signs": {"0": -1, "1": -1}, "edge_twists": [2],
//!  "crossings": [{"vertex": 0, "over": [0, 4]}]}
//! ```
//!
//! Rotations are counterclockwise. Half-edge ids must be exactly `0..2m`, each used once
//! in `vertices` and once in `edges`. Only `vertices` and `edges` are required.

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::ribbon::CombMap;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{0}")]
pub struct VgfError(pub String);

#[derive(Deserialize)]
#[serde(untagged)]
enum SignsField {
    List(Vec<i8>),
    Map(BTreeMap<String, i8>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CrossingField {
    vertex: usize,
    over: Vec<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct VgfFile {
    vertices: Vec<Vec<usize>>,
    edges: Vec<Vec<usize>>,
    #[serde(default)]
    vertex_signs: Option<SignsField>,
    #[serde(default)]
    edge_twists: Vec<usize>,
    #[serde(default)]
    crossings: Vec<CrossingField>,
}

/// A parsed file: the map plus raw crossing records `(vertex, over pair)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VgfDocument {
    pub map: CombMap,
    pub crossings: Vec<(usize, [usize; 2])>,
}

pub fn parse_vgf(text: &str) -> Result<VgfDocument, VgfError> {
    let file: VgfFile =
        serde_json::from_str(text).map_err(|e| VgfError(format!("line {}, column {}: {}", e.line(), e.column(), e)))?;
    let mut edges = Vec::with_capacity(file.edges.len());
    for (i, e) in file.edges.iter().enumerate() {
        match e.as_slice() {
            &[a, b] => edges.push([a, b]),
            _ => return Err(VgfError(format!("edges[{i}]: expected exactly 2 half-edge ids, got {}", e.len()))),
        }
    }
    let nv = file.vertices.len();
    let mut map = CombMap::new(file.vertices, edges).map_err(|e| VgfError(e.to_string()))?;
    if let Some(signs) = file.vertex_signs {
        let list = match signs {
            SignsField::List(l) => l,
            SignsField::Map(m) => {
                let mut l = vec![0i8; nv];
                for (k, s) in m {
                    let v: usize =
                        k.parse().map_err(|_| VgfError(format!("vertex_signs: key {k:?} is not a vertex index")))?;
                    if v >= nv {
                        return Err(VgfError(format!("vertex_signs: vertex {v} out of range")));
                    }
                    l[v] = s;
                }
                if let Some(v) = l.iter().position(|&s| s == 0) {
                    return Err(VgfError(format!("vertex_signs: missing sign for vertex {v}")));
                }
                l
            }
        };
        map = map.with_signs(list).map_err(|e| VgfError(e.to_string()))?;
    }
    map = map.with_twists(&file.edge_twists).map_err(|e| VgfError(e.to_string()))?;
    let mut crossings = Vec::new();
    for (i, c) in file.crossings.iter().enumerate() {
        let over: [usize; 2] = match c.over.as_slice() {
            &[a, b] => [a, b],
            _ => return Err(VgfError(format!("crossings[{i}].over: expected 2 half-edge ids"))),
        };
        if c.vertex >= nv {
            return Err(VgfError(format!("crossings[{i}].vertex: vertex {} out of range", c.vertex)));
        }
        let rot = map.rotation(c.vertex);
        if rot.len() != 4 {
            return Err(VgfError(format!("crossings[{i}]: vertex {} has degree {}, expected 4", c.vertex, rot.len())));
        }
        let pos = |h: usize| rot.iter().position(|&x| x == h);
        match (pos(over[0]), pos(over[1])) {
            (Some(p), Some(q)) if (p + 2) % 4 == q => {}
            _ => {
                return Err(VgfError(format!(
                    "crossings[{i}].over: {:?} are not opposite half-edges of vertex {}",
                    over, c.vertex
                )))
            }
        }
        if crossings.iter().any(|(v, _)| *v == c.vertex) {
            return Err(VgfError(format!("crossings[{i}]: vertex {} listed twice", c.vertex)));
        }
        crossings.push((c.vertex, over));
    }
    Ok(VgfDocument { map, crossings })
}

fn list(xs: impl IntoIterator<Item = String>) -> String {
    format!("[{}]", xs.into_iter().collect::<Vec<_>>().join(","))
}

/// Canonical serialization: rotations start at their least half-edge, vertices are sorted by
/// least half-edge (isolated vertices last), edges are sorted; indices in the optional fields
/// are renumbered accordingly.
pub fn serialize_vgf(map: &CombMap, crossings: &[(usize, [usize; 2])]) -> String {
    let mut order: Vec<usize> = (0..map.num_vertices()).collect();
    order.sort_by_key(|&v| {
        let r = map.rotation(v);
        (r.is_empty(), r.iter().min().copied(), v)
    });
    let mut new_index = vec![0; map.num_vertices()];
    for (i, &v) in order.iter().enumerate() {
        new_index[v] = i;
    }
    let rotations: Vec<String> = order
        .iter()
        .map(|&v| {
            let r = map.rotation(v);
            let p = (0..r.len()).min_by_key(|&i| r[i]).unwrap_or(0);
            list((0..r.len()).map(|i| r[(p + i) % r.len()].to_string()))
        })
        .collect();
    let mut edges: Vec<([usize; 2], usize)> =
        map.edge_list().iter().enumerate().map(|(e, &[a, b])| ([a.min(b), a.max(b)], e)).collect();
    edges.sort();
    let mut new_edge = vec![0; map.num_edges()];
    for (i, &(_, e)) in edges.iter().enumerate() {
        new_edge[e] = i;
    }
    let mut out = format!(
        "{{\"vertices\":{},\"edges\":{}",
        list(rotations),
        list(edges.iter().map(|(p, _)| format!("[{},{}]", p[0], p[1])))
    );
    if let Some(signs) = map.signs() {
        let entries = order.iter().enumerate().map(|(i, &v)| format!("\"{}\":{}", i, signs[v]));
        out.push_str(&format!(",\"vertex_signs\":{{{}}}", entries.collect::<Vec<_>>().join(",")));
    }
    if map.has_twists() {
        let mut tw: Vec<usize> = map.twisted_edges().iter().map(|&e| new_edge[e]).collect();
        tw.sort();
        out.push_str(&format!(",\"edge_twists\":{}", list(tw.iter().map(|e| e.to_string()))));
    }
    if !crossings.is_empty() {
        let mut cs: Vec<(usize, [usize; 2])> =
            crossings.iter().map(|&(v, [a, b])| (new_index[v], [a.min(b), a.max(b)])).collect();
        cs.sort();
        let items = cs.iter().map(|(v, o)| format!("{{\"vertex\":{},\"over\":[{},{}]}}", v, o[0], o[1]));
        out.push_str(&format!(",\"crossings\":{}", list(items)));
    }
    out.push('}');
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_bit_exact() {
        let text = r#"{"vertices":[[4,0,2],[1,5,3]],"edges":[[1,0],[2,3],[4,5]],"vertex_signs":{"0":-1,"1":1},"edge_twists":[1]}"#;
        let doc = parse_vgf(text).unwrap();
        let s = serialize_vgf(&doc.map, &doc.crossings);
        assert_eq!(
            s,
            r#"{"vertices":[[0,2,4],[1,5,3]],"edges":[[0,1],[2,3],[4,5]],"vertex_signs":{"0":-1,"1":1},"edge_twists":[1]}"#
        );
        let again = parse_vgf(&s).unwrap();
        assert_eq!(serialize_vgf(&again.map, &again.crossings), s);
    }

    #[test]
    fn diagnostics_name_the_field() {
        let err = parse_vgf(r#"{"vertices":[[0,1]],"edges":[[0,1,2]]}"#).unwrap_err();
        assert!(err.0.contains("edges[0]"), "{}", err);
        let err = parse_vgf(r#"{"vertices":[[0,0]],"edges":[[0,1]]}"#).unwrap_err();
        assert!(err.0.contains("vertices[0][1]"), "{}", err);
        let err = parse_vgf("{\"vertices\": [[0,1]],\n \"edges\": [[0,1]]\n").unwrap_err();
        assert!(err.0.contains("line"), "{}", err);
    }

    #[test]
    fn crossing_over_pair_must_be_opposite() {
        let err =
            parse_vgf(r#"{"vertices":[[0,1,2,3]],"edges":[[0,3],[1,2]],"crossings":[{"vertex":0,"over":[0,1]}]}"#)
                .unwrap_err();
        assert!(err.0.contains("opposite"));
    }
}
