//! Bundled fixture maps and diagrams.

use crate::ribbon::CombMap;
use crate::vgf::{parse_vgf, VgfDocument};

pub const THETA_P: &str = include_str!("../fixtures/theta_p.vgf");
pub const THETA_T: &str = include_str!("../fixtures/theta_t.vgf");
pub const LOOP1: &str = include_str!("../fixtures/loop1.vgf");
pub const BOUQUET2_INT: &str = include_str!("../fixtures/bouquet2_int.vgf");
pub const BRIDGE: &str = include_str!("../fixtures/bridge.vgf");
pub const K33_STD: &str = include_str!("../fixtures/k33_std.vgf");
pub const K4: &str = include_str!("../fixtures/k4.vgf");
pub const THETA_CROSSED: &str = include_str!("../fixtures/theta_crossed.vgf");
pub const UNKNOT_CURL: &str = include_str!("../fixtures/unknot_curl.vgf");
pub const K4_SQUARE: &str = include_str!("../fixtures/k4_square.vgf");

/// `(name, contents)` of every bundled fixture.
pub const ALL: &[(&str, &str)] = &[
    ("theta_p", THETA_P),
    ("theta_t", THETA_T),
    ("loop1", LOOP1),
    ("bouquet2_int", BOUQUET2_INT),
    ("bridge", BRIDGE),
    ("k33_std", K33_STD),
    ("k4", K4),
    ("theta_crossed", THETA_CROSSED),
    ("unknot_curl", UNKNOT_CURL),
    ("k4_square", K4_SQUARE),
];

pub fn document(text: &str) -> VgfDocument {
    parse_vgf(text).expect("bundled fixture parses")
}

fn map(text: &str) -> CombMap {
    document(text).map
}

/// Plane theta graph.
pub fn theta_p() -> CombMap {
    map(THETA_P)
}

/// Theta graph embedded on the torus.
pub fn theta_t() -> CombMap {
    map(THETA_T)
}

/// Single vertex with one loop.
pub fn loop1() -> CombMap {
    map(LOOP1)
}

/// Single vertex with two interlaced loops.
pub fn bouquet2_int() -> CombMap {
    map(BOUQUET2_INT)
}

/// Two vertices joined by one edge.
pub fn bridge() -> CombMap {
    map(BRIDGE)
}

/// `K_{3,3}` with the rotation of the straight-line drawing from `(1,n)` to `(2,m)`.
pub fn k33_std() -> CombMap {
    map(K33_STD)
}

/// Plane `K_4`.
pub fn k4() -> CombMap {
    map(K4)
}

/// Cycle of length `n >= 1` (a loop when `n = 1`).
pub fn cycle(n: usize) -> CombMap {
    let vertices = (0..n).map(|i| vec![2 * i + 1, (2 * i + 2) % (2 * n)]).collect();
    let edges = (0..n).map(|i| [2 * i, 2 * i + 1]).collect();
    CombMap::new(vertices, edges).unwrap()
}
