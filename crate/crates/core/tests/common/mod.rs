//! Generators shared by the integration tests.
#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use ribbonpoly::fixtures;
use ribbonpoly::spatial::{
    apply_move, face_sites, insert_tangle, tangles, yamada, Move, SpatialDiagram, TanglePair, YamadaVariant,
};
use ribbonpoly::{CombMap, HalfLaurent};

/// Connected oriented map with exactly `edges` edges and random rotations.
pub fn random_connected_map(rng: &mut ChaCha8Rng, edges: usize) -> CombMap {
    let nv = rng.gen_range(1..=edges + 1);
    let mut ends: Vec<(usize, usize)> = (1..nv).map(|v| (rng.gen_range(0..v), v)).collect();
    while ends.len() < edges {
        ends.push((rng.gen_range(0..nv), rng.gen_range(0..nv)));
    }
    ends.shuffle(rng);
    let mut rotations = vec![Vec::new(); nv];
    for (k, &(a, b)) in ends.iter().enumerate() {
        rotations[a].push(2 * k);
        rotations[b].push(2 * k + 1);
    }
    for r in rotations.iter_mut() {
        r.shuffle(rng);
    }
    let pairs = (0..edges).map(|k| [2 * k, 2 * k + 1]).collect();
    CombMap::new(rotations, pairs).expect("generated map is valid")
}

pub fn spatial(text: &str) -> SpatialDiagram {
    SpatialDiagram::from_document(&fixtures::document(text)).unwrap()
}

pub const MAX_BASE_CROSSINGS: usize = 3;

fn bases() -> Vec<SpatialDiagram> {
    let mut out: Vec<SpatialDiagram> = [fixtures::theta_p(), fixtures::theta_t(), fixtures::k4(), fixtures::cycle(2)]
        .into_iter()
        .map(|m| SpatialDiagram::crossingless(m).unwrap())
        .collect();
    out.extend([fixtures::THETA_CROSSED, fixtures::K4_SQUARE, fixtures::UNKNOT_CURL].map(spatial));
    out
}

/// One random local change; may leave the diagram alone when no site fits.
fn decorate(rng: &mut ChaCha8Rng, d: &SpatialDiagram) -> SpatialDiagram {
    let n = d.map().num_half_edges();
    let tried = match rng.gen_range(0..6) {
        0 => apply_move(d, Move::Curl { dart: rng.gen_range(0..n), positive: rng.gen() }),
        1 | 2 => match face_sites(d.map(), 2).choose(rng) {
            Some(s) if rng.gen_bool(0.5) => {
                apply_move(d, Move::PushAcross { darts: [s[0], s[1]], first_over: rng.gen() })
            }
            Some(s) => insert_tangle(d, s, &tangles::clasp(rng.gen())),
            None => return d.clone(),
        },
        3 => match face_sites(d.map(), 2).choose(rng) {
            Some(s) => tangles::virtual_r2_pair().apply(d, s).map(|p| p.1),
            None => return d.clone(),
        },
        4 => match d.crossings().choose(rng) {
            Some(c) => apply_move(d, Move::CrossingChange { vertex: c.vertex }),
            None => return d.clone(),
        },
        _ => match d.crossings().choose(rng) {
            Some(c) => apply_move(d, Move::Virtualize { vertex: c.vertex }),
            None => return d.clone(),
        },
    };
    tried.unwrap()
}

/// A small diagram, possibly with virtual crossings, with at most [`MAX_BASE_CROSSINGS`] crossings.
pub fn random_diagram(rng: &mut ChaCha8Rng) -> SpatialDiagram {
    let mut d = bases().choose(rng).unwrap().clone();
    for _ in 0..rng.gen_range(0..4) {
        let next = decorate(rng, &d);
        if next.num_crossings() <= MAX_BASE_CROSSINGS {
            d = next;
        }
    }
    d
}

pub fn move_pairs() -> Vec<TanglePair> {
    vec![
        tangles::r2_pair(true),
        tangles::r2_pair(false),
        tangles::r3_pair([2, 1, 0]),
        tangles::r3_pair([0, 2, 1]),
        tangles::r3_pair([-1, 0, 1]),
        tangles::vertex_slide_pair(true),
        tangles::vertex_slide_pair(false),
        tangles::virtual_r2_pair(),
        tangles::mixed_pair(true),
        tangles::mixed_pair(false),
        tangles::virtual_vertex_slide_pair(),
    ]
}

/// `(R^S, R^F)`.
pub fn both(d: &SpatialDiagram) -> (HalfLaurent, HalfLaurent) {
    (yamada(d, YamadaVariant::S).unwrap(), yamada(d, YamadaVariant::F).unwrap())
}

/// `count` move-pair instances on random diagrams, cycling through [`move_pairs`];
/// returns the first mismatch.
pub fn check_move_pairs(rng: &mut ChaCha8Rng, count: usize) -> Result<(), String> {
    let pairs = move_pairs();
    let mut checked = 0;
    while checked < count {
        let d = random_diagram(rng);
        let pair = &pairs[checked % pairs.len()];
        let Some(site) = face_sites(d.map(), pair.arity()).choose(rng).cloned() else { continue };
        let (before, after) = pair.apply(&d, &site).map_err(|e| e.to_string())?;
        if both(&before) != both(&after) {
            return Err(format!("{} at {site:?} on {}", pair.name, d.to_vgf()));
        }
        checked += 1;
    }
    Ok(())
}

/// Diagrams with a strand crossing two others in a row, and the edge between those
/// crossings, with the strand over (or under) at both.
pub fn commutable(rng: &mut ChaCha8Rng, count: usize) -> Vec<(SpatialDiagram, usize)> {
    let mut out = Vec::new();
    while out.len() < count {
        let d = random_diagram(rng);
        let Some(site) = face_sites(d.map(), 3).choose(rng).cloned() else { continue };
        let pair = if rng.gen() { tangles::vertex_slide_pair(rng.gen()) } else { tangles::r3_pair([2, 1, 0]) };
        let before = pair.apply(&d, &site).unwrap().0;
        let m = before.map();
        for h in 0..m.num_half_edges() {
            let over = |x: usize| before.crossing_at(m.vertex_of(x)).map(|c| c.over.contains(&x));
            if let (Some(a), Some(b)) = (over(h), over(m.alpha(h))) {
                if a == b && apply_move(&before, Move::Commute { dart: h }).is_ok() {
                    out.push((before.clone(), h));
                }
            }
        }
    }
    out
}

/// Classical cubic diagrams with at most four crossings: plane theta and K4, the crossed
/// theta fixture, and R2, clasp and R3 insertions into them.
pub fn classical_cubic_diagrams() -> Vec<SpatialDiagram> {
    let mut out = vec![
        SpatialDiagram::crossingless(fixtures::theta_p()).unwrap(),
        SpatialDiagram::crossingless(fixtures::k4()).unwrap(),
        spatial(fixtures::THETA_CROSSED),
    ];
    for base in out.clone() {
        for site in face_sites(base.map(), 2) {
            for over in [true, false] {
                let (_, pushed) = tangles::r2_pair(over).apply(&base, &site).unwrap();
                let clasp = insert_tangle(&base, &site, &tangles::clasp(over)).unwrap();
                out.extend([pushed, clasp].into_iter().filter(|d| d.num_crossings() <= 4));
            }
        }
        for site in face_sites(base.map(), 3).into_iter().take(4) {
            let (a, b) = tangles::r3_pair([2, 1, 0]).apply(&base, &site).unwrap();
            out.extend([a, b].into_iter().filter(|d| d.num_crossings() <= 4));
        }
    }
    out
}
