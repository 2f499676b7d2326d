mod common;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::random_connected_map;
use ribbonpoly::algebra::eval_cyclotomic;
use ribbonpoly::classical::{s_polynomial, Engine};
use ribbonpoly::vgf::{parse_vgf, serialize_vgf};
use ribbonpoly::{CombMap, HalfLaurent, Rational, Var};

fn laurent() -> impl Strategy<Value = HalfLaurent> {
    (prop::collection::vec(-5i64..=5, 0..5), -3i64..=3)
        .prop_map(|(c, s)| HalfLaurent::from_coeffs(Var::BigQ, &c).shift(2 * s))
}

fn half_laurent() -> impl Strategy<Value = HalfLaurent> {
    (prop::collection::vec(-5i64..=5, 0..5), -6i64..=6)
        .prop_map(|(c, s)| HalfLaurent::from_coeffs(Var::BigQ, &c).shift(s))
}

fn map_from_seed(seed: u64, edges: usize) -> CombMap {
    random_connected_map(&mut ChaCha8Rng::seed_from_u64(seed), edges)
}

/// Same map with half-edges renamed, vertices reordered and each rotation started elsewhere.
fn relabelled(m: &CombMap, seed: u64) -> CombMap {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut names: Vec<usize> = (0..m.num_half_edges()).collect();
    names.shuffle(&mut rng);
    let mut vertices: Vec<Vec<usize>> = m
        .rotations()
        .iter()
        .map(|r| {
            let mut r: Vec<usize> = r.iter().map(|&h| names[h]).collect();
            if !r.is_empty() {
                let k = rng.gen_range(0..r.len());
                r.rotate_left(k);
            }
            r
        })
        .collect();
    vertices.shuffle(&mut rng);
    let edges = m.edge_list().iter().map(|&[a, b]| [names[a], names[b]]).collect();
    CombMap::new(vertices, edges).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn laurent_ring_laws(a in half_laurent(), b in half_laurent(), c in half_laurent()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(-(-a.clone()), a);
    }

    #[test]
    fn integer_evaluation_is_a_homomorphism(a in laurent(), b in laurent(), x in prop::sample::select(vec![-3i64, -2, -1, 1, 2, 5])) {
        let (ea, eb) = (a.eval_int(x).unwrap(), b.eval_int(x).unwrap());
        prop_assert_eq!((&a * &b).eval_int(x).unwrap(), &ea * &eb);
        prop_assert_eq!((&a + &b).eval_int(x).unwrap(), ea + eb);
    }

    #[test]
    fn cyclotomic_evaluation_is_a_homomorphism(a in laurent(), b in laurent(), (n, k) in prop::sample::select(vec![(3u64, 1i64), (4, 3), (5, 2), (6, 5), (12, 7)])) {
        let (ea, eb) = (eval_cyclotomic(&a, n, k).unwrap(), eval_cyclotomic(&b, n, k).unwrap());
        prop_assert_eq!(eval_cyclotomic(&(&a * &b), n, k).unwrap(), ea.mul(&eb).unwrap());
        prop_assert_eq!(eval_cyclotomic(&(&a + &b), n, k).unwrap(), ea.add(&eb).unwrap());
    }

    #[test]
    fn canonical_key_ignores_labels(seed in any::<u64>(), shuffle in any::<u64>(), edges in 1usize..=7) {
        let m = map_from_seed(seed, edges);
        let r = relabelled(&m, shuffle);
        prop_assert_eq!(m.canonical_key(), r.canonical_key());
        prop_assert!(m.is_isomorphic(&r));
    }

    #[test]
    fn s_polynomial_ignores_labels(seed in any::<u64>(), shuffle in any::<u64>(), edges in 1usize..=6) {
        let m = map_from_seed(seed, edges);
        let r = relabelled(&m, shuffle);
        prop_assert_eq!(s_polynomial(&m, Engine::StateSum).unwrap(), s_polynomial(&r, Engine::StateSum).unwrap());
    }

    #[test]
    fn vertex_flip_changes_sign_at_four_by_degree(seed in any::<u64>(), edges in 1usize..=6, pick in any::<prop::sample::Index>()) {
        let m = map_from_seed(seed, edges);
        let v = pick.index(m.num_vertices());
        let before = s_polynomial(&m, Engine::StateSum).unwrap().eval_int(4).unwrap();
        let after = s_polynomial(&m.vertex_flip(v).unwrap(), Engine::StateSum).unwrap().eval_int(4).unwrap();
        let expected = if m.degree(v).is_multiple_of(2) { before } else { -before };
        prop_assert_eq!(after, expected);
    }

    #[test]
    fn s_vanishes_at_one(seed in any::<u64>(), edges in 1usize..=6) {
        let s = s_polynomial(&map_from_seed(seed, edges), Engine::StateSum).unwrap();
        prop_assert_eq!(s.eval_int(1).unwrap(), Rational::from_integer(0.into()));
    }

    #[test]
    fn vgf_round_trip(seed in any::<u64>(), edges in 1usize..=7) {
        let m = map_from_seed(seed, edges);
        let text = serialize_vgf(&m, &[]);
        let doc = parse_vgf(&text).unwrap();
        prop_assert_eq!(serialize_vgf(&doc.map, &doc.crossings), text);
        prop_assert!(doc.crossings.is_empty());
        for h in 0..m.num_half_edges() {
            prop_assert_eq!((doc.map.sigma(h), doc.map.alpha(h)), (m.sigma(h), m.alpha(h)));
        }
    }
}
