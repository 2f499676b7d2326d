//! One line per acceptance criterion. Run with `--nocapture` to see the table.

mod common;

use std::collections::BTreeSet;
use std::sync::OnceLock;
use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{
    both, check_move_pairs, classical_cubic_diagrams, commutable, random_connected_map, random_diagram, spatial,
};
use ribbonpoly::algebra::eval_cyclotomic;
use ribbonpoly::brauer::{gram_det, parse_candidate, sym_negligible_verify, NEGLIGIBLE_TABLE};
use ribbonpoly::classical::{
    degree_report, flow_polynomial, krushkal_polynomial, s_from_krushkal, s_polynomial, special_value_report,
    virtual_chromatic, Engine,
};
use ribbonpoly::fixtures;
use ribbonpoly::penrose::{
    cellular_embedding_poly, penrose_number_checks, planarity_by_flips, so_as_sl_check, w_sl_brauer, w_sl_extended,
    w_so,
};
use ribbonpoly::ribbon::enumerate::{connected_maps, cubic_multigraphs};
use ribbonpoly::spatial::{
    apply_move, golden_identity_check, golden_identity_sides, special_evaluation_checks, yamada, Move, SpatialDiagram,
    YamadaVariant,
};
use ribbonpoly::{CombMap, HalfLaurent, Var};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn poly(var: Var, coeffs: &[i64]) -> HalfLaurent {
    HalfLaurent::from_coeffs(var, coeffs)
}

fn product(var: Var, factors: &[&[i64]]) -> HalfLaurent {
    factors.iter().fold(HalfLaurent::one(var), |acc, f| &acc * &poly(var, f))
}

/// Connected maps with at most six edges, all of them.
fn exhaustive_family() -> &'static Vec<CombMap> {
    static FAMILY: OnceLock<Vec<CombMap>> = OnceLock::new();
    FAMILY.get_or_init(|| connected_maps(6).into_iter().flatten().collect())
}

/// 200 random connected maps with at most ten edges.
fn random_family() -> &'static Vec<CombMap> {
    static FAMILY: OnceLock<Vec<CombMap>> = OnceLock::new();
    FAMILY.get_or_init(|| {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        (0..200)
            .map(|_| {
                let edges = rng.gen_range(1..=10);
                random_connected_map(&mut rng, edges)
            })
            .collect()
    })
}

fn criterion_1() -> Outcome {
    let q = Var::BigQ;
    let s = |m: &CombMap| s_polynomial(m, Engine::StateSum).map_err(e);
    ensure(s(&fixtures::theta_p())? == product(q, &[&[-1, 1], &[-2, 1]]), || "S(THETA_P)".into())?;
    ensure(s(&fixtures::theta_t())? == poly(q, &[2, -2]), || "S(THETA_T)".into())?;
    let k33 = fixtures::k33_std();
    let f = flow_polynomial(&k33, Engine::StateSum).map_err(e)?;
    ensure(f == product(q, &[&[-1, 1], &[-2, 1], &[10, -6, 1]]), || format!("F(K33) = {f}"))?;
    let a = product(q, &[&[-1, 1], &[-4, 1], &[5, 1]]);
    ensure(s(&k33)? == a, || "S(K33_STD)".into())?;
    let variants = k33.rotation_variants();
    let found: BTreeSet<String> =
        variants.iter().map(|(_, m)| s(m).map(|p| p.to_string())).collect::<Result<_, _>>()?;
    let expected: BTreeSet<String> =
        [a, product(q, &[&[-1, 1], &[-4, 1]]).scale_int(5), product(q, &[&[-1, 1], &[-4, 1], &[-5, 1]]).scale_int(-1)]
            .iter()
            .map(|p| p.to_string())
            .collect();
    ensure(variants.len() == 64 && found == expected, || format!("{} variants give {found:?}", variants.len()))?;
    Ok(format!("64 rotation systems of K33 give {} polynomials", found.len()))
}

fn criterion_2() -> Outcome {
    let mut count = 0;
    for m in exhaustive_family().iter().chain(random_family()) {
        let s = s_polynomial(m, Engine::StateSum).map_err(e)?;
        let rec = s_polynomial(m, Engine::Recursive).map_err(e)?;
        let br = s_polynomial(m, Engine::Brauer).map_err(e)?;
        let f1 = flow_polynomial(m, Engine::StateSum).map_err(e)?;
        let f2 = flow_polynomial(m, Engine::Recursive).map_err(e)?;
        ensure(s == rec && s == br && f1 == f2, || format!("engines disagree on {m:?}"))?;
        count += 1;
    }
    Ok(format!("{} exhaustive + {} random maps", exhaustive_family().len(), count - exhaustive_family().len()))
}

fn criterion_3() -> Outcome {
    let expected = [
        (2, 1, "Q - 1"),
        (3, 2, "(Q - 4)*(Q - 1)^2*Q"),
        (4, 9, "(Q - 9)*(Q - 4)^6*(Q - 1)^9*Q^8"),
        (5, 44, "(Q - 16)*(Q - 9)^12*(Q - 4)^38*(Q - 1)^44*Q^61"),
    ];
    for (n, size, det) in expected {
        let r = gram_det(n, false).map_err(e)?;
        ensure(r.basis.len() == size && r.factored == det, || {
            format!("n = {n}: {} basis, {}", r.basis.len(), r.factored)
        })?;
    }
    Ok("n = 2..5".into())
}

fn criterion_4() -> Outcome {
    let mut rows = 0;
    for (q, text) in NEGLIGIBLE_TABLE.iter().filter(|(q, _)| *q <= 25) {
        let r = sym_negligible_verify(*q, &parse_candidate(text).map_err(e)?).map_err(e)?;
        ensure(r.negligible, || format!("Q = {q}: {r:?}"))?;
        rows += 1;
    }
    let alone = sym_negligible_verify(9, &parse_candidate("p(4)").map_err(e)?).map_err(e)?;
    ensure(!alone.negligible, || "p(4) alone is negligible at Q = 9".into())?;
    Ok(format!("{rows} rows, p(4) alone fails at Q = 9"))
}

fn criterion_5() -> Outcome {
    for m in exhaustive_family().iter().chain(random_family()) {
        let s = s_polynomial(m, Engine::StateSum).map_err(e)?;
        let data = m.euler_data();
        let k = krushkal_polynomial(m).map_err(e)?;
        ensure(s_from_krushkal(&k, data.b1) == s, || format!("Krushkal specialization on {m:?}"))?;
        let dual = s_polynomial(&m.geometric_dual().map_err(e)?, Engine::StateSum).map_err(e)?;
        let expected = dual.retag(Var::T).shift(2 * (data.components as i64 - data.genus as i64));
        ensure(virtual_chromatic(m).map_err(e)? == expected, || format!("chromatic duality on {m:?}"))?;
    }
    Ok(format!("{} maps", exhaustive_family().len() + random_family().len()))
}

fn criterion_6() -> Outcome {
    let mut coloop_free = 0;
    for m in exhaustive_family() {
        let v = special_value_report(m).map_err(e)?;
        ensure(v.s1_vanishes && v.s0_equals_f0, || format!("S(1), S(0) on {m:?}"))?;
        ensure(v.s_is_zero == v.has_bridge && v.has_bridge == v.s0_is_zero, || format!("bridge equivalence on {m:?}"))?;
        let d = degree_report(m).map_err(e)?;
        ensure(d.degree.is_none_or(|k| k <= d.bound), || format!("degree bound on {m:?}"))?;
        if !d.has_coloops {
            coloop_free += 1;
            ensure(d.attained && d.monic, || format!("degree not attained or not monic on {m:?}: {d:?}"))?;
        }
    }
    for (name, text) in fixtures::ALL {
        let m = fixtures::document(text).map;
        ensure(special_value_report(&m).map_err(e)?.flip_law_at_4, || format!("flip law at 4 on {name}"))?;
    }
    Ok(format!("{} maps, {coloop_free} coloop-free", exhaustive_family().len()))
}

fn criterion_7() -> Outcome {
    let n = Var::N;
    let theta = poly(n, &[0, 2, -3, 1]);
    ensure(w_so(&CombMap::isolated(1)).map_err(e)? == poly(n, &[0, 1]), || "W_so(isolated)".into())?;
    ensure(w_so(&fixtures::loop1()).map_err(e)? == poly(n, &[0, -1, 1]), || "W_so(loop)".into())?;
    ensure(w_so(&fixtures::theta_p()).map_err(e)? == theta, || "W_so(theta)".into())?;
    let sub = fixtures::theta_p().subdivide_edge(0, 1).map_err(e)?;
    ensure(w_so(&sub).map_err(e)? == theta.scale_int(2), || "subdivision".into())?;
    let p_plus = product(n, &[&[-2, 0, 2], &[-4, 0, 1]]);
    let p_minus = product(n, &[&[0, 0, 2], &[-1, 0, 1]]);
    let pos = fixtures::theta_p().with_signs(vec![1, 1]).map_err(e)?;
    let neg = fixtures::theta_p().with_signs(vec![-1, -1]).map_err(e)?;
    ensure(w_sl_extended(&pos).map_err(e)? == p_plus, || "W_sl theta p+".into())?;
    ensure(w_sl_extended(&neg).map_err(e)? == p_minus, || "W_sl theta p-".into())?;
    for (name, text) in fixtures::ALL {
        let m = fixtures::document(text).map;
        if m.has_twists() {
            continue;
        }
        let r = penrose_number_checks(&m).map_err(e)?;
        ensure(r.sl2_matches_s4 && r.off_parity_vanishes != Some(false), || format!("W_sl(2) on {name}: {r:?}"))?;
    }
    let small: Vec<CombMap> = connected_maps(5).into_iter().flatten().collect();
    let mut so_sl = 0;
    for m in small.iter().filter(|m| m.num_edges() <= 4) {
        ensure(so_as_sl_check(m).map_err(e)?.holds, || format!("so-as-sl on {m:?}"))?;
        so_sl += 1;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for m in &small {
        let signs: Vec<i8> = (0..m.num_vertices()).map(|_| if rng.gen() { 1 } else { -1 }).collect();
        for g in [m.clone(), m.clone().with_signs(signs).map_err(e)?] {
            ensure(w_sl_extended(&g).map_err(e)? == w_sl_brauer(&g).map_err(e)?, || format!("W_sl engines on {g:?}"))?;
        }
    }
    Ok(format!("so-as-sl on {so_sl} maps, W_sl engines on {} maps", small.len()))
}

fn criterion_8() -> Outcome {
    let c = cellular_embedding_poly(&fixtures::theta_p()).map_err(e)?;
    ensure(c == poly(Var::X, &[2, -2]), || format!("C(theta) = {c}"))?;
    for (name, text) in fixtures::ALL {
        let m = fixtures::document(text).map;
        if (0..m.num_vertices()).all(|v| m.degree(v) == 3) && !m.has_twists() {
            let c = cellular_embedding_poly(&m).map_err(e)?;
            ensure(c.eval_int(1).map_err(e)?.is_zero(), || format!("C(1) on {name}"))?;
        }
    }
    let mut graphs = 0;
    for nv in [2, 4, 6, 8] {
        for m in cubic_multigraphs(nv).into_iter().filter(|m| !m.has_bridge()) {
            let c = cellular_embedding_poly(&m).map_err(e)?;
            let planar = planarity_by_flips(&m).map_err(e)?.planar_somehow;
            ensure(!c.eval_int(0).map_err(e)?.is_zero() == planar, || format!("C(0) vs planarity on {m:?}"))?;
            ensure(c.eval_int(1).map_err(e)?.is_zero(), || format!("C(1) on {m:?}"))?;
            graphs += 1;
        }
    }
    Ok(format!("{graphs} bridgeless cubic graphs"))
}

fn criterion_9() -> Outcome {
    let theta = spatial(fixtures::THETA_T);
    let (rs, rf) = both(&theta);
    let from = |lowest: i64, c: &[i64]| HalfLaurent::from_coeffs(Var::SmallQ, c).shift(2 * lowest);
    let ok = rs == from(-1, &[-2, -2, -2]) && rf == from(-2, &[1, 1, 2, 1, 1]);
    ensure(ok, || format!("THETA_T: {rs}, {rf}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    check_move_pairs(&mut rng, 55)?;
    let mut forbidden = 0;
    for (d, h) in commutable(&mut rng, 20) {
        let after = apply_move(&d, Move::Commute { dart: h }).map_err(e)?;
        let (a, b) = (both(&d), both(&after));
        for (n, k) in [(1, 0), (2, 1), (3, 1), (3, 2)] {
            let same = eval_cyclotomic(&a.0, n, k).map_err(e)? == eval_cyclotomic(&b.0, n, k).map_err(e)?;
            ensure(same, || format!("R^S at ζ{n}^{k} after a forbidden move"))?;
        }
        for (n, k) in [(1, 0), (2, 1), (3, 1), (3, 2), (4, 1), (4, 3)] {
            let same = eval_cyclotomic(&a.1, n, k).map_err(e)? == eval_cyclotomic(&b.1, n, k).map_err(e)?;
            ensure(same, || format!("R^F at ζ{n}^{k} after a forbidden move"))?;
        }
        forbidden += 1;
    }
    let mut diagrams: Vec<SpatialDiagram> =
        fixtures::ALL.iter().filter_map(|(_, t)| SpatialDiagram::from_document(&fixtures::document(t)).ok()).collect();
    diagrams.extend((0..30).map(|_| random_diagram(&mut rng)));
    for d in &diagrams {
        let r = special_evaluation_checks(d).map_err(e)?;
        ensure(r.all_hold(), || format!("special values on {}: {r:?}", d.to_vgf()))?;
    }
    Ok(format!("55 move pairs, {forbidden} forbidden moves, {} diagrams for special values", diagrams.len()))
}

fn criterion_10() -> Outcome {
    let diagrams = classical_cubic_diagrams();
    for d in &diagrams {
        ensure(d.num_crossings() <= 4, || "too many crossings".into())?;
        let r = golden_identity_check(d).map_err(e)?;
        ensure(r.holds, || format!("golden identity fails on {}", d.to_vgf()))?;
    }
    let virtual_theta = spatial(fixtures::THETA_T);
    let r = golden_identity_sides(&virtual_theta).map_err(e)?;
    let rs = yamada(&virtual_theta, YamadaVariant::S).map_err(e)?;
    let rf = yamada(&virtual_theta, YamadaVariant::F).map_err(e)?;
    ensure(!r.holds && rs != rf, || "virtual theta should fail the identity and be nonclassical".into())?;
    Ok(format!("{} classical diagrams hold, virtual theta fails", diagrams.len()))
}

/// The full census is out of scope; its stand-in is the same checks on small cubic graphs.
fn criterion_11() -> Outcome {
    let mut graphs = 0;
    for nv in (2..=10).step_by(2) {
        for m in cubic_multigraphs(nv) {
            let c = cellular_embedding_poly(&m).map_err(e)?;
            ensure(c.eval_int(1).map_err(e)?.is_zero(), || format!("C(1) on {m:?}"))?;
            if !m.has_bridge() {
                let planar = planarity_by_flips(&m).map_err(e)?.planar_somehow;
                ensure(!c.eval_int(0).map_err(e)?.is_zero() == planar, || format!("planarity coherence on {m:?}"))?;
            }
            graphs += 1;
        }
    }
    Ok(format!("census excluded; enumeration check on {graphs} cubic graphs with at most 10 vertices"))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Duration); 11] = [
        ("example polynomials", criterion_1, Duration::from_secs(10)),
        ("engine agreement oracle", criterion_2, Duration::from_secs(300)),
        ("gramian determinants", criterion_3, Duration::from_secs(600)),
        ("negligible elements", criterion_4, Duration::from_secs(300)),
        ("Krushkal and chromatic identities", criterion_5, Duration::from_secs(300)),
        ("special values", criterion_6, Duration::from_secs(300)),
        ("Penrose anchors", criterion_7, Duration::from_secs(300)),
        ("cellular embedding polynomial", criterion_8, Duration::from_secs(300)),
        ("Yamada polynomials", criterion_9, Duration::from_secs(300)),
        ("golden identity", criterion_10, Duration::from_secs(300)),
        ("cubic enumeration", criterion_11, Duration::from_secs(300)),
    ];
    let mut failures = Vec::new();
    for (i, (name, check, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if took > *budget => Err(format!("{detail}; over the {budget:?} budget")),
            other => other,
        };
        match &outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail} ({took:.1?})", i + 1),
            Err(why) => {
                println!("criterion {:>2} FAIL {name}: {why} ({took:.1?})", i + 1);
                failures.push(i + 1);
            }
        }
    }
    if !failures.is_empty() {
        eprintln!("failed criteria: {failures:?}");
        std::process::exit(1);
    }
}
