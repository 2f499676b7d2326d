use std::collections::HashMap;

use crate::algebra::{HalfLaurent, Var};
use crate::ribbon::{CanonKey, CombMap};

use super::InvariantError;

/// Memo tables for the recursive engines, keyed by canonical map signatures.
#[derive(Default)]
pub struct RecursionCache {
    s: HashMap<CanonKey, HalfLaurent>,
    flow: HashMap<CanonKey, HalfLaurent>,
    chromatic: HashMap<CanonKey, HalfLaurent>,
}

impl RecursionCache {
    pub fn len(&self) -> usize {
        self.s.len() + self.flow.len() + self.chromatic.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn has_leaf(m: &CombMap) -> bool {
    (0..m.num_vertices()).any(|v| m.degree(v) == 1)
}

fn pick_edge(m: &CombMap) -> (usize, bool) {
    match (0..m.num_edges()).find(|&e| !m.is_loop(e)) {
        Some(e) => (e, false),
        None => (0, true),
    }
}

/// `S(G) = Q^{[e loop]} S(G/e) − S(G−e)`, `S(·) = 1`, `S = 0` with a degree-one vertex,
/// multiplicative over components.
pub fn s_poly_recursive(m: &CombMap, cache: &mut RecursionCache) -> Result<HalfLaurent, InvariantError> {
    let m = m.clone().without_signs();
    s_rec(&m, cache)
}

fn s_rec(m: &CombMap, cache: &mut RecursionCache) -> Result<HalfLaurent, InvariantError> {
    if m.num_edges() == 0 {
        return Ok(HalfLaurent::one(Var::BigQ));
    }
    if has_leaf(m) {
        return Ok(HalfLaurent::zero(Var::BigQ));
    }
    let (comps, _) = m.split_components();
    if comps.len() > 1 {
        let mut acc = HalfLaurent::one(Var::BigQ);
        for c in &comps {
            acc = &acc * &s_rec(c, cache)?;
        }
        return Ok(acc);
    }
    let m = &comps[0];
    let key = m.canonical_key();
    if let Some(v) = cache.s.get(&key) {
        return Ok(v.clone());
    }
    let (e, is_loop) = pick_edge(m);
    let contracted = s_rec(&m.contract_edge(e)?, cache)?;
    let deleted = s_rec(&m.delete_edge(e)?, cache)?;
    let contracted = if is_loop { contracted.shift(2) } else { contracted };
    let value = &contracted - &deleted;
    cache.s.insert(key, value.clone());
    Ok(value)
}

/// `F(G) = F(G/e) − F(G−e)` for a non-loop, `(Q−1) F(G−e)` for a loop.
pub fn flow_recursive(m: &CombMap, cache: &mut RecursionCache) -> Result<HalfLaurent, InvariantError> {
    let m = m.clone().without_signs();
    flow_rec(&m, cache)
}

fn flow_rec(m: &CombMap, cache: &mut RecursionCache) -> Result<HalfLaurent, InvariantError> {
    if m.num_edges() == 0 {
        return Ok(HalfLaurent::one(Var::BigQ));
    }
    if has_leaf(m) {
        return Ok(HalfLaurent::zero(Var::BigQ));
    }
    let (comps, _) = m.split_components();
    if comps.len() > 1 {
        let mut acc = HalfLaurent::one(Var::BigQ);
        for c in &comps {
            acc = &acc * &flow_rec(c, cache)?;
        }
        return Ok(acc);
    }
    let m = &comps[0];
    let key = m.canonical_key();
    if let Some(v) = cache.flow.get(&key) {
        return Ok(v.clone());
    }
    let (e, is_loop) = pick_edge(m);
    let deleted = flow_rec(&m.delete_edge(e)?, cache)?;
    let value = if is_loop {
        &deleted * &HalfLaurent::from_coeffs(Var::BigQ, &[-1, 1])
    } else {
        &flow_rec(&m.contract_edge(e)?, cache)? - &deleted
    };
    cache.flow.insert(key, value.clone());
    Ok(value)
}

/// `λ(G) = λ(G−e) − λ(G/e)` for a non-loop, `λ(G−e) − t^{-1} λ(G/e)` for a loop,
/// `λ = t^n` on `n` isolated vertices.
pub fn chromatic_recursive(m: &CombMap, cache: &mut RecursionCache) -> Result<HalfLaurent, InvariantError> {
    let m = m.clone().without_signs();
    chrom_rec(&m, cache)
}

fn chrom_rec(m: &CombMap, cache: &mut RecursionCache) -> Result<HalfLaurent, InvariantError> {
    let (comps, isolated) = m.split_components();
    let mut acc = HalfLaurent::var_pow(Var::T, isolated as i64);
    for c in &comps {
        let key = c.canonical_key();
        let value = match cache.chromatic.get(&key) {
            Some(v) => v.clone(),
            None => {
                let (e, is_loop) = pick_edge(c);
                let deleted = chrom_rec(&c.delete_edge(e)?, cache)?;
                let contracted = chrom_rec(&c.contract_edge(e)?, cache)?;
                let contracted = if is_loop { contracted.shift(-2) } else { contracted };
                let v = &deleted - &contracted;
                cache.chromatic.insert(key, v.clone());
                v
            }
        };
        acc = &acc * &value;
    }
    Ok(acc)
}
