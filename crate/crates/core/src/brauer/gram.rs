use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::linalg::{bareiss_det, interpolate};
use crate::algebra::{HalfLaurent, Rational, Var};
use crate::classical::{s_polynomial, Engine, InvariantError};
use crate::ribbon::CombMap;

/// Fixed-point-free permutation of the boundary points `0..n`; each cycle is an interior
/// vertex whose counterclockwise rotation follows the cycle.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct FpfPermutation {
    perm: Vec<usize>,
}

impl FpfPermutation {
    pub fn new(perm: Vec<usize>) -> Result<Self, InvariantError> {
        let n = perm.len();
        let mut hit = vec![false; n];
        for (i, &p) in perm.iter().enumerate() {
            if p >= n || hit[p] {
                return Err(InvariantError::Precondition(format!("{perm:?} is not a permutation")));
            }
            if p == i {
                return Err(InvariantError::Precondition(format!("point {i} is fixed")));
            }
            hit[p] = true;
        }
        Ok(FpfPermutation { perm })
    }

    /// Consecutive cycles of the given lengths: `(0 1 … l₁−1)(l₁ …)…`.
    pub fn from_cycle_type(lengths: &[usize]) -> Result<Self, InvariantError> {
        let mut perm = Vec::new();
        let mut start = 0;
        for &l in lengths {
            for i in 0..l {
                perm.push(start + (i + 1) % l);
            }
            start += l;
        }
        Self::new(perm)
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn image(&self, i: usize) -> usize {
        self.perm[i]
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.perm.len()];
        let mut out = Vec::new();
        for s in 0..self.perm.len() {
            if seen[s] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x);
                x = self.perm[x];
            }
            out.push(cyc);
        }
        out
    }

    /// Cycle lengths in non-increasing order.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(|c| c.len()).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }

    /// Cycle notation, e.g. `(0 1 2)(3 4)`.
    pub fn cycle_string(&self) -> String {
        self.cycles()
            .iter()
            .map(|c| format!("({})", c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")))
            .collect()
    }
}

/// All fixed-point-free permutations of `0..n` in lexicographic order.
pub fn fpf_basis(n: usize) -> Vec<FpfPermutation> {
    fn rec(n: usize, perm: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<FpfPermutation>) {
        let i = perm.len();
        if i == n {
            out.push(FpfPermutation { perm: perm.clone() });
            return;
        }
        for p in 0..n {
            if p != i && !used[p] {
                used[p] = true;
                perm.push(p);
                rec(n, perm, used, out);
                perm.pop();
                used[p] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Closed map pairing a bottom element with a top element: the cycles of `bottom` and
/// the mirrored cycles of `top` become vertices, joined by one edge per boundary point.
pub fn glue(bottom: &FpfPermutation, top: &FpfPermutation) -> Result<CombMap, InvariantError> {
    let n = bottom.len();
    if top.len() != n {
        return Err(InvariantError::Precondition(format!("boundary sizes {n} and {} differ", top.len())));
    }
    let mut vertices = bottom.cycles();
    for cyc in top.cycles() {
        let mut rot: Vec<usize> = cyc.iter().map(|&i| n + i).collect();
        rot.reverse();
        vertices.push(rot);
    }
    let edges = (0..n).map(|i| [i, n + i]).collect();
    Ok(CombMap::new(vertices, edges)?)
}

/// S-polynomial of the glued closed map.
pub fn glue_pairing(bottom: &FpfPermutation, top: &FpfPermutation) -> Result<HalfLaurent, InvariantError> {
    s_polynomial(&glue(bottom, top)?, Engine::StateSum)
}

/// Gramian of the pairing on the fixed-point-free basis with `n` boundary points.
pub fn gram_matrix(n: usize) -> Result<(Vec<FpfPermutation>, Vec<Vec<HalfLaurent>>), InvariantError> {
    let basis = fpf_basis(n);
    let rows: Result<Vec<Vec<HalfLaurent>>, InvariantError> =
        basis.par_iter().map(|a| basis.iter().map(|b| glue_pairing(a, b)).collect()).collect();
    Ok((basis, rows?))
}

#[derive(Clone, Debug, Serialize)]
pub struct GramianResult {
    pub n: usize,
    pub basis: Vec<String>,
    pub matrix: Vec<Vec<String>>,
    pub determinant: String,
    pub factored: String,
    #[serde(skip)]
    pub determinant_poly: HalfLaurent,
}

fn eval_big(p: &HalfLaurent, x: i64) -> BigInt {
    let v: Rational = p.eval_int(x).expect("gramian entries are polynomials");
    debug_assert!(v.is_integer());
    v.to_integer()
}

/// Determinant of the Gramian for `2 ≤ n ≤ 6`, by exact evaluation at integer points and
/// interpolation. `n = 6` (265 basis elements) needs `allow_long`.
pub fn gram_det(n: usize, allow_long: bool) -> Result<GramianResult, InvariantError> {
    if !(2..=6).contains(&n) {
        return Err(InvariantError::Precondition(format!("gramian size {n} outside 2..=6")));
    }
    if n == 6 && !allow_long {
        return Err(InvariantError::Precondition("n = 6 is long-running; pass allow_long".into()));
    }
    let (basis, matrix) = gram_matrix(n)?;
    let bound: i64 = matrix.iter().map(|row| row.iter().filter_map(|p| p.int_degree()).max().unwrap_or(0)).sum();
    let points: Vec<(Rational, Rational)> = (0..=bound)
        .into_par_iter()
        .map(|x| {
            let m: Vec<Vec<BigInt>> = matrix.iter().map(|row| row.iter().map(|p| eval_big(p, x)).collect()).collect();
            (Rational::from_integer(x.into()), Rational::from_integer(bareiss_det(m)))
        })
        .collect();
    let det = interpolate(Var::BigQ, &points);
    Ok(GramianResult {
        n,
        basis: basis.iter().map(|b| b.cycle_string()).collect(),
        matrix: if basis.len() <= 44 {
            matrix.iter().map(|row| row.iter().map(|p| p.to_string()).collect()).collect()
        } else {
            Vec::new()
        },
        determinant: det.to_string(),
        factored: det.factored_string(64),
        determinant_poly: det,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_sizes() {
        let sizes: Vec<usize> = (2..=6).map(|n| fpf_basis(n).len()).collect();
        assert_eq!(sizes, vec![1, 2, 9, 44, 265]);
    }

    #[test]
    fn trivalent_pairings() {
        let b = fpf_basis(3);
        let q = |c: &[i64]| HalfLaurent::from_coeffs(Var::BigQ, c);
        assert_eq!(glue_pairing(&b[0], &b[0]).unwrap(), q(&[2, -3, 1]));
        assert_eq!(glue_pairing(&b[0], &b[1]).unwrap(), q(&[2, -2]));
        assert_eq!(glue_pairing(&fpf_basis(2)[0], &fpf_basis(2)[0]).unwrap(), q(&[-1, 1]));
    }

    #[test]
    fn small_determinants() {
        assert_eq!(gram_det(2, false).unwrap().factored, "Q - 1");
        assert_eq!(gram_det(3, false).unwrap().factored, "(Q - 4)*(Q - 1)^2*Q");
        assert_eq!(gram_det(4, false).unwrap().factored, "(Q - 9)*(Q - 4)^6*(Q - 1)^9*Q^8");
        assert!(gram_det(6, false).is_err());
        assert!(gram_det(7, true).is_err());
    }
}
