//! Brauer diagrams over `ℚ[c^{±1/2}]`, the strand-network evaluation used by the
//! S-polynomial and Penrose functors, Gramians of the S pairing and symmetrised
//! negligible elements.

mod gram;
mod negligible;
mod network;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::algebra::{rat, HalfLaurent, Var};

pub use gram::{fpf_basis, glue, glue_pairing, gram_det, gram_matrix, FpfPermutation, GramianResult};
pub use negligible::{
    parse_candidate, sym_negligible_verify, sym_pairing, NegligibleCandidate, NegligibleReport, NEGLIGIBLE_TABLE,
};
pub(crate) use network::{edge_placement, vertex_pairs};
pub use network::{phi_s_polynomial, vertex_diagram, LocalTerm, StrandNetwork};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BrauerError {
    #[error("arity mismatch: {0}")]
    Arity(String),
    #[error("invalid matching: {0}")]
    Invalid(String),
    #[error("{0}")]
    Unsupported(String),
}

/// Perfect matching on `bottom + top` boundary points. Bottom points are `0..bottom`,
/// top points `bottom..bottom+top`, both read left to right.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BrauerMatching {
    bottom: usize,
    top: usize,
    pairing: Vec<usize>,
}

impl BrauerMatching {
    pub fn new(bottom: usize, top: usize, pairing: Vec<usize>) -> Result<Self, BrauerError> {
        let n = bottom + top;
        if pairing.len() != n {
            return Err(BrauerError::Invalid(format!("expected {n} partners, got {}", pairing.len())));
        }
        for (i, &j) in pairing.iter().enumerate() {
            if j >= n || j == i || pairing[j] != i {
                return Err(BrauerError::Invalid(format!("point {i} is not matched consistently")));
            }
        }
        Ok(BrauerMatching { bottom, top, pairing })
    }

    /// Build from a list of pairs covering every point once.
    pub fn from_pairs(bottom: usize, top: usize, pairs: &[(usize, usize)]) -> Result<Self, BrauerError> {
        let mut pairing = vec![usize::MAX; bottom + top];
        for &(a, b) in pairs {
            if a >= pairing.len() || b >= pairing.len() {
                return Err(BrauerError::Invalid(format!("pair ({a},{b}) out of range")));
            }
            pairing[a] = b;
            pairing[b] = a;
        }
        Self::new(bottom, top, pairing)
    }

    pub fn identity(n: usize) -> Self {
        let pairing = (0..2 * n).map(|i| if i < n { i + n } else { i - n }).collect();
        BrauerMatching { bottom: n, top: n, pairing }
    }

    /// Arity `(2,0)`: joins the two bottom points.
    pub fn cap() -> Self {
        BrauerMatching { bottom: 2, top: 0, pairing: vec![1, 0] }
    }

    /// Arity `(0,2)`: joins the two top points.
    pub fn cup() -> Self {
        BrauerMatching { bottom: 0, top: 2, pairing: vec![1, 0] }
    }

    /// Arity `(2,2)` transposition.
    pub fn crossing() -> Self {
        BrauerMatching { bottom: 2, top: 2, pairing: vec![3, 2, 1, 0] }
    }

    /// Arity `(2,2)` cap followed by cup.
    pub fn cap_cup() -> Self {
        BrauerMatching { bottom: 2, top: 2, pairing: vec![1, 0, 3, 2] }
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn partner(&self, i: usize) -> usize {
        self.pairing[i]
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.pairing.len()).filter(|&i| i < self.pairing[i]).map(|i| (i, self.pairing[i])).collect()
    }

    /// `self ∘ first`: stack `self` on top of `first`. Returns the diagram and the number
    /// of closed loops formed in the middle.
    pub fn compose(&self, first: &BrauerMatching) -> Result<(BrauerMatching, u32), BrauerError> {
        if first.top != self.bottom {
            return Err(BrauerError::Arity(format!("{} top points vs {} bottom points", first.top, self.bottom)));
        }
        let (m, k, p) = (first.bottom, first.top, self.top);
        // point ids: first's points 0..m+k, self's points offset by m+k
        let off = m + k;
        let partner = |x: usize| if x < off { first.pairing[x] } else { off + self.pairing[x - off] };
        let through = |x: usize| -> Option<usize> {
            if (m..off).contains(&x) {
                Some(off + (x - m))
            } else if (off..off + k).contains(&x) {
                Some(m + (x - off))
            } else {
                None
            }
        };
        let outer = |x: usize| {
            if x < m {
                Some(x)
            } else if x >= off + k {
                Some(m + (x - off - k))
            } else {
                None
            }
        };
        let mut pairing = vec![usize::MAX; m + p];
        let mut seen = vec![false; off + k + p];
        for start in (0..m).chain(off + k..off + k + p) {
            if seen[start] {
                continue;
            }
            let mut x = start;
            seen[x] = true;
            loop {
                let y = partner(x);
                seen[y] = true;
                match through(y) {
                    Some(z) => {
                        seen[z] = true;
                        x = z;
                    }
                    None => {
                        let (a, b) = (outer(start).unwrap(), outer(y).unwrap());
                        pairing[a] = b;
                        pairing[b] = a;
                        break;
                    }
                }
            }
        }
        let mut loops = 0;
        for start in m..off {
            if seen[start] {
                continue;
            }
            loops += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                let y = partner(x);
                seen[y] = true;
                x = through(y).expect("middle points pass through");
            }
        }
        Ok((BrauerMatching { bottom: m, top: p, pairing }, loops))
    }

    /// Side-by-side juxtaposition, `self` on the left.
    pub fn tensor(&self, right: &BrauerMatching) -> BrauerMatching {
        let (b1, t1, b2, t2) = (self.bottom, self.top, right.bottom, right.top);
        let map_l = |x: usize| if x < b1 { x } else { b1 + b2 + (x - b1) };
        let map_r = |x: usize| if x < b2 { b1 + x } else { b1 + b2 + t1 + (x - b2) };
        let mut pairing = vec![0; b1 + b2 + t1 + t2];
        for x in 0..b1 + t1 {
            pairing[map_l(x)] = map_l(self.pairing[x]);
        }
        for x in 0..b2 + t2 {
            pairing[map_r(x)] = map_r(right.pairing[x]);
        }
        BrauerMatching { bottom: b1 + b2, top: t1 + t2, pairing }
    }

    /// Number of loops after gluing top point `i` to bottom point `i`.
    pub fn close_trace(&self) -> Result<u32, BrauerError> {
        if self.bottom != self.top {
            return Err(BrauerError::Arity(format!("trace of a ({}, {}) diagram", self.bottom, self.top)));
        }
        let n = self.bottom;
        let mut seen = vec![false; 2 * n];
        let mut loops = 0;
        for start in 0..2 * n {
            if seen[start] {
                continue;
            }
            loops += 1;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                let y = self.pairing[x];
                seen[y] = true;
                x = if y < n { y + n } else { y - n };
            }
        }
        Ok(loops)
    }
}

impl fmt::Display for BrauerMatching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = |x: usize| if x < self.bottom { format!("b{x}") } else { format!("t{}", x - self.bottom) };
        let parts: Vec<String> = self.pairs().iter().map(|&(a, b)| format!("{}-{}", name(a), name(b))).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

/// Linear combination of Brauer diagrams with coefficients in `ℚ[c^{±1/2}]`.
/// Closed loops are absorbed as powers of `c` as soon as they form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrauerVector {
    bottom: usize,
    top: usize,
    terms: BTreeMap<BrauerMatching, HalfLaurent>,
}

impl BrauerVector {
    pub fn zero(bottom: usize, top: usize) -> Self {
        BrauerVector { bottom, top, terms: BTreeMap::new() }
    }

    pub fn basis(m: BrauerMatching) -> Self {
        Self::term(m, HalfLaurent::one(Var::C))
    }

    pub fn term(m: BrauerMatching, coeff: HalfLaurent) -> Self {
        let mut v = Self::zero(m.bottom, m.top);
        v.add_term(m, coeff);
        v
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BrauerMatching, &HalfLaurent)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &BrauerMatching) -> HalfLaurent {
        self.terms.get(m).cloned().unwrap_or_else(|| HalfLaurent::zero(Var::C))
    }

    fn add_term(&mut self, m: BrauerMatching, coeff: HalfLaurent) {
        debug_assert_eq!((m.bottom, m.top), (self.bottom, self.top));
        let entry = self.terms.entry(m).or_insert_with(|| HalfLaurent::zero(Var::C));
        *entry += &coeff;
        self.terms.retain(|_, c| !c.is_zero());
    }

    pub fn scale(&self, c: &HalfLaurent) -> Self {
        let mut out = Self::zero(self.bottom, self.top);
        for (m, k) in &self.terms {
            out.add_term(m.clone(), k * c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self, BrauerError> {
        if (self.bottom, self.top) != (other.bottom, other.top) {
            return Err(BrauerError::Arity("sum of different arities".into()));
        }
        let mut out = self.clone();
        for (m, k) in &other.terms {
            out.add_term(m.clone(), k.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, BrauerError> {
        self.add(&other.scale(&HalfLaurent::from_int(Var::C, -1)))
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &Self) -> Result<Self, BrauerError> {
        if first.top != self.bottom {
            return Err(BrauerError::Arity(format!("{} top points vs {} bottom points", first.top, self.bottom)));
        }
        let mut out = Self::zero(first.bottom, self.top);
        for (a, ka) in &self.terms {
            for (b, kb) in &first.terms {
                let (m, loops) = a.compose(b)?;
                out.add_term(m, (ka * kb).shift(2 * loops as i64));
            }
        }
        Ok(out)
    }

    pub fn tensor(&self, right: &Self) -> Self {
        let mut out = Self::zero(self.bottom + right.bottom, self.top + right.top);
        for (a, ka) in &self.terms {
            for (b, kb) in &right.terms {
                out.add_term(a.tensor(b), ka * kb);
            }
        }
        out
    }

    pub fn close_trace(&self) -> Result<HalfLaurent, BrauerError> {
        let mut acc = HalfLaurent::zero(Var::C);
        for (m, k) in &self.terms {
            acc += &k.shift(2 * m.close_trace()? as i64);
        }
        Ok(acc)
    }
}

impl fmt::Display for BrauerVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, k)| format!("({k})*{m}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The standard basis `{id, e, x}` of the two-strand algebra.
pub fn br2_id() -> BrauerVector {
    BrauerVector::basis(BrauerMatching::identity(2))
}

pub fn br2_e() -> BrauerVector {
    BrauerVector::basis(BrauerMatching::cap_cup())
}

pub fn br2_x() -> BrauerVector {
    BrauerVector::basis(BrauerMatching::crossing())
}

fn lin(terms: &[(&BrauerVector, HalfLaurent)]) -> BrauerVector {
    let mut acc = BrauerVector::zero(2, 2);
    for (v, k) in terms {
        acc = acc.add(&v.scale(k)).expect("two-strand arity");
    }
    acc
}

fn half_const() -> HalfLaurent {
    HalfLaurent::constant(Var::C, rat(1, 2))
}

fn c_inv() -> HalfLaurent {
    HalfLaurent::var_pow(Var::C, -1)
}

/// The primitive central idempotents `c⁻¹e`, `½(id − x)`, `½(id + x) − c⁻¹e`.
pub fn br2_idempotents() -> [BrauerVector; 3] {
    let (id, e, x) = (br2_id(), br2_e(), br2_x());
    let h = half_const();
    let p1 = lin(&[(&e, c_inv())]);
    let p2 = lin(&[(&id, h.clone()), (&x, -h.clone())]);
    let p3 = lin(&[(&id, h.clone()), (&e, -c_inv()), (&x, h)]);
    [p1, p2, p3]
}

/// `id − c⁻¹e`, which kills caps and cups on either side.
pub fn jones_wenzl() -> BrauerVector {
    lin(&[(&br2_id(), HalfLaurent::one(Var::C)), (&br2_e(), -c_inv())])
}

#[derive(Clone, Debug, Serialize)]
pub struct Br2Report {
    pub idempotent: [bool; 3],
    pub orthogonal: bool,
    pub complete: bool,
    pub jones_wenzl_is_p2_plus_p3: bool,
    pub jones_wenzl_idempotent: bool,
    pub jones_wenzl_kills_cup: bool,
    pub jones_wenzl_kills_cap: bool,
}

impl Br2Report {
    pub fn all_hold(&self) -> bool {
        self.idempotent.iter().all(|&b| b)
            && self.orthogonal
            && self.complete
            && self.jones_wenzl_is_p2_plus_p3
            && self.jones_wenzl_idempotent
            && self.jones_wenzl_kills_cup
            && self.jones_wenzl_kills_cap
    }
}

pub fn br2_idempotent_verify() -> Br2Report {
    let p = br2_idempotents();
    let comp = |a: &BrauerVector, b: &BrauerVector| a.compose(b).expect("two-strand arity");
    let idempotent = [0, 1, 2].map(|i| comp(&p[i], &p[i]) == p[i]);
    let mut orthogonal = true;
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                orthogonal &= comp(&p[i], &p[j]).is_zero();
            }
        }
    }
    let sum = p[0].add(&p[1]).and_then(|s| s.add(&p[2])).expect("arity");
    let jw = jones_wenzl();
    let cup = BrauerVector::basis(BrauerMatching::cup());
    let cap = BrauerVector::basis(BrauerMatching::cap());
    Br2Report {
        idempotent,
        orthogonal,
        complete: sum == br2_id(),
        jones_wenzl_is_p2_plus_p3: p[1].add(&p[2]).expect("arity") == jw,
        jones_wenzl_idempotent: comp(&jw, &jw) == jw,
        jones_wenzl_kills_cup: jw.compose(&cup).expect("arity").is_zero(),
        jones_wenzl_kills_cap: cap.compose(&jw).expect("arity").is_zero(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_cap_cup_is_one_loop() {
        let (m, loops) = BrauerMatching::cap().compose(&BrauerMatching::cup()).unwrap();
        assert_eq!((m.bottom(), m.top(), loops), (0, 0, 1));
        let v =
            BrauerVector::basis(BrauerMatching::cap()).compose(&BrauerVector::basis(BrauerMatching::cup())).unwrap();
        assert_eq!(v.close_trace().unwrap(), HalfLaurent::var_pow(Var::C, 1));
    }

    #[test]
    fn crossing_squares_to_identity() {
        let x = BrauerMatching::crossing();
        assert_eq!(x.compose(&x).unwrap(), (BrauerMatching::identity(2), 0));
    }

    #[test]
    fn zig_zag() {
        let left = BrauerMatching::cap().tensor(&BrauerMatching::identity(1));
        let right = BrauerMatching::identity(1).tensor(&BrauerMatching::cup());
        assert_eq!(left.compose(&right).unwrap(), (BrauerMatching::identity(1), 0));
    }

    #[test]
    fn e_squared_is_c_e() {
        let e = br2_e();
        assert_eq!(e.compose(&e).unwrap(), e.scale(&HalfLaurent::var_pow(Var::C, 1)));
    }

    #[test]
    fn trace_of_identity() {
        assert_eq!(br2_id().close_trace().unwrap(), HalfLaurent::var_pow(Var::C, 2));
        assert_eq!(br2_x().close_trace().unwrap(), HalfLaurent::var_pow(Var::C, 1));
    }

    #[test]
    fn idempotents() {
        let r = br2_idempotent_verify();
        assert!(r.all_hold(), "{r:?}");
    }

    #[test]
    fn arity_mismatch_is_reported() {
        assert!(BrauerMatching::cap().compose(&BrauerMatching::cap()).is_err());
        assert!(BrauerMatching::new(1, 1, vec![0, 1]).is_err());
    }
}
