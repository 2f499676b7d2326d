use std::fmt;

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::Rational;
use crate::classical::InvariantError;

use super::gram::{fpf_basis, glue_pairing, FpfPermutation};

/// Known negligible combinations of symmetrised basis elements, keyed by `Q`.
pub const NEGLIGIBLE_TABLE: [(i64, &str); 7] = [
    (1, "p(2)"),
    (4, "p(3)"),
    (9, "p(4) - 3/2 p(2,2)"),
    (16, "p(5) - 10/3 p(3,2)"),
    (25, "p(6) - 15/4 p(4,2) - 5/3 p(3,3) + 25/8 p(2,2,2)"),
    (36, "p(7) - 21/5 p(5,2) - 7/2 p(4,3) + 21/2 p(3,2,2)"),
    (49, "p(8) - 14/3 p(6,2) - 56/15 p(5,3) - 7/4 p(4,4) + 49/4 p(4,2,2) + 98/9 p(3,3,2) - 343/48 p(2,2,2,2)"),
];

/// Rational combination of symmetrised elements `p(n₁,…,n_k)` on a common boundary size.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NegligibleCandidate {
    pub boundary: usize,
    pub terms: Vec<(Rational, Vec<usize>)>,
}

impl fmt::Display for NegligibleCandidate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (c, parts)) in self.terms.iter().enumerate() {
            let neg = c < &Rational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            let sign = match (i, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            let coeff = if abs.is_one() { String::new() } else { format!("{abs} ") };
            let p: Vec<String> = parts.iter().map(|x| x.to_string()).collect();
            write!(f, "{sign}{coeff}p({})", p.join(","))?;
        }
        Ok(())
    }
}

fn bad(msg: impl Into<String>) -> InvariantError {
    InvariantError::Precondition(msg.into())
}

fn parse_rational(s: &str) -> Result<Rational, InvariantError> {
    let s = s.trim().trim_end_matches('*').trim();
    if s.is_empty() {
        return Ok(Rational::one());
    }
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let num: i64 = num.parse().map_err(|_| bad(format!("bad coefficient '{s}'")))?;
    let den: i64 = den.parse().map_err(|_| bad(format!("bad coefficient '{s}'")))?;
    if den == 0 {
        return Err(bad("zero denominator"));
    }
    Ok(Rational::new(num.into(), den.into()))
}

/// Parse text such as `p(4) - 3/2 p(2,2)`; LaTeX `\frac{a}{b}` coefficients are accepted.
pub fn parse_candidate(text: &str) -> Result<NegligibleCandidate, InvariantError> {
    let mut s = text.replace('$', "");
    while let Some(i) = s.find("\\frac{") {
        let rest = &s[i + 6..];
        let close = rest.find('}').ok_or_else(|| bad("unterminated \\frac"))?;
        let num = rest[..close].to_string();
        let rest2 = rest[close + 1..].trim_start();
        let rest2 = rest2.strip_prefix('{').ok_or_else(|| bad("\\frac needs two groups"))?;
        let close2 = rest2.find('}').ok_or_else(|| bad("unterminated \\frac"))?;
        let den = rest2[..close2].to_string();
        let tail = rest2[close2 + 1..].to_string();
        s = format!("{}{num}/{den} {tail}", &s[..i]);
    }
    let mut terms = Vec::new();
    let mut boundary = None;
    let mut sign = Rational::one();
    let mut rest = s.trim();
    if rest.is_empty() {
        return Err(bad("empty candidate"));
    }
    loop {
        if let Some(r) = rest.strip_prefix('-') {
            sign = -sign;
            rest = r.trim_start();
            continue;
        }
        if let Some(r) = rest.strip_prefix('+') {
            rest = r.trim_start();
            continue;
        }
        let p = rest.find("p(").ok_or_else(|| bad(format!("expected p(...) in '{rest}'")))?;
        let coeff = &sign * parse_rational(&rest[..p])?;
        let after = &rest[p + 2..];
        let close = after.find(')').ok_or_else(|| bad("unterminated p("))?;
        let parts: Result<Vec<usize>, _> = after[..close].split(',').map(|x| x.trim().parse::<usize>()).collect();
        let mut parts = parts.map_err(|_| bad(format!("bad partition '{}'", &after[..close])))?;
        if parts.iter().any(|&x| x < 2) {
            return Err(bad("partition parts must be at least 2"));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let total: usize = parts.iter().sum();
        if *boundary.get_or_insert(total) != total {
            return Err(bad("terms have different boundary sizes"));
        }
        terms.push((coeff, parts));
        sign = Rational::one();
        rest = after[close + 1..].trim_start();
        if rest.is_empty() {
            break;
        }
    }
    Ok(NegligibleCandidate { boundary: boundary.unwrap_or(0), terms })
}

/// Partitions of `n` into parts `≥ 2`, parts non-increasing.
pub(crate) fn partitions_min2(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (2..=max.min(n)).rev() {
            cur.push(p);
            rec(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// `⟨p(λ), p(μ)⟩` at `Q = q`: the pairing of one representative of `λ` averaged over
/// the conjugacy class of `μ`.
pub fn sym_pairing(lambda: &[usize], mu: &[usize], q: i64) -> Result<Rational, InvariantError> {
    let sigma = FpfPermutation::from_cycle_type(lambda)?;
    let n = sigma.len();
    let mut mu_sorted = mu.to_vec();
    mu_sorted.sort_unstable_by(|a, b| b.cmp(a));
    if mu_sorted.iter().sum::<usize>() != n {
        return Err(bad("partitions of different sizes"));
    }
    let class: Vec<FpfPermutation> = fpf_basis(n).into_iter().filter(|t| t.cycle_type() == mu_sorted).collect();
    let values: Result<Vec<Rational>, InvariantError> =
        class.par_iter().map(|tau| Ok(glue_pairing(&sigma, tau)?.eval_int(q)?)).collect();
    let sum: Rational = values?.into_iter().sum();
    Ok(sum / Rational::from_integer(class.len().into()))
}

#[derive(Clone, Debug, Serialize)]
pub struct NegligibleReport {
    pub q: i64,
    pub candidate: String,
    /// `(μ, ⟨candidate, p(μ)⟩)` for every partition `μ`.
    pub pairings: Vec<(String, String)>,
    pub negligible: bool,
}

/// Check that `candidate` pairs to zero with every `p(μ)` at `Q = q`.
pub fn sym_negligible_verify(q: i64, candidate: &NegligibleCandidate) -> Result<NegligibleReport, InvariantError> {
    if !(1..=49).contains(&q) {
        return Err(bad(format!("Q = {q} outside the supported values 1, 4, …, 49")));
    }
    let root = (q as f64).sqrt().round() as i64;
    if root * root != q {
        return Err(bad(format!("Q = {q} is not a perfect square")));
    }
    if candidate.boundary != root as usize + 1 {
        return Err(bad(format!("Q = {q} needs partitions of {}, got {}", root + 1, candidate.boundary)));
    }
    let mut pairings = Vec::new();
    let mut negligible = true;
    for mu in partitions_min2(candidate.boundary) {
        let mut acc = Rational::zero();
        for (c, lambda) in &candidate.terms {
            acc += c * sym_pairing(lambda, &mu, q)?;
        }
        negligible &= acc.is_zero();
        let label: Vec<String> = mu.iter().map(|x| x.to_string()).collect();
        pairings.push((format!("p({})", label.join(",")), acc.to_string()));
    }
    Ok(NegligibleReport { q, candidate: candidate.to_string(), pairings, negligible })
}
