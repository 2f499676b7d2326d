//! Serializable reports with provenance, and the cross-engine oracle run by `check`.

use std::collections::BTreeMap;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::algebra::{HalfLaurent, Var};
use crate::classical::{
    flow_polynomial, krushkal_polynomial, s_from_krushkal, s_polynomial, virtual_chromatic, Engine, InvariantError,
};
use crate::ribbon::CombMap;
use crate::vgf::{serialize_vgf, VgfDocument};

/// Hex SHA-256 of the canonical serialization, so reordered but identical inputs hash alike.
pub fn input_hash(doc: &VgfDocument) -> String {
    hex::encode(Sha256::digest(serialize_vgf(&doc.map, &doc.crossings).as_bytes()))
}

#[derive(Clone, Debug, Serialize)]
pub struct PolynomialEntry {
    pub name: String,
    pub variable: String,
    pub value: String,
    /// Which implementation produced the value.
    pub engine: String,
    /// Point label to exact value.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub evaluations: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InvariantReport {
    pub input_hash: String,
    pub polynomials: Vec<PolynomialEntry>,
    pub verdicts: BTreeMap<String, String>,
}

impl InvariantReport {
    pub fn new(doc: &VgfDocument) -> Self {
        InvariantReport { input_hash: input_hash(doc), polynomials: Vec::new(), verdicts: BTreeMap::new() }
    }

    pub fn push(&mut self, name: &str, p: &HalfLaurent, engine: &str) -> &mut PolynomialEntry {
        self.polynomials.push(PolynomialEntry {
            name: name.to_string(),
            variable: p.var().symbol().to_string(),
            value: p.to_string(),
            engine: engine.to_string(),
            evaluations: BTreeMap::new(),
        });
        self.polynomials.last_mut().expect("just pushed")
    }

    pub fn verdict(&mut self, key: &str, value: impl ToString) {
        self.verdicts.insert(key.to_string(), value.to_string());
    }

    /// One `name = value` line per polynomial, then `key: value` per verdict.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let single = self.polynomials.len() == 1 && self.verdicts.is_empty();
        for p in &self.polynomials {
            if single {
                out.push_str(&p.value);
            } else {
                out.push_str(&format!("{} = {}", p.name, p.value));
            }
            out.push('\n');
            for (at, v) in &p.evaluations {
                out.push_str(&format!("  {} at {} = {}\n", p.name, at, v));
            }
        }
        for (k, v) in &self.verdicts {
            out.push_str(&format!("{k}: {v}\n"));
        }
        out
    }
}

/// Agreement of independent routes to the same polynomial on one map.
#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub s_state_sum: String,
    pub s_engines_agree: bool,
    pub flow_engines_agree: bool,
    /// `S = (−1)^{b1} P'(−1, −Q, Q^{−1/2}, 1)` from the Krushkal polynomial.
    pub krushkal_agrees: bool,
    /// `λ(t) = t^{b0−g} S_{dual}(t)`; `None` for twisted maps.
    pub chromatic_duality: Option<bool>,
}

impl OracleReport {
    pub fn all_hold(&self) -> bool {
        self.s_engines_agree && self.flow_engines_agree && self.krushkal_agrees && self.chromatic_duality != Some(false)
    }
}

pub fn oracle_check(m: &CombMap) -> Result<OracleReport, InvariantError> {
    let s = s_polynomial(m, Engine::StateSum)?;
    let oriented = !m.has_twists();
    let mut s_agree = s_polynomial(m, Engine::Brauer)? == s;
    if oriented {
        s_agree &= s_polynomial(m, Engine::Recursive)? == s;
    }
    let flow_agree = flow_polynomial(m, Engine::StateSum)? == flow_polynomial(m, Engine::Recursive)?;
    let krushkal = s_from_krushkal(&krushkal_polynomial(m)?, m.euler_data().b1) == s;
    let chromatic = if oriented {
        let e = m.euler_data();
        let dual = s_polynomial(&m.geometric_dual()?, Engine::StateSum)?;
        let expected = dual.retag(Var::T).shift(2 * (e.components as i64 - e.genus as i64));
        Some(virtual_chromatic(m)? == expected)
    } else {
        None
    };
    Ok(OracleReport {
        s_state_sum: s.to_string(),
        s_engines_agree: s_agree,
        flow_engines_agree: flow_agree,
        krushkal_agrees: krushkal,
        chromatic_duality: chromatic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::vgf::parse_vgf;

    #[test]
    fn hash_ignores_presentation() {
        let a = parse_vgf(fixtures::THETA_P).unwrap();
        let b = parse_vgf(r#"{"edges":[[4,5],[2,3],[0,1]],"vertices":[[5,3,1],[2,4,0]]}"#).unwrap();
        assert_eq!(input_hash(&a), input_hash(&b));
        assert_eq!(input_hash(&a).len(), 64);
        assert_ne!(input_hash(&a), input_hash(&parse_vgf(fixtures::THETA_T).unwrap()));
    }

    #[test]
    fn oracle_holds_on_fixtures() {
        for (name, text) in fixtures::ALL {
            let r = oracle_check(&fixtures::document(text).map).unwrap();
            assert!(r.all_hold(), "{name}: {r:?}");
        }
    }

    #[test]
    fn single_polynomial_renders_bare() {
        let doc = parse_vgf(fixtures::THETA_T).unwrap();
        let mut r = InvariantReport::new(&doc);
        r.push("S", &s_polynomial(&doc.map, Engine::StateSum).unwrap(), Engine::StateSum.name());
        assert_eq!(r.render_text(), "-2*Q + 2\n");
    }
}
