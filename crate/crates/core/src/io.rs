//! JSON formats: identity lists over `(t, s)` terms and relation-system dumps.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::composition::CompositionPair;
use crate::enumerate::enumerate_admissible;
use crate::error::{Error, Result};
use crate::lincomb::LinComb;
use crate::rational::{format_rational, parse_rational};
use crate::relations::{verify_identity, Provenance, Relation, RelationSystem};
use crate::zword::TypeTag;

pub const MISSING_RELATIONS_TI: &str = include_str!("../data/missing_relations_tI.json");
pub const MISSING_RELATIONS_II_III: &str = include_str!("../data/missing_relations_II_III.json");
pub const OKOUNKOV_W6_9: &str = include_str!("../data/okounkov_w6_9.json");

/// Bundled identity files by name.
pub fn bundled(name: &str) -> Option<&'static str> {
    match name.trim_end_matches(".json") {
        "missing_relations_tI" => Some(MISSING_RELATIONS_TI),
        "missing_relations_II_III" => Some(MISSING_RELATIONS_II_III),
        "okounkov_w6_9" => Some(OKOUNKOV_W6_9),
        _ => None,
    }
}

pub const BUNDLED_NAMES: [&str; 3] = [
    "missing_relations_tI",
    "missing_relations_II_III",
    "okounkov_w6_9",
];

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TermJson {
    pub coeff: String,
    pub s: Vec<u32>,
    pub t: Vec<u32>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum IdentityJson {
    Named { name: String, terms: Vec<TermJson> },
    Bare(Vec<TermJson>),
}

/// A combination of values that should vanish.
#[derive(Clone, Debug, PartialEq)]
pub struct Identity {
    pub name: String,
    pub terms: LinComb<CompositionPair>,
}

impl Identity {
    pub fn holds(&self, order: usize) -> Result<bool> {
        verify_identity(&self.terms, order)
    }
}

fn json_err(e: serde_json::Error) -> Error {
    Error::Json(e.to_string())
}

fn term(t: &TermJson) -> Result<(CompositionPair, crate::Rational)> {
    if t.s.len() != t.t.len() {
        return Err(Error::Json(format!(
            "s and t differ in length: {:?} / {:?}",
            t.s, t.t
        )));
    }
    Ok((
        CompositionPair::new(t.s.clone(), t.t.clone()),
        parse_rational(&t.coeff)?,
    ))
}

/// Parses a list of identities; each is either a bare term list or
/// `{"name": ..., "terms": [...]}`.
pub fn parse_identities(text: &str) -> Result<Vec<Identity>> {
    let raw: Vec<IdentityJson> = serde_json::from_str(text).map_err(json_err)?;
    raw.into_iter()
        .enumerate()
        .map(|(i, item)| {
            let (name, terms) = match item {
                IdentityJson::Named { name, terms } => (name, terms),
                IdentityJson::Bare(terms) => (format!("identity {}", i + 1), terms),
            };
            let mut comb = LinComb::new();
            for t in &terms {
                let (c, coeff) = term(t)?;
                comb.add_term(c, coeff);
            }
            Ok(Identity { name, terms: comb })
        })
        .collect()
}

pub fn identities_to_json(ids: &[Identity]) -> String {
    let items: Vec<serde_json::Value> = ids
        .iter()
        .map(|id| {
            let terms: Vec<TermJson> = id
                .terms
                .iter()
                .map(|(c, coeff)| TermJson {
                    coeff: format_rational(coeff),
                    s: c.s.clone(),
                    t: c.t.clone(),
                })
                .collect();
            serde_json::json!({ "name": id.name, "terms": terms })
        })
        .collect();
    serde_json::to_string_pretty(&items).expect("serializable")
}

#[derive(Serialize, Deserialize)]
struct BasisEntry {
    s: Vec<u32>,
    t: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct RowJson {
    provenance: String,
    coeffs: Vec<(usize, String)>,
}

#[derive(Serialize, Deserialize)]
struct SystemJson {
    #[serde(rename = "type")]
    ty: TypeTag,
    weight: u32,
    basis: Vec<BasisEntry>,
    rows: Vec<RowJson>,
}

pub fn export_system(sys: &RelationSystem) -> Result<String> {
    let basis = sys
        .basis
        .iter()
        .map(|w| {
            let c = w.composition(sys.ty)?;
            Ok(BasisEntry { s: c.s, t: c.t })
        })
        .collect::<Result<_>>()?;
    let rows = sys
        .rows
        .iter()
        .map(|r| RowJson {
            provenance: r.provenance.to_string(),
            coeffs: r
                .coeffs
                .iter()
                .map(|(i, c)| (*i, format_rational(c)))
                .collect(),
        })
        .collect();
    let doc = SystemJson {
        ty: sys.ty,
        weight: sys.weight,
        basis,
        rows,
    };
    serde_json::to_string_pretty(&doc).map_err(json_err)
}

/// Reads a dump back; every row gets `Imported` provenance. Basis entries are
/// matched to the admissible words of the declared type by realization.
pub fn import_system(text: &str) -> Result<RelationSystem> {
    let doc: SystemJson = serde_json::from_str(text).map_err(json_err)?;
    let mut known = HashMap::new();
    for w in enumerate_admissible(doc.ty, doc.weight) {
        known.insert(w.composition(doc.ty)?, w);
    }
    let basis = doc
        .basis
        .iter()
        .map(|e| {
            let c = CompositionPair::new(e.s.clone(), e.t.clone());
            known.get(&c).cloned().ok_or_else(|| {
                Error::Json(format!(
                    "{c} is not an admissible {} word of weight <= {}",
                    doc.ty, doc.weight
                ))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let n = basis.len();
    let mut sys = RelationSystem::with_basis(doc.ty, doc.weight, basis);
    for row in doc.rows {
        let mut coeffs = Vec::with_capacity(row.coeffs.len());
        for (i, c) in &row.coeffs {
            if *i >= n {
                return Err(Error::Json(format!(
                    "column {i} out of range ({n} basis words)"
                )));
            }
            coeffs.push((*i, parse_rational(c)?));
        }
        coeffs.sort_by_key(|e| e.0);
        sys.rows.push(Relation {
            coeffs,
            provenance: Provenance::Imported(row.provenance),
        });
    }
    Ok(sys)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relations::gen_all;

    #[test]
    fn bundled_files_parse() {
        for name in BUNDLED_NAMES {
            let ids = parse_identities(bundled(name).unwrap()).unwrap();
            assert!(!ids.is_empty(), "{name}");
        }
        assert_eq!(parse_identities(OKOUNKOV_W6_9).unwrap().len(), 12);
        assert_eq!(parse_identities(MISSING_RELATIONS_TI).unwrap().len(), 5);
    }

    #[test]
    fn bare_term_lists() {
        let ids = parse_identities(
            r#"[[{"coeff":"1","s":[2],"t":[1]},{"coeff":"-1/2","s":[2],"t":[1]}]]"#,
        )
        .unwrap();
        assert_eq!(ids[0].terms.len(), 1);
        assert_eq!(ids[0].name, "identity 1");
    }

    #[test]
    fn identity_round_trip() {
        let ids = parse_identities(MISSING_RELATIONS_II_III).unwrap();
        assert_eq!(parse_identities(&identities_to_json(&ids)).unwrap(), ids);
    }

    #[test]
    fn system_round_trip() {
        for ty in [TypeTag::ITilde, TypeTag::III, TypeTag::G] {
            let sys = gen_all(ty, 3).unwrap();
            let back = import_system(&export_system(&sys).unwrap()).unwrap();
            assert_eq!(back.basis, sys.basis);
            assert_eq!(back.rank(), sys.rank());
            assert!(back
                .rows
                .iter()
                .all(|r| matches!(r.provenance, Provenance::Imported(_))));
        }
    }

    #[test]
    fn rejects_bad_columns() {
        let text = r#"{"type":"ii","weight":1,"basis":[{"s":[1],"t":[1]}],"rows":[{"provenance":"x","coeffs":[[3,"1"]]}]}"#;
        assert!(import_system(text).is_err());
    }
}
