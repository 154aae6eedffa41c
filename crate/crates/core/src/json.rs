//! JSON interchange for algebras, structures and congruences.
//!
//! Every document carries `"schema": 1`. An algebra is
//! `{"size", "labels", "ops": {"meet", "join", "neg", "const"}}`; a structure
//! adds `"rels"` mapping `T`, `E`, `NF` to element lists and `eq` to pairs;
//! a congruence document wraps a structure together with the class
//! representative array.

use crate::algebra::{Congruence, Elem, FiniteAlgebra, Subset};
use crate::structures::{BinaryRelation, Relation, Structure};
use crate::syntax::{Constant, Pred};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

pub const SCHEMA: u32 = 1;

fn schema() -> u32 {
    SCHEMA
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpsJson {
    pub meet: Vec<Vec<Elem>>,
    pub join: Vec<Vec<Elem>>,
    pub neg: Vec<Elem>,
    #[serde(rename = "const", default)]
    pub constants: BTreeMap<String, Elem>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraJson {
    #[serde(default = "schema")]
    pub schema: u32,
    pub size: usize,
    pub labels: Vec<String>,
    pub ops: OpsJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RelJson {
    Pairs(Vec<(Elem, Elem)>),
    Elems(Vec<Elem>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureJson {
    #[serde(flatten)]
    pub algebra: AlgebraJson,
    pub rels: BTreeMap<String, RelJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CongruenceJson {
    #[serde(default = "schema")]
    pub schema: u32,
    pub structure: StructureJson,
    /// Least element of each element's class.
    pub congruence: Vec<Elem>,
}

fn check_schema(s: u32) -> Result<()> {
    if s == SCHEMA {
        Ok(())
    } else {
        Err(Error::Precondition(format!("unsupported schema {s}, expected {SCHEMA}")))
    }
}

impl From<&FiniteAlgebra> for AlgebraJson {
    fn from(a: &FiniteAlgebra) -> Self {
        AlgebraJson {
            schema: SCHEMA,
            size: a.size(),
            labels: a.labels().to_vec(),
            ops: OpsJson {
                meet: a.meet_table(),
                join: a.join_table(),
                neg: a.neg_table().to_vec(),
                constants: a.constants().iter().map(|(c, &e)| (c.symbol().to_string(), e)).collect(),
            },
        }
    }
}

impl AlgebraJson {
    pub fn to_algebra(&self) -> Result<FiniteAlgebra> {
        check_schema(self.schema)?;
        if self.size != self.ops.neg.len() {
            return Err(Error::InvalidAlgebra(format!("size {} but {} negation entries", self.size, self.ops.neg.len())));
        }
        let constants = self
            .ops
            .constants
            .iter()
            .map(|(k, &v)| Constant::from_symbol(k).map(|c| (c, v)).ok_or_else(|| Error::InvalidAlgebra(format!("unknown constant {k}"))))
            .collect::<Result<_>>()?;
        FiniteAlgebra::new(self.labels.clone(), self.ops.meet.clone(), self.ops.join.clone(), self.ops.neg.clone(), constants)
    }
}

impl From<&Structure> for StructureJson {
    fn from(s: &Structure) -> Self {
        let rels = s
            .relations()
            .iter()
            .map(|(p, r)| {
                let j = match r {
                    Relation::Unary(u) => RelJson::Elems(u.iter().collect()),
                    Relation::Binary(b) => RelJson::Pairs(b.pairs().collect()),
                };
                (p.name().to_string(), j)
            })
            .collect();
        StructureJson {
            algebra: s.algebra().into(),
            rels,
        }
    }
}

impl StructureJson {
    pub fn to_structure(&self) -> Result<Structure> {
        let a = self.algebra.to_algebra()?;
        let n = a.size();
        let mut rels = BTreeMap::new();
        for (name, j) in &self.rels {
            let p = Pred::from_name(name).ok_or_else(|| Error::InvalidStructure(format!("unknown relation {name}")))?;
            let r = match (p.arity(), j) {
                (1, RelJson::Elems(es)) => Relation::Unary(Subset::from_elems(es.iter().copied())),
                (1, RelJson::Pairs(ps)) if ps.is_empty() => Relation::Unary(Subset::default()),
                (2, RelJson::Pairs(ps)) => Relation::Binary(BinaryRelation::from_pairs(n, ps.iter().copied())),
                (2, RelJson::Elems(es)) if es.is_empty() => Relation::Binary(BinaryRelation::empty(n)),
                _ => return Err(Error::InvalidStructure(format!("relation {name} has the wrong shape"))),
            };
            if let Relation::Unary(u) = r {
                if u.iter().any(|e| e >= n) {
                    return Err(Error::InvalidStructure(format!("relation {name} mentions an element outside the universe")));
                }
            }
            rels.insert(p, r);
        }
        Structure::new(a, rels)
    }
}

impl CongruenceJson {
    pub fn new(s: &Structure, theta: &Congruence) -> CongruenceJson {
        CongruenceJson {
            schema: SCHEMA,
            structure: s.into(),
            congruence: theta.reps().to_vec(),
        }
    }

    pub fn to_parts(&self) -> Result<(Structure, Congruence)> {
        check_schema(self.schema)?;
        let s = self.structure.to_structure()?;
        let theta = Congruence::from_reps(&self.congruence)?;
        if theta.len() != s.size() {
            return Err(Error::InvalidStructure("congruence size differs from the universe".into()));
        }
        Ok((s, theta))
    }
}

pub fn algebra_to_json(a: &FiniteAlgebra) -> String {
    serde_json::to_string_pretty(&AlgebraJson::from(a)).expect("serializable")
}

pub fn algebra_from_json(text: &str) -> Result<FiniteAlgebra> {
    serde_json::from_str::<AlgebraJson>(text)?.to_algebra()
}

pub fn structure_to_json(s: &Structure) -> String {
    serde_json::to_string_pretty(&StructureJson::from(s)).expect("serializable")
}

pub fn structure_from_json(text: &str) -> Result<Structure> {
    serde_json::from_str::<StructureJson>(text)?.to_structure()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{builtin, Builtin};
    use crate::leibniz::leibniz_structure;
    use crate::structures::{preset_names, preset_structure};

    #[test]
    fn algebras_round_trip() {
        for b in [Builtin::B2, Builtin::K3, Builtin::DM4] {
            let a = builtin(b, &[Constant::Top]).unwrap();
            assert_eq!(algebra_from_json(&algebra_to_json(&a)).unwrap(), a);
        }
    }

    #[test]
    fn presets_round_trip() {
        for name in preset_names() {
            let s = preset_structure(&name).unwrap();
            assert_eq!(structure_from_json(&structure_to_json(&s)).unwrap(), s, "{name}");
        }
    }

    #[test]
    fn documented_layout() {
        let s = preset_structure("BD-EQ").unwrap();
        let v: serde_json::Value = serde_json::from_str(&structure_to_json(&s)).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["size"], 4);
        assert_eq!(v["rels"]["T"], serde_json::json!([1, 3]));
        assert_eq!(v["rels"]["eq"][0], serde_json::json!([0, 0]));
        assert!(v["ops"]["const"].as_object().unwrap().is_empty());
    }

    #[test]
    fn congruence_envelope() {
        let s = preset_structure("BD").unwrap();
        let theta = leibniz_structure(&s).unwrap();
        let doc = CongruenceJson::new(&s, &theta);
        let text = serde_json::to_string(&doc).unwrap();
        let back: CongruenceJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_parts().unwrap(), (s, theta));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(algebra_from_json(r#"{"size": 1, "labels": ["a"], "ops": {"meet": [[0]], "join": [[0]], "neg": [1]}}"#).is_err());
        assert!(algebra_from_json(r#"{"schema": 2, "size": 1, "labels": ["a"], "ops": {"meet": [[0]], "join": [[0]], "neg": [0]}}"#).is_err());
        let ok = r#"{"size": 1, "labels": ["a"], "ops": {"meet": [[0]], "join": [[0]], "neg": [0]}, "rels": {"T": [], "eq": []}}"#;
        let s = structure_from_json(ok).unwrap();
        assert_eq!(s.unary(Pred::T), Some(Subset::default()));
        let bad = r#"{"size": 1, "labels": ["a"], "ops": {"meet": [[0]], "join": [[0]], "neg": [0]}, "rels": {"T": [3]}}"#;
        assert!(structure_from_json(bad).is_err());
    }
}
