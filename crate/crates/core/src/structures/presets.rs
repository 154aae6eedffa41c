use super::{BinaryRelation, Relation, Structure};
use crate::algebra::{builtin, Builtin, Subset};
use crate::syntax::{Constant, Pred};
use crate::{Error, Result};
use std::collections::BTreeMap;

/// A named defining structure, before constants are chosen.
#[derive(Clone, Copy, Debug)]
pub struct PresetBase {
    pub name: &'static str,
    pub algebra: Builtin,
    /// Constants the preset may be expanded by.
    pub constants: &'static [Constant],
    /// Unary relations, by element label.
    pub unary: &'static [(Pred, &'static [&'static str])],
    /// Whether `=` is interpreted as identity.
    pub eq: bool,
}

use Constant::{Both as CB, Neither as CN, Top as CT};

const ALL: &[Constant] = &[CT, CN, CB];
const TB: &[Constant] = &[CT, CB];
const TN: &[Constant] = &[CT, CN];

const T_TB: (Pred, &[&str]) = (Pred::T, &["t", "b"]);
const E_T: (Pred, &[&str]) = (Pred::E, &["t"]);
const NF_TN: (Pred, &[&str]) = (Pred::NF, &["t", "n"]);

pub const PRESET_BASES: &[PresetBase] = &[
    PresetBase { name: "BD", algebra: Builtin::DM4, constants: ALL, unary: &[T_TB], eq: false },
    PresetBase { name: "ETL", algebra: Builtin::DM4, constants: ALL, unary: &[E_T], eq: false },
    PresetBase { name: "K", algebra: Builtin::K3, constants: TN, unary: &[(Pred::T, &["t"])], eq: false },
    PresetBase { name: "LP", algebra: Builtin::K3, constants: TB, unary: &[(Pred::T, &["t", "i"])], eq: false },
    PresetBase { name: "BDE", algebra: Builtin::DM4, constants: ALL, unary: &[T_TB, E_T], eq: false },
    PresetBase { name: "BDNF", algebra: Builtin::DM4, constants: ALL, unary: &[T_TB, NF_TN], eq: false },
    PresetBase {
        name: "KE",
        algebra: Builtin::K3,
        constants: TB,
        unary: &[(Pred::T, &["t", "i"]), E_T],
        eq: false,
    },
    PresetBase { name: "TNE", algebra: Builtin::DM4, constants: ALL, unary: &[T_TB, NF_TN, E_T], eq: false },
    PresetBase { name: "DM4-EQ", algebra: Builtin::DM4, constants: ALL, unary: &[], eq: true },
    PresetBase { name: "BD-EQ", algebra: Builtin::DM4, constants: ALL, unary: &[T_TB], eq: true },
    PresetBase { name: "ETL-EQ", algebra: Builtin::DM4, constants: ALL, unary: &[E_T], eq: true },
    PresetBase { name: "BDE-EQ", algebra: Builtin::DM4, constants: ALL, unary: &[T_TB, E_T], eq: true },
    PresetBase { name: "BDNF-EQ", algebra: Builtin::DM4, constants: ALL, unary: &[T_TB, NF_TN], eq: true },
];

/// Canonical suffix for a constant selection, e.g. `+#t#b`.
pub(crate) fn suffix(consts: &[Constant]) -> String {
    if consts.is_empty() {
        return String::new();
    }
    let mut cs = consts.to_vec();
    cs.sort();
    cs.dedup();
    std::iter::once("+".to_string()).chain(cs.iter().map(|c| c.symbol().to_string())).collect()
}

/// Splits `NAME+#t#n` into the base name and its constants.
pub(crate) fn split_name(name: &str) -> Result<(&str, Vec<Constant>)> {
    let (base, rest) = name.split_once('+').unwrap_or((name, ""));
    let mut consts = Vec::new();
    let mut rest = rest;
    while !rest.is_empty() {
        let sym = rest.get(..2).ok_or_else(|| Error::UnknownPreset(name.into()))?;
        let c = Constant::from_symbol(sym).ok_or_else(|| Error::UnknownPreset(name.into()))?;
        if consts.contains(&c) {
            return Err(Error::UnknownPreset(name.into()));
        }
        consts.push(c);
        rest = &rest[2..];
    }
    consts.sort();
    Ok((base, consts))
}

/// All nonempty subsets of `allowed`, in a fixed order.
pub(crate) fn constant_subsets(allowed: &[Constant]) -> Vec<Vec<Constant>> {
    (1..1u32 << allowed.len())
        .map(|m| (0..allowed.len()).filter(|i| m >> i & 1 == 1).map(|i| allowed[i]).collect())
        .collect()
}

/// Every registered preset name, constant expansions included.
pub fn preset_names() -> Vec<String> {
    PRESET_BASES
        .iter()
        .flat_map(|b| {
            std::iter::once(b.name.to_string())
                .chain(constant_subsets(b.constants).into_iter().map(move |cs| format!("{}{}", b.name, suffix(&cs))))
        })
        .collect()
}

fn base(name: &str) -> Option<&'static PresetBase> {
    PRESET_BASES.iter().find(|b| b.name.eq_ignore_ascii_case(name))
}

/// The defining structure registered under `name` (case-insensitive base,
/// optional `+#t#n#b` constant suffix).
pub fn preset_structure(name: &str) -> Result<Structure> {
    let (base_name, consts) = split_name(name)?;
    let b = base(base_name).ok_or_else(|| Error::UnknownPreset(name.into()))?;
    if let Some(c) = consts.iter().find(|c| !b.constants.contains(c)) {
        return Err(Error::UnsupportedConstant {
            algebra: b.name.into(),
            constant: c.symbol().into(),
        });
    }
    let alg = builtin(b.algebra, &consts)?;
    let mut rels = BTreeMap::new();
    for &(p, labels) in b.unary {
        let set = Subset::from_elems(labels.iter().map(|l| alg.elem(l).expect("preset label")));
        rels.insert(p, Relation::Unary(set));
    }
    if b.eq {
        rels.insert(Pred::Eq, Relation::Binary(BinaryRelation::identity(alg.size())));
    }
    Structure::new(alg, rels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{dm4, k3};

    #[test]
    fn golden_presets() {
        let bd = preset_structure("BD").unwrap();
        assert_eq!(bd.unary(Pred::T), Some(Subset::from_elems([dm4::T, dm4::B])));
        let bde_eq = preset_structure("BDE-eq").unwrap();
        assert_eq!(bde_eq.unary(Pred::E), Some(Subset::singleton(dm4::T)));
        assert!(bde_eq.binary(Pred::Eq).unwrap().is_identity());
        let ke = preset_structure("KE").unwrap();
        assert_eq!(ke.size(), 3);
        assert_eq!(ke.unary(Pred::T), Some(Subset::from_elems([k3::T, k3::I])));
        assert_eq!(ke.unary(Pred::E), Some(Subset::singleton(k3::T)));
    }

    #[test]
    fn constant_suffixes() {
        let s = preset_structure("BD-EQ+#n").unwrap();
        assert_eq!(s.algebra().constant(Constant::Neither), Some(dm4::N));
        assert_eq!(preset_structure("KE+#b#t").unwrap().algebra().constant(Constant::Both), Some(k3::I));
        assert!(preset_structure("KE+#n").is_err());
        assert!(preset_structure("BD+#x").is_err());
        assert!(preset_structure("BD+#t#t").is_err());
        assert!(preset_structure("nope").is_err());
    }

    #[test]
    fn names_resolve() {
        let names = preset_names();
        assert!(names.contains(&"BDE+#t#n#b".to_string()));
        for n in names {
            preset_structure(&n).unwrap();
        }
    }
}
