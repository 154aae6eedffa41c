//! Structures: an algebra together with an interpretation of each relation
//! symbol, and the exhaustive decision procedure for rule validity.

mod eval;
mod presets;

pub use eval::{
    eval_term, holds, holds_with, is_model, is_model_of_rules, CompiledRule, Counterexample, HoldsOptions,
    ModelReport, Valuation, Verdict, DEFAULT_VAR_CEILING,
};
pub use presets::{preset_names, preset_structure, PresetBase, PRESET_BASES};
pub(crate) use presets::{constant_subsets as constant_subsets_of, split_name as split_preset_name, suffix as presets_suffix};

use crate::algebra::{Elem, FiniteAlgebra, Homomorphism, Subset};
use crate::syntax::{Pred, SigSpec};
use crate::{Error, Result};
use std::collections::BTreeMap;

/// A binary relation as row bitmasks: bit `b` of row `a` iff `(a, b)` holds.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BinaryRelation {
    rows: Vec<u64>,
}

impl BinaryRelation {
    pub fn empty(n: usize) -> BinaryRelation {
        BinaryRelation { rows: vec![0; n] }
    }

    pub fn identity(n: usize) -> BinaryRelation {
        BinaryRelation {
            rows: (0..n).map(|a| 1 << a).collect(),
        }
    }

    pub fn total(n: usize) -> BinaryRelation {
        BinaryRelation {
            rows: vec![Subset::full(n).0; n],
        }
    }

    pub fn from_rows(rows: Vec<u64>) -> BinaryRelation {
        BinaryRelation { rows }
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (Elem, Elem)>) -> BinaryRelation {
        let mut r = BinaryRelation::empty(n);
        for (a, b) in pairs {
            r.insert(a, b);
        }
        r
    }

    /// The relation "same class" of a partition given by representatives.
    pub fn from_kernel(reps: &[Elem]) -> BinaryRelation {
        let n = reps.len();
        BinaryRelation::from_pairs(
            n,
            (0..n).flat_map(|a| (0..n).filter(move |&b| reps[a] == reps[b]).map(move |b| (a, b))),
        )
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    #[inline]
    pub fn contains(&self, a: Elem, b: Elem) -> bool {
        self.rows[a] >> b & 1 == 1
    }

    pub fn insert(&mut self, a: Elem, b: Elem) {
        self.rows[a] |= 1 << b;
    }

    pub fn pairs(&self) -> impl Iterator<Item = (Elem, Elem)> + '_ {
        let n = self.size();
        (0..n).flat_map(move |a| (0..n).filter(move |&b| self.contains(a, b)).map(move |b| (a, b)))
    }

    pub fn intersection(&self, o: &BinaryRelation) -> BinaryRelation {
        BinaryRelation {
            rows: self.rows.iter().zip(&o.rows).map(|(a, b)| a & b).collect(),
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == BinaryRelation::identity(self.size())
    }

    pub fn is_total(&self) -> bool {
        *self == BinaryRelation::total(self.size())
    }
}

/// Interpretation of one relation symbol.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Relation {
    Unary(Subset),
    Binary(BinaryRelation),
}

impl Relation {
    pub fn arity(&self) -> usize {
        match self {
            Relation::Unary(_) => 1,
            Relation::Binary(_) => 2,
        }
    }

    pub fn total(arity: usize, n: usize) -> Relation {
        if arity == 1 {
            Relation::Unary(Subset::full(n))
        } else {
            Relation::Binary(BinaryRelation::total(n))
        }
    }

    pub fn is_total(&self, n: usize) -> bool {
        match self {
            Relation::Unary(s) => *s == Subset::full(n),
            Relation::Binary(r) => r.is_total(),
        }
    }

    pub fn intersection(&self, o: &Relation) -> Result<Relation> {
        match (self, o) {
            (Relation::Unary(a), Relation::Unary(b)) => Ok(Relation::Unary(a.intersection(*b))),
            (Relation::Binary(a), Relation::Binary(b)) => Ok(Relation::Binary(a.intersection(b))),
            _ => Err(Error::SignatureMismatch("relations of different arity".into())),
        }
    }

    /// Image under an element map into a universe of size `m`.
    pub fn image(&self, map: &[Elem], m: usize) -> Relation {
        match self {
            Relation::Unary(s) => Relation::Unary(s.image(map)),
            Relation::Binary(r) => Relation::Binary(BinaryRelation::from_pairs(m, r.pairs().map(|(a, b)| (map[a], map[b])))),
        }
    }

    /// Preimage under an element map.
    pub fn preimage(&self, map: &[Elem]) -> Relation {
        let n = map.len();
        match self {
            Relation::Unary(s) => Relation::Unary(Subset::from_elems((0..n).filter(|&a| s.contains(map[a])))),
            Relation::Binary(r) => Relation::Binary(BinaryRelation::from_pairs(
                n,
                (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| r.contains(map[a], map[b])),
            )),
        }
    }
}

/// An algebra with interpreted relation symbols.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Structure {
    algebra: FiniteAlgebra,
    relations: BTreeMap<Pred, Relation>,
}

impl Structure {
    pub fn new(algebra: FiniteAlgebra, relations: BTreeMap<Pred, Relation>) -> Result<Structure> {
        if relations.is_empty() {
            return Err(Error::EmptyRelationalSignature);
        }
        let n = algebra.size();
        for (&p, r) in &relations {
            if r.arity() != p.arity() {
                return Err(Error::Arity {
                    pred: p,
                    expected: p.arity(),
                    found: r.arity(),
                });
            }
            let in_range = match r {
                Relation::Unary(s) => s.is_subset(Subset::full(n)),
                Relation::Binary(b) => b.size() == n && b.rows().iter().all(|&row| Subset(row).is_subset(Subset::full(n))),
            };
            if !in_range {
                return Err(Error::InvalidStructure(format!("{p} mentions elements outside the universe")));
            }
        }
        Ok(Structure { algebra, relations })
    }

    /// Convenience constructor for unary relations plus an optional
    /// binary one.
    pub fn with_unary(algebra: FiniteAlgebra, unary: &[(Pred, Subset)], eq: Option<BinaryRelation>) -> Result<Structure> {
        let mut rels: BTreeMap<Pred, Relation> = unary.iter().map(|&(p, s)| (p, Relation::Unary(s))).collect();
        if let Some(r) = eq {
            rels.insert(Pred::Eq, Relation::Binary(r));
        }
        Structure::new(algebra, rels)
    }

    pub fn algebra(&self) -> &FiniteAlgebra {
        &self.algebra
    }

    pub fn relations(&self) -> &BTreeMap<Pred, Relation> {
        &self.relations
    }

    pub fn relation(&self, p: Pred) -> Option<&Relation> {
        self.relations.get(&p)
    }

    pub fn unary(&self, p: Pred) -> Option<Subset> {
        match self.relations.get(&p)? {
            Relation::Unary(s) => Some(*s),
            Relation::Binary(_) => None,
        }
    }

    pub fn binary(&self, p: Pred) -> Option<&BinaryRelation> {
        match self.relations.get(&p)? {
            Relation::Binary(r) => Some(r),
            Relation::Unary(_) => None,
        }
    }

    pub fn size(&self) -> usize {
        self.algebra.size()
    }

    pub fn signature(&self) -> SigSpec {
        SigSpec::new(self.relations.keys().copied(), self.algebra.constants().keys().copied())
            .expect("structures have relations")
    }

    /// Every relation is total.
    pub fn is_trivial(&self) -> bool {
        self.relations.values().all(|r| r.is_total(self.size()))
    }

    pub fn with_relation(&self, p: Pred, r: Relation) -> Result<Structure> {
        let mut rels = self.relations.clone();
        rels.insert(p, r);
        Structure::new(self.algebra.clone(), rels)
    }

    /// Restriction to the given relation symbols.
    pub fn restrict_signature(&self, preds: &[Pred]) -> Result<Structure> {
        let rels = self
            .relations
            .iter()
            .filter(|(p, _)| preds.contains(p))
            .map(|(p, r)| (*p, r.clone()))
            .collect();
        Structure::new(self.algebra.clone(), rels)
    }

    /// Relation-wise intersection with a structure on the same algebra.
    pub fn intersection(&self, other: &Structure) -> Result<Structure> {
        if self.algebra != other.algebra || self.relations.keys().ne(other.relations.keys()) {
            return Err(Error::SignatureMismatch("intersection needs a shared algebra and signature".into()));
        }
        let rels = self
            .relations
            .iter()
            .map(|(p, r)| Ok((*p, r.intersection(&other.relations[p])?)))
            .collect::<Result<_>>()?;
        Structure::new(self.algebra.clone(), rels)
    }
}

/// The substructure on the subalgebra generated by `gens`, with relations
/// restricted, together with the inclusion map.
pub fn substructure(s: &Structure, gens: Subset) -> Result<(Structure, Homomorphism)> {
    let (sub, emb) = crate::algebra::subalgebra(s.algebra(), gens)?;
    let rels = s
        .relations
        .iter()
        .map(|(p, r)| (*p, r.preimage(&emb.map)))
        .collect();
    Ok((Structure::new(sub, rels)?, emb))
}

/// Whether `map` is an embedding of structures: an injective algebra
/// homomorphism that preserves and reflects every relation.
pub fn is_embedding(src: &Structure, tgt: &Structure, map: &[Elem]) -> bool {
    let injective = Subset::from_elems(map.iter().copied()).len() == src.size();
    injective
        && crate::algebra::is_homomorphism(src.algebra(), tgt.algebra(), map)
        && src.relations.iter().all(|(p, r)| tgt.relation(*p).is_some_and(|t| t.preimage(map) == *r))
}

/// An embedding of `src` into `tgt`, found by trying every injective map.
pub fn find_embedding(src: &Structure, tgt: &Structure) -> Option<Vec<Elem>> {
    let (n, m) = (src.size(), tgt.size());
    if n > m {
        return None;
    }
    let mut map = Vec::with_capacity(n);
    fn go(src: &Structure, tgt: &Structure, map: &mut Vec<Elem>, used: u64) -> bool {
        if map.len() == src.size() {
            return is_embedding(src, tgt, map);
        }
        let x = map.len();
        for y in 0..tgt.size() {
            if used >> y & 1 == 1 {
                continue;
            }
            // unary relations must agree on x already
            let agrees = src.relations.iter().all(|(p, r)| match (r, tgt.relation(*p)) {
                (Relation::Unary(s), Some(Relation::Unary(t))) => s.contains(x) == t.contains(y),
                (Relation::Binary(_), Some(Relation::Binary(_))) => true,
                _ => false,
            });
            if !agrees || src.algebra().neg(x) < x && map[src.algebra().neg(x)] != tgt.algebra().neg(y) {
                continue;
            }
            map.push(y);
            if go(src, tgt, map, used | 1 << y) {
                return true;
            }
            map.pop();
        }
        false
    }
    go(src, tgt, &mut map, 0).then_some(map)
}

pub fn isomorphic_structures(a: &Structure, b: &Structure) -> bool {
    a.size() == b.size() && find_embedding(a, b).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{builtin, dm4, dm4_algebra, k3, Builtin};

    #[test]
    fn arity_and_range_checks() {
        let a = dm4_algebra();
        let bad = BTreeMap::from([(Pred::T, Relation::Binary(BinaryRelation::identity(4)))]);
        assert!(matches!(Structure::new(a.clone(), bad), Err(Error::Arity { .. })));
        let bad = BTreeMap::from([(Pred::T, Relation::Unary(Subset::singleton(7)))]);
        assert!(Structure::new(a.clone(), bad).is_err());
        assert!(matches!(Structure::new(a, BTreeMap::new()), Err(Error::EmptyRelationalSignature)));
    }

    #[test]
    fn k3_embeds_into_dm4_structure() {
        let k = Structure::with_unary(builtin(Builtin::K3, &[]).unwrap(), &[(Pred::T, Subset::singleton(k3::T))], None).unwrap();
        let d = Structure::with_unary(dm4_algebra(), &[(Pred::T, Subset::from_elems([dm4::T, dm4::B]))], None).unwrap();
        assert_eq!(find_embedding(&k, &d), Some(vec![dm4::F, dm4::N, dm4::T]));
        assert!(!isomorphic_structures(&k, &d));
    }

    #[test]
    fn substructure_restricts_relations() {
        let d = Structure::with_unary(dm4_algebra(), &[(Pred::T, Subset::from_elems([dm4::T, dm4::B]))], None).unwrap();
        let (s, emb) = substructure(&d, Subset::from_elems([dm4::B, dm4::T])).unwrap();
        assert_eq!(s.size(), 3);
        assert_eq!(emb.map, vec![dm4::F, dm4::B, dm4::T]);
        assert_eq!(s.unary(Pred::T), Some(Subset::from_elems([1, 2])));
    }
}
