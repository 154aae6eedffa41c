//! Leibniz congruences of relations and structures, reducedness, and
//! reducts.
//!
//! The primary computation searches the congruence lattice for the largest
//! congruence compatible with a relation. The polynomial characterization
//! is implemented separately and only used to cross-check.

use crate::algebra::{congruences_within, quotient, Congruence, Elem, FiniteAlgebra, Homomorphism, Subset, DEFAULT_CONGRUENCE_BOUND};
use crate::structures::{BinaryRelation, Relation, Structure};
use crate::{Error, Result};
use std::collections::{BTreeMap, HashSet};

/// Largest universe for which unary polynomial closure is attempted.
pub const DEFAULT_POLY_BOUND: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LeibnizMethod {
    CongruenceSearch,
    Polynomials,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LeibnizResult {
    pub congruence: Congruence,
    pub method: LeibnizMethod,
}

/// Whether `theta` never relates a member of `f` to a non-member.
pub fn compatible_unary(theta: &Congruence, f: Subset) -> bool {
    (0..theta.len()).all(|a| f.contains(a) == f.contains(theta.rep(a)))
}

/// Whether `(a, b) in r`, `a θ c`, `b θ d` imply `(c, d) in r`.
pub fn compatible_binary(theta: &Congruence, r: &BinaryRelation) -> bool {
    // it suffices to compare every pair with the pair of representatives
    r.pairs().all(|(a, b)| r.contains(theta.rep(a), theta.rep(b)))
        && (0..theta.len()).all(|a| (0..theta.len()).all(|b| !r.contains(theta.rep(a), theta.rep(b)) || r.contains(a, b)))
}

pub fn compatible(theta: &Congruence, rel: &Relation) -> bool {
    match rel {
        Relation::Unary(f) => compatible_unary(theta, *f),
        Relation::Binary(r) => compatible_binary(theta, r),
    }
}

/// The congruence lattice of one algebra, computed once and queried for
/// any number of relations.
#[derive(Clone, Debug)]
pub struct CongruenceLattice {
    size: usize,
    congruences: Vec<Congruence>,
}

impl CongruenceLattice {
    pub fn new(a: &FiniteAlgebra, bound: usize) -> Result<CongruenceLattice> {
        Ok(CongruenceLattice {
            size: a.size(),
            congruences: congruences_within(a, bound)?,
        })
    }

    pub fn congruences(&self) -> &[Congruence] {
        &self.congruences
    }

    /// Join of every congruence compatible with `rel`, verified compatible.
    pub fn leibniz(&self, rel: &Relation) -> Result<Congruence> {
        let join = self
            .congruences
            .iter()
            .filter(|c| compatible(c, rel))
            .fold(Congruence::identity(self.size), |acc, c| acc.join(c));
        if !compatible(&join, rel) {
            return Err(Error::Internal("join of compatible congruences is incompatible".into()));
        }
        Ok(join)
    }

    pub fn leibniz_structure(&self, s: &Structure) -> Result<Congruence> {
        s.relations()
            .values()
            .try_fold(Congruence::total(self.size), |acc, r| Ok(acc.meet(&self.leibniz(r)?)))
    }
}

pub fn leibniz_unary(a: &FiniteAlgebra, f: Subset) -> Result<Congruence> {
    CongruenceLattice::new(a, DEFAULT_CONGRUENCE_BOUND)?.leibniz(&Relation::Unary(f))
}

pub fn leibniz_binary(a: &FiniteAlgebra, r: &BinaryRelation) -> Result<Congruence> {
    CongruenceLattice::new(a, DEFAULT_CONGRUENCE_BOUND)?.leibniz(&Relation::Binary(r.clone()))
}

/// The unary polynomial functions of `a`, as value tables.
///
/// Starts from the identity and all constant maps and closes under the
/// pointwise operations.
pub fn unary_polynomials(a: &FiniteAlgebra, bound: usize) -> Result<Vec<Vec<Elem>>> {
    let n = a.size();
    if n > bound {
        return Err(Error::BoundExceeded {
            what: "polynomial closure",
            size: n,
            bound,
        });
    }
    let mut seen: HashSet<Vec<Elem>> = HashSet::new();
    let mut all: Vec<Vec<Elem>> = Vec::new();
    let push = |f: Vec<Elem>, seen: &mut HashSet<Vec<Elem>>, all: &mut Vec<Vec<Elem>>| {
        if seen.insert(f.clone()) {
            all.push(f);
        }
    };
    push((0..n).collect(), &mut seen, &mut all);
    for c in 0..n {
        push(vec![c; n], &mut seen, &mut all);
    }
    let mut next = 0;
    while next < all.len() {
        let f = all[next].clone();
        push(f.iter().map(|&x| a.neg(x)).collect(), &mut seen, &mut all);
        for i in 0..=next {
            let g = all[i].clone();
            push((0..n).map(|x| a.meet(f[x], g[x])).collect(), &mut seen, &mut all);
            push((0..n).map(|x| a.join(f[x], g[x])).collect(), &mut seen, &mut all);
        }
        next += 1;
    }
    Ok(all)
}

fn kernel_of_profiles<P: Eq + std::hash::Hash + Clone>(n: usize, profile: impl Fn(Elem) -> P) -> Congruence {
    let profiles: Vec<P> = (0..n).map(profile).collect();
    Congruence::from_pairs(
        n,
        (0..n).flat_map(|a| (0..a).map(move |b| (a, b))).filter(|&(a, b)| profiles[a] == profiles[b]),
    )
}

/// Leibniz congruence of `f` via polynomials: `a` and `b` are related iff
/// every unary polynomial sends both into `f` or both outside it.
pub fn leibniz_unary_poly(a: &FiniteAlgebra, f: Subset) -> Result<Congruence> {
    leibniz_unary_poly_within(a, f, DEFAULT_POLY_BOUND)
}

pub fn leibniz_unary_poly_within(a: &FiniteAlgebra, f: Subset, bound: usize) -> Result<Congruence> {
    let polys = unary_polynomials(a, bound)?;
    Ok(kernel_of_profiles(a.size(), |x| polys.iter().map(|p| f.contains(p[x])).collect::<Vec<bool>>()))
}

/// Leibniz congruence of `r` via polynomials: `a` and `b` are related iff
/// `(p(a), q(a)) in r` exactly when `(p(b), q(b)) in r`, for all unary
/// polynomials `p` and `q`.
pub fn leibniz_binary_poly(a: &FiniteAlgebra, r: &BinaryRelation) -> Result<Congruence> {
    leibniz_binary_poly_within(a, r, DEFAULT_POLY_BOUND)
}

pub fn leibniz_binary_poly_within(a: &FiniteAlgebra, r: &BinaryRelation, bound: usize) -> Result<Congruence> {
    let polys = unary_polynomials(a, bound)?;
    Ok(kernel_of_profiles(a.size(), |x| {
        polys
            .iter()
            .flat_map(|p| polys.iter().map(move |q| r.contains(p[x], q[x])))
            .collect::<Vec<bool>>()
    }))
}

/// Either method, tagged.
pub fn leibniz_with(a: &FiniteAlgebra, rel: &Relation, method: LeibnizMethod) -> Result<LeibnizResult> {
    let congruence = match (method, rel) {
        (LeibnizMethod::CongruenceSearch, r) => CongruenceLattice::new(a, DEFAULT_CONGRUENCE_BOUND)?.leibniz(r)?,
        (LeibnizMethod::Polynomials, Relation::Unary(f)) => leibniz_unary_poly(a, *f)?,
        (LeibnizMethod::Polynomials, Relation::Binary(r)) => leibniz_binary_poly(a, r)?,
    };
    Ok(LeibnizResult { congruence, method })
}

/// Intersection of the Leibniz congruences of all relations of `s`.
pub fn leibniz_structure(s: &Structure) -> Result<Congruence> {
    leibniz_structure_within(s, DEFAULT_CONGRUENCE_BOUND)
}

pub fn leibniz_structure_within(s: &Structure, bound: usize) -> Result<Congruence> {
    CongruenceLattice::new(s.algebra(), bound)?.leibniz_structure(s)
}

pub fn is_reduced(s: &Structure) -> Result<bool> {
    Ok(leibniz_structure(s)?.is_identity())
}

/// Quotient of a structure by a congruence compatible with its relations.
pub fn quotient_structure(s: &Structure, theta: &Congruence) -> Result<(Structure, Homomorphism)> {
    if let Some((p, _)) = s.relations().iter().find(|(_, r)| !compatible(theta, r)) {
        return Err(Error::Precondition(format!("congruence is not compatible with {p}")));
    }
    let (q, proj) = quotient(s.algebra(), theta)?;
    let rels: BTreeMap<_, _> = s
        .relations()
        .iter()
        .map(|(p, r)| (*p, r.image(&proj.map, q.size())))
        .collect();
    Ok((Structure::new(q, rels)?, proj))
}

/// The Leibniz reduct together with the projection onto it.
pub fn reduct(s: &Structure) -> Result<(Structure, Homomorphism)> {
    reduct_within(s, DEFAULT_CONGRUENCE_BOUND)
}

pub fn reduct_within(s: &Structure, bound: usize) -> Result<(Structure, Homomorphism)> {
    let theta = leibniz_structure_within(s, bound)?;
    quotient_structure(s, &theta)
}

/// Reduct using an already computed congruence lattice of `s`'s algebra.
pub fn reduct_in(con: &CongruenceLattice, s: &Structure) -> Result<(Structure, Homomorphism)> {
    let theta = con.leibniz_structure(s)?;
    quotient_structure(s, &theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{builtin, dm4, dm4_algebra, enumerate_filters, k3, product, Builtin};
    use crate::structures::preset_structure;
    use crate::syntax::Pred;

    fn b2() -> FiniteAlgebra {
        builtin(Builtin::B2, &[]).unwrap()
    }

    /// Oracle: the largest compatible equivalence found by trying every
    /// set partition, checking the congruence property from scratch.
    fn oracle(a: &FiniteAlgebra, rel: &Relation) -> Congruence {
        let n = a.size();
        let mut best: Option<Congruence> = None;
        for mut code in 0..n.pow(n as u32) {
            let mut lab = vec![0; n];
            for l in lab.iter_mut() {
                *l = code % n;
                code /= n;
            }
            let c = Congruence::kernel(&lab);
            let is_con = (0..n).all(|x| {
                (0..n).all(|y| {
                    !c.related(x, y)
                        || (c.related(a.neg(x), a.neg(y))
                            && (0..n).all(|z| c.related(a.meet(x, z), a.meet(y, z)) && c.related(a.join(x, z), a.join(y, z))))
                })
            });
            let compat = match rel {
                Relation::Unary(f) => (0..n).all(|x| (0..n).all(|y| !c.related(x, y) || f.contains(x) == f.contains(y))),
                Relation::Binary(r) => (0..n).all(|x| {
                    (0..n).all(|y| {
                        !r.contains(x, y) || (0..n).all(|u| (0..n).all(|v| !(c.related(x, u) && c.related(y, v)) || r.contains(u, v)))
                    })
                }),
            };
            if is_con && compat && best.as_ref().is_none_or(|b| b.refines(&c)) {
                best = Some(c);
            }
        }
        best.expect("identity is compatible")
    }

    #[test]
    fn unary_examples() {
        let d = dm4_algebra();
        assert!(leibniz_unary(&d, Subset::singleton(dm4::T)).unwrap().is_identity());
        assert!(leibniz_unary(&d, Subset::from_elems([dm4::T, dm4::B])).unwrap().is_identity());
        assert!(leibniz_unary(&b2(), Subset::full(2)).unwrap().is_total());
        let k = builtin(Builtin::K3, &[]).unwrap();
        assert!(leibniz_unary_poly(&k, Subset::singleton(k3::T)).unwrap().is_identity());
        let bb = product(&[b2(), b2()]).unwrap();
        let top = Subset::singleton(bb.top());
        assert!(leibniz_unary(&bb, top).unwrap().is_identity());
        assert!(leibniz_unary_poly(&bb, top).unwrap().is_identity());
    }

    #[test]
    fn methods_agree_with_oracle_on_small_algebras() {
        let k = builtin(Builtin::K3, &[]).unwrap();
        let algebras = [b2(), k.clone(), dm4_algebra(), product(&[b2(), b2()]).unwrap()];
        for a in &algebras {
            for f in 0..1u64 << a.size() {
                let rel = Relation::Unary(Subset(f));
                let want = oracle(a, &rel);
                assert_eq!(leibniz_with(a, &rel, LeibnizMethod::CongruenceSearch).unwrap().congruence, want);
                assert_eq!(leibniz_with(a, &rel, LeibnizMethod::Polynomials).unwrap().congruence, want);
            }
        }
    }

    #[test]
    fn binary_examples() {
        let d = dm4_algebra();
        assert!(leibniz_binary(&d, &BinaryRelation::identity(4)).unwrap().is_identity());
        assert!(leibniz_binary(&d, &BinaryRelation::total(4)).unwrap().is_total());
        let bb = product(&[b2(), b2()]).unwrap();
        let first: Vec<Elem> = bb.elems().map(|x| x / 2).collect();
        let kernel = BinaryRelation::from_kernel(Congruence::kernel(&first).reps());
        let want = Congruence::kernel(&first);
        assert_eq!(leibniz_binary(&bb, &kernel).unwrap(), want);
        assert_eq!(leibniz_binary_poly(&bb, &kernel).unwrap(), want);
        assert_eq!(oracle(&bb, &Relation::Binary(kernel)), want);
    }

    #[test]
    fn binary_methods_agree_exhaustively_on_b2_and_k3() {
        for a in [b2(), builtin(Builtin::K3, &[]).unwrap()] {
            let n = a.size();
            for code in 0..1u64 << (n * n) {
                let rows = (0..n).map(|i| (code >> (i * n)) & ((1 << n) - 1)).collect();
                let r = BinaryRelation::from_rows(rows);
                let want = oracle(&a, &Relation::Binary(r.clone()));
                assert_eq!(leibniz_binary(&a, &r).unwrap(), want);
                assert_eq!(leibniz_binary_poly(&a, &r).unwrap(), want);
            }
        }
    }

    #[test]
    fn structure_reducts() {
        let s = preset_structure("BDE").unwrap();
        assert!(is_reduced(&s).unwrap());
        let t = Structure::with_unary(b2(), &[(Pred::T, Subset::full(2))], None).unwrap();
        assert!(leibniz_structure(&t).unwrap().is_total());
        let (r, _) = reduct(&t).unwrap();
        assert_eq!(r.size(), 1);
        assert!(r.is_trivial());
        let (rr, _) = reduct(&r).unwrap();
        assert_eq!(rr, r);
    }

    #[test]
    fn product_structure_collapses_second_coordinate() {
        let d = dm4_algebra();
        let dd = product(&[d.clone(), d]).unwrap();
        let tb = Subset::from_elems([dm4::T, dm4::B]);
        let t = Subset::from_elems(dd.elems().filter(|x| tb.contains(x / 4) && tb.contains(x % 4)));
        let first: Vec<Elem> = dd.elems().map(|x| x / 4).collect();
        let eq = BinaryRelation::from_kernel(Congruence::kernel(&first).reps());
        let s = Structure::with_unary(dd, &[(Pred::T, t)], Some(eq)).unwrap();
        let theta = leibniz_structure_within(&s, 16).unwrap();
        let con = CongruenceLattice::new(s.algebra(), 16).unwrap();
        let omega_eq = con.leibniz(s.relation(Pred::Eq).unwrap()).unwrap();
        assert_eq!(omega_eq, Congruence::kernel(&first));
        let omega_t = con.leibniz(s.relation(Pred::T).unwrap()).unwrap();
        assert!(omega_t.is_identity());
        assert!(theta.is_identity());
    }

    #[test]
    fn intersection_inclusion_on_filters() {
        for a in [dm4_algebra(), builtin(Builtin::K3, &[]).unwrap(), b2()] {
            let con = CongruenceLattice::new(&a, 10).unwrap();
            let filters = enumerate_filters(&a, false);
            for f in &filters {
                for g in &filters {
                    let lhs = con.leibniz(&Relation::Unary(f.set)).unwrap().meet(&con.leibniz(&Relation::Unary(g.set)).unwrap());
                    let rhs = con.leibniz(&Relation::Unary(f.set.intersection(g.set))).unwrap();
                    assert!(lhs.refines(&rhs));
                }
            }
        }
    }
}
