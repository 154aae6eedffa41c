//! Suites about algebras and Leibniz congruences.

use super::{timed, Check, VerifyConfig};
use crate::algebra::{builtin, enumerate_dm_lattices, enumerate_filters, subdirect_embedding, Builtin, Congruence, FiniteAlgebra, Subset};
use crate::leibniz::{leibniz_unary, leibniz_unary_poly, reduct_in, CongruenceLattice};
use crate::structures::{find_embedding, preset_structure, BinaryRelation, CompiledRule, HoldsOptions, Relation, Structure};
use crate::syntax::Pred;
use crate::systems::{base_system_names, system};
use crate::Result;
use rayon::prelude::*;
use std::collections::BTreeMap;

const DEFAULT_FACT_SIZE: usize = 5;
const DEFAULT_SUBDIRECT_SIZE: usize = 6;

fn census(max: usize) -> Result<Vec<FiniteAlgebra>> {
    let mut out = Vec::new();
    for n in 1..=max {
        out.extend(enumerate_dm_lattices(n, false)?);
    }
    Ok(out)
}

fn filters(a: &FiniteAlgebra) -> Vec<Subset> {
    enumerate_filters(a, false).into_iter().map(|f| f.set).collect()
}

fn crosscheck(algebras: &[FiniteAlgebra]) -> Result<(bool, String)> {
    let pairs: Vec<(usize, Subset)> = algebras.iter().enumerate().flat_map(|(i, a)| filters(a).into_iter().map(move |f| (i, f))).collect();
    let disagreements: Vec<String> = pairs
        .par_iter()
        .map(|&(i, f)| {
            let a = &algebras[i];
            let search = leibniz_unary(a, f)?;
            let poly = leibniz_unary_poly(a, f)?;
            Ok((search != poly).then(|| format!("algebra #{i}, filter {:#b}", f.0)))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    let detail = format!("{} algebras, {} filters, {} disagreements", algebras.len(), pairs.len(), disagreements.len());
    Ok((disagreements.is_empty(), detail))
}

pub(super) fn leibniz_crosscheck(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let max = cfg.max_size.unwrap_or(DEFAULT_FACT_SIZE);
    let mut checks = vec![timed("builtins", || {
        let algs = [Builtin::B2, Builtin::K3, Builtin::DM4].map(|b| builtin(b, &[]).expect("builtin"));
        crosscheck(&algs)
    })];
    for n in 1..=max {
        checks.push(timed(format!("De Morgan lattices of size {n}"), || crosscheck(&enumerate_dm_lattices(n, false)?)));
    }
    Ok(checks)
}

/// Leibniz congruence of a filter by the closed-form description valid in
/// De Morgan lattices.
fn omega_by_description(a: &FiniteAlgebra, t: Subset) -> Congruence {
    let n = a.size();
    let profile = |x: usize| -> Vec<(bool, bool)> {
        a.elems().map(|c| (t.contains(a.join(x, c)), t.contains(a.join(a.neg(x), c)))).collect()
    };
    let profiles: Vec<_> = (0..n).map(profile).collect();
    Congruence::from_pairs(n, (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).filter(|&(x, y)| profiles[x] == profiles[y]))
}

fn intersection_fact(algebras: &[FiniteAlgebra]) -> Result<(bool, String)> {
    let mut pairs = 0usize;
    let mut bad = 0usize;
    for a in algebras {
        let con = CongruenceLattice::new(a, a.size())?;
        let fs = filters(a);
        let omegas = fs.iter().map(|&f| con.leibniz(&Relation::Unary(f))).collect::<Result<Vec<_>>>()?;
        for i in 0..fs.len() {
            for j in i..fs.len() {
                pairs += 1;
                let meet = con.leibniz(&Relation::Unary(fs[i].intersection(fs[j])))?;
                if !omegas[i].meet(&omegas[j]).refines(&meet) {
                    bad += 1;
                }
            }
        }
    }
    Ok((bad == 0, format!("{pairs} filter pairs, {bad} violations")))
}

/// Models of each single-predicate base system are closed under
/// intersection.
fn model_intersection(algebras: &[FiniteAlgebra]) -> Result<(bool, String)> {
    let mut checked = 0usize;
    let mut bad = Vec::new();
    for name in ["BD-base", "ETL-base", "K-base", "LP-base"] {
        let sys = system(name)?;
        let pred = *sys.signature.preds().iter().next().expect("one predicate");
        let rules: Vec<CompiledRule> = sys.rules().iter().map(CompiledRule::new).collect();
        for a in algebras {
            let n = a.size();
            let models: Vec<Subset> = (0..1u64 << n)
                .map(Subset)
                .filter_map(|s| {
                    let st = Structure::with_unary(a.clone(), &[(pred, s)], None).ok()?;
                    rules.iter().all(|r| r.holds(&st, &HoldsOptions::default()).is_ok_and(|v| v.valid)).then_some(s)
                })
                .collect();
            for (i, &s) in models.iter().enumerate() {
                for &u in &models[i..] {
                    checked += 1;
                    if !models.contains(&s.intersection(u)) {
                        bad.push(format!("{name}: {:#b} and {:#b}", s.0, u.0));
                    }
                }
            }
        }
    }
    Ok((bad.is_empty(), format!("{checked} model pairs, {} not closed {}", bad.len(), bad.first().cloned().unwrap_or_default())))
}

fn subsets_product(n: usize, k: usize) -> Vec<Vec<Subset>> {
    let mut out = vec![Vec::new()];
    for _ in 0..k {
        out = out.into_iter().flat_map(|v| (0..1u64 << n).map(move |s| [v.clone(), vec![Subset(s)]].concat())).collect();
    }
    out
}

/// A structure is a model of a system exactly when its reduct is, and
/// reducts are reduced.
fn reduct_invariance(algebras: &[FiniteAlgebra]) -> Result<(bool, String)> {
    let mut structures = 0usize;
    let mut bad: Vec<String> = Vec::new();
    for name in base_system_names() {
        let sys = system(name)?;
        let rules: Vec<CompiledRule> = sys.rules().iter().map(CompiledRule::new).collect();
        let unary: Vec<Pred> = sys.signature.preds().iter().copied().filter(|p| p.arity() == 1).collect();
        let has_eq = sys.signature.has_pred(Pred::Eq);
        for a in algebras {
            let con = CongruenceLattice::new(a, a.size())?;
            let eqs: Vec<Option<BinaryRelation>> = if has_eq {
                con.congruences().iter().map(|c| Some(BinaryRelation::from_kernel(c.reps()))).collect()
            } else {
                vec![None]
            };
            let cases: Vec<(Vec<Subset>, Option<BinaryRelation>)> = subsets_product(a.size(), unary.len())
                .into_iter()
                .flat_map(|us| eqs.iter().map(move |e| (us.clone(), e.clone())))
                .collect();
            structures += cases.len();
            let failures: Vec<String> = cases
                .par_iter()
                .map(|(us, eq)| {
                    let rels: Vec<(Pred, Subset)> = unary.iter().copied().zip(us.iter().copied()).collect();
                    let s = Structure::with_unary(a.clone(), &rels, eq.clone())?;
                    let (r, _) = reduct_in(&con, &s)?;
                    let opts = HoldsOptions::default();
                    let model = |st: &Structure| -> Result<bool> {
                        for c in &rules {
                            if !c.holds(st, &opts)?.valid {
                                return Ok(false);
                            }
                        }
                        Ok(true)
                    };
                    let reduced = crate::leibniz::is_reduced(&r)?;
                    Ok((model(&s)? != model(&r)? || !reduced).then(|| format!("{name} on {}", crate::engine::describe(&s))))
                })
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .flatten()
                .collect();
            bad.extend(failures);
        }
    }
    Ok((bad.is_empty(), format!("{structures} structures, {} violations {}", bad.len(), bad.first().cloned().unwrap_or_default())))
}

fn bd_description(algebras: &[FiniteAlgebra]) -> Result<(bool, String)> {
    let mut count = 0usize;
    let mut bad = 0usize;
    for a in algebras {
        for f in filters(a) {
            count += 1;
            if leibniz_unary(a, f)? != omega_by_description(a, f) {
                bad += 1;
            }
        }
    }
    Ok((bad == 0, format!("{count} filters, {bad} mismatches")))
}

fn prime_filter_reducts(algebras: &[FiniteAlgebra], with_nf: bool) -> Result<(bool, String)> {
    let target = preset_structure(if with_nf { "BDNF" } else { "BD" })?;
    let mut count = 0usize;
    let mut bad = Vec::new();
    for (i, a) in algebras.iter().enumerate() {
        let con = CongruenceLattice::new(a, a.size())?;
        for f in enumerate_filters(a, true) {
            count += 1;
            let t = f.set;
            let mut rels = BTreeMap::new();
            rels.insert(Pred::T, Relation::Unary(t));
            if with_nf {
                let nf = t.image(a.neg_table()).complement(a.size());
                if con.leibniz(&Relation::Unary(t))? != con.leibniz(&Relation::Unary(nf))? {
                    bad.push(format!("algebra #{i}, T={:#b}: congruences of T and NF differ", t.0));
                    continue;
                }
                rels.insert(Pred::NF, Relation::Unary(nf));
            }
            let (r, _) = reduct_in(&con, &Structure::new(a.clone(), rels)?)?;
            if find_embedding(&r, &target).is_none() {
                bad.push(format!("algebra #{i}, T={:#b}: reduct does not embed", t.0));
            }
        }
    }
    Ok((bad.is_empty(), format!("{count} prime filters, {} failures {}", bad.len(), bad.first().cloned().unwrap_or_default())))
}

pub(super) fn facts(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let max = cfg.max_size.unwrap_or(DEFAULT_FACT_SIZE);
    let algebras = census(max)?;
    Ok(vec![
        timed("intersection of Leibniz congruences is below that of the intersection", || intersection_fact(&algebras)),
        timed("models of single-predicate logics are closed under intersection", || model_intersection(&algebras)),
        timed("model iff reduct is a model; reducts are reduced", || reduct_invariance(&algebras)),
        timed("Leibniz congruence of a filter by the join condition", || bd_description(&algebras)),
        timed("reducts of prime filters embed into the four-element truth structure", || prime_filter_reducts(&algebras, false)),
        timed("prime filters with their non-falsity companion", || prime_filter_reducts(&algebras, true)),
    ])
}

pub(super) fn subdirect(cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let max = cfg.max_size.unwrap_or(DEFAULT_SUBDIRECT_SIZE);
    (1..=max)
        .map(|n| {
            Ok(timed(format!("De Morgan lattices of size {n}"), || {
                let algs = enumerate_dm_lattices(n, false)?;
                let mut bad = 0usize;
                let mut widths = Vec::new();
                for a in &algs {
                    let e = subdirect_embedding(a)?;
                    let types = e.coordinate_types();
                    if !e.is_injective(n) || types.iter().any(Option::is_none) {
                        bad += 1;
                    }
                    widths.push(e.coordinates.len());
                }
                let widest = widths.iter().max().copied().unwrap_or(0);
                Ok((bad == 0, format!("{} algebras, at most {widest} coordinates, {bad} failures", algs.len())))
            }))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn description_matches_on_dm4() {
        let a = builtin(Builtin::DM4, &[]).unwrap();
        for f in filters(&a) {
            assert_eq!(leibniz_unary(&a, f).unwrap(), omega_by_description(&a, f));
        }
    }

    #[test]
    fn small_facts_hold() {
        let algs = census(3).unwrap();
        assert!(prime_filter_reducts(&algs, true).unwrap().0);
        assert!(reduct_invariance(&algs).unwrap().0);
    }
}
