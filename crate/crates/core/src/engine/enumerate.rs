//! Exhaustive enumeration of small rules, one representative per
//! variable-renaming class.

use crate::syntax::{Constant, Formula, Pred, Rule, Substitution, Term, Var};
use crate::{Error, Result};
use std::collections::BTreeSet;

const VAR_POOL: [&str; 6] = ["x", "y", "z", "u", "v", "w"];

/// Default cap on the number of candidate rules a space may contain.
pub const DEFAULT_RULE_BUDGET: u64 = 50_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleSpaceBounds {
    pub max_vars: usize,
    pub max_depth: usize,
    pub max_premises: usize,
    pub min_conclusions: usize,
    pub max_conclusions: usize,
    pub preds: Vec<Pred>,
    pub constants: Vec<Constant>,
}

impl RuleSpaceBounds {
    /// Single-conclusion rules without constants.
    pub fn single(max_vars: usize, max_depth: usize, max_premises: usize, preds: &[Pred]) -> RuleSpaceBounds {
        RuleSpaceBounds {
            max_vars,
            max_depth,
            max_premises,
            min_conclusions: 1,
            max_conclusions: 1,
            preds: preds.to_vec(),
            constants: Vec::new(),
        }
    }
}

/// A precomputed rule space; iterate with [`RuleSpace::iter`] or split
/// by premise set for parallel sweeps.
#[derive(Clone, Debug)]
pub struct RuleSpace {
    bounds: RuleSpaceBounds,
    atoms: Vec<Formula>,
    vars: Vec<Var>,
}

/// All terms over `vars` and `constants` of depth at most `depth`, sorted.
pub fn terms_up_to(vars: &[Var], constants: &[Constant], depth: usize) -> Vec<Term> {
    let mut level: BTreeSet<Term> = vars.iter().cloned().map(Term::Var).chain(constants.iter().map(|&c| Term::Const(c))).collect();
    for _ in 0..depth {
        let prev: Vec<Term> = level.iter().cloned().collect();
        for a in &prev {
            level.insert(Term::neg(a.clone()));
            for b in &prev {
                level.insert(Term::meet(a.clone(), b.clone()));
                level.insert(Term::join(a.clone(), b.clone()));
            }
        }
    }
    level.into_iter().collect()
}

fn binom_sum(n: u64, k: usize) -> u64 {
    let mut total = 0u64;
    let mut c = 1u64;
    for i in 0..=k as u64 {
        if i > n {
            break;
        }
        total = total.saturating_add(c);
        c = c.saturating_mul(n - i) / (i + 1);
    }
    total
}

fn combinations(n: usize, lo: usize, hi: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for k in lo..=hi.min(n) {
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            out.push(idx.clone());
            let mut i = k;
            while i > 0 && idx[i - 1] == n - k + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            idx[i - 1] += 1;
            for j in i..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }
    out
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(k - 1) {
        for i in 0..k {
            let mut q = p.clone();
            q.insert(i, k - 1);
            out.push(q);
        }
    }
    out
}

/// Whether `r` is the representative of its renaming class: its variables
/// are an initial segment of the pool and no permutation of them gives a
/// smaller rule.
pub fn is_canonical(r: &Rule) -> bool {
    let used = r.vars();
    let k = used.len();
    if k > VAR_POOL.len() || used.iter().map(|v| v.name()).collect::<BTreeSet<_>>() != VAR_POOL[..k].iter().copied().collect() {
        return false;
    }
    permutations(k).into_iter().all(|p| {
        let s: Substitution = (0..k).map(|i| (Var::new(VAR_POOL[i]), Term::var(VAR_POOL[p[i]]))).collect();
        *r <= r.apply_subst(&s)
    })
}

/// The representative of `r`'s renaming class.
pub fn canonical_form(r: &Rule) -> Rule {
    let used: Vec<Var> = r.vars().into_iter().collect();
    let k = used.len();
    permutations(k)
        .into_iter()
        .map(|p| {
            let s: Substitution = (0..k).map(|i| (used[i].clone(), Term::var(VAR_POOL[p[i]]))).collect();
            r.apply_subst(&s)
        })
        .min()
        .unwrap_or_else(|| r.clone())
}

impl RuleSpace {
    pub fn new(bounds: &RuleSpaceBounds) -> Result<RuleSpace> {
        RuleSpace::with_budget(bounds, DEFAULT_RULE_BUDGET)
    }

    pub fn with_budget(bounds: &RuleSpaceBounds, budget: u64) -> Result<RuleSpace> {
        if bounds.max_vars > VAR_POOL.len() {
            return Err(Error::BoundExceeded {
                what: "variables in enumerated rules",
                size: bounds.max_vars,
                bound: VAR_POOL.len(),
            });
        }
        if bounds.min_conclusions > bounds.max_conclusions {
            return Err(Error::Precondition("min_conclusions exceeds max_conclusions".into()));
        }
        let vars: Vec<Var> = VAR_POOL[..bounds.max_vars].iter().map(|v| Var::new(v)).collect();
        let terms = terms_up_to(&vars, &bounds.constants, bounds.max_depth);
        let preds: BTreeSet<Pred> = bounds.preds.iter().copied().collect();
        let mut atoms = Vec::new();
        for p in preds {
            if p.arity() == 2 {
                for a in &terms {
                    for b in &terms {
                        atoms.push(Formula::eq(a.clone(), b.clone()));
                    }
                }
            } else {
                atoms.extend(terms.iter().map(|t| Formula::unary(p, t.clone())));
            }
        }
        atoms.sort();
        let space = RuleSpace {
            bounds: bounds.clone(),
            atoms,
            vars,
        };
        let size = space.candidate_count();
        if size > budget {
            return Err(Error::Budget(format!("rule space has {size} candidates, budget {budget}")));
        }
        Ok(space)
    }

    pub fn bounds(&self) -> &RuleSpaceBounds {
        &self.bounds
    }

    pub fn atoms(&self) -> &[Formula] {
        &self.atoms
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    /// Candidates before renaming deduplication.
    pub fn candidate_count(&self) -> u64 {
        let n = self.atoms.len() as u64;
        let concl = binom_sum(n, self.bounds.max_conclusions)
            - if self.bounds.min_conclusions > 0 { binom_sum(n, self.bounds.min_conclusions - 1) } else { 0 };
        binom_sum(n, self.bounds.max_premises).saturating_mul(concl)
    }

    /// Premise sets as sorted atom index lists.
    pub fn premise_sets(&self) -> Vec<Vec<usize>> {
        combinations(self.atoms.len(), 0, self.bounds.max_premises)
    }

    /// Canonical rules whose premises are the atoms at `premises`.
    pub fn rules_with_premises(&self, premises: &[usize]) -> impl Iterator<Item = Rule> + '_ {
        let premises: Vec<Formula> = premises.iter().map(|&i| self.atoms[i].clone()).collect();
        combinations(self.atoms.len(), self.bounds.min_conclusions, self.bounds.max_conclusions)
            .into_iter()
            .map(move |cs| Rule::new(premises.iter().cloned(), cs.iter().map(|&i| self.atoms[i].clone())))
            .filter(is_canonical)
    }

    /// Every canonical rule, in a fixed order.
    pub fn iter(&self) -> impl Iterator<Item = Rule> + '_ {
        self.premise_sets().into_iter().flat_map(move |ps| self.rules_with_premises(&ps).collect::<Vec<_>>())
    }
}

/// Collects a whole rule space.
pub fn enumerate_rules(b: &RuleSpaceBounds) -> Result<Vec<Rule>> {
    Ok(RuleSpace::new(b)?.iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::print_rule;

    fn printed(b: &RuleSpaceBounds) -> BTreeSet<String> {
        enumerate_rules(b).unwrap().iter().map(print_rule).collect()
    }

    #[test]
    fn one_variable_truth_rules() {
        let b = RuleSpaceBounds::single(1, 1, 1, &[Pred::T]);
        let got = printed(&b);
        assert!(got.contains("T(x) |- T(~x)"));
        assert!(got.contains("T(~x) |- T(x)"));
        // terms: x, ~x, x /\ x, x \/ x; rules: 4 conclusions * (1 + 4) premise sets
        assert_eq!(got.len(), 20);
    }

    #[test]
    fn empty_space_has_the_empty_rule() {
        let b = RuleSpaceBounds {
            max_vars: 1,
            max_depth: 0,
            max_premises: 0,
            min_conclusions: 0,
            max_conclusions: 0,
            preds: vec![Pred::T],
            constants: vec![],
        };
        let rules = enumerate_rules(&b).unwrap();
        assert_eq!(rules.len(), 1);
        assert_eq!(print_rule(&rules[0]), "|-");
    }

    #[test]
    fn enlarging_bounds_gives_supersets() {
        let small = RuleSpaceBounds::single(1, 1, 1, &[Pred::T]);
        let small_set = printed(&small);
        for bigger in [
            RuleSpaceBounds::single(2, 1, 1, &[Pred::T]),
            RuleSpaceBounds::single(1, 2, 1, &[Pred::T]),
            RuleSpaceBounds::single(1, 1, 2, &[Pred::T]),
            RuleSpaceBounds::single(1, 1, 1, &[Pred::T, Pred::E]),
            RuleSpaceBounds { max_conclusions: 2, ..small.clone() },
        ] {
            assert!(printed(&bigger).is_superset(&small_set));
        }
    }

    #[test]
    fn renaming_classes_are_hit_exactly_once() {
        let b = RuleSpaceBounds::single(2, 1, 1, &[Pred::T]);
        let rules = enumerate_rules(&b).unwrap();
        let distinct: BTreeSet<Rule> = rules.iter().cloned().collect();
        assert_eq!(distinct.len(), rules.len());
        // brute force: canonical forms of all candidates
        let space = RuleSpace::new(&b).unwrap();
        let mut classes = BTreeSet::new();
        for ps in space.premise_sets() {
            for c in 0..space.atoms().len() {
                let r = Rule::new(ps.iter().map(|&i| space.atoms()[i].clone()), [space.atoms()[c].clone()]);
                classes.insert(canonical_form(&r));
            }
        }
        assert_eq!(classes, distinct);
    }
}
