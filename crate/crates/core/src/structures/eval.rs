use super::{Relation, Structure};
use crate::algebra::{Elem, Subset};
use crate::syntax::{Constant, Formula, Pred, Rule, Term, Var};
use crate::systems::AxiomSystem;
use crate::{Error, Result};
use rayon::prelude::*;
use std::collections::{BTreeMap, HashMap};

/// Default ceiling on the number of distinct variables in a checked rule.
pub const DEFAULT_VAR_CEILING: usize = 8;

/// Below this many valuations the sweep stays on one thread.
const PARALLEL_THRESHOLD: u64 = 1 << 14;
const CHUNK: u64 = 1 << 12;

/// Assignment of elements to variables.
pub type Valuation = BTreeMap<Var, Elem>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HoldsOptions {
    pub max_vars: usize,
}

impl Default for HoldsOptions {
    fn default() -> Self {
        HoldsOptions {
            max_vars: DEFAULT_VAR_CEILING,
        }
    }
}

/// A valuation validating every premise and no conclusion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub valuation: Valuation,
    /// The conclusions, all of which fail under `valuation`.
    pub failed: Vec<Formula>,
}

impl Counterexample {
    /// Re-evaluates the rule under the stored valuation.
    pub fn replays(&self, s: &Structure, r: &Rule) -> bool {
        let sat = |f: &Formula| satisfied(s, f, &self.valuation).unwrap_or(false);
        r.premises().iter().all(sat) && !r.conclusions().iter().any(sat)
    }

    /// `x -> t, y -> b` using the algebra's labels.
    pub fn describe(&self, s: &Structure) -> String {
        self.valuation
            .iter()
            .map(|(v, &e)| format!("{v} -> {}", s.algebra().label(e)))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

/// Outcome of a validity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub valid: bool,
    pub counterexample: Option<Counterexample>,
}

impl Verdict {
    fn valid() -> Verdict {
        Verdict {
            valid: true,
            counterexample: None,
        }
    }
}

/// Value of a term under a valuation.
pub fn eval_term(s: &Structure, t: &Term, v: &Valuation) -> Result<Elem> {
    let a = s.algebra();
    Ok(match t {
        Term::Var(x) => *v.get(x).ok_or_else(|| Error::UnboundVariable(x.name().into()))?,
        Term::Const(c) => a
            .constant(*c)
            .ok_or_else(|| Error::MissingConstant(c.symbol().into()))?,
        Term::Neg(x) => a.neg(eval_term(s, x, v)?),
        Term::Meet(x, y) => a.meet(eval_term(s, x, v)?, eval_term(s, y, v)?),
        Term::Join(x, y) => a.join(eval_term(s, x, v)?, eval_term(s, y, v)?),
    })
}

fn satisfied(s: &Structure, f: &Formula, v: &Valuation) -> Result<bool> {
    let rel = s
        .relation(f.pred())
        .ok_or_else(|| Error::SignatureMismatch(format!("{} is not interpreted", f.pred())))?;
    Ok(match rel {
        Relation::Unary(set) => set.contains(eval_term(s, &f.args()[0], v)?),
        Relation::Binary(r) => r.contains(eval_term(s, &f.args()[0], v)?, eval_term(s, &f.args()[1], v)?),
    })
}

#[derive(Clone, Copy, Debug)]
enum Instr {
    Var(usize),
    Const(Constant),
    Neg(usize),
    Meet(usize, usize),
    Join(usize, usize),
}

/// A rule flattened into straight-line evaluation code over shared
/// subterms. Independent of any particular structure.
#[derive(Clone, Debug)]
pub struct CompiledRule {
    rule: Rule,
    vars: Vec<Var>,
    code: Vec<Instr>,
    premises: Vec<(Pred, [usize; 2])>,
    conclusions: Vec<(Pred, [usize; 2])>,
}

impl CompiledRule {
    pub fn new(rule: &Rule) -> CompiledRule {
        let vars: Vec<Var> = rule.vars().into_iter().collect();
        let mut slots: HashMap<Term, usize> = HashMap::new();
        let mut code = Vec::new();
        for (i, v) in vars.iter().enumerate() {
            slots.insert(Term::Var(v.clone()), i);
            code.push(Instr::Var(i));
        }
        fn slot(t: &Term, slots: &mut HashMap<Term, usize>, code: &mut Vec<Instr>) -> usize {
            if let Some(&i) = slots.get(t) {
                return i;
            }
            let ins = match t {
                Term::Var(_) => unreachable!("variables are preassigned"),
                Term::Const(c) => Instr::Const(*c),
                Term::Neg(a) => Instr::Neg(slot(a, slots, code)),
                Term::Meet(a, b) => Instr::Meet(slot(a, slots, code), slot(b, slots, code)),
                Term::Join(a, b) => Instr::Join(slot(a, slots, code), slot(b, slots, code)),
            };
            code.push(ins);
            slots.insert(t.clone(), code.len() - 1);
            code.len() - 1
        }
        let mut atom = |f: &Formula| {
            let a0 = slot(&f.args()[0], &mut slots, &mut code);
            let a1 = f.args().get(1).map_or(a0, |t| slot(t, &mut slots, &mut code));
            (f.pred(), [a0, a1])
        };
        let premises = rule.premises().iter().map(&mut atom).collect();
        let conclusions = rule.conclusions().iter().map(&mut atom).collect();
        CompiledRule {
            rule: rule.clone(),
            vars,
            code,
            premises,
            conclusions,
        }
    }

    pub fn rule(&self) -> &Rule {
        &self.rule
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    fn check_signature(&self, s: &Structure) -> Result<()> {
        for p in self.rule.preds() {
            if s.relation(p).is_none() {
                return Err(Error::SignatureMismatch(format!(
                    "rule uses {p}, structure interprets {}",
                    s.signature()
                )));
            }
        }
        for c in self.rule.constants() {
            if s.algebra().constant(c).is_none() {
                return Err(Error::SignatureMismatch(format!(
                    "rule uses {c}, structure interprets {}",
                    s.signature()
                )));
            }
        }
        Ok(())
    }

    /// Decides validity, reporting the least counter-valuation in the
    /// order where the first variable varies fastest.
    pub fn holds(&self, s: &Structure, opts: &HoldsOptions) -> Result<Verdict> {
        self.check_signature(s)?;
        let k = self.vars.len();
        if k > opts.max_vars {
            return Err(Error::BoundExceeded {
                what: "variables in a rule",
                size: k,
                bound: opts.max_vars,
            });
        }
        let n = s.size() as u64;
        let total = n.pow(k as u32);
        let ev = Evaluator::new(self, s);
        let found = if total <= PARALLEL_THRESHOLD {
            ev.first_failure(0, total)
        } else {
            let chunks = total.div_ceil(CHUNK);
            (0..chunks)
                .into_par_iter()
                .find_map_first(|c| ev.first_failure(c * CHUNK, ((c + 1) * CHUNK).min(total)))
        };
        Ok(match found {
            None => Verdict::valid(),
            Some(vals) => Verdict {
                valid: false,
                counterexample: Some(Counterexample {
                    valuation: self.vars.iter().cloned().zip(vals).collect(),
                    failed: self.rule.conclusions().iter().cloned().collect(),
                }),
            },
        })
    }
}

enum Atom<'a> {
    Unary(Subset, usize),
    Binary(&'a super::BinaryRelation, usize, usize),
}

struct Evaluator<'a> {
    s: &'a Structure,
    k: usize,
    code: Vec<Instr>,
    consts: Vec<Elem>,
    premises: Vec<Atom<'a>>,
    conclusions: Vec<Atom<'a>>,
}

impl<'a> Evaluator<'a> {
    fn new(c: &CompiledRule, s: &'a Structure) -> Evaluator<'a> {
        let atom = |(p, [x, y]): &(Pred, [usize; 2])| match s.relation(*p).expect("signature checked") {
            Relation::Unary(set) => Atom::Unary(*set, *x),
            Relation::Binary(r) => Atom::Binary(r, *x, *y),
        };
        let consts = c
            .code
            .iter()
            .map(|i| match i {
                Instr::Const(k) => s.algebra().constant(*k).expect("signature checked"),
                _ => 0,
            })
            .collect();
        Evaluator {
            s,
            k: c.vars.len(),
            code: c.code.clone(),
            consts,
            premises: c.premises.iter().map(atom).collect(),
            conclusions: c.conclusions.iter().map(atom).collect(),
        }
    }

    fn first_failure(&self, from: u64, to: u64) -> Option<Vec<Elem>> {
        let a = self.s.algebra();
        let n = a.size();
        let mut digits = vec![0usize; self.k];
        let mut c = from;
        for d in digits.iter_mut() {
            *d = (c % n as u64) as usize;
            c /= n as u64;
        }
        let mut vals = vec![0usize; self.code.len()];
        let sat = |atom: &Atom, vals: &[usize]| match atom {
            Atom::Unary(set, x) => set.contains(vals[*x]),
            Atom::Binary(r, x, y) => r.contains(vals[*x], vals[*y]),
        };
        for _ in from..to {
            for (i, ins) in self.code.iter().enumerate() {
                vals[i] = match *ins {
                    Instr::Var(j) => digits[j],
                    Instr::Const(_) => self.consts[i],
                    Instr::Neg(x) => a.neg(vals[x]),
                    Instr::Meet(x, y) => a.meet(vals[x], vals[y]),
                    Instr::Join(x, y) => a.join(vals[x], vals[y]),
                };
            }
            if self.premises.iter().all(|p| sat(p, &vals)) && !self.conclusions.iter().any(|p| sat(p, &vals)) {
                return Some(digits);
            }
            for d in digits.iter_mut() {
                *d += 1;
                if *d < n {
                    break;
                }
                *d = 0;
            }
        }
        None
    }
}

/// Decides whether `r` holds in `s` under the default variable ceiling.
pub fn holds(s: &Structure, r: &Rule) -> Result<Verdict> {
    holds_with(s, r, &HoldsOptions::default())
}

pub fn holds_with(s: &Structure, r: &Rule, opts: &HoldsOptions) -> Result<Verdict> {
    CompiledRule::new(r).holds(s, opts)
}

/// Result of checking a structure against a rule set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModelReport {
    pub is_model: bool,
    /// Index and text of the first failing rule, with its witness.
    pub failure: Option<(usize, Rule, Counterexample)>,
}

/// First rule of `rules` that fails in `s`, if any.
pub fn is_model_of_rules(s: &Structure, rules: &[Rule]) -> Result<ModelReport> {
    for (i, r) in rules.iter().enumerate() {
        let v = holds(s, r)?;
        if let Some(cx) = v.counterexample {
            return Ok(ModelReport {
                is_model: false,
                failure: Some((i, r.clone(), cx)),
            });
        }
    }
    Ok(ModelReport {
        is_model: true,
        failure: None,
    })
}

/// Whether `s` validates every axiom of `sys`.
pub fn is_model(s: &Structure, sys: &AxiomSystem) -> Result<ModelReport> {
    is_model_of_rules(s, &sys.rules())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{dm4, dm4_algebra, subalgebra};
    use crate::structures::BinaryRelation;
    use crate::syntax::{parse_rule, parse_term, SigSpec};

    fn full() -> SigSpec {
        SigSpec::new(Pred::ALL, Constant::ALL).unwrap()
    }

    fn bde() -> Structure {
        Structure::with_unary(
            dm4_algebra(),
            &[(Pred::T, Subset::from_elems([dm4::T, dm4::B])), (Pred::E, Subset::singleton(dm4::T))],
            None,
        )
        .unwrap()
    }

    #[test]
    fn eval_examples() {
        let s = bde();
        let v: Valuation = [(Var::new("x"), dm4::T), (Var::new("y"), dm4::B)].into_iter().collect();
        let t = parse_term("~x \\/ y", &full()).unwrap();
        assert_eq!(eval_term(&s, &t, &v).unwrap(), dm4::B);
        assert!(matches!(
            eval_term(&s, &parse_term("z", &full()).unwrap(), &v),
            Err(Error::UnboundVariable(_))
        ));
        let consts = Structure::with_unary(
            crate::algebra::builtin(crate::algebra::Builtin::DM4, &Constant::ALL).unwrap(),
            &[(Pred::T, Subset::EMPTY)],
            None,
        )
        .unwrap();
        let t = parse_term("#n /\\ #b", &full()).unwrap();
        assert_eq!(eval_term(&consts, &t, &Valuation::new()).unwrap(), dm4::F);
        assert!(matches!(eval_term(&s, &t, &v), Err(Error::MissingConstant(_))));
    }

    #[test]
    fn interaction_rule_valid() {
        let r = parse_rule("E(x), T(~x \\/ y) |- T(y)", &full()).unwrap();
        assert!(holds(&bde(), &r).unwrap().valid);
    }

    #[test]
    fn three_element_counterexample() {
        let (sub, _) = subalgebra(&dm4_algebra(), Subset::from_elems([dm4::B, dm4::T])).unwrap();
        // elements f, b, t
        let s = Structure::with_unary(sub, &[(Pred::T, Subset::from_elems([1, 2]))], Some(BinaryRelation::identity(3))).unwrap();
        let r = parse_rule("T(x), T(y) |- x = y", &full()).unwrap();
        let v = holds(&s, &r).unwrap();
        assert!(!v.valid);
        let cx = v.counterexample.unwrap();
        assert_eq!(cx.describe(&s), "x -> t, y -> b");
        assert!(cx.replays(&s, &r));
    }

    #[test]
    fn multiple_conclusion_nf() {
        let s = Structure::with_unary(dm4_algebra(), &[(Pred::NF, Subset::from_elems([dm4::T, dm4::N]))], None).unwrap();
        let r = parse_rule("NF(x \\/ y) |- NF(x) | NF(y)", &full()).unwrap();
        assert!(holds(&s, &r).unwrap().valid);
    }

    #[test]
    fn signature_and_ceiling() {
        let r = parse_rule("T(x), T(y) |- x = y", &full()).unwrap();
        assert!(matches!(holds(&bde(), &r), Err(Error::SignatureMismatch(_))));
        let wide = parse_rule("T(a /\\ b /\\ c) |- T(d \\/ e)", &full()).unwrap();
        let opts = HoldsOptions { max_vars: 4 };
        assert!(matches!(holds_with(&bde(), &wide, &opts), Err(Error::BoundExceeded { .. })));
    }

    #[test]
    fn parallel_sweep_finds_least_counterexample() {
        // 4^8 valuations crosses the parallel threshold
        let r = parse_rule("T(a), T(b), T(c), T(d), T(e), T(f), T(g) |- T(h)", &full()).unwrap();
        let v = holds(&bde(), &r).unwrap();
        let cx = v.counterexample.unwrap();
        let vals: Vec<Elem> = cx.valuation.values().copied().collect();
        assert_eq!(vals, vec![dm4::B, dm4::B, dm4::B, dm4::B, dm4::B, dm4::B, dm4::B, dm4::F]);
    }
}
