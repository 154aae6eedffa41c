//! Decision, proof search, translation, rule enumeration and model
//! classification.

mod classify;
mod derive;
mod enumerate;

pub use classify::{
    classify_models, classify_models_with, describe, is_congruence_relation, shapes_for, ClassificationReport, Shape, Violation,
    MAX_CLASSIFY_SIZE,
};
pub use derive::{
    check_derivation, check_derivation_report, derive, derive_with, saturate, CheckFailure, Derivation, DeriveOptions, DeriveOutcome,
    Justification, Node, DEFAULT_FACT_BUDGET,
};
pub use enumerate::{canonical_form, enumerate_rules, is_canonical, terms_up_to, RuleSpace, RuleSpaceBounds, DEFAULT_RULE_BUDGET};

use crate::structures::{holds_with, HoldsOptions, Structure, Verdict};
use crate::syntax::{Constant, Formula, Pred, Rule, SigSpec, Term};
use crate::{Error, Result};

/// Validity of `r` in the structure defining a logic.
pub fn decide(s: &Structure, r: &Rule) -> Result<Verdict> {
    decide_with(s, r, &HoldsOptions::default())
}

pub fn decide_with(s: &Structure, r: &Rule, opts: &HoldsOptions) -> Result<Verdict> {
    s.signature().admits(r)?;
    holds_with(s, r, opts)
}

/// Replaces every atom `E(u)` by `#t = u`.
///
/// Fails if `target` lacks `=` or `#t`.
pub fn translate_e_to_eq(r: &Rule, target: &SigSpec) -> Result<Rule> {
    if !target.has_constant(Constant::Top) {
        return Err(Error::MissingConstant("#t".into()));
    }
    if !target.has_pred(Pred::Eq) {
        return Err(Error::SignatureMismatch("target signature has no =".into()));
    }
    Ok(r.map_formulas(|f| {
        if f.pred() == Pred::E {
            Formula::eq(Term::Const(Constant::Top), f.args()[0].clone())
        } else {
            f.clone()
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structures::preset_structure;
    use crate::syntax::{parse_rule, print_rule};

    fn sig() -> SigSpec {
        SigSpec::new(Pred::ALL, Constant::ALL).unwrap()
    }

    fn verdict(preset: &str, rule: &str) -> Verdict {
        decide(&preset_structure(preset).unwrap(), &parse_rule(rule, &sig()).unwrap()).unwrap()
    }

    #[test]
    fn disjunctive_syllogism_separates_bd_from_etl() {
        let v = verdict("BD", "T(x /\\ (~x \\/ y)) |- T(y)");
        let s = preset_structure("BD").unwrap();
        assert_eq!(v.counterexample.unwrap().describe(&s), "x -> b, y -> f");
        assert!(verdict("ETL", "E(x /\\ (~x \\/ y)) |- E(y)").valid);
    }

    #[test]
    fn truth_is_definable_by_an_equation_with_both() {
        assert!(verdict("BD-EQ+#b", "T(x) |- #b /\\ x = #b").valid);
        assert!(verdict("BD-EQ+#b", "#b /\\ x = #b |- T(x)").valid);
    }

    #[test]
    fn signature_is_checked() {
        let s = preset_structure("BD").unwrap();
        let r = parse_rule("T(x), T(y) |- x = y", &sig()).unwrap();
        assert!(matches!(decide(&s, &r), Err(Error::SignatureMismatch(_))));
    }

    #[test]
    fn translation() {
        let target = preset_structure("BD-EQ+#t").unwrap().signature();
        let r = parse_rule("E(x) |- T(x)", &sig()).unwrap();
        assert_eq!(print_rule(&translate_e_to_eq(&r, &target).unwrap()), "#t = x |- T(x)");
        let plain = parse_rule("T(x), x = y |- T(y)", &sig()).unwrap();
        assert_eq!(translate_e_to_eq(&plain, &target).unwrap(), plain);
        let no_top = preset_structure("BD-EQ").unwrap().signature();
        assert!(translate_e_to_eq(&r, &no_top).is_err());
    }
}
