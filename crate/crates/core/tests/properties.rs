use belnap::algebra::{builtin, Builtin, Subset};
use belnap::structures::{holds, preset_names, preset_structure, substructure, BinaryRelation, Structure};
use belnap::syntax::{parse_rule, print_rule, Constant, Formula, Pred, Rule, SigSpec, Substitution, Term};
use proptest::prelude::*;

fn term(consts: Vec<Constant>) -> BoxedStrategy<Term> {
    let mut leaves: Vec<BoxedStrategy<Term>> = vec![prop::sample::select(vec!["x", "y", "z"]).prop_map(Term::var).boxed()];
    if !consts.is_empty() {
        leaves.push(prop::sample::select(consts).prop_map(Term::constant).boxed());
    }
    prop::strategy::Union::new(leaves).prop_recursive(3, 12, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Term::neg),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::meet(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Term::join(a, b)),
        ]
    })
    .boxed()
}

fn formula(preds: Vec<Pred>, consts: Vec<Constant>) -> BoxedStrategy<Formula> {
    (prop::sample::select(preds), term(consts.clone()), term(consts)).prop_map(|(p, a, b)| {
        if p == Pred::Eq {
            Formula::eq(a, b)
        } else {
            Formula::unary(p, a)
        }
    })
    .boxed()
}

fn rule(preds: Vec<Pred>, consts: Vec<Constant>, conclusions: std::ops::Range<usize>) -> impl Strategy<Value = Rule> {
    let f = formula(preds, consts);
    (prop::collection::vec(f.clone(), 0..3), prop::collection::vec(f, conclusions)).prop_map(|(ps, cs)| Rule::new(ps, cs))
}

fn any_rule() -> impl Strategy<Value = Rule> {
    rule(Pred::ALL.to_vec(), Constant::ALL.to_vec(), 0..3)
}

/// DM4 with every constant and arbitrary interpretations of all four relations.
fn dm4_structure() -> impl Strategy<Value = Structure> {
    (0u64..16, 0u64..16, 0u64..16, prop::collection::vec(0u64..16, 4)).prop_map(|(t, e, nf, rows)| {
        let a = builtin(Builtin::DM4, &Constant::ALL).unwrap();
        let rels = [(Pred::T, Subset(t)), (Pred::E, Subset(e)), (Pred::NF, Subset(nf))];
        Structure::with_unary(a, &rels, Some(BinaryRelation::from_rows(rows))).unwrap()
    })
}

fn full_sig() -> SigSpec {
    SigSpec::new(Pred::ALL, Constant::ALL).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 256, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn parse_inverts_print(r in any_rule()) {
        let text = print_rule(&r);
        prop_assert_eq!(parse_rule(&text, &full_sig()).unwrap(), r);
    }

    #[test]
    fn weakening_preserves_validity(s in dm4_structure(), r in any_rule(), extra in formula(Pred::ALL.to_vec(), Constant::ALL.to_vec())) {
        prop_assume!(holds(&s, &r).unwrap().valid);
        let more_premises = Rule::new(r.premises().iter().cloned().chain([extra.clone()]), r.conclusions().iter().cloned());
        let more_conclusions = Rule::new(r.premises().iter().cloned(), r.conclusions().iter().cloned().chain([extra]));
        prop_assert!(holds(&s, &more_premises).unwrap().valid);
        prop_assert!(holds(&s, &more_conclusions).unwrap().valid);
    }

    #[test]
    fn renaming_variables_preserves_verdicts(s in dm4_structure(), r in any_rule()) {
        let renamed = r.apply_subst(&Substitution::renaming([("x", "v"), ("y", "w"), ("z", "u")]));
        prop_assert_eq!(holds(&s, &r).unwrap().valid, holds(&s, &renamed).unwrap().valid);
    }

    #[test]
    fn single_conclusion_rules_survive_intersection(s1 in dm4_structure(), s2 in dm4_structure(), r in rule(Pred::ALL.to_vec(), Constant::ALL.to_vec(), 1..2)) {
        prop_assume!(holds(&s1, &r).unwrap().valid && holds(&s2, &r).unwrap().valid);
        prop_assert!(holds(&s1.intersection(&s2).unwrap(), &r).unwrap().valid);
    }

    #[test]
    fn substructures_of_presets_keep_valid_rules(
        (name, r) in prop::sample::select(preset_names()).prop_flat_map(|name| {
            let sig = preset_structure(&name).unwrap().signature();
            let preds: Vec<Pred> = sig.preds().iter().copied().collect();
            let consts: Vec<Constant> = sig.constants().iter().copied().collect();
            (Just(name), rule(preds, consts, 0..3))
        }),
        gens in 1u64..16,
    ) {
        let s = preset_structure(&name).unwrap();
        prop_assume!(holds(&s, &r).unwrap().valid);
        let (sub, _) = substructure(&s, Subset(gens % ((1 << s.size()) - 1) + 1)).unwrap();
        prop_assert!(holds(&sub, &r).unwrap().valid, "{} in a substructure of {}", r, name);
    }
}
