//! Rules whose literal reading is too weak or unsound, and the repaired
//! forms the catalogue ships instead.

use belnap::algebra::{dm4_algebra, Subset};
use belnap::engine::decide;
use belnap::leibniz::is_reduced;
use belnap::structures::{holds, preset_structure, BinaryRelation, Structure};
use belnap::syntax::{parse_rule, Constant, Pred, SigSpec};
use belnap::systems::{system, Role};

fn sig() -> SigSpec {
    SigSpec::new(Pred::ALL, Constant::ALL).unwrap()
}

const LITERAL_FIFTH: &str = "T(x), NF(y), x /\\ u <= ~y \\/ v, x /\\ ~u <= ~y \\/ v |- u <= v";

#[test]
fn literal_bdnf_eq_fifth_rule_is_unsound() {
    let s = preset_structure("BDNF-EQ").unwrap();
    let r = parse_rule(LITERAL_FIFTH, &sig()).unwrap();
    let v = decide(&s, &r).unwrap();
    assert!(!v.valid);
    let cx = v.counterexample.unwrap();
    assert!(cx.replays(&s, &r));
    assert_eq!(cx.describe(&s), "u -> n, v -> f, x -> b, y -> n");
}

#[test]
fn shipped_bdnf_eq_rules_are_sound() {
    let sys = system("BDNF-EQ").unwrap();
    let s = preset_structure(&sys.preset).unwrap();
    let literal = parse_rule(LITERAL_FIFTH, &sig()).unwrap();
    assert!(sys.rules().iter().all(|r| *r != literal));
    for r in sys.rules() {
        assert!(holds(&s, &r).unwrap().valid, "{r}");
    }
}

#[test]
fn literal_bd_eq_rules_admit_a_non_filter_model() {
    let a = dm4_algebra();
    let b = a.elem("b").unwrap();
    let s = Structure::with_unary(a.clone(), &[(Pred::T, Subset::singleton(b))], Some(BinaryRelation::identity(a.size()))).unwrap();
    let sys = system("BD-EQ").unwrap();

    for ax in sys.with_role(Role::Core).chain(sys.with_role(Role::Interaction)) {
        assert!(holds(&s, &ax.rule).unwrap().valid, "{} fails", ax.name);
    }
    assert!(is_reduced(&s).unwrap());

    let upward = parse_rule("T(x) |- T(x \\/ y)", &sig()).unwrap();
    assert!(!holds(&s, &upward).unwrap().valid);
    assert!(sys.with_role(Role::Base).any(|ax| !holds(&s, &ax.rule).unwrap().valid));
}
