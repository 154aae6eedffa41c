//! Individually stated rules together with the verdict expected of them.

use super::{timed, Check, VerifyConfig};
use crate::algebra::{builtin, Builtin, Subset};
use crate::engine::{decide, RuleSpace, RuleSpaceBounds};
use crate::structures::{preset_structure, substructure, BinaryRelation, Structure};
use crate::syntax::{parse_rule, Constant, Pred, SigSpec};
use crate::{Error, Result};
use rayon::prelude::*;

/// Where a ledger rule is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    Preset(&'static str),
    /// The substructure of a preset on the listed elements.
    Sub(&'static str, &'static [&'static str]),
    /// Two-element Boolean algebra with `T = {t}` and `=` the identity.
    BooleanEq,
}

impl Target {
    pub fn structure(self) -> Result<Structure> {
        match self {
            Target::Preset(p) => preset_structure(p),
            Target::Sub(p, labels) => {
                let s = preset_structure(p)?;
                let elems = labels
                    .iter()
                    .map(|l| s.algebra().elem(l).ok_or_else(|| Error::Precondition(format!("no element {l} in {p}"))))
                    .collect::<Result<Vec<_>>>()?;
                Ok(substructure(&s, Subset::from_elems(elems))?.0)
            }
            Target::BooleanEq => {
                let a = builtin(Builtin::B2, &[])?;
                let t = a.top();
                Structure::with_unary(a, &[(Pred::T, Subset::singleton(t))], Some(BinaryRelation::identity(2)))
            }
        }
    }

    pub fn describe(self) -> String {
        match self {
            Target::Preset(p) => p.to_string(),
            Target::Sub(p, labels) => format!("{p} on {{{}}}", labels.join(",")),
            Target::BooleanEq => "B2 with T={t} and identity".into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LedgerEntry {
    pub topic: &'static str,
    pub target: Target,
    pub rule: &'static str,
    pub valid: bool,
    /// Expected first counter-valuation, when invalid.
    pub witness: Option<&'static str>,
}

const fn ok(topic: &'static str, target: Target, rule: &'static str) -> LedgerEntry {
    LedgerEntry { topic, target, rule, valid: true, witness: None }
}

const fn bad(topic: &'static str, target: Target, rule: &'static str, witness: Option<&'static str>) -> LedgerEntry {
    LedgerEntry { topic, target, rule, valid: false, witness }
}

use Target::{BooleanEq, Preset as P, Sub};

const LEDGER: &[LedgerEntry] = &[
    ok("overview", P("BDE"), "E(x), T(~x \\/ y) |- T(y)"),
    ok("overview", P("BDNF"), "T(x), NF(~x \\/ y) |- NF(y)"),
    ok("overview", P("BD-EQ"), "T(x), T(y) |- ~x \\/ y = y"),
    ok("overview", P("BD-EQ+#b"), "T(x) |- #b /\\ x = #b"),
    ok("overview", P("BD-EQ+#b"), "#b /\\ x = #b |- T(x)"),
    ok("three-element", BooleanEq, "T(x), T(y) |- x = y"),
    bad("three-element", Sub("BD-EQ", &["f", "b", "t"]), "T(x), T(y) |- x = y", Some("x -> t, y -> b")),
    ok("extensions", P("K"), "T(x /\\ ~x \\/ y) |- T(y)"),
    bad("extensions", P("BD"), "T(x /\\ ~x \\/ y) |- T(y)", None),
    ok("extensions", P("LP"), "|- T(x \\/ ~x)"),
    bad("extensions", P("BD"), "|- T(x \\/ ~x)", None),
    ok("extensions", P("ETL"), "E(x /\\ (~x \\/ y)) |- E(y)"),
    bad("extensions", P("BD"), "T(x /\\ (~x \\/ y)) |- T(y)", Some("x -> b, y -> f")),
    // truth and exact truth
    ok("bde", P("BDE"), "E(x) |- T(x)"),
    ok("bde", P("BDE"), "E(x), T(~x \\/ y) |- T(y)"),
    ok("bde", P("BDE"), "T(x), T(y), E(~x \\/ y) |- E(y)"),
    ok("bde", P("BDE"), "E(x /\\ (~x \\/ y)) |- E(y)"),
    ok("bde", P("BDE+#t#n#b"), "|- E(#t)"),
    ok("bde", P("BDE+#t#n#b"), "T(#n \\/ x) |- T(x)"),
    ok("bde", P("BDE+#t#n#b"), "T(x) |- E(#n \\/ x)"),
    ok("bde", P("BDE+#t#n#b"), "|- T(#b /\\ ~#b)"),
    ok("bde", P("BDE+#t#n#b"), "T(~#n \\/ x) |- T(x)"),
    ok("bde", P("BDE+#t#n#b"), "T(x) |- E(~#n \\/ x)"),
    // truth and non-falsity
    ok("bdnf", P("BDNF"), "T(x), NF(~x \\/ y) |- NF(y)"),
    ok("bdnf", P("BDNF"), "NF(x), T(~x \\/ y) |- T(y)"),
    ok("bdnf", P("BDNF+#t#n#b"), "|- T(#t)"),
    ok("bdnf", P("BDNF+#t#n#b"), "|- T(#b)"),
    ok("bdnf", P("BDNF+#t#n#b"), "|- NF(#n)"),
    ok("bdnf", P("BDNF+#t#n#b"), "|- NF(#t)"),
    ok("bdnf", P("BDNF+#t#n#b"), "|- T(~#b)"),
    ok("bdnf", P("BDNF+#t#n#b"), "|- NF(~#n)"),
    // Kleene truth and exact truth
    ok("ke", P("KE"), "|- T(x \\/ ~x)"),
    ok("ke", P("KE"), "E(x), T(~x \\/ y) |- T(y)"),
    ok("ke", P("KE"), "E(x) |- T(x)"),
    ok("ke", P("KE"), "T(x), E(~x \\/ y) |- E(y)"),
    ok("ke", P("KE+#t#b"), "|- E(#t)"),
    ok("ke", P("KE+#t#b"), "|- T(#b)"),
    ok("ke", P("KE+#t#b"), "|- T(~#b)"),
    ok("definability", P("TNE"), "T(x), NF(x) |- E(x)"),
    ok("definability", P("TNE"), "E(x) |- T(x)"),
    ok("definability", P("TNE"), "E(x) |- NF(x)"),
    // equality
    ok("equality", P("DM4-EQ"), "|- x = x"),
    ok("equality", P("DM4-EQ"), "x = y |- y = x"),
    ok("equality", P("DM4-EQ"), "x = y, y = z |- x = z"),
    ok("equality", P("DM4-EQ"), "x = y |- ~x = ~y"),
    ok("equality", P("DM4-EQ"), "x = u, y = v |- x /\\ y = u /\\ v"),
    ok("equality", P("DM4-EQ"), "x = u, y = v |- x \\/ y = u \\/ v"),
    ok("equality", P("DM4-EQ"), "|- ~~x = x"),
    ok("equality", P("BD-EQ"), "T(x), x = y |- T(y)"),
    ok("bd-eq", P("BD-EQ"), "T(x), T(y) |- T(x /\\ y)"),
    ok("bd-eq", P("BD-EQ"), "T(x), T(y) |- ~x \\/ y = y"),
    ok("bd-eq", P("BD-EQ"), "T(z), x /\\ z = y /\\ z, ~y /\\ z = ~x /\\ z |- x = y"),
    ok("bd-eq", P("BD-EQ+#t#n#b"), "|- #t = #t \\/ x"),
    ok("bd-eq", P("BD-EQ+#t#n#b"), "|- #n = ~#n"),
    ok("bd-eq", P("BD-EQ+#t#n#b"), "|- #b \\/ #n = #t"),
    ok("bd-eq", P("BD-EQ+#t#n#b"), "|- T(#t)"),
    ok("bd-eq", P("BD-EQ+#t#n#b"), "|- T(#b)"),
    ok("bd-eq", P("BD-EQ+#t#n#b"), "T(#n \\/ x) |- T(x)"),
    ok("bd-eq", P("BD-EQ+#t#n#b"), "T(~#t) |- x = y"),
    ok("bd-eq", P("BD-EQ+#t#n#b"), "|- T(~#b)"),
    ok("bd-eq", P("BD-EQ+#t#n#b"), "T(x) |- #n \\/ x \\/ y = #n \\/ x"),
    ok("etl-eq", P("ETL-EQ"), "E(x) |- x \\/ y = x"),
    ok("etl-eq", P("ETL-EQ+#t#n#b"), "|- E(#t)"),
    ok("etl-eq", P("ETL-EQ+#t#n#b"), "|- E(#n \\/ #b)"),
    ok("etl-eq", P("ETL-EQ+#t#n#b"), "|- #b = ~#b"),
    ok("etl-eq", P("ETL-EQ+#t#n#b"), "|- #n = ~#n"),
    ok("bde-eq", P("BDE-EQ"), "E(x) |- x \\/ y = x"),
    ok("bde-eq", P("BDE-EQ"), "E(x) |- T(x)"),
    ok("bde-eq", P("BDE-EQ+#t#n#b"), "|- E(#t)"),
    ok("bde-eq", P("BDE-EQ+#t#n#b"), "|- #n = ~#n"),
    ok("bde-eq", P("BDE-EQ+#t#n#b"), "T(#n \\/ x) |- T(x)"),
    ok("bde-eq", P("BDE-EQ+#t#n#b"), "|- E(#n \\/ #b)"),
    ok("bde-eq", P("BDE-EQ+#t#n#b"), "|- T(#b /\\ ~#b)"),
    ok("bde-eq", P("BDE-EQ+#t#n#b"), "T(x) |- E(#n \\/ x)"),
    ok("bdnf-eq", P("BDNF-EQ"), "T(x), T(y) |- ~x \\/ y = y"),
    ok("bdnf-eq", P("BDNF-EQ"), "NF(x), T(~x \\/ y) |- T(y)"),
    ok("bdnf-eq", P("BDNF-EQ"), "T(x), NF(~x \\/ y) |- NF(y)"),
    ok("bdnf-eq", P("BDNF-EQ"), "NF(x), T(y), T(z), x /\\ y <= z |- y <= z"),
    ok("bdnf-eq", P("BDNF-EQ"), "T(x), NF(y), x /\\ u <= ~y \\/ v, x /\\ ~v <= ~y \\/ ~u |- u <= v"),
    // the form with `x /\ ~u` on the left and `v` on the right is not sound
    bad(
        "bdnf-eq",
        P("BDNF-EQ"),
        "T(x), NF(y), x /\\ u <= ~y \\/ v, x /\\ ~u <= ~y \\/ v |- u <= v",
        Some("u -> n, v -> f, x -> b, y -> n"),
    ),
    ok("bdnf-eq", P("BDNF-EQ+#t#n#b"), "|- T(#t)"),
    ok("bdnf-eq", P("BDNF-EQ+#t#n#b"), "|- T(#b)"),
    ok("bdnf-eq", P("BDNF-EQ+#t#n#b"), "|- NF(#n)"),
    ok("bdnf-eq", P("BDNF-EQ+#t#n#b"), "|- NF(#t)"),
    ok("bdnf-eq", P("BDNF-EQ+#t#n#b"), "|- T(~#b)"),
    ok("bdnf-eq", P("BDNF-EQ+#t#n#b"), "|- NF(~#n)"),
    // multiple conclusions
    ok("multiple", P("BDNF"), "NF(x \\/ y) |- NF(x) | NF(y)"),
    ok("multiple", P("BDNF"), "T(~x), NF(x) |-"),
    ok("multiple", P("TNE"), "T(~x), E(x) |-"),
    ok("multiple", P("TNE"), "T(x) |- E(x) | T(~x)"),
    ok("multiple", P("TNE"), "|- T(x) | NF(~x)"),
    ok("multiple", P("TNE"), "T(x), NF(~x) |-"),
    ok("multiple", P("BD"), "T(x \\/ y) |- T(x) | T(y)"),
    ok("multiple", P("ETL"), "E(x \\/ y) |- E(~x \\/ ~y) | E(x) | E(y)"),
    ok("multiple", P("ETL"), "E(x \\/ y) |- E(~x \\/ y) | E(x) | E(y)"),
    ok("multiple", P("ETL"), "E(u /\\ ~u \\/ x), E(u /\\ ~u \\/ y), E(v \\/ x) |- E(v \\/ y) | E(x) | E(y)"),
    ok("multiple", P("ETL"), "E(u /\\ ~u \\/ x), E(u /\\ ~u \\/ y), E(v \\/ ~x) |- E(v \\/ ~y) | E(x) | E(y)"),
    ok("multiple", P("DM4-EQ+#t"), "x \\/ y = #t, x = x /\\ ~x, y = y /\\ ~y |- x = x \\/ ~x"),
    ok("multiple", P("ETL+#t#n#b"), "|- E(#t)"),
    ok("multiple", P("ETL+#t#n#b"), "E(#n) |-"),
    ok("multiple", P("ETL+#t#n#b"), "E(#b) |-"),
    ok("multiple", P("ETL+#t#n#b"), "|- E(#n \\/ #b)"),
    ok("multiple", P("ETL+#t#n#b"), "E(~#n) |-"),
    ok("multiple", P("ETL+#t#n#b"), "E(~#b) |-"),
];

pub fn ledger_entries() -> &'static [LedgerEntry] {
    LEDGER
}

fn full_sig() -> SigSpec {
    SigSpec::new(Pred::ALL, Constant::ALL).expect("nonempty")
}

fn check_entry(e: &LedgerEntry) -> Result<(bool, String)> {
    let s = e.target.structure()?;
    let r = parse_rule(e.rule, &full_sig())?;
    let v = decide(&s, &r)?;
    let seen = v.counterexample.as_ref().map(|c| c.describe(&s));
    let passed = v.valid == e.valid && (e.witness.is_none() || e.witness == seen.as_deref());
    let detail = match seen {
        Some(w) => format!("invalid in {}, counter-valuation {w}", e.target.describe()),
        None => format!("valid in {}", e.target.describe()),
    };
    Ok((passed, detail))
}

/// Every rule valid in BD (as `T`) is valid in K and LP, and its `E`
/// counterpart is valid in ETL.
fn extension_sweep() -> Result<(bool, String)> {
    let space = RuleSpace::new(&RuleSpaceBounds::single(2, 1, 2, &[Pred::T]))?;
    let rules: Vec<_> = space.iter().collect();
    let [bd, k, lp, etl] = ["BD", "K", "LP", "ETL"].map(|p| preset_structure(p).expect("preset"));
    let outcome: Vec<(bool, bool)> = rules
        .par_iter()
        .map(|r| {
            if !decide(&bd, r)?.valid {
                return Ok((false, true));
            }
            let fine = decide(&k, r)?.valid && decide(&lp, r)?.valid && decide(&etl, &r.rename_pred(Pred::T, Pred::E))?.valid;
            Ok((true, fine))
        })
        .collect::<Result<_>>()?;
    let valid = outcome.iter().filter(|o| o.0).count();
    let broken = outcome.iter().filter(|o| !o.1).count();
    Ok((broken == 0, format!("{} rules, {valid} valid in BD, {broken} not inherited", rules.len())))
}

pub(super) fn run(_cfg: &VerifyConfig) -> Result<Vec<Check>> {
    let mut checks: Vec<Check> = LEDGER
        .iter()
        .map(|e| timed(format!("{}: {} [{}]", e.topic, e.rule, e.target.describe()), || check_entry(e)))
        .collect();
    checks.push(timed("extensions: BD-valid rules hold in K, LP and ETL", extension_sweep));
    Ok(checks)
}
